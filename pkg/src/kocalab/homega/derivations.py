"""Typing derivations of L^omega with realizer extraction.

A derivation is a tree of the five rules.  Checking recomputes every
conclusion bottom-up, including the realizer, which is a combinator term
whose variables are the context names::

    ax(h)                      h
    imp_i(h : A, D)            e (lambda* h. p)
    imp_e(D1, D2)              p q
    forall_i(x : k, D)         p
    forall_e(D, M)             p

Surface syntax is exactly the function-call notation above; formulas and
expressions inside use :mod:`kocalab.homega.syntax`.
"""

from dataclasses import dataclass

from ..combterm import COMBINATORS, E, App, lambda_star
from ..combterm import Var as TVar
from ..errors import DerivationError, KindError, ParseError
from . import syntax
from .syntax import Forall, Implies, O, alpha_eq, free_vars, substitute


@dataclass(frozen=True)
class Ax:
    name: str


@dataclass(frozen=True)
class ImpI:
    name: str
    formula: object
    body: object


@dataclass(frozen=True)
class ImpE:
    major: object
    minor: object


@dataclass(frozen=True)
class ForallI:
    var: str
    kind: object
    body: object


@dataclass(frozen=True)
class ForallE:
    body: object
    term: object


@dataclass(frozen=True)
class Sequent:
    """``x1:A1, ..., xk:Ak |- p : B``; ``context`` is a tuple of (name, formula)."""

    context: tuple
    realizer: object
    formula: object

    def __str__(self):
        ctx = ", ".join(f"{n}:{syntax.show(a)}" for n, a in self.context)
        return f"{ctx} |- {self.realizer} : {syntax.show(self.formula)}"


RULES = ("ax", "imp_i", "imp_e", "forall_i", "forall_e")


def rule_of(d):
    return {Ax: "ax", ImpI: "imp_i", ImpE: "imp_e", ForallI: "forall_i", ForallE: "forall_e"}[type(d)]


def depth(d):
    if isinstance(d, Ax):
        return 1
    if isinstance(d, ImpE):
        return 1 + max(depth(d.major), depth(d.minor))
    return 1 + depth(d.body)


def check_derivation(d, context=()):
    """The sequent proved by ``d`` in ``context``; DerivationError otherwise."""
    context = tuple(context)
    names = [n for n, _ in context]
    if len(set(names)) != len(names):
        raise DerivationError("context declares a name twice", d)
    for n, a in context:
        if n in COMBINATORS:
            raise DerivationError(f"context name {n!r} clashes with a combinator", d)
        if a.kind != O:
            raise DerivationError(f"context entry {n!r} is not a formula", d)
    return _check(d, context)


def _check(d, ctx):
    if isinstance(d, Ax):
        for n, a in ctx:
            if n == d.name:
                return Sequent(ctx, TVar(n), a)
        raise DerivationError(f"ax: {d.name!r} is not declared in the context", d)
    if isinstance(d, ImpI):
        if d.formula.kind != O:
            raise DerivationError("imp_i: discharged hypothesis is not a formula", d)
        if d.name in COMBINATORS or any(n == d.name for n, _ in ctx):
            raise DerivationError(f"imp_i: name {d.name!r} is already in use", d)
        inner = _check(d.body, ctx + ((d.name, d.formula),))
        realizer = App(E, lambda_star(d.name, inner.realizer))
        return Sequent(ctx, realizer, Implies(d.formula, inner.formula))
    if isinstance(d, ImpE):
        major, minor = _check(d.major, ctx), _check(d.minor, ctx)
        if not isinstance(major.formula, Implies):
            raise DerivationError("imp_e: major premise is not an implication", d)
        if not alpha_eq(major.formula.left, minor.formula):
            raise DerivationError("imp_e: minor premise does not match the antecedent", d)
        return Sequent(ctx, App(major.realizer, minor.realizer), major.formula.right)
    if isinstance(d, ForallI):
        for n, a in ctx:
            if d.var in free_vars(a):
                raise DerivationError(f"forall_i: {d.var!r} is free in the context entry {n!r}", d)
        inner = _check(d.body, ctx)
        fv = free_vars(inner.formula)
        if d.var in fv and fv[d.var] != d.kind:
            raise DerivationError(f"forall_i: {d.var!r} occurs with kind {fv[d.var]}", d)
        return Sequent(ctx, inner.realizer, Forall(d.var, d.kind, inner.formula))
    if isinstance(d, ForallE):
        inner = _check(d.body, ctx)
        f = inner.formula
        if not isinstance(f, Forall):
            raise DerivationError("forall_e: premise is not universally quantified", d)
        if d.term.kind != f.var_kind:
            raise DerivationError(f"forall_e: term of kind {d.term.kind}, expected {f.var_kind}", d)
        return Sequent(ctx, inner.realizer, substitute(f.body, f.var, d.term))
    raise DerivationError(f"not a derivation node: {d!r}", d)


def show_derivation(d):
    if isinstance(d, Ax):
        return f"ax({d.name})"
    if isinstance(d, ImpI):
        return f"imp_i({d.name} : {syntax.show(d.formula)}, {show_derivation(d.body)})"
    if isinstance(d, ImpE):
        return f"imp_e({show_derivation(d.major)}, {show_derivation(d.minor)})"
    if isinstance(d, ForallI):
        return f"forall_i({d.var} : {d.kind}, {show_derivation(d.body)})"
    return f"forall_e({show_derivation(d.body)}, {syntax.show(d.term)})"


def parse_derivation(text, sig, scope=None):
    """Parse the function-call syntax; embedded expressions end at a
    top-level ``,`` or ``)``."""
    pos = 0
    scope = dict(scope or {})

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def word():
        nonlocal pos
        skip()
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] in "_'"):
            pos += 1
        if start == pos:
            raise ParseError("expected an identifier", start)
        return text[start:pos]

    def expect(ch):
        nonlocal pos
        skip()
        if not text.startswith(ch, pos):
            raise ParseError(f"expected {ch!r}", pos)
        pos += len(ch)

    def chunk():
        """Raw text up to the next top-level ',' or ')'."""
        nonlocal pos
        skip()
        start, level = pos, 0
        while pos < len(text):
            ch = text[pos]
            if ch == "(":
                level += 1
            elif ch == ")":
                if level == 0:
                    break
                level -= 1
            elif ch == "," and level == 0:
                break
            pos += 1
        return start, text[start:pos]

    def sub_expr(local):
        start, raw = chunk()
        try:
            return syntax.parse_expr(raw, sig, local)
        except ParseError as err:
            raise type(err)(str(err).split(" at position")[0], start + (err.pos or 0)) from None

    def sub_kind():
        start, raw = chunk()
        try:
            return syntax.parse_kind(raw, sig)
        except ParseError as err:
            raise type(err)(str(err).split(" at position")[0], start + (err.pos or 0)) from None

    def node(local):
        start = pos
        rule = word()
        expect("(")
        if rule == "ax":
            out = Ax(word())
        elif rule == "imp_i":
            name = word()
            expect(":")
            f = sub_expr(local)
            if f.kind != O:
                raise KindError("imp_i hypothesis must be a formula", start)
            expect(",")
            out = ImpI(name, f, node(local))
        elif rule == "imp_e":
            major = node(local)
            expect(",")
            out = ImpE(major, node(local))
        elif rule == "forall_i":
            var = word()
            expect(":")
            k = sub_kind()
            expect(",")
            out = ForallI(var, k, node({**local, var: k}))
        elif rule == "forall_e":
            body = node(local)
            expect(",")
            out = ForallE(body, sub_expr(local))
        else:
            raise ParseError(f"unknown rule {rule!r}", start)
        expect(")")
        return out

    d = node(scope)
    skip()
    if pos != len(text):
        raise ParseError("trailing input after derivation", pos)
    return d


def parse_derivation_file(text):
    """Declarations, ``hyp name : formula`` lines, then one derivation.

    Returns ``(signature, context, derivation)``.
    """
    sig, rest = syntax.parse_signature(text)
    context, body = [], []
    for lineno, line in rest:
        if line.startswith("hyp "):
            name, _, formula = line[4:].partition(":")
            if not _:
                raise ParseError(f"line {lineno}: hyp needs 'name : formula'", 0)
            context.append((name.strip(), syntax.parse_expr(formula, sig)))
        else:
            body.append(line)
    if not body:
        raise ParseError("no derivation found", len(text))
    return sig, tuple(context), parse_derivation(" ".join(body), sig)
