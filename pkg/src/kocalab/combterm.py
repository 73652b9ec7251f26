"""Combinator terms over an algebra and bracket abstraction.

A term is a constant (an element of the carrier, by name), a distinguished
combinator of the ambient structure (``k``, ``s``, ``e``, ``c``), a variable,
or an application.  Application associates to the left in surface syntax:
``s k k x`` is ``((s k) k) x``.
"""

from dataclasses import dataclass
import re

from .errors import EvaluationError, ParseError

COMBINATORS = ("k", "s", "e", "c")


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Comb:
    """A distinguished element resolved against the structure at evaluation."""

    name: str

    def __post_init__(self):
        if self.name not in COMBINATORS:
            raise ValueError(f"unknown combinator {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fn: object
    arg: object

    def __str__(self):
        right = str(self.arg)
        if isinstance(self.arg, App):
            right = f"({right})"
        return f"{self.fn} {right}"


K, S, E, C = (Comb(n) for n in COMBINATORS)


def app(*terms):
    """Left-associated application ``t0 t1 ... tn``."""
    if not terms:
        raise ValueError("app() needs at least one term")
    out = terms[0]
    for t in terms[1:]:
        out = App(out, t)
    return out


def size(t):
    """Number of application nodes."""
    if isinstance(t, App):
        return 1 + size(t.fn) + size(t.arg)
    return 0


def free_vars(t):
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    return set()


def leaves(t):
    if isinstance(t, App):
        yield from leaves(t.fn)
        yield from leaves(t.arg)
    else:
        yield t


def substitute(t, mapping):
    """Replace variables by terms; ``mapping`` is name -> term."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, App):
        return App(substitute(t.fn, mapping), substitute(t.arg, mapping))
    return t


def lambda_star(v, t):
    """Bracket abstraction of variable ``v`` in ``t``.

    No optimisation for ``v`` absent from ``t``: every leaf other than ``v``
    becomes ``k leaf`` and applications become ``s``-nodes.
    """
    if isinstance(t, Var) and t.name == v:
        return App(App(S, K), K)
    if isinstance(t, App):
        return App(App(S, lambda_star(v, t.fn)), lambda_star(v, t.arg))
    return App(K, t)


def lambda_stars(vs, t):
    """``lambda_star(v1, lambda_star(v2, ... t))`` for ``vs = [v1, v2, ...]``."""
    for v in reversed(vs):
        t = lambda_star(v, t)
    return t


def fold(t, leaf, apply):
    """Evaluate bottom-up: ``leaf`` maps non-App nodes, ``apply`` combines."""
    if isinstance(t, App):
        return apply(fold(t.fn, leaf, apply), fold(t.arg, leaf, apply))
    return leaf(t)


def evaluate(t, const_of, comb_of, apply, env=None):
    """Evaluate ``t`` given lookups for constants and combinators.

    ``env`` maps variable names to values; any other variable is an error.
    """
    env = env or {}

    def leaf(node):
        if isinstance(node, Var):
            if node.name not in env:
                raise EvaluationError(f"free variable {node.name!r}")
            return env[node.name]
        if isinstance(node, Comb):
            return comb_of(node.name)
        if isinstance(node, Const):
            return const_of(node.name)
        if isinstance(node, int):
            return node
        raise EvaluationError(f"not a term: {node!r}")

    return fold(t, leaf, apply)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def parse_term(text, constants=(), variables=None):
    """Parse surface syntax: identifiers, whitespace application, parentheses.

    An identifier in ``constants`` is a carrier constant; ``k s e c`` not
    shadowed by a constant are combinators; anything else is a variable
    (restricted to ``variables`` when that is given).
    """
    constants = set(constants)
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character", pos)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    if not tokens:
        raise ParseError("empty term", 0)
    idx = 0

    def atom():
        nonlocal idx
        tok, p = tokens[idx]
        if tok == "(":
            idx += 1
            t = seq()
            if idx >= len(tokens) or tokens[idx][0] != ")":
                raise ParseError("missing ')'", p)
            idx += 1
            return t
        if tok == ")":
            raise ParseError("unexpected ')'", p)
        idx += 1
        if tok in constants:
            return Const(tok)
        if tok in COMBINATORS:
            return Comb(tok)
        if variables is not None and tok not in variables:
            raise ParseError(f"unknown identifier {tok!r}", p)
        return Var(tok)

    def seq():
        t = atom()
        while idx < len(tokens) and tokens[idx][0] != ")":
            t = App(t, atom())
        return t

    t = seq()
    if idx != len(tokens):
        raise ParseError("unbalanced ')'", tokens[idx][1])
    return t
