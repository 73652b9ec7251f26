"""Bounded enumeration of derivations and the adequacy check.

Derivations are generated from a finite :class:`DerivationSpace`: the base
context, formulas that ``imp_i`` may discharge, expressions that
``forall_e`` may instantiate with, and variables ``forall_i`` may
generalize.  Every generated derivation is checked with
:func:`check_derivation`, so only well-formed trees are kept.
"""

from dataclasses import dataclass, field

from ..errors import DerivationError
from ..report import Report
from .derivations import (
    RULES, Ax, ForallE, ForallI, ImpE, ImpI, check_derivation, rule_of, show_derivation,
)
from .semantics import counterexample, interpret
from .syntax import Forall, Implies, alpha_eq, free_vars, substitute


@dataclass
class DerivationSpace:
    context: tuple = ()
    hypotheses: tuple = ()
    terms: tuple = ()
    generalize: tuple = ()
    max_per_level: int = field(default=5000)


def enumerate_derivations(space, max_depth):
    """All checked derivations of depth <= max_depth, as (derivation, sequent)."""
    memo = {}

    def gen(ctx, d):
        key = (ctx, d)
        if key in memo:
            return memo[key]
        out = [(Ax(n), None) for n, _ in ctx]
        if d > 1:
            below = gen(ctx, d - 1)
            for a in space.hypotheses:
                name = f"u{len(ctx)}"
                for sub, _ in gen(ctx + ((name, a),), d - 1):
                    out.append((ImpI(name, a, sub), None))
            for major, ms in below:
                if not isinstance(ms.formula, Implies):
                    continue
                for minor, ns in below:
                    if alpha_eq(ms.formula.left, ns.formula):
                        out.append((ImpE(major, minor), None))
            for var, kind in space.generalize:
                if any(var in free_vars(a) for _, a in ctx):
                    continue
                for sub, ss in below:
                    if var in free_vars(ss.formula):
                        out.append((ForallI(var, kind, sub), None))
            for sub, ss in below:
                if isinstance(ss.formula, Forall):
                    for t in space.terms:
                        if t.kind == ss.formula.var_kind:
                            out.append((ForallE(sub, t), None))
        checked, seen = [], set()
        for der, _ in out:
            if der in seen:
                continue
            seen.add(der)
            try:
                checked.append((der, check_derivation(der, ctx)))
            except DerivationError:
                continue
            if len(checked) >= space.max_per_level:
                break
        memo[key] = checked
        return checked

    return gen(tuple(space.context), max_depth)


def adequacy_suite(koca, interp, space, max_depth=3):
    """Every enumerated conclusion is satisfied; counts are per root rule."""
    ders = enumerate_derivations(space, max_depth)
    rep = Report("adequacy", meta={"derivations": len(ders), "max_depth": max_depth})
    checks = {r: rep.add(f"rule.{r}") for r in RULES}
    for der, seq in ders:
        c = checks[rule_of(der)]
        c.count += 1
        if not c.passed:
            continue
        bad = counterexample(koca, interp, seq)
        if bad is not None:
            c.fail({"derivation": show_derivation(der), **bad})
    rep.meta["rules"] = {r: checks[r].count for r in RULES}
    return rep


def substitution_check(interp, formulas, terms):
    """[[A{x:=M}]] equals [[A]] at x := [[M]] for every listed formula,
    free variable of matching kind and term."""
    rep = Report("substitution", meta={"formulas": len(formulas), "terms": len(terms)})
    c = rep.add("forall-e-substitution")
    for a in formulas:
        for x, kind in sorted(free_vars(a).items(), key=lambda kv: kv[0]):
            for m in terms:
                if m.kind != kind:
                    continue
                target = substitute(a, x, m)
                fv = free_vars(a) | free_vars(m)
                fv.pop(x, None)
                fv |= free_vars(target)
                for env in interp.assignments(fv):
                    c.count += 1
                    lhs = interpret(target, interp, env)
                    rhs = interpret(a, interp, {**env, x: interpret(m, interp, env)})
                    if lhs != rhs:
                        c.fail({"x": x, "env": env})
    return rep


def rule_preservation(koca, interp, der, context=()):
    """If every immediate premise is satisfied, so is the conclusion.

    Returns ``(premises_ok, conclusion_ok)``.
    """
    seq = check_derivation(der, context)
    if isinstance(der, Ax):
        prem = []
    elif isinstance(der, ImpI):
        prem = [check_derivation(der.body, tuple(context) + ((der.name, der.formula),))]
    elif isinstance(der, ImpE):
        prem = [check_derivation(der.major, context), check_derivation(der.minor, context)]
    else:
        prem = [check_derivation(der.body, context)]
    prem_ok = all(counterexample(koca, interp, p) is None for p in prem)
    return prem_ok, counterexample(koca, interp, seq) is None

