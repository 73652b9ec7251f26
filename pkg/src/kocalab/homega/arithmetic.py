"""Leibniz equality, equational Peano axioms and the formula N(z).

A PA model fixes the base kind ``I`` with constants ``0``, ``succ``, ``add``
and ``mul``.  Two finite models are provided: ``zmod_model`` (arithmetic
mod n) and ``truncated_model`` (saturating at n-1, a quotient of the
naturals in which 0 is not a successor).
"""

from ..combterm import App, E, S, Var as TVar, lambda_star
from ..oca import eval_term, realizer_pool
from ..report import Report
from .semantics import Interpretation, interpret
from .syntax import (
    BOT, Apply, Arrow, Base, Const, Forall, Implies, O, Signature, Var, apply, free_vars,
    leibniz_eq,
)

I = Base("I")
II = Arrow(I, I)
III = Arrow(I, II)

# e (lambda* x. x) and e (lambda* x. x s)
IDENTITY_REALIZER = App(E, lambda_star("x", TVar("x")))
SUCC_REALIZER = App(E, lambda_star("x", App(TVar("x"), S)))


def pa_signature():
    return Signature({"I"}, {"0": I, "succ": II, "add": III, "mul": III})


def _model(koca, n, succ, add, mul):
    interp = Interpretation(koca, {"I": n}, {"0": 0})
    interp.set_function("succ", II, succ)
    interp.set_function("add", III, lambda a: interp.function(II, lambda b: add(a, b)))
    interp.set_function("mul", III, lambda a: interp.function(II, lambda b: mul(a, b)))
    return interp


def zmod_model(koca, n=3):
    return _model(koca, n, lambda a: (a + 1) % n, lambda a, b: (a + b) % n,
                  lambda a, b: (a * b) % n)


def truncated_model(koca, n=3):
    top = n - 1
    return _model(koca, n, lambda a: min(a + 1, top), lambda a, b: min(a + b, top),
                  lambda a, b: min(a * b, top))


def nat_formula(z, sig=None):
    """N(z) = forall x:I->o. (forall y:I. x y => x (succ y)) => x 0 => x z."""
    sig = sig or pa_signature()
    x = Var("x_", Arrow(I, O))
    y = Var("y_", I)
    step = Forall("y_", I, Implies(apply(x, y), apply(x, apply(sig.const("succ"), y))))
    return Forall("x_", x.kind, Implies(step, Implies(apply(x, sig.const("0")), apply(x, z))))


def _realizes_everywhere(koca, interp, realizer, formula):
    """First assignment where ``realizer`` is not below [[formula]], or None."""
    r = eval_term(koca, realizer)
    for env in interp.assignments(free_vars(formula)):
        if not koca.le(r, interpret(formula, interp, env)):
            return env
    return None


def leibniz_check(koca, interp, M, N):
    """e(lambda* x. x) realizes M = N whenever [[M]] = [[N]].

    The precondition is checked at every assignment of the free variables;
    where it fails the check is marked skipped.
    """
    rep = Report("leibniz")
    c = rep.add("identity-realizes-equality")
    eq = leibniz_eq(M, N)
    fv = free_vars(M) | free_vars(N)
    for env in interp.assignments(fv):
        if interpret(M, interp, env) != interpret(N, interp, env):
            c.skipped = True
            c.detail = "precondition [[M]] = [[N]] fails"
            c.count = 0
            return rep
    bad = _realizes_everywhere(koca, interp, IDENTITY_REALIZER, eq)
    c.count = 1
    if bad is not None:
        c.fail({"assignment": bad})
    return rep


def pa_equations(sig=None):
    """(name, lhs, rhs, bound variables) for the defining equations of + and *."""
    sig = sig or pa_signature()
    zero, succ, add, mul = (sig.const(n) for n in ("0", "succ", "add", "mul"))
    x, y = Var("x", I), Var("y", I)
    return [
        ("add-zero", apply(add, x, zero), x, ("x",)),
        ("add-succ", apply(add, x, apply(succ, y)), apply(succ, apply(add, x, y)), ("x", "y")),
        ("mul-zero", apply(mul, x, zero), zero, ("x",)),
        ("mul-succ", apply(mul, x, apply(succ, y)), apply(add, apply(mul, x, y), x), ("x", "y")),
    ]


def constants(e):
    if isinstance(e, Const):
        return {e.name}
    if isinstance(e, Var):
        return set()
    if isinstance(e, Apply):
        return constants(e.fn) | constants(e.arg)
    if isinstance(e, Implies):
        return constants(e.left) | constants(e.right)
    return constants(e.body)


def close(formula, names, kind=I):
    for n in reversed(names):
        formula = Forall(n, kind, formula)
    return formula


def succ_not_zero(sig=None):
    sig = sig or pa_signature()
    x = Var("x", I)
    return Forall("x", I, Implies(leibniz_eq(apply(sig.const("succ"), x), sig.const("0")), BOT))


def pa_axioms_check(koca, interp, sig=None):
    """Equational axioms, succ x != 0, and N-relativized induction."""
    sig = sig or pa_signature()
    rep = Report("pa-axioms", meta={"|I|": interp.domains.get("I")})
    for name, lhs, rhs, bound in pa_equations(sig):
        if not (constants(lhs) | constants(rhs)) <= set(interp.consts):
            continue
        c = rep.add(f"equation.{name}")
        sub = leibniz_check(koca, interp, lhs, rhs)
        inner = sub.checks[0]
        if inner.skipped:
            c.fail({"precondition": "[[lhs]] != [[rhs]]"})
            continue
        c.count = 1
        bad = _realizes_everywhere(koca, interp, IDENTITY_REALIZER,
                                   close(leibniz_eq(lhs, rhs), bound))
        if bad is not None or not inner.passed:
            c.fail({"assignment": bad or inner.witness})
    c = rep.add("succ-not-zero")
    c.count = 1
    f = succ_not_zero(sig)
    if _realizes_everywhere(koca, interp, SUCC_REALIZER, f) is not None:
        r = eval_term(koca, SUCC_REALIZER)
        c.fail({"realizer": koca.carrier[r], "value": koca.carrier[interpret(f, interp)]})
    c = rep.add("induction-relativized")
    c.count = 1
    z = Var("z", I)
    f = Forall("z", I, Implies(nat_formula(z, sig), nat_formula(z, sig)))
    if _realizes_everywhere(koca, interp, IDENTITY_REALIZER, f) is not None:
        c.fail({"value": koca.carrier[interpret(f, interp)]})
    return rep


def theory_member(koca, interp, formula, include_derived=True):
    """First element of the realizer pool below [[formula]] (closed), or None."""
    v = interpret(formula, interp)
    for a in realizer_pool(koca, include_derived):
        if koca.le(a, v):
            return a
    return None
