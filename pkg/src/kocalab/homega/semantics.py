"""Finite semantics of L^omega in a KOCA.

Every semantic value is an ``int``.  A base kind ``I`` with ``|[[I]]| = m``
has values ``0..m-1``; ``o`` has the carrier indices of the KOCA.  A function
``f`` in ``[[s -> t]]`` is stored in mixed radix: ``f(v)`` is the ``v``-th
digit of ``f`` in base ``|[[t]]|``.
"""

from dataclasses import dataclass, field
import itertools

from .. import config
from ..errors import EvaluationError, ResourceError, StructuralError
from ..oca import eval_term
from .syntax import Apply, Base, Const, Forall, Implies, Lam, Var, free_vars


@dataclass(eq=False)
class Interpretation:
    """Kind sizes, constant values and the KOCA interpreting ``o``."""

    koca: object
    domains: dict
    consts: dict = field(default_factory=dict)

    def __post_init__(self):
        self.domains = dict(self.domains)
        self.domains["o"] = self.koca.n
        self.consts = dict(self.consts)
        self.consts.setdefault("bot", self.koca.bottom)
        self._cache = {}

    def size(self, kind):
        if isinstance(kind, Base):
            if kind.name not in self.domains:
                raise EvaluationError(f"kind {kind.name!r} has no interpretation")
            return self.domains[kind.name]
        return self.size(kind.tgt) ** self.size(kind.src)

    def values(self, kind):
        n = self.size(kind)
        if n > config.MAX_FUNCTION_SPACE:
            raise ResourceError(f"|[[{kind}]]| = {n} exceeds {config.MAX_FUNCTION_SPACE}")
        return range(n)

    def call(self, kind, f, v):
        base = self.size(kind.tgt)
        return (f // base ** v) % base

    def function(self, kind, fn):
        """Encode a Python callable on values as an element of ``[[kind]]``."""
        base = self.size(kind.tgt)
        out = 0
        for v in reversed(range(self.size(kind.src))):
            r = int(fn(v))
            if not 0 <= r < base:
                raise StructuralError(f"function value {r} outside [[{kind.tgt}]]")
            out = out * base + r
        return out

    def set_function(self, name, kind, fn):
        self.consts[name] = self.function(kind, fn)
        self._cache.clear()

    def assignments(self, variables):
        """Every assignment of the given ``{name: kind}`` variables."""
        names = sorted(variables)
        ranges = [self.values(variables[n]) for n in names]
        for vals in itertools.product(*ranges):
            yield dict(zip(names, vals))


def interpret(expr, interp, assignment=None):
    """[[expr]] under the assignment (a dict variable name -> value)."""
    assignment = assignment or {}
    fv = free_vars(expr)
    missing = [n for n in fv if n not in assignment]
    if missing:
        raise EvaluationError(f"no value assigned to {sorted(missing)}")
    key = (expr, tuple(sorted((n, assignment[n]) for n in fv)))
    hit = interp._cache.get(key)
    if hit is None:
        hit = _interpret(expr, interp, assignment)
        interp._cache[key] = hit
    return hit


def _interpret(e, interp, env):
    x = interp.koca
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Const):
        if e.name not in interp.consts:
            raise EvaluationError(f"constant {e.name!r} has no interpretation")
        return interp.consts[e.name]
    if isinstance(e, Apply):
        f = interpret(e.fn, interp, env)
        v = interpret(e.arg, interp, env)
        return interp.call(e.fn.kind, f, v)
    if isinstance(e, Implies):
        return x.to(interpret(e.left, interp, env), interpret(e.right, interp, env))
    if isinstance(e, Forall):
        vals = [interpret(e.body, interp, {**env, e.var: s}) for s in interp.values(e.var_kind)]
        return x.inf(vals)
    if isinstance(e, Lam):
        return interp.function(e.kind, lambda s: interpret(e.body, interp, {**env, e.var: s}))
    raise StructuralError(f"not an expression: {e!r}")


def sequent_vars(seq):
    fv = free_vars(seq.formula)
    for _, a in seq.context:
        fv |= free_vars(a)
    return fv


def counterexample(koca, interp, seq):
    """First (assignment, b) violating the sequent, or None.

    The realizer is a term in the context names; every assignment of the free
    expression variables and every ``b_i <= [[A_i]]`` is tried.  Assignments
    yielding the same tuple of semantic values are checked once.
    """
    names = [n for n, _ in seq.context]
    seen = set()
    for env in interp.assignments(sequent_vars(seq)):
        vals = tuple(interpret(a, interp, env) for _, a in seq.context)
        goal = interpret(seq.formula, interp, env)
        if (vals, goal) in seen:
            continue
        seen.add((vals, goal))
        for bs in itertools.product(*[koca.down(v) for v in vals]):
            r = eval_term(koca, seq.realizer, dict(zip(names, bs)))
            if not koca.le(r, goal):
                return {"assignment": env,
                        "b": {n: koca.carrier[b] for n, b in zip(names, bs)},
                        "value": koca.carrier[r], "bound": koca.carrier[goal]}
    return None


def satisfies(koca, interp, seq):
    return counterexample(koca, interp, seq) is None
