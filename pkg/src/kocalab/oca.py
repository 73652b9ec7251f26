"""Filtered ordered combinatory algebras on finite posets.

Elements are indices into ``carrier``; ``leq[a, b]`` is ``a <= b`` and
``app[a, b]`` is the element ``a b``.  The filter ``phi`` is kept as a tuple
of indices in load order, which is also the realizer search order.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import combterm
from .combterm import Const, Var, app, lambda_star, lambda_stars
from .errors import EvaluationError, StructuralError
from .report import Report


@dataclass(frozen=True, eq=False)
class FilteredOCA:
    carrier: tuple
    leq: np.ndarray
    app: np.ndarray
    k: int
    s: int
    phi: tuple

    def __post_init__(self):
        carrier = tuple(self.carrier)
        n = len(carrier)
        if n == 0:
            raise StructuralError("carrier must be nonempty")
        if len(set(carrier)) != n:
            raise StructuralError("carrier names are not unique")
        object.__setattr__(self, "carrier", carrier)
        self._set_table("leq", bool, (n, n))
        self._set_table("app", np.int64, (n, n))
        phi = tuple(sorted({int(x) for x in self.phi}))
        if any(not 0 <= x < n for x in phi):
            raise StructuralError("filter refers to an unknown element")
        object.__setattr__(self, "phi", phi)
        for name in self._distinguished():
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise StructuralError(f"{name} is not an element index")
            object.__setattr__(self, name, int(v))

    def _distinguished(self):
        return ("k", "s")

    def _set_table(self, name, dtype, shape):
        arr = np.array(getattr(self, name), dtype=dtype)
        if arr.shape != shape:
            raise StructuralError(f"{name} table has shape {arr.shape}, expected {shape}")
        if dtype is not bool and arr.size and (arr.min() < 0 or arr.max() >= shape[0]):
            raise StructuralError(f"{name} table refers to an unknown element")
        arr.setflags(write=False)
        object.__setattr__(self, name, arr)

    @property
    def n(self):
        return len(self.carrier)

    def index(self, name):
        try:
            return self.carrier.index(name)
        except ValueError:
            raise StructuralError(f"unknown element {name!r}") from None

    def le(self, a, b):
        return bool(self.leq[a, b])

    def ap(self, a, *args):
        for b in args:
            a = int(self.app[a, b])
        return a

    def combinator(self, name):
        if name in self._distinguished():
            return getattr(self, name)
        raise EvaluationError(f"{type(self).__name__} has no combinator {name!r}")

    def in_phi(self, a):
        return a in self._phi_set

    @cached_property
    def _phi_set(self):
        return frozenset(self.phi)

    def lower_bounds(self, elems):
        elems = list(elems)
        if not elems:
            return np.ones(self.n, dtype=bool)
        return np.all(self.leq[:, elems], axis=1)

    def upper_bounds(self, elems):
        elems = list(elems)
        if not elems:
            return np.ones(self.n, dtype=bool)
        return np.all(self.leq[elems, :], axis=0)

    def inf(self, elems):
        """Greatest lower bound, or None if there is none."""
        lower = np.flatnonzero(self.lower_bounds(elems))
        for g in lower:
            if np.all(self.leq[lower, g]):
                return int(g)
        return None

    def sup(self, elems):
        upper = np.flatnonzero(self.upper_bounds(elems))
        for g in upper:
            if np.all(self.leq[g, upper]):
                return int(g)
        return None

    @property
    def bottom(self):
        return self.inf(range(self.n))

    @property
    def top(self):
        return self.sup(range(self.n))

    def up(self, a):
        """Principal filter of ``a`` as a tuple of indices."""
        return tuple(int(x) for x in np.flatnonzero(self.leq[a, :]))

    def down(self, a):
        return tuple(int(x) for x in np.flatnonzero(self.leq[:, a]))

    @cached_property
    def combinators(self):
        return derived_basic_combinators(self)

    def replace(self, **changes):
        fields = {f: getattr(self, f) for f in self.__dataclass_fields__}
        fields.update(changes)
        return type(self)(**fields)


def eval_term(o, t, env=None):
    """Interpret a closed term (or one closed by ``env``) in ``o``."""
    def const_of(name):
        try:
            return o.carrier.index(name)
        except ValueError:
            raise EvaluationError(f"constant {name!r} is not an element") from None

    return combterm.evaluate(t, const_of, o.combinator, o.ap, env)


def _x(name):
    return Var(name)


x, y, z = _x("x"), _x("y"), _x("z")

# closed combinator terms, built from k and s by bracket abstraction
B_TERM = lambda_stars(["x", "y", "z"], app(x, app(y, z)))
I_TERM = lambda_star("x", x)
CFLIP_TERM = lambda_stars(["x", "y", "z"], app(x, z, y))
W_TERM = lambda_stars(["x", "y"], app(x, y, y))
T_TERM = lambda_stars(["x", "y"], x)
F_TERM = lambda_stars(["x", "y"], y)
PAIR_TERM = lambda_stars(["x", "y", "z"], app(z, x, y))


def derived_basic_combinators(o):
    """Element values of b, i, cflip, w, t, f, pair, p0, p1.

    ``p0 = lambda* x (x t)`` and ``p1 = lambda* x (x f)`` abstract over the
    element ``t`` (resp. ``f``) as a constant, as do ``a(r, s)`` and ``d(f)``
    below.
    """
    ev = lambda t: eval_term(o, t)
    out = {
        "b": ev(B_TERM), "i": ev(I_TERM), "cflip": ev(CFLIP_TERM), "w": ev(W_TERM),
        "t": ev(T_TERM), "f": ev(F_TERM), "pair": ev(PAIR_TERM),
    }
    out["p0"] = ev(lambda_star("x", app(x, Const(o.carrier[out["t"]]))))
    out["p1"] = ev(lambda_star("x", app(x, Const(o.carrier[out["f"]]))))
    return out


def pair_combinator(o, r, s):
    """a(r, s) = lambda* x (pair (r x) (s x))."""
    c = o.combinators
    name = o.carrier.__getitem__
    term = lambda_star("x", app(Const(name(c["pair"])), app(Const(name(r)), x),
                                 app(Const(name(s)), x)))
    return eval_term(o, term)


def uncurry_combinator(o, f):
    """d(f) = lambda* x (f (p0 x) (p1 x))."""
    c = o.combinators
    name = o.carrier.__getitem__
    term = lambda_star("x", app(Const(name(f)), app(Const(name(c["p0"])), x),
                                 app(Const(name(c["p1"])), x)))
    return eval_term(o, term)


def meet(o, a, b):
    return o.ap(o.combinators["pair"], a, b)


def realizer_pool(o, include_derived=True):
    """Phi in load order, then derived combinators not already present."""
    pool = list(o.phi)
    if include_derived:
        seen = set(pool)
        for v in o.combinators.values():
            if v not in seen:
                pool.append(v)
                seen.add(v)
    return pool


def entails(o, a, b, include_derived=True):
    """First realizer f of ``a [= b`` (``f a <= b``), or None."""
    for f in realizer_pool(o, include_derived):
        if o.leq[o.app[f, a], b]:
            return f
    return None


def _first(viol):
    hits = np.argwhere(viol)
    return None if len(hits) == 0 else tuple(int(i) for i in hits[0])


def _record(rep, o, name, premise, conclusion, labels):
    c = rep.add(name)
    c.count = int(np.size(premise))
    hit = _first(premise & ~conclusion)
    if hit is not None:
        c.fail({lab: o.carrier[i] for lab, i in zip(labels, hit)})
    return c


def check_oca(o, rep=None):
    """Partial order, monotone application, k/s axioms, filter."""
    n, L, A = o.n, o.leq, o.app
    r = np.arange(n)
    rep = rep or Report("oca", meta={"carrier": n})
    _record(rep, o, "leq-reflexive", np.ones(n, bool), np.diag(L).copy(), ("a",))
    _record(rep, o, "leq-antisymmetric", L & L.T & ~np.eye(n, dtype=bool),
            np.zeros((n, n), bool), ("a", "b"))
    _record(rep, o, "leq-transitive", L[:, :, None] & L[None, :, :],
            np.broadcast_to(L[:, None, :], (n, n, n)), ("a", "b", "c"))
    _record(rep, o, "app-monotone-left", np.broadcast_to(L[:, :, None], (n, n, n)),
            L[A[:, None, :], A[None, :, :]], ("a", "a2", "b"))
    _record(rep, o, "app-monotone-right", np.broadcast_to(L[None, :, :], (n, n, n)),
            L[A[:, :, None], A[:, None, :]], ("a", "b", "b2"))
    kab = A[A[o.k][:, None], r[None, :]]
    _record(rep, o, "k-axiom", np.ones((n, n), bool), L[kab, r[:, None]], ("a", "b"))
    sabc = A[A[A[o.s][:, None, None], r[None, :, None]], r[None, None, :]]
    acbc = A[A[:, None, :], A[None, :, :]]
    _record(rep, o, "s-axiom", np.ones((n, n, n), bool), L[sabc, acbc], ("a", "b", "c"))
    c = rep.add("phi-contains-k-s")
    c.count = 2
    for name in ("k", "s"):
        if not o.in_phi(getattr(o, name)):
            c.fail({"combinator": name})
    c = rep.add("phi-app-closed")
    for f in o.phi:
        for g in o.phi:
            c.count += 1
            if not o.in_phi(int(A[f, g])):
                c.fail({"f": o.carrier[f], "g": o.carrier[g]})
    return rep


def check_basic_combinators(o):
    """Inequalities satisfied by b, i, cflip, w, pair, p0, p1, a(r,s), d(f)."""
    cb = o.combinators
    ap, le, n = o.ap, o.le, o.n
    rep = Report("basic-combinators", meta={"carrier": n})
    checks = {k: rep.add(k) for k in ("b", "i", "cflip", "w", "p0", "p1", "a", "d", "in-phi")}
    for k, v in cb.items():
        checks["in-phi"].count += 1
        if not o.in_phi(v):
            checks["in-phi"].fail({"combinator": k})
    for a in range(n):
        checks["i"].count += 1
        if not le(ap(cb["i"], a), a):
            checks["i"].fail({"a": a})
        for b in range(n):
            pab = ap(cb["pair"], a, b)
            checks["w"].count += 1
            if not le(ap(cb["w"], a, b), ap(a, b, b)):
                checks["w"].fail({"a": a, "b": b})
            checks["p0"].count += 1
            if not le(ap(cb["p0"], pab), a):
                checks["p0"].fail({"a": a, "b": b})
            checks["p1"].count += 1
            if not le(ap(cb["p1"], pab), b):
                checks["p1"].fail({"a": a, "b": b})
            for c in range(n):
                checks["b"].count += 1
                if not le(ap(cb["b"], a, b, c), ap(a, ap(b, c))):
                    checks["b"].fail({"a": a, "b": b, "c": c})
                checks["cflip"].count += 1
                if not le(ap(cb["cflip"], a, b, c), ap(a, c, b)):
                    checks["cflip"].fail({"a": a, "b": b, "c": c})
    pool = list(o.phi)
    for f in pool:
        df = uncurry_combinator(o, f)
        for l in range(n):
            checks["d"].count += 1
            if not le(ap(df, l), ap(f, ap(cb["p0"], l), ap(cb["p1"], l))):
                checks["d"].fail({"f": f, "l": l})
        for g in pool:
            arg = pair_combinator(o, f, g)
            for c in range(n):
                for a in range(n):
                    if not le(ap(f, c), a):
                        continue
                    for b in range(n):
                        if le(ap(g, c), b):
                            checks["a"].count += 1
                            if not le(ap(arg, c), ap(cb["pair"], a, b)):
                                checks["a"].fail({"r": f, "s": g, "c": c, "a": a, "b": b})
    for c in rep.checks:
        if isinstance(c.witness, dict):
            c.witness = {k: (o.carrier[v] if isinstance(v, int) and k != "combinator" else v)
                         for k, v in c.witness.items()}
    return rep


def meet_top_check(o, include_derived=True):
    """(A, pair, k) is a meet-semilattice under the realizability preorder."""
    cb = o.combinators
    ap, le, n = o.ap, o.le, o.n
    top = o.k
    kk = ap(o.k, o.k)
    rep = Report("meet-semilattice", meta={"carrier": n})
    c1, c2, c3, c4 = (rep.add("p0-first"), rep.add("p1-second"),
                      rep.add("pairing-universal"), rep.add("kk-top"))
    pool = realizer_pool(o, include_derived)
    for a in range(n):
        c4.count += 1
        if not le(ap(kk, a), top):
            c4.fail({"a": o.carrier[a]})
        for b in range(n):
            m = meet(o, a, b)
            c1.count += 1
            if not le(ap(cb["p0"], m), a):
                c1.fail({"a": o.carrier[a], "b": o.carrier[b]})
            c2.count += 1
            if not le(ap(cb["p1"], m), b):
                c2.fail({"a": o.carrier[a], "b": o.carrier[b]})
    pairs = {}
    for r in pool:
        for s in pool:
            pairs[r, s] = pair_combinator(o, r, s)
    for c in range(n):
        for a in range(n):
            rs = [r for r in pool if le(ap(r, c), a)]
            if not rs:
                continue
            for b in range(n):
                m = meet(o, a, b)
                for s in pool:
                    if not le(ap(s, c), b):
                        continue
                    for r in rs:
                        c3.count += 1
                        if not le(ap(pairs[r, s], c), m):
                            c3.fail({"r": o.carrier[r], "s": o.carrier[s], "a": o.carrier[a],
                                     "b": o.carrier[b], "c": o.carrier[c]})
    return rep
