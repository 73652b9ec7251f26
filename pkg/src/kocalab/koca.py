"""Implicative and Krivine OCAs, proper quadruples and the Heyting layer.

Carriers are finite, so inf-completeness is checked as "complete lattice":
a top element plus binary meets.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import ProperQuadrupleError, StructuralError
from .oca import FilteredOCA, _record, check_oca, entails, meet, realizer_pool, uncurry_combinator
from .report import Report


@dataclass(frozen=True, eq=False)
class IOCA(FilteredOCA):
    imp: np.ndarray
    e: int

    def __post_init__(self):
        super().__post_init__()
        self._set_table("imp", np.int64, (self.n, self.n))

    def _distinguished(self):
        return ("k", "s", "e")

    def to(self, a, b):
        return int(self.imp[a, b])

    def neg(self, a, bot=None):
        return self.to(a, self.bottom if bot is None else bot)


@dataclass(frozen=True, eq=False)
class KOCA(IOCA):
    c: int

    def _distinguished(self):
        return ("k", "s", "e", "c")


def meet_table(leq):
    """Binary meets of a finite poset, or None plus a witness pair."""
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            lower = np.flatnonzero(leq[:, a] & leq[:, b])
            g = next((int(x) for x in lower if np.all(leq[lower, x])), None)
            if g is None:
                return None, (a, b)
            out[a, b] = out[b, a] = g
    return out, None


def top_of(leq):
    leq = np.asarray(leq, dtype=bool)
    tops = np.flatnonzero(np.all(leq, axis=0))
    return int(tops[0]) if len(tops) else None


def complete_lattice_check(o, rep):
    c = rep.add("inf-complete")
    c.count = o.n * o.n
    if top_of(o.leq) is None:
        c.fail({"missing": "top"})
        return c
    _, bad = meet_table(o.leq)
    if bad is not None:
        c.fail({"a": o.carrier[bad[0]], "b": o.carrier[bad[1]]})
    return c


def check_ioca(x, rep=None):
    """Every OCA invariant plus implication monotonicity, (PA), (E), e in Phi."""
    rep = check_oca(x, rep or Report("ioca", meta={"carrier": x.n}))
    n, L, A, T = x.n, x.leq, x.app, x.imp
    r = np.arange(n)
    complete_lattice_check(x, rep)
    _record(rep, x, "imp-antitone-left", np.broadcast_to(L[:, :, None], (n, n, n)),
            L[T[None, :, :], T[:, None, :]], ("a", "a2", "b"))
    _record(rep, x, "imp-monotone-right", np.broadcast_to(L[None, :, :], (n, n, n)),
            L[T[:, :, None], T[:, None, :]], ("a", "b", "b2"))
    _record(rep, x, "PA", L[:, T], L[A[:, :, None], r[None, None, :]], ("a", "b", "c"))
    _record(rep, x, "E", L[A[:, :, None], r[None, None, :]],
            L[A[x.e][:, None, None], T[None, :, :]], ("a", "b", "c"))
    c = rep.add("phi-contains-e")
    c.count = 1
    if not x.in_phi(x.e):
        c.fail({"combinator": "e"})
    return rep


def check_koca(x, rep=None):
    """check_ioca plus c in Phi and Peirce: c <= ((a -> b) -> a) -> a."""
    rep = check_ioca(x, rep or Report("koca", meta={"carrier": x.n}))
    n, L, T = x.n, x.leq, x.imp
    r = np.arange(n)
    peirce = T[T[T, r[:, None]], r[:, None]]
    _record(rep, x, "C", np.ones((n, n), bool), L[x.c, peirce], ("a", "b"))
    c = rep.add("phi-contains-c")
    c.count = 1
    if not x.in_phi(x.c):
        c.fail({"combinator": "c"})
    return rep


@dataclass(frozen=True, eq=False)
class ProperQuadruple:
    carrier: tuple
    leq: np.ndarray
    imp: np.ndarray
    phi: tuple

    def __post_init__(self):
        carrier = tuple(self.carrier)
        n = len(carrier)
        if n == 0 or len(set(carrier)) != n:
            raise StructuralError("carrier must be nonempty with unique names")
        object.__setattr__(self, "carrier", carrier)
        leq = np.array(self.leq, dtype=bool)
        imp = np.array(self.imp, dtype=np.int64)
        if leq.shape != (n, n) or imp.shape != (n, n):
            raise StructuralError("leq and imp must be |A| x |A| tables")
        if imp.min() < 0 or imp.max() >= n:
            raise StructuralError("imp table refers to an unknown element")
        leq.setflags(write=False)
        imp.setflags(write=False)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "imp", imp)
        phi = tuple(sorted({int(v) for v in self.phi}))
        if any(not 0 <= v < n for v in phi):
            raise StructuralError("filter refers to an unknown element")
        object.__setattr__(self, "phi", phi)

    @property
    def n(self):
        return len(self.carrier)


def derive_structure(q):
    """(app, k, s, e, c) defined from the quadruple by infima.

    Raises ProperQuadrupleError when the order is not a complete lattice or
    the implication is not antitone/monotone.
    """
    n, L, T = q.n, q.leq, q.imp
    M, bad = meet_table(L)
    top = top_of(L)
    if top is None:
        raise ProperQuadrupleError("inf-complete", {"missing": "top"})
    if bad is not None:
        raise ProperQuadrupleError("inf-complete", {"a": q.carrier[bad[0]], "b": q.carrier[bad[1]]})
    for a in range(n):
        for a2 in range(n):
            if not L[a, a2]:
                continue
            for b in range(n):
                if not L[T[a2, b], T[a, b]]:
                    raise ProperQuadrupleError("imp-antitone-left",
                                               {"a": q.carrier[a], "a2": q.carrier[a2], "b": q.carrier[b]})
                if not L[T[b, a], T[b, a2]]:
                    raise ProperQuadrupleError("imp-monotone-right",
                                               {"a": q.carrier[b], "b": q.carrier[a], "b2": q.carrier[a2]})

    def inf(values):
        return reduce(lambda u, v: int(M[u, v]), (int(v) for v in np.ravel(values)), top)

    r = np.arange(n)
    app = np.array([[inf(r[L[a, T[b]]]) for b in range(n)] for a in range(n)], dtype=np.int64)
    k = inf(T[r[:, None], T[r[None, :], r[:, None]]])
    acbc = app[app[:, None, :], app[None, :, :]]                     # (a, b, c)
    s = inf(T[r[:, None, None], T[r[None, :, None], T[r[None, None, :], acbc]]])
    e = inf(T[r[:, None], T[r[None, :], app]])
    c = inf(T[T[T, r[:, None]], r[:, None]])
    return app, k, s, e, c


def properness_report(q):
    rep = Report("proper-quadruple", meta={"carrier": q.n})
    try:
        app, k, s, e, c = derive_structure(q)
    except ProperQuadrupleError as err:
        rep.add(err.clause).fail(err.witness)
        return rep, None
    phi = set(q.phi)
    chk = rep.add("phi-app-closed")
    for f in q.phi:
        for g in q.phi:
            chk.count += 1
            if int(app[f, g]) not in phi:
                chk.fail({"f": q.carrier[f], "g": q.carrier[g]})
    for name, v in (("k", k), ("s", s), ("e", e), ("c", c)):
        chk = rep.add(f"phi-contains-{name}")
        chk.count = 1
        if v not in phi:
            chk.fail({name: q.carrier[v]})
    return rep, (app, k, s, e, c)


def from_proper_quadruple(q):
    """The KOCA with derived application and k, s, e, c."""
    rep, derived = properness_report(q)
    bad = rep.failures()
    if bad:
        raise ProperQuadrupleError(bad[0].name, bad[0].witness)
    app, k, s, e, c = derived
    return KOCA(q.carrier, q.leq, app, k, s, q.phi, q.imp, e, c)


def ioca_from_quadruple(q):
    """Like from_proper_quadruple but without requiring c in Phi.

    The Peirce infimum is still stored as ``c``, so the result is a KOCA
    record that may fail check_koca (only its IOCA layer is guaranteed).
    """
    rep, derived = properness_report(q)
    bad = [ch for ch in rep.failures() if ch.name != "phi-contains-c"]
    if bad:
        raise ProperQuadrupleError(bad[0].name, bad[0].witness)
    app, k, s, e, c = derived
    return KOCA(q.carrier, q.leq, app, k, s, q.phi, q.imp, e, c)


def boolean_quadruple(n, phi=None):
    """Powerset of n atoms; element i is the atom set with bitmask i."""
    if not 0 <= n <= 4:
        raise StructuralError("boolean instances are limited to 0..4 atoms")
    size = 1 << n
    top = size - 1
    carrier = tuple("b" + format(i, f"0{n}b") if n else "b" for i in range(size))
    r = np.arange(size)
    leq = (r[:, None] & ~r[None, :]) == 0
    imp = (top & ~r[:, None]) | r[None, :]
    return ProperQuadruple(carrier, leq, imp, (top,) if phi is None else phi)


def boolean(n, phi=None):
    """The KOCA of the Boolean algebra with n atoms (Phi = {top} by default)."""
    return from_proper_quadruple(boolean_quadruple(n, phi))


def heyting_chain_quadruple(m, phi=None):
    """Chain h0 < h1 < ... with Heyting implication."""
    if m < 1:
        raise StructuralError("a chain needs at least one element")
    carrier = tuple(f"h{i}" for i in range(m))
    r = np.arange(m)
    leq = r[:, None] <= r[None, :]
    imp = np.where(leq, m - 1, r[None, :])
    return ProperQuadruple(carrier, leq, imp, (m - 1,) if phi is None else phi)


def heyting_chain(m, phi=None):
    return ioca_from_quadruple(heyting_chain_quadruple(m, phi))


def heyting_check(x, include_derived=True):
    """Realizability preorder is Heyting, with the realizers made explicit.

    Item 1: ``a [= b`` iff some f in Phi has ``f <= a -> b``; the adjunctor
    turns a realizer g into ``e g``.  Item 2: ``pair a b [= c`` iff
    ``a [= b -> c``, via ``d(f)`` one way and ``b e (b (b f) pair)`` the other.
    """
    n, ap, le, to = x.n, x.ap, x.le, x.to
    cb = x.combinators
    name = x.carrier.__getitem__
    pool = realizer_pool(x, include_derived)
    rep = Report("heyting", meta={"carrier": n, "pool": len(pool)})
    c_iff, c_e, c_pa = rep.add("entails-iff-below-imp"), rep.add("adjunctor-realizer"), rep.add("imp-realizer")
    c_fw, c_bw, c_iff2 = rep.add("uncurry-realizer"), rep.add("curry-realizer"), rep.add("heyting-iff")
    for a in range(n):
        for b in range(n):
            g = entails(x, a, b, include_derived)
            f = next((f for f in pool if le(f, to(a, b))), None)
            c_iff.count += 1
            if (g is None) != (f is None):
                c_iff.fail({"a": name(a), "b": name(b)})
            if g is not None:
                c_e.count += 1
                if not le(ap(x.e, g), to(a, b)):
                    c_e.fail({"g": name(g), "a": name(a), "b": name(b)})
            if f is not None:
                c_pa.count += 1
                if not le(ap(f, a), b):
                    c_pa.fail({"f": name(f), "a": name(a), "b": name(b)})
    curry = {}
    for f in pool:
        curry[f] = ap(cb["b"], x.e, ap(cb["b"], ap(cb["b"], f), cb["pair"]))
    uncurry = {f: uncurry_combinator(x, f) for f in pool}
    for a in range(n):
        for b in range(n):
            m = meet(x, a, b)
            for c in range(n):
                bc = to(b, c)
                left = entails(x, m, c, include_derived)
                right = entails(x, a, bc, include_derived)
                c_iff2.count += 1
                if (left is None) != (right is None):
                    c_iff2.fail({"a": name(a), "b": name(b), "c": name(c)})
                if right is not None:
                    c_fw.count += 1
                    if not le(ap(uncurry[right], m), c):
                        c_fw.fail({"f": name(right), "a": name(a), "b": name(b), "c": name(c)})
                if left is not None:
                    c_bw.count += 1
                    if not le(ap(curry[left], a), bc):
                        c_bw.fail({"f": name(left), "a": name(a), "b": name(b), "c": name(c)})
    return rep


def double_negation_realizer(x, bot=None):
    """c realizes ((a -> bot) -> bot) [= a for every a."""
    bot = x.bottom if bot is None else bot
    rep = Report("double-negation", meta={"carrier": x.n, "bot": x.carrier[bot]})
    chk = rep.add("c-realizes-dne")
    for a in range(x.n):
        chk.count += 1
        if not x.le(x.ap(x.c, x.to(x.to(a, bot), bot)), a):
            chk.fail({"a": x.carrier[a]})
    return rep
