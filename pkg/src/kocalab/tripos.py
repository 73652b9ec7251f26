"""The realizability tripos of a filtered OCA over finite index sets.

An index set is ``range(n)``.  A predicate on it is a tuple of carrier
indices of length ``n``.  Realizers are searched in the same pool and order
as :func:`kocalab.oca.entails`.
"""

from dataclasses import dataclass
import itertools

from . import config
from .errors import StructuralError
from .oca import meet, pair_combinator, realizer_pool, uncurry_combinator
from .report import Report


@dataclass(frozen=True)
class FiniteFunction:
    source: int
    target: int
    graph: tuple

    def __post_init__(self):
        graph = tuple(int(v) for v in self.graph)
        if len(graph) != self.source:
            raise StructuralError(f"graph has {len(graph)} entries for a source of size {self.source}")
        if any(not 0 <= v < self.target for v in graph):
            raise StructuralError("graph leaves the target set")
        object.__setattr__(self, "graph", graph)

    def __call__(self, j):
        return self.graph[j]

    def fiber(self, i):
        return [j for j, v in enumerate(self.graph) if v == i]


def identity(n):
    return FiniteFunction(n, n, tuple(range(n)))


def compose(f, g):
    """f . g (apply g first)."""
    if g.target != f.source:
        raise StructuralError("functions do not compose")
    return FiniteFunction(g.source, f.target, tuple(f(g(j)) for j in range(g.source)))


def all_functions(source, target):
    for graph in itertools.product(range(target), repeat=source):
        yield FiniteFunction(source, target, graph)


def all_predicates(x, n):
    return itertools.product(range(x.n), repeat=n)


@dataclass(frozen=True)
class PullbackSquare:
    """``p: P -> J``, ``q: P -> K``, ``f: J -> I``, ``g: K -> I``."""

    P: int
    J: int
    K: int
    I: int
    p: FiniteFunction
    q: FiniteFunction
    f: FiniteFunction
    g: FiniteFunction

    def __post_init__(self):
        shapes = [(self.p, self.P, self.J), (self.q, self.P, self.K),
                  (self.f, self.J, self.I), (self.g, self.K, self.I)]
        for h, s, t in shapes:
            if (h.source, h.target) != (s, t):
                raise StructuralError("square maps have the wrong source or target")
        for j in range(self.J):
            for k in range(self.K):
                hits = sum(1 for x in range(self.P) if self.p(x) == j and self.q(x) == k)
                expected = 1 if self.f(j) == self.g(k) else 0
                if hits != expected:
                    raise StructuralError(f"not a pullback at (j={j}, k={k}): {hits} points over it")


def pullback(f, g):
    """The canonical square on {(j, k) : f(j) = g(k)}."""
    if f.target != g.target:
        raise StructuralError("pullback needs a common codomain")
    pts = [(j, k) for j in range(f.source) for k in range(g.source) if f(j) == g(k)]
    p = FiniteFunction(len(pts), f.source, tuple(j for j, _ in pts))
    q = FiniteFunction(len(pts), g.source, tuple(k for _, k in pts))
    return PullbackSquare(len(pts), f.source, g.source, f.target, p, q, f, g)


def entails_pred(x, phi, psi, include_derived=True):
    """First r in the pool with ``r phi(i) <= psi(i)`` for every i."""
    if len(phi) != len(psi):
        raise StructuralError("predicates live on different index sets")
    for r in realizer_pool(x, include_derived):
        if all(x.leq[x.app[r, a], b] for a, b in zip(phi, psi)):
            return r
    return None


def entails_pred_imp(x, phi, psi):
    """First f in Phi with ``f <= phi(i) -> psi(i)`` for every i."""
    for f in x.phi:
        if all(x.leq[f, x.imp[a, b]] for a, b in zip(phi, psi)):
            return f
    return None


def reindex(f, phi):
    if len(phi) != f.target:
        raise StructuralError("predicate is not on the codomain of the map")
    return tuple(phi[f(j)] for j in range(f.source))


def meet_pred(x, phi, psi):
    return tuple(meet(x, a, b) for a, b in zip(phi, psi))


def top_pred(x, n):
    return (x.k,) * n


def imp_pred(x, phi, psi):
    return tuple(x.to(a, b) for a, b in zip(phi, psi))


def forall_along(x, f, psi):
    """Fiberwise infimum; an empty fiber gives the top of the lattice."""
    if len(psi) != f.source:
        raise StructuralError("predicate is not on the domain of the map")
    return tuple(x.inf([psi[j] for j in f.fiber(i)]) for i in range(f.target))


def _realizes(x, r, phi, psi):
    return all(x.leq[x.app[r, a], b] for a, b in zip(phi, psi))


def _names(x, phi):
    return [x.carrier[v] for v in phi]


def preorder_check(x, n, include_derived=True):
    """Preorder laws and the meet/top structure, each with an explicit realizer."""
    cb = x.combinators
    ap = x.ap
    preds = list(all_predicates(x, n))
    rep = Report("tripos-preorder", meta={"index_size": n, "predicates": len(preds)})
    c_refl, c_trans = rep.add("reflexive-by-i"), rep.add("transitive-by-b")
    c_p0, c_p1, c_pair, c_top = (rep.add("meet-first"), rep.add("meet-second"),
                                 rep.add("meet-universal"), rep.add("top-by-kk"))
    ent = {}
    for phi in preds:
        for psi in preds:
            ent[phi, psi] = entails_pred(x, phi, psi, include_derived)
    kk = ap(x.k, x.k)
    top = top_pred(x, n)
    for phi in preds:
        c_refl.count += 1
        if not _realizes(x, cb["i"], phi, phi):
            c_refl.fail({"phi": _names(x, phi)})
        c_top.count += 1
        if not _realizes(x, kk, phi, top):
            c_top.fail({"phi": _names(x, phi)})
        for psi in preds:
            m = meet_pred(x, phi, psi)
            c_p0.count += 1
            if not _realizes(x, cb["p0"], m, phi):
                c_p0.fail({"phi": _names(x, phi), "psi": _names(x, psi)})
            c_p1.count += 1
            if not _realizes(x, cb["p1"], m, psi):
                c_p1.fail({"phi": _names(x, phi), "psi": _names(x, psi)})
            r = ent[phi, psi]
            if r is None:
                continue
            for theta in preds:
                s = ent[psi, theta]
                if s is not None:
                    c_trans.count += 1
                    if not _realizes(x, ap(cb["b"], s, r), phi, theta):
                        c_trans.fail({"phi": _names(x, phi), "psi": _names(x, psi),
                                      "theta": _names(x, theta)})
                s = ent[phi, theta]
                if s is not None:
                    c_pair.count += 1
                    both = meet_pred(x, psi, theta)
                    if not _realizes(x, pair_combinator(x, r, s), phi, both):
                        c_pair.fail({"phi": _names(x, phi), "psi": _names(x, psi),
                                     "theta": _names(x, theta)})
    return rep


def heyting_pred_check(x, n, include_derived=True):
    """phi /\\ psi |- theta iff phi |- psi -> theta, both ways with realizers."""
    cb = x.combinators
    ap = x.ap
    preds = list(all_predicates(x, n))
    rep = Report("tripos-heyting", meta={"index_size": n, "predicates": len(preds)})
    c_iff, c_fw, c_bw = rep.add("heyting-iff"), rep.add("uncurry-realizer"), rep.add("curry-realizer")
    pool = realizer_pool(x, include_derived)
    uncurry = {f: uncurry_combinator(x, f) for f in pool}
    curry = {f: ap(cb["b"], x.e, ap(cb["b"], ap(cb["b"], f), cb["pair"])) for f in pool}
    for phi in preds:
        for psi in preds:
            m = meet_pred(x, phi, psi)
            for theta in preds:
                it = imp_pred(x, psi, theta)
                left = entails_pred(x, m, theta, include_derived)
                right = entails_pred(x, phi, it, include_derived)
                w = {"phi": _names(x, phi), "psi": _names(x, psi), "theta": _names(x, theta)}
                c_iff.count += 1
                if (left is None) != (right is None):
                    c_iff.fail(w)
                if right is not None:
                    c_fw.count += 1
                    if not _realizes(x, uncurry[right], m, theta):
                        c_fw.fail(w)
                if left is not None:
                    c_bw.count += 1
                    if not _realizes(x, curry[left], phi, it):
                        c_bw.fail(w)
    return rep


def reindex_check(x, max_size=2):
    """Functoriality of reindexing and preservation of meet, top and imp."""
    rep = Report("tripos-reindex", meta={"max_size": max_size})
    c_id, c_comp, c_meet = rep.add("identity"), rep.add("composition"), rep.add("meet-top-imp")
    sizes = range(max_size + 1)
    for a in sizes:
        for phi in all_predicates(x, a):
            c_id.count += 1
            if reindex(identity(a), phi) != phi:
                c_id.fail({"phi": _names(x, phi)})
    for a, b, c in itertools.product(sizes, repeat=3):
        for f in all_functions(b, a):
            for g in all_functions(c, b):
                fg = compose(f, g)
                for phi in all_predicates(x, a):
                    c_comp.count += 1
                    if reindex(fg, phi) != reindex(g, reindex(f, phi)):
                        c_comp.fail({"f": f.graph, "g": g.graph, "phi": _names(x, phi)})
    for a, b in itertools.product(sizes, repeat=2):
        for f in all_functions(b, a):
            for phi in all_predicates(x, a):
                for psi in all_predicates(x, a):
                    c_meet.count += 1
                    ok = (reindex(f, meet_pred(x, phi, psi)) ==
                          meet_pred(x, reindex(f, phi), reindex(f, psi))
                          and reindex(f, top_pred(x, a)) == top_pred(x, b)
                          and reindex(f, imp_pred(x, phi, psi)) ==
                          imp_pred(x, reindex(f, phi), reindex(f, psi)))
                    if not ok:
                        c_meet.fail({"f": f.graph, "phi": _names(x, phi), "psi": _names(x, psi)})
    return rep


def forall_adjunction_check(x, max_size=2, include_derived=True):
    """r realizes f*phi |- psi iff r realizes phi |- forall_f psi (same r)."""
    rep = Report("tripos-forall", meta={"max_size": max_size})
    c_adj, c_inf = rep.add("same-realizer-transfer"), rep.add("fiber-infimum")
    pool = realizer_pool(x, include_derived)
    for i_size, j_size in itertools.product(range(max_size + 1), repeat=2):
        for f in all_functions(j_size, i_size):
            for psi in all_predicates(x, j_size):
                fa = forall_along(x, f, psi)
                for i in range(i_size):
                    c_inf.count += 1
                    vals = [psi[j] for j in f.fiber(i)]
                    lower = [y for y in range(x.n) if all(x.le(y, v) for v in vals)]
                    if fa[i] not in lower or not all(x.le(y, fa[i]) for y in lower):
                        c_inf.fail({"f": f.graph, "psi": _names(x, psi), "i": i})
                for phi in all_predicates(x, i_size):
                    pulled = reindex(f, phi)
                    for r in pool:
                        c_adj.count += 1
                        if _realizes(x, r, pulled, psi) != _realizes(x, r, phi, fa):
                            c_adj.fail({"f": f.graph, "phi": _names(x, phi),
                                        "psi": _names(x, psi), "r": x.carrier[r]})
    return rep


def beck_chevalley_check(x, sq, phi):
    """g*(forall_f phi) equals forall_q(p* phi) pointwise."""
    rep = Report("beck-chevalley", meta={"P": sq.P, "J": sq.J, "K": sq.K, "I": sq.I})
    c = rep.add("pointwise-equality")
    lhs = reindex(sq.g, forall_along(x, sq.f, phi))
    rhs = forall_along(x, sq.q, reindex(sq.p, phi))
    c.count = sq.K
    for k in range(sq.K):
        if lhs[k] != rhs[k]:
            c.fail({"k": k, "phi": _names(x, phi), "lhs": x.carrier[lhs[k]], "rhs": x.carrier[rhs[k]]})
    return rep


def beck_chevalley_suite(x, max_size=2, random_squares=0, max_random_size=4, rng=None):
    """Every square of canonical pullbacks up to ``max_size``, plus random ones.

    Each square is built as an actual pullback set and revalidated against
    the unique-existence condition before use.
    """
    rng = rng if rng is not None else config.make_rng()
    rep = Report("beck-chevalley-suite")
    squares = []
    for i, j, k in itertools.product(range(max_size + 1), repeat=3):
        for f in all_functions(j, i):
            for g in all_functions(k, i):
                squares.append(pullback(f, g))
    for _ in range(random_squares):
        i, j, k = (int(v) for v in rng.integers(1, max_random_size + 1, size=3))
        f = FiniteFunction(j, i, tuple(int(v) for v in rng.integers(0, i, size=j)))
        g = FiniteFunction(k, i, tuple(int(v) for v in rng.integers(0, i, size=k)))
        squares.append(pullback(f, g))
    c_val, c_bc = rep.add("squares-validated"), rep.add("pointwise-equality")
    for sq in squares:
        PullbackSquare(sq.P, sq.J, sq.K, sq.I, sq.p, sq.q, sq.f, sq.g)
        c_val.count += 1
        preds = all_predicates(x, sq.J)
        if x.n ** sq.J > config.MAX_PREDICATES:
            preds = (tuple(int(v) for v in rng.integers(0, x.n, size=sq.J)) for _ in range(64))
        for phi in preds:
            sub = beck_chevalley_check(x, sq, phi)
            c_bc.count += 1
            if not sub.passed:
                c_bc.fail(sub.checks[0].witness | {"f": sq.f.graph, "g": sq.g.graph})
    rep.meta["squares"] = len(squares)
    return rep


def generic_predicate_check(x, n):
    """Every phi on I is the reindexing of id_A along chi = phi."""
    rep = Report("generic-predicate", meta={"index_size": n})
    c = rep.add("reindex-generic-exact")
    generic = tuple(range(x.n))
    for phi in all_predicates(x, n):
        c.count += 1
        if reindex(FiniteFunction(n, x.n, phi), generic) != tuple(phi):
            c.fail({"phi": _names(x, phi)})
    return rep


def classical_check(x, n, bot=None):
    """c uniformly realizes not not phi |- phi."""
    bot = x.bottom if bot is None else bot
    rep = Report("tripos-classical", meta={"index_size": n})
    c = rep.add("c-realizes-dne")
    for phi in all_predicates(x, n):
        nn = tuple(x.to(x.to(a, bot), bot) for a in phi)
        c.count += 1
        if not _realizes(x, x.c, nn, phi):
            c.fail({"phi": _names(x, phi)})
    return rep


def tripos_suite(x, n, rng=None, random_squares=100):
    """Every tripos check for index sets up to size ``n``."""
    rep = Report("tripos", meta={"index_size": n, "carrier": x.n})
    for size in range(n + 1):
        rep.extend(preorder_check(x, size), f"preorder[{size}]")
        rep.extend(heyting_pred_check(x, size), f"heyting[{size}]")
        rep.extend(generic_predicate_check(x, size), f"generic[{size}]")
        if hasattr(x, "c"):
            rep.extend(classical_check(x, size), f"classical[{size}]")
    rep.extend(reindex_check(x, n), "reindex")
    rep.extend(forall_adjunction_check(x, n), "forall")
    rep.extend(beck_chevalley_suite(x, n, random_squares=random_squares, rng=rng), "beck-chevalley")
    return rep
