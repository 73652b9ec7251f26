"""Translations between abstract Krivine structures and KOCAs.

``koca_to_aks`` reads a KOCA as a machine whose terms and stacks are both
the carrier, with ``<=`` as the pole and implication as push.
``aks_to_koca`` goes the other way: truth values are the closed stack sets,
ordered by reverse inclusion.
"""

import itertools

import numpy as np

from . import config
from .aks import AbstractKrivineStructure, derived_combinators, op_circ, op_imp, op_imp_raw
from .combterm import Const, app
from .koca import KOCA
from .lattice import (
    RealizabilityLattice, bits, closure_stacks, enumerate_closed_stack_sets, perp_of_stacks,
    perp_of_terms,
)
from .oca import eval_term
from .report import Report


def koca_to_aks(a):
    """Lambda = Pi = A, pole = leq, push = imp, store(p) = p -> bot, QP = Phi."""
    bot = a.bottom
    lat = RealizabilityLattice(a.carrier, a.carrier, a.leq, a.imp)
    store = np.array([a.to(p, bot) for p in range(a.n)], dtype=np.int64)
    const = lambda i: Const(a.carrier[i])
    e, k, s, c = const(a.e), const(a.k), const(a.s), const(a.c)
    B = app(s, app(k, s), k)
    K = eval_term(a, app(e, app(B, e, k)))
    S = eval_term(a, app(e, app(B, app(B, e, app(B, e)), s)))
    CC = eval_term(a, app(e, c))
    qp = sum(1 << f for f in a.phi)
    return AbstractKrivineStructure(lat, a.app, store, qp, K, S, CC)


def stack_set_label(lat, P):
    return "{" + ",".join(lat.stack_names(P)) + "}"


def aks_to_koca(aks, max_stacks=None):
    """Closed stack sets under reverse inclusion, with circ and imp closed."""
    lat = aks.lat
    closed = enumerate_closed_stack_sets(lat, max_stacks)
    index = {P: i for i, P in enumerate(closed)}
    leq = np.array([[Q & ~P == 0 for Q in closed] for P in closed], dtype=bool)
    appt = np.array([[index[op_circ(aks, P, Q)] for Q in closed] for P in closed], dtype=np.int64)
    impt = np.array([[index[op_imp(aks, P, Q)] for Q in closed] for P in closed], dtype=np.int64)
    d = derived_combinators(aks)
    gen = lambda t: index[lat._term_perp[t]]
    k, s, c, e = gen(aks.K), gen(aks.S), gen(aks.CC), gen(d["EE"])
    qp = list(bits(aks.qp))
    phi = tuple(i for i, P in enumerate(closed) if any(P & ~lat._term_perp[t] == 0 for t in qp))
    carrier = tuple(stack_set_label(lat, P) for P in closed)
    out = KOCA(carrier, leq, appt, k, s, phi, impt, e, c)
    object.__setattr__(out, "stack_sets", tuple(closed))
    return out


def up_mask(a, x):
    """Principal filter of ``x`` as a stack bitmask of koca_to_aks(a)."""
    return sum(1 << y for y in a.up(x))


def down_mask(a, x):
    return sum(1 << y for y in a.down(x))


def galois_check(a, max_subsets=None):
    """The four clauses relating closed stack sets to principal filters."""
    K = koca_to_aks(a)
    lat = K.lat
    n = a.n
    rep = Report("galois", meta={"carrier": n})
    c1, c2, c3, c3b, c4 = (rep.add("perp-is-principal"), rep.add("inf-up-sup-down"),
                           rep.add("closed-are-principal-filters"), rep.add("f-g-inverse"),
                           rep.add("inf-of-imp"))
    cap = config.MAX_SUBSET_SCAN if max_subsets is None else max_subsets
    if (1 << n) <= cap:
        subsets = range(1 << n)
    else:
        rng = config.make_rng()
        subsets = sorted({int(v) for v in rng.integers(0, 1 << n, size=cap)})
        c1.detail = f"sampled {len(subsets)} of {1 << n} subsets"
    for U in subsets:
        members = list(bits(U))
        c1.count += 1
        if perp_of_stacks(lat, U) != down_mask(a, a.inf(members)) or \
                perp_of_terms(lat, U) != up_mask(a, a.sup(members)):
            c1.fail({"U": [a.carrier[i] for i in members]})
    for x in range(n):
        c2.count += 1
        if not (a.inf(a.up(x)) == x == a.sup(a.down(x))):
            c2.fail({"a": a.carrier[x]})
    closed = enumerate_closed_stack_sets(lat)
    filters = {up_mask(a, x) for x in range(n)}
    c3.count = len(closed)
    if set(closed) != filters or len(closed) != n:
        odd = sorted(set(closed) ^ filters)
        c3.fail({"stack_set": lat.stack_names(odd[0]) if odd else None, "closed": len(closed)})
    for x in range(n):
        c3b.count += 1
        if a.inf(list(bits(up_mask(a, x)))) != x:
            c3b.fail({"a": a.carrier[x]})
    for P in closed:
        c3b.count += 1
        if up_mask(a, a.inf(list(bits(P)))) != P:
            c3b.fail({"P": lat.stack_names(P)})
    for x in range(n):
        for y in range(n):
            P, Q = up_mask(a, x), up_mask(a, y)
            c4.count += 1
            raw = a.inf(list(bits(op_imp_raw(K, P, Q))))
            cl = a.inf(list(bits(op_imp(K, P, Q))))
            if not (raw == cl == a.to(x, y)):
                c4.fail({"a": a.carrier[x], "b": a.carrier[y]})
    return rep


def order_iso_check(a):
    """x -> up(x) is an order isomorphism onto aks_to_koca(koca_to_aks(a))."""
    K = koca_to_aks(a)
    back = aks_to_koca(K)
    pos = {P: i for i, P in enumerate(back.stack_sets)}
    rep = Report("order-iso", meta={"carrier": a.n, "image": back.n})
    c_bij, c_ord, c_imp = rep.add("bijection"), rep.add("order"), rep.add("imp")
    f = [pos.get(up_mask(a, x)) for x in range(a.n)]
    c_bij.count = a.n
    if None in f or len(set(f)) != a.n or back.n != a.n:
        c_bij.fail({"image": back.n})
        return rep
    for x in range(a.n):
        for y in range(a.n):
            c_ord.count += 1
            if a.le(x, y) != back.le(f[x], f[y]):
                c_ord.fail({"a": a.carrier[x], "b": a.carrier[y]})
            c_imp.count += 1
            if f[a.to(x, y)] != back.to(f[x], f[y]):
                c_imp.fail({"a": a.carrier[x], "b": a.carrier[y]})
    return rep


def _predicate_pairs(count, index_size, rng, samples):
    """All pairs of predicates, or a seeded sample when there are too many."""
    preds = count ** index_size
    if preds <= config.MAX_PREDICATES:
        all_preds = list(itertools.product(range(count), repeat=index_size))
        return ((p, q) for p in all_preds for q in all_preds), True
    draws = rng.integers(0, count, size=(samples, 2, index_size))
    return ((tuple(int(v) for v in d[0]), tuple(int(v) for v in d[1])) for d in draws), False


def streicher_iso_check(aks, index_size, rng=None, samples=4096):
    """Entailment in T(A_K)(I) agrees with entailment in T_bot(K)(I).

    Three forms are compared for each predicate pair: an application realizer
    in A_K, a filter element below the pointwise implication, and a uniform
    quasi-proof orthogonal to every ``phi(i) => psi(i)``.
    """
    from .tripos import entails_pred, entails_pred_imp
    rng = rng if rng is not None else config.make_rng()
    A = aks_to_koca(aks)
    lat = aks.lat
    qp = list(bits(aks.qp))
    sets = A.stack_sets
    rep = Report("streicher-iso", meta={"index_size": index_size, "carrier": A.n})
    c_app, c_imp = rep.add("app-form-iff-aks-form"), rep.add("imp-form-iff-aks-form")
    pairs, exhaustive = _predicate_pairs(A.n, index_size, rng, samples)
    rep.meta["exhaustive"] = exhaustive
    raw = {}
    for phi, psi in pairs:
        targets = []
        for i in range(index_size):
            key = (phi[i], psi[i])
            if key not in raw:
                raw[key] = op_imp_raw(aks, sets[phi[i]], sets[psi[i]])
            targets.append(raw[key])
        aks_side = any(all(t_ok(lat, t, P) for P in targets) for t in qp)
        app_side = entails_pred(A, phi, psi) is not None
        imp_side = entails_pred_imp(A, phi, psi) is not None
        c_app.count += 1
        c_imp.count += 1
        w = {"phi": [A.carrier[v] for v in phi], "psi": [A.carrier[v] for v in psi]}
        if app_side != aks_side:
            c_app.fail(w)
        if imp_side != aks_side:
            c_imp.fail(w)
    return rep


def t_ok(lat, t, P):
    return P & ~lat._term_perp[t] == 0


def roundtrip_tripos_equivalence(a, index_size, rng=None, samples=4096):
    """phi |- psi in T(A)(I) iff up.phi |- up.psi in T_bot(K_A)(I)."""
    from .tripos import entails_pred
    rng = rng if rng is not None else config.make_rng()
    K = koca_to_aks(a)
    lat = K.lat
    qp = list(bits(K.qp))
    up = [up_mask(a, x) for x in range(a.n)]
    rep = Report("roundtrip-tripos", meta={"index_size": index_size, "carrier": a.n})
    c_eq, c_inf, c_img = rep.add("entailment-preserved-reflected"), rep.add("inf-chain"), rep.add("image-closed")
    for x in range(a.n):
        c_img.count += 1
        if closure_stacks(lat, up[x]) != up[x]:
            c_img.fail({"a": a.carrier[x]})
    for x in range(a.n):
        for y in range(a.n):
            c_inf.count += 1
            if a.inf(list(bits(op_imp_raw(K, up[x], up[y])))) != a.to(x, y):
                c_inf.fail({"a": a.carrier[x], "b": a.carrier[y]})
    pairs, exhaustive = _predicate_pairs(a.n, index_size, rng, samples)
    rep.meta["exhaustive"] = exhaustive
    raw = {}
    for phi, psi in pairs:
        targets = []
        for i in range(index_size):
            key = (phi[i], psi[i])
            if key not in raw:
                raw[key] = op_imp_raw(K, up[phi[i]], up[psi[i]])
            targets.append(raw[key])
        left = entails_pred(a, phi, psi) is not None
        right = any(all(t_ok(lat, t, P) for P in targets) for t in qp)
        c_eq.count += 1
        if left != right:
            c_eq.fail({"phi": [a.carrier[v] for v in phi], "psi": [a.carrier[v] for v in psi]})
    return rep

