"""Abstract Krivine structures over a finite realizability lattice.

Terms and stacks are indices into ``lat.terms`` / ``lat.stacks``; sets are
bitmasks as in :mod:`kocalab.lattice`.  Stack pushing associates to the
right (``t . s . p`` is ``t . (s . p)``), application to the left.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import combterm
from .errors import StructuralError
from .lattice import (
    as_mask, bits, closure_stacks, enumerate_closed_stack_sets,
    perp_of_stacks, perp_of_terms, push_set, right_conductor,
)
from .report import Report


@dataclass(frozen=True, eq=False)
class AbstractKrivineStructure:
    lat: object
    app: np.ndarray
    store: np.ndarray
    qp: int
    K: int
    S: int
    CC: int

    def __post_init__(self):
        lat = self.lat
        if lat.push is None:
            raise StructuralError("an AKS needs a lattice with a push map")
        n, m = lat.n_terms, lat.n_stacks
        app = np.asarray(self.app, dtype=np.int64).reshape(n, n).copy()
        store = np.asarray(self.store, dtype=np.int64).reshape(m).copy()
        if app.size and (app.min() < 0 or app.max() >= n):
            raise StructuralError("app table refers to an unknown term")
        if store.size and (store.min() < 0 or store.max() >= n):
            raise StructuralError("store table refers to an unknown term")
        for name in ("K", "S", "CC"):
            v = getattr(self, name)
            if not 0 <= v < n:
                raise StructuralError(f"combinator {name} is not a term index")
        app.setflags(write=False)
        store.setflags(write=False)
        object.__setattr__(self, "app", app)
        object.__setattr__(self, "store", store)
        object.__setattr__(self, "qp", as_mask(self.qp, n, "quasi-proof set"))

    @property
    def terms(self):
        return self.lat.terms

    @property
    def stacks(self):
        return self.lat.stacks

    def ap(self, t, u):
        return int(self.app[t, u])

    def push(self, t, p):
        return int(self.lat.push[t, p])

    def replace(self, **changes):
        fields = dict(lat=self.lat, app=self.app, store=self.store, qp=self.qp,
                      K=self.K, S=self.S, CC=self.CC)
        fields.update(changes)
        return AbstractKrivineStructure(**fields)


def eval_term(aks, term, env=None):
    """Evaluate a combinator term in Lambda (k, s, c name K, S, cc)."""
    combs = {"k": aks.K, "s": aks.S, "c": aks.CC}

    def comb_of(name):
        if name not in combs:
            raise combterm.EvaluationError(f"an AKS has no combinator {name!r}")
        return combs[name]

    return combterm.evaluate(term, aks.lat.term_index, comb_of, aks.ap, env)


def derived_combinators(aks):
    """I = SKK, B = S(KS)K, E = S(KI) and the adjunctor EE."""
    K, S, ap = aks.K, aks.S, aks.ap
    I = ap(ap(S, K), K)
    B = ap(ap(S, ap(K, S)), K)
    E = ap(S, ap(K, I))
    return {"I": I, "B": B, "E": E, "EE": ap(E, E)}


def app_set(aks, L, M):
    """L M = {t u : t in L, u in M}."""
    out = 0
    for t in bits(L):
        for u in bits(M):
            out |= 1 << int(aks.app[t, u])
    return out


def realizes(aks, t, P):
    """t is orthogonal to every stack of P."""
    return P & ~aks.lat._term_perp[t] == 0


def op_imp_raw(aks, P, Q):
    """P => Q = ^perp P . Q (not closed in general)."""
    return push_set(aks.lat, perp_of_stacks(aks.lat, P), Q)


def op_circ_raw(aks, P, Q):
    """P o Q = ^perp Q ~> P (not closed in general)."""
    return right_conductor(aks.lat, perp_of_stacks(aks.lat, Q), P)


def op_imp(aks, P, Q):
    return closure_stacks(aks.lat, op_imp_raw(aks, P, Q))


def op_circ(aks, P, Q):
    return closure_stacks(aks.lat, op_circ_raw(aks, P, Q))


def op_diamond(aks, P, Q):
    """((^perp P)(^perp Q))^perp; closed for arbitrary P, Q since it is a perp."""
    lat = aks.lat
    return perp_of_terms(lat, app_set(aks, perp_of_stacks(lat, P), perp_of_stacks(lat, Q)))


def _witness(aks, kinds, idx):
    names = {"t": "terms", "s": "terms", "u": "terms", "v": "terms",
             "pi": "stacks", "pi2": "stacks"}
    return {k: getattr(aks.lat, names[k])[int(i)] for k, i in zip(kinds, idx)}


def _first(viol):
    hits = np.argwhere(viol)
    return None if len(hits) == 0 else hits[0]


def check_aks_axioms(aks):
    """Exhaustive scan of (S1)-(S5) plus the quasi-proof conditions."""
    lat = aks.lat
    pole, push, app, store = lat.pole, lat.push, aks.app, aks.store
    n, m = lat.n_terms, lat.n_stacks
    rep = Report("aks-axioms", meta={"terms": n, "stacks": m})

    c = rep.add("qp-contains-combinators")
    c.count = 3
    for name in ("K", "S", "CC"):
        if not (aks.qp >> getattr(aks, name)) & 1:
            c.fail({"combinator": name})

    c = rep.add("qp-app-closed")
    q = list(bits(aks.qp))
    for t in q:
        for u in q:
            c.count += 1
            if not (aks.qp >> int(app[t, u])) & 1:
                c.fail({"t": lat.terms[t], "u": lat.terms[u]})

    def record(name, premise, conclusion, kinds):
        chk = rep.add(name)
        chk.count = int(premise.size)
        hit = _first(premise & ~conclusion)
        if hit is not None:
            chk.fail(_witness(aks, kinds, hit))

    # (S1) t | s.pi  =>  ts | pi          axes (t, s, pi)
    record("S1", pole[:, push], pole[app], ("t", "s", "pi"))
    # (S2) t | pi  =>  K | t.s.pi         axes (t, s, pi)
    tsp = push[:, push]
    record("S2", np.broadcast_to(pole[:, None, :], (n, n, m)), pole[aks.K][tsp],
           ("t", "s", "pi"))
    # (S3) tu(su) | pi  =>  S | t.s.u.pi  axes (t, s, u, pi)
    tu_su = app[app[:, None, :], app[None, :, :]]
    record("S3", pole[tu_su], pole[aks.S][push[:, push[:, push]]], ("t", "s", "u", "pi"))
    # (S4) t | k_pi.pi  =>  cc | t.pi     axes (t, pi)
    kp = push[store, np.arange(m)] if m else np.zeros(0, dtype=np.int64)
    record("S4", pole[:, kp], pole[aks.CC][push], ("t", "pi"))
    # (S5) t | pi  =>  k_pi | t.pi'       axes (t, pi, pi')
    concl = pole[store][:, push]               # (pi, t, pi')
    record("S5", np.broadcast_to(pole[:, :, None], (n, m, m)),
           np.transpose(concl, (1, 0, 2)), ("t", "pi", "pi2"))
    return rep


def verify_aks_lemmas(aks, all_subsets=False, max_stacks=None):
    """Executable checks of the consequences of (S1)-(S5).

    Quantifies over the closed stack sets by default; ``all_subsets`` widens
    the family to every subset of Pi (every check here holds in that
    generality, so the flag is a stronger test, not a different one).
    """
    lat = aks.lat
    n, m = lat.n_terms, lat.n_stacks
    d = derived_combinators(aks)
    I, B, E, EE = d["I"], d["B"], d["E"], d["EE"]
    if all_subsets:
        family = list(range(1 << m))
    else:
        family = enumerate_closed_stack_sets(lat, max_stacks)
    closed = set(enumerate_closed_stack_sets(lat, max_stacks))
    rep = Report("aks-lemmas", meta={"family": len(family), "all_subsets": all_subsets})

    perp_s = lru_cache(None)(lambda P: perp_of_stacks(lat, P))
    perp_t = lru_cache(None)(lambda L: perp_of_terms(lat, L))
    clo = lru_cache(None)(lambda P: perp_t(perp_s(P)))
    imp_raw = lru_cache(None)(lambda P, Q: push_set(lat, perp_s(P), Q))
    imp = lru_cache(None)(lambda P, Q: clo(imp_raw(P, Q)))
    circ = lru_cache(None)(lambda P, Q: clo(right_conductor(lat, perp_s(Q), P)))
    diamond = lru_cache(None)(lambda P, Q: perp_t(app_set(aks, perp_s(P), perp_s(Q))))
    E_of = lru_cache(None)(lambda L: app_set(aks, 1 << E, L))
    orth = lat._term_perp

    def real(t, P):
        return P & ~orth[t] == 0

    def sub(X, Y):
        return X & ~Y == 0

    def names(**kw):
        out = {}
        for k, v in kw.items():
            if k in ("P", "Q", "R"):
                out[k] = lat.stack_names(v)
            elif k in ("pi",):
                out[k] = lat.stacks[v]
            else:
                out[k] = lat.terms[v]
        return out

    c = rep.add("qp-contains-derived")
    c.count = 4
    for k, v in d.items():
        if not (aks.qp >> v) & 1:
            c.fail({"combinator": k})

    # per-term / per-stack rules
    c6, c8, c10 = rep.add("I-orth"), rep.add("B-orth"), rep.add("E-s-eta")
    for t in range(n):
        for p in range(m):
            c6.count += 1
            if orth[t] >> p & 1 and not real(I, 1 << aks.push(t, p)):
                c6.fail(names(t=t, pi=p))
        for u in range(n):
            for p in range(m):
                c10.count += 1
                if real(aks.ap(t, u), 1 << p) and not real(aks.ap(E, t), 1 << aks.push(u, p)):
                    c10.fail(names(t=t, u=u, pi=p))
                for v in range(n):
                    c8.count += 1
                    if real(t, 1 << aks.push(aks.ap(u, v), p)):
                        stk = aks.push(t, aks.push(u, aks.push(v, p)))
                        if not real(B, 1 << stk):
                            c8.fail(names(t=t, u=u, v=v, pi=p))

    # pairs
    c_mp, c_I, c_cd, c_cd2 = (rep.add("modus-ponens"), rep.add("I-realizes"),
                              rep.add("circ-sub-diamond"), rep.add("circ-app-orth"))
    c_k, c_ins = rep.add("K-realizes"), rep.add("imp-closure-insensitive")
    c_e1, c_e2 = rep.add("s-eta.diamond-conductor"), rep.add("s-eta.diamond-push")
    c_e4, c_e6 = rep.add("s-eta.imp-stable"), rep.add("s-eta.diamond-circ")
    c_e5, c_e7 = rep.add("s-eta.term-circ"), rep.add("s-eta.adjunctor")
    for P in family:
        pP = perp_s(P)
        c_I.count += 1
        if not real(I, imp(P, P)):
            c_I.fail(names(P=P))
        EP = E_of(pP)
        c_e7.count += 1
        if not sub(perp_t(EP), circ(perp_t(1 << EE), P)):
            c_e7.fail(names(P=P))
        for t in range(n):
            c_e5.count += 1
            tP = app_set(aks, 1 << t, pP)
            Et = aks.ap(E, t)
            mid = right_conductor(lat, pP, orth[Et])
            if not (sub(perp_t(tP), mid) and clo(mid) == circ(orth[Et], P)):
                c_e5.fail(names(t=t, P=P))
        for Q in family:
            pQ = perp_s(Q)
            dPQ = diamond(P, Q)
            c_cd.count += 1
            if not sub(circ(P, Q), dPQ):
                c_cd.fail(names(P=P, Q=Q))
            c_cd2.count += 1
            cpq = circ(P, Q)
            if not all(real(aks.ap(t, s), cpq) for t in bits(pP) for s in bits(pQ)):
                c_cd2.fail(names(P=P, Q=Q))
            c_k.count += 1
            if not real(aks.K, imp_raw(P, imp_raw(Q, P))):
                c_k.fail(names(P=P, Q=Q))
            for t in range(n):
                c_ins.count += 1
                if real(t, imp_raw(P, Q)) != real(t, imp(P, Q)):
                    c_ins.fail(names(t=t, P=P, Q=Q))
                c_mp.count += 1
                if real(t, imp(P, Q)):
                    if not all(real(aks.ap(t, u), Q) for u in bits(pP)):
                        c_mp.fail(names(t=t, P=P, Q=Q))
            c_e1.count += 1
            cond = 0
            for p in range(m):
                if sub(EP, perp_s(push_set(lat, pQ, 1 << p))):
                    cond |= 1 << p
            if not sub(dPQ, cond):
                c_e1.fail(names(P=P, Q=Q))
            c_e2.count += 1
            if not sub(EP, perp_s(push_set(lat, pQ, dPQ))):
                c_e2.fail(names(P=P, Q=Q))
            c_e4.count += 1
            if not sub(E_of(perp_s(imp(P, Q))), perp_s(imp(P, Q))):
                c_e4.fail(names(P=P, Q=Q))
            c_e6.count += 1
            if not sub(dPQ, circ(perp_t(EP), Q)):
                c_e6.fail(names(P=P, Q=Q))

    # triples
    c_1a, c_1b = rep.add("imp-nesting-iff"), rep.add("imp-nesting-right")
    c_s, c_b, c_cc = rep.add("S-realizes"), rep.add("B-realizes"), rep.add("cc-realizes")
    c_ha, c_ha2 = rep.add("half-adjunction"), rep.add("half-adjunction-unit")
    c_conv, c_e3 = rep.add("converse-adjunction"), rep.add("s-eta.below-diamond")
    for P in family:
        EP = E_of(perp_s(P))
        EPp = perp_t(EP)
        for Q in family:
            c_cc.count += 1
            peirce_raw = imp_raw(imp_raw(imp_raw(P, Q), P), P)
            peirce = imp(imp(imp(P, Q), P), P)
            if not (real(aks.CC, peirce) and real(aks.CC, peirce_raw)):
                c_cc.fail(names(P=P, Q=Q))
            c_ha2.count += 1
            if not sub(P, circ(imp(Q, P), Q)):
                c_ha2.fail(names(P=P, Q=Q))
            for R in family:
                c_1a.count += 1
                lhs = imp(imp(P, Q), R)
                rhs = imp_raw(imp_raw(P, Q), R)
                right_c = imp(P, imp(Q, R))
                right_r = imp_raw(P, imp_raw(Q, R))
                for t in range(n):
                    if real(t, lhs) != real(t, rhs):
                        c_1a.fail(names(t=t, P=P, Q=Q, R=R))
                    c_1b.count += 1
                    if real(t, right_c) and not real(t, right_r):
                        c_1b.fail(names(t=t, P=P, Q=Q, R=R))
                c_s.count += 1
                s_form = imp_raw(imp_raw(P, imp_raw(Q, R)),
                                 imp_raw(imp_raw(P, Q), imp_raw(P, R)))
                if not real(aks.S, s_form):
                    c_s.fail(names(P=P, Q=Q, R=R))
                c_b.count += 1
                b_form = imp_raw(imp_raw(Q, R), imp_raw(imp_raw(P, Q), imp_raw(P, R)))
                if not real(B, b_form):
                    c_b.fail(names(P=P, Q=Q, R=R))
                c_ha.count += 1
                if sub(imp(Q, R), P) and not sub(R, circ(P, Q)):
                    c_ha.fail(names(P=P, Q=Q, R=R))
                c_conv.count += 1
                if sub(R, circ(P, Q)):
                    qr = imp(Q, R)
                    if not (sub(qr, EPp) and sub(EPp, circ(perp_t(1 << EE), P))):
                        c_conv.fail(names(P=P, Q=Q, R=R))
                c_e3.count += 1
                if (all_subsets or R in closed) and sub(R, diamond(P, Q)):
                    if not sub(EP, perp_s(push_set(lat, perp_s(Q), R))):
                        c_e3.fail(names(P=P, Q=Q, R=R))
    return rep
