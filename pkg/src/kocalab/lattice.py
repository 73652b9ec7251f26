"""Finite realizability lattices and their orthogonality closures.

Sets of terms and sets of stacks are fixed-width membership vectors over the
ordered identifier lists.  Internally (and in every return value) a set is a
Python ``int`` bitmask: bit ``i`` is set iff the ``i``-th identifier (load
order) is a member.  Boolean vectors and name lists are accepted on input and
can be recovered with :func:`to_vector` / :meth:`RealizabilityLattice.stack_names`.
"""

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import config
from .errors import ContractError, ResourceError, StructuralError


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def full(n):
    return (1 << n) - 1


def popcount(mask):
    return bin(mask).count("1")


def to_vector(mask, n):
    return np.array([(mask >> i) & 1 == 1 for i in range(n)], dtype=bool)


def as_mask(x, n, what="set"):
    """Coerce an int bitmask or a boolean membership vector to a bitmask."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        x = int(x)
        if x < 0 or x >> n:
            raise StructuralError(f"{what} bitmask {x:#x} does not fit {n} identifiers")
        return x
    v = np.asarray(x, dtype=bool)
    if v.shape != (n,):
        raise StructuralError(f"{what} vector has shape {v.shape}, expected ({n},)")
    return sum(1 << i for i in np.flatnonzero(v).tolist())


@dataclass(frozen=True, eq=False)
class RealizabilityLattice:
    """A triple (terms, stacks, pole), optionally with a push map.

    ``pole[t, p]`` is True iff term ``t`` is orthogonal to stack ``p``.
    ``push[t, p]`` (when present) is the index of the stack ``t . p``.
    """

    terms: tuple
    stacks: tuple
    pole: np.ndarray
    push: np.ndarray = None
    _term_perp: tuple = field(init=False, repr=False)
    _stack_perp: tuple = field(init=False, repr=False)

    def __post_init__(self):
        terms, stacks = tuple(self.terms), tuple(self.stacks)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "stacks", stacks)
        if len(set(terms)) != len(terms):
            raise StructuralError("term identifiers are not unique")
        if len(set(stacks)) != len(stacks):
            raise StructuralError("stack identifiers are not unique")
        pole = np.asarray(self.pole, dtype=bool)
        if pole.size == 0:
            pole = pole.reshape(len(terms), len(stacks))
        if pole.shape != (len(terms), len(stacks)):
            raise StructuralError(
                f"pole table is {pole.shape}, expected {(len(terms), len(stacks))}")
        pole = pole.copy()
        pole.setflags(write=False)
        object.__setattr__(self, "pole", pole)
        if self.push is not None:
            push = np.asarray(self.push, dtype=np.int64).reshape(len(terms), len(stacks)).copy()
            if push.size and (push.min() < 0 or push.max() >= len(stacks)):
                raise StructuralError("push table refers to an unknown stack")
            push.setflags(write=False)
            object.__setattr__(self, "push", push)
        object.__setattr__(self, "_term_perp", tuple(
            as_mask(pole[t], len(stacks)) for t in range(len(terms))))
        object.__setattr__(self, "_stack_perp", tuple(
            as_mask(pole[:, p], len(terms)) for p in range(len(stacks))))

    @property
    def n_terms(self):
        return len(self.terms)

    @property
    def n_stacks(self):
        return len(self.stacks)

    @property
    def all_terms(self):
        return full(len(self.terms))

    @property
    def all_stacks(self):
        return full(len(self.stacks))

    def orth(self, t, p):
        return bool(self.pole[t, p])

    def term_index(self, name):
        try:
            return self.terms.index(name)
        except ValueError:
            raise StructuralError(f"unknown term {name!r}") from None

    def stack_index(self, name):
        try:
            return self.stacks.index(name)
        except ValueError:
            raise StructuralError(f"unknown stack {name!r}") from None

    def term_set(self, names):
        return sum(1 << self.term_index(n) for n in set(names))

    def stack_set(self, names):
        return sum(1 << self.stack_index(n) for n in set(names))

    def term_names(self, mask):
        return [self.terms[i] for i in bits(mask)]

    def stack_names(self, mask):
        return [self.stacks[i] for i in bits(mask)]

    def with_push(self, push):
        return RealizabilityLattice(self.terms, self.stacks, self.pole, push)


def perp_of_terms(lat, L):
    """L^perp: the stacks orthogonal to every term of L."""
    L = as_mask(L, lat.n_terms, "term set")
    out = lat.all_stacks
    for t in bits(L):
        out &= lat._term_perp[t]
    return out


def perp_of_stacks(lat, P):
    """^perp P: the terms orthogonal to every stack of P."""
    P = as_mask(P, lat.n_stacks, "stack set")
    out = lat.all_terms
    for p in bits(P):
        out &= lat._stack_perp[p]
    return out


def closure_stacks(lat, P):
    return perp_of_terms(lat, perp_of_stacks(lat, P))


def closure_terms(lat, L):
    return perp_of_stacks(lat, perp_of_terms(lat, L))


def is_closed_stacks(lat, P):
    P = as_mask(P, lat.n_stacks, "stack set")
    return closure_stacks(lat, P) == P


def _sort_closed(sets):
    # largest sets first, ties by bitmask; Pi therefore always leads
    return sorted(sets, key=lambda m: (-popcount(m), m))


def enumerate_closed_stack_sets(lat, max_stacks=None):
    """All biorthogonally closed stack sets, as intersections of generators.

    Every closed set equals ``(^perp P)^perp``, the intersection of the
    generators ``{t}^perp`` over ``t`` in ``^perp P``; conversely each such
    intersection is a perp and hence closed.
    """
    bound = config.MAX_CLOSED_ENUM if max_stacks is None else max_stacks
    if lat.n_stacks > bound:
        raise ResourceError(f"|Pi| = {lat.n_stacks} exceeds enumeration bound {bound}")
    found = {lat.all_stacks}
    for gen in lat._term_perp:
        found |= {x & gen for x in found}
    return _sort_closed(found)


def closed_stack_sets_bruteforce(lat, max_stacks=None):
    """Oracle: test every subset of Pi for closure, straight from the pole table."""
    bound = config.MAX_BRUTE_FORCE if max_stacks is None else max_stacks
    n = lat.n_stacks
    if n > bound:
        raise ResourceError(f"|Pi| = {n} exceeds brute-force bound {bound}")
    pole = lat.pole.astype(np.int64)
    miss = 1 - pole
    masks = np.arange(1 << n)
    members = ((masks[:, None] >> np.arange(n)) & 1).astype(np.int64)   # row s = subset s
    left = (members @ miss.T) == 0                    # ^perp P, one row per subset
    closed = (left.astype(np.int64) @ miss) == 0      # (^perp P)^perp
    hit = np.all(closed == members.astype(bool), axis=1)
    return _sort_closed(int(m) for m in masks[hit])


def sup_inf(lat, X):
    """(sup, inf) of a family of closed stack sets under inclusion."""
    X = [as_mask(P, lat.n_stacks, "stack set") for P in X]
    for P in X:
        if not is_closed_stacks(lat, P):
            raise ContractError(f"stack set {lat.stack_names(P)} is not closed")
    inf = reduce(lambda a, b: a & b, X, lat.all_stacks)
    sup = closure_stacks(lat, reduce(lambda a, b: a | b, X, 0))
    return sup, inf


def _require_push(lat):
    if lat.push is None:
        raise StructuralError("lattice carries no push map")
    return lat.push


def push_set(lat, L, P):
    """L . P = {t . p : t in L, p in P}."""
    push = _require_push(lat)
    L = as_mask(L, lat.n_terms, "term set")
    P = as_mask(P, lat.n_stacks, "stack set")
    out = 0
    for t in bits(L):
        row = push[t]
        for p in bits(P):
            out |= 1 << int(row[p])
    return out


def right_conductor(lat, L, P):
    """L ~> P = {p : L . p is contained in P}."""
    push = _require_push(lat)
    L = as_mask(L, lat.n_terms, "term set")
    P = as_mask(P, lat.n_stacks, "stack set")
    out = 0
    terms = list(bits(L))
    for p in range(lat.n_stacks):
        if all((P >> int(push[t, p])) & 1 for t in terms):
            out |= 1 << p
    return out
