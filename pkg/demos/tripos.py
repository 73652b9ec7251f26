"""Predicates over finite index sets: the tripos built from a KOCA.

Run: python demos/tripos.py
"""

from kocalab.config import make_rng
from kocalab.koca import boolean
from kocalab.tripos import (
    FiniteFunction, entails_pred, forall_along, imp_pred, reindex, tripos_suite,
)

x = boolean(1)
bot, top = x.bottom, x.top

# A predicate on a 3-element index set is a tuple of truth values.
phi = (top, bot, top)
psi = (top, top, top)
print("phi entails psi via", entails_pred(x, phi, psi))
print("psi entails phi:", entails_pred(x, psi, phi))
print("phi => psi pointwise:", imp_pred(x, phi, psi))

# Reindexing along f : 2 -> 3 and quantifying along g : 3 -> 2.
f = FiniteFunction(2, 3, (2, 1))
g = FiniteFunction(3, 2, (0, 0, 1))
print("phi reindexed along f:", reindex(f, phi))
print("forall along g of phi:", forall_along(x, g, phi))

rep = tripos_suite(x, 2, make_rng(0), random_squares=20)
squares = rep["beck-chevalley.squares-validated"].count
print(f"tripos suite: {'ok' if rep.passed else 'FAILED'}, {len(rep.checks)} checks, "
      f"{squares} pullback squares")
