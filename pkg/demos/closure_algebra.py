"""Orthogonality on a tiny term/stack pair and the closed sets it induces.

Run: python demos/closure_algebra.py
"""

from kocalab.lattice import (
    RealizabilityLattice, closure_stacks, enumerate_closed_stack_sets, perp_of_stacks,
    perp_of_terms, sup_inf,
)

# Three terms, three stacks.  The pole lists which (term, stack) pairs are
# orthogonal; everything else is not.
lat = RealizabilityLattice(
    ["t0", "t1", "t2"], ["p0", "p1", "p2"],
    [[True, False, False],
     [True, True, False],
     [True, True, True]],
)

everything = lat.stack_set(["p0", "p1", "p2"])
print("terms orthogonal to every stack:", lat.term_names(perp_of_stacks(lat, everything)))
print("stacks orthogonal to every term:", lat.stack_names(perp_of_terms(lat, lat.term_set(lat.terms))))

# Every stack set has a closure; the empty set closes to the stacks that
# no term can refute.
print("closure of {}:", lat.stack_names(closure_stacks(lat, 0)))

closed = enumerate_closed_stack_sets(lat)
print(f"{len(closed)} closed stack sets (largest first):")
for P in closed:
    print("   ", lat.stack_names(P), "realized by", lat.term_names(perp_of_stacks(lat, P)))

# Closed sets form a complete lattice under inclusion.
P, Q = closed[1], closed[2]
sup, inf = sup_inf(lat, [P, Q])
print("sup/inf of", lat.stack_names(P), "and", lat.stack_names(Q), "->",
      lat.stack_names(sup), "/", lat.stack_names(inf))
