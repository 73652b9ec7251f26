"""From a KOCA to an abstract Krivine structure and back again.

Run: python demos/krivine_roundtrip.py
"""

from kocalab.aks import check_aks_axioms, op_imp, verify_aks_lemmas
from kocalab.koca import boolean, check_koca
from kocalab.lattice import enumerate_closed_stack_sets
from kocalab.translations import (
    aks_to_koca, galois_check, koca_to_aks, order_iso_check, streicher_iso_check,
)

x = boolean(2)
aks = koca_to_aks(x)
lat = aks.lat
print(f"AKS with {lat.n_terms} terms and {lat.n_stacks} stacks")
print("axioms:", "ok" if check_aks_axioms(aks).passed else "FAILED",
      "| lemmas:", "ok" if verify_aks_lemmas(aks).passed else "FAILED")

# Each closed stack set is the principal filter above one element.
for P in enumerate_closed_stack_sets(lat):
    print("   closed:", lat.stack_names(P))

# Implication between closed sets mirrors the KOCA's implication.
a, b = x.index("b01"), x.index("b10")
P = lat.stack_set([s for s in lat.stacks if x.le(a, x.index(s))])
Q = lat.stack_set([s for s in lat.stacks if x.le(b, x.index(s))])
print("b01 -> b10 in the KOCA:", x.carrier[x.to(a, b)],
      "| as closed stack set:", lat.stack_names(op_imp(aks, P, Q)))

back = aks_to_koca(aks)
print("recovered carrier:", back.carrier)
for rep in (check_koca(back), galois_check(x), order_iso_check(x),
            streicher_iso_check(aks, 2)):
    print(f"{rep.suite:24s} {'ok' if rep.passed else 'FAILED'}")
