"""Break one table entry and watch the axiom checks catch it.

Run: python demos/mutations.py
"""

from kocalab.koca import boolean
from kocalab.mutation import AKS_FAMILIES, FAMILIES, find_detecting_mutation
from kocalab.translations import koca_to_aks

koca = boolean(1)
aks = koca_to_aks(koca)

for family in FAMILIES:
    base = aks if family in AKS_FAMILIES else koca
    hit = find_detecting_mutation(base, family)
    where = f"{hit['table']}{list(hit['cell'])}: {hit['old']} -> {hit['new']}"
    print(f"{family:3s} caught by {hit['check']:8s} after {where:24s} witness {hit['witness']}")
