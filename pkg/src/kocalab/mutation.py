"""Single-entry table mutations and the checks that notice them.

A mutation changes exactly one cell of one table (a pole bit, or one value
of push/app/store/imp).  :func:`find_detecting_mutation` walks the cells in
row-major order and the replacement values in increasing order, and returns
the first mutation whose target check fails with a witness.
"""

import numpy as np

from .aks import AbstractKrivineStructure, check_aks_axioms
from .koca import IOCA, check_ioca, check_koca
from .lattice import RealizabilityLattice
from .oca import check_oca

# family -> (tables to mutate, checks that must report the failure)
FAMILIES = {
    "S1": (("push", "app", "pole"), ("S1",)),
    "S2": (("push", "pole"), ("S2",)),
    "S3": (("push", "app", "pole"), ("S3",)),
    "S4": (("push", "store", "pole"), ("S4",)),
    "S5": (("push", "store", "pole"), ("S5",)),
    "K": (("app",), ("k-axiom",)),
    "S": (("app",), ("s-axiom",)),
    "PA": (("app", "imp"), ("PA",)),
    "E": (("app", "imp"), ("E",)),
    "C": (("imp",), ("C",)),
}

AKS_FAMILIES = ("S1", "S2", "S3", "S4", "S5")


def _table(x, field):
    if isinstance(x, AbstractKrivineStructure):
        return x.lat.pole if field == "pole" else (x.lat.push if field == "push" else getattr(x, field))
    return getattr(x, field)


def _rebuild(x, field, table):
    if isinstance(x, AbstractKrivineStructure):
        lat = x.lat
        if field in ("pole", "push"):
            pole = table if field == "pole" else lat.pole
            push = table if field == "push" else lat.push
            return x.replace(lat=RealizabilityLattice(lat.terms, lat.stacks, pole, push))
        return x.replace(**{field: table})
    return x.replace(**{field: table})


def _value_range(x, field):
    if field == "pole":
        return (False, True)
    if isinstance(x, AbstractKrivineStructure):
        n = x.lat.n_stacks if field == "push" else x.lat.n_terms
        return range(n)
    return range(x.n)


def table_mutations(x, field):
    """Yield ``(cell, old, new, mutated)`` for every single-cell change."""
    base = np.array(_table(x, field))
    for cell in np.ndindex(base.shape):
        old = base[cell].item()
        for new in _value_range(x, field):
            if new == old:
                continue
            t = base.copy()
            t[cell] = new
            yield tuple(int(i) for i in cell), old, new, _rebuild(x, field, t)


def suite_for(x):
    if isinstance(x, AbstractKrivineStructure):
        return check_aks_axioms
    if hasattr(x, "c"):
        return check_koca
    if isinstance(x, IOCA):
        return check_ioca
    return check_oca


def find_detecting_mutation(x, family, suite=None):
    """First single-entry mutation of ``x`` caught by the family's checks.

    Returns ``{"family", "table", "cell", "old", "new", "check", "witness"}``
    or None when no mutation of the listed tables is detected.
    """
    fields, names = FAMILIES[family]
    suite = suite or suite_for(x)
    for field in fields:
        for cell, old, new, y in table_mutations(x, field):
            rep = suite(y)
            for name in names:
                c = rep[name]
                if not c.passed and c.witness is not None:
                    return {"family": family, "table": field, "cell": cell, "old": old,
                            "new": new, "check": name, "witness": c.witness}
    return None
