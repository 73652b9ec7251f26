"""JSON structure files.

A file holds one object with a ``kind`` field:

``lattice``
    ``terms``, ``stacks``, ``pole`` (list of ``[t, p]``), optional ``push``
    (list of ``[t, p, p2]``).
``aks``
    lattice fields with ``push`` plus ``app`` (``[t, u, v]``), ``store``
    (``[p, t]``), ``qp``, ``K``, ``S``, ``CC``.
``oca`` / ``ioca`` / ``koca``
    ``carrier``, ``leq`` (pairs), ``app`` (triples), ``k``, ``s``, ``phi``;
    ``ioca`` adds ``imp`` (triples) and ``e``; ``koca`` adds ``c``.
``quadruple``
    ``carrier``, ``leq``, ``imp``, ``phi``; loaded as the derived KOCA.
``boolean:n``
    the Boolean KOCA with n atoms (also accepted as a bare string).

Every name must be declared and every function table must be total.
"""

import hashlib
import json

import numpy as np

from .aks import AbstractKrivineStructure
from .errors import ParseError, StructuralError
from .koca import IOCA, KOCA, ProperQuadruple, boolean, from_proper_quadruple
from .lattice import RealizabilityLattice, bits
from .oca import FilteredOCA


def _names(obj, key):
    vals = obj.get(key)
    if not isinstance(vals, list) or not all(isinstance(v, str) for v in vals):
        raise StructuralError(f"{key!r} must be a list of names")
    if len(set(vals)) != len(vals):
        raise StructuralError(f"{key!r} has duplicate names")
    return vals


def _lookup(index, name, what):
    try:
        return index[name]
    except (KeyError, TypeError):
        raise StructuralError(f"undeclared {what} {name!r}") from None


def _relation(obj, key, rows, cols, rname, cname):
    out = np.zeros((len(rows), len(cols)), dtype=bool)
    ri = {n: i for i, n in enumerate(rows)}
    ci = {n: i for i, n in enumerate(cols)}
    for pair in obj.get(key, []):
        if not isinstance(pair, list) or len(pair) != 2:
            raise StructuralError(f"{key!r} entries must be pairs")
        out[_lookup(ri, pair[0], rname), _lookup(ci, pair[1], cname)] = True
    return out


def _function(obj, key, rows, cols, vals, names=("row", "column", "value")):
    """A total binary function given as a list of [x, y, f(x, y)] triples."""
    out = np.full((len(rows), len(cols)), -1, dtype=np.int64)
    ri = {n: i for i, n in enumerate(rows)}
    ci = {n: i for i, n in enumerate(cols)}
    vi = {n: i for i, n in enumerate(vals)}
    entries = obj.get(key)
    if not isinstance(entries, list):
        raise StructuralError(f"missing table {key!r}")
    for t in entries:
        if not isinstance(t, list) or len(t) != 3:
            raise StructuralError(f"{key!r} entries must be triples")
        i, j = _lookup(ri, t[0], names[0]), _lookup(ci, t[1], names[1])
        if out[i, j] >= 0:
            raise StructuralError(f"{key!r} defines ({t[0]}, {t[1]}) twice")
        out[i, j] = _lookup(vi, t[2], names[2])
    if out.size and out.min() < 0:
        i, j = (int(v) for v in np.argwhere(out < 0)[0])
        raise StructuralError(f"{key!r} is not total: ({rows[i]}, {cols[j]}) missing")
    return out


def _element(obj, key, index):
    if key not in obj:
        raise StructuralError(f"missing field {key!r}")
    return _lookup(index, obj[key], "element")


def load_lattice(obj):
    terms, stacks = _names(obj, "terms"), _names(obj, "stacks")
    pole = _relation(obj, "pole", terms, stacks, "term", "stack")
    push = None
    if "push" in obj:
        push = _function(obj, "push", terms, stacks, stacks, ("term", "stack", "stack"))
    return RealizabilityLattice(terms, stacks, pole, push)


def load_aks(obj):
    lat = load_lattice(obj)
    if lat.push is None:
        raise StructuralError("an aks needs a push table")
    terms, stacks = lat.terms, lat.stacks
    ti = {n: i for i, n in enumerate(terms)}
    app = _function(obj, "app", terms, terms, terms, ("term", "term", "term"))
    store = np.full(len(stacks), -1, dtype=np.int64)
    si = {n: i for i, n in enumerate(stacks)}
    for pair in obj.get("store", []):
        store[_lookup(si, pair[0], "stack")] = _lookup(ti, pair[1], "term")
    if store.size and store.min() < 0:
        raise StructuralError(f"store is not total: {stacks[int(np.argmin(store))]} missing")
    qp = sum(1 << _lookup(ti, n, "term") for n in obj.get("qp", []))
    combs = {k: _element(obj, k, ti) for k in ("K", "S", "CC")}
    return AbstractKrivineStructure(lat, app, store, qp, **combs)


def load_algebra(obj, kind):
    carrier = _names(obj, "carrier")
    idx = {n: i for i, n in enumerate(carrier)}
    leq = _relation(obj, "leq", carrier, carrier, "element", "element")
    phi = tuple(_lookup(idx, n, "element") for n in obj.get("phi", []))
    if kind == "quadruple":
        imp = _function(obj, "imp", carrier, carrier, carrier)
        return from_proper_quadruple(ProperQuadruple(carrier, leq, imp, phi))
    app = _function(obj, "app", carrier, carrier, carrier)
    k, s = _element(obj, "k", idx), _element(obj, "s", idx)
    if kind == "oca":
        return FilteredOCA(carrier, leq, app, k, s, phi)
    imp = _function(obj, "imp", carrier, carrier, carrier)
    e = _element(obj, "e", idx)
    if kind == "ioca":
        return IOCA(carrier, leq, app, k, s, phi, imp, e)
    return KOCA(carrier, leq, app, k, s, phi, imp, e, _element(obj, "c", idx))


def parse_boolean(spec):
    try:
        n = int(spec.split(":", 1)[1])
    except (IndexError, ValueError):
        raise ParseError(f"bad boolean shorthand {spec!r}") from None
    return boolean(n)


def load_obj(obj):
    if isinstance(obj, str):
        obj = {"kind": obj}
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("structure must be an object with a 'kind' field")
    kind = obj["kind"]
    if isinstance(kind, str) and kind.startswith("boolean:"):
        return parse_boolean(kind)
    if kind == "lattice":
        return load_lattice(obj)
    if kind == "aks":
        return load_aks(obj)
    if kind in ("oca", "ioca", "koca", "quadruple"):
        return load_algebra(obj, kind)
    raise ParseError(f"unknown structure kind {kind!r}")


def loads(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON: {err.msg}", err.pos) from None
    return load_obj(obj)


def load(source):
    """A path to a JSON file or a ``boolean:n`` shorthand."""
    if source.startswith("boolean:"):
        return parse_boolean(source)
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ParseError(f"cannot read {source}: {err.strerror}") from None
    return loads(text)


def kind_of(x):
    if isinstance(x, RealizabilityLattice):
        return "lattice"
    if isinstance(x, AbstractKrivineStructure):
        return "aks"
    return {KOCA: "koca", IOCA: "ioca", FilteredOCA: "oca"}[type(x)]


def dump_obj(x):
    """Inverse of load_obj (quadruples and shorthands come back as koca)."""
    kind = kind_of(x)
    if kind in ("lattice", "aks"):
        lat = x.lat if kind == "aks" else x
        T, P = lat.terms, lat.stacks
        out = {"kind": kind, "terms": list(T), "stacks": list(P),
               "pole": [[T[t], P[p]] for t, p in np.argwhere(lat.pole)]}
        if lat.push is not None:
            out["push"] = [[T[t], P[p], P[int(lat.push[t, p])]]
                           for t in range(len(T)) for p in range(len(P))]
        if kind == "aks":
            out["app"] = [[T[t], T[u], T[int(x.app[t, u])]]
                          for t in range(len(T)) for u in range(len(T))]
            out["store"] = [[P[p], T[int(x.store[p])]] for p in range(len(P))]
            out["qp"] = [T[t] for t in bits(x.qp)]
            out.update(K=T[x.K], S=T[x.S], CC=T[x.CC])
        return out
    A = x.carrier
    out = {"kind": kind, "carrier": list(A),
           "leq": [[A[a], A[b]] for a, b in np.argwhere(x.leq)],
           "app": [[A[a], A[b], A[int(x.app[a, b])]] for a in range(x.n) for b in range(x.n)],
           "k": A[x.k], "s": A[x.s], "phi": [A[f] for f in x.phi]}
    if kind in ("ioca", "koca"):
        out["imp"] = [[A[a], A[b], A[int(x.imp[a, b])]] for a in range(x.n) for b in range(x.n)]
        out["e"] = A[x.e]
    if kind == "koca":
        out["c"] = A[x.c]
    return out


def dumps(x):
    return json.dumps(dump_obj(x), indent=2) + "\n"


def fingerprint(x):
    """sha256 of the canonical JSON form."""
    canon = json.dumps(dump_obj(x), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()
