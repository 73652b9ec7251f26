"""Hilbert-style proofs over implicational formulas and their combinator terms.

Axiom schemes are K (``A -> B -> A``), S (``(A -> B -> C) -> (A -> B) -> A
-> C``) and Peirce (``((A -> B) -> A) -> A``); the only rule is modus ponens.
A proof evaluates to a term built from ``k``, ``s``, ``c`` by application,
so its value lies in the filter of any KOCA.
"""

from dataclasses import dataclass

from .combterm import App, C, K, S
from .errors import StructuralError


@dataclass(frozen=True)
class PVar:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Imp:
    left: object
    right: object

    def __str__(self):
        left = f"({self.left})" if isinstance(self.left, Imp) else str(self.left)
        return f"{left} -> {self.right}"


def imp(*fs):
    """Right-associated implication ``f0 -> f1 -> ... -> fn``."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Imp(f, out)
    return out


@dataclass(frozen=True)
class AxiomK:
    a: object
    b: object


@dataclass(frozen=True)
class AxiomS:
    a: object
    b: object
    c: object


@dataclass(frozen=True)
class AxiomPeirce:
    a: object
    b: object


@dataclass(frozen=True)
class MP:
    """From a proof of ``A -> B`` and a proof of ``A``, conclude ``B``."""

    major: object
    minor: object


def _formula(f):
    if not isinstance(f, (PVar, Imp)):
        raise StructuralError(f"not a formula: {f!r}")
    if isinstance(f, Imp):
        _formula(f.left)
        _formula(f.right)
    return f


def conclusion(proof):
    """The formula proved, or StructuralError if the tree is malformed."""
    if isinstance(proof, AxiomK):
        a, b = _formula(proof.a), _formula(proof.b)
        return imp(a, b, a)
    if isinstance(proof, AxiomS):
        a, b, c = _formula(proof.a), _formula(proof.b), _formula(proof.c)
        return imp(imp(a, b, c), imp(a, b), a, c)
    if isinstance(proof, AxiomPeirce):
        a, b = _formula(proof.a), _formula(proof.b)
        return imp(imp(imp(a, b), a), a)
    if isinstance(proof, MP):
        major, minor = conclusion(proof.major), conclusion(proof.minor)
        if not isinstance(major, Imp) or major.left != minor:
            raise StructuralError(f"modus ponens mismatch: {major} applied to {minor}")
        return major.right
    raise StructuralError(f"not a proof node: {proof!r}")


def hilbert_eval(proof):
    """Axiom leaves become k, s, c; modus ponens becomes application."""
    conclusion(proof)
    return _eval(proof)


def _eval(proof):
    if isinstance(proof, AxiomK):
        return K
    if isinstance(proof, AxiomS):
        return S
    if isinstance(proof, AxiomPeirce):
        return C
    return App(_eval(proof.major), _eval(proof.minor))


def identity_proof(a):
    """The usual S K K derivation of ``a -> a``."""
    step = MP(AxiomS(a, imp(a, a), a), AxiomK(a, imp(a, a)))
    return MP(step, AxiomK(a, a))
