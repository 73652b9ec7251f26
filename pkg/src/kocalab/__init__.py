"""Finite-model laboratory for ordered combinatory algebras and classical realizability."""

__version__ = "0.1.0"
