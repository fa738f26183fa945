"""Combinatorial kernel and verifier for trisection diagrams of 4-manifolds."""

__version__ = "0.1.0"
