"""Exact algebra for the deformed trigonometric Calogero-Moser-Sutherland
system: quasi-invariants, quantum integrals, weight combinatorics,
bipartitions and generalised eigenspaces over Q(k)."""

__version__ = "0.1.0"
