"""Exact combinatorics of Galois-equivariant Dynkin diagrams."""
from __future__ import annotations

__version__ = "0.1.0"
