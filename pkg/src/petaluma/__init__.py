"""Petal diagrams of random knots: invariants, swap calculus, petalization
of regular diagrams, and a seeded Monte Carlo harness."""

__version__ = "0.1.0"

from .diagram import Crossing, KnotDiagram
from .petal_model import (
    LinkPetalPermutation,
    PetalPermutation,
    make_link,
    make_petal,
    petal_to_diagram,
)
from .polynomial import Jet, LaurentPolynomial

__all__ = [
    "Crossing",
    "Jet",
    "KnotDiagram",
    "LaurentPolynomial",
    "LinkPetalPermutation",
    "PetalPermutation",
    "make_link",
    "make_petal",
    "petal_to_diagram",
]
