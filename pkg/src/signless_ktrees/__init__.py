"""Signless Laplacian indices of k-trees: constructions, statistics, rewiring and verification."""

__version__ = "0.1.0"

from .graph import Graph, canonical_label, find_isomorphism, is_isomorphic
from .ktree import FamilyTag, enumerate_ktrees, is_k_tree, make_k_star, make_named
from .spectral import q1, signless_laplacian, spectrum
from .stats import l_max, simplicial_vertices

__all__ = [
    "__version__",
    "FamilyTag",
    "Graph",
    "canonical_label",
    "enumerate_ktrees",
    "find_isomorphism",
    "is_isomorphic",
    "is_k_tree",
    "l_max",
    "make_k_star",
    "make_named",
    "q1",
    "signless_laplacian",
    "simplicial_vertices",
    "spectrum",
]
