"""Graph homomorphisms, cores, cliques and colourings."""

from ._accel import USE_NUMBA
from .certify import CatalogEntry, certify_core_by_invariants, vertex_transitive_catalog
from .search import (
    CONSTRAINTS,
    DEFAULT_SEARCH_CAP,
    CoreCertificate,
    VertexMap,
    chromatic_number,
    clique_number,
    clique_retraction,
    compute_core,
    find_coloring,
    find_endomorphism,
    find_homomorphism,
    has_proper_coloring,
    idempotent_power,
    is_core,
    is_homomorphism,
    max_clique,
)

__all__ = [
    "USE_NUMBA", "CatalogEntry", "certify_core_by_invariants", "vertex_transitive_catalog",
    "CONSTRAINTS", "DEFAULT_SEARCH_CAP", "CoreCertificate", "VertexMap", "chromatic_number",
    "clique_number", "clique_retraction", "compute_core", "find_coloring", "find_endomorphism", "find_homomorphism",
    "has_proper_coloring", "idempotent_power", "is_core", "is_homomorphism", "max_clique",
]
