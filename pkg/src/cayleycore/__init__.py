"""Cores of Cayley graphs on elementary abelian groups (F_p)^d."""

from .cayley import (
    CayleyGraph,
    ConnectionSet,
    complement_connection_set,
    components,
    dump_document,
    load_document,
    make_connection_set,
    materialize,
    parse_document,
    projective_expand,
)
from .cca import (
    CCAResult,
    CCAWitness,
    cca_check,
    dual_witness,
    enumerate_witnesses,
    find_witness,
    kappa,
    lift_witness,
    project,
    projection_map,
)
from .errors import CayleyCoreError, ResourceLimitError
from .gfp import FieldSpec, FVector, LinearMap, Subspace, span, standard_complement
from .graph import Graph

__version__ = "0.1.0"
