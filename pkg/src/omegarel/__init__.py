"""Omega-valued relations, weighted limits and diagram commutativity over finite sets."""
from .core import (
    FiniteSet,
    OmegaSet,
    ProductSimilarity,
    Relation,
    canonical_extension,
    compose,
    converse,
    crisp_point,
    element,
    element_similarity,
    is_bimodule,
    is_map,
    is_similarity,
    leq,
    product_aggregate,
)
from .diagram import (
    MultiDiagram,
    colimit_equivalence,
    colimit_similarity_degree,
    commutativity_degree,
    lambda_limit_check,
    quasi_limit_degree,
    weighted_limit,
)
from .dsl import parse_spec
from .lattice import LogicSpec, biresiduum, flavor_sum, residuum, tnorm
from .wiring import PolarizedWord, circuit_signature, glue, io_sets

__version__ = "0.1.0"
