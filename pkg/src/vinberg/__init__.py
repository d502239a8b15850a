"""Linear reflection groups over the rationals, computed exactly."""

from .cartan import (
    CartanMatrix,
    CartanType,
    cartan_type,
    cyclic_products,
    is_compatible,
    is_symmetrizable,
    rank,
)
from .corpus import corpus
from .coxeter import INF, CoxeterMatrix, classify, find_quasi_lanner_subset
from .errors import VinbergError
from .forge import (
    forge_general,
    forge_racg_spanning_tree,
    forge_rank_bump,
    pipeline_thin_embedding,
)
from .integral import conjugate_to_integers, invariant_lattice
from .represent import (
    ReflectionRep,
    closure_verdict,
    find_proximal_pair,
    reduce_irreducible,
    rep_from_cartan,
    verify_relations,
)

__all__ = [
    "CartanMatrix", "CartanType", "cartan_type", "cyclic_products", "is_compatible", "is_symmetrizable",
    "rank", "corpus", "INF", "CoxeterMatrix", "classify", "find_quasi_lanner_subset", "VinbergError",
    "forge_general", "forge_racg_spanning_tree", "forge_rank_bump", "pipeline_thin_embedding",
    "conjugate_to_integers", "invariant_lattice", "ReflectionRep", "closure_verdict", "find_proximal_pair",
    "reduce_irreducible", "rep_from_cartan", "verify_relations",
]

__version__ = "0.1.0"
