"""Exact split-network polytopes, their facets, and BME tree inference."""

from .geometry import (
    GeometryError,
    HPolytope,
    InfeasibleError,
    LinearFunctional,
    LPResult,
    UnboundedError,
    VPolytope,
    affine_rank,
    facet_sieve,
    irredundant_facets,
    is_vertex_of,
    lp_solve,
    optimal_face,
    rank,
    vertex_enumerate,
)
from .inference import InferenceResult, bme_exact, consistency_trial, polysplit
from .networks import (
    CircularSplitNetwork,
    EnumerationLimitError,
    Level1Network,
    PhyloTree,
    cic,
    enumerate_binary_trees,
    enumerate_level1_networks,
    enumerate_trees,
    exterior_network,
    externally_refine,
    is_externally_refined,
    sigma_splits,
)
from .polytopes import (
    FaceDescriptor,
    FacetInequality,
    caterpillar_facet,
    cherry_facet,
    csn_f_vector,
    network_face,
    ordering_face_map,
    polytope_vertices,
    relaxed_bme,
    split_face_inequality,
    tree_face_map,
)
from .splits import (
    CircularOrdering,
    Split,
    SplitSystem,
    consistent_orderings,
    distance_vector,
    interval_in,
    splits_compatible,
)
from .vectors import bme_vector, incidence_vector, network_vector, tree_from_vector

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
