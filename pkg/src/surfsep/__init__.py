"""ℓ-separators for multigraphs on surfaces and degree-diameter bounds."""
from .embedding import (
    EmbeddedMultigraph,
    FacialWalk,
    GraphMetrics,
    contract_edge,
    euler_genus,
    induced_subembedding,
    is_two_cell,
    metrics,
    trace_faces,
)
from .errors import EmbeddingError, InternalError, PreconditionError
from .generators import GrowthSpec, base_surface, grow_random, triangulate
from .separator import (
    SeparatorCertificate,
    deep_vertices,
    simplified_configuration,
    surface_separator,
    td_separator,
    verify_certificate,
)
from .tree_cotree import TreeDecomposition, bags, bfs_tree, cotree_extra, dual_tree, validate_td

__version__ = "0.1.0"
