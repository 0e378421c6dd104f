"""Stable subspace refinement of preliminary subspace-clustering labels."""

from .config import RefineConfig
from .linalg import SvdResult, frobenius_distance_sq, svd
from .metrics import (
    EvalReport,
    clustering_error,
    evaluate,
    nmi,
    projection_error_curve,
    reassignment_counts,
)
from .pipeline import RefineReport, refine
from .reassign import ReassignmentLog, dominant_reassign, nearest_subspace, residual_scores
from .subspace import (
    StableProjection,
    StableSubspaceSet,
    direct_pca_residual_projection,
    learn_subspaces,
    oracle_residual_projection,
    residual_projection,
    select_rank,
    stable_residual_projection,
)
from .synth import MultiSubspaceSpec, SingleClusterSpec, gen_multi_subspace, gen_single_cluster

__version__ = "0.1.0"
