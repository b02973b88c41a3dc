"""Exemplar clustering on dense similarity matrices: affinity propagation
plus its partition (block warm-start) and landmark (subsample + embed)
variants."""

from .datasets import GenSpec, generate
from .engine import (
    ApConfig,
    ClusteringResult,
    MessageState,
    affinity_propagation,
    energy,
    extract_result,
    run_messages,
    update_availabilities,
    update_responsibilities,
)
from .kernels import BACKEND
from .lap import LapConfig, LapReport, class_radii, embed_points, lap_cluster, refine, sample_landmarks
from .metrics import agreement, association_rates, brute_force_optimum
from .pap import (
    PapConfig,
    PapReport,
    PartitionPlan,
    assemble_block_availability,
    pap_cluster,
    partition_blocks,
    validate_k,
)
from .simcore import (
    PreferenceSpec,
    ValidationError,
    install_preferences,
    median_preference,
    neg_sq_euclidean,
)

__all__ = [
    "ApConfig", "BACKEND", "ClusteringResult", "GenSpec", "LapConfig", "LapReport",
    "MessageState", "PapConfig", "PapReport", "PartitionPlan", "PreferenceSpec",
    "ValidationError", "affinity_propagation", "agreement", "assemble_block_availability",
    "association_rates", "brute_force_optimum", "class_radii", "embed_points", "energy",
    "extract_result", "generate", "install_preferences", "lap_cluster", "median_preference",
    "neg_sq_euclidean", "pap_cluster", "partition_blocks", "refine", "run_messages",
    "sample_landmarks", "update_availabilities", "update_responsibilities", "validate_k",
]

__version__ = "0.1.0"
