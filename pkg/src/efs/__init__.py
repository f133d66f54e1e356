"""Event-anchored keyframe selection.

Partitions a per-frame embedding stream into visual events at local minima of
a temporal-similarity curve, anchors each event at its most query-relevant
frame, and refines the set to a fixed budget with an adaptive
maximal-marginal-relevance sweep.  Deterministic and training-free; consumes
precomputed signals, never raw video.
"""

from .errors import (
    BadMagic,
    BoundaryOutOfRange,
    BudgetZero,
    DimensionMismatch,
    EfsError,
    EmptyAnchorSet,
    InvalidSpec,
    MalformedMetadata,
    NonFiniteValue,
    TruncatedPayload,
    UnsupportedVersion,
    WindowTooSmall,
    ZeroMeanSegment,
    ZeroNormEmbedding,
)
from .events import (
    EventPartition,
    detect_local_minima,
    merge_to_target,
    partition_from_minima,
    segment_means,
)
from .io import read_signals, write_signals
from .pipeline import run_efs, run_efs_pipeline, run_strategy
from .selection import (
    Admission,
    EfsConfig,
    FillPolicy,
    Selection,
    SelectionTrace,
    adaptive_refine,
    centroid_anchors,
    classic_mmr,
    fixed_threshold_greedy,
    random_anchors,
    random_partition,
    select_anchors,
    topk_sample,
    uniform_sample,
)
from .signals import SignalSet, SimilarityCurve, temporal_similarity, validate_signals
from .synthetic import SyntheticSpec, gen_synthetic

__version__ = "0.1.0"

__all__ = [
    "Admission",
    "BadMagic",
    "BoundaryOutOfRange",
    "BudgetZero",
    "DimensionMismatch",
    "EfsError",
    "EfsConfig",
    "EmptyAnchorSet",
    "EventPartition",
    "FillPolicy",
    "InvalidSpec",
    "MalformedMetadata",
    "NonFiniteValue",
    "Selection",
    "SelectionTrace",
    "SignalSet",
    "SimilarityCurve",
    "SyntheticSpec",
    "TruncatedPayload",
    "UnsupportedVersion",
    "WindowTooSmall",
    "ZeroMeanSegment",
    "ZeroNormEmbedding",
    "adaptive_refine",
    "centroid_anchors",
    "classic_mmr",
    "detect_local_minima",
    "fixed_threshold_greedy",
    "gen_synthetic",
    "merge_to_target",
    "partition_from_minima",
    "random_anchors",
    "random_partition",
    "read_signals",
    "run_efs",
    "run_efs_pipeline",
    "run_strategy",
    "segment_means",
    "select_anchors",
    "temporal_similarity",
    "topk_sample",
    "uniform_sample",
    "validate_signals",
    "write_signals",
]
