"""Per-frame signal model and the weighted temporal-similarity curve.

A :class:`SignalSet` bundles the two per-frame signals the selector consumes:
unit-norm visual embeddings (one row per candidate frame) and a query-relevance
score per frame.  :func:`temporal_similarity` turns the embeddings into a
per-frame local-coherence curve whose local minima mark visual event
boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .errors import (
    DimensionMismatch,
    NonFiniteValue,
    WindowTooSmall,
    ZeroNormEmbedding,
)

# Rows whose norm deviates from 1 by more than this are re-normalized on
# validation; within it they are kept bit-identical (float32 storage survives
# a round trip untouched).
NORM_TOLERANCE = 1e-4

# Below this the row direction is undefined and validation fails.
ZERO_NORM_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SignalSet:
    """Validated per-frame signals for one video.

    Construct through :func:`validate_signals`; direct construction skips
    validation and is reserved for callers that already hold checked arrays.
    """

    embeddings: np.ndarray  # (N, d) float64, rows unit-norm within 1e-4
    relevance: np.ndarray  # (N,) float64, finite
    fps: float = 1.0
    query: str = ""
    source: str = ""
    metadata: Mapping[str, Any] = field(default_factory=dict)
    renormalized_rows: tuple[int, ...] = ()

    @property
    def frame_count(self) -> int:
        return self.embeddings.shape[0]

    @property
    def dim(self) -> int:
        return self.embeddings.shape[1]


@dataclass(frozen=True)
class SimilarityCurve:
    """Per-frame weighted mean cosine to neighboring frames.

    Values lie in [-1, 1]; a frame with no neighbors (single-frame input)
    gets 1.0 by convention.
    """

    values: np.ndarray  # (N,) float64
    window: int

    def __len__(self) -> int:
        return len(self.values)


def validate_signals(
    embeddings,
    relevance,
    *,
    fps: float = 1.0,
    query: str = "",
    source: str = "",
    metadata: Mapping[str, Any] | None = None,
) -> SignalSet:
    """Check, normalize and freeze a raw signal payload.

    Rows whose norm deviates from 1 by more than ``NORM_TOLERANCE`` but are
    nonzero are re-normalized and their indices recorded in
    ``renormalized_rows``; rows already within tolerance are kept unchanged.

    Raises:
        DimensionMismatch: wrong array rank, empty axes, or length mismatch.
        NonFiniteValue: NaN/Inf in embeddings or relevance.
        ZeroNormEmbedding: a row with norm below 1e-12.
    """
    emb = np.asarray(embeddings, dtype=np.float64)
    rel = np.asarray(relevance, dtype=np.float64)

    if emb.ndim != 2:
        raise DimensionMismatch(f"embeddings must be 2-D, got ndim={emb.ndim}")
    n, d = emb.shape
    if n < 1 or d < 1:
        raise DimensionMismatch(f"embeddings must be non-empty, got shape {emb.shape}")
    if rel.ndim != 1:
        raise DimensionMismatch(f"relevance must be 1-D, got ndim={rel.ndim}")
    if len(rel) != n:
        raise DimensionMismatch(
            f"relevance length {len(rel)} != frame count {n}"
        )
    if not (np.isfinite(fps) and fps > 0):
        raise ValueError(f"fps must be a positive finite number, got {fps}")

    if not np.all(np.isfinite(emb)):
        bad = int(np.flatnonzero(~np.isfinite(emb).all(axis=1))[0])
        raise NonFiniteValue("embeddings", bad)
    if not np.all(np.isfinite(rel)):
        raise NonFiniteValue("relevance", int(np.flatnonzero(~np.isfinite(rel))[0]))

    norms = np.linalg.norm(emb, axis=1)
    zero = np.flatnonzero(norms < ZERO_NORM_THRESHOLD)
    if zero.size:
        raise ZeroNormEmbedding(int(zero[0]))

    off = np.flatnonzero(np.abs(norms - 1.0) > NORM_TOLERANCE)
    if off.size:
        emb = emb.copy()
        emb[off] /= norms[off, None]

    emb = np.ascontiguousarray(emb)
    rel = np.ascontiguousarray(rel)
    emb.flags.writeable = False
    rel.flags.writeable = False

    return SignalSet(
        embeddings=emb,
        relevance=rel,
        fps=float(fps),
        query=query,
        source=source,
        metadata=dict(metadata) if metadata else {},
        renormalized_rows=tuple(int(i) for i in off),
    )


def temporal_similarity(signals: SignalSet, window: int) -> SimilarityCurve:
    """Weighted mean cosine of each frame to its neighbors within ``window``.

    For frame i the neighborhood is every j with 1 <= |i-j| <= window (the
    frame itself is excluded); the weight at distance dist is
    ``window + 1 - dist``, so nearer frames count more.  Contributions are
    accumulated in ascending-j order so results are bit-stable.

    Raises:
        WindowTooSmall: window < 1.
    """
    if window < 1:
        raise WindowTooSmall(f"window must be >= 1, got {window}")

    emb = signals.embeddings
    n = emb.shape[0]
    if n == 1:
        # No neighbors exist; a single frame is maximally coherent.
        return SimilarityCurve(values=_frozen(np.ones(1)), window=window)

    num = np.zeros(n)
    den = np.zeros(n)

    # Left neighbors j = i-window .. i-1, i.e. distance descending.
    for dist in range(window, 0, -1):
        if dist >= n:
            continue
        w = float(window + 1 - dist)
        sims = np.einsum("ij,ij->i", emb[dist:], emb[:-dist])
        num[dist:] += w * sims
        den[dist:] += w

    # Right neighbors j = i+1 .. i+window, distance ascending.
    for dist in range(1, window + 1):
        if dist >= n:
            continue
        w = float(window + 1 - dist)
        sims = np.einsum("ij,ij->i", emb[:-dist], emb[dist:])
        num[: n - dist] += w * sims
        den[: n - dist] += w

    values = num / den  # den > 0: every frame has a distance-1 neighbor when n >= 2
    np.clip(values, -1.0, 1.0, out=values)
    return SimilarityCurve(values=_frozen(values), window=window)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr
