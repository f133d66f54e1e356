"""Event partitioning: boundary detection, segmentation, greedy merging.

Events are contiguous half-open index ranges covering [0, N) exactly.  Initial
boundaries are the local minima of the temporal-similarity curve; when that
yields more events than wanted, the most visually similar adjacent pair is
merged repeatedly until the target count is reached.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryOutOfRange, ZeroMeanSegment
from .signals import SignalSet, SimilarityCurve

MEAN_ZERO_THRESHOLD = 1e-12


@dataclass(frozen=True)
class EventPartition:
    """Ordered, disjoint, exhaustive segmentation of the frame index range.

    ``means`` holds one unit-norm mean embedding per segment when the
    partition came out of :func:`merge_to_target`; partitions built purely
    from boundaries carry ``means=None``.
    """

    segments: tuple[tuple[int, int], ...]
    means: np.ndarray | None = None

    def __post_init__(self):
        if not self.segments:
            raise ValueError("partition must contain at least one segment")
        if self.segments[0][0] != 0:
            raise ValueError("first segment must start at 0")
        for (s, e), (s2, _) in zip(self.segments, self.segments[1:]):
            if e != s2:
                raise ValueError(f"segments not contiguous at [{s}, {e}) -> {s2}")
        for s, e in self.segments:
            if s >= e:
                raise ValueError(f"empty segment [{s}, {e})")

    @property
    def frame_count(self) -> int:
        return self.segments[-1][1]

    def __len__(self) -> int:
        return len(self.segments)


def detect_local_minima(curve: SimilarityCurve) -> set[int]:
    """Interior local minima of the curve, plateau-aware.

    A run of equal values is a minimum when both the value before and the
    value after the run are strictly greater; only the first index of the run
    is reported.  Endpoints are never minima.
    """
    v = curve.values
    n = len(v)
    minima: set[int] = set()
    i = 0
    while i < n:
        j = i
        while j + 1 < n and v[j + 1] == v[i]:
            j += 1
        if i > 0 and j < n - 1 and v[i - 1] > v[i] and v[j + 1] > v[i]:
            minima.add(i)
        i = j + 1
    return minima


def partition_from_minima(minima, n: int) -> EventPartition:
    """Segment [0, n) so that each boundary index opens a new segment.

    Raises:
        BoundaryOutOfRange: a boundary outside the open interval (0, n-1).
    """
    bounds = sorted(set(int(m) for m in minima))
    for m in bounds:
        if not 0 < m < n - 1:
            raise BoundaryOutOfRange(f"boundary {m} not in (0, {n - 1})")
    edges = [0] + bounds + [n]
    return EventPartition(tuple(zip(edges[:-1], edges[1:])))


def merge_to_target(
    partition: EventPartition, signals: SignalSet, m_target: int
) -> EventPartition:
    """Greedily merge adjacent segments until at most ``m_target`` remain.

    Each step merges the adjacent pair whose unit-norm mean embeddings have
    the highest cosine (ties go to the earliest pair).  The merged segment's
    mean is the exact mean of its member frames, maintained as a running raw
    sum and re-normalized.  A partition already at or below the target is
    returned unchanged.

    Raises:
        ZeroMeanSegment: a segment's raw mean has norm < 1e-12.
    """
    if m_target < 1:
        raise ValueError(f"m_target must be >= 1, got {m_target}")
    segs = list(partition.segments)
    if len(segs) <= m_target:
        return partition

    emb = signals.embeddings
    sums = [emb[s:e].sum(axis=0) for s, e in segs]
    means = [_unit_mean(v, s, e) for v, (s, e) in zip(sums, segs)]
    adj = np.array(
        [float(means[i] @ means[i + 1]) for i in range(len(segs) - 1)]
    )

    while len(segs) > m_target:
        j = int(np.argmax(adj))  # first occurrence = earliest pair
        s, _ = segs[j]
        _, e = segs[j + 1]
        merged_sum = sums[j] + sums[j + 1]
        merged_mean = _unit_mean(merged_sum, s, e)

        segs[j : j + 2] = [(s, e)]
        sums[j : j + 2] = [merged_sum]
        means[j : j + 2] = [merged_mean]

        patch = []
        if j > 0:
            patch.append(float(means[j - 1] @ merged_mean))
        if j < len(segs) - 1:
            patch.append(float(merged_mean @ means[j + 1]))
        lo = max(j - 1, 0)
        adj = np.concatenate([adj[:lo], patch, adj[j + 2 :]])

    return EventPartition(tuple(segs), means=np.array(means))


def segment_means(partition: EventPartition, signals: SignalSet) -> np.ndarray:
    """Unit-norm mean embedding per segment, computed from member frames."""
    emb = signals.embeddings
    return np.array(
        [_unit_mean(emb[s:e].sum(axis=0), s, e) for s, e in partition.segments]
    )


def _unit_mean(raw_sum: np.ndarray, start: int, end: int) -> np.ndarray:
    mean = raw_sum / (end - start)
    norm = float(np.linalg.norm(mean))
    if norm < MEAN_ZERO_THRESHOLD:
        raise ZeroMeanSegment(start, end)
    return mean / norm
