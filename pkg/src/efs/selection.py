"""Anchor localization, anchor-guided adaptive refinement, and baselines.

The adaptive refinement starts from one anchor per event (the most
query-relevant frame), estimates how similar the whole candidate pool is to
those anchors, and sweeps a diversity threshold from strict (mean - alpha*std)
to loose (mean + alpha*std), admitting candidates in relevance order whenever
their max similarity to the running selection stays below the threshold.

Baselines: uniform center-of-bin sampling, top-k by relevance, classic greedy
MMR, a single-pass fixed-threshold greedy, and the random/centroid partition
and anchor variants used for ablations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetZero, EmptyAnchorSet
from .events import EventPartition, segment_means
from .signals import SignalSet


class FillPolicy(enum.Enum):
    """What to do when refinement ends with fewer than k frames."""

    FILL_BY_RELEVANCE = "relevance"
    ALLOW_UNDERFILL = "underfill"


@dataclass(frozen=True)
class EfsConfig:
    """All selection tunables.

    ``k`` is the keyframe budget; ``m_target`` caps the event count;
    ``window`` is the similarity window; ``alpha`` widens the threshold band;
    ``delta`` is the per-pass threshold increment.  ``mmr_lambda`` and ``tau``
    only feed the classic-MMR and fixed-threshold baselines; ``seed`` only the
    randomized baselines.
    """

    k: int
    m_target: int = 10
    window: int = 3
    alpha: float = 0.5
    delta: float = 0.05
    fill_policy: FillPolicy = FillPolicy.FILL_BY_RELEVANCE
    mmr_lambda: float = 0.5
    tau: float = 0.6
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise BudgetZero(f"k must be >= 1, got {self.k}")
        if self.m_target < 1:
            raise ValueError(f"m_target must be >= 1, got {self.m_target}")
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not self.delta > 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if not 0.0 <= self.mmr_lambda <= 1.0:
            raise ValueError(f"lambda must be in [0, 1], got {self.mmr_lambda}")
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must be in [0, 1], got {self.tau}")


@dataclass(frozen=True)
class Admission:
    """One frame admitted during refinement: when, at what threshold, how close."""

    pass_no: int
    theta: float
    frame: int
    max_similarity: float


@dataclass(frozen=True)
class SelectionTrace:
    """Full decision log for one selection run."""

    mu: float | None = None
    sigma: float | None = None
    theta_strict: float | None = None
    theta_loose: float | None = None
    passes: int = 0
    admissions: tuple[Admission, ...] = ()
    fill_added: tuple[int, ...] = ()
    retained_anchors: tuple[int, ...] = ()
    anchor_truncated: bool = False


@dataclass(frozen=True)
class Selection:
    """Chronologically sorted keyframe indices plus the decision trace."""

    indices: tuple[int, ...]
    anchors: tuple[int, ...] = ()
    partition: EventPartition | None = None
    trace: SelectionTrace = field(default_factory=SelectionTrace)


def select_anchors(partition: EventPartition, relevance: np.ndarray) -> list[int]:
    """Most relevant frame per segment (ties -> smallest index), in segment order."""
    rel = np.asarray(relevance, dtype=np.float64)
    if partition.frame_count != len(rel):
        raise ValueError(
            f"partition covers [0, {partition.frame_count}) but relevance has "
            f"length {len(rel)}"
        )
    return [s + int(np.argmax(rel[s:e])) for s, e in partition.segments]


def adaptive_refine(
    signals: SignalSet, anchors, cfg: EfsConfig, partition: EventPartition | None = None
) -> Selection:
    """Grow the anchor set to the budget with an adaptive diversity threshold.

    Statistics are taken over the max cosine of every candidate frame to the
    anchor set; the admission threshold sweeps from mu - alpha*sigma up to
    mu + alpha*sigma in steps of delta, one relevance-ordered pass per step,
    with one final pass at the loose bound.  Anchors are never evicted.  If
    more anchors exist than the budget allows, the k most relevant anchors are
    kept and refinement is skipped.

    Raises:
        EmptyAnchorSet: no anchors given.
        BudgetZero: cfg.k < 1 (also rejected by EfsConfig itself).
    """
    if cfg.k < 1:
        raise BudgetZero(f"k must be >= 1, got {cfg.k}")
    anchor_list = list(dict.fromkeys(int(a) for a in anchors))
    if not anchor_list:
        raise EmptyAnchorSet("at least one anchor is required")

    emb = signals.embeddings
    rel = signals.relevance
    n = emb.shape[0]
    for a in anchor_list:
        if not 0 <= a < n:
            raise ValueError(f"anchor {a} out of range [0, {n})")

    if len(anchor_list) > cfg.k:
        retained = sorted(anchor_list, key=lambda i: (-rel[i], i))[: cfg.k]
        trace = SelectionTrace(
            retained_anchors=tuple(sorted(retained)), anchor_truncated=True
        )
        return Selection(
            indices=tuple(sorted(retained)),
            anchors=tuple(anchor_list),
            partition=partition,
            trace=trace,
        )

    order = np.argsort(-rel, kind="stable")  # relevance desc, ties -> smaller index

    # Max similarity of every candidate to the anchor set; doubles as the
    # statistic pool and the running max-to-selection array (K starts at the
    # anchors).
    msim = (emb @ emb[anchor_list].T).max(axis=1)
    mu = float(msim.mean())
    sigma = float(msim.std())
    theta_strict = float(np.clip(mu - cfg.alpha * sigma, 0.0, 1.0))
    theta_loose = float(np.clip(mu + cfg.alpha * sigma, 0.0, 1.0))

    in_k = np.zeros(n, dtype=bool)
    in_k[anchor_list] = True
    size = len(anchor_list)

    cur = msim.copy()
    theta = theta_strict
    pass_no = 0
    admissions: list[Admission] = []

    while size < cfg.k:
        pass_no += 1
        for c in order:
            if size >= cfg.k:
                break
            if in_k[c]:
                continue
            if cur[c] < theta:
                admissions.append(
                    Admission(pass_no, theta, int(c), float(cur[c]))
                )
                in_k[c] = True
                size += 1
                cur = np.maximum(cur, emb @ emb[c])
        if size >= cfg.k:
            break
        if theta >= theta_loose:
            break  # one pass at the loose bound, then give up
        theta = min(theta + cfg.delta, theta_loose)

    fill_added: list[int] = []
    if size < cfg.k and cfg.fill_policy is FillPolicy.FILL_BY_RELEVANCE:
        target = min(cfg.k, n)
        for c in order:
            if size >= target:
                break
            if not in_k[c]:
                in_k[c] = True
                size += 1
                fill_added.append(int(c))

    trace = SelectionTrace(
        mu=mu,
        sigma=sigma,
        theta_strict=theta_strict,
        theta_loose=theta_loose,
        passes=pass_no,
        admissions=tuple(admissions),
        fill_added=tuple(fill_added),
        retained_anchors=tuple(sorted(anchor_list)),
    )
    return Selection(
        indices=tuple(int(i) for i in np.flatnonzero(in_k)),
        anchors=tuple(anchor_list),
        partition=partition,
        trace=trace,
    )


def classic_mmr(signals: SignalSet, k: int, mmr_lambda: float) -> Selection:
    """Greedy marginal-relevance selection from an empty set.

    Each step picks argmax of lambda*relevance - (1-lambda)*max-sim-to-selected
    (0 over the empty set), ties to the smaller index, stopping at min(k, N).

    Raises:
        BudgetZero: k < 1.
    """
    if k < 1:
        raise BudgetZero(f"k must be >= 1, got {k}")
    emb = signals.embeddings
    rel = signals.relevance
    n = emb.shape[0]

    chosen = np.zeros(n, dtype=bool)
    msim = np.zeros(n)  # max over the empty set is 0 by definition
    admissions: list[Admission] = []
    for step in range(min(k, n)):
        scores = mmr_lambda * rel - (1.0 - mmr_lambda) * msim
        scores[chosen] = -np.inf
        c = int(np.argmax(scores))
        chosen[c] = True
        admissions.append(Admission(step + 1, float(scores[c]), c, float(msim[c])))
        sims = emb @ emb[c]
        # after the first pick the max is over a real set; negative cosines
        # must not be floored by the empty-set zero
        msim = sims if step == 0 else np.maximum(msim, sims)

    trace = SelectionTrace(passes=len(admissions), admissions=tuple(admissions))
    return Selection(
        indices=tuple(int(i) for i in np.flatnonzero(chosen)), trace=trace
    )


def fixed_threshold_greedy(signals: SignalSet, k: int, tau: float) -> Selection:
    """Single relevance-descending pass with a fixed diversity threshold.

    Starts from the most relevant frame, admits a candidate when its max
    similarity to the selection is strictly below tau, never fills up.

    Raises:
        BudgetZero: k < 1.
    """
    if k < 1:
        raise BudgetZero(f"k must be >= 1, got {k}")
    emb = signals.embeddings
    rel = signals.relevance
    order = np.argsort(-rel, kind="stable")

    seed_frame = int(order[0])
    chosen = [seed_frame]
    msim = emb @ emb[seed_frame]
    admissions = [Admission(1, float(tau), seed_frame, 0.0)]
    for c in order[1:]:
        if len(chosen) >= k:
            break
        if msim[c] < tau:
            admissions.append(Admission(1, float(tau), int(c), float(msim[c])))
            chosen.append(int(c))
            msim = np.maximum(msim, emb @ emb[c])

    trace = SelectionTrace(passes=1, admissions=tuple(admissions))
    return Selection(indices=tuple(sorted(chosen)), trace=trace)


def uniform_sample(n: int, k: int) -> list[int]:
    """Center-of-bin uniform sampling: floor((i + 0.5) * n / k), de-duplicated."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out: list[int] = []
    for i in range(min(k, n)):
        idx = (2 * i + 1) * n // (2 * k)
        if not out or idx != out[-1]:
            out.append(idx)
    return out


def topk_sample(relevance, k: int) -> list[int]:
    """Indices of the k highest relevance scores (ties -> smaller index), sorted."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rel = np.asarray(relevance, dtype=np.float64)
    order = np.argsort(-rel, kind="stable")[: min(k, len(rel))]
    return sorted(int(i) for i in order)


def random_partition(n: int, m_target: int, seed: int) -> EventPartition:
    """Seeded uniform random boundary placement into min(m_target, n) segments."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m_target < 1:
        raise ValueError(f"m_target must be >= 1, got {m_target}")
    m = min(m_target, n)
    if m == 1:
        return EventPartition(((0, n),))
    rng = np.random.default_rng(seed)
    bounds = np.sort(rng.choice(np.arange(1, n), size=m - 1, replace=False))
    edges = [0] + [int(b) for b in bounds] + [n]
    return EventPartition(tuple(zip(edges[:-1], edges[1:])))


def random_anchors(partition: EventPartition, seed: int) -> list[int]:
    """One seeded uniform pick per segment."""
    rng = np.random.default_rng(seed)
    return [int(rng.integers(s, e)) for s, e in partition.segments]


def centroid_anchors(partition: EventPartition, signals: SignalSet) -> list[int]:
    """Per segment, the frame nearest the segment's unit-norm mean embedding.

    Nearest = highest cosine; ties go to the first frame of the tie.
    """
    emb = signals.embeddings
    means = partition.means
    if means is None:
        means = segment_means(partition, signals)
    anchors = []
    for (s, e), mean in zip(partition.segments, means):
        sims = emb[s:e] @ mean
        anchors.append(s + int(np.argmax(sims)))
    return anchors
