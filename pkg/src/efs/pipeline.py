"""End-to-end orchestration: signals -> curve -> events -> anchors -> selection.

Produces a JSON-ready report carrying every intermediate artifact: the event
ranges, the anchors, the threshold statistics, the pass-by-pass admission
trace, per-stage wall-clock, and an echo of the configuration used.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .events import EventPartition, detect_local_minima, merge_to_target, partition_from_minima
from .selection import (
    EfsConfig,
    Selection,
    adaptive_refine,
    classic_mmr,
    fixed_threshold_greedy,
    select_anchors,
    topk_sample,
    uniform_sample,
)
from .signals import SignalSet, temporal_similarity

STRATEGIES = ("efs", "uniform", "topk", "mmr", "fixed")

REPORT_SCHEMA = "efs-selection-report"
REPORT_VERSION = 1


@dataclass(frozen=True)
class PipelineResult:
    """Selection plus the intermediates run_efs computed along the way."""

    selection: Selection
    initial_boundaries: tuple[int, ...]
    partition: EventPartition | None
    timings: dict


def run_efs(signals: SignalSet, cfg: EfsConfig) -> dict:
    """Run the full event-anchored pipeline and return a SelectionReport dict."""
    result = run_efs_pipeline(signals, cfg)
    return build_report(signals, cfg, "efs", result)


def run_efs_pipeline(signals: SignalSet, cfg: EfsConfig) -> PipelineResult:
    t0 = time.perf_counter()
    curve = temporal_similarity(signals, cfg.window)
    t1 = time.perf_counter()
    minima = detect_local_minima(curve)
    initial = partition_from_minima(minima, signals.frame_count)
    merged = merge_to_target(initial, signals, cfg.m_target)
    t2 = time.perf_counter()
    anchors = select_anchors(merged, signals.relevance)
    selection = adaptive_refine(signals, anchors, cfg, partition=merged)
    t3 = time.perf_counter()
    return PipelineResult(
        selection=selection,
        initial_boundaries=tuple(sorted(minima)),
        partition=merged,
        timings={
            "signal_s": t1 - t0,
            "partition_s": t2 - t1,
            "selection_s": t3 - t2,
            "total_s": t3 - t0,
        },
    )


def run_strategy(signals: SignalSet, cfg: EfsConfig, strategy: str) -> dict:
    """Run one named strategy and return its SelectionReport dict."""
    if strategy == "efs":
        return run_efs(signals, cfg)

    t0 = time.perf_counter()
    if strategy == "uniform":
        indices = uniform_sample(signals.frame_count, cfg.k)
        selection = Selection(indices=tuple(indices))
    elif strategy == "topk":
        indices = topk_sample(signals.relevance, cfg.k)
        selection = Selection(indices=tuple(indices))
    elif strategy == "mmr":
        selection = classic_mmr(signals, cfg.k, cfg.mmr_lambda)
    elif strategy == "fixed":
        selection = fixed_threshold_greedy(signals, cfg.k, cfg.tau)
    else:
        raise ValueError(f"unknown strategy {strategy!r} (expected one of {STRATEGIES})")
    elapsed = time.perf_counter() - t0

    result = PipelineResult(
        selection=selection,
        initial_boundaries=(),
        partition=None,
        timings={"signal_s": 0.0, "partition_s": 0.0, "selection_s": elapsed,
                 "total_s": elapsed},
    )
    return build_report(signals, cfg, strategy, result)


def build_report(
    signals: SignalSet, cfg: EfsConfig, strategy: str, result: PipelineResult
) -> dict:
    sel = result.selection
    trace = sel.trace
    indices = list(sel.indices)
    return {
        "schema": REPORT_SCHEMA,
        "version": REPORT_VERSION,
        "strategy": strategy,
        "config": {
            "k": cfg.k,
            "m_target": cfg.m_target,
            "window": cfg.window,
            "alpha": cfg.alpha,
            "delta": cfg.delta,
            "fill_policy": cfg.fill_policy.value,
            "lambda": cfg.mmr_lambda,
            "tau": cfg.tau,
            "seed": cfg.seed,
        },
        "frame_count": signals.frame_count,
        "fps": signals.fps,
        "query": signals.query,
        "source": signals.source,
        "selected": indices,
        "timestamps": [i / signals.fps for i in indices],
        "selected_relevance": [float(signals.relevance[i]) for i in indices],
        "anchors": list(sel.anchors),
        "events": [list(seg) for seg in result.partition.segments]
        if result.partition is not None
        else [],
        "initial_boundaries": list(result.initial_boundaries),
        "thresholds": {
            "mu": trace.mu,
            "sigma": trace.sigma,
            "theta_strict": trace.theta_strict,
            "theta_loose": trace.theta_loose,
        },
        "passes": trace.passes,
        "trace": [
            {
                "pass": adm.pass_no,
                "theta": adm.theta,
                "frame": adm.frame,
                "max_similarity": adm.max_similarity,
            }
            for adm in trace.admissions
        ],
        "fill_added": list(trace.fill_added),
        "anchor_truncated": trace.anchor_truncated,
        "timings": result.timings,
    }
