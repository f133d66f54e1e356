"""Benchmark harness: three-pillar metrics over a synthetic corpus.

Metrics formalize the selection goals as measurable quantities against a
known ground-truth partition:

* event_coverage  - fraction of ground-truth events containing >= 1 selected
  frame,
* mean_relevance  - mean relevance score of the selected frames,
* redundancy      - mean over selected frames of the max cosine to another
  selected frame (clipped to [0, 1] at reporting time; 0 for a single frame).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .events import EventPartition
from .selection import EfsConfig, FillPolicy
from .pipeline import run_strategy
from .signals import SignalSet


def event_coverage(selected, truth: EventPartition) -> float:
    chosen = sorted(set(int(i) for i in selected))
    if not chosen:
        return 0.0
    hit = 0
    for s, e in truth.segments:
        if any(s <= i < e for i in chosen):
            hit += 1
    return hit / len(truth.segments)


def mean_relevance(selected, relevance: np.ndarray) -> float:
    chosen = sorted(set(int(i) for i in selected))
    if not chosen:
        return 0.0
    return float(np.asarray(relevance)[chosen].mean())


def redundancy(selected, embeddings: np.ndarray) -> float:
    chosen = sorted(set(int(i) for i in selected))
    if len(chosen) < 2:
        return 0.0
    sub = np.asarray(embeddings)[chosen]
    sims = sub @ sub.T
    np.fill_diagonal(sims, -np.inf)
    per_frame = np.clip(sims.max(axis=1), 0.0, 1.0)
    return float(per_frame.mean())


@dataclass(frozen=True)
class CorpusItem:
    item_id: str
    signals: SignalSet
    truth: EventPartition


def evaluate_item(
    item: CorpusItem, strategy: str, k: int, base: EfsConfig
) -> dict:
    """Run one strategy at one budget on one corpus item."""
    cfg = EfsConfig(
        k=k,
        m_target=base.m_target,
        window=base.window,
        alpha=base.alpha,
        delta=base.delta,
        fill_policy=base.fill_policy,
        mmr_lambda=base.mmr_lambda,
        tau=base.tau,
        seed=base.seed,
    )
    t0 = time.perf_counter()
    report = run_strategy(item.signals, cfg, strategy)
    elapsed = time.perf_counter() - t0
    selected = report["selected"]
    return {
        "item": item.item_id,
        "strategy": strategy,
        "k": k,
        "selected": selected,
        "event_coverage": event_coverage(selected, item.truth),
        "mean_relevance": mean_relevance(selected, item.signals.relevance),
        "redundancy": redundancy(selected, item.signals.embeddings),
        "wall_s": elapsed,
        "stage_timings": report["timings"],
    }


def run_bench(
    items: list[CorpusItem],
    strategies: list[str],
    budgets: list[int],
    base: EfsConfig | None = None,
) -> dict:
    """Evaluate every strategy at every budget over the corpus.

    Per-item rows are sorted by item id so aggregation is independent of
    evaluation order.
    """
    if base is None:
        base = EfsConfig(k=max(budgets))
    rows = []
    for item in sorted(items, key=lambda it: it.item_id):
        for strategy in strategies:
            for k in budgets:
                rows.append(evaluate_item(item, strategy, k, base))

    summary = {}
    for strategy in strategies:
        for k in budgets:
            sub = [r for r in rows if r["strategy"] == strategy and r["k"] == k]
            summary[f"{strategy}@{k}"] = {
                "strategy": strategy,
                "k": k,
                "items": len(sub),
                "event_coverage": float(np.mean([r["event_coverage"] for r in sub])),
                "mean_relevance": float(np.mean([r["mean_relevance"] for r in sub])),
                "redundancy": float(np.mean([r["redundancy"] for r in sub])),
                "wall_s": float(np.mean([r["wall_s"] for r in sub])),
            }
    return {"rows": rows, "summary": summary}


def format_summary_table(summary: dict) -> str:
    """Plain-text table of the per-(strategy, budget) means."""
    header = f"{'strategy':<10}{'k':>5}{'coverage':>10}{'relevance':>11}{'redundancy':>12}{'wall_s':>10}"
    lines = [header, "-" * len(header)]
    for key in sorted(summary):
        s = summary[key]
        lines.append(
            f"{s['strategy']:<10}{s['k']:>5}{s['event_coverage']:>10.4f}"
            f"{s['mean_relevance']:>11.4f}{s['redundancy']:>12.4f}{s['wall_s']:>10.4f}"
        )
    return "\n".join(lines)
