"""Acceptance suite: every release criterion, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Tolerances are fixed here and are not meant to be tuned.
"""

import functools
import json
import time

import numpy as np
import pytest

from efs import (
    BadMagic,
    EfsConfig,
    SyntheticSpec,
    TruncatedPayload,
    adaptive_refine,
    classic_mmr,
    detect_local_minima,
    gen_synthetic,
    merge_to_target,
    partition_from_minima,
    read_signals,
    run_efs_pipeline,
    temporal_similarity,
    topk_sample,
    uniform_sample,
    validate_signals,
    write_signals,
)
from efs.bench import event_coverage, mean_relevance
from efs.cli import main as cli_main

from conftest import random_signals
from oracles import (
    best_adjacent_pair,
    naive_temporal_similarity,
    reference_adaptive_refine,
    reference_mmr_picks,
)


def criterion(name):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[FAIL] {name}")
                raise
            print(f"[PASS] {name}")
        return wrapper
    return deco


@criterion("temporal-similarity oracle: 200 random sets, max err <= 1e-9, < 10 s")
def test_similarity_oracle_200_sets():
    start = time.perf_counter()
    worst = 0.0
    for seed in range(200):
        s = random_signals(seed)
        window = (1, 3, 5)[seed % 3]
        got = temporal_similarity(s, window).values
        want = naive_temporal_similarity(s.embeddings, window)
        worst = max(worst, float(np.max(np.abs(got - want))))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-9, f"max abs error {worst:.3e}"
    assert elapsed < 10.0, f"took {elapsed:.2f}s"


@criterion("partition invariants: 1000 random curves, exact counts, per-step oracle")
def test_partition_invariants_1000_curves():
    rng = np.random.default_rng(2024)
    stepwise_checked = 0
    for seed in range(1000):
        s = random_signals(seed + 100_000)
        n = s.frame_count
        curve = temporal_similarity(s, 3)
        initial = partition_from_minima(detect_local_minima(curve), n)
        assert [i for seg in initial.segments for i in range(*seg)] == list(range(n))

        target = int(rng.integers(1, 13))
        merged = merge_to_target(initial, s, target)
        assert len(merged) == max(1, min(len(initial), target))
        assert [i for seg in merged.segments for i in range(*seg)] == list(range(n))

        # step-by-step: one fewer segment per step, choice matches the
        # exhaustive adjacent-pair argmax (checked where <= 8 segments)
        if 2 <= len(initial) <= 8:
            p = initial
            while len(p) > 1:
                j = best_adjacent_pair(p.segments, s.embeddings)
                expect = (
                    p.segments[:j]
                    + ((p.segments[j][0], p.segments[j + 1][1]),)
                    + p.segments[j + 2 :]
                )
                p_next = merge_to_target(p, s, len(p) - 1)
                assert len(p_next) == len(p) - 1
                assert p_next.segments == expect
                p = p_next
                stepwise_checked += 1
    assert stepwise_checked >= 100, f"only {stepwise_checked} stepwise checks ran"


@criterion("adaptive refinement oracle: 500 instances identical, sigma=0 -> one pass")
def test_refinement_oracle_500_instances():
    sigma_zero_seen = 0
    for seed in range(500):
        rng = np.random.default_rng(seed + 777)
        if seed % 10 == 0:
            # exact sigma=0 instance: every frame is the same basis vector
            n = int(rng.integers(2, 50))
            d = int(rng.integers(2, 17))
            emb = np.zeros((n, d))
            emb[:, int(rng.integers(0, d))] = 1.0
            s = validate_signals(emb, rng.normal(size=n))
        else:
            s = random_signals(seed + 777, n=int(rng.integers(1, 101)),
                               clustered=bool(seed % 2))
        n = s.frame_count
        n_anchors = int(rng.integers(1, min(10, n) + 1))
        anchors = sorted(int(a) for a in rng.choice(n, size=n_anchors, replace=False))
        k = int(rng.integers(1, min(n + 3, 16)))
        alpha = float(rng.choice([0.1, 0.5, 1.0]))
        delta = float(rng.choice([0.02, 0.05, 0.1]))
        cfg = EfsConfig(k=k, alpha=alpha, delta=delta)

        got = adaptive_refine(s, anchors, cfg)
        want = reference_adaptive_refine(
            s.embeddings, s.relevance, anchors, k, alpha, delta
        )
        assert list(got.indices) == want, f"seed {seed}: {got.indices} != {want}"

        if seed % 10 == 0 and not got.trace.anchor_truncated and k > len(anchors):
            assert got.trace.sigma == 0.0
            assert got.trace.passes == 1, (
                f"seed {seed}: sigma=0 ran {got.trace.passes} passes"
            )
            sigma_zero_seen += 1
    assert sigma_zero_seen >= 20, f"only {sigma_zero_seen} sigma=0 instances checked"


@criterion("marginal-relevance oracle: every greedy step exhaustive, 100 seeds")
def test_mmr_oracle_100_seeds():
    for seed in range(100):
        rng = np.random.default_rng(seed + 31)
        n = int(rng.integers(1, 13))
        s = random_signals(seed + 31, n=n, d=int(rng.integers(2, 17)))
        k = int(rng.integers(1, 5))
        lam = float(rng.uniform(0.0, 1.0))
        got = [a.frame for a in classic_mmr(s, k, lam).trace.admissions]
        want = reference_mmr_picks(s.embeddings, s.relevance, k, lam)
        assert got == want, f"seed {seed}: {got} != {want}"


@criterion("pillars: coverage >= top-k and relevance >= uniform on >= 95% of 200 seeds")
def test_pillars_beat_baselines():
    coverage_wins = 0
    relevance_wins = 0
    n_seeds = 200
    for seed in range(n_seeds):
        rng = np.random.default_rng(seed)
        relevant = tuple(sorted(rng.choice(10, size=4, replace=False).tolist()))
        spec = SyntheticSpec(100, 16, 10, relevant, noise=0.1, seed=seed)
        signals, truth = gen_synthetic(spec)

        efs_sel = run_efs_pipeline(signals, EfsConfig(k=8)).selection.indices
        topk_sel = topk_sample(signals.relevance, 8)
        uniform_sel = uniform_sample(signals.frame_count, 8)

        if event_coverage(efs_sel, truth) >= event_coverage(topk_sel, truth):
            coverage_wins += 1
        if mean_relevance(efs_sel, signals.relevance) >= mean_relevance(
            uniform_sel, signals.relevance
        ):
            relevance_wins += 1
    assert coverage_wins >= 0.95 * n_seeds, f"coverage wins {coverage_wins}/{n_seeds}"
    assert relevance_wins >= 0.95 * n_seeds, f"relevance wins {relevance_wins}/{n_seeds}"


@criterion("efficiency: selection for N=10800, d=768, k=64, M=10 in < 2 s")
def test_selection_stage_under_two_seconds():
    spec = SyntheticSpec(
        10_800, 768, 48, tuple(range(0, 48, 3)), noise=0.05, seed=1
    )
    signals, _ = gen_synthetic(spec)  # generation excluded from the timed stage
    cfg = EfsConfig(k=64, m_target=10)
    start = time.perf_counter()
    result = run_efs_pipeline(signals, cfg)
    elapsed = time.perf_counter() - start
    assert len(result.selection.indices) == 64
    assert elapsed < 2.0, f"selection stage took {elapsed:.3f}s"


@criterion("format: write-read-write byte-identical, bad magic / truncation rejected")
def test_signal_file_format(tmp_path):
    s = random_signals(9, n=23, d=7)
    s = validate_signals(
        s.embeddings, s.relevance, fps=1.0, query="q", source="src",
        metadata={"extra": "kept"},
    )
    first = tmp_path / "a.efss"
    second = tmp_path / "b.efss"
    write_signals(s, first)
    write_signals(read_signals(first), second)
    assert second.read_bytes() == first.read_bytes()

    corrupt = bytearray(first.read_bytes())
    corrupt[:4] = b"XXXX"
    bad = tmp_path / "bad.efss"
    bad.write_bytes(bytes(corrupt))
    with pytest.raises(BadMagic):
        read_signals(bad)

    cut = tmp_path / "cut.efss"
    cut.write_bytes(first.read_bytes()[:-40])
    with pytest.raises(TruncatedPayload):
        read_signals(cut)


@criterion("defaults: window=3, m_target=10, alpha=0.5, fps=1, echoed by the CLI")
def test_defaults_and_cli_echo(tmp_path):
    cfg = EfsConfig(k=8)
    assert cfg.window == 3
    assert cfg.m_target == 10
    assert cfg.alpha == 0.5
    assert validate_signals([[1.0, 0.0]], [0.1]).fps == 1.0

    spec = {"n_frames": 40, "dim": 8, "n_events": 4, "relevant_events": [1],
            "noise": 0.1, "seed": 0}
    clip = tmp_path / "clip.efss"
    report_path = tmp_path / "report.json"
    assert cli_main(["gen-synthetic", "--spec", json.dumps(spec),
                     "--out", str(clip)]) == 0
    assert cli_main(["select", "--signals", str(clip), "--k", "8",
                     "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["config"]["window"] == 3
    assert report["config"]["m_target"] == 10
    assert report["config"]["alpha"] == 0.5
    assert report["fps"] == 1.0
