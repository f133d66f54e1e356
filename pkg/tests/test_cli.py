import json
import subprocess
import sys

import pytest

from efs.cli import main
from efs import SyntheticSpec, gen_synthetic, write_signals


SPEC = {
    "n_frames": 60,
    "dim": 8,
    "n_events": 6,
    "relevant_events": [1, 4],
    "noise": 0.1,
    "seed": 5,
}


@pytest.fixture
def signals_file(tmp_path):
    signals, _ = gen_synthetic(SyntheticSpec.from_dict(SPEC))
    path = tmp_path / "clip.efss"
    write_signals(signals, path)
    return path


def run_cli(args):
    return main([str(a) for a in args])


class TestSelect:
    def test_select_efs_writes_report(self, signals_file, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = run_cli(["select", "--signals", signals_file, "--k", 6, "--out", out])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["strategy"] == "efs"
        assert len(report["selected"]) == 6
        assert report["config"]["window"] == 3
        assert report["config"]["m_target"] == 10
        assert report["config"]["alpha"] == 0.5

    @pytest.mark.parametrize("strategy", ["uniform", "topk", "mmr", "fixed"])
    def test_select_baselines(self, signals_file, tmp_path, strategy):
        out = tmp_path / f"{strategy}.json"
        code = run_cli(
            ["select", "--signals", signals_file, "--k", 4,
             "--strategy", strategy, "--out", out]
        )
        assert code == 0
        assert json.loads(out.read_text())["strategy"] == strategy

    def test_reports_byte_reproducible(self, signals_file, tmp_path):
        out1 = tmp_path / "a.json"
        out2 = tmp_path / "b.json"
        run_cli(["select", "--signals", signals_file, "--k", 6, "--out", out1])
        run_cli(["select", "--signals", signals_file, "--k", 6, "--out", out2])
        assert out1.read_bytes() == out2.read_bytes()

    def test_timings_go_to_stderr_not_report(self, signals_file, tmp_path, capsys):
        out = tmp_path / "r.json"
        run_cli(["select", "--signals", signals_file, "--k", 6, "--out", out])
        assert "timings" not in json.loads(out.read_text())
        assert "stage timings" in capsys.readouterr().err

    def test_missing_file_gives_error_json(self, tmp_path, capsys):
        code = run_cli(
            ["select", "--signals", tmp_path / "nope.efss", "--k", 3,
             "--out", tmp_path / "r.json"]
        )
        assert code == 1
        err = json.loads(capsys.readouterr().err)
        assert "error" in err and "message" in err


class TestPartition:
    def test_partition_prints_events(self, signals_file, capsys):
        code = run_cli(["partition", "--signals", signals_file, "--m", 4])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["frame_count"] == 60
        assert len(doc["events"]) <= 4
        assert doc["events"][0][0] == 0
        assert doc["events"][-1][1] == 60


class TestGenSynthetic:
    def test_inline_spec(self, tmp_path, capsys):
        out = tmp_path / "gen.efss"
        code = run_cli(["gen-synthetic", "--spec", json.dumps(SPEC), "--out", out])
        assert code == 0
        assert out.exists()
        truth = json.loads((tmp_path / "gen.efss.truth.json").read_text())
        assert len(truth["segments"]) == 6
        assert truth["relevant_events"] == [1, 4]

    def test_spec_from_file(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(SPEC))
        out = tmp_path / "gen.efss"
        assert run_cli(["gen-synthetic", "--spec", spec_path, "--out", out]) == 0
        assert out.exists()

    def test_identical_outputs_for_same_spec(self, tmp_path):
        out1 = tmp_path / "a.efss"
        out2 = tmp_path / "b.efss"
        run_cli(["gen-synthetic", "--spec", json.dumps(SPEC), "--out", out1])
        run_cli(["gen-synthetic", "--spec", json.dumps(SPEC), "--out", out2])
        assert out1.read_bytes() == out2.read_bytes()

    def test_bad_spec(self, tmp_path, capsys):
        bad = dict(SPEC, n_events=999)
        code = run_cli(
            ["gen-synthetic", "--spec", json.dumps(bad), "--out", tmp_path / "x.efss"]
        )
        assert code == 1
        assert json.loads(capsys.readouterr().err)["error"] == "InvalidSpec"


class TestBench:
    def test_bench_over_corpus(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        for seed in range(3):
            spec = dict(SPEC, seed=seed)
            run_cli(
                ["gen-synthetic", "--spec", json.dumps(spec),
                 "--out", corpus / f"item{seed}.efss"]
            )
        out = tmp_path / "bench.json"
        code = run_cli(
            ["bench", "--corpus", corpus, "--budgets", "4,8",
             "--strategies", "efs,uniform,topk", "--out", out]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert len(doc["rows"]) == 3 * 3 * 2
        assert "efs@8" in doc["summary"]
        stdout = capsys.readouterr().out
        assert "coverage" in stdout

    def test_empty_corpus_fails(self, tmp_path, capsys):
        corpus = tmp_path / "empty"
        corpus.mkdir()
        code = run_cli(["bench", "--corpus", corpus, "--out", tmp_path / "r.json"])
        assert code == 1


class TestInspect:
    def test_inspect_valid_file(self, signals_file, capsys):
        assert run_cli(["inspect", signals_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["frame_count"] == 60
        assert doc["dim"] == 8
        assert doc["valid"] is True

    def test_inspect_bad_magic(self, tmp_path, capsys):
        bad = tmp_path / "bad.efss"
        bad.write_bytes(b"XXXX" + b"\x00" * 60)
        assert run_cli(["inspect", bad]) == 1
        assert json.loads(capsys.readouterr().err)["error"] == "BadMagic"


class TestConsoleEntry:
    def test_module_invocation(self, signals_file, tmp_path):
        out = tmp_path / "r.json"
        proc = subprocess.run(
            [sys.executable, "-m", "efs.cli", "select",
             "--signals", str(signals_file), "--k", "4", "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.exists()
