import json

import numpy as np
import pytest

from lsrseg import cli, ingest, solvers


def run(*args):
    return cli.main([str(a) for a in args])


@pytest.fixture()
def dataset(tmp_path):
    path = tmp_path / "data.csv"
    code = run(
        "synth", "--output", path, "--ambient-dim", 10, "--dims", "2,2,2",
        "--samples", "20,20,20", "--seed", 3,
    )
    assert code == cli.EXIT_OK
    return path


class TestSynth:
    def test_writes_data_and_spec(self, dataset):
        data = ingest.load_csv(dataset)
        assert data.x.shape == (10, 60)
        assert np.array_equal(np.unique(data.labels), [0, 1, 2])
        sidecar = json.loads((dataset.parent / "data.csv.spec.json").read_text())
        assert sidecar["independent"] is True
        assert sidecar["spec"]["seed"] == 3
        assert sidecar["config"]["seed"] == 3

    def test_spec_file_input(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps({
            "ambient_dim": 6,
            "subspace_dims": [1, 1],
            "samples_per_subspace": [4, 4],
            "mode": "orthogonal",
            "noise_sigma": 0.0,
            "correlation": None,
            "seed": 7,
            "normalize_columns": False,
        }))
        out = tmp_path / "d.csv"
        assert run("synth", "--spec-file", spec_path, "--output", out) == cli.EXIT_OK
        assert ingest.load_csv(out).x.shape == (6, 8)

    def test_requires_output(self):
        assert run("synth", "--ambient-dim", 6, "--dims", "1,1",
                   "--samples", "3,3") == cli.EXIT_CONFIG


class TestSolve:
    def test_emits_square_matrix(self, dataset, tmp_path):
        out = tmp_path / "z.csv"
        code = run("solve", "--input", dataset, "--output", out,
                   "--solver", "lsr2", "--lambda", 0.01)
        assert code == cli.EXIT_OK
        z = ingest.load_csv(out).x
        assert z.shape == (60, 60)
        meta = json.loads((tmp_path / "z.csv.meta.json").read_text())
        assert meta["config"]["lam"] == 0.01
        assert meta["variant"] == "lsr2"


class TestSegment:
    def test_exact_recovery_and_report(self, dataset, tmp_path):
        out = tmp_path / "report.json"
        code = run("segment", "--input", dataset, "--output", out,
                   "--solver", "lsr1", "--lambda", 1e-3)
        assert code == cli.EXIT_OK
        payload = json.loads(out.read_text())
        report = payload["report"]
        assert report["error_rate"] == 0.0
        assert report["block_diag_violation"] <= 1e-3
        assert report["n_clusters"] == 3
        assert set(report["wall_times"]) >= {"load", "solve", "affinity", "cluster"}
        assert payload["config"]["lam"] == 1e-3
        assert payload["config"]["seed"] == 0

    def test_orthogonal_dataset_tiny_violation(self, tmp_path):
        # orthogonal subspaces: the ridge solution is block diagonal up to
        # rounding, so the reported violation is far below 1e-6
        data_path = tmp_path / "orth.csv"
        assert run("synth", "--output", data_path, "--ambient-dim", 10,
                   "--dims", "2,2,2", "--samples", "8,8,8",
                   "--mode", "orthogonal", "--seed", 1) == cli.EXIT_OK
        out = tmp_path / "r.json"
        assert run("segment", "--input", data_path, "--output", out,
                   "--solver", "lsr1", "--lambda", 1e-3) == cli.EXIT_OK
        report = json.loads(out.read_text())["report"]
        assert report["error_rate"] == 0.0
        assert report["block_diag_violation"] <= 1e-6

    def test_k_one_single_cluster(self, dataset, tmp_path):
        out = tmp_path / "r1.json"
        code = run("segment", "--input", dataset, "--output", out,
                   "--solver", "lsr2", "--lambda", 0.01, "--k", 1)
        assert code == cli.EXIT_OK
        labels = json.loads(out.read_text())["report"]["predicted_labels"]
        assert set(labels) == {0}

    def test_deterministic_reruns(self, dataset, tmp_path):
        out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (out_a, out_b):
            assert run("segment", "--input", dataset, "--output", out,
                       "--solver", "lsr1", "--lambda", 1e-3, "--seed", 5) == cli.EXIT_OK
        a = json.loads(out_a.read_text())
        b = json.loads(out_b.read_text())
        for payload in (a, b):
            payload.pop("timestamp")
            payload["report"].pop("wall_times")
            payload["report"].pop("affinity_seconds")
            payload["config"].pop("output")
        assert a == b

    def test_rerun_from_config_file(self, dataset, tmp_path):
        out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
        assert run("segment", "--input", dataset, "--output", out_a,
                   "--solver", "lsr1", "--lambda", 1e-3, "--pca-dim", 6) == cli.EXIT_OK
        assert run("segment", "--config", out_a, "--output", out_b) == cli.EXIT_OK
        a = json.loads(out_a.read_text())
        b = json.loads(out_b.read_text())
        assert a["report"]["predicted_labels"] == b["report"]["predicted_labels"]
        assert a["report"]["error_rate"] == b["report"]["error_rate"]
        assert b["config"]["pca_dim"] == 6

    def test_manifest_input(self, dataset, tmp_path):
        manifest = ingest.DatasetManifest(
            path=str(dataset), format=ingest.CSV_WITH_LABELS, expected_k=3, pca_dim=6
        )
        mpath = tmp_path / "manifest.json"
        manifest.save(mpath)
        out = tmp_path / "rm.json"
        assert run("segment", "--input", mpath, "--output", out,
                   "--solver", "lsr1", "--lambda", 1e-3) == cli.EXIT_OK
        assert json.loads(out.read_text())["report"]["error_rate"] == 0.0


class TestExitCodes:
    def test_missing_input_is_io_error(self, tmp_path):
        assert run("segment", "--input", tmp_path / "absent.csv",
                   "--solver", "lsr1", "--lambda", 0.1) == cli.EXIT_IO

    def test_malformed_csv_is_io_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("1,2\n3\n")
        assert run("solve", "--input", bad, "--output", tmp_path / "z.csv",
                   "--solver", "lsr1", "--lambda", 0.1) == cli.EXIT_IO

    def test_bad_lambda_is_config_error(self, dataset, tmp_path):
        assert run("segment", "--input", dataset, "--output", tmp_path / "r.json",
                   "--solver", "lsr1", "--lambda", -1.0) == cli.EXIT_CONFIG

    def test_unknown_preset_is_config_error(self, dataset, monkeypatch):
        monkeypatch.setenv("LSRSEG_PRESET", "not-a-preset")
        assert run("segment", "--input", dataset, "--solver", "lsr1",
                   "--lambda", 0.1) == cli.EXIT_CONFIG

    def test_infeasible_data_is_numeric_error(self, tmp_path):
        # one sample in a 2-D subspace: constrained solver must refuse
        path = tmp_path / "thin.csv"
        assert run("synth", "--output", path, "--ambient-dim", 6,
                   "--dims", "2,2", "--samples", "1,5", "--seed", 0) == cli.EXIT_OK
        assert run("segment", "--input", path, "--output", tmp_path / "r.json",
                   "--solver", "constrained") == cli.EXIT_NUMERIC

    def test_pca_dim_too_large_is_numeric_error(self, dataset, tmp_path):
        assert run("segment", "--input", dataset, "--output", tmp_path / "r.json",
                   "--solver", "lsr1", "--lambda", 0.1,
                   "--pca-dim", 99) == cli.EXIT_NUMERIC


class TestCheck:
    def test_default_suites_pass(self, tmp_path, capsys):
        out = tmp_path / "check.json"
        assert run("check", "--trials", 40, "--seed", 1, "--output", out) == cli.EXIT_OK
        stdout = capsys.readouterr().out
        assert stdout.count(": pass") == 4
        payload = json.loads(out.read_text())
        assert all(suite["passed"] for suite in payload["suites"])

    def test_rank_criterion_fails_with_witness(self, tmp_path, capsys):
        out = tmp_path / "rank.json"
        assert run("check", "--ebd-criterion", "rank", "--trials", 30,
                   "--output", out) == cli.EXIT_CHECK
        payload = json.loads(out.read_text())
        assert payload["result"]["diagonal_dominance_pass"] is False
        assert "dominance" in payload["result"]["counterexamples"]
        assert "dominance" in capsys.readouterr().err

    def test_l1_criterion_passes(self):
        assert run("check", "--ebd-criterion", "l1", "--trials", 30) == cli.EXIT_OK

    def test_tampered_closed_form_detected(self):
        # mutation: skip the diagonal zeroing of the closed form; the
        # column-oracle equivalence gap must blow past the tolerance
        rng = np.random.default_rng(0)
        x = rng.standard_normal((6, 12))
        lam = 0.1
        gram = x.T @ x
        d = np.linalg.solve(gram + lam * np.eye(12), np.eye(12))
        tampered = -d / np.diag(d)[np.newaxis, :]  # diagonal left at -1
        oracle = solvers.column_oracle_ridge(x, lam).z
        assert np.max(np.abs(tampered - oracle)) > 1e-8
        assert np.max(np.abs(solvers.lsr1(x, lam).z - oracle)) <= 1e-8


class TestBench:
    def test_table_shape_and_dominance(self, tmp_path, capsys):
        out = tmp_path / "bench.csv"
        assert run("bench", "--sizes", "60,120", "--ambient-dim", 8,
                   "--reps", 2, "--lambda", 0.05, "--output", out) == cli.EXIT_OK
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "n,solver,median_seconds"
        assert len(lines) == 1 + 2 * 3
        rows = [line.split(",") for line in lines[1:]]
        times = {(int(n), s): float(t) for n, s, t in rows}
        assert times[(120, "lsr1")] < times[(120, "column_oracle_ridge")]

    def test_same_seed_same_solver_output(self):
        rng_a = np.random.default_rng([7, 50])
        rng_b = np.random.default_rng([7, 50])
        xa = rng_a.standard_normal((8, 50))
        xb = rng_b.standard_normal((8, 50))
        assert np.array_equal(solvers.lsr1(xa, 0.01).z, solvers.lsr1(xb, 0.01).z)


class TestEnvOverrides:
    def test_lambda_env(self, dataset, tmp_path, monkeypatch):
        monkeypatch.setenv("LSRSEG_LAMBDA", "0.25")
        out = tmp_path / "z.csv"
        assert run("solve", "--input", dataset, "--output", out,
                   "--solver", "lsr2") == cli.EXIT_OK
        meta = json.loads((tmp_path / "z.csv.meta.json").read_text())
        assert meta["config"]["lam"] == 0.25

    def test_flag_beats_env(self, dataset, tmp_path, monkeypatch):
        monkeypatch.setenv("LSRSEG_LAMBDA", "0.25")
        out = tmp_path / "z.csv"
        assert run("solve", "--input", dataset, "--output", out,
                   "--solver", "lsr2", "--lambda", 0.5) == cli.EXIT_OK
        meta = json.loads((tmp_path / "z.csv.meta.json").read_text())
        assert meta["config"]["lam"] == 0.5

    def test_preset_sets_solver_lambda_pca(self, monkeypatch):
        parser = cli.build_parser()
        args = parser.parse_args(["segment", "--input", "x.csv",
                                  "--preset", "hopkins-lsr1"])
        cfg = cli._resolve_config(args)
        assert (cfg.solver, cfg.lam, cfg.pca_dim) == ("lsr1", 4.8e-3, 12)

    def test_flag_beats_preset(self):
        parser = cli.build_parser()
        args = parser.parse_args(["segment", "--input", "x.csv",
                                  "--preset", "hopkins-lsr1", "--lambda", "0.9"])
        cfg = cli._resolve_config(args)
        assert cfg.lam == 0.9
        assert cfg.pca_dim == 12
