import hashlib
import json
import subprocess
import sys

import numpy as np
import pytest

from qmem.cli import main, parse_grid
from qmem.errors import ConfigError


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "qmem.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    return header, rows


class TestGridParsing:
    def test_log_grid(self):
        g = parse_grid("1:100:3", "log")
        assert np.allclose(g, [1.0, 10.0, 100.0])

    def test_linear_grid(self):
        assert np.allclose(parse_grid("-2:2:5", "linear"), [-2, -1, 0, 1, 2])

    def test_single_value(self):
        assert np.allclose(parse_grid("7.5", "log"), [7.5])

    def test_bad_specs(self):
        for spec in ("1:2", "2:1:5", "1:x:3", "0:10:4"):
            with pytest.raises(ConfigError):
                parse_grid(spec, "log")


class TestSimulate:
    def test_writing_run(self, tmp_path):
        out = tmp_path / "traj.csv"
        proc = run_cli("simulate", "--omega0", "100", "--T", "10",
                       "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(proc.stdout.strip().splitlines()[-1])
        assert payload["kind"] == "writing"
        assert payload["eta"] >= 0.95
        header, rows = read_csv(out)
        assert header == ["t", "pop_g1", "pop_s0", "pop_e0", "trace_err"]
        assert float(rows[-1]["pop_s0"]) >= 0.95
        manifest = json.loads((tmp_path / "traj.csv.manifest.json").read_text())
        assert manifest["outputs"][str(out)] == hashlib.sha256(out.read_bytes()).hexdigest()

    def test_dephasing_reduces_stored_population(self, tmp_path):
        clean = tmp_path / "clean.csv"
        noisy = tmp_path / "noisy.csv"
        p1 = run_cli("simulate", "--omega0", "100", "--T", "10", "--out", str(clean))
        p2 = run_cli("simulate", "--omega0", "100", "--T", "10",
                     "--gamma", "gg=0.1", "--out", str(noisy))
        assert p1.returncode == 0 and p2.returncode == 0
        eta1 = json.loads(p1.stdout.strip())["eta"]
        eta2 = json.loads(p2.stdout.strip())["eta"]
        assert eta2 < eta1

    def test_reading_run(self, tmp_path):
        out = tmp_path / "read.csv"
        proc = run_cli("simulate", "--omega0", "100", "--T", "10",
                       "--reading", "--out", str(out))
        assert proc.returncode == 0
        payload = json.loads(proc.stdout.strip())
        assert payload["kind"] == "reading"
        assert payload["eta"] >= 0.95

    def test_missing_flag_usage_error(self):
        proc = run_cli("simulate", "--omega0", "100")
        assert proc.returncode == 2
        assert "usage" in proc.stderr.lower()

    def test_numerical_failure_exit_code(self, tmp_path):
        proc = run_cli("simulate", "--omega0", "100", "--T", "10",
                       "--dt", "0.5", "--out", str(tmp_path / "x.csv"))
        assert proc.returncode == 3
        assert "numerical" in proc.stderr.lower()

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "model.json"
        cfg.write_text(json.dumps({
            "pulse": {"shape": "sigmoid", "omega0": 100.0, "T": 5.0},
            "decay": {"gg": 0.05},
        }))
        proc = run_cli("simulate", "--config", str(cfg),
                       "--out", str(tmp_path / "t.csv"))
        assert proc.returncode == 0, proc.stderr

    def test_config_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "model.json"
        cfg.write_text(json.dumps({"pulse": {"shape": "sigmoid", "omega0": 1,
                                             "T": 1}, "typo": True}))
        proc = run_cli("simulate", "--config", str(cfg),
                       "--out", str(tmp_path / "t.csv"))
        assert proc.returncode == 2
        assert "typo" in proc.stderr

    def test_bad_gamma_channel(self, tmp_path):
        proc = run_cli("simulate", "--omega0", "10", "--T", "1",
                       "--gamma", "eg=0.1", "--out", str(tmp_path / "t.csv"))
        assert proc.returncode == 2


class TestSweepCommand:
    def test_small_sweep_and_manifest(self, tmp_path):
        out = tmp_path / "sweep.csv"
        proc = run_cli("sweep", "--kind", "writing", "--omega0", "20:80:2",
                       "--T", "2:8:2", "--workers", "1", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        header, rows = read_csv(out)
        assert header == ["omega0", "T", "efficiency"]
        assert len(rows) == 4
        assert all(float(r["efficiency"]) > 0.9 for r in rows)
        manifest = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
        assert manifest["outputs"][str(out)] == hashlib.sha256(out.read_bytes()).hexdigest()

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            proc = run_cli("sweep", "--omega0", "30:90:2", "--T", "1:4:2",
                           "--workers", "1", "--out", str(out))
            assert proc.returncode == 0
        assert a.read_bytes() == b.read_bytes()

    def test_env_worker_override(self, tmp_path, monkeypatch):
        import os
        out = tmp_path / "s.csv"
        env = dict(os.environ, LAMBDA_MEM_WORKERS="1")
        proc = subprocess.run(
            [sys.executable, "-m", "qmem.cli", "sweep", "--omega0", "30",
             "--T", "2", "--out", str(out)],
            capture_output=True, text=True, env=env)
        assert proc.returncode == 0, proc.stderr


class TestDetuningScanCommand:
    def test_scan_with_sidecar(self, tmp_path):
        out = tmp_path / "scan.csv"
        proc = run_cli("detuning-scan", "--omega0", "60", "--T", "2",
                       "--scan=-15:15:11", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        header, rows = read_csv(out)
        assert header == ["delta", "efficiency"]
        assert len(rows) == 11
        sidecar = json.loads((tmp_path / "scan.csv.hwhm.json").read_text())
        assert sidecar["hwhm"] > 0
        assert 0 < sidecar["peak"] <= 1.0 + 1e-7
        stdout = json.loads(proc.stdout.strip())
        assert stdout["hwhm"] == sidecar["hwhm"]


class TestAnalyticDecayCommand:
    def test_zero_decay_population(self, tmp_path):
        out = tmp_path / "decay.csv"
        proc = run_cli("analytic-decay", "--kappa", "0", "--omega0", "100",
                       "--T", "10", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        header, rows = read_csv(out)
        assert header == ["T", "kappa", "omega0", "final_population"]
        assert float(rows[0]["final_population"]) == pytest.approx(0.999)

    def test_multiple_kappas_grid(self, tmp_path):
        out = tmp_path / "decay.csv"
        proc = run_cli("analytic-decay", "--kappa", "0.01", "--kappa", "0.1",
                       "--omega0", "100", "--T", "1:100:5", "--out", str(out))
        assert proc.returncode == 0
        _, rows = read_csv(out)
        assert len(rows) == 10
        by_kappa = {}
        for r in rows:
            by_kappa.setdefault(r["kappa"], []).append(float(r["final_population"]))
        for pops in by_kappa.values():
            assert all(a > b for a, b in zip(pops, pops[1:]))


class TestMaterialCommand:
    def test_builtin_report(self, tmp_path):
        out = tmp_path / "report.json"
        proc = run_cli("material", "--n", "2", "--kappa-rel", "0.01",
                       "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        doc = json.loads(out.read_text())
        by_name = {d["name"]: d for d in doc["defects"]}
        assert by_name["Ti_VV"]["quality_factor"] == pytest.approx(2.33e8, rel=0.02)
        assert by_name["Ti_VV"]["omega0_rad_s"] == pytest.approx(16.0e9, rel=0.03)
        assert by_name["Mo_VV"]["T_s"] == pytest.approx(18.0e-9, rel=0.03)
        assert (tmp_path / "report_gcurve.csv").exists()
        assert (tmp_path / "report_qcurve.csv").exists()
        manifest = json.loads((tmp_path / "report.json.manifest.json").read_text())
        assert len(manifest["outputs"]) == 3

    def test_exclusive_cavity_flags(self, tmp_path):
        proc = run_cli("material", "--n", "2", "--kappa-rel", "0.01",
                       "--Q", "1e8", "--out", str(tmp_path / "r.json"))
        assert proc.returncode == 2


class TestBenchmarkCommand:
    def test_smoke(self, tmp_path):
        out = tmp_path / "bench.csv"
        proc = run_cli("benchmark-stirap", "--omega0", "1:25:3",
                       "--tau", "0.5:2:3", "--workers", "1", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        header, rows = read_csv(out)
        assert header == ["omega0", "tau", "prob_s"]
        assert len(rows) == 9


class TestAdiabaticFrameCommand:
    def test_omega_scan(self, tmp_path):
        out = tmp_path / "frame.csv"
        proc = run_cli("adiabatic-frame", "--omega-grid", "0.01:100:9",
                       "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        header, rows = read_csv(out)
        assert header == ["omega", "delta", "theta", "phi", "E0", "E_minus",
                          "E_plus", "dark_g_weight", "dark_s_weight"]
        weights = [float(r["dark_g_weight"]) for r in rows]
        assert all(a < b for a, b in zip(weights, weights[1:]))

    def test_delta_scan(self, tmp_path):
        out = tmp_path / "frame.csv"
        proc = run_cli("adiabatic-frame", "--delta-grid=-10:10:21",
                       "--omega", "1", "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        _, rows = read_csv(out)
        assert len(rows) == 21
        assert all(float(r["E0"]) == 0.0 for r in rows)

    def test_requires_exactly_one_grid(self, tmp_path):
        proc = run_cli("adiabatic-frame", "--out", str(tmp_path / "f.csv"))
        assert proc.returncode == 2


def test_main_callable_in_process(tmp_path):
    out = tmp_path / "t.csv"
    code = main(["simulate", "--omega0", "30", "--T", "2", "--out", str(out)])
    assert code == 0
    assert out.exists()
