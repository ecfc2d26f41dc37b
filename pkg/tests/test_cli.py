import json
import subprocess
import sys

import numpy as np
import pytest

from ssps.cli import main


def run(args):
    return main(args)


class TestConstruct:
    def test_csv_output(self, tmp_path):
        out = tmp_path / "s.csv"
        code = run(["construct", "--model", "sine", "--r", "10", "--samples", "2001",
                    "--format", "csv", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        meta = [ln for ln in lines if ln.startswith("#")]
        rows = [ln for ln in lines if not ln.startswith("#")]
        assert rows[0] == "t,x,dx"
        assert len(rows) == 2002  # header + 2001 samples
        first = rows[1].split(",")
        assert float(first[0]) == 0.0 and float(first[1]) == 0.0
        assert any("modulus = 0.889" in ln for ln in meta)

    def test_json_contains_modulus(self, capsys):
        code = run(["construct", "--model", "sine", "--r", "10", "--format", "json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["modulus"] == pytest.approx(0.889, abs=5e-4)
        assert doc["period"] == 2.0
        assert len(doc["t"]) == len(doc["x"]) == len(doc["dx"]) == 2001

    def test_no_solution_exit(self, tmp_path):
        assert run(["construct", "--model", "exp", "--r", "4.9",
                    "--out", str(tmp_path / "x.csv")]) == 2

    def test_usage_errors(self, tmp_path):
        assert run(["construct", "--model", "sine", "--r", "10", "--samples", "1"]) == 1
        assert run(["construct", "--model", "nope", "--r", "10"]) == 1
        assert run(["construct", "--model", "sine"]) == 1

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["construct", "--model", "exp", "--r", "7.5", "--out", str(a)])
        run(["construct", "--model", "exp", "--r", "7.5", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_plot_written(self, tmp_path):
        png = tmp_path / "s.png"
        code = run(["construct", "--model", "sine", "--r", "10", "--samples", "101",
                    "--out", str(tmp_path / "s.csv"), "--plot", str(png)])
        assert code == 0
        assert png.stat().st_size > 1000


class TestVerify:
    def test_pass_report(self, tmp_path):
        out = tmp_path / "rep.json"
        code = run(["verify", "--model", "exp", "--r", "10", "--tol", "1e-8",
                    "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["pass"] is True
        assert doc["residual_max"] <= 1e-8
        assert doc["antisymmetry_max"] <= 1e-10
        assert doc["period_defect_max"] <= 1e-10
        assert set(doc) == {
            "model", "r", "modulus", "offset_c", "period", "residual_max",
            "antisymmetry_max", "period_defect_max", "quad_order", "grid_points",
            "pass", "tool_version",
        }

    def test_no_solution(self):
        assert run(["verify", "--model", "sine", "--r", "4.0"]) == 2

    def test_tolerance_below_floor(self, tmp_path):
        out = tmp_path / "rep.json"
        code = run(["verify", "--model", "sine", "--r", "10", "--tol", "1e-15",
                    "--out", str(out)])
        assert code == 3
        assert json.loads(out.read_text())["pass"] is False

    def test_plot_written(self, tmp_path):
        png = tmp_path / "v.png"
        code = run(["verify", "--model", "sine", "--r", "10", "--grid", "301",
                    "--out", str(tmp_path / "r.json"), "--plot", str(png)])
        assert code == 0 and png.stat().st_size > 1000


class TestSweep:
    def test_monotone_modulus(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = run(["sweep", "--model", "exp", "--r-from", "5", "--r-to", "100",
                    "--points", "20", "--out", str(out)])
        assert code == 0
        rows = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
        assert rows[0] == "r,modulus,offset_c,amplitude,residual_max,modulus_complement"
        data = np.array([[float(v) for v in ln.split(",")] for ln in rows[1:]])
        assert data.shape == (20, 6)
        assert np.all(np.diff(data[:, 0]) > 0)  # r increasing
        assert np.all(np.diff(data[:, 1]) >= 0)  # modulus saturates at 1.0 in binary64
        assert np.all(np.diff(data[:, 5]) < 0)  # complement strictly decreasing throughout

    def test_monotone_modulus_below_saturation(self, tmp_path):
        # where the modulus is representable it must be strictly increasing itself
        out = tmp_path / "sweep.csv"
        assert run(["sweep", "--model", "exp", "--r-from", "5", "--r-to", "48",
                    "--points", "12", "--out", str(out)]) == 0
        rows = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
        data = np.array([[float(v) for v in ln.split(",")] for ln in rows[1:]])
        assert np.all(np.diff(data[:, 1]) > 0)

    def test_sine_offset_is_zero(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run(["sweep", "--model", "sine", "--r-from", "5", "--r-to", "30",
                    "--points", "6", "--out", str(out)]) == 0
        rows = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
        data = np.array([[float(v) for v in ln.split(",")] for ln in rows[1:]])
        assert np.all(data[:, 2] == 0.0)
        assert np.all(np.diff(data[:, 1]) > 0)

    def test_usage_errors(self):
        assert run(["sweep", "--model", "sine", "--r-from", "5", "--r-to", "5",
                    "--points", "1"]) == 1
        assert run(["sweep", "--model", "sine", "--r-from", "7", "--r-to", "6"]) == 1

    def test_below_threshold(self):
        assert run(["sweep", "--model", "exp", "--r-from", "4", "--r-to", "10"]) == 2


class TestSimulate:
    def test_tracks_closed_form(self, tmp_path):
        out = tmp_path / "sim.csv"
        code = run(["simulate", "--model", "sine", "--r", "10", "--horizon", "2",
                    "--step", "0.001", "--seed", "closed-form", "--out", str(out)])
        assert code == 0
        text = out.read_text().splitlines()
        trailer = [ln for ln in text if ln.startswith("# max_abs_err")]
        assert len(trailer) == 1
        assert float(trailer[0].split("=")[1]) <= 1e-4
        rows = [ln for ln in text if not ln.startswith("#")]
        assert rows[0] == "t,x_sim,x_closed,abs_err"
        assert len(rows) == 2002

    def test_zero_seed_equilibrium(self, tmp_path):
        out = tmp_path / "sim0.csv"
        code = run(["simulate", "--model", "sine", "--r", "10", "--horizon", "1",
                    "--step", "0.01", "--seed", "zero", "--out", str(out)])
        assert code == 0
        rows = [ln.split(",") for ln in out.read_text().splitlines()
                if not ln.startswith("#")][1:]
        assert all(float(row[1]) == 0.0 for row in rows)

    def test_misaligned_step(self):
        assert run(["simulate", "--model", "sine", "--r", "10", "--step", "0.0007"]) == 1

    def test_coarse_step_rejected(self):
        assert run(["simulate", "--model", "sine", "--r", "10", "--step", "0.25"]) == 1

    def test_no_solution_for_closed_form_seed(self):
        assert run(["simulate", "--model", "exp", "--r", "4.0", "--step", "0.01"]) == 2

    def test_zero_seed_ignores_threshold(self, tmp_path):
        # equilibrium seeding needs no closed form, so sub-threshold r is fine
        code = run(["simulate", "--model", "exp", "--r", "4.0", "--horizon", "1",
                    "--step", "0.01", "--seed", "zero", "--out", str(tmp_path / "z.csv")])
        assert code == 0

    def test_instability_exit(self):
        code = run(["simulate", "--model", "exp", "--r", "100", "--horizon", "6",
                    "--step", "0.125", "--seed", "closed-form"])
        assert code == 4

    def test_plot_written(self, tmp_path):
        png = tmp_path / "sim.png"
        code = run(["simulate", "--model", "sine", "--r", "10", "--horizon", "1",
                    "--step", "0.01", "--out", str(tmp_path / "sim.csv"),
                    "--plot", str(png)])
        assert code == 0 and png.stat().st_size > 1000


class TestExitCodeContract:
    def test_all_codes_reachable(self, tmp_path):
        reached = {
            0: run(["construct", "--model", "sine", "--r", "10", "--samples", "11",
                    "--out", str(tmp_path / "c.csv")]),
            1: run(["construct", "--model", "sine", "--r", "10", "--samples", "0"]),
            2: run(["construct", "--model", "sine", "--r", "4.0"]),
            3: run(["verify", "--model", "sine", "--r", "10", "--tol", "1e-15",
                    "--out", str(tmp_path / "r.json")]),
            4: run(["simulate", "--model", "exp", "--r", "100", "--step", "0.125"]),
        }
        assert all(code == want for want, code in reached.items())


def test_console_invocation_via_module(tmp_path):
    out = tmp_path / "s.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "ssps", "construct", "--model", "sine", "--r", "10",
         "--samples", "5", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert out.exists()
    proc = subprocess.run(
        [sys.executable, "-m", "ssps", "construct", "--model", "exp", "--r", "4"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert "no SSPS exists" in proc.stderr
