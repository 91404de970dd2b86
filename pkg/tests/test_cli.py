"""CLI surface: commands, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from conftest import problem_path


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "threedescent", *args],
                          capture_output=True, text=True, timeout=1200)
    return proc


class TestCommands:
    def test_invariants(self):
        p = run_cli("invariants", problem_path("cubic_126a3_F1.json"))
        assert p.returncode == 0
        out = json.loads(p.stdout)
        assert out["invariants"]["disc"] == str(-(2 ** 6) * 3 ** 6 * 7 ** 3)

    def test_gamma(self):
        p = run_cli("gamma", problem_path("gamma_n4.json"))
        assert p.returncode == 0
        out = json.loads(p.stdout)
        assert out["gamma"] == 256 and out["partial_gamma"] == 16
        assert out["w1_kernel"] == 2

    def test_localsol(self):
        p = run_cli("localsol", problem_path("cubic_126a3_F1.json"),
                    "2", "7", "5", "real")
        assert p.returncode == 0
        out = json.loads(p.stdout)["soluble"]
        assert out == {"2": False, "7": False, "5": True, "real": True}

    def test_trivialize_split(self):
        p = run_cli("trivialize", problem_path("mat3_conjugate.json"))
        assert p.returncode == 0
        out = json.loads(p.stdout)
        assert out["status"] == "split" and out["verified"] is True

    def test_maxorder(self):
        p = run_cli("maxorder", problem_path("mat3_conjugate.json"))
        assert p.returncode == 0
        out = json.loads(p.stdout)
        assert out["max_order_discriminant"] == "1"

    def test_twodescent(self):
        p = run_cli("twodescent", problem_path("twodescent_split.json"))
        assert p.returncode == 0
        assert json.loads(p.stdout)["conic_in_pencil"] is True

    def test_missing_file_is_io_error(self):
        p = run_cli("invariants", "/nonexistent.json")
        assert p.returncode == 1

    def test_determinism(self):
        a = run_cli("gamma", problem_path("gamma_n4.json"))
        b = run_cli("gamma", problem_path("gamma_n4.json"))
        assert a.stdout == b.stdout


@pytest.mark.slow
class TestCubicCommand:
    def test_681b1_with_overrides(self, tmp_path):
        p = run_cli("cubic", problem_path("681b1.json"),
                    "--override-basis", problem_path("681b1_overrides.json"),
                    "--override-triv", problem_path("681b1_overrides.json"),
                    "--emit-stages", str(tmp_path))
        assert p.returncode == 0
        out = json.loads(p.stdout)
        assert out["cubic"]["coeffs"] == \
            ["3", "-13", "4", "2", "1", "0", "-1", "-5", "-1", "1"]
        assert (tmp_path / "cubic.json").exists()
        # stage outputs re-ingest: invariants of the emitted cubic agree
        p2 = run_cli("invariants", str(tmp_path / "cubic.json"))
        assert p2.returncode == 0
        assert json.loads(p2.stdout)["coeffs"] == out["cubic"]["coeffs"]
        # ... and the emitted structure constants trivialize on their own
        p3 = run_cli("trivialize", str(tmp_path / "structure_constants.json"))
        assert p3.returncode == 0
        assert json.loads(p3.stdout)["verified"] is True

    def test_1722f1_nonsplit_exit3(self):
        p = run_cli("cubic", problem_path("1722f1.json"))
        assert p.returncode == 3
        out = json.loads(p.stdout)
        assert out["trivialization"]["status"] == "nonsplit"
        assert out["trivialization"]["max_order_discriminant"] == "3^6 * 7^6"
