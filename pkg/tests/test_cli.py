"""Command-line surface: output formats, exit codes, determinism, caching."""

import json
import shutil
import subprocess

import pytest

from pfes import caching, cli, efun, qcore


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    def test_pf_stringy_plain(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "pf-stringy", "--n", "5",
                               "--k", "1", "--format", "plain")
        assert code == 0
        assert out == "q^6+q^5+2q^4+2q^3+2q^2+q+1\n"

    def test_grassmannian_latex(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "grassmannian", "--k", "2",
                               "--n", "4", "--format", "latex")
        assert code == 0
        assert out == "(uv)^4+(uv)^3+2(uv)^2+uv+1\n"

    def test_discrepancy_value(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "discrepancy", "--j", "3",
                               "--n", "7", "--k", "2")
        assert code == 0
        assert out == "4\n"

    def test_json_schema_and_roundtrip(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "f", "--k", "1", "--i", "2",
                               "--n", "5", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["version"]
        assert report["command"] == "compute"
        assert report["parameters"] == {"i": 2, "k": 1, "n": 5}
        assert report["results"][0]["poly"] == {"var": "q",
                                                "coeffs": [1, 1, 2, 2, 1, 1]}
        assert cli.render_report(report) == out

    def test_missing_parameter_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "compute", "grassmannian", "--k", "2")
        assert code == 2
        assert "requires --n" in err

    def test_range_error_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "compute", "grassmannian", "--k", "9",
                               "--n", "4")
        assert code == 2
        assert "error" in err

    def test_unknown_target_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "compute", "nonsense", "--n", "5")
        assert code == 2


class TestVerify:
    def test_hj_grid_counts_and_exit(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "hj", "--max-b", "8")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == "suite hj: 45 points, 45 passed, 0 failed, 0 skipped"
        assert all(" PASS" in line for line in lines[:-1])

    def test_even_anomaly_reports_expected_nonpolynomial(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "even-anomaly")
        assert code == 0
        assert "not a polynomial" in out
        assert "PASS" in out

    def test_main_main_small(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "main-main", "--max-n", "9")
        assert code == 0
        assert "0 failed" in out

    def test_parallel_and_serial_reports_identical(self, capsys):
        _, serial, _ = run_cli(capsys, "verify", "relg", "--max-r", "4")
        _, parallel, _ = run_cli(capsys, "verify", "relg", "--max-r", "4",
                                 "--parallel")
        assert serial == parallel

    def test_parallel_json_identical_and_untimed(self, capsys):
        _, serial, _ = run_cli(capsys, "verify", "oddeven", "--max-r", "3",
                               "--format", "json")
        _, parallel, _ = run_cli(capsys, "verify", "oddeven", "--max-r", "3",
                                 "--parallel", "--format", "json")
        assert serial == parallel
        assert json.loads(serial)["timing_ms"] is None

    def test_timing_goes_to_stderr(self, capsys):
        _, out, err = run_cli(capsys, "verify", "sum", "--max-r", "3")
        assert "completed in" in err
        assert "completed in" not in out

    def test_phi_suite_skips_degenerate_points(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "phi", "--max-n", "5")
        assert code == 0
        assert " SKIP" in out

    def test_failure_exit_code(self, capsys, monkeypatch):
        # force a mismatch to exercise the failure path
        monkeypatch.setitem(
            cli.SUITES, "hj",
            cli.Suite(cli.SUITES["hj"].grid,
                      lambda point: [cli._row("hj(broken)", False)],
                      cli.SUITES["hj"].defaults))
        code, out, _ = run_cli(capsys, "verify", "hj", "--max-b", "0")
        assert code == 1
        assert "FAIL" in out


class TestOracle:
    def test_isotropic_match(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "isotropic", "--p", "2",
                               "--n", "5", "--dim", "2", "--alpha-rank", "2")
        assert code == 0
        assert out == "count=91 symbolic=91 MATCH\n"

    def test_rank_stratum_match(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "rank-stratum", "--p", "2",
                               "--n", "4", "--rank", "4")
        assert code == 0
        assert out == "count=28 symbolic=28 MATCH\n"

    def test_cut_stratum_match(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "cut-stratum", "--p", "2",
                               "--n", "5", "--rank", "2", "--alpha-rank", "4")
        assert code == 0
        assert "MATCH" in out

    def test_guard_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "rank-stratum", "--p", "3",
                               "--n", "8", "--rank", "2")
        assert code == 3
        assert "guard" in err

    def test_mismatch_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "count_rank_stratum",
                            lambda *a, **kw: 12345)
        code, out, _ = run_cli(capsys, "oracle", "rank-stratum", "--p", "2",
                               "--n", "4", "--rank", "4")
        assert code == 1
        assert "MISMATCH" in out

    def test_bad_prime_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "oracle", "rank-stratum", "--p", "4",
                             "--n", "4", "--rank", "2")
        assert code == 2


class TestCacheDir:
    def test_cache_roundtrip_is_semantically_invisible(self, capsys, tmp_path):
        cache = str(tmp_path / "cache")
        code, first, _ = run_cli(capsys, "--cache-dir", cache, "compute",
                                 "e-skew", "--i", "4")
        assert code == 0
        assert (tmp_path / "cache" / caching.CACHE_FILENAME).exists()
        qcore._GAUSS_CACHE.clear()
        efun._NONDEG_CACHE.clear()
        code, second, _ = run_cli(capsys, "--cache-dir", cache, "compute",
                                  "e-skew", "--i", "4")
        assert code == 0 and second == first
        qcore._GAUSS_CACHE.clear()
        efun._NONDEG_CACHE.clear()
        code, third, _ = run_cli(capsys, "compute", "e-skew", "--i", "4")
        assert third == first

    def test_corrupt_cache_warns_and_recomputes(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        cache.mkdir()
        (cache / caching.CACHE_FILENAME).write_text("{not json")
        code, out, err = run_cli(capsys, "--cache-dir", str(cache), "compute",
                                 "e-skew", "--i", "2")
        assert code == 0
        assert out == "q^5-q^2\n"
        assert "ignoring corrupt cache" in err

    def test_wrong_version_rejected(self, tmp_path, capsys):
        cache = tmp_path / "cache"
        cache.mkdir()
        (cache / caching.CACHE_FILENAME).write_text('{"version": 99}')
        assert not caching.load_cache_dir(str(cache))
        _, _, err = run_cli(capsys, "--cache-dir", str(cache), "compute",
                            "e-skew", "--i", "2")
        assert "unsupported" in err or "ignoring" in err

    def test_env_var_cache_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("PFES_CACHE_DIR", str(tmp_path / "envcache"))
        code, _, _ = run_cli(capsys, "compute", "e-skew", "--i", "2")
        assert code == 0
        assert (tmp_path / "envcache" / caching.CACHE_FILENAME).exists()


class TestConsoleScript:
    def test_entry_point_installed(self):
        exe = shutil.which("pfes")
        if exe is None:
            pytest.skip("console script not on PATH")
        proc = subprocess.run([exe, "compute", "grassmannian", "--k", "2",
                               "--n", "4"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.strip() == "q^4+q^3+2q^2+q+1"
