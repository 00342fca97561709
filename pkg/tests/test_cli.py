"""CLI flag handling, config files and exit codes."""

import json
import subprocess
import sys

from idjc.cli import main


def run_cli(*args):
    return main(list(args))


class TestRunOk:
    def test_flags_only(self, tmp_path):
        out = tmp_path / "purity.csv"
        code = run_cli("run", "--scenario", "purity-mixture", "--alpha", "5",
                       "--tau-max", "3.1416", "--tau-steps", "60",
                       "--out", str(out))
        assert code == 0
        assert out.exists()
        assert out.read_text().splitlines()[0] == "tau,zeta_numeric,zeta_closed"

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "scenario": "inversion-cat", "alpha": 3.0, "parity_r": 1,
            "tau_max": 3.141592653589793, "tau_steps": 31,
            "output_path": str(tmp_path / "w.csv"),
        }))
        assert run_cli("run", "--config", str(cfg)) == 0
        assert (tmp_path / "w.csv").exists()

    def test_flag_overrides_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "scenario": "purity-mixture", "alpha": 5.0, "tau_steps": 10,
            "output_path": str(tmp_path / "ignored.csv"),
        }))
        out = tmp_path / "actual.csv"
        assert run_cli("run", "--config", str(cfg), "--tau-steps", "12",
                       "--out", str(out)) == 0
        assert len(out.read_text().splitlines()) == 13  # header + 12 rows

    def test_self_check_mode(self, tmp_path):
        assert run_cli("run", "--scenario", "purity-mixture", "--alpha", "4",
                       "--tau-steps", "25", "--self-check",
                       "--out", str(tmp_path / "sc.csv")) == 0

    def test_json_format(self, tmp_path):
        out = tmp_path / "w.json"
        assert run_cli("run", "--scenario", "inversion-cat", "--tau-steps", "11",
                       "--format", "json", "--out", str(out)) == 0
        doc = json.loads(out.read_text())
        assert "metadata" in doc and "columns" in doc


class TestExitCodes:
    def test_config_error_is_2(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"scenario": "purity-mixture", "alpa": 5.0}))
        assert run_cli("run", "--config", str(cfg)) == 2

    def test_invalid_field_is_2(self, tmp_path):
        assert run_cli("run", "--scenario", "purity-mixture",
                       "--tau-steps", "1", "--out", str(tmp_path / "x.csv")) == 2

    def test_missing_scenario_is_2(self, tmp_path):
        assert run_cli("run", "--out", str(tmp_path / "x.csv")) == 2

    def test_numeric_precondition_is_3(self, tmp_path):
        # dim far too small for alpha=5 coherent support
        assert run_cli("run", "--scenario", "purity-mixture", "--alpha", "5",
                       "--dim", "30", "--out", str(tmp_path / "x.csv")) == 3

    def test_io_error_is_4(self, tmp_path):
        missing_dir = tmp_path / "no" / "such" / "dir" / "x.csv"
        assert run_cli("run", "--scenario", "purity-mixture", "--tau-steps", "5",
                       "--out", str(missing_dir)) == 4

    def test_unreadable_config_is_4(self, tmp_path):
        assert run_cli("run", "--config", str(tmp_path / "none.json")) == 4

    def test_malformed_config_is_2(self, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text("{not json")
        assert run_cli("run", "--config", str(cfg)) == 2


class TestConsoleEntryPoint:
    def test_module_invocation(self, tmp_path):
        out = tmp_path / "cli.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "idjc.cli", "run", "--scenario", "purity-mixture",
             "--tau-steps", "8", "--out", str(out)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert str(out) in proc.stdout
        assert out.exists()
