# =============================================================================
# Apery Congruences - Command-Line Integration Tests
# =============================================================================
# Tests for app.main(): subcommands, config files, exit codes and logging.
#
# Test Structure:
#   - TestArgv: negative-value joining before argparse
#   - TestRepAndChecks: the rep and checks subcommands
#   - TestVerify: verify runs, --config files and flag overrides
#   - TestScanAndIdentity: scan and identity subcommands
#   - TestExitCodes: 1 / 2 / 3 on failures, usage errors, counterexamples
#   - TestLogging: JSON log file
#   - TestConfigCommand: showing, setting and resetting the user defaults
#
# Testing Strategy:
#   - main() is called in-process with an argv list
#   - stdout / stderr are captured with capsys
# =============================================================================

import json

import pytest

from apery_congruences.app import (
    _join_negative_values,
    build_parser,
    main,
    sweep_config_from_args,
)
from apery_congruences.config import Config
from apery_congruences.controllers import congruences
from apery_congruences.utils.exact_arith import Residue


class TestArgv:
    """Tests for _join_negative_values()."""

    def test_negative_ranges_joined(self):
        argv = ["verify", "--x", "-5:5", "--eps", "-1", "--primes", "3:10"]
        assert _join_negative_values(argv) == [
            "verify",
            "--x=-5:5",
            "--eps=-1",
            "--primes",
            "3:10",
        ]

    def test_existing_equals_untouched(self):
        argv = ["verify", "--x=-5:5", "-3"]
        assert _join_negative_values(argv) == argv

    def test_short_flags_untouched(self):
        assert _join_negative_values(["-v", "-3"]) == ["-v", "-3"]


class TestRepAndChecks:
    """Tests for the rep and checks subcommands."""

    def test_rep(self, capsys):
        assert main(["rep", "--prime", "41"]) == 0
        assert capsys.readouterr().out.strip() == "3 4"

    def test_rep_not_representable_with_brute_force(self, capsys):
        assert main(["rep", "--prime", "5", "--brute"]) == 0
        assert capsys.readouterr().out.splitlines() == ["none", "brute force: none"]

    def test_rep_of_composite(self, capsys):
        assert main(["rep", "--prime", "9"]) == 2
        assert "error" in capsys.readouterr().err

    def test_checks(self, capsys):
        assert main(["checks"]) == 0
        out = capsys.readouterr().out
        assert "thm3 (p, x; theorem, fast)" in out
        assert "conj44 (n, r, x, m, eps; conjecture)" in out
        assert "schmidt_quotient (r, n, eps)" in out

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert "Apery Congruences" in capsys.readouterr().out


class TestVerify:
    """Tests for the verify subcommand."""

    def test_verify_with_negative_x(self, out_dir, read_jsonl, capsys):
        out = out_dir / "thm_main_ii.jsonl"
        code = main(
            [
                "verify",
                "--check",
                "thm_main_ii",
                "--primes",
                "3:30",
                "--x",
                "-5:5",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        assert len(read_jsonl(out)) == 9 * 11
        assert "99 tuples, 99 pass" in capsys.readouterr().out
        assert (out_dir / "thm_main_ii.jsonl.summary.csv").exists()

    def test_verify_both_paths(self, capsys):
        code = main(
            ["verify", "--check", "thm3", "--primes", "5:60", "--path", "both"]
        )
        assert code == 0
        assert "0 divergences" in capsys.readouterr().out

    def test_config_file_with_flag_override(self, tmp_path, out_dir, read_jsonl):
        config = tmp_path / "run.json"
        config.write_text(
            json.dumps({"check": "thm2", "primes": "3:20", "x": "-2:2"}),
            encoding="utf-8",
        )
        out = out_dir / "thm2.jsonl"
        code = main(["verify", "--config", str(config), "--x", "1", "--out", str(out)])
        assert code == 0
        lines = read_jsonl(out)
        assert len(lines) == 7
        assert {line["params"]["x"] for line in lines} == {"1"}

    def test_checkpoint_resume_through_cli(self, out_dir, read_jsonl):
        out = out_dir / "schmidt.jsonl"
        argv = [
            "verify",
            "--check",
            "schmidt",
            "--n",
            "1:12",
            "--r",
            "2,3",
            "--x",
            "-1,2",
            "--out",
            str(out),
            "--checkpoint",
            str(out_dir / "schmidt.ckpt"),
        ]
        assert main(argv) == 0
        first = out.read_text(encoding="utf-8")
        assert main(argv) == 0
        assert out.read_text(encoding="utf-8") == first
        assert len(read_jsonl(out)) == 12 * 2 * 2 * 2

    def test_csv_format(self, out_dir):
        out = out_dir / "thm43.csv"
        code = main(
            [
                "verify",
                "--check",
                "thm43",
                "--n",
                "1:8",
                "--a",
                "0:2",
                "--variant",
                "kk1",
                "--format",
                "csv",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        assert out.read_text(encoding="utf-8-sig").startswith("check,params,")


class TestScanAndIdentity:
    """Tests for the scan and identity subcommands."""

    def test_scan_conjecture_over_primes_uses_fast_path(self, out_dir, read_jsonl):
        out = out_dir / "conj12.jsonl"
        argv = ["scan", "--conjecture", "1.2", "--primes", "3:60", "--out", str(out)]
        assert main(argv) == 0
        lines = read_jsonl(out)
        assert lines[0]["path"] == "exact"
        assert "fast_unavailable" in lines[0]["extra"]["flags"]
        assert {line["path"] for line in lines[1:]} == {"fast"}
        assert all(line["extra"]["kind"] == "conjecture" for line in lines)

    def test_scan_conjecture_over_n(self, capsys):
        code = main(
            ["scan", "--conjecture", "4.4", "--n", "1:8", "--m", "1:2", "--x", "1"]
        )
        assert code == 0
        assert "0 counterexamples" in capsys.readouterr().out

    def test_identity_suite(self, out_dir, read_jsonl):
        out = out_dir / "alt.jsonl"
        code = main(
            ["identity", "--suite", "alt_sum", "--n", "1:6", "--out", str(out)]
        )
        assert code == 0
        assert len(read_jsonl(out)) == sum(n + 1 for n in range(1, 7))

    def test_identity_with_negative_bounds(self, capsys):
        code = main(
            [
                "identity",
                "--suite",
                "schmidt_quotient",
                "--r",
                "2:2",
                "--n",
                "1:5",
                "--eps",
                "-1:-1",
            ]
        )
        assert code == 0
        assert "5 tuples, 5 pass" in capsys.readouterr().out


class TestExitCodes:
    """Exit codes for failures and errors."""

    @pytest.mark.parametrize(
        "argv",
        [
            ["verify", "--check", "thm99", "--n", "1:3"],
            ["verify", "--check", "sun_apery", "--n", "1:3", "--path", "fast"],
            ["verify", "--check", "thm2", "--primes", "3:10", "--checkpoint", "c"],
            ["verify", "--n", "1:3"],
            ["identity", "--suite", "nonexistent"],
            ["identity", "--suite", "half_integer", "--k", "0:2"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_range(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--check", "thm2", "--primes", "3-10"])
        assert exc.value.code == 2

    def test_bad_config_file(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text("[1, 2]", encoding="utf-8")
        assert main(["verify", "--config", str(config)]) == 2
        config.write_text("{broken", encoding="utf-8")
        assert main(["verify", "--config", str(config)]) == 2

    def test_missing_config_file(self, tmp_path):
        assert main(["verify", "--config", str(tmp_path / "missing.json")]) == 2

    def test_divergence_exits_one(self, monkeypatch, capsys):
        monkeypatch.setattr(
            congruences, "thm3_rational_sum_fast", lambda p, x: Residue.of(1, p * p)
        )
        code = main(["verify", "--check", "thm3", "--primes", "5:20", "--path", "both"])
        assert code == 1
        assert "first failure" in capsys.readouterr().out

    def test_counterexample_exits_three(self, monkeypatch):
        monkeypatch.setattr(congruences, "_rep_target", lambda p: (1, {"rep": None}))
        assert main(["scan", "--conjecture", "1.2", "--primes", "5:30"]) == 3


class TestLogging:
    """The JSON log file."""

    def test_log_file_lines_are_json(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        argv = ["--log-file", str(log_file), "verify", "--check", "thm2"]
        assert main(argv + ["--primes", "3:10"]) == 0
        records = [
            json.loads(line)
            for line in log_file.read_text(encoding="utf-8").splitlines()
        ]
        messages = [r["message"] for r in records]
        assert any(m.startswith("Starting thm2") for m in messages)
        assert any(m.startswith("Finished thm2") for m in messages)
        assert all("levelname" in r for r in records)


class TestConfigCommand:
    """Tests for the config subcommand and the stored user defaults."""

    def _stored(self, config):
        path = config.get_config_dir() / "config.json"
        return json.loads(path.read_text(encoding="utf-8"))

    def test_show_defaults(self, isolated_config, capsys):
        assert main(["config"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == f"config dir: {isolated_config.get_config_dir()}"
        assert "  jobs = 1" in out
        assert "  chunk_size = 16" in out
        assert "  lagrange_samples = 10" in out

    def test_set_is_saved_and_reloaded(self, isolated_config):
        argv = ["config", "--set", "jobs=3", "--set", "prime-power-limit=500"]
        assert main(argv) == 0
        stored = self._stored(isolated_config)
        assert stored["jobs"] == 3
        assert stored["prime_power_limit"] == 500

        Config.reset_instance()
        reloaded = Config.get_instance()
        assert reloaded.jobs == 3
        assert reloaded.prime_power_limit == 500

    def test_stored_defaults_reach_sweeps(self):
        argv = ["config", "--set", "jobs=3", "--set", "chunk_size=4"]
        assert main(argv + ["--set", "prime_power_limit=900"]) == 0
        argv = ["verify", "--check", "thm2", "--primes", "3:10"]
        args = build_parser().parse_args(argv)
        config = sweep_config_from_args(args)
        assert config.jobs == 3
        assert config.chunk_size == 4
        assert config.prime_power_limit == 900

    def test_flags_still_override_stored_defaults(self):
        assert main(["config", "--set", "jobs=3"]) == 0
        args = build_parser().parse_args(
            ["verify", "--check", "thm2", "--primes", "3:10", "--jobs", "2"]
        )
        assert sweep_config_from_args(args).jobs == 2

    def test_reset(self, isolated_config):
        assert main(["config", "--set", "lagrange_seed=7"]) == 0
        assert main(["config", "--reset"]) == 0
        assert self._stored(isolated_config)["lagrange_seed"] == 20100
        assert isolated_config.lagrange_seed == 20100

    def test_log_file_set_and_cleared(self, isolated_config, tmp_path):
        custom = tmp_path / "custom.log"
        assert main(["config", "--set", f"log_file={custom}"]) == 0
        assert isolated_config.log_file == custom
        assert main(["config", "--set", "log_file="]) == 0
        assert self._stored(isolated_config)["log_file"] is None
        assert isolated_config.log_file.parent == isolated_config.get_config_dir()

    @pytest.mark.parametrize(
        "setting", ["jobs=0", "jobs=many", "chunk_size=-1", "colour=red", "jobs"]
    )
    def test_invalid_setting_exits_two_and_saves_nothing(
        self, isolated_config, setting, capsys
    ):
        assert main(["config", "--set", "chunk_size=8", "--set", setting]) == 2
        assert "error:" in capsys.readouterr().err
        assert self._stored(isolated_config)["chunk_size"] == 16
