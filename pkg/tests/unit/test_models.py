# =============================================================================
# Apery Congruences - Model Unit Tests
# =============================================================================
# Tests for the pydantic models in models/report.py and models/sweep.py.
#
# Test Structure:
#   - TestEncoding: lossless JSON encoding of exact values
#   - TestCongruenceReport: canonical residues, outcome, records
#   - TestSweepConfig: validation and normalisation of sweep settings
#   - TestIdentityConfig: bound validation
#   - TestRunRecord: JSONL round trip and outcome recovery
#   - TestSweepSummary: counting and exit codes
# =============================================================================

from fractions import Fraction
from pathlib import Path

import pytest
from pydantic import ValidationError

from apery_congruences.models.polynomial import IntPolynomial
from apery_congruences.models.report import (
    CheckKind,
    CongruenceReport,
    Outcome,
    PathTag,
    encode_value,
)
from apery_congruences.models.sweep import (
    IdentityConfig,
    PathChoice,
    RunRecord,
    SweepConfig,
    SweepSummary,
    outcome_of,
    record_key,
)


def make_record(check: str, passed, flags=None) -> RunRecord:
    data = {
        "check": check,
        "params": {"p": "5"},
        "modulus": "25",
        "lhs": "1",
        "rhs": "1" if passed else "2",
        "pass": passed,
        "path": "exact",
        "extra": {"flags": flags} if flags else {},
    }
    return RunRecord(
        key=record_key(check, data["params"]), record=data, outcome=outcome_of(data)
    )


class TestEncoding:
    """Tests for encode_value()."""

    def test_big_integers_become_strings(self):
        assert encode_value(10**40) == "1" + "0" * 40
        assert encode_value(-3) == "-3"

    def test_fractions_and_polynomials(self):
        assert encode_value(Fraction(-2, 6)) == "-1/3"
        assert encode_value(Fraction(4, 2)) == "2"
        assert encode_value(IntPolynomial.from_coeffs([1, 36, 36])) == ["1", "36", "36"]

    def test_passthrough(self):
        assert encode_value(True) is True
        assert encode_value(None) is None
        assert encode_value("kk1") == "kk1"
        assert encode_value(PathTag.FAST) == "fast"
        assert encode_value({"rep": {"x": 1}}) == {"rep": {"x": "1"}}


class TestCongruenceReport:
    """Tests for CongruenceReport."""

    def test_compare_reduces_both_sides(self):
        report = CongruenceReport.compare("demo", {"p": 5}, 25, -1, 49)
        assert (report.lhs, report.rhs) == (24, 24)
        assert report.passed
        assert report.outcome is Outcome.PASS

    def test_non_canonical_rejected(self):
        with pytest.raises(ValidationError):
            CongruenceReport(
                check="demo", params={}, modulus=5, lhs=7, rhs=2, passed=True
            )

    def test_inconsistent_pass_flag_rejected(self):
        with pytest.raises(ValidationError):
            CongruenceReport(
                check="demo", params={}, modulus=5, lhs=1, rhs=2, passed=True
            )

    def test_failed_theorem_is_fail(self):
        report = CongruenceReport.compare("demo", {"n": 3}, 3, 1, 0)
        assert report.outcome is Outcome.FAIL

    def test_failed_conjecture_is_counterexample(self):
        report = CongruenceReport.compare(
            "demo", {"p": 7}, 49, 1, 0, kind=CheckKind.CONJECTURE
        )
        assert report.outcome is Outcome.COUNTEREXAMPLE
        assert report.to_record()["extra"]["flags"] == ["COUNTEREXAMPLE"]

    def test_skipped(self):
        report = CongruenceReport.skipped("demo", {"p": 3}, "excluded_zero_symbol")
        record = report.to_record()
        assert record["pass"] is None
        assert record["extra"]["flags"] == ["excluded_zero_symbol"]
        assert outcome_of(record) is Outcome.SKIP

    def test_record_fields(self):
        report = CongruenceReport.compare(
            "demo", {"p": 5, "x": -2}, 25, 6, 6, path=PathTag.FAST, L=1
        )
        record = report.to_record()
        assert list(record) == [
            "check",
            "params",
            "modulus",
            "lhs",
            "rhs",
            "pass",
            "path",
            "extra",
        ]
        assert record["params"] == {"p": "5", "x": "-2"}
        assert record["path"] == "fast"
        assert record["extra"] == {"L": "1"}


class TestSweepConfig:
    """Tests for SweepConfig validation."""

    def test_defaults(self):
        config = SweepConfig(check="thm2", primes=(3, 100))
        assert config.path is PathChoice.EXACT
        assert config.eps == [1, -1]
        assert config.jobs == 1
        assert config.summary_path is None

    def test_lists_sorted_and_deduplicated(self):
        config = SweepConfig(check="thm2", primes=(3, 10), x=[3, -1, 3, 0])
        assert config.x == [-1, 0, 3]

    def test_eps_descending(self):
        config = SweepConfig(check="schmidt", n=(1, 5), eps=[-1, 1, 1])
        assert config.eps == [1, -1]

    def test_bad_eps(self):
        with pytest.raises(ValidationError):
            SweepConfig(check="schmidt", n=(1, 5), eps=[2])

    def test_unknown_variant(self):
        with pytest.raises(ValidationError):
            SweepConfig(check="thm43", n=(1, 5), variant=["odd"])

    def test_empty_list(self):
        with pytest.raises(ValidationError):
            SweepConfig(check="thm2", primes=(3, 10), x=[])

    def test_empty_range(self):
        with pytest.raises(ValidationError):
            SweepConfig(check="thm2", primes=(10, 3))

    def test_axis_required(self):
        with pytest.raises(ValidationError):
            SweepConfig(check="thm2")

    def test_prime_range_without_primes(self):
        with pytest.raises(ValidationError):
            SweepConfig(check="thm2", primes=(-5, 1))

    def test_checkpoint_needs_output(self, tmp_path):
        with pytest.raises(ValidationError):
            SweepConfig(check="thm2", primes=(3, 10), checkpoint=tmp_path / "ck")

    def test_summary_path_follows_output(self, tmp_path):
        config = SweepConfig(check="thm2", primes=(3, 10), out=tmp_path / "r.jsonl")
        assert config.summary_path == tmp_path / "r.jsonl.summary.csv"

    def test_echo_is_json_ready(self, tmp_path):
        config = SweepConfig(check="thm2", primes=(3, 10), out=tmp_path / "r.jsonl")
        echo = config.echo()
        assert echo["check"] == "thm2"
        assert echo["primes"] == [3, 10]
        assert echo["out"] == str(tmp_path / "r.jsonl")

    def test_frozen(self):
        config = SweepConfig(check="thm2", primes=(3, 10))
        with pytest.raises(ValidationError):
            config.jobs = 4


class TestIdentityConfig:
    """Tests for IdentityConfig."""

    def test_bounds(self):
        config = IdentityConfig(suite="amkr", bounds={"r": (2, 3)})
        assert config.bounds == {"r": (2, 3)}
        assert config.samples == 10

    def test_empty_bound_rejected(self):
        with pytest.raises(ValidationError):
            IdentityConfig(suite="amkr", bounds={"m": (5, 1)})

    def test_samples_positive(self):
        with pytest.raises(ValidationError):
            IdentityConfig(suite="lagrange", samples=0)


class TestRunRecord:
    """Tests for RunRecord and record_key()."""

    def test_key(self):
        assert record_key("thm_main_ii", {"p": 5, "x": -2}) == "thm_main_ii|p=5,x=-2"
        assert record_key("c", {"p": "5"}) == record_key("c", {"p": 5})

    def test_json_round_trip_keeps_timestamp(self):
        record = make_record("demo", True).model_copy(
            update={"timestamp": "2024-01-01T00:00:00+00:00"}
        )
        line = record.to_json()
        assert "timestamp" in line
        assert RunRecord.from_json(line) == record

    def test_timestamp_omitted_by_default(self):
        assert "timestamp" not in make_record("demo", True).to_json()

    def test_outcome_recovery(self):
        assert make_record("d", True).outcome is Outcome.PASS
        assert make_record("d", False).outcome is Outcome.FAIL
        assert make_record("d", None).outcome is Outcome.SKIP
        assert make_record("d", False, ["COUNTEREXAMPLE"]).outcome is (
            Outcome.COUNTEREXAMPLE
        )
        assert make_record("d", False, ["PATH_DIVERGENCE"]).outcome is (
            Outcome.PATH_DIVERGENCE
        )


class TestSweepSummary:
    """Tests for SweepSummary."""

    def test_counts_and_first_failure(self):
        summary = SweepSummary(check="demo")
        for record in (
            make_record("demo", True),
            make_record("demo", None),
            make_record("demo", False),
            make_record("demo", False),
        ):
            summary.add(record)
        assert summary.tuples == 4
        assert (summary.passes, summary.skips, summary.fails) == (1, 1, 2)
        assert summary.first_failure["pass"] is False
        assert summary.exit_code == 1

    def test_exit_code_for_counterexamples(self):
        summary = SweepSummary(check="conj12")
        summary.add(make_record("conj12", False, ["COUNTEREXAMPLE"]))
        assert summary.exit_code == 3
        summary.add(make_record("conj12", False, ["PATH_DIVERGENCE"]))
        assert summary.exit_code == 1

    def test_clean_run_exits_zero(self):
        summary = SweepSummary(check="demo")
        summary.add(make_record("demo", True))
        assert summary.exit_code == 0

    def test_csv_row_folds_failures(self):
        summary = SweepSummary(check="demo", wall_ms=12)
        summary.add(make_record("demo", False, ["COUNTEREXAMPLE"]))
        summary.add(make_record("demo", False))
        row = summary.csv_row()
        assert row == {
            "check": "demo",
            "tuples": 2,
            "passes": 0,
            "fails": 2,
            "skips": 0,
            "wall_ms": 12,
        }

    def test_summary_path_is_a_path(self, tmp_path):
        config = SweepConfig(
            check="thm2", primes=(3, 10), out=tmp_path / "r.csv", summary="s.csv"
        )
        assert config.summary_path == Path("s.csv")
