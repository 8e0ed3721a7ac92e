# =============================================================================
# Apery Congruences - Sweep Models
# =============================================================================
# Pydantic models for the sweep harness:
#
#   - RunOutput: where to write, how many workers, resume support
#   - SweepConfig: which check to run over which ranges and lists, on which path
#   - IdentityConfig: which identity suite to run within which bounds
#   - RunRecord: one output line, keyed by check and parameter tuple
#   - SweepSummary: pass / fail / skip counts and the exit code they imply
#
# SweepConfig only validates what it can see on its own (non-empty ranges,
# sign values, positive sizes). Whether a check exists and whether it has a
# fast path is validated by the sweep service against the check registry.
# =============================================================================

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from apery_congruences.models.report import Outcome


class PathChoice(str, Enum):
    """Which evaluation path(s) a sweep uses."""

    EXACT = "exact"
    FAST = "fast"
    BOTH = "both"


class OutputFormat(str, Enum):
    JSONL = "jsonl"
    CSV = "csv"


class RunOutput(BaseModel):
    """
    Execution and output settings shared by check sweeps and identity runs.

    Attributes:
        jobs: Worker processes (1 = run inline)
        chunk_size: Outer-axis values per work chunk
        out: Record file (None = no file)
        checkpoint: Checkpoint file (None = no resume support)
        format: jsonl or csv
        summary: Summary CSV (default: <out>.summary.csv)
        timestamps: Add a wall-clock timestamp to every record
    """

    model_config = ConfigDict(frozen=True)

    jobs: int = Field(default=1, ge=1)
    chunk_size: int = Field(default=16, ge=1)
    out: Optional[Path] = None
    checkpoint: Optional[Path] = None
    format: OutputFormat = OutputFormat.JSONL
    summary: Optional[Path] = None
    timestamps: bool = False

    @model_validator(mode="after")
    def validate_checkpoint(self) -> "RunOutput":
        if self.checkpoint is not None and self.out is None:
            raise ValueError("a checkpoint needs an output file to resume into")
        return self

    @property
    def summary_path(self) -> Optional[Path]:
        if self.summary is not None:
            return self.summary
        if self.out is not None:
            return self.out.with_name(self.out.name + ".summary.csv")
        return None

    def echo(self) -> Dict[str, Any]:
        """JSON-ready copy of the configuration for the run log."""
        return self.model_dump(mode="json")


class SweepConfig(RunOutput):
    """
    Configuration of one sweep over a congruence check's parameter grid.

    Ranges are inclusive (lo, hi) pairs; list-valued parameters are sorted
    before the grid is built so records come out in ascending order.

    Attributes:
        check: Check id (see the congruences registry)
        primes: Prime range for checks over primes
        n: Range of n for divisibility checks
        x: Values of the integer argument x
        r: Schmidt exponents
        a: Exponents a (prime powers p^a, weight exponents)
        m: Powers m (Schmidt conjecture)
        eps: Signs
        variant: Weight variants for the weighted Schmidt check
        path: exact, fast, or both (cross-check)
        prime_power_limit: Upper bound for p^a
    """

    check: str = Field(..., min_length=1)
    primes: Optional[Tuple[int, int]] = None
    n: Optional[Tuple[int, int]] = None
    x: List[int] = Field(default_factory=lambda: [1])
    r: List[int] = Field(default_factory=lambda: [2])
    a: List[int] = Field(default_factory=lambda: [1])
    m: List[int] = Field(default_factory=lambda: [1])
    eps: List[int] = Field(default_factory=lambda: [1, -1])
    variant: List[str] = Field(default_factory=lambda: ["kk1", "odd_power"])
    path: PathChoice = PathChoice.EXACT
    prime_power_limit: int = Field(default=10_000, ge=2)

    # =========================================================================
    # Validation Methods
    # =========================================================================

    @field_validator("primes", "n")
    @classmethod
    def validate_range(cls, v: Optional[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
        """Ranges must be non-empty (lo <= hi)."""
        if v is not None and v[0] > v[1]:
            raise ValueError(f"empty range {v[0]}:{v[1]}")
        return v

    @field_validator("x", "r", "a", "m", "eps", "variant")
    @classmethod
    def validate_list(cls, v: List[Any]) -> List[Any]:
        """Lists must be non-empty; they are deduplicated and sorted."""
        if not v:
            raise ValueError("parameter lists must not be empty")
        return sorted(set(v))

    @field_validator("eps")
    @classmethod
    def validate_eps(cls, v: List[int]) -> List[int]:
        if any(e not in (1, -1) for e in v):
            raise ValueError("eps values must be +1 or -1")
        return sorted(v, reverse=True)

    @field_validator("variant")
    @classmethod
    def validate_variant(cls, v: List[str]) -> List[str]:
        unknown = set(v) - {"kk1", "odd_power"}
        if unknown:
            raise ValueError(f"unknown variants: {sorted(unknown)}")
        return v

    @model_validator(mode="after")
    def validate_axis(self) -> "SweepConfig":
        if self.primes is None and self.n is None:
            raise ValueError("either a prime range or an n range is required")
        if self.primes is not None and self.primes[1] < 2:
            raise ValueError("prime range contains no primes")
        return self


class IdentityConfig(RunOutput):
    """
    Configuration of one identity suite run.

    Attributes:
        suite: Suite name (see the identities registry)
        bounds: Inclusive bounds per axis, overriding the suite defaults
        seed: Seed for suites with sampled parameters
        samples: Samples per outer value for sampled suites
    """

    suite: str = Field(..., min_length=1)
    bounds: Dict[str, Tuple[int, int]] = Field(default_factory=dict)
    seed: int = 20100
    samples: int = Field(default=10, ge=1)

    @field_validator("bounds")
    @classmethod
    def validate_bounds(
        cls, v: Dict[str, Tuple[int, int]]
    ) -> Dict[str, Tuple[int, int]]:
        for name, (lo, hi) in v.items():
            if lo > hi:
                raise ValueError(f"empty range for {name}: {lo}:{hi}")
        return v


def record_key(check: str, params: Dict[str, Any]) -> str:
    """
    Stable key of a parameter tuple, e.g. "thm_main_ii|p=5,x=-2".

    Values are stringified, so encoded and raw parameter dicts give the
    same key.
    """
    return check + "|" + ",".join(f"{k}={v}" for k, v in params.items())


class RunRecord(BaseModel):
    """
    One output record.

    Attributes:
        key: Parameter tuple key (see record_key)
        record: The JSON-ready report (fixed field names)
        outcome: Classification for the summary
        timestamp: ISO timestamp, only when requested
    """

    model_config = ConfigDict(frozen=True)

    key: str
    record: Dict[str, Any]
    outcome: Outcome
    timestamp: Optional[str] = None

    def to_json(self) -> str:
        """One JSONL line (without newline); timestamps only when present."""
        data = dict(self.record)
        if self.timestamp is not None:
            data["timestamp"] = self.timestamp
        return json.dumps(data, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "RunRecord":
        """Parse a JSONL line back into a record."""
        data = json.loads(line)
        timestamp = data.pop("timestamp", None)
        return cls(
            key=record_key(data["check"], data["params"]),
            record=data,
            outcome=outcome_of(data),
            timestamp=timestamp,
        )


def outcome_of(record: Dict[str, Any]) -> Outcome:
    """Recover the outcome from a serialized record."""
    flags = (record.get("extra") or {}).get("flags") or []
    if "PATH_DIVERGENCE" in flags:
        return Outcome.PATH_DIVERGENCE
    if record.get("pass") is None:
        return Outcome.SKIP
    if record["pass"]:
        return Outcome.PASS
    if "COUNTEREXAMPLE" in flags:
        return Outcome.COUNTEREXAMPLE
    return Outcome.FAIL


class SweepSummary(BaseModel):
    """
    Counts for one check id.

    Exit code: 1 on any theorem failure or path divergence, else 3 on any
    conjecture counterexample, else 0.
    """

    check: str
    tuples: int = 0
    passes: int = 0
    fails: int = 0
    skips: int = 0
    counterexamples: int = 0
    divergences: int = 0
    wall_ms: int = 0
    first_failure: Optional[Dict[str, Any]] = None

    def add(self, record: RunRecord) -> None:
        self.tuples += 1
        if record.outcome is Outcome.PASS:
            self.passes += 1
        elif record.outcome is Outcome.SKIP:
            self.skips += 1
        else:
            if record.outcome is Outcome.COUNTEREXAMPLE:
                self.counterexamples += 1
            elif record.outcome is Outcome.PATH_DIVERGENCE:
                self.divergences += 1
            else:
                self.fails += 1
            if self.first_failure is None:
                self.first_failure = record.record

    @property
    def exit_code(self) -> int:
        if self.fails or self.divergences:
            return 1
        if self.counterexamples:
            return 3
        return 0

    def csv_row(self) -> Dict[str, Any]:
        """Row for the summary CSV (check, tuples, passes, fails, skips, wall_ms)."""
        return {
            "check": self.check,
            "tuples": self.tuples,
            "passes": self.passes,
            "fails": self.fails + self.counterexamples + self.divergences,
            "skips": self.skips,
            "wall_ms": self.wall_ms,
        }
