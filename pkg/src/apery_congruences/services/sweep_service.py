# =============================================================================
# Apery Congruences - Sweep Service
# =============================================================================
# This module provides the SweepService class, the harness that runs a
# congruence check or an identity suite over a parameter grid.
#
# Key Features:
#   - Grid built from the check / suite registry, in ascending order
#   - Work split into contiguous chunks of the outermost axis (primes or n)
#   - Chunks evaluated inline (jobs = 1) or in a process pool
#   - Results written in grid order, whatever order the workers finish in
#   - Resume from a checkpoint: completed tuples are kept, the rest rerun
#   - Path "both" evaluates exact and fast and flags any disagreement
#
# Error Mapping (per tuple, inside the worker):
#   - PreconditionError / ArithmeticInputError -> skip record
#   - VerificationFailure                      -> failing record
# Config problems (unknown check, missing range, fast path requested for a
# check without one) raise ConfigError before any work starts.
#
# Usage Example:
#   summary = run_sweep(SweepConfig(check="thm3", primes=(5, 200), x=[1]))
#   sys.exit(summary.exit_code)
# =============================================================================

import json
import logging
import time
from concurrent.futures import Future, ProcessPoolExecutor
from contextlib import ExitStack
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from itertools import groupby, product
from typing import Any, Dict, Iterator, List, Optional, Set, Union

from apery_congruences.controllers.congruences import Axis, CheckDefinition, get_check
from apery_congruences.controllers.identities import SuiteOptions, get_suite
from apery_congruences.exceptions import (
    ArithmeticInputError,
    ConfigError,
    PreconditionError,
    VerificationFailure,
)
from apery_congruences.models.report import (
    Outcome,
    ParamValue,
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
from apery_congruences.services.checkpoint_service import CheckpointService
from apery_congruences.services.export_service import ExportService, write_summary
from apery_congruences.utils.primes import primes_in

# Configure module logger
logger = logging.getLogger(__name__)

DIVERGENCE_FLAG = "PATH_DIVERGENCE"


class TaskKind(str, Enum):
    CHECK = "check"
    IDENTITY = "identity"


@dataclass(frozen=True)
class Task:
    """One parameter tuple of a check or identity suite."""

    kind: TaskKind
    name: str
    params: Dict[str, ParamValue]

    @property
    def key(self) -> str:
        return record_key(self.name, self.params)


# =============================================================================
# Worker side (module level so the process pool can pickle it)
# =============================================================================


def _error_record(
    name: str, params: Dict[str, ParamValue], path: str, error: Exception
) -> Dict[str, Any]:
    skipped = isinstance(error, (PreconditionError, ArithmeticInputError))
    return {
        "check": name,
        "params": encode_value(params),
        "modulus": None,
        "lhs": None,
        "rhs": None,
        "pass": None if skipped else False,
        "path": path,
        "extra": {"flags": [type(error).__name__, str(error)]},
    }


def _check_record(
    definition: CheckDefinition,
    params: Dict[str, ParamValue],
    path: PathTag,
    limit: int,
) -> Dict[str, Any]:
    try:
        return definition.evaluate(params, path=path, limit=limit).to_record()
    except (PreconditionError, ArithmeticInputError, VerificationFailure) as e:
        return _error_record(definition.check_id, params, path.value, e)


def _cross_record(
    definition: CheckDefinition, params: Dict[str, ParamValue], limit: int
) -> Dict[str, Any]:
    """Exact record tagged "both"; a fast/exact mismatch marks a divergence."""
    exact = _check_record(definition, params, PathTag.EXACT, limit)
    fast = _check_record(definition, params, PathTag.FAST, limit)
    record = dict(exact, path=PathChoice.BOTH.value)
    fields = ("modulus", "lhs", "rhs", "pass")
    if all(exact[f] == fast[f] for f in fields):
        return record
    extra = dict(record["extra"])
    extra["flags"] = list(extra.get("flags", [])) + [DIVERGENCE_FLAG]
    extra["fast"] = {f: fast[f] for f in fields}
    record["pass"] = False
    record["extra"] = extra
    return record


def _evaluate_task(task: Task, path: PathChoice, limit: int) -> Dict[str, Any]:
    if task.kind is TaskKind.IDENTITY:
        try:
            return get_suite(task.name).checker(**task.params).to_record()
        except (PreconditionError, ArithmeticInputError, VerificationFailure) as e:
            return _error_record(task.name, task.params, PathTag.EXACT.value, e)

    definition = get_check(task.name)
    if path is PathChoice.BOTH:
        return _cross_record(definition, task.params, limit)
    return _check_record(definition, task.params, PathTag(path.value), limit)


def _evaluate_chunk(
    tasks: List[Task], path: PathChoice, limit: int, timestamps: bool
) -> List[RunRecord]:
    """Evaluate a chunk of tasks in order."""
    records = []
    for task in tasks:
        record = _evaluate_task(task, path, limit)
        records.append(
            RunRecord(
                key=task.key,
                record=record,
                outcome=outcome_of(record),
                timestamp=(
                    datetime.now(timezone.utc).isoformat() if timestamps else None
                ),
            )
        )
    return records


# =============================================================================
# Harness
# =============================================================================


def _chunks(tasks: List[Task], axis: str, size: int) -> List[List[Task]]:
    """Group tasks into runs of `size` consecutive outer-axis values."""
    chunks: List[List[Task]] = []
    current: List[Task] = []
    values = 0
    for _, group in groupby(tasks, key=lambda t: t.params[axis]):
        if values == size:
            chunks.append(current)
            current, values = [], 0
        current.extend(group)
        values += 1
    if current:
        chunks.append(current)
    return chunks


class SweepService:
    """
    Runs one check or identity suite over its grid.

    The service owns the writer and the checkpoint; workers only receive
    task lists and return records.

    Attributes:
        config: A SweepConfig (congruence check) or IdentityConfig (suite)
    """

    def __init__(self, config: Union[SweepConfig, IdentityConfig]):
        self.config = config
        logger.debug(f"SweepService initialized for {self.name}")

    @property
    def name(self) -> str:
        if isinstance(self.config, SweepConfig):
            return self.config.check
        return self.config.suite

    @property
    def path(self) -> PathChoice:
        if isinstance(self.config, SweepConfig):
            return self.config.path
        return PathChoice.EXACT

    @property
    def limit(self) -> int:
        if isinstance(self.config, SweepConfig):
            return self.config.prime_power_limit
        return 0

    # =========================================================================
    # Grid construction
    # =========================================================================

    def plan(self) -> List[List[Task]]:
        """
        The full grid, in output order, split into chunks.

        Raises:
            ConfigError: Unknown check or suite, missing axis range, unknown
                bound names, or a fast path requested for a check without one
        """
        if isinstance(self.config, SweepConfig):
            return self._plan_check(self.config)
        return self._plan_suite(self.config)

    def _plan_check(self, config: SweepConfig) -> List[List[Task]]:
        definition = get_check(config.check)
        if config.path is not PathChoice.EXACT and not definition.has_fast:
            raise ConfigError(f"{config.check} has no fast path; use --path exact")

        if definition.axis is Axis.PRIME:
            if config.primes is None:
                raise ConfigError(f"{config.check} runs over primes; give --primes")
            lo, hi = config.primes
            outer = list(primes_in(max(lo, 2), hi + 1))
        else:
            if config.n is None:
                raise ConfigError(f"{config.check} runs over n; give --n")
            lo, hi = config.n
            outer = list(range(lo, hi + 1))
        if not outer:
            raise ConfigError(f"no {definition.axis.value} in {lo}:{hi}")

        inner = [getattr(config, name) for name in definition.params]
        tasks = []
        for value in outer:
            for combo in product(*inner):
                params: Dict[str, ParamValue] = {definition.axis.value: value}
                params.update(zip(definition.params, combo))
                if definition.uses_limit:
                    a = params.get("a", 1)
                    assert isinstance(a, int)
                    if a >= 1 and value**a > config.prime_power_limit:
                        continue
                tasks.append(Task(TaskKind.CHECK, config.check, params))
        return _chunks(tasks, definition.axis.value, config.chunk_size)

    def _plan_suite(self, config: IdentityConfig) -> List[List[Task]]:
        suite = get_suite(config.suite)
        unknown = set(config.bounds) - set(suite.axes)
        if unknown:
            raise ConfigError(
                f"suite {suite.name} has no axes {sorted(unknown)}; "
                f"axes are {', '.join(suite.axes)}"
            )
        options = SuiteOptions(seed=config.seed, samples=config.samples)
        tasks = [
            Task(TaskKind.IDENTITY, suite.name, params)
            for params in suite.grid(config.bounds, options)
        ]
        return _chunks(tasks, suite.axes[0], config.chunk_size)

    # =========================================================================
    # Execution
    # =========================================================================

    def _execute(self, chunks: List[List[Task]]) -> Iterator[List[RunRecord]]:
        """Yield each chunk's records in chunk order."""
        args = (self.path, self.limit, self.config.timestamps)
        if self.config.jobs == 1 or len(chunks) <= 1:
            for chunk in chunks:
                yield _evaluate_chunk(chunk, *args)
            return

        with ProcessPoolExecutor(max_workers=self.config.jobs) as executor:
            futures: List[Future] = [
                executor.submit(_evaluate_chunk, chunk, *args) for chunk in chunks
            ]
            try:
                for future in futures:
                    yield future.result()
            finally:
                for future in futures:
                    future.cancel()

    def _collect(
        self,
        records: List[RunRecord],
        summary: SweepSummary,
        exporter: Optional[ExportService],
        checkpoint: Optional[CheckpointService],
    ) -> None:
        if exporter is not None:
            exporter.write_records(records)
        if checkpoint is not None:
            checkpoint.append(r.key for r in records)
        for record in records:
            summary.add(record)
            if record.outcome is Outcome.COUNTEREXAMPLE:
                logger.warning(
                    f"Counterexample to {self.name}: {record.key}",
                    extra={"check": self.name, "params": record.record["params"]},
                )
            elif record.outcome is Outcome.PATH_DIVERGENCE:
                logger.warning(
                    f"Fast and exact paths diverge for {record.key}",
                    extra={"check": self.name, "params": record.record["params"]},
                )
        logger.info(
            f"{self.name}: {len(records)} tuples done ({summary.tuples} so far)"
        )

    def run(self) -> SweepSummary:
        """
        Evaluate the whole grid, write records, checkpoint and summary.

        Returns:
            The summary (its exit_code follows the exit-code contract)

        Raises:
            ConfigError: See plan()
            OSError: If an output file cannot be written
        """
        started = time.perf_counter()
        chunks = self.plan()
        total = sum(len(c) for c in chunks)
        logger.info(
            f"Starting {self.name}: {total} tuples in {len(chunks)} chunks, "
            f"config {json.dumps(self.config.echo())}"
        )

        summary = SweepSummary(check=self.name)
        exporter: Optional[ExportService] = None
        checkpoint: Optional[CheckpointService] = None
        done: Set[str] = set()
        if self.config.checkpoint is not None:
            checkpoint = CheckpointService(self.config.checkpoint)

        with ExitStack() as stack:
            if self.config.out is not None:
                exporter = stack.enter_context(
                    ExportService(
                        self.config.out, self.config.format, self.config.timestamps
                    )
                )
                keep = set(checkpoint.load()) if checkpoint is not None else None
                kept = exporter.open(keep)
                for record in kept:
                    summary.add(record)
                done = {record.key for record in kept}
                if checkpoint is not None:
                    checkpoint.rewrite([record.key for record in kept])
                if kept:
                    logger.info(f"Resuming {self.name}: {len(kept)} tuples kept")

            pending = [[t for t in c if t.key not in done] for c in chunks]
            for records in self._execute([c for c in pending if c]):
                self._collect(records, summary, exporter, checkpoint)

        summary.wall_ms = int((time.perf_counter() - started) * 1000)
        summary_path = self.config.summary_path
        if summary_path is not None:
            write_summary(summary_path, [summary])

        logger.info(
            f"Finished {self.name}: {summary.passes} pass, {summary.fails} fail, "
            f"{summary.skips} skip, {summary.counterexamples} counterexamples, "
            f"{summary.divergences} divergences in {summary.wall_ms} ms"
        )
        return summary


def run_sweep(config: SweepConfig) -> SweepSummary:
    """Run one congruence check over its grid on the configured path."""
    return SweepService(config).run()


def cross_check(config: SweepConfig) -> SweepSummary:
    """Run a check on both paths; any mismatch is a PATH_DIVERGENCE record."""
    return SweepService(config.model_copy(update={"path": PathChoice.BOTH})).run()


def run_identities(config: IdentityConfig) -> SweepSummary:
    """Run an identity suite over its (bounded) grid."""
    return SweepService(config).run()
