# =============================================================================
# Apery Congruences - Export Service
# =============================================================================
# This module provides the ExportService class, which writes sweep records
# to disk (JSONL or CSV) and the per-check summary CSV.
#
# Key Features:
#   - One record per line (JSONL) or per row (CSV), fixed field names
#   - Big integers are decimal strings, so nothing is rounded
#   - flush + fsync after every batch of records
#   - Resume support: truncate an existing file to the checkpointed records
#   - Summary CSV with columns check, tuples, passes, fails, skips, wall_ms
#
# CSV Format:
#   - UTF-8-sig encoding (UTF-8 with BOM) for spreadsheet compatibility
#   - Header row with column names
#   - params and extra columns hold JSON objects
#
# Usage Example:
#   exporter = ExportService(Path("thm3.jsonl"), OutputFormat.JSONL)
#   exporter.open()
#   exporter.write_records(records)
#   exporter.close()
# =============================================================================

import csv
import json
import logging
import os
from pathlib import Path
from typing import IO, Any, Dict, Iterable, Iterator, List, Optional, Set

from apery_congruences.models.sweep import (
    OutputFormat,
    RunRecord,
    SweepSummary,
    outcome_of,
    record_key,
)

# Configure module logger
logger = logging.getLogger(__name__)

RECORD_FIELDS = ["check", "params", "modulus", "lhs", "rhs", "pass", "path", "extra"]
SUMMARY_FIELDS = ["check", "tuples", "passes", "fails", "skips", "wall_ms"]


def _side(value: Any) -> Any:
    # Polynomial sides are coefficient lists
    return json.dumps(value) if isinstance(value, list) else value


def _csv_row(record: RunRecord) -> Dict[str, Any]:
    data = record.record
    row = {
        "check": data["check"],
        "params": json.dumps(data["params"]),
        "modulus": "" if data["modulus"] is None else data["modulus"],
        "lhs": _side(data["lhs"]),
        "rhs": _side(data["rhs"]),
        "pass": "" if data["pass"] is None else str(data["pass"]).lower(),
        "path": data["path"],
        "extra": json.dumps(data["extra"]),
    }
    if record.timestamp is not None:
        row["timestamp"] = record.timestamp
    return {k: ("" if v is None else v) for k, v in row.items()}


def _record_from_csv(row: Dict[str, str]) -> RunRecord:
    def _value(text: str) -> Any:
        if text == "":
            return None
        return json.loads(text) if text.startswith("[") else text

    data: Dict[str, Any] = {
        "check": row["check"],
        "params": json.loads(row["params"]),
        "modulus": _value(row["modulus"]),
        "lhs": _value(row["lhs"]),
        "rhs": _value(row["rhs"]),
        "pass": None if row["pass"] == "" else row["pass"] == "true",
        "path": row["path"],
        "extra": json.loads(row["extra"]),
    }
    return RunRecord(
        key=record_key(data["check"], data["params"]),
        record=data,
        outcome=outcome_of(data),
        timestamp=row.get("timestamp") or None,
    )


class ExportService:
    """
    Writer for sweep record files.

    Attributes:
        path: Record file
        fmt: jsonl or csv
        timestamps: Whether records carry a timestamp column (CSV header)
    """

    def __init__(self, path: Path, fmt: OutputFormat, timestamps: bool = False):
        self.path = Path(path)
        self.fmt = fmt
        self.timestamps = timestamps
        self._handle: Optional[IO[str]] = None
        self._writer: Optional[csv.DictWriter] = None
        logger.debug(f"ExportService initialized for {self.path} ({fmt.value})")

    @property
    def _encoding(self) -> str:
        return "utf-8-sig" if self.fmt is OutputFormat.CSV else "utf-8"

    @property
    def _fieldnames(self) -> List[str]:
        return RECORD_FIELDS + (["timestamp"] if self.timestamps else [])

    def _iter_records(self) -> Iterator[RunRecord]:
        if not self.path.exists():
            return
        with open(self.path, "r", newline="", encoding=self._encoding) as f:
            if self.fmt is OutputFormat.CSV:
                for row in csv.DictReader(f):
                    yield _record_from_csv(row)
            else:
                for line in f:
                    if line.strip():
                        yield RunRecord.from_json(line)

    def read_records(self) -> List[RunRecord]:
        """All records currently in the file (empty list if it does not exist)."""
        return list(self._iter_records())

    def open(self, keep_keys: Optional[Set[str]] = None) -> List[RunRecord]:
        """
        Open the file for writing.

        Args:
            keep_keys: When given (resume), records whose key is in the set are
                kept and everything after them is dropped. When None the file
                is started from scratch.

        Returns:
            The records kept from a previous run, in file order

        Raises:
            OSError: If the file cannot be read or written
        """
        kept: List[RunRecord] = []
        if keep_keys:
            try:
                for record in self._iter_records():
                    if record.key not in keep_keys:
                        break
                    kept.append(record)
            except (ValueError, KeyError, TypeError) as e:
                # A torn last line after a crash: keep what parsed cleanly
                logger.warning(f"Stopped reading {self.path} at a damaged record: {e}")

        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = open(self.path, "w", newline="", encoding=self._encoding)
        if self.fmt is OutputFormat.CSV:
            self._writer = csv.DictWriter(self._handle, fieldnames=self._fieldnames)
            self._writer.writeheader()
        self._write(kept)
        logger.info(f"Opened {self.path} ({len(kept)} records kept from before)")
        return kept

    def _write(self, records: Iterable[RunRecord]) -> int:
        if self._handle is None:
            raise RuntimeError("ExportService.open() must be called before writing")
        count = 0
        for record in records:
            if self._writer is not None:
                self._writer.writerow(_csv_row(record))
            else:
                self._handle.write(record.to_json() + "\n")
            count += 1
        self._handle.flush()
        os.fsync(self._handle.fileno())
        return count

    def write_records(self, records: Iterable[RunRecord]) -> int:
        """Append records and fsync; returns the number written."""
        try:
            return self._write(records)
        except Exception as e:
            logger.error(f"Failed to write records to {self.path}: {e}")
            raise

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None
            self._writer = None

    def __enter__(self) -> "ExportService":
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()


def write_summary(path: Path, summaries: Iterable[SweepSummary]) -> int:
    """
    Write the summary CSV, one row per check id.

    Returns:
        Number of rows written

    Raises:
        OSError: If the file write fails
    """
    try:
        rows = [s.csv_row() for s in summaries]
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8-sig") as csvfile:
            writer = csv.DictWriter(csvfile, fieldnames=SUMMARY_FIELDS)
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        logger.info(f"Wrote summary for {len(rows)} checks to: {path}")
        return len(rows)
    except Exception as e:
        logger.error(f"Failed to write summary: {e}")
        raise
