# =============================================================================
# Apery Congruences - Checkpoint Service
# =============================================================================
# A checkpoint is a JSONL file with one {"key": ...} object per completed
# parameter tuple. Keys are appended only after the matching records have
# been written and fsynced, so on resume every checkpointed tuple is known
# to be on disk.
#
# Usage Example:
#   checkpoint = CheckpointService(Path("run.ckpt"))
#   done = checkpoint.load()
#   ...
#   checkpoint.append(keys_of_chunk)
# =============================================================================

import json
import logging
import os
from pathlib import Path
from typing import Iterable, List

# Configure module logger
logger = logging.getLogger(__name__)


class CheckpointService:
    """
    Append-only log of completed tuple keys.

    Attributes:
        path: Checkpoint file
    """

    def __init__(self, path: Path):
        self.path = Path(path)

    def load(self) -> List[str]:
        """
        Completed keys in completion order.

        A damaged trailing line (interrupted write) is ignored.
        """
        if not self.path.exists():
            return []
        keys: List[str] = []
        damaged = False
        with open(self.path, "r", encoding="utf-8") as f:
            for number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    keys.append(json.loads(line)["key"])
                except (ValueError, KeyError):
                    logger.warning(
                        f"Ignoring damaged checkpoint line {number} in {self.path}"
                    )
                    damaged = True
                    break
        if damaged:
            self.rewrite(keys)
        logger.info(f"Loaded {len(keys)} completed tuples from {self.path}")
        return keys

    def rewrite(self, keys: List[str]) -> None:
        """Replace the checkpoint with exactly these keys."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "w", encoding="utf-8") as f:
            for key in keys:
                f.write(json.dumps({"key": key}) + "\n")
            f.flush()
            os.fsync(f.fileno())

    def append(self, keys: Iterable[str]) -> None:
        """Append keys and fsync."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as f:
            for key in keys:
                f.write(json.dumps({"key": key}) + "\n")
            f.flush()
            os.fsync(f.fileno())

    def clear(self) -> None:
        """Remove the checkpoint file if it exists."""
        if self.path.exists():
            self.path.unlink()
            logger.info(f"Removed checkpoint {self.path}")
