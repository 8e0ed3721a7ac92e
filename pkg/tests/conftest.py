# =============================================================================
# Apery Congruences - Pytest Configuration and Fixtures
# =============================================================================
# Shared fixtures used across the unit and integration tests.
#
# Key Fixtures:
#   - isolated_config: Config singleton backed by a temporary directory
#   - out_dir: Temporary directory for record, summary and checkpoint files
#   - read_jsonl: Helper fixture that parses a JSONL record file
#
# Every test that touches Config gets its own config directory, so the
# user's real ~/.local/share/apery_congruences is never read or written.
# =============================================================================

import json
from pathlib import Path
from typing import Any, Callable, Dict, List

import pytest

from apery_congruences.config import Config


@pytest.fixture(autouse=True)
def isolated_config(tmp_path_factory, monkeypatch):
    """
    Point Config at a fresh temporary directory for every test.

    Yields:
        Config: The singleton, reloaded from the temporary directory
    """
    config_dir = tmp_path_factory.mktemp("config")
    monkeypatch.setenv("APERY_CONFIG_DIR", str(config_dir))
    monkeypatch.delenv("APERY_JOBS", raising=False)
    Config.reset_instance()
    yield Config.get_instance()
    Config.reset_instance()


@pytest.fixture
def out_dir(tmp_path) -> Path:
    """A temporary directory for sweep output files."""
    path = tmp_path / "out"
    path.mkdir()
    return path


def load_jsonl(path: Path) -> List[Dict[str, Any]]:
    """Parse every non-empty line of a JSONL file."""
    with open(path, "r", encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


@pytest.fixture
def read_jsonl() -> Callable[[Path], List[Dict[str, Any]]]:
    """The load_jsonl helper as a fixture."""
    return load_jsonl
