# =============================================================================
# Apery Congruences - Main Package
# =============================================================================
# This package computes Apery, Schmidt and Delannoy polynomial sums in exact
# arithmetic, verifies the identities and congruences stated for them, and
# scans the open conjectures over prime ranges.
#
# Layout:
#   - utils/       : exact and modular arithmetic kernels, primes
#   - models/      : value objects (residues, polynomials, reports, sweeps)
#   - controllers/ : sequences, identity checks, congruence checks
#   - services/    : sweep harness, checkpoints, JSONL/CSV export
#   - app.py       : command-line entry point
# =============================================================================

import os
import re
from pathlib import Path
from typing import Optional

# Checkout layout: src/apery_congruences/__init__.py
_PYPROJECT = Path(__file__).resolve().parents[2] / "pyproject.toml"
_VERSION_LINE = re.compile(r'^version\s*=\s*["\']([^"\']+)["\']', re.MULTILINE)


def _version_from_pyproject(path: Path) -> Optional[str]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError:
        return None
    match = _VERSION_LINE.search(text)
    return match.group(1) if match else None


def _get_version() -> str:
    """
    Resolve the package version.

    Order: pyproject.toml of a source checkout, the APP_VERSION environment
    variable, installed distribution metadata, then "0.0.0".
    """
    version = _version_from_pyproject(_PYPROJECT)
    if version:
        return version

    env_version = os.environ.get("APP_VERSION")
    if env_version:
        return env_version

    try:
        from importlib.metadata import PackageNotFoundError, version as dist_version
    except ImportError:  # pragma: no cover
        return "0.0.0"
    try:
        return dist_version("apery-congruences")
    except PackageNotFoundError:
        return "0.0.0"


__version__ = _get_version()
__description__ = (
    "Exact verification of congruences for Apery, Schmidt and Delannoy sums"
)
