# =============================================================================
# Apery Congruences - Services Package
# =============================================================================
# This package contains the sweep harness and its file handling.
#
# Services:
#   - SweepService: grids, chunked (parallel) evaluation, ordered writes
#   - ExportService: JSONL / CSV record files and the summary CSV
#   - CheckpointService: completed tuple keys for resuming a run
# =============================================================================

from apery_congruences.services.checkpoint_service import CheckpointService
from apery_congruences.services.export_service import ExportService
from apery_congruences.services.sweep_service import (
    SweepService,
    cross_check,
    run_identities,
    run_sweep,
)

__all__ = [
    "CheckpointService",
    "ExportService",
    "SweepService",
    "cross_check",
    "run_identities",
    "run_sweep",
]
