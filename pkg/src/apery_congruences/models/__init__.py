# =============================================================================
# Apery Congruences - Models Package
# =============================================================================
# This package contains the value objects the library passes around.
#
# Models in this package:
#   - IntPolynomial: exact polynomial over Z (frozen dataclass)
#   - SumSpec: which weighted polynomial sum to evaluate
#   - PrimeRep, SchmidtCoeffTable: representation and coefficient results
#   - IdentityVerdict, CongruenceReport: verdicts of single checks
#   - SweepConfig, IdentityConfig, RunRecord, SweepSummary: harness models
# =============================================================================

from .polynomial import IntPolynomial
from .report import (
    CheckKind,
    CongruenceReport,
    IdentityVerdict,
    Outcome,
    PathTag,
    PrimeRep,
    SchmidtCoeffTable,
)
from .sums import Family, SumSpec, Weight
from .sweep import (
    IdentityConfig,
    OutputFormat,
    PathChoice,
    RunRecord,
    SweepConfig,
    SweepSummary,
)

__all__ = [
    "IntPolynomial",
    "CheckKind",
    "CongruenceReport",
    "IdentityVerdict",
    "Outcome",
    "PathTag",
    "PrimeRep",
    "SchmidtCoeffTable",
    "Family",
    "SumSpec",
    "Weight",
    "IdentityConfig",
    "OutputFormat",
    "PathChoice",
    "RunRecord",
    "SweepConfig",
    "SweepSummary",
]
