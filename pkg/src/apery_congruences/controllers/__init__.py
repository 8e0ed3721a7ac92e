# =============================================================================
# Apery Congruences - Controllers Package
# =============================================================================
# This package contains the mathematics.
#
#   - sequences: Apery, Schmidt and Delannoy polynomials and weighted sums
#   - identities: exact identity checkers and the identity suite registry
#   - congruences: congruence verifiers, fast kernels, the check registry
# =============================================================================

from apery_congruences.controllers.congruences import CHECKS, get_check
from apery_congruences.controllers.identities import IDENTITY_SUITES, get_suite

__all__ = [
    "CHECKS",
    "IDENTITY_SUITES",
    "get_check",
    "get_suite",
]
