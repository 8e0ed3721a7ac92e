# =============================================================================
# Apery Congruences - Exceptions
# =============================================================================
# All errors raised by the package derive from AperyError. Three families
# matter to the sweep harness:
#
#   - ArithmeticInputError / PreconditionError: the caller asked for
#     something outside an operation's domain. Inside a sweep a
#     PreconditionError turns the tuple into a "skip" record.
#   - VerificationFailure: a computed value contradicts a proven statement.
#     This is never expected; the harness records a failing report.
#   - ConfigError: bad sweep configuration or unknown check/suite names.
#     The CLI exits with code 2.
# =============================================================================


class AperyError(Exception):
    """Base class for every error raised by apery_congruences."""


# =============================================================================
# Arithmetic input errors
# =============================================================================


class ArithmeticInputError(AperyError, ValueError):
    """An arithmetic kernel was called outside its domain."""


class NotInvertible(ArithmeticInputError):
    """gcd(a, m) != 1, so a has no inverse modulo m."""


class InvalidPrime(ArithmeticInputError):
    """An argument that must be an (odd) prime is not."""


class NonResidue(ArithmeticInputError):
    """The argument of a modular square root is not a quadratic residue."""


class NegativeValuation(ArithmeticInputError):
    """A rational with p in its reduced denominator cannot live mod p^w."""


class PoleInput(ArithmeticInputError):
    """A rational identity was evaluated at one of its poles."""


class ModulusMismatch(ArithmeticInputError):
    """Two residues with different moduli were combined."""


# =============================================================================
# Preconditions of individual checks
# =============================================================================


class PreconditionError(AperyError, ValueError):
    """The parameters do not satisfy the hypotheses of the checked statement."""


class LimitExceeded(PreconditionError):
    """A prime power p^a is above the configured desk-scale limit."""


# =============================================================================
# Verification failures (contradict a proven statement)
# =============================================================================


class VerificationFailure(AperyError):
    """A computed value contradicts a statement that is proven to hold."""


class DivisibilityFailure(VerificationFailure):
    """An exact sum that must be divisible by p is not."""


class IntegralityViolation(VerificationFailure):
    """A coefficient that must be an integer came out as a proper fraction."""


class InternalInconsistency(VerificationFailure):
    """An internal exactness assertion failed; indicates an arithmetic bug."""


# =============================================================================
# Configuration errors
# =============================================================================


class ConfigError(AperyError, ValueError):
    """Invalid sweep configuration (empty ranges, unsupported path, ...)."""


class UnknownCheck(ConfigError):
    """The requested check id is not registered."""


class UnknownSuite(ConfigError):
    """The requested identity suite is not registered."""
