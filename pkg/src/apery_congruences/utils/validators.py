# =============================================================================
# Apery Congruences - Validation Utilities
# =============================================================================
# Reusable validation and parsing helpers shared by the CLI, the sweep
# configuration and the controllers.
#
# Key Features:
#   - Inclusive range parsing ("3:100", "-5:5")
#   - Integer list parsing with ranges mixed in ("-5:5,9,12")
#   - Sign list parsing ("+1,-1")
#   - Prime preconditions for the congruence checks
#
# Usage Example:
#   from apery_congruences.utils.validators import parse_int_list
#   parse_int_list("-2:2,7")     # [-2, -1, 0, 1, 2, 7]
# =============================================================================

import re
from typing import List, Pattern, Tuple

from apery_congruences.exceptions import ConfigError, InvalidPrime, PreconditionError

# "lo:hi" with optional signs on both ends
RANGE_PATTERN: Pattern[str] = re.compile(r"^\s*([+-]?\d+)\s*:\s*([+-]?\d+)\s*$")
INT_PATTERN: Pattern[str] = re.compile(r"^\s*[+-]?\d+\s*$")


def parse_range(text: str) -> Tuple[int, int]:
    """
    Parse an inclusive range "lo:hi".

    Raises:
        ConfigError: If the text is malformed or lo > hi

    Examples:
        >>> parse_range("3:100")
        (3, 100)
        >>> parse_range("-5:5")
        (-5, 5)
    """
    match = RANGE_PATTERN.match(text)
    if not match:
        raise ConfigError(f"Invalid range '{text}'. Expected lo:hi")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise ConfigError(f"Empty range '{text}': lo must not exceed hi")
    return lo, hi


def parse_int_list(text: str) -> List[int]:
    """
    Parse a comma-separated list of integers and inclusive ranges.

    The result is sorted and free of duplicates so that sweeps emit records
    in ascending parameter order.

    Examples:
        >>> parse_int_list("-2:2,7")
        [-2, -1, 0, 1, 2, 7]
        >>> parse_int_list("3")
        [3]
    """
    values = set()
    for part in text.split(","):
        if not part.strip():
            continue
        if ":" in part:
            lo, hi = parse_range(part)
            values.update(range(lo, hi + 1))
        elif INT_PATTERN.match(part):
            values.add(int(part))
        else:
            raise ConfigError(f"Invalid integer list entry '{part}'")
    if not values:
        raise ConfigError(f"Empty integer list '{text}'")
    return sorted(values)


def parse_signs(text: str) -> List[int]:
    """Parse "+1,-1" style sign lists; every entry must be +1 or -1."""
    signs = parse_int_list(text)
    if any(s not in (1, -1) for s in signs):
        raise ConfigError(f"Signs must be +1 or -1, got '{text}'")
    return sorted(signs, reverse=True)


def require_prime(p: int, minimum: int = 3) -> None:
    """
    Check that p is a prime and at least `minimum`.

    Raises:
        InvalidPrime: If p is not prime
        PreconditionError: If p is prime but below the minimum
    """
    from apery_congruences.utils.primes import is_prime

    if p < 0 or not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")
    if p < minimum:
        raise PreconditionError(f"prime {p} is below the required minimum {minimum}")


def require_positive(name: str, value: int, minimum: int = 1) -> None:
    """Raise PreconditionError if value < minimum."""
    if value < minimum:
        raise PreconditionError(f"{name} must be >= {minimum}, got {value}")
