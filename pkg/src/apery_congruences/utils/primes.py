# =============================================================================
# Apery Congruences - Primes
# =============================================================================
# Prime generation and the representation p = x^2 + 2y^2.
#
# Key Features:
#   - Segmented sieve of Eratosthenes: memory O(sqrt(hi) + segment)
#   - Deterministic Miller-Rabin for every n < 2^64 (fixed witness set)
#   - Cornacchia's descent for x^2 + 2y^2 (d = 2 only)
#   - Brute-force representation oracle for tests and the CLI
#
# Usage Example:
#   sieve_primes(2, 12)         # [2, 3, 5, 7, 11]
#   represent_x2_2y2(11)        # PrimeRep(p=11, x=3, y=1)
# =============================================================================

import logging
import math
from typing import Iterator, List

from apery_congruences.exceptions import (
    ArithmeticInputError,
    InternalInconsistency,
    InvalidPrime,
)
from apery_congruences.models.report import PrimeRep
from apery_congruences.utils.exact_arith import sqrt_mod

# Configure module logger
logger = logging.getLogger(__name__)

SEGMENT_SIZE = 1 << 15

# Witness set that makes Miller-Rabin deterministic below 2^64
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _base_primes(limit: int) -> List[int]:
    """Plain sieve for the primes up to and including limit."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


def primes_in(lo: int, hi: int, segment: int = SEGMENT_SIZE) -> Iterator[int]:
    """
    Yield the primes in [lo, hi) in ascending order, one segment at a time.

    Args:
        lo: Lower bound (inclusive), lo >= 2
        hi: Upper bound (exclusive), hi > lo
        segment: Segment length in integers
    """
    if lo < 2 or hi <= lo:
        raise ArithmeticInputError(f"need 2 <= lo < hi, got [{lo}, {hi})")
    base = _base_primes(math.isqrt(hi - 1))
    start = lo
    while start < hi:
        end = min(start + segment, hi)
        flags = bytearray([1]) * (end - start)
        for q in base:
            if q * q >= end:
                break
            first = max(q * q, (start + q - 1) // q * q)
            if first < end:
                flags[first - start :: q] = bytearray(len(range(first, end, q)))
        for offset, f in enumerate(flags):
            if f:
                yield start + offset
        start = end


def sieve_primes(lo: int, hi: int) -> List[int]:
    """
    The primes in [lo, hi), ascending.

    Example:
        >>> sieve_primes(90, 100)
        [97]
    """
    return list(primes_in(lo, hi))


def is_prime(n: int) -> bool:
    """
    Deterministic primality test for 0 <= n < 2^64.

    Example:
        >>> is_prime(3215031751)
        False
    """
    if n < 0 or n >= 1 << 64:
        raise ArithmeticInputError(f"is_prime supports 0 <= n < 2^64, got {n}")
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def represent_x2_2y2(p: int) -> PrimeRep:
    """
    Write the prime p as x^2 + 2y^2 with x, y > 0 (Cornacchia, d = 2).

    Only p = 2 and p = 1, 3 (mod 8) are representable. For p = 2 the
    representation 0^2 + 2*1^2 is returned.

    Args:
        p: A prime

    Returns:
        PrimeRep with x, y set, or with both None when not representable

    Raises:
        InvalidPrime: If p is not prime
        InternalInconsistency: If the descent ends on a non-square
    """
    if not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")
    if p == 2:
        return PrimeRep(p=2, x=0, y=1)
    if p % 8 not in (1, 3):
        return PrimeRep(p=p)

    a, b = p, sqrt_mod(-2, p).value
    while b * b > p:
        a, b = b, a % b

    rest = p - b * b
    if rest % 2 != 0:
        raise InternalInconsistency(f"Cornacchia remainder {rest} is odd for p={p}")
    y = math.isqrt(rest // 2)
    if y * y != rest // 2 or y == 0:
        raise InternalInconsistency(
            f"Cornacchia descent for p={p} ended on non-square {rest // 2}"
        )
    return PrimeRep(p=p, x=b, y=y)


def brute_force_x2_2y2(p: int) -> PrimeRep:
    """Exhaustive search over 0 <= x <= sqrt(p); the oracle for Cornacchia."""
    for x in range(math.isqrt(p) + 1):
        rest = p - x * x
        if rest > 0 and rest % 2 == 0:
            y = math.isqrt(rest // 2)
            if y * y == rest // 2 and y > 0:
                return PrimeRep(p=p, x=x, y=y)
    return PrimeRep(p=p)
