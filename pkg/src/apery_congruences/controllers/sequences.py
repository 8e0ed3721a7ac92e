# =============================================================================
# Apery Congruences - Sequence Families
# =============================================================================
# Exact evaluation of the sequence families and their weighted partial sums:
#
#   - Apery polynomials  A_n(x)     = sum_k C(n,k)^2 C(n+k,k)^2 x^k
#   - Schmidt polynomials S_n^(r)(x) = sum_k C(n,k)^r C(n+k,k)^r x^k
#   - Delannoy polynomials D_n(x)   = S_n^(1)(x)
#   - Central binomial sums          sum_{k<N} C(2k,k) x^k
#   - The two single sums that reduce sum_{k<p} A_k(x) modulo p^2
#
# Everything is computed with Python ints; residues are taken only at the
# very end. The modular fast paths live in controllers.congruences.
#
# Usage Example:
#   apery_eval(4, 1)                                   # 33001
#   weighted_sum_exact(SumSpec(family="apery", weight="odd", eps=-1, n=5, x=1))
# =============================================================================

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Tuple

from apery_congruences.models.polynomial import IntPolynomial
from apery_congruences.models.sums import Family, SumSpec
from apery_congruences.utils.exact_arith import (
    Residue,
    ValuatedResidue,
    binomial,
    factorial,
    valuated_from_rational,
)
from apery_congruences.utils.validators import require_positive, require_prime

# Configure module logger
logger = logging.getLogger(__name__)


# =============================================================================
# Schmidt / Apery / Delannoy families
# =============================================================================


@lru_cache(maxsize=1024)
def _base_terms(n: int) -> Tuple[int, ...]:
    """
    C(n,k) * C(n+k,k) for k = 0..n.

    Built incrementally: t_{k+1} = t_k (n-k)(n+k+1) / (k+1)^2, exact.
    """
    terms = [1]
    t = 1
    for k in range(n):
        t = t * (n - k) * (n + k + 1) // ((k + 1) * (k + 1))
        terms.append(t)
    return tuple(terms)


def schmidt_poly(r: int, n: int) -> IntPolynomial:
    """S_n^(r)(x) as an element of Z[x]."""
    require_positive("r", r)
    require_positive("n", n, minimum=0)
    return IntPolynomial.from_coeffs(t**r for t in _base_terms(n))


def apery_poly(n: int) -> IntPolynomial:
    """
    A_n(x) as an element of Z[x]; the coefficient of x^k is C(n,k)^2 C(n+k,k)^2.

    Example:
        >>> apery_poly(2).coeffs
        (1, 36, 36)
    """
    return schmidt_poly(2, n)


@lru_cache(maxsize=8192)
def schmidt_eval(r: int, n: int, x: int) -> int:
    """
    S_n^(r)(x) evaluated exactly (Horner over the coefficient row).

    r = 2 gives the Apery polynomial, r = 1 the Delannoy polynomial.

    Example:
        >>> schmidt_eval(3, 2, 1)
        433
    """
    require_positive("r", r)
    require_positive("n", n, minimum=0)
    acc = 0
    for t in reversed(_base_terms(n)):
        acc = acc * x + t**r
    return acc


def apery_eval(n: int, x: int) -> int:
    """
    A_n(x) exactly.

    Example:
        >>> apery_eval(4, 1)
        33001
    """
    return schmidt_eval(2, n, x)


def delannoy_eval(n: int, x: int) -> int:
    """D_n(x) = S_n^(1)(x); D_n(1) are the central Delannoy numbers."""
    return schmidt_eval(1, n, x)


def central_binomial_term(k: int, x: int) -> int:
    """C(2k,k) x^k computed from scratch (oracle for the incremental stream)."""
    return binomial(2 * k, k) * x**k


def central_binomial_stream(count: int, x: int) -> Iterator[int]:
    """
    Yield C(2k,k) x^k for k = 0..count-1 using the exact term ratio.

    term_{k+1} = term_k * (4k+2) / (k+1) * x
    """
    term = 1
    for k in range(count):
        yield term
        term = term * (4 * k + 2) // (k + 1) * x


def family_term(spec: SumSpec, k: int) -> int:
    """family_k(x) for the family of the sum (before powering and weighting)."""
    if spec.family is Family.CENTRAL_BINOMIAL:
        return central_binomial_term(k, spec.x)
    return schmidt_eval(spec.exponent, k, spec.x)


def weighted_sum_exact(spec: SumSpec) -> int:
    """
    sum_{k=0}^{n-1} eps^k * weight(k) * family_k(x)^m, exactly.

    The family term is raised to the power m before the weight is applied.

    Example:
        >>> spec = SumSpec(family="schmidt", r=3, weight="odd", n=3, x=1)
        >>> weighted_sum_exact(spec)
        2193
    """
    total = 0
    sign = 1
    for k in range(spec.n):
        term = family_term(spec, k) ** spec.m
        total += sign * spec.weight.value_at(k, spec.a) * term
        sign *= spec.eps
    logger.debug("weighted sum %s = %d", spec.model_dump(mode="json"), total)
    return total


def apery_partial_sum(n: int, x: int) -> int:
    """sum_{k<n} A_k(x) exactly."""
    return weighted_sum_exact(SumSpec(family=Family.APERY, n=n, x=x))


def central_binomial_sum(N: int, x: int, modulus: int) -> Residue:
    """
    sum_{k=0}^{N-1} C(2k,k) x^k reduced mod `modulus`.

    Terms are kept exact and reduced on accumulation.

    Example:
        >>> central_binomial_sum(5, -2, 25).value
        6
    """
    require_positive("N", N)
    acc = 0
    for term in central_binomial_stream(N, x):
        acc = (acc + term) % modulus
    return Residue.of(acc, modulus)


# =============================================================================
# Single-sum reductions of sum_{k<p} A_k(x) mod p^2
# =============================================================================


def thm3_rational_term(p: int, k: int, x: int) -> Fraction:
    """(2k)!^4 p / ((4k+1)! k!^4) * x^k as an exact rational."""
    return Fraction(
        factorial(2 * k) ** 4 * p * x**k,
        factorial(4 * k + 1) * factorial(k) ** 4,
    )


def thm3_rational_terms(p: int, x: int) -> List[ValuatedResidue]:
    """The rational single-sum terms for k = 0..p-1 as values mod p^2."""
    require_prime(p, minimum=5)
    return [valuated_from_rational(thm3_rational_term(p, k, x), p, 2) for k in range(p)]


def thm3_rational_sum(p: int, x: int) -> Residue:
    """
    sum_{k=0}^{p-1} (2k)!^4 p / ((4k+1)! k!^4) x^k mod p^2.

    Each term goes through valuated_from_rational with window 2.

    Example:
        >>> thm3_rational_sum(5, 0).value
        5
    """
    acc = ValuatedResidue.zero(p, 2)
    for term in thm3_rational_terms(p, x):
        acc = acc + term
    return acc.to_residue()


def thm3_binomial_term(p: int, k: int, x: int) -> int:
    """C(p+2k, 4k+1) C(2k,k)^2 x^k."""
    return binomial(p + 2 * k, 4 * k + 1) * binomial(2 * k, k) ** 2 * x**k


def thm3_binomial_sum(p: int, x: int) -> Residue:
    """
    sum_{k=0}^{(p-1)/2} C(p+2k, 4k+1) C(2k,k)^2 x^k mod p^2, in integers.

    Example:
        >>> thm3_binomial_sum(5, 1).value
        0
    """
    require_prime(p, minimum=5)
    total = sum(thm3_binomial_term(p, k, x) for k in range((p - 1) // 2 + 1))
    return Residue.of(total, p * p)
