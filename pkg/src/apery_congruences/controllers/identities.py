# =============================================================================
# Apery Congruences - Identity Checks
# =============================================================================
# Exact verification of the binomial identities behind the congruences.
# Identities that are polynomial in x are compared coefficient by coefficient
# over Z[x]; identities with rational terms are compared in Fraction
# arithmetic. Every checker returns an IdentityVerdict.
#
# The Schmidt coefficients a_{m,k}^(r) are built here too: by the integer
# recursion over r, and by an independent exact linear solve used as oracle.
#
# IDENTITY_SUITES maps suite names to checkers plus their parameter grids;
# the sweep harness runs suites through it.
# =============================================================================

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from apery_congruences.controllers.sequences import apery_poly, schmidt_poly
from apery_congruences.exceptions import (
    IntegralityViolation,
    PoleInput,
    UnknownSuite,
)
from apery_congruences.models.polynomial import IntPolynomial
from apery_congruences.models.report import (
    IdentityVerdict,
    ParamValue,
    SchmidtCoeffTable,
)
from apery_congruences.utils.exact_arith import binomial, factorial
from apery_congruences.utils.validators import require_positive

# Configure module logger
logger = logging.getLogger(__name__)

Bounds = Mapping[str, Tuple[int, int]]
Params = Dict[str, ParamValue]


def _c(n: int, k: int) -> int:
    """
    C(n, k) for any integer n: zero for k < 0, polynomial in n otherwise.

    For n < 0 this is (-1)^k C(k - n - 1, k). The identities with an upper
    index l - m stay polynomial in l, so they hold for l < m too.
    """
    if k < 0:
        return 0
    if n >= 0:
        return binomial(n, k)
    return (-1) ** k * binomial(k - n - 1, k)


# =============================================================================
# Pfaff-Saalschutz specialisations and the alternating sums
# =============================================================================


def check_pfaff_special(ell: int, m: int) -> IdentityVerdict:
    """C(l,m) C(l+m,m) = sum_{k=0}^{m} C(2m,m+k) C(l-m,k) C(l+m+k,k)."""
    lhs = binomial(ell, m) * binomial(ell + m, m)
    rhs = sum(
        binomial(2 * m, m + k) * _c(ell - m, k) * binomial(ell + m + k, k)
        for k in range(m + 1)
    )
    return IdentityVerdict.compare("pfaff_special", {"ell": ell, "m": m}, lhs, rhs)


def _double_sum_poly(outer: int, inner: Callable[[int, int], int]) -> IntPolynomial:
    """sum_{m<outer} C(2m,m) x^m sum_{k<=m} C(m,k) C(m+k,k) inner(m,k)."""
    coeffs = []
    for m in range(outer):
        s = sum(
            binomial(m, k) * binomial(m + k, k) * inner(m, k) for k in range(m + 1)
        )
        coeffs.append(binomial(2 * m, m) * s)
    return IntPolynomial.from_coeffs(coeffs)


def check_square_expansion(ell: int) -> IdentityVerdict:
    """A_l(x) = sum_m C(2m,m) x^m sum_k C(m,k)C(m+k,k)C(l,m+k)C(l+m+k,m+k)."""
    rhs = _double_sum_poly(
        ell + 1,
        lambda m, k: binomial(ell, m + k) * binomial(ell + m + k, m + k),
    )
    return IdentityVerdict.compare(
        "square_expansion", {"ell": ell}, apery_poly(ell), rhs
    )


def check_alt_sum(n: int, k: int) -> IdentityVerdict:
    """
    sum_{l=k}^{n-1} (-1)^l (2l+1) C(l,k) C(l+k,k) = (-1)^(n-1) n C(n-1,k) C(n+k,k).
    """
    require_positive("n", n)
    lhs = sum(
        (-1) ** ell * (2 * ell + 1) * binomial(ell, k) * binomial(ell + k, k)
        for ell in range(k, n)
    )
    rhs = (-1) ** (n - 1) * n * binomial(n - 1, k) * binomial(n + k, k)
    return IdentityVerdict.compare("alt_sum", {"n": n, "k": k}, lhs, rhs)


def check_plus_sum(n: int, k: int) -> IdentityVerdict:
    """sum_{l=k}^{n-1} (2l+1) C(l,k) C(l+k,k) = n C(n,k+1) C(n+k,k)."""
    require_positive("n", n)
    lhs = sum(
        (2 * ell + 1) * binomial(ell, k) * binomial(ell + k, k) for ell in range(k, n)
    )
    rhs = n * binomial(n, k + 1) * binomial(n + k, k)
    return IdentityVerdict.compare("plus_sum", {"n": n, "k": k}, lhs, rhs)


def check_lem03(ell: int, m: int, n: int) -> IdentityVerdict:
    """
    C(l,n) C(l+n,n)
        = sum_{k=0}^{n} (m+n)! k! / ((m+k)! n!) C(m,n-k) C(l-m,k) C(l+m+k,k)

    evaluated in exact rationals.
    """
    lhs = Fraction(binomial(ell, n) * binomial(ell + n, n))
    rhs = sum(
        (
            Fraction(factorial(m + n) * factorial(k), factorial(m + k) * factorial(n))
            * binomial(m, n - k)
            * _c(ell - m, k)
            * binomial(ell + m + k, k)
            for k in range(n + 1)
        ),
        Fraction(0),
    )
    return IdentityVerdict.compare("lem03", {"ell": ell, "m": m, "n": n}, lhs, rhs)


def check_chu_vandermonde(m: int) -> IdentityVerdict:
    """sum_{k=0}^{m} (-1)^(m+k) C(m,k) C(m+k,k) = 1."""
    lhs = sum(
        (-1) ** (m + k) * binomial(m, k) * binomial(m + k, k) for k in range(m + 1)
    )
    return IdentityVerdict.compare("chu_vandermonde", {"m": m}, lhs, 1)


# =============================================================================
# Schmidt coefficients
# =============================================================================


@lru_cache(maxsize=256)
def schmidt_coeffs(r: int, m: int) -> SchmidtCoeffTable:
    """
    The integers a_{m,k}^(r), m <= k <= r*m, with

        C(l,m)^r C(l+m,m)^r = sum_k a_{m,k}^(r) C(l,k) C(l+k,k).

    r = 2 uses the closed form a_{m,m+k} = C(2m,m) C(m,k) C(m+k,k); higher r
    follow from

        a^(r+1)_{m,m+i} = sum_{k=m}^{rm} C(m+k,k) C(m,k-i) C(m+i,i) a^(r)_{m,k}

    for 0 <= i <= rm, where C(m, k-i) vanishes for k-i outside [0, m].

    The recursion only adds and multiplies integers, so there is no division
    to guard. Integrality of the coefficients is certified by
    check_schmidt_coeffs, which compares the row with schmidt_coeffs_oracle.
    The oracle solves over Q and raises IntegralityViolation on a fractional
    entry. SchmidtCoeffTable only accepts int entries.

    Raises:
        PreconditionError: If r < 2 or m < 0
    """
    require_positive("r", r, minimum=2)
    require_positive("m", m, minimum=0)
    row: List[int] = [
        binomial(2 * m, m) * binomial(m, k) * binomial(m + k, k) for k in range(m + 1)
    ]
    for s in range(2, r):
        # row[j] holds a^(s)_{m, m+j}
        row = [
            sum(
                binomial(m + k, k)
                * binomial(m, k - i)
                * binomial(m + i, i)
                * row[k - m]
                for k in range(m, s * m + 1)
            )
            for i in range(s * m + 1)
        ]
    return SchmidtCoeffTable(r=r, m=m, coefficients=row)


@lru_cache(maxsize=256)
def schmidt_coeffs_oracle(r: int, m: int) -> SchmidtCoeffTable:
    """
    a_{m,k}^(r) by solving the defining identity at l = m..rm.

    The matrix C(l,k) C(l+k,k) (rows l, columns k) is lower triangular with
    nonzero diagonal C(2l,l), so forward substitution in exact rationals
    gives the unique solution.

    Raises:
        IntegralityViolation: If the solution is not integral
    """
    require_positive("r", r, minimum=2)
    require_positive("m", m, minimum=0)
    solution: Dict[int, Fraction] = {}
    for ell in range(m, r * m + 1):
        target = Fraction((binomial(ell, m) * binomial(ell + m, m)) ** r)
        for k in range(m, ell):
            target -= solution[k] * binomial(ell, k) * binomial(ell + k, k)
        solution[ell] = target / binomial(2 * ell, ell)
    coefficients = []
    for k in range(m, r * m + 1):
        value = solution[k]
        if value.denominator != 1:
            raise IntegralityViolation(
                f"a^({r})_({m},{k}) = {value} is not an integer"
            )
        coefficients.append(value.numerator)
    return SchmidtCoeffTable(r=r, m=m, coefficients=coefficients)


def check_schmidt_coeffs(r: int, m: int) -> IdentityVerdict:
    """Recursion row against the linear-solve oracle, as polynomials in t."""
    rec = IntPolynomial.from_coeffs(schmidt_coeffs(r, m).coefficients)
    oracle = IntPolynomial.from_coeffs(schmidt_coeffs_oracle(r, m).coefficients)
    return IdentityVerdict.compare("schmidt_coeffs", {"r": r, "m": m}, rec, oracle)


def check_amkr(r: int, m: int, ell: int) -> IdentityVerdict:
    """C(l,m)^r C(l+m,m)^r = sum_{k=m}^{rm} a_{m,k}^(r) C(l,k) C(l+k,k)."""
    table = schmidt_coeffs(r, m)
    lhs = (binomial(ell, m) * binomial(ell + m, m)) ** r
    rhs = sum(
        table.coeff(k) * binomial(ell, k) * binomial(ell + k, k) for k in table.k_range
    )
    return IdentityVerdict.compare("amkr", {"r": r, "m": m, "ell": ell}, lhs, rhs)


def check_schmidt_quotient(r: int, n: int, eps: int) -> IdentityVerdict:
    """
    sum_{l<n} eps^l (2l+1) S_l^(r)(x) as n times an integer polynomial.

    eps = +1:  n sum_m x^m sum_k a_{m,k} C(n,k+1) C(n+k,k)
    eps = -1:  (-1)^(n-1) n sum_m x^m sum_k a_{m,k} C(n-1,k) C(n+k,k)
    """
    require_positive("n", n)
    lhs = IntPolynomial.zero()
    for ell in range(n):
        lhs = lhs + schmidt_poly(r, ell) * (eps**ell * (2 * ell + 1))

    coeffs = []
    for m in range(n):
        table = schmidt_coeffs(r, m)
        if eps == 1:
            c = sum(
                table.coeff(k) * binomial(n, k + 1) * binomial(n + k, k)
                for k in table.k_range
            )
        else:
            c = sum(
                table.coeff(k) * binomial(n - 1, k) * binomial(n + k, k)
                for k in table.k_range
            )
        coeffs.append(c)
    sign = 1 if eps == 1 else (-1) ** (n - 1)
    rhs = IntPolynomial.from_coeffs(coeffs) * (sign * n)
    return IdentityVerdict.compare(
        "schmidt_quotient", {"r": r, "n": n, "eps": eps}, lhs, rhs
    )


# =============================================================================
# Rational identities
# =============================================================================


def check_lagrange(m: int, x: Union[Fraction, int, str]) -> IdentityVerdict:
    """
    sum_{k=0}^{m} C(m,k) C(m+k,k) (-1)^(m-k) / (x+k) = (1/x) prod_{k=1}^{m} (x-k)/(x+k).

    Raises:
        PoleInput: If x is one of 0, -1, ..., -m
    """
    q = Fraction(x)
    if q.denominator == 1 and -m <= q <= 0:
        raise PoleInput(f"x = {q} is a pole for m = {m}")
    lhs = sum(
        (
            Fraction(binomial(m, k) * binomial(m + k, k) * (-1) ** (m - k)) / (q + k)
            for k in range(m + 1)
        ),
        Fraction(0),
    )
    rhs = 1 / q
    for k in range(1, m + 1):
        rhs *= (q - k) / (q + k)
    params: Params = {"m": m, "x": _encode_fraction(q)}
    return IdentityVerdict.compare("lagrange", params, lhs, rhs)


def check_half_integer(m: int) -> IdentityVerdict:
    """sum_k C(m,k) C(m+k,k) (-1)^(m-k) / (2m+2k+1) = (2m)!^3 / ((4m+1)! m!^2)."""
    lhs = sum(
        (
            Fraction(
                binomial(m, k) * binomial(m + k, k) * (-1) ** (m - k),
                2 * m + 2 * k + 1,
            )
            for k in range(m + 1)
        ),
        Fraction(0),
    )
    rhs = Fraction(factorial(2 * m) ** 3, factorial(4 * m + 1) * factorial(m) ** 2)
    return IdentityVerdict.compare("half_integer", {"m": m}, lhs, rhs)


def check_column_sum(n: int, m: int, k: int) -> IdentityVerdict:
    """sum_{l=m}^{n-1} C(l,m+k) C(l+m+k,m+k) = C(2m+2k,m+k) C(n+m+k,2m+2k+1)."""
    require_positive("n", n)
    j = m + k
    lhs = sum(binomial(ell, j) * binomial(ell + j, j) for ell in range(m, n))
    rhs = binomial(2 * j, j) * binomial(n + j, 2 * j + 1)
    return IdentityVerdict.compare("column_sum", {"n": n, "m": m, "k": k}, lhs, rhs)


# =============================================================================
# Polynomial identities behind the divisibility theorems
# =============================================================================


def check_thm1(n: int) -> IdentityVerdict:
    """
    sum_{k<n} (-1)^k (2k+1) A_k(x)
        = n (-1)^(n-1) sum_m C(2m,m) x^m sum_k C(m,k)C(m+k,k)C(n-1,m+k)C(n+m+k,m+k)

    over Z[x]; certifies coefficient-wise divisibility of the left side by n.
    """
    require_positive("n", n)
    lhs = IntPolynomial.zero()
    for k in range(n):
        lhs = lhs + apery_poly(k) * ((-1) ** k * (2 * k + 1))
    inner = _double_sum_poly(
        n, lambda m, k: binomial(n - 1, m + k) * binomial(n + m + k, m + k)
    )
    rhs = inner * ((-1) ** (n - 1) * n)
    return IdentityVerdict.compare(
        "thm1", {"n": n}, lhs, rhs, divisible_by_n=lhs.divisible_by(n)
    )


def check_apery_partial_sum(n: int) -> IdentityVerdict:
    """
    sum_{l<n} A_l(x)
        = sum_m C(2m,m) x^m sum_k C(m,k)C(m+k,k)C(2m+2k,m+k)C(n+m+k,2m+2k+1).
    """
    require_positive("n", n)
    lhs = IntPolynomial.zero()
    for ell in range(n):
        lhs = lhs + apery_poly(ell)
    rhs = _double_sum_poly(
        n,
        lambda m, k: binomial(2 * m + 2 * k, m + k)
        * binomial(n + m + k, 2 * m + 2 * k + 1),
    )
    return IdentityVerdict.compare("apery_partial_sum", {"n": n}, lhs, rhs)


def check_delannoy_integrality(n: int) -> IdentityVerdict:
    """(1/n) sum_{k<n} (2k+1) D_k(x) = sum_{k<n} C(n,k+1) C(n+k,k) x^k over Z[x]."""
    require_positive("n", n)
    total = IntPolynomial.zero()
    for k in range(n):
        total = total + schmidt_poly(1, k) * (2 * k + 1)
    rhs = IntPolynomial.from_coeffs(
        binomial(n, k + 1) * binomial(n + k, k) for k in range(n)
    )
    if not total.divisible_by(n):
        return IdentityVerdict(
            identity="delannoy_integrality",
            params={"n": n},
            lhs=total,
            rhs=rhs * n,
            passed=False,
            extra={"flags": ["not_divisible_by_n"]},
        )
    return IdentityVerdict.compare(
        "delannoy_integrality", {"n": n}, total.exact_div(n), rhs
    )


def _encode_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# =============================================================================
# Suite registry
# =============================================================================

GridFn = Callable[[Bounds, "SuiteOptions"], Iterator[Params]]


@dataclass(frozen=True)
class SuiteOptions:
    """Knobs for suites with sampled parameters."""

    seed: int = 20100
    samples: int = 10


@dataclass(frozen=True)
class IdentitySuite:
    """
    A named identity checker together with its parameter grid.

    Attributes:
        name: Suite name used on the command line
        checker: Function called with each parameter dict as keyword arguments
        axes: Parameter names in grid order (outermost first)
        defaults: Inclusive default bounds per axis
        grid_fn: Optional custom grid; the default is the plain product
    """

    name: str
    checker: Callable[..., IdentityVerdict]
    axes: Tuple[str, ...]
    defaults: Mapping[str, Tuple[int, int]]
    grid_fn: Optional[GridFn] = field(default=None)

    def resolve(self, bounds: Optional[Bounds] = None) -> Dict[str, Tuple[int, int]]:
        """Defaults overridden by the given bounds (unknown axes ignored)."""
        resolved = dict(self.defaults)
        for name, value in (bounds or {}).items():
            if name in self.axes or name in self.defaults:
                resolved[name] = value
        return resolved

    def grid(
        self, bounds: Optional[Bounds] = None, options: Optional[SuiteOptions] = None
    ) -> Iterator[Params]:
        """Parameter dicts in ascending order."""
        resolved = self.resolve(bounds)
        if self.grid_fn is not None:
            yield from self.grid_fn(resolved, options or SuiteOptions())
            return
        ranges = [range(resolved[a][0], resolved[a][1] + 1) for a in self.axes]
        for values in product(*ranges):
            yield dict(zip(self.axes, values))


def _triangle_grid(bounds: Bounds, options: SuiteOptions) -> Iterator[Params]:
    """(n, k) with 0 <= k <= n."""
    (n_lo, n_hi), (k_lo, k_hi) = bounds["n"], bounds["k"]
    for n in range(n_lo, n_hi + 1):
        for k in range(max(k_lo, 0), min(k_hi, n) + 1):
            yield {"n": n, "k": k}


def _column_grid(bounds: Bounds, options: SuiteOptions) -> Iterator[Params]:
    """(n, m, k) with m + k bounded by the upper m bound."""
    n_lo, n_hi = bounds["n"]
    m_lo, m_hi = bounds["m"]
    k_lo, k_hi = bounds["k"]
    for n in range(n_lo, n_hi + 1):
        for m in range(m_lo, m_hi + 1):
            for k in range(k_lo, min(k_hi, m_hi - m) + 1):
                yield {"n": n, "m": m, "k": k}


def _amkr_grid(bounds: Bounds, options: SuiteOptions) -> Iterator[Params]:
    """(r, m, l) with l over 2rm + 1 points unless l bounds are given."""
    (r_lo, r_hi), (m_lo, m_hi) = bounds["r"], bounds["m"]
    for r in range(r_lo, r_hi + 1):
        for m in range(m_lo, m_hi + 1):
            ell_lo, ell_hi = bounds.get("ell", (0, 2 * r * m))
            for ell in range(ell_lo, ell_hi + 1):
                yield {"r": r, "m": m, "ell": ell}


def _lagrange_grid(bounds: Bounds, options: SuiteOptions) -> Iterator[Params]:
    """(m, x) with seeded random non-pole rationals x."""
    m_lo, m_hi = bounds["m"]
    for m in range(m_lo, m_hi + 1):
        rng = random.Random(options.seed * 1000 + m)
        seen = set()
        while len(seen) < options.samples:
            q = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
            if q.denominator == 1 and -m <= q <= 0:
                continue
            seen.add(q)
        for q in sorted(seen):
            yield {"m": m, "x": _encode_fraction(q)}


def _signed_grid(bounds: Bounds, options: SuiteOptions) -> Iterator[Params]:
    """(r, n, eps) with eps in {+1, -1} only."""
    r_lo, r_hi = bounds["r"]
    n_lo, n_hi = bounds["n"]
    e_lo, e_hi = bounds["eps"]
    signs = [e for e in (1, -1) if e_lo <= e <= e_hi]
    for r in range(r_lo, r_hi + 1):
        for n in range(n_lo, n_hi + 1):
            for eps in signs:
                yield {"r": r, "n": n, "eps": eps}


IDENTITY_SUITES: Dict[str, IdentitySuite] = {
    suite.name: suite
    for suite in (
        IdentitySuite(
            "pfaff_special",
            check_pfaff_special,
            ("ell", "m"),
            {"ell": (0, 40), "m": (0, 40)},
        ),
        IdentitySuite(
            "square_expansion", check_square_expansion, ("ell",), {"ell": (0, 40)}
        ),
        IdentitySuite(
            "alt_sum",
            check_alt_sum,
            ("n", "k"),
            {"n": (1, 60), "k": (0, 60)},
            _triangle_grid,
        ),
        IdentitySuite(
            "plus_sum",
            check_plus_sum,
            ("n", "k"),
            {"n": (1, 60), "k": (0, 60)},
            _triangle_grid,
        ),
        IdentitySuite(
            "lem03",
            check_lem03,
            ("ell", "m", "n"),
            {"ell": (0, 20), "m": (0, 20), "n": (0, 20)},
        ),
        IdentitySuite(
            "schmidt_coeffs",
            check_schmidt_coeffs,
            ("r", "m"),
            {"r": (2, 5), "m": (0, 12)},
        ),
        IdentitySuite(
            "amkr",
            check_amkr,
            ("r", "m", "ell"),
            {"r": (2, 5), "m": (0, 12)},
            _amkr_grid,
        ),
        IdentitySuite(
            "lagrange", check_lagrange, ("m", "x"), {"m": (0, 15)}, _lagrange_grid
        ),
        IdentitySuite("half_integer", check_half_integer, ("m",), {"m": (0, 30)}),
        IdentitySuite(
            "column_sum",
            check_column_sum,
            ("n", "m", "k"),
            {"n": (1, 40), "m": (0, 20), "k": (0, 20)},
            _column_grid,
        ),
        IdentitySuite("thm1", check_thm1, ("n",), {"n": (1, 60)}),
        IdentitySuite(
            "delannoy_integrality",
            check_delannoy_integrality,
            ("n",),
            {"n": (1, 60)},
        ),
        IdentitySuite(
            "chu_vandermonde", check_chu_vandermonde, ("m",), {"m": (0, 40)}
        ),
        IdentitySuite(
            "apery_partial_sum", check_apery_partial_sum, ("n",), {"n": (1, 40)}
        ),
        IdentitySuite(
            "schmidt_quotient",
            check_schmidt_quotient,
            ("r", "n", "eps"),
            {"r": (2, 4), "n": (1, 30), "eps": (-1, 1)},
            _signed_grid,
        ),
    )
}


def get_suite(name: str) -> IdentitySuite:
    """Look up a suite by name; raises UnknownSuite."""
    try:
        return IDENTITY_SUITES[name]
    except KeyError:
        raise UnknownSuite(
            f"Unknown identity suite '{name}'. "
            f"Known: {', '.join(sorted(IDENTITY_SUITES))}"
        ) from None
