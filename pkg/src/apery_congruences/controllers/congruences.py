# =============================================================================
# Apery Congruences - Congruence Checks
# =============================================================================
# One verify_* function per congruence. Each returns a CongruenceReport
# whose lhs / rhs are canonical residues.
#
# Two evaluation paths:
#   - EXACT: sums are formed in Python ints and reduced at the end. Where a
#     statement is about S/p, S is divided exactly (p must divide it).
#   - FAST:  sums are accumulated modulo p^w. Terms are advanced by their
#     rational term ratio inside a PAdicTerm, so ratios whose denominators
#     contain p are handled exactly.
#
# The harness evaluates checks through the CHECKS registry, which knows each
# check's parameter axes, whether it is a theorem or a conjecture, and
# whether a fast path exists.
# =============================================================================

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Tuple

from apery_congruences.controllers.sequences import (
    apery_partial_sum,
    central_binomial_stream,
    central_binomial_sum,
    central_binomial_term,
    thm3_binomial_sum,
    thm3_rational_terms,
    weighted_sum_exact,
)
from apery_congruences.exceptions import (
    DivisibilityFailure,
    InternalInconsistency,
    LimitExceeded,
    NegativeValuation,
    PreconditionError,
    UnknownCheck,
)
from apery_congruences.models.report import (
    CheckKind,
    CongruenceReport,
    ParamValue,
    PathTag,
)
from apery_congruences.models.sums import Family, SumSpec, Weight
from apery_congruences.utils.exact_arith import (
    PAdicTerm,
    Residue,
    ValuatedResidue,
    legendre,
    lucas_u,
    mod_inverse,
)
from apery_congruences.utils.primes import represent_x2_2y2
from apery_congruences.utils.validators import require_positive, require_prime

# Configure module logger
logger = logging.getLogger(__name__)

DEFAULT_PRIME_POWER_LIMIT = 10_000


# =============================================================================
# Fast kernels (mod p^w)
# =============================================================================


def _valuated(term: PAdicTerm) -> ValuatedResidue:
    try:
        return term.to_valuated()
    except NegativeValuation as e:
        raise InternalInconsistency(f"integral term came out with {e}") from e


def central_binomial_sum_fast(N: int, x: int, p: int, w: int) -> Residue:
    """
    sum_{k=0}^{N-1} C(2k,k) x^k mod p^w without big integers.

    The term ratio is 2(2k+1) x / (k+1).

    Example:
        >>> central_binomial_sum_fast(5, -2, 5, 2).value
        6
    """
    require_positive("N", N)
    if x == 0:
        return Residue.of(1, p**w)
    acc = ValuatedResidue.zero(p, w)
    term = PAdicTerm.one(p, w)
    for k in range(N):
        acc = acc + _valuated(term)
        if k + 1 < N:
            term = term.times(2 * (2 * k + 1) * x, k + 1)
    return acc.to_residue()


def thm3_binomial_sum_fast(p: int, x: int) -> Residue:
    """
    sum_{k=0}^{(p-1)/2} C(p+2k, 4k+1) C(2k,k)^2 x^k mod p^2.

    T_0 = p and
    T_{k+1} / T_k = (p^2-(2k+1)^2)(p^2-(2k+2)^2)(2k+1) x
                    / (2(k+1)^3 (4k+3)(4k+5)).
    """
    require_prime(p, minimum=5)
    if x == 0:
        return Residue.of(p, p * p)
    half = (p - 1) // 2
    acc = ValuatedResidue.zero(p, 2)
    term = PAdicTerm.from_int(p, p, 2)
    for k in range(half + 1):
        acc = acc + _valuated(term)
        if k < half:
            num = (p * p - (2 * k + 1) ** 2) * (p * p - (2 * k + 2) ** 2) * (2 * k + 1)
            den = 2 * (k + 1) ** 3 * (4 * k + 3) * (4 * k + 5)
            term = term.times(num * x, den)
    return acc.to_residue()


def thm3_rational_sum_fast(p: int, x: int) -> Residue:
    """
    sum_{k=0}^{p-1} (2k)!^4 p / ((4k+1)! k!^4) x^k mod p^2.

    T_0 = p and T_{k+1} / T_k = 2(2k+1)^3 x / ((k+1)(4k+3)(4k+5)).
    """
    require_prime(p, minimum=5)
    if x == 0:
        return Residue.of(p, p * p)
    acc = ValuatedResidue.zero(p, 2)
    term = PAdicTerm.from_int(p, p, 2)
    for k in range(p):
        acc = acc + _valuated(term)
        if k + 1 < p:
            term = term.times(
                2 * (2 * k + 1) ** 3 * x, (k + 1) * (4 * k + 3) * (4 * k + 5)
            )
    return acc.to_residue()


# =============================================================================
# Helpers
# =============================================================================


def _alternating_apery_sum(n: int, x: int) -> int:
    """sum_{k<n} (-1)^k (2k+1) A_k(x), exact."""
    return weighted_sum_exact(
        SumSpec(family=Family.APERY, weight=Weight.ODD, eps=-1, n=n, x=x)
    )


def _exact_quotient(total: int, p: int, check: str) -> int:
    if total % p != 0:
        raise DivisibilityFailure(f"{check}: {p} does not divide {total}")
    return total // p


def _alternating_quotient(p: int, x: int, w: int, path: PathTag, check: str) -> int:
    """
    S/p mod p^w with S the alternating Apery sum over k < p.

    The fast path uses S/p == sum_{k<p} C(2k,k) x^k (mod p^2), so w <= 2.
    """
    if path is PathTag.FAST:
        return central_binomial_sum_fast(p, x, p, 2).value % p**w
    return _exact_quotient(_alternating_apery_sum(p, x), p, check) % p**w


def _check_limit(p: int, a: int, limit: int) -> int:
    require_positive("a", a)
    if p**a > limit:
        raise LimitExceeded(f"{p}^{a} exceeds the prime power limit {limit}")
    return p**a


def _central_sum(N: int, x: int, p: int, w: int, path: PathTag) -> int:
    if path is PathTag.FAST:
        return central_binomial_sum_fast(N, x, p, w).value
    return central_binomial_sum(N, x, p**w).value


def _one_minus_four_thirds_fermat(p: int, modulus: int) -> int:
    """1 - (4/3)(2^(p-1) - 1) in Z / modulus."""
    four_thirds = 4 * mod_inverse(3, modulus).value
    return (1 - four_thirds * (pow(2, p - 1, modulus) - 1)) % modulus


# =============================================================================
# Divisibility theorems (axis n)
# =============================================================================


def verify_sun_apery(n: int, x: int) -> CongruenceReport:
    """sum_{k<n} (2k+1) A_k(x) == 0 (mod n)."""
    require_positive("n", n)
    total = weighted_sum_exact(
        SumSpec(family=Family.APERY, weight=Weight.ODD, n=n, x=x)
    )
    return CongruenceReport.compare("sun_apery", {"n": n, "x": x}, n, total, 0)


def verify_thm_main_i(n: int, x: int) -> CongruenceReport:
    """sum_{k<n} (-1)^k (2k+1) A_k(x) == 0 (mod n)."""
    require_positive("n", n)
    total = _alternating_apery_sum(n, x)
    return CongruenceReport.compare("thm_main_i", {"n": n, "x": x}, n, total, 0)


def verify_schmidt(r: int, n: int, x: int, eps: int) -> CongruenceReport:
    """sum_{k<n} eps^k (2k+1) S_k^(r)(x) == 0 (mod n)."""
    require_positive("r", r, minimum=2)
    require_positive("n", n)
    total = weighted_sum_exact(
        SumSpec(family=Family.SCHMIDT, r=r, weight=Weight.ODD, eps=eps, n=n, x=x)
    )
    params: Dict[str, ParamValue] = {"n": n, "r": r, "x": x, "eps": eps}
    return CongruenceReport.compare("schmidt", params, n, total, 0)


def verify_thm43(
    r: int, n: int, x: int, a: int, eps: int, variant: str
) -> CongruenceReport:
    """
    Weighted Schmidt sums divisible by n.

    variant "kk1":       sum eps^k (2k+1) k^a (k+1)^a S_k^(r)(x) == 0 (mod n)
    variant "odd_power": sum eps^k (2k+1)^(2a+1) S_k^(r)(x)      == 0 (mod n)
    """
    require_positive("r", r, minimum=2)
    require_positive("n", n)
    try:
        weight = Weight(variant)
    except ValueError:
        raise PreconditionError(f"unknown variant '{variant}'") from None
    if weight not in (Weight.KK1, Weight.ODD_POWER):
        raise PreconditionError(f"unknown variant '{variant}'")
    total = weighted_sum_exact(
        SumSpec(family=Family.SCHMIDT, r=r, weight=weight, a=a, eps=eps, n=n, x=x)
    )
    params: Dict[str, ParamValue] = {
        "n": n,
        "r": r,
        "x": x,
        "a": a,
        "eps": eps,
        "variant": weight.value,
    }
    return CongruenceReport.compare("thm43", params, n, total, 0)


def verify_conj44(r: int, n: int, x: int, m: int, eps: int) -> CongruenceReport:
    """sum_{k<n} (2k+1) eps^k S_k^(r)(x)^m == 0 (mod n); a conjecture."""
    require_positive("r", r, minimum=2)
    require_positive("n", n)
    require_positive("m", m)
    total = weighted_sum_exact(
        SumSpec(family=Family.SCHMIDT, r=r, weight=Weight.ODD, eps=eps, m=m, n=n, x=x)
    )
    params: Dict[str, ParamValue] = {"n": n, "r": r, "x": x, "m": m, "eps": eps}
    return CongruenceReport.compare(
        "conj44", params, n, total, 0, kind=CheckKind.CONJECTURE
    )


# =============================================================================
# Congruences modulo p, p^2 and p^3 (axis p)
# =============================================================================


def verify_thm_main_ii(
    p: int, x: int, path: PathTag = PathTag.EXACT
) -> CongruenceReport:
    """S/p == (1-4x / p) (mod p), S = sum_{k<p} (-1)^k (2k+1) A_k(x)."""
    require_prime(p)
    lhs = _alternating_quotient(p, x, 1, path, "thm_main_ii")
    rhs = legendre(1 - 4 * x, p)
    return CongruenceReport.compare(
        "thm_main_ii", {"p": p, "x": x}, p, lhs, rhs, path=path
    )


def verify_thm_main_iii_apery(
    p: int, path: PathTag = PathTag.EXACT
) -> CongruenceReport:
    """
    S/p == (p/3) (mod p^2) at x = 1.

    (p/3) is legendre(p mod 3, 3). p = 3 is accepted and flagged.
    """
    require_prime(p)
    lhs = _alternating_quotient(p, 1, 2, path, "thm_main_iii_apery")
    rhs = legendre(p % 3, 3)
    extra: Dict[str, Any] = {"flags": ["p3_advisory"]} if p == 3 else {}
    return CongruenceReport.compare(
        "thm_main_iii_apery", {"p": p}, p * p, lhs, rhs, path=path, **extra
    )


def verify_thm_main_iii_minus2(
    p: int, path: PathTag = PathTag.EXACT
) -> CongruenceReport:
    """S/p == 1 - (4/3)(2^(p-1) - 1) (mod p^2) at x = -2, p > 3."""
    require_prime(p, minimum=5)
    lhs = _alternating_quotient(p, -2, 2, path, "thm_main_iii_minus2")
    rhs = _one_minus_four_thirds_fermat(p, p * p)
    return CongruenceReport.compare(
        "thm_main_iii_minus2", {"p": p}, p * p, lhs, rhs, path=path
    )


def verify_thm2(p: int, x: int, path: PathTag = PathTag.EXACT) -> CongruenceReport:
    """
    S == p * sum_{k<p} C(2k,k) x^k (mod p^3).

    The left side is always the exact alternating Apery sum; the fast path
    only replaces the central binomial sum on the right.
    """
    require_prime(p)
    total = _alternating_apery_sum(p, x)
    _exact_quotient(total, p, "thm2")
    central = _central_sum(p, x, p, 2, path)
    return CongruenceReport.compare(
        "thm2", {"p": p, "x": x}, p**3, total, p * central, path=path
    )


def verify_lemma31(
    p: int,
    a: int,
    x: int,
    limit: int = DEFAULT_PRIME_POWER_LIMIT,
    path: PathTag = PathTag.EXACT,
) -> CongruenceReport:
    """sum_{k<p^a} C(2k,k) x^k == (1-4x / p)^a (mod p)."""
    require_prime(p)
    N = _check_limit(p, a, limit)
    lhs = _central_sum(N, x, p, 1, path)
    rhs = legendre(1 - 4 * x, p) ** a
    return CongruenceReport.compare(
        "lemma31", {"p": p, "a": a, "x": x}, p, lhs, rhs, path=path
    )


def verify_ppsun(
    p: int,
    a: int,
    x: int,
    limit: int = DEFAULT_PRIME_POWER_LIMIT,
    path: PathTag = PathTag.EXACT,
) -> CongruenceReport:
    """
    sum_{k<p^a} C(2k,k) x^k == L^a + L^(a-1) u_{p-L} (mod p^2)

    with b = x^{-1} mod p^2, L = (1-4x / p) and u the Lucas sequence with
    parameter b. L = 0 with a >= 2 is reported as skipped.

    Raises:
        NotInvertible: If p divides x
        LimitExceeded: If p^a > limit
    """
    require_prime(p)
    N = _check_limit(p, a, limit)
    modulus = p * p
    b = mod_inverse(x, modulus)
    L = legendre(1 - 4 * x, p)
    params: Dict[str, ParamValue] = {"p": p, "a": a, "x": x}
    if L == 0 and a >= 2:
        return CongruenceReport.skipped(
            "ppsun", params, "excluded_zero_symbol", path=path
        )
    u = lucas_u(p - L, b)
    rhs = L**a + L ** (a - 1) * u.value
    lhs = _central_sum(N, x, p, 2, path)
    return CongruenceReport.compare(
        "ppsun", params, modulus, lhs, rhs, path=path, L=L, b=b.value, u=u.value
    )


def verify_conj4_p3(p: int, path: PathTag = PathTag.EXACT) -> CongruenceReport:
    """sum_{k<p} C(2k,k) (-2)^k == 1 - (4/3)(2^(p-1) - 1) (mod p^3), p > 3."""
    require_prime(p, minimum=5)
    modulus = p**3
    lhs = _central_sum(p, -2, p, 3, path)
    rhs = _one_minus_four_thirds_fermat(p, modulus)
    return CongruenceReport.compare("conj4_p3", {"p": p}, modulus, lhs, rhs, path=path)


def verify_st_central(
    p: int,
    a: int,
    limit: int = DEFAULT_PRIME_POWER_LIMIT,
    path: PathTag = PathTag.EXACT,
) -> CongruenceReport:
    """sum_{k<p^a} C(2k,k) == (p^a / 3) (mod p^2)."""
    require_prime(p)
    N = _check_limit(p, a, limit)
    lhs = _central_sum(N, 1, p, 2, path)
    rhs = legendre(N % 3, 3)
    return CongruenceReport.compare(
        "st_central", {"p": p, "a": a}, p * p, lhs, rhs, path=path
    )


def verify_central_stream(
    p: int, x: int, path: PathTag = PathTag.EXACT
) -> CongruenceReport:
    """
    The incremental central binomial stream against from-scratch terms, mod p^2.

    The right side always recomputes every C(2k,k) x^k independently.
    """
    require_prime(p)
    modulus = p * p
    if path is PathTag.FAST:
        lhs = central_binomial_sum_fast(p, x, p, 2).value
    else:
        lhs = sum(central_binomial_stream(p, x)) % modulus
    rhs = sum(central_binomial_term(k, x) for k in range(p))
    return CongruenceReport.compare(
        "central_stream", {"p": p, "x": x}, modulus, lhs, rhs, path=path
    )


def verify_thm3(p: int, x: int, path: PathTag = PathTag.EXACT) -> CongruenceReport:
    """
    sum_{k<p} A_k(x) == rational single sum == binomial single sum (mod p^2).

    Exact path: lhs is the Apery partial sum; the rational sum must agree
    with the binomial sum and its terms beyond (p-1)/2 must vanish.
    Fast path: lhs is the rational single sum, rhs the binomial single sum,
    both from the mod p^2 kernels.

    Raises:
        InternalInconsistency: If the two single sums disagree, or a tail
            term of the rational sum is nonzero
    """
    require_prime(p, minimum=5)
    modulus = p * p
    if path is PathTag.FAST:
        rational = thm3_rational_sum_fast(p, x).value
        binomial_sum = thm3_binomial_sum_fast(p, x).value
        lhs = rational
    else:
        terms = thm3_rational_terms(p, x)
        half = (p - 1) // 2
        for k in range(half + 1, p):
            if not terms[k].is_zero:
                raise InternalInconsistency(
                    f"rational term k={k} does not vanish mod {p}^2"
                )
        acc = ValuatedResidue.zero(p, 2)
        for term in terms:
            acc = acc + term
        rational = acc.to_residue().value
        binomial_sum = thm3_binomial_sum(p, x).value
        if rational != binomial_sum:
            raise InternalInconsistency(
                f"single sums disagree mod {p}^2: {rational} != {binomial_sum}"
            )
        lhs = apery_partial_sum(p, x)
    return CongruenceReport.compare(
        "thm3",
        {"p": p, "x": x},
        modulus,
        lhs,
        binomial_sum,
        path=path,
        rational=rational,
        binomial=binomial_sum,
    )


def _rep_target(p: int) -> Tuple[int, Dict[str, Any]]:
    """4x^2 - 2p if p = x^2 + 2y^2 (x > 0), else 0, plus the report extras."""
    rep = represent_x2_2y2(p)
    if rep.representable:
        assert rep.x is not None
        return 4 * rep.x * rep.x - 2 * p, {
            "rep": {"x": rep.x, "y": rep.y},
            "flags": ["x_canonical_positive"],
        }
    return 0, {"rep": None}


def verify_conj12(p: int, path: PathTag = PathTag.EXACT) -> CongruenceReport:
    """
    sum_{k<p} A_k == 4x^2 - 2p (mod p^2) if p = x^2 + 2y^2, else == 0.

    The fast path reads the sum off the binomial single sum, which needs
    p > 3; p = 3 is always evaluated exactly.
    """
    require_prime(p)
    modulus = p * p
    rhs, extra = _rep_target(p)
    used = path
    if path is PathTag.FAST and p > 3:
        lhs = thm3_binomial_sum_fast(p, 1).value
    else:
        if path is PathTag.FAST:
            used = PathTag.EXACT
            extra["flags"] = extra.get("flags", []) + ["fast_unavailable"]
        lhs = apery_partial_sum(p, 1)
    return CongruenceReport.compare(
        "conj12",
        {"p": p},
        modulus,
        lhs,
        rhs,
        path=used,
        kind=CheckKind.CONJECTURE,
        **extra,
    )


def verify_cor15(p: int, path: PathTag = PathTag.EXACT) -> CongruenceReport:
    """The conj12 case split with the binomial single sum at x = 1 on the left."""
    require_prime(p, minimum=5)
    rhs, extra = _rep_target(p)
    if path is PathTag.FAST:
        lhs = thm3_binomial_sum_fast(p, 1).value
    else:
        lhs = thm3_binomial_sum(p, 1).value
    return CongruenceReport.compare(
        "cor15",
        {"p": p},
        p * p,
        lhs,
        rhs,
        path=path,
        kind=CheckKind.CONJECTURE,
        **extra,
    )


# =============================================================================
# Check registry
# =============================================================================


class Axis(str, Enum):
    """Outermost parameter of a check."""

    PRIME = "p"
    N = "n"


@dataclass(frozen=True)
class CheckDefinition:
    """
    Registry entry for one congruence check.

    Attributes:
        check_id: Name used on the command line and in records
        func: The verify_* function
        axis: Outer axis (primes or n)
        params: Inner parameter names, in grid order
        kind: theorem or conjecture
        has_fast: Whether a fast mod p^w path exists
        uses_limit: Whether p^a is bounded by the prime power limit
    """

    check_id: str
    func: Callable[..., CongruenceReport]
    axis: Axis
    params: Tuple[str, ...]
    kind: CheckKind = CheckKind.THEOREM
    has_fast: bool = False
    uses_limit: bool = False

    def evaluate(
        self,
        params: Dict[str, ParamValue],
        path: PathTag = PathTag.EXACT,
        limit: int = DEFAULT_PRIME_POWER_LIMIT,
    ) -> CongruenceReport:
        """Call the verify function with a parameter dict from the grid."""
        kwargs: Dict[str, Any] = dict(params)
        if self.has_fast:
            kwargs["path"] = path
        elif path is not PathTag.EXACT:
            raise PreconditionError(f"{self.check_id} has no fast path")
        if self.uses_limit:
            kwargs["limit"] = limit
        report = self.func(**kwargs)
        logger.debug("%s %s -> %s", self.check_id, params, report.outcome.value)
        return report


_P, _N = Axis.PRIME, Axis.N
_CONJ = CheckKind.CONJECTURE

CHECKS: Dict[str, CheckDefinition] = {
    c.check_id: c
    for c in (
        CheckDefinition("sun_apery", verify_sun_apery, _N, ("x",)),
        CheckDefinition("thm_main_i", verify_thm_main_i, _N, ("x",)),
        CheckDefinition("thm_main_ii", verify_thm_main_ii, _P, ("x",), has_fast=True),
        CheckDefinition(
            "thm_main_iii_apery", verify_thm_main_iii_apery, _P, (), has_fast=True
        ),
        CheckDefinition(
            "thm_main_iii_minus2", verify_thm_main_iii_minus2, _P, (), has_fast=True
        ),
        CheckDefinition("thm2", verify_thm2, _P, ("x",), has_fast=True),
        CheckDefinition(
            "lemma31", verify_lemma31, _P, ("a", "x"), has_fast=True, uses_limit=True
        ),
        CheckDefinition(
            "ppsun", verify_ppsun, _P, ("a", "x"), has_fast=True, uses_limit=True
        ),
        CheckDefinition("conj4_p3", verify_conj4_p3, _P, (), has_fast=True),
        CheckDefinition("thm3", verify_thm3, _P, ("x",), has_fast=True),
        CheckDefinition("conj12", verify_conj12, _P, (), kind=_CONJ, has_fast=True),
        CheckDefinition("cor15", verify_cor15, _P, (), kind=_CONJ, has_fast=True),
        CheckDefinition("schmidt", verify_schmidt, _N, ("r", "x", "eps")),
        CheckDefinition(
            "thm43", verify_thm43, _N, ("r", "x", "a", "eps", "variant")
        ),
        CheckDefinition(
            "conj44", verify_conj44, _N, ("r", "x", "m", "eps"), kind=_CONJ
        ),
        CheckDefinition(
            "st_central", verify_st_central, _P, ("a",), has_fast=True, uses_limit=True
        ),
        CheckDefinition(
            "central_stream", verify_central_stream, _P, ("x",), has_fast=True
        ),
    )
}

# Short names accepted by the scan subcommand
CONJECTURE_ALIASES = {
    "1.2": "conj12",
    "4.4": "conj44",
    "conj12": "conj12",
    "conj44": "conj44",
}


def get_check(check_id: str) -> CheckDefinition:
    """Look up a check by id; raises UnknownCheck."""
    try:
        return CHECKS[check_id]
    except KeyError:
        raise UnknownCheck(
            f"Unknown check '{check_id}'. Known: {', '.join(sorted(CHECKS))}"
        ) from None
