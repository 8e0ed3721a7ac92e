# =============================================================================
# Apery Congruences - Exact and Modular Arithmetic
# =============================================================================
# This module holds every arithmetic kernel the verifier is built on:
#
#   - Exact integers (Python int) and rationals (fractions.Fraction)
#   - Binomial coefficients with a row cache, factorials
#   - Residue: canonical residue class value mod m
#   - mod_pow / mod_inverse / legendre / sqrt_mod (Tonelli-Shanks)
#   - ValuatedResidue: u * p^e mod p^w with the valuation tracked apart
#   - PAdicTerm: exact running product of rationals (exponent + unit)
#   - LucasState / lucas_u: the sequence u_{n+1} = (b - 2) u_n - u_{n-1}
#
# Everything here is pure. The only memoization (binomial rows) is an
# lru_cache whose fill is idempotent, so concurrent callers never observe
# a partially built row.
#
# Usage Example:
#   from apery_congruences.utils.exact_arith import binomial, mod_inverse
#   binomial(8, 4)              # 70
#   mod_inverse(3, 25).value    # 17
# =============================================================================

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

from apery_congruences.exceptions import (
    ArithmeticInputError,
    InvalidPrime,
    ModulusMismatch,
    NegativeValuation,
    NonResidue,
    NotInvertible,
)

# Configure module logger
logger = logging.getLogger(__name__)

# Rows up to this index are cached whole; larger n fall back to math.comb
# so a single C(10^5, 3) does not materialise a 10^5-entry row.
ROW_CACHE_LIMIT = 1024


# =============================================================================
# Binomials and factorials
# =============================================================================


@lru_cache(maxsize=ROW_CACHE_LIMIT + 1)
def _binomial_row(n: int) -> Tuple[int, ...]:
    """Row n of Pascal's triangle, built multiplicatively and symmetrically."""
    row = [1] * (n + 1)
    c = 1
    for k in range(1, n // 2 + 1):
        c = c * (n - k + 1) // k
        row[k] = c
        row[n - k] = c
    return tuple(row)


def binomial(n: int, k: int) -> int:
    """
    Exact binomial coefficient C(n, k).

    Args:
        n: Upper index, n >= 0
        k: Lower index, any integer

    Returns:
        C(n, k), or 0 when k < 0 or k > n

    Example:
        >>> binomial(8, 4)
        70
        >>> binomial(5, 7)
        0
    """
    if n < 0:
        raise ArithmeticInputError(f"binomial upper index must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    if n <= ROW_CACHE_LIMIT:
        return _binomial_row(n)[k]
    return math.comb(n, k)


def factorial(n: int) -> int:
    """Exact n! for n >= 0."""
    if n < 0:
        raise ArithmeticInputError(f"factorial of negative number {n}")
    return math.factorial(n)


def p_adic_valuation(n: int, p: int) -> Tuple[int, int]:
    """
    Split a nonzero integer into its power of p and the p-free cofactor.

    Args:
        n: Nonzero integer (sign is kept on the cofactor)
        p: Prime

    Returns:
        (e, c) with n == c * p**e and p not dividing c

    Raises:
        ArithmeticInputError: If n is zero (infinite valuation)
    """
    if n == 0:
        raise ArithmeticInputError("the p-adic valuation of 0 is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


# =============================================================================
# Residues
# =============================================================================


@dataclass(frozen=True)
class Residue:
    """
    A residue class modulo m in canonical form 0 <= value < m.

    Residues only combine with residues of the same modulus (or with plain
    ints, which are reduced first). Use Residue.of() to build one from an
    arbitrary integer.

    Attributes:
        value: Canonical representative in [0, modulus)
        modulus: Modulus, at least 2
    """

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ArithmeticInputError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ArithmeticInputError(
                f"residue {self.value} is not canonical mod {self.modulus}"
            )

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        """Reduce an arbitrary integer into canonical form."""
        if modulus < 2:
            raise ArithmeticInputError(f"modulus must be >= 2, got {modulus}")
        return cls(value % modulus, modulus)

    def _coerce(self, other: Union["Residue", int]) -> "Residue":
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(
                    f"cannot combine residues mod {self.modulus} and mod "
                    f"{other.modulus}"
                )
            return other
        return Residue.of(int(other), self.modulus)

    def __add__(self, other: Union["Residue", int]) -> "Residue":
        o = self._coerce(other)
        return Residue.of(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Union["Residue", int]) -> "Residue":
        o = self._coerce(other)
        return Residue.of(self.value - o.value, self.modulus)

    def __rsub__(self, other: int) -> "Residue":
        return self._coerce(other) - self

    def __mul__(self, other: Union["Residue", int]) -> "Residue":
        o = self._coerce(other)
        return Residue.of(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue.of(-self.value, self.modulus)

    def __pow__(self, exp: int) -> "Residue":
        return mod_pow(self.value, exp, self.modulus)

    def inverse(self) -> "Residue":
        """Multiplicative inverse; raises NotInvertible if none exists."""
        return mod_inverse(self.value, self.modulus)

    def signed(self) -> int:
        """Representative in (-m/2, m/2], handy for human-readable output."""
        if self.value > self.modulus // 2:
            return self.value - self.modulus
        return self.value

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with a*s + b*t == g == gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b != 0:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def mod_pow(base: int, exp: int, m: int) -> Residue:
    """
    base^exp mod m by square-and-multiply.

    Example:
        >>> mod_pow(2, 6, 49).value
        15
    """
    if exp < 0:
        raise ArithmeticInputError("mod_pow needs a nonnegative exponent")
    if m < 2:
        raise ArithmeticInputError(f"modulus must be >= 2, got {m}")
    result = 1
    b = base % m
    e = exp
    while e > 0:
        if e & 1:
            result = result * b % m
        b = b * b % m
        e >>= 1
    return Residue(result % m, m)


def mod_inverse(a: int, m: int) -> Residue:
    """
    The unique r in [0, m) with a*r == 1 (mod m), via the extended gcd.

    Raises:
        NotInvertible: If gcd(a, m) != 1

    Example:
        >>> mod_inverse(3, 25).value
        17
    """
    if m < 2:
        raise ArithmeticInputError(f"modulus must be >= 2, got {m}")
    g, s, _ = xgcd(a % m, m)
    if g != 1:
        raise NotInvertible(f"{a} has no inverse mod {m} (gcd {g})")
    return Residue.of(s, m)


def _require_odd_prime(p: int) -> None:
    # Local import: primes depends on this module for sqrt_mod.
    from apery_congruences.utils.primes import is_prime

    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidPrime(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """
    Legendre symbol (a/p) by Euler's criterion.

    Returns:
        0 if p divides a, 1 for a nonzero square mod p, -1 otherwise

    Raises:
        InvalidPrime: If p is not an odd prime

    Example:
        >>> legendre(-3, 5)
        -1
    """
    _require_odd_prime(p)
    r = a % p
    if r == 0:
        return 0
    euler = pow(r, (p - 1) // 2, p)
    return 1 if euler == 1 else -1


def sqrt_mod(a: int, p: int) -> Residue:
    """
    Square root of a modulo an odd prime p (Tonelli-Shanks).

    The smaller of the two roots t, p - t is returned.

    Raises:
        NonResidue: If legendre(a, p) != 1

    Example:
        >>> sqrt_mod(-2, 17).value
        7
    """
    if legendre(a, p) != 1:
        raise NonResidue(f"{a} is not a nonzero quadratic residue mod {p}")
    a %= p

    if p % 4 == 3:
        t = pow(a, (p + 1) // 4, p)
    else:
        # Factor p - 1 = q * 2^s with q odd
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        c = pow(z, q, p)
        t = pow(a, (q + 1) // 2, p)
        u = pow(a, q, p)
        m = s
        while u != 1:
            i, u2 = 0, u
            while u2 != 1:
                u2 = u2 * u2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            t = t * b % p
            c = b * b % p
            u = u * c % p
            m = i

    return Residue(min(t, p - t), p)


# =============================================================================
# Valuated residues
# =============================================================================


@dataclass(frozen=True)
class ValuatedResidue:
    """
    A value mod p^w stored as unit * p^e.

    The unit is only meaningful modulo p^(w - e). Once e reaches w the value
    is zero mod p^w; the valuation saturates at w and the unit is stored as 0.

    Attributes:
        p: The prime
        w: The window exponent (values live mod p^w)
        e: Valuation, 0 <= e <= w
        unit: In [0, p^(w - e)), coprime to p whenever e < w
    """

    p: int
    w: int
    e: int
    unit: int

    def __post_init__(self) -> None:
        if self.w < 1 or not 0 <= self.e <= self.w:
            raise ArithmeticInputError(
                f"bad valuation {self.e} for window {self.w}"
            )
        if self.e == self.w:
            if self.unit != 0:
                raise ArithmeticInputError("saturated valuation must store unit 0")
        elif not 0 <= self.unit < self.p ** (self.w - self.e) or (
            self.unit % self.p == 0
        ):
            raise ArithmeticInputError(
                f"unit {self.unit} is not a p-free residue mod "
                f"{self.p}^{self.w - self.e}"
            )

    @classmethod
    def zero(cls, p: int, w: int) -> "ValuatedResidue":
        """The zero element mod p^w."""
        return cls(p, w, w, 0)

    @classmethod
    def from_int(cls, n: int, p: int, w: int) -> "ValuatedResidue":
        """Valuated form of an integer."""
        return cls.from_parts(p, w, *p_adic_valuation(n, p)) if n else cls.zero(p, w)

    @classmethod
    def from_parts(cls, p: int, w: int, e: int, unit: int) -> "ValuatedResidue":
        """Build from a valuation and a p-free unit given to any precision."""
        if e < 0:
            raise NegativeValuation(f"valuation {e} is negative")
        if e >= w:
            return cls.zero(p, w)
        return cls(p, w, e, unit % p ** (w - e))

    @property
    def is_zero(self) -> bool:
        return self.e == self.w

    def _check(self, other: "ValuatedResidue") -> None:
        if (other.p, other.w) != (self.p, self.w):
            raise ModulusMismatch(
                f"cannot combine values mod {self.p}^{self.w} and "
                f"{other.p}^{other.w}"
            )

    def __mul__(self, other: "ValuatedResidue") -> "ValuatedResidue":
        self._check(other)
        e = self.e + other.e
        if e >= self.w:
            return ValuatedResidue.zero(self.p, self.w)
        return ValuatedResidue(
            self.p, self.w, e, self.unit * other.unit % self.p ** (self.w - e)
        )

    def __add__(self, other: "ValuatedResidue") -> "ValuatedResidue":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo, hi = (self, other) if self.e <= other.e else (other, self)
        # Align to the smaller valuation, then renormalise
        s = (lo.unit + hi.unit * self.p ** (hi.e - lo.e)) % self.p ** (
            self.w - lo.e
        )
        if s == 0:
            return ValuatedResidue.zero(self.p, self.w)
        extra, unit = p_adic_valuation(s, self.p)
        return ValuatedResidue.from_parts(self.p, self.w, lo.e + extra, unit)

    def __neg__(self) -> "ValuatedResidue":
        if self.is_zero:
            return self
        return ValuatedResidue(
            self.p, self.w, self.e, -self.unit % self.p ** (self.w - self.e)
        )

    def __sub__(self, other: "ValuatedResidue") -> "ValuatedResidue":
        return self + (-other)

    def to_residue(self) -> Residue:
        """Expand back into an ordinary residue mod p^w."""
        modulus = self.p**self.w
        return Residue.of(self.unit * self.p**self.e, modulus)


def valuated_from_rational(q: Fraction, p: int, w: int) -> ValuatedResidue:
    """
    Reduce a rational into ValuatedResidue form modulo p^w.

    The power of p is factored out of numerator and denominator and the
    p-free denominator part is inverted modulo p^(w - e).

    Args:
        q: Exact rational
        p: Prime
        w: Window exponent, 2 or 3

    Raises:
        NegativeValuation: If p divides the reduced denominator

    Example:
        >>> v = valuated_from_rational(Fraction(2, 3), 5, 2)
        >>> (v.e, v.unit)
        (0, 9)
    """
    if w not in (2, 3):
        raise ArithmeticInputError(f"window must be 2 or 3, got {w}")
    q = Fraction(q)
    if q == 0:
        return ValuatedResidue.zero(p, w)
    e_num, u_num = p_adic_valuation(q.numerator, p)
    e_den, u_den = p_adic_valuation(q.denominator, p)
    e = e_num - e_den
    if e < 0:
        raise NegativeValuation(f"{q} has p-adic valuation {e} at p={p}")
    if e >= w:
        return ValuatedResidue.zero(p, w)
    modulus = p ** (w - e)
    return ValuatedResidue(p, w, e, u_num * mod_inverse(u_den, modulus).value % modulus)


@dataclass(frozen=True)
class PAdicTerm:
    """
    Running product of rationals tracked as p^exponent * unit.

    The exponent is exact and unbounded in both directions; the unit is the
    p-free part of the product, exact modulo p^w. Because every factor's
    p-part is stripped exactly, ratios with p in the denominator are fine as
    long as the final product has nonnegative valuation.

    Attributes:
        p: The prime
        w: Unit precision exponent
        exponent: Exact p-adic valuation of the product
        unit: p-free part mod p^w
    """

    p: int
    w: int
    exponent: int
    unit: int

    @classmethod
    def one(cls, p: int, w: int) -> "PAdicTerm":
        return cls(p, w, 0, 1)

    @classmethod
    def from_int(cls, n: int, p: int, w: int) -> "PAdicTerm":
        e, u = p_adic_valuation(n, p)
        return cls(p, w, e, u % p**w)

    def times(self, num: int, den: int = 1) -> "PAdicTerm":
        """Multiply by num/den (both nonzero)."""
        modulus = self.p**self.w
        e_num, u_num = p_adic_valuation(num, self.p)
        e_den, u_den = p_adic_valuation(den, self.p)
        unit = self.unit * u_num * mod_inverse(u_den, modulus).value % modulus
        return PAdicTerm(self.p, self.w, self.exponent + e_num - e_den, unit)

    def to_valuated(self) -> ValuatedResidue:
        """Convert to a ValuatedResidue mod p^w (needs exponent >= 0)."""
        return ValuatedResidue.from_parts(self.p, self.w, self.exponent, self.unit)


# =============================================================================
# Lucas sequence
# =============================================================================


@dataclass(frozen=True)
class LucasState:
    """
    One position of u_0 = 0, u_1 = 1, u_{n+1} = (b - 2) u_n - u_{n-1}.

    Attributes:
        b: Parameter residue; its modulus is the ambient ring (p^2)
        index: n, the index of `curr`
        prev: u_{n-1} (u_{-1} = -1 makes the first step produce u_1 = 1)
        curr: u_n
    """

    b: Residue
    index: int
    prev: Residue
    curr: Residue

    @classmethod
    def start(cls, b: Residue) -> "LucasState":
        m = b.modulus
        # u_{-1} is chosen so that one step from u_0 = 0 yields u_1 = 1
        return cls(b, 0, Residue.of(-1, m), Residue.of(0, m))

    def step(self) -> "LucasState":
        nxt = (self.b - 2) * self.curr - self.prev
        return LucasState(self.b, self.index + 1, self.curr, nxt)


def lucas_u(n: int, b: Residue) -> Residue:
    """
    u_n of the Lucas-type sequence with parameter b, in b's ring.

    Example:
        >>> lucas_u(4, Residue.of(12, 25)).value
        5
    """
    if n < 0:
        raise ArithmeticInputError(f"lucas index must be >= 0, got {n}")
    state = LucasState.start(b)
    while state.index < n:
        state = state.step()
    return state.curr
