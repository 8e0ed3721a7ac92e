# =============================================================================
# Apery Congruences - Integer Polynomials
# =============================================================================
# A small dense polynomial type over Z, enough to compare both sides of the
# identities that are polynomial in x coefficient by coefficient.
#
# Usage Example:
#   a2 = IntPolynomial.from_coeffs([1, 36, 36])      # A_2(x)
#   a2.evaluate(1)                                   # 73
#   (a2 * 2).exact_div(2) == a2                      # True
# =============================================================================

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class IntPolynomial:
    """
    Dense polynomial c_0 + c_1 x + ... + c_d x^d with integer coefficients.

    The coefficient tuple never ends in zero, so the zero polynomial is the
    empty tuple and equality is plain coefficient-wise comparison.

    Attributes:
        coeffs: (c_0, ..., c_d), trailing zeros removed
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        return cls(_trim(list(coeffs)))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def monomial(cls, c: int, k: int) -> "IntPolynomial":
        """c * x^k."""
        return cls.from_coeffs([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial.from_coeffs(
            self.coeff(i) + other.coeff(i) for i in range(n)
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial.from_coeffs(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.from_coeffs(out)

    __rmul__ = __mul__

    def divisible_by(self, n: int) -> bool:
        """True if every coefficient is divisible by the integer n."""
        return all(c % n == 0 for c in self.coeffs)

    def exact_div(self, n: int) -> "IntPolynomial":
        """Divide every coefficient by n; raises ValueError if not exact."""
        if not self.divisible_by(n):
            raise ValueError(f"polynomial is not divisible by {n}")
        return IntPolynomial(tuple(c // n for c in self.coeffs))

    def evaluate(self, x: int) -> int:
        """Horner evaluation at an integer point."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c != 0
        )
