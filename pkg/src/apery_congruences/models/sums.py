# =============================================================================
# Apery Congruences - Weighted Sum Specification
# =============================================================================
# SumSpec describes one weighted partial sum
#
#     sum_{k=0}^{n-1} eps^k * weight(k) * family_k(x)^m
#
# which covers the plain Apery sum, its alternating variant, the Schmidt
# generalisations with (2k+1)^(2a+1) or (2k+1) k^a (k+1)^a weights and the
# powered sums of the Schmidt conjecture.
#
# Key Features:
#   - Family: apery | schmidt(r) | delannoy | central_binomial
#   - Weight: none | 2k+1 | (2k+1)^(2a+1) | (2k+1) k^a (k+1)^a
#   - Validation: r >= 1, a >= 0, m >= 1, eps in {+1, -1}
# =============================================================================

from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Family(str, Enum):
    """The sequence whose terms are summed."""

    APERY = "apery"
    SCHMIDT = "schmidt"
    DELANNOY = "delannoy"
    CENTRAL_BINOMIAL = "central_binomial"


class Weight(str, Enum):
    """Weight applied to the k-th term."""

    NONE = "none"
    ODD = "odd"  # 2k+1
    ODD_POWER = "odd_power"  # (2k+1)^(2a+1)
    KK1 = "kk1"  # (2k+1) * k^a * (k+1)^a

    def value_at(self, k: int, a: int) -> int:
        """weight(k) for exponent a."""
        if self is Weight.NONE:
            return 1
        if self is Weight.ODD:
            return 2 * k + 1
        if self is Weight.ODD_POWER:
            return (2 * k + 1) ** (2 * a + 1)
        return (2 * k + 1) * k**a * (k + 1) ** a


class SumSpec(BaseModel):
    """
    One weighted partial sum over k = 0..n-1.

    Attributes:
        family: Sequence family
        r: Schmidt exponent (required for the schmidt family, r >= 1)
        weight: Weight kind
        a: Exponent used by the odd_power and kk1 weights
        eps: Sign; the k-th term is multiplied by eps^k
        m: Power applied to the family term before weighting
        n: Number of terms
        x: Integer argument
    """

    model_config = ConfigDict(frozen=True)

    family: Family
    r: Optional[int] = Field(default=None, ge=1)
    weight: Weight = Weight.NONE
    a: int = Field(default=0, ge=0)
    eps: Literal[1, -1] = 1
    m: int = Field(default=1, ge=1)
    n: int = Field(..., ge=0)
    x: int = 0

    @model_validator(mode="after")
    def check_family_exponent(self) -> "SumSpec":
        if self.family is Family.SCHMIDT and self.r is None:
            raise ValueError("the schmidt family needs an exponent r")
        return self

    @property
    def exponent(self) -> int:
        """The Schmidt exponent the family corresponds to (0 = central binomial)."""
        if self.family is Family.APERY:
            return 2
        if self.family is Family.DELANNOY:
            return 1
        if self.family is Family.SCHMIDT:
            assert self.r is not None
            return self.r
        return 0
