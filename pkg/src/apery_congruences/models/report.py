# =============================================================================
# Apery Congruences - Report Models
# =============================================================================
# Pydantic models for the results the verifier produces:
#
#   - PrimeRep: p = x^2 + 2y^2, or "not representable"
#   - SchmidtCoeffTable: the integer coefficients a_{m,k}^(r)
#   - IdentityVerdict: exact comparison of both sides of an identity
#   - CongruenceReport: comparison of two residues modulo some modulus
#
# Every model knows how to turn itself into a JSON-ready record in which
# big integers are decimal strings, so nothing is lost when a value does not
# fit in a double.
# =============================================================================

from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, model_validator

from apery_congruences.models.polynomial import IntPolynomial

# Parameter values are small ints (p, n, x, r, a, m, eps) or short strings
ParamValue = Union[int, str]


class PathTag(str, Enum):
    """How a value was evaluated."""

    EXACT = "exact"  # big-integer oracle
    FAST = "fast"  # modulo-prime-power kernel


class CheckKind(str, Enum):
    """Whether a failing check contradicts a theorem or refutes a conjecture."""

    THEOREM = "theorem"
    CONJECTURE = "conjecture"


class Outcome(str, Enum):
    """Final classification of a single tuple in a sweep."""

    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"
    COUNTEREXAMPLE = "counterexample"
    PATH_DIVERGENCE = "path_divergence"


def encode_value(value: Any) -> Any:
    """
    Turn an exact value into its JSON-ready, lossless form.

    ints become decimal strings, Fractions "num/den", polynomials a list of
    decimal coefficient strings. Containers are encoded recursively.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, IntPolynomial):
        return [str(c) for c in value.coeffs]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return value


class PrimeRep(BaseModel):
    """
    Representation of a prime as x^2 + 2y^2.

    When representable, x and y are canonical: both positive, except for
    p = 2 = 0^2 + 2*1^2 where x = 0.

    Attributes:
        p: The prime
        x: Positive solution component, or None when not representable
        y: Positive solution component, or None when not representable
    """

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=2)
    x: Optional[int] = Field(default=None, ge=0)
    y: Optional[int] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def check_representation(self) -> "PrimeRep":
        if (self.x is None) != (self.y is None):
            raise ValueError("x and y must both be given or both be absent")
        if self.x is not None and self.y is not None:
            if self.x * self.x + 2 * self.y * self.y != self.p:
                raise ValueError(
                    f"{self.x}^2 + 2*{self.y}^2 != {self.p}"
                )
            if self.x == 0 and self.p != 2:
                raise ValueError("x = 0 only occurs for p = 2")
        return self

    @property
    def representable(self) -> bool:
        return self.x is not None

    def describe(self) -> str:
        """Short form used by the CLI: "x y" or "none"."""
        if not self.representable:
            return "none"
        return f"{self.x} {self.y}"


class SchmidtCoeffTable(BaseModel):
    """
    The coefficients a_{m,k}^(r), m <= k <= r*m.

    Attributes:
        r: Exponent, r >= 2
        m: Row index, m >= 0
        coefficients: coefficients[i] is a_{m, m+i}, for 0 <= i <= (r-1)*m;
            strict ints, so a Fraction entry is rejected even when integral
    """

    model_config = ConfigDict(frozen=True)

    r: int = Field(..., ge=2)
    m: int = Field(..., ge=0)
    coefficients: List[StrictInt]

    @model_validator(mode="after")
    def check_length(self) -> "SchmidtCoeffTable":
        expected = (self.r - 1) * self.m + 1
        if len(self.coefficients) != expected:
            raise ValueError(
                f"expected {expected} coefficients for r={self.r}, m={self.m}, "
                f"got {len(self.coefficients)}"
            )
        return self

    def coeff(self, k: int) -> int:
        """a_{m,k}; zero outside m <= k <= r*m."""
        i = k - self.m
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return 0

    @property
    def k_range(self) -> range:
        return range(self.m, self.r * self.m + 1)


class IdentityVerdict(BaseModel):
    """
    Exact comparison of the two sides of an identity.

    Attributes:
        identity: Suite / identity id (e.g. "pfaff_special")
        params: Parameter tuple, e.g. {"l": 2, "m": 1}
        lhs: Left side (int, Fraction or IntPolynomial)
        rhs: Right side, same kind as lhs
        passed: True iff lhs == rhs exactly
        extra: Optional additional information
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    identity: str
    params: Dict[str, ParamValue]
    lhs: Union[int, IntPolynomial, Fraction]
    rhs: Union[int, IntPolynomial, Fraction]
    passed: bool
    extra: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def compare(
        cls,
        identity: str,
        params: Dict[str, ParamValue],
        lhs: Union[int, Fraction, IntPolynomial],
        rhs: Union[int, Fraction, IntPolynomial],
        **extra: Any,
    ) -> "IdentityVerdict":
        """Build a verdict, deciding pass/fail by exact equality."""
        return cls(
            identity=identity,
            params=params,
            lhs=lhs,
            rhs=rhs,
            passed=bool(lhs == rhs),
            extra=extra,
        )

    def to_record(self) -> Dict[str, Any]:
        """JSONL record using the fixed field names of the sweep output."""
        return {
            "check": self.identity,
            "params": encode_value(self.params),
            "modulus": None,
            "lhs": encode_value(self.lhs),
            "rhs": encode_value(self.rhs),
            "pass": self.passed,
            "path": PathTag.EXACT.value,
            "extra": encode_value(self.extra),
        }


class CongruenceReport(BaseModel):
    """
    Verdict of one congruence check.

    Attributes:
        check: Check id (e.g. "thm_main_ii")
        params: Parameter tuple (p or n, x, r, a, m, eps as applicable)
        modulus: Modulus of the comparison (may be 1 for n = 1)
        lhs: Left residue, canonical in [0, modulus)
        rhs: Right residue, canonical in [0, modulus)
        passed: lhs == rhs; None when the tuple was skipped
        path: Evaluation path that produced lhs / rhs
        kind: theorem or conjecture
        extra: Representation, intermediate residues, flags
    """

    model_config = ConfigDict(frozen=True)

    check: str
    params: Dict[str, ParamValue]
    modulus: int = Field(..., ge=1)
    lhs: int
    rhs: int
    passed: Optional[bool]
    path: PathTag = PathTag.EXACT
    kind: CheckKind = CheckKind.THEOREM
    extra: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_canonical(self) -> "CongruenceReport":
        if self.passed is not None:
            if not (0 <= self.lhs < self.modulus and 0 <= self.rhs < self.modulus):
                raise ValueError("residues must be canonical")
            if self.passed != (self.lhs == self.rhs):
                raise ValueError("pass flag disagrees with the residues")
        return self

    @classmethod
    def compare(
        cls,
        check: str,
        params: Dict[str, ParamValue],
        modulus: int,
        lhs: int,
        rhs: int,
        path: PathTag = PathTag.EXACT,
        kind: CheckKind = CheckKind.THEOREM,
        **extra: Any,
    ) -> "CongruenceReport":
        """Reduce both sides mod `modulus` and compare."""
        left, right = lhs % modulus, rhs % modulus
        return cls(
            check=check,
            params=params,
            modulus=modulus,
            lhs=left,
            rhs=right,
            passed=left == right,
            path=path,
            kind=kind,
            extra=extra,
        )

    @classmethod
    def skipped(
        cls,
        check: str,
        params: Dict[str, ParamValue],
        reason: str,
        kind: CheckKind = CheckKind.THEOREM,
        path: PathTag = PathTag.EXACT,
    ) -> "CongruenceReport":
        """A placeholder report for a tuple outside the check's hypotheses."""
        return cls(
            check=check,
            params=params,
            modulus=1,
            lhs=0,
            rhs=0,
            passed=None,
            path=path,
            kind=kind,
            extra={"flags": [reason]},
        )

    @property
    def outcome(self) -> Outcome:
        if self.passed is None:
            return Outcome.SKIP
        if self.passed:
            return Outcome.PASS
        if self.kind is CheckKind.CONJECTURE:
            return Outcome.COUNTEREXAMPLE
        return Outcome.FAIL

    def to_record(self) -> Dict[str, Any]:
        """
        JSONL record using the fixed field names of the sweep output.

        Conjecture records carry extra.kind, and a refuted conjecture is
        flagged COUNTEREXAMPLE so the outcome survives a reload.
        """
        extra = dict(self.extra)
        if self.kind is CheckKind.CONJECTURE:
            extra["kind"] = self.kind.value
            if self.passed is False:
                extra["flags"] = list(extra.get("flags", [])) + ["COUNTEREXAMPLE"]
        return {
            "check": self.check,
            "params": encode_value(self.params),
            "modulus": encode_value(self.modulus),
            "lhs": encode_value(self.lhs),
            "rhs": encode_value(self.rhs),
            "pass": self.passed,
            "path": self.path.value,
            "extra": encode_value(extra),
        }
