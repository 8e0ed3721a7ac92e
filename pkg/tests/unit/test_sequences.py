# =============================================================================
# Apery Congruences - Sequence Family Unit Tests
# =============================================================================
# Tests for controllers/sequences.py, models/sums.py and IntPolynomial.
#
# Test Structure:
#   - TestIntPolynomial: ring operations and evaluation
#   - TestFamilies: Apery, Schmidt and Delannoy values
#   - TestWeightedSums: SumSpec validation and weighted partial sums
#   - TestOtherFamilies: Delannoy and central binomial sums, sign splitting
#   - TestCentralBinomial: incremental stream against the direct formula
#   - TestSingleSums: the two single sums reducing sum A_k(x) mod p^2
# =============================================================================

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from apery_congruences.controllers.sequences import (
    apery_eval,
    apery_partial_sum,
    apery_poly,
    central_binomial_stream,
    central_binomial_sum,
    central_binomial_term,
    delannoy_eval,
    schmidt_eval,
    schmidt_poly,
    thm3_binomial_sum,
    thm3_rational_sum,
    thm3_rational_term,
    weighted_sum_exact,
)
from apery_congruences.exceptions import InvalidPrime, PreconditionError
from apery_congruences.models.polynomial import IntPolynomial
from apery_congruences.models.sums import Family, SumSpec, Weight
from apery_congruences.utils.exact_arith import binomial
from apery_congruences.utils.primes import sieve_primes


class TestIntPolynomial:
    """Tests for IntPolynomial."""

    def test_trailing_zeros_trimmed(self):
        assert IntPolynomial.from_coeffs([1, 2, 0, 0]).coeffs == (1, 2)
        assert IntPolynomial.from_coeffs([0, 0]).degree == -1

    def test_leading_zero_rejected(self):
        with pytest.raises(ValueError):
            IntPolynomial((1, 0))

    def test_ring_operations(self):
        p = IntPolynomial.from_coeffs([1, 1])
        q = IntPolynomial.from_coeffs([-1, 1])
        assert (p * q).coeffs == (-1, 0, 1)
        assert (p + q).coeffs == (0, 2)
        assert (p - p) == IntPolynomial.zero()
        assert (3 * p).coeffs == (3, 3)

    def test_monomial_and_evaluate(self):
        assert IntPolynomial.monomial(5, 3).evaluate(2) == 40
        assert IntPolynomial.from_coeffs([1, 36, 36]).evaluate(-1) == 1

    def test_exact_division(self):
        p = IntPolynomial.from_coeffs([4, 8, 12])
        assert p.exact_div(4).coeffs == (1, 2, 3)
        with pytest.raises(ValueError):
            p.exact_div(8)


class TestFamilies:
    """Tests for the Schmidt, Apery and Delannoy families."""

    def test_apery_polynomial_coefficients(self):
        assert apery_poly(1).coeffs == (1, 4)
        assert apery_poly(2).coeffs == (1, 36, 36)

    def test_apery_numbers(self):
        assert [apery_eval(n, 1) for n in range(5)] == [1, 5, 73, 1445, 33001]

    def test_apery_eval_at_other_points(self):
        assert apery_eval(1, 5) == 21
        assert apery_eval(0, -7) == 1

    def test_delannoy_numbers(self):
        assert [delannoy_eval(n, 1) for n in range(5)] == [1, 3, 13, 63, 321]

    def test_schmidt_values(self):
        assert schmidt_eval(1, 2, 1) == 13
        assert schmidt_eval(2, 2, 1) == 73
        assert schmidt_eval(3, 2, 1) == 433

    def test_eval_matches_polynomial(self):
        """Horner over cached terms agrees with the explicit coefficient row."""
        for r in (1, 2, 3, 4):
            for n in range(8):
                poly = schmidt_poly(r, n)
                for x in (-3, -1, 0, 2, 7):
                    assert schmidt_eval(r, n, x) == poly.evaluate(x)

    def test_coefficients_match_binomial_definition(self):
        for n in range(10):
            for k in range(n + 1):
                term = binomial(n, k) * binomial(n + k, k)
                assert schmidt_poly(3, n).coeff(k) == term**3

    def test_invalid_exponent(self):
        with pytest.raises(PreconditionError):
            schmidt_eval(0, 3, 1)


class TestWeightedSums:
    """Tests for SumSpec and weighted_sum_exact()."""

    def test_spec_requires_schmidt_exponent(self):
        with pytest.raises(ValidationError):
            SumSpec(family=Family.SCHMIDT, n=3)

    def test_spec_rejects_bad_sign(self):
        with pytest.raises(ValidationError):
            SumSpec(family=Family.APERY, n=3, eps=2)

    def test_weights(self):
        assert Weight.NONE.value_at(4, 3) == 1
        assert Weight.ODD.value_at(4, 3) == 9
        assert Weight.ODD_POWER.value_at(1, 1) == 27
        assert Weight.KK1.value_at(2, 1) == 30
        assert Weight.KK1.value_at(0, 1) == 0

    def test_alternating_odd_weighted_apery(self):
        spec = SumSpec(family="apery", weight="odd", eps=-1, n=2, x=1)
        assert weighted_sum_exact(spec) == -14
        spec = SumSpec(family="apery", weight="odd", eps=-1, n=5, x=1)
        assert weighted_sum_exact(spec) == 287245

    def test_schmidt_odd_weighted(self):
        spec = SumSpec(family="schmidt", r=3, weight="odd", n=3, x=1)
        assert weighted_sum_exact(spec) == 2193

    def test_empty_sum(self):
        assert weighted_sum_exact(SumSpec(family="delannoy", n=0, x=3)) == 0

    def test_power_applied_before_weight(self):
        spec = SumSpec(family="delannoy", weight="odd", m=2, n=2, x=1)
        assert weighted_sum_exact(spec) == 1 + 3 * 9

    def test_apery_partial_sum(self):
        assert apery_partial_sum(3, 1) == 1 + 5 + 73


class TestOtherFamilies:
    """weighted_sum_exact() for the Delannoy and central binomial families."""

    def test_central_binomial_plain_sum(self):
        assert weighted_sum_exact(SumSpec(family="central_binomial", n=5, x=1)) == 99
        assert weighted_sum_exact(SumSpec(family="central_binomial", n=4, x=0)) == 1

    def test_central_binomial_agrees_with_residue_stream(self):
        for N in range(1, 30):
            for x in (-4, -1, 0, 1, 3):
                exact = weighted_sum_exact(
                    SumSpec(family="central_binomial", n=N, x=x)
                )
                for modulus in (7, 25, 125, 1000):
                    residue = central_binomial_sum(N, x, modulus)
                    assert exact % modulus == residue.value, (N, x, modulus)

    def test_central_delannoy_numbers(self):
        # 1 + 3 + 13 + 63 + 321
        assert weighted_sum_exact(SumSpec(family="delannoy", n=5, x=1)) == 401

    def test_delannoy_agrees_with_delannoy_eval(self):
        for N in range(15):
            for x in (-3, -1, 0, 2, 5):
                spec = SumSpec(family="delannoy", n=N, x=x)
                expected = sum(delannoy_eval(k, x) for k in range(N))
                assert weighted_sum_exact(spec) == expected

    def test_delannoy_is_schmidt_with_exponent_one(self):
        common = dict(weight="kk1", a=1, eps=-1, m=2, n=9, x=-2)
        delannoy = SumSpec(family="delannoy", **common)
        schmidt = SumSpec(family="schmidt", r=1, **common)
        assert weighted_sum_exact(delannoy) == weighted_sum_exact(schmidt)

    def test_alternating_odd_weighted(self):
        spec = SumSpec(family="central_binomial", weight="odd", eps=-1, n=3, x=1)
        assert weighted_sum_exact(spec) == 1 - 3 * 2 + 5 * 6
        spec = SumSpec(family="delannoy", weight="odd", eps=-1, n=3, x=1)
        assert weighted_sum_exact(spec) == 1 - 3 * 3 + 5 * 13

    @settings(max_examples=60, deadline=None)
    @given(
        family=st.sampled_from(["apery", "schmidt", "delannoy", "central_binomial"]),
        weight=st.sampled_from(list(Weight)),
        a=st.integers(0, 2),
        m=st.integers(1, 3),
        n=st.integers(0, 12),
        x=st.integers(-5, 5),
    )
    def test_sign_splits_even_and_odd_terms(self, family, weight, a, m, n, x):
        """S(+1) + S(-1) keeps the even terms twice, S(+1) - S(-1) the odd ones."""
        oracle = {
            "apery": apery_eval,
            "schmidt": lambda k, y: schmidt_eval(3, k, y),
            "delannoy": delannoy_eval,
            "central_binomial": central_binomial_term,
        }[family]
        terms = [weight.value_at(k, a) * oracle(k, x) ** m for k in range(n)]
        plus, minus = (
            weighted_sum_exact(
                SumSpec(family=family, r=3, weight=weight, a=a, eps=eps, m=m, n=n, x=x)
            )
            for eps in (1, -1)
        )
        assert plus == sum(terms)
        assert plus + minus == 2 * sum(terms[0::2])
        assert plus - minus == 2 * sum(terms[1::2])


class TestCentralBinomial:
    """Tests for the central binomial stream and its partial sums."""

    def test_stream_matches_direct_terms(self):
        for x in (-5, -1, 0, 1, 3):
            expected = [central_binomial_term(k, x) for k in range(40)]
            assert list(central_binomial_stream(40, x)) == expected

    def test_partial_sums(self):
        assert central_binomial_sum(5, 1, 125).value == 99
        assert central_binomial_sum(5, -2, 25).value == 6
        assert central_binomial_sum(1, 7, 10).value == 1

    def test_needs_at_least_one_term(self):
        with pytest.raises(PreconditionError):
            central_binomial_sum(0, 1, 25)


class TestSingleSums:
    """Tests for the rational and binomial single sums mod p^2."""

    def test_rational_sum_values(self):
        assert thm3_rational_sum(5, 1).value == 0
        assert thm3_rational_sum(5, 0).value == 5

    def test_binomial_sum_values(self):
        assert thm3_binomial_sum(5, 1).value == 0
        assert thm3_binomial_sum(5, 0).value == 5
        assert thm3_binomial_sum(7, 0).value == 7

    def test_rational_term_at_zero(self):
        assert thm3_rational_term(7, 0, 3) == Fraction(7)

    @pytest.mark.parametrize("p", sieve_primes(5, 60))
    def test_both_single_sums_agree_with_apery_sum(self, p):
        """Both single sums reduce sum_{k<p} A_k(x) modulo p^2."""
        for x in (-3, -1, 1, 2, 5):
            target = apery_partial_sum(p, x) % (p * p)
            assert thm3_rational_sum(p, x).value == target
            assert thm3_binomial_sum(p, x).value == target

    def test_prime_precondition(self):
        with pytest.raises(PreconditionError):
            thm3_binomial_sum(3, 1)
        with pytest.raises(InvalidPrime):
            thm3_rational_sum(9, 1)
