from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyckweyl.polynomial import D, ONE, IntPolynomial, InexactDivisionError

coeff_lists = st.lists(st.integers(-10**6, 10**6), max_size=8)
polys = coeff_lists.map(lambda c: IntPolynomial(tuple(c)))


def test_canonical_form_trims_trailing_zeros():
    assert IntPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert IntPolynomial((0, 0)).is_zero()
    assert IntPolynomial((0,)) == IntPolynomial()
    assert IntPolynomial().degree == -1


def test_str():
    assert str(IntPolynomial((0, 2, 2, 1))) == "2d + 2d^2 + d^3"
    assert str(IntPolynomial((1, -1))) == "1 - d"
    assert str(IntPolynomial()) == "0"


@given(polys, polys)
def test_add_commutes(p, q):
    assert p + q == q + p


@given(polys, polys, polys)
def test_mul_distributes(p, q, r):
    assert p * (q + r) == p * q + p * r


@given(polys, st.integers(-50, 50))
def test_evaluation_is_a_ring_map(p, x):
    q = p * (D + 3)
    assert q(x) == p(x) * (x + 3)


@given(polys)
def test_exact_division_by_one_minus_d_roundtrip(p):
    prod = p * (ONE - D)
    assert prod.exact_div(ONE - D) == p


@given(polys, polys)
def test_divmod_identity(p, q):
    divisor = q * 2 + D.shift(len(q.coeffs))  # monic, so division never leaves the integers
    quot, rem = p.divmod(divisor)
    assert quot * divisor + rem == p
    assert rem.degree < divisor.degree


def test_nonzero_remainder_raises():
    with pytest.raises(InexactDivisionError):
        (D * D + 1).exact_div(ONE - D)


def test_evaluate_at_fraction_is_exact():
    p = IntPolynomial((0, 5, 5, 3, 1))
    assert p(Fraction(1, 2)) == Fraction(5, 2) + Fraction(5, 4) + Fraction(3, 8) + Fraction(1, 16)
