from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccrkit.poly import Polynomial

from strategies import polynomials

x1 = Polynomial.variable(0, 2)
x2 = Polynomial.variable(1, 2)


def test_square_of_sum():
    assert (x1 + x2) ** 2 == x1**2 + 2 * x1 * x2 + x2**2


def test_partial_derivative():
    assert (x1**2 * x2).partial(0) == 2 * x1 * x2
    assert (x1**2 * x2).partial(1) == x1**2
    assert Polynomial.constant(7, 2).partial(0) == 0


def test_evaluate():
    assert (x1**2 - x2).evaluate((2, 1)) == 3
    assert (x1 / 2).evaluate((Fraction(1, 3), 0)) == Fraction(1, 6)
    assert (x1**2 - x2).evaluate((0.5, 1.0)) == pytest.approx(-0.75)


def test_mismatched_coordinate_counts():
    with pytest.raises(ValueError):
        x1 + Polynomial.variable(0, 3)
    with pytest.raises(ValueError):
        x1.evaluate((1, 2, 3))


def test_canonical_form_drops_zeros():
    p = x1 - x1
    assert not p and p == 0 and p.degree() == -1
    assert Polynomial(2, {(1, 0): 0}).terms == {}


def test_format():
    assert (Fraction(3, 2) * x1 - x2**2).format(base=1) == "-x2^2 + 3/2*x1"
    assert Polynomial.constant(-1, 2).format() == "-1"
    assert Polynomial(2).format() == "0"


@given(polynomials(3), polynomials(3), polynomials(3))
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(polynomials(3), polynomials(3), st.integers(0, 2))
def test_leibniz_rule(p, q, i):
    assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@given(polynomials(2), polynomials(2), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
