import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccrkit.algebra import GradeError, Multivector, dual
from ccrkit.ccr import ccr_residuals, is_monogenic
from ccrkit.fields import (
    MultivectorField,
    as_numeric,
    coordinate,
    observed_order,
    vector_derivative,
)
from ccrkit.poly import Polynomial
from ccrkit.spacetime import _exp_series
from ccrkit.spacetime import (
    STA as CTX,
    EmSplit,
    HestenesData,
    OddSectorData,
    antiselfdual_residual,
    assemble_conclusion_multivector,
    bivector_exp,
    dirac_residual_numeric,
    even_sector_residuals,
    field_strength,
    gauge_transform,
    gauss_residual,
    hestenes_spinor,
    maxwell_residual,
    odd_sector_from_pair,
    odd_sector_residuals,
    sector_residuals,
    spacetime_split,
    three_d_maxwell_residuals,
)

from strategies import STA, fields, polynomials

x0, x1, x2, x3 = (coordinate(STA, i) for i in range(4))
ZERO = MultivectorField.zero(STA)


def lift(mv):
    return MultivectorField.lift(mv)


def vec(label, p):
    return lift(STA.e(label)) * p


def test_context():
    assert CTX.sig == STA
    assert CTX.I * CTX.I == -1
    assert CTX.grade_dimensions() == (1, 4, 6, 4, 1)


def test_field_strength_examples():
    assert field_strength(vec(0, x1)) == lift(-STA.e(0, 1))
    assert field_strength(vec(1, x0)) == lift(-STA.e(0, 1))
    lam = MultivectorField.scalar(STA, x0 * x1**2 + x3**3)
    assert field_strength(vector_derivative(lam)) == 0
    with pytest.raises(GradeError):
        field_strength(lift(STA.e(0, 1)))


def test_maxwell_residual_examples():
    assert maxwell_residual(lift(-STA.e(0, 1))) == 0
    assert maxwell_residual(lift(STA.e(0, 1)) * x1) == lift(-STA.e(0))
    with pytest.raises(GradeError):
        maxwell_residual(vec(0, x1))


@settings(max_examples=50)
@given(fields(STA, max_degree=3, grades={1}))
def test_no_trivector_part_in_d_of_field_strength(A):
    assert maxwell_residual(field_strength(A)).grade(3) == 0


@settings(max_examples=50)
@given(fields(STA, max_degree=3, grades={1}), polynomials(4, max_degree=4))
def test_gauge_invariance(A, lam):
    A2 = gauge_transform(A, lam)
    assert field_strength(A2) == field_strength(A)
    box = vector_derivative(vector_derivative(MultivectorField.scalar(STA, lam)))
    assert gauss_residual(A2) - gauss_residual(A) == box


def test_antiselfdual_examples():
    assert antiselfdual_residual(ZERO, -1) == 0
    assert antiselfdual_residual(lift(STA.e(0, 1)), -1) == lift(STA.e(0, 1) - STA.e(2, 3))


def test_antiselfdual_kernel_is_trivial_on_basis():
    # (F I^-1) I^-1 = -F, so F = s F I^-1 forces F = -F
    for m in STA.masks(2):
        B = Multivector(STA, {m: 1})
        assert dual(dual(B)) == -B
        for s in (1, -1):
            assert antiselfdual_residual(lift(B), s) != 0


@given(fields(STA, max_degree=2, grades={2}), st.sampled_from([1, -1]))
def test_antiselfdual_residual_vanishes_only_for_zero(F, s):
    assert antiselfdual_residual(F, s).is_zero() == F.is_zero()


def test_gauss_residual_examples():
    assert gauss_residual(vec(0, x1)) == 0
    assert gauss_residual(vec(1, x1)) == MultivectorField.scalar(STA, 1)
    grad = vector_derivative(MultivectorField.scalar(STA, x0 * x1))
    assert gauss_residual(grad) == 0


def test_gauge_transform_examples():
    assert gauge_transform(ZERO, x0 * x1) == vec(0, -x1) + vec(1, x0)
    A = vec(2, x3**2)
    assert gauge_transform(A, Polynomial(4)) == A


def test_spacetime_split_examples():
    sp = spacetime_split(lift(-STA.e(0, 1)))
    assert sp.E == (-1, 0, 0) and sp.B == (0, 0, 0)
    assert spacetime_split(lift(STA.e(2, 3))).B == (1, 0, 0)
    assert spacetime_split(lift(STA.e(3) * STA.e(1))).B == (0, 1, 0)
    assert spacetime_split(lift(STA.e(1, 2))).B == (0, 0, 1)


def test_magnetic_convention_is_computed_from_pseudoscalar():
    assert STA.e(0, 1) * CTX.I == STA.e(2, 3)
    assert STA.e(0, 2) * CTX.I == STA.e(3) * STA.e(1)
    assert STA.e(0, 3) * CTX.I == STA.e(1, 2)


@given(fields(STA, max_degree=2, grades={2}))
def test_split_round_trip(F):
    assert spacetime_split(F).reconstruct() == F


def test_three_d_residual_examples():
    const = spacetime_split(lift(STA.e(0, 1) * 2 + STA.e(1, 3)))
    assert three_d_maxwell_residuals(const).all_zero()
    assert three_d_maxwell_residuals(spacetime_split(field_strength(vec(0, x1)))).all_zero()


def test_three_d_plane_wave_polynomial():
    # E = (0, u, 0), B = (0, 0, u) with u = (x1 - x0)^2 travels along +x1
    u = (x1 - x0) ** 2
    zero = Polynomial(4)
    split = EmSplit((zero, u, zero), (zero, zero, u))
    assert three_d_maxwell_residuals(split).all_zero()
    assert maxwell_residual(split.reconstruct()) == 0


@settings(max_examples=60)
@given(fields(STA, max_degree=2, grades={2}))
def test_three_d_matches_four_d_componentwise(F):
    dF = maxwell_residual(F)
    r = three_d_maxwell_residuals(spacetime_split(F))
    # grade 1: -div E on e0, -(curl B - dE/dt) on e_i
    assert dF[0b0001] == -r.div_E
    for i, m in enumerate((0b0010, 0b0100, 0b1000)):
        assert dF[m] == -r.ampere[i]
    # grade 3: div B on e1e2e3, -(curl E + dB/dt)_i on e0 e_j e_k
    assert dF[0b1110] == r.div_B
    for i, (mask, sign) in enumerate(((0b1101, -1), (0b1011, 1), (0b0111, -1))):
        assert dF[mask] * sign == r.faraday[i]
    assert r.all_zero() == dF.is_zero()


def test_odd_sector_examples():
    lam = x1**2 - x2**2
    r = odd_sector_residuals(OddSectorData(ZERO, lam, lam))
    assert r.all_zero() and r.harmonic_difference == 0

    raw = odd_sector_from_pair(vec(1, x2), lift(STA.e(0, 1, 2)) * x0)
    assert raw.all_zero()

    r = odd_sector_residuals(OddSectorData(vec(1, x1), Polynomial(4), Polynomial(4)))
    assert r.gauss == MultivectorField.scalar(STA, 1)
    assert not r.all_zero()

    with pytest.raises(GradeError):
        odd_sector_from_pair(vec(1, x2), vec(1, x2))


@settings(max_examples=50)
@given(
    fields(STA, max_degree=2, grades={1}),
    polynomials(4, max_degree=3),
    polynomials(4, max_degree=3),
)
def test_odd_sector_harmonic_difference(A, l1, l2):
    r = odd_sector_residuals(OddSectorData(A, l1, l2))
    if r.gauss.is_zero() and r.top.is_zero():
        assert r.harmonic_difference == 0
    # r1 and r3 fix the two Laplacians separately
    box = lambda p: vector_derivative(vector_derivative(MultivectorField.scalar(STA, p)))
    assert r.gauss == gauss_residual(A) + box(l1)
    assert r.top == (gauss_residual(A) + box(l2)) * CTX.I_inv


def test_odd_sector_with_harmonic_gauge_difference():
    # A in Lorenz gauge, lambda1 - lambda2 harmonic: the sector is solved
    A = vec(2, x0 - x1)  # d.A = 0
    r = odd_sector_residuals(OddSectorData(A, x1 * x2, x1 * x2 + x0 * x3))
    assert r.gauss == 0 and r.top == 0 and r.harmonic_difference == 0


def test_even_sector_examples():
    I = lift(STA.pseudoscalar())
    r1, r2 = even_sector_residuals(Polynomial(4), lift(STA.e(0, 1)) * x2, I * x3)
    assert r1 == 0 and r2 == 0
    r1, r2 = even_sector_residuals(Polynomial.constant(3, 4), lift(STA.e(1, 2)), I * 5)
    assert r1 == 0 and r2 == 0
    r1, r2 = even_sector_residuals(x1, ZERO, ZERO)
    assert r1 == lift(STA.e(1)) and r2 == 0
    with pytest.raises(GradeError):
        even_sector_residuals(x1, vec(0, x1), ZERO)


def test_assembly_examples():
    zero4 = Polynomial(4)
    z = assemble_conclusion_multivector(zero4, ZERO, ZERO, ZERO)
    assert z == 0 and is_monogenic(z)
    I = lift(STA.pseudoscalar())
    z = assemble_conclusion_multivector(zero4, ZERO, lift(STA.e(0, 1)) * (2 * x2), I * x3)
    assert is_monogenic(z)
    z = assemble_conclusion_multivector(zero4, vec(1, x1), ZERO, ZERO)
    assert not is_monogenic(z)
    assert ccr_residuals(z).gauss_like == MultivectorField.scalar(STA, 1)


@settings(max_examples=40)
@given(
    polynomials(4, 2),
    fields(STA, 2, grades={1}),
    fields(STA, 2, grades={2}),
    polynomials(4, 2),
)
def test_assembly_decomposes_into_sectors(f0, A, theta, b):
    f4 = lift(STA.pseudoscalar()) * b
    z = assemble_conclusion_multivector(f0, A, theta, f4)
    odd, even = sector_residuals(z)
    expected_odd = odd_sector_from_pair(A, A * CTX.I_inv)
    assert (odd.gauss, odd.middle, odd.top) == (
        expected_odd.gauss,
        expected_odd.middle,
        expected_odd.top,
    )
    assert even == even_sector_residuals(f0, theta / 2, f4)


# Hestenes spinors

POINTS = [(0.1, -0.3, 0.2, 0.4), (-0.5, 0.25, 0.6, -0.1), (0.0, 0.0, 0.0, 0.0)]


def test_hestenes_trivial_cases():
    one = hestenes_spinor(HestenesData(1.0, 0.0, ZERO))
    assert one((0.1, 0.2, 0.3, 0.4)) == Multivector(STA, {0: 1.0})
    two = hestenes_spinor(HestenesData(4.0, 0.0, ZERO))
    assert two((0.0, 0.0, 0.0, 0.0)).scalar_part() == pytest.approx(2.0)


def test_bivector_exp_closed_form():
    theta = STA.e(1, 2) * (math.pi / 2)
    phi = hestenes_spinor(HestenesData(1.0, 0.0, theta))
    value = phi((0.0, 0.0, 0.0, 0.0))
    expected = Multivector(STA, {0: math.cos(math.pi / 4), 0b0110: math.sin(math.pi / 4)})
    assert (value - expected).max_abs() < 1e-15


def test_bivector_exp_branches_agree_with_series():
    for X in (
        STA.e(0, 1) * 0.7,  # squares to +0.49: hyperbolic
        STA.e(2, 3) * 1.3,  # squares to -1.69: circular
        STA.e(0, 1) + STA.e(1, 2),  # null: 1 + X
        STA.e(0, 1) * 0.4 + STA.e(2, 3) * 0.9,  # square has a grade-4 part: series
    ):
        X = X * 1.0
        assert (bivector_exp(X) - _exp_series(X)).max_abs() < 1e-12


def test_bivector_exp_inverse():
    X = (STA.e(0, 1) * 0.4 + STA.e(2, 3) * 0.9 + STA.e(1, 3) * -2.5) * 1.0
    assert (bivector_exp(X) * bivector_exp(-X) - 1.0).max_abs() < 1e-12


def test_hestenes_rejects_nonpositive_density():
    phi = hestenes_spinor(HestenesData(x1, 0.0, ZERO))
    with pytest.raises(ValueError, match="rho"):
        phi((0.0, -1.0, 0.0, 0.0))


def test_dirac_residual_of_constant_spinor():
    phi = hestenes_spinor(HestenesData(2.0, 0.3, STA.e(0, 1) * 0.5 + STA.e(2, 3) * 0.2))
    assert dirac_residual_numeric(phi, POINTS, 1e-3) < 1e-12


def test_dirac_residual_of_polynomial_even_fixture():
    F = lift(STA.e(0, 1)) * x2 + lift(STA.pseudoscalar()) * x3
    for h in (1e-1, 1e-2, 1e-3):
        assert dirac_residual_numeric(as_numeric(F), POINTS, h) < 1e-9


def test_hestenes_from_ccr_solution_is_dirac_free():
    # f0 = 0, f2 = x2 e0e1 = theta/2, f4 = x3 I = I B solve the even CCR system
    theta = lift(STA.e(0, 1)) * (2 * x2)
    phi = hestenes_spinor(HestenesData(1.0, x3, theta))
    errs = [dirac_residual_numeric(phi, POINTS, h) for h in (1e-1, 1e-2, 1e-3)]
    assert errs[-1] < 1e-5
    assert observed_order([1e-1, 1e-2, 1e-3], errs) == pytest.approx(2.0, abs=0.1)


def test_dirac_residual_stays_away_from_zero_for_non_solution():
    c = Fraction(4, 5)
    theta = lift(STA.e(0, 1)) * (x3 * c)
    phi = hestenes_spinor(HestenesData(1.0, 0.0, theta))
    point = [(0.1, 0.2, 0.3, 0.4)]
    # exact: d phi = e3 (c/2)(sinh + e0e1 cosh)(c x3 / 2), max coefficient c/2 cosh(c x3/2)
    c = float(c)
    reference = c / 2 * math.cosh(c * 0.4 / 2)
    for h in (1e-1, 1e-2, 1e-3):
        assert dirac_residual_numeric(phi, point, h) == pytest.approx(reference, rel=1e-2)
