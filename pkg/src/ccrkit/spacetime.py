"""Cl(3,1) specialisation: Maxwell (odd) and massless Dirac (even) sectors.

The spacetime algebra uses signs ``-+++``: ``e0`` is timelike with
``e0^2 = -1``, coordinates are ``x0 = t, x1, x2, x3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Callable, Sequence, Union

from .algebra import (
    GradeError,
    Multivector,
    Signature,
    grade_of,
    pseudoscalar_inverse,
)
from .ccr import ccr_residuals
from .fields import (
    MultivectorField,
    NumericField,
    derivative_split,
    numeric_vector_derivative,
    require_grade,
    vector_derivative,
)
from .poly import Polynomial


@dataclass(frozen=True)
class StaContext:
    sig: Signature
    I: Multivector
    I_inv: Multivector

    @classmethod
    def build(cls) -> "StaContext":
        sig = Signature((-1, 1, 1, 1))
        return cls(sig, sig.pseudoscalar(), pseudoscalar_inverse(sig))

    def grade_dimensions(self) -> tuple[int, ...]:
        counts = [0] * (self.sig.n + 1)
        for m in range(self.sig.dimension):
            counts[grade_of(m)] += 1
        return tuple(counts)


STA = StaContext.build()

E0 = 0b0001
# spatial generators e1, e2, e3
SPACE = (0b0010, 0b0100, 0b1000)


def _require_sta(F: MultivectorField) -> None:
    if F.sig != STA.sig:
        raise ValueError(f"expected the spacetime algebra -+++, got {F.sig}")


def field_strength(A: MultivectorField) -> MultivectorField:
    """``F = d^A`` for a vector potential."""
    require_grade(A, 1, "potential")
    return derivative_split(A)[1]


def maxwell_residual(F: MultivectorField) -> MultivectorField:
    """``dF``; zero exactly for source-free Maxwell fields."""
    require_grade(F, 2, "field strength")
    return vector_derivative(F)


def antiselfdual_residual(F: MultivectorField, sign: int) -> MultivectorField:
    """``F - sign * F I^-1``.

    ``sign=-1`` tests ``F = -F I^-1``; ``sign=+1`` tests ``F = F I^-1``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    require_grade(F, 2, "field strength")
    return F - (F * pseudoscalar_inverse(F.sig)) * sign


def gauss_residual(A: MultivectorField) -> MultivectorField:
    """``d.A`` (scalar field)."""
    require_grade(A, 1, "potential")
    return derivative_split(A)[0]


def gauge_transform(A: MultivectorField, lam: Polynomial | MultivectorField) -> MultivectorField:
    """``A + d(lambda)``."""
    require_grade(A, 1, "potential")
    lam_field = _scalar_field(A.sig, lam, "gauge function")
    return A + vector_derivative(lam_field)


def _scalar_field(sig: Signature, value, what: str) -> MultivectorField:
    if isinstance(value, MultivectorField):
        require_grade(value, 0, what)
        return value
    return MultivectorField.scalar(sig, value)


@dataclass(frozen=True)
class EmSplit:
    """Electric and magnetic components of a bivector field.

    ``E_i`` is the coefficient of ``e0 e_i``.  ``B`` is read off through
    ``(e0 e_i) I``, which equals ``e2e3, e3e1, e1e2`` for i = 1, 2, 3.
    """

    E: tuple[Polynomial, Polynomial, Polynomial]
    B: tuple[Polynomial, Polynomial, Polynomial]

    def reconstruct(self) -> MultivectorField:
        sig = STA.sig
        out = MultivectorField.zero(sig)
        for i, m in enumerate(SPACE):
            timelike = MultivectorField.lift(Multivector(sig, {E0 | m: 1}))
            out = out + timelike * self.E[i] + (timelike * STA.I) * self.B[i]
        return out


def _magnetic_blades() -> tuple[tuple[int, Fraction], ...]:
    # (mask, sign) with (e0 e_i) I = sign * e_mask
    out = []
    for m in SPACE:
        prod = Multivector(STA.sig, {E0 | m: 1}) * STA.I
        ((mask, c),) = prod.terms.items()
        out.append((mask, c))
    return tuple(out)


MAGNETIC = _magnetic_blades()


def spacetime_split(F: MultivectorField) -> EmSplit:
    _require_sta(F)
    require_grade(F, 2, "field strength")
    E = tuple(F[E0 | m] for m in SPACE)
    B = tuple(F[mask] * c for mask, c in MAGNETIC)
    return EmSplit(E, B)


@dataclass(frozen=True)
class ThreeDResiduals:
    """Vector-calculus Maxwell equations with ``t = x0``."""

    div_E: Polynomial
    faraday: tuple[Polynomial, Polynomial, Polynomial]  # curl E + dB/dt
    div_B: Polynomial
    ampere: tuple[Polynomial, Polynomial, Polynomial]  # curl B - dE/dt

    def all_zero(self) -> bool:
        return not (self.div_E or self.div_B or any(self.faraday) or any(self.ampere))

    def items(self):
        """``(name, corresponding grade of dF, components)``."""
        return [
            ("div E", 1, (self.div_E,)),
            ("curl B - dE/dt", 1, self.ampere),
            ("div B", 3, (self.div_B,)),
            ("curl E + dB/dt", 3, self.faraday),
        ]


def _div(v, d):
    return d(v[0], 1) + d(v[1], 2) + d(v[2], 3)


def _curl(v, d):
    return (
        d(v[2], 2) - d(v[1], 3),
        d(v[0], 3) - d(v[2], 1),
        d(v[1], 1) - d(v[0], 2),
    )


def three_d_maxwell_residuals(split: EmSplit) -> ThreeDResiduals:
    def d(p: Polynomial, i: int) -> Polynomial:
        return p.partial(i)

    E, B = split.E, split.B
    curl_E = _curl(E, d)
    curl_B = _curl(B, d)
    faraday = tuple(c + d(b, 0) for c, b in zip(curl_E, B))
    ampere = tuple(c - d(e, 0) for c, e in zip(curl_B, E))
    return ThreeDResiduals(_div(E, d), faraday, _div(B, d), ampere)


@dataclass(frozen=True)
class OddSectorData:
    A: MultivectorField
    lambda1: Polynomial
    lambda2: Polynomial


@dataclass(frozen=True)
class OddSectorResiduals:
    gauss: MultivectorField  # d.f1
    middle: MultivectorField  # d^f1 + d.f3
    top: MultivectorField  # d^f3
    harmonic_difference: MultivectorField | None = None  # d^2(lambda1 - lambda2)

    def all_zero(self) -> bool:
        return self.gauss.is_zero() and self.middle.is_zero() and self.top.is_zero()


def odd_sector_from_pair(f1: MultivectorField, f3: MultivectorField) -> OddSectorResiduals:
    require_grade(f1, 1, "f1")
    require_grade(f3, 3, "f3")
    div1, curl1 = derivative_split(f1)
    div3, curl3 = derivative_split(f3)
    return OddSectorResiduals(div1, curl1 + div3, curl3)


def odd_sector_residuals(data: OddSectorData) -> OddSectorResiduals:
    A = data.A
    sig = A.sig
    require_grade(A, 1, "potential")
    f1 = gauge_transform(A, data.lambda1)
    f3 = gauge_transform(A, data.lambda2) * pseudoscalar_inverse(sig)
    r = odd_sector_from_pair(f1, f3)
    diff = MultivectorField.scalar(sig, data.lambda1 - data.lambda2)
    return OddSectorResiduals(r.gauss, r.middle, r.top, vector_derivative(vector_derivative(diff)))


def even_sector_residuals(
    f0: MultivectorField | Polynomial, f2: MultivectorField, f4: MultivectorField
) -> tuple[MultivectorField, MultivectorField]:
    """``(d f0 + d.f2, d^f2 + d.f4)``, of grades 1 and 3."""
    sig = f2.sig
    f0 = _scalar_field(sig, f0, "f0")
    require_grade(f2, 2, "f2")
    require_grade(f4, sig.n, "f4")
    div2, curl2 = derivative_split(f2)
    div4, _ = derivative_split(f4)
    return vector_derivative(f0) + div2, curl2 + div4


def assemble_conclusion_multivector(
    f0: MultivectorField | Polynomial,
    A_tilde: MultivectorField,
    theta: MultivectorField,
    f4: MultivectorField,
) -> MultivectorField:
    """``f0 + A + theta/2 + A I^-1 + f4``.

    ``f0`` stands in for ``ln(rho)`` and ``f4`` for ``I B``; a polynomial
    backend cannot hold the logarithm itself.
    """
    sig = A_tilde.sig
    f0 = _scalar_field(sig, f0, "f0")
    require_grade(A_tilde, 1, "A_tilde")
    require_grade(theta, 2, "theta")
    require_grade(f4, sig.n, "f4")
    return f0 + A_tilde + theta / 2 + A_tilde * pseudoscalar_inverse(sig) + f4


def sector_residuals(
    z: MultivectorField,
) -> tuple[OddSectorResiduals, tuple[MultivectorField, MultivectorField]]:
    """Regroup the CCR residuals of a Cl(3,1) field by sector.

    Grades 0, 2, 4 of ``dz`` come from the odd part of ``z`` and grades
    1, 3 from the even part.
    """
    _require_sta(z)
    g = ccr_residuals(z).by_grade()
    return OddSectorResiduals(g[0], g[2], g[4]), (g[1], g[3])


ScalarFn = Union[Real, Polynomial, Callable[[tuple[float, ...]], float]]
BivectorFn = Union[MultivectorField, Multivector, Callable[[tuple[float, ...]], Multivector]]


@dataclass(frozen=True)
class HestenesData:
    rho: ScalarFn
    beta_phase: ScalarFn
    theta: BivectorFn


def _scalar_evaluator(value) -> Callable[[tuple[float, ...]], float]:
    if isinstance(value, Polynomial):
        return lambda x: float(value.evaluate(x))
    if isinstance(value, MultivectorField):
        require_grade(value, 0, "scalar function")
        return lambda x: float(value.evaluate(x).scalar_part())
    if isinstance(value, Real):
        c = float(value)
        return lambda x: c
    return lambda x: float(value(x))


def _bivector_evaluator(value) -> Callable[[tuple[float, ...]], Multivector]:
    if isinstance(value, MultivectorField):
        require_grade(value, 2, "theta")
        return value.evaluate
    if isinstance(value, Multivector):
        if any(grade_of(m) != 2 for m in value.terms):
            raise GradeError("theta must be pure grade 2")
        return lambda x: value
    return value


_SCALAR_TOL = 1e-14


def _exp_series(X: Multivector) -> Multivector:
    # scaling and squaring keeps the truncated series well conditioned
    norm = max(X.max_abs(), 0.0)
    squarings = max(0, math.ceil(math.log2(norm)) + 1) if norm > 0.5 else 0
    Y = X * (0.5**squarings)
    term = Multivector(X.sig, {0: 1.0})
    total = term
    for k in range(1, 60):
        term = term * Y / k
        total = total + term
        if term.max_abs() < 1e-18 * max(total.max_abs(), 1.0):
            break
    for _ in range(squarings):
        total = total * total
    return total


def bivector_exp(X: Multivector) -> Multivector:
    """``exp(X)`` for a float bivector ``X``.

    Uses the closed form when ``X^2`` is a scalar, otherwise a series.
    """
    sig = X.sig
    sq = X * X
    s = float(sq.scalar_part())
    rest = max((abs(float(c)) for m, c in sq.terms.items() if m), default=0.0)
    if rest > _SCALAR_TOL * max(1.0, abs(s)):
        return _exp_series(X)
    one = Multivector(sig, {0: 1.0})
    if s > 0:
        r = math.sqrt(s)
        return one * math.cosh(r) + X * (math.sinh(r) / r)
    if s < 0:
        r = math.sqrt(-s)
        return one * math.cos(r) + X * (math.sin(r) / r)
    return one + X


def hestenes_spinor(data: HestenesData, sig: Signature = STA.sig) -> NumericField:
    """``phi = rho^(1/2) exp(I B) exp(theta/2)`` as a pointwise field."""
    rho = _scalar_evaluator(data.rho)
    beta = _scalar_evaluator(data.beta_phase)
    theta = _bivector_evaluator(data.theta)
    I = Multivector(sig, {sig.dimension - 1: 1.0})
    one = Multivector(sig, {0: 1.0})

    def evaluate(x: tuple[float, ...]) -> Multivector:
        r = rho(x)
        if not r > 0:
            raise ValueError(f"rho must be positive, got {r} at {x}")
        b = beta(x)
        phase = one * math.cos(b) + I * math.sin(b)
        th = theta(x)
        if any(grade_of(m) != 2 for m in th.terms):
            raise GradeError(f"theta must be pure grade 2 at {x}")
        return phase * bivector_exp(th * 0.5) * math.sqrt(r)

    return NumericField(sig, evaluate)


def dirac_residual_numeric(phi: NumericField, points: Sequence[Sequence[float]], h: float) -> float:
    """Max over ``points`` of the largest coefficient of the numeric ``d phi``."""
    worst = 0.0
    for p in points:
        worst = max(worst, numeric_vector_derivative(phi, p, h).max_abs())
    return worst
