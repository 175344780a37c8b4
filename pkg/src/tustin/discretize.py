"""Continuous transfer functions to difference-equation coefficients.

The conversion substitutes s = 2*f_l*(z - 1)/(z + 1) at a fixed loop rate
f_l (Hz) and normalizes the result into the two coefficient vectors of the
difference equation

    y[0] = b_hat . y_prev + a_hat . x_hist

Two independent routes are provided.  :func:`tustin_horner` is the
production path: a stepwise polynomial pipeline (divide out s**n,
substitute, shift, reverse, scale, shift back) that only ever touches one
polynomial at a time.  :func:`tustin_direct` expands the substitution by
brute force with polynomial products.  They agree to rounding error and
cross-check each other in the test suite.

No frequency prewarping is applied: the digital response at angular
frequency w equals the continuous response at the warped frequency
2*f_l*tan(w/(2*f_l)), an identity the analysis module exploits.

Coefficient vectors on this module's surface are descending in power;
see :mod:`tustin.polynomial` for the storage convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .polynomial import (
    Polynomial,
    add,
    multiply,
    power,
    reverse_coefficients,
    scale_argument,
    taylor_shift,
)

# A leading z-domain denominator coefficient below this fraction of the
# largest denominator coefficient means the map collapsed the filter order
# (the continuous denominator has a root at s = 2*f_l) and no meaningful
# normalization exists.
DEGENERACY_RTOL = 1e-12


class FilterDesignError(ValueError):
    """Base class for design-time rejections."""


class NonCausalError(FilterDesignError):
    """Numerator degree exceeds denominator degree."""


class NonPositiveRateError(FilterDesignError):
    """Loop rate must be a positive, finite number of Hz."""


class DegenerateLeadingCoefficientError(FilterDesignError):
    """The z-domain denominator lost its leading coefficient."""


@dataclass(frozen=True)
class ContinuousTransferFunction:
    """Causal rational transfer function H(s) = N(s)/D(s).

    ``numerator`` and ``denominator`` keep their own declared orders
    (m and n); causality requires m <= n and the leading denominator
    coefficient must be nonzero.  Declared orders are authoritative:
    a zero leading numerator coefficient is kept, not trimmed.
    """

    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self) -> None:
        m = self.numerator.declared_order
        n = self.denominator.declared_order
        if m > n:
            raise NonCausalError(
                f"numerator degree {m} exceeds denominator degree {n}"
            )
        if self.denominator.descending()[0] == 0.0:
            raise FilterDesignError(
                "leading denominator coefficient must be nonzero"
            )

    @classmethod
    def from_descending(
        cls, numerator: Sequence[float], denominator: Sequence[float]
    ) -> "ContinuousTransferFunction":
        return cls(
            Polynomial.from_descending(numerator),
            Polynomial.from_descending(denominator),
        )

    @property
    def order(self) -> int:
        """Denominator degree n; the order of the designed filter."""
        return self.denominator.declared_order

    @property
    def numerator_order(self) -> int:
        return self.numerator.declared_order

    def dc_gain(self) -> float:
        """H(0), the ratio of the two constant coefficients.

        Raises ZeroDivisionError when the denominator constant term is
        zero (a pole at s = 0 has no DC gain).
        """
        return self.numerator.coeffs[0] / self.denominator.coeffs[0]


@dataclass(frozen=True)
class DigitalFilterCoefficients:
    """Normalized difference-equation coefficients at a fixed loop rate.

    ``a_hat`` has n + 1 entries (weights on current and past inputs),
    ``b_hat`` has n entries (weights on past outputs), both descending in
    z power.  Instances are immutable and safe to share between filters.
    """

    a_hat: tuple[float, ...]
    b_hat: tuple[float, ...]
    loop_rate_hz: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a_hat", tuple(float(v) for v in self.a_hat))
        object.__setattr__(self, "b_hat", tuple(float(v) for v in self.b_hat))
        if len(self.a_hat) != len(self.b_hat) + 1:
            raise FilterDesignError(
                f"a_hat needs exactly one more entry than b_hat, got "
                f"{len(self.a_hat)} and {len(self.b_hat)}"
            )
        for v in self.a_hat + self.b_hat:
            if not math.isfinite(v):
                raise FilterDesignError(f"non-finite coefficient: {v!r}")
        _check_rate(self.loop_rate_hz)

    @property
    def order(self) -> int:
        return len(self.b_hat)


def _check_rate(loop_rate_hz: float) -> None:
    if not (math.isfinite(loop_rate_hz) and loop_rate_hz > 0.0):
        raise NonPositiveRateError(
            f"loop rate must be positive and finite, got {loop_rate_hz!r}"
        )


def normalize(
    num_z: Polynomial, den_z: Polynomial, loop_rate_hz: float
) -> DigitalFilterCoefficients:
    """Divide N[z]/D[z] through by the leading D[z] coefficient.

    Returns a_hat (scaled numerator, descending) and b_hat (negated scaled
    denominator tail, coefficients of z**(n-1) ... z**0).  Raises
    DegenerateLeadingCoefficientError when the leading coefficient is
    negligible next to the rest of D[z].
    """
    if num_z.declared_order != den_z.declared_order:
        raise FilterDesignError(
            "numerator and denominator must share a declared order "
            f"({num_z.declared_order} != {den_z.declared_order})"
        )
    den = den_z.descending()
    lead = den[0]
    if abs(lead) < DEGENERACY_RTOL * max(abs(v) for v in den):
        raise DegenerateLeadingCoefficientError(
            "leading z-domain denominator coefficient is negligible; the "
            "continuous denominator vanishes at s = 2*f_l (try a different "
            "loop rate)"
        )
    a_hat = tuple(v / lead for v in num_z.descending())
    b_hat = tuple(-v / lead for v in den[1:])
    return DigitalFilterCoefficients(a_hat, b_hat, loop_rate_hz)


def _rational_substitution(p: Polynomial, order: int, two_fl: float) -> Polynomial:
    """One side of the stepwise pipeline: p(s) -> p's z-domain polynomial.

    With d[k] the coefficient of s**(order-k), dividing by s**order and
    substituting s = 2*f_l/x turns p into sum(d[k] / (2*f_l)**k * x**k);
    the remaining steps move x through +1 shift, reversal, halving of the
    argument and -1 shift, landing on the polynomial in z.
    """
    d = p.padded(order).descending()
    coeffs = []
    scale = 1.0
    for k in range(order + 1):
        coeffs.append(d[k] / scale)
        scale *= two_fl
    q = Polynomial(tuple(coeffs))
    q = taylor_shift(q, 1.0)
    q = reverse_coefficients(q)
    q = scale_argument(q, 0.5)
    q = taylor_shift(q, -1.0)
    return q


def tustin_horner(
    tf: ContinuousTransferFunction, loop_rate_hz: float
) -> DigitalFilterCoefficients:
    """Convert H(s) to difference-equation coefficients, stepwise route.

    The numerator is padded to the denominator's order before the pipeline
    so both sides are transformed at the same degree; the shared normalizer
    then produces a_hat and b_hat.
    """
    _check_rate(loop_rate_hz)
    n = tf.order
    two_fl = 2.0 * loop_rate_hz
    num_z = _rational_substitution(tf.numerator, n, two_fl)
    den_z = _rational_substitution(tf.denominator, n, two_fl)
    return normalize(num_z, den_z, loop_rate_hz)


def _direct_substitution(p: Polynomial, order: int, two_fl: float) -> Polynomial:
    # N[z] = sum_k c_k (2 f_l)^(order-k) (z-1)^(order-k) (z+1)^k with c_k
    # the padded descending coefficients; the (z+1)^order common factor has
    # already been multiplied through.
    c = p.padded(order).descending()
    z_minus_1 = Polynomial.from_descending([1.0, -1.0])
    z_plus_1 = Polynomial.from_descending([1.0, 1.0])
    total = Polynomial((0.0,) * (order + 1))
    for k in range(order + 1):
        factor = c[k] * two_fl ** (order - k)
        if factor == 0.0:
            continue
        term = multiply(power(z_minus_1, order - k), power(z_plus_1, k))
        total = add(total, Polynomial(tuple(factor * v for v in term.coeffs)))
    return total


def tustin_direct(
    tf: ContinuousTransferFunction, loop_rate_hz: float
) -> DigitalFilterCoefficients:
    """Convert H(s) by brute-force substitution and expansion.

    Independent of :func:`tustin_horner` except for the shared normalizer;
    exists as the cross-check oracle and for spot verification.
    """
    _check_rate(loop_rate_hz)
    n = tf.order
    two_fl = 2.0 * loop_rate_hz
    num_z = _direct_substitution(tf.numerator, n, two_fl)
    den_z = _direct_substitution(tf.denominator, n, two_fl)
    return normalize(num_z, den_z, loop_rate_hz)


def pole_radii(coeffs: DigitalFilterCoefficients) -> tuple[float, ...]:
    """Magnitudes of the z-domain poles, largest first.

    Roots of z**n - b_hat[0] z**(n-1) - ... - b_hat[n-1], found as
    companion-matrix eigenvalues.  Purely advisory: a radius above 1 means
    the difference equation is unstable at this rate.
    """
    if not coeffs.b_hat:
        return ()
    monic = np.concatenate(([1.0], -np.asarray(coeffs.b_hat)))
    radii = np.abs(np.roots(monic))
    return tuple(sorted((float(r) for r in radii), reverse=True))
