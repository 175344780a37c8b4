"""Dense univariate real polynomials for the filter design pipeline.

Coefficients are stored in ascending power order: ``coeffs[k]`` multiplies
``x**k``.  The tuple always has ``declared_order + 1`` entries, so a
polynomial of lower actual degree keeps its zero high-order coefficients.
That padding is load-bearing: the coefficient reversal step of the design
pipeline reverses over the full declared length, and trimming would
silently change the result.

Everything on the public surface of the package (constructors, printed
coefficient lists, CLI) speaks the descending engineering convention
``[c_n, ..., c_1, c_0]``; use :meth:`Polynomial.from_descending` and
:meth:`Polynomial.descending` at that boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

# Upper bound on the exponent accepted by power().  Keeps accidental
# huge expansions out; the design pipeline never needs more.
MAX_POWER = 64


def _as_finite_floats(values: Iterable[float]) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if not out:
        raise ValueError("polynomial needs at least one coefficient")
    for v in out:
        if not math.isfinite(v):
            raise ValueError(f"non-finite polynomial coefficient: {v!r}")
    return out


@dataclass(frozen=True)
class Polynomial:
    """Immutable real polynomial, ascending coefficients, fixed declared order."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _as_finite_floats(self.coeffs))

    @classmethod
    def from_descending(cls, coeffs: Sequence[float], order: int | None = None) -> "Polynomial":
        """Build from descending-power coefficients.

        If ``order`` is given, the polynomial is zero-padded (at the high
        end) up to that declared order; it is an error for the input to be
        longer than ``order + 1``.
        """
        c = [float(v) for v in coeffs]
        if not c:
            raise ValueError("polynomial needs at least one coefficient")
        if order is not None:
            if len(c) > order + 1:
                raise ValueError(
                    f"{len(c)} coefficients do not fit declared order {order}"
                )
            c = [0.0] * (order + 1 - len(c)) + c
        return cls(tuple(reversed(c)))

    @property
    def declared_order(self) -> int:
        return len(self.coeffs) - 1

    def descending(self) -> tuple[float, ...]:
        """Coefficients in descending power order (engineering convention)."""
        return tuple(reversed(self.coeffs))

    def padded(self, order: int) -> "Polynomial":
        """Same polynomial with the declared order raised to ``order``."""
        if order < self.declared_order:
            raise ValueError(
                f"cannot pad order {self.declared_order} down to {order}"
            )
        return Polynomial(self.coeffs + (0.0,) * (order - self.declared_order))


def taylor_shift(p: Polynomial, c: float) -> Polynomial:
    """Return q with q(x) = p(x + c).

    Computed by ``declared_order`` passes of synthetic division, each pass
    peeling off one Taylor coefficient of p about c.  O(n^2) and exact for
    the integer shifts the design pipeline uses.
    """
    if not math.isfinite(c):
        raise ValueError("shift amount must be finite")
    n = p.declared_order
    w = list(p.descending())
    for k in range(n):
        for j in range(1, n + 1 - k):
            w[j] += c * w[j - 1]
    return Polynomial(tuple(reversed(w)))


def reverse_coefficients(p: Polynomial) -> Polynomial:
    """Return q with q(x) = x**n * p(1/x), n the declared order.

    The reversal runs over the full padded coefficient tuple; zero leading
    coefficients shift the result exactly as the substitution demands.
    """
    return Polynomial(tuple(reversed(p.coeffs)))


def scale_argument(p: Polynomial, c: float) -> Polynomial:
    """Return q with q(x) = p(c * x), i.e. coeffs[k] scaled by c**k."""
    if not math.isfinite(c):
        raise ValueError("argument scale must be finite")
    if c == 0.0:
        raise ValueError("argument scale must be nonzero")
    out = []
    factor = 1.0
    for v in p.coeffs:
        out.append(v * factor)
        factor *= c
    return Polynomial(tuple(out))


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Coefficient-wise sum, declared order max(p, q)."""
    n = max(p.declared_order, q.declared_order)
    a = p.coeffs + (0.0,) * (n - p.declared_order)
    b = q.coeffs + (0.0,) * (n - q.declared_order)
    return Polynomial(tuple(x + y for x, y in zip(a, b)))


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Full convolution product, declared order p.order + q.order."""
    out = [0.0] * (p.declared_order + q.declared_order + 1)
    for i, a in enumerate(p.coeffs):
        if a == 0.0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Polynomial(tuple(out))


def power(p: Polynomial, k: int) -> Polynomial:
    """p raised to the integer power k, 0 <= k <= MAX_POWER."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("exponent must be a nonnegative integer")
    if k > MAX_POWER:
        raise ValueError(f"exponent {k} exceeds supported bound {MAX_POWER}")
    result = Polynomial((1.0,))
    for _ in range(k):
        result = multiply(result, p)
    return result


def evaluate_complex(p: Polynomial, x: complex) -> complex:
    """Evaluate p at a complex point by Horner's rule."""
    acc = 0j
    for c in p.descending():
        acc = acc * x + c
    return acc
