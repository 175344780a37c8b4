"""Fixed-rate execution of a designed difference equation.

Each tick computes y[0] = b_hat . y_prev + a_hat . x_hist, shifts the new
input and output into their histories and returns y[0].  Histories live in
small ring buffers indexed most-recent-first, so a tick is O(order) with no
per-tick buffer allocation.

On the very first tick both histories are filled with the first input
before the normal update runs.  For a unity-DC filter that starts the
output on top of the input instead of ramping from zero; disable it with
``use_startup_heuristic=False`` to get the classical zero initial state.
"""

from __future__ import annotations

import math
import sys

from .discretize import DigitalFilterCoefficients
from .signals import TimeSeries

import numpy as np

# Inputs below the smallest normal magnitude are flushed to zero before the
# dot products; feeding denormals through an IIR recursion is a well-known
# slow path on real hardware.
_MIN_NORMAL = sys.float_info.min

# Relative disagreement between a series' sample rate and the design rate
# beyond which processing refuses to run.
RATE_RTOL = 1e-9


class RateMismatchError(ValueError):
    """Input series is sampled at a different rate than the filter design."""


class DigitalFilter:
    """Mutable filter state over an immutable coefficient set.

    Single-owner: one thread ticks a filter at a time.  Share the
    coefficients freely, not the filter.
    """

    __slots__ = ("coeffs", "use_startup_heuristic", "first_tick",
                 "_a", "_b", "_x", "_y", "_xh", "_yh")

    def __init__(
        self,
        coeffs: DigitalFilterCoefficients,
        use_startup_heuristic: bool = True,
    ) -> None:
        self.coeffs = coeffs
        self.use_startup_heuristic = bool(use_startup_heuristic)
        self._a = list(coeffs.a_hat)
        self._b = list(coeffs.b_hat)
        self._x = [0.0] * len(self._a)
        self._y = [0.0] * len(self._b)
        self._xh = 0
        self._yh = 0
        self.first_tick = True

    @property
    def x_hist(self) -> tuple[float, ...]:
        """Input history, most recent first."""
        n = len(self._x)
        return tuple(self._x[(self._xh + k) % n] for k in range(n))

    @property
    def y_hist(self) -> tuple[float, ...]:
        """Output history, most recent first (empty for order 0)."""
        n = len(self._y)
        return tuple(self._y[(self._yh + k) % n] for k in range(n))

    def reset(self) -> None:
        """Zero the histories and re-arm the startup heuristic."""
        for i in range(len(self._x)):
            self._x[i] = 0.0
        for i in range(len(self._y)):
            self._y[i] = 0.0
        self._xh = 0
        self._yh = 0
        self.first_tick = True

    def tick(self, x0: float) -> float:
        """Advance one sample period: take input x0, return output y0."""
        x0 = float(x0)
        if not math.isfinite(x0):
            raise ValueError(f"filter input must be finite, got {x0!r}")
        if -_MIN_NORMAL < x0 < _MIN_NORMAL:
            x0 = 0.0
        a = self._a
        b = self._b
        x = self._x
        y = self._y
        nx = len(x)
        ny = len(y)
        if self.first_tick:
            self.first_tick = False
            if self.use_startup_heuristic:
                for i in range(nx):
                    x[i] = x0
                for i in range(ny):
                    y[i] = x0
        h = self._xh - 1
        if h < 0:
            h = nx - 1
        x[h] = x0
        self._xh = h
        acc = 0.0
        i = h
        for k in range(nx):
            acc += a[k] * x[i]
            i += 1
            if i == nx:
                i = 0
        j = self._yh
        for k in range(ny):
            acc += b[k] * y[j]
            j += 1
            if j == ny:
                j = 0
        if ny:
            g = self._yh - 1
            if g < 0:
                g = ny - 1
            y[g] = acc
            self._yh = g
        return acc


def process(
    coeffs: DigitalFilterCoefficients,
    series: TimeSeries,
    use_startup_heuristic: bool = True,
) -> TimeSeries:
    """Run a fresh filter over a whole series; a fold of tick().

    The series must be sampled at the design loop rate (within RATE_RTOL
    relative), otherwise RateMismatchError is raised.
    """
    if abs(series.sample_rate - coeffs.loop_rate_hz) > RATE_RTOL * coeffs.loop_rate_hz:
        raise RateMismatchError(
            f"series rate {series.sample_rate} Hz != design rate "
            f"{coeffs.loop_rate_hz} Hz"
        )
    filt = DigitalFilter(coeffs, use_startup_heuristic)
    tick = filt.tick
    out = np.empty(len(series))
    for i, v in enumerate(series.samples.tolist()):
        out[i] = tick(v)
    return TimeSeries(series.sample_rate, out, series.t0)
