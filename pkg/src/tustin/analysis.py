"""Frequency-response verification of designed filters.

Three independent views of the same filter are available:

* analytic continuous response N(jw)/D(jw) of the source transfer function,
* analytic digital response of the difference equation on the unit circle,
* measured responses, by stepped-sine fitting or by demodulating a chirp.

Because the design applies no prewarping, the digital response at angular
frequency w equals the continuous response at 2*f_l*tan(w*dt/2); curves are
expected to diverge near the Nyquist frequency and agree well below it.

Measured and analytic curves are exchanged as lists of
:class:`FrequencyResponsePoint` and serialize to/from a three-column CSV
(``freq_hz,magnitude_db,phase_deg``).  Magnitudes at exact transmission
zeros are -inf in memory and clamp to -300 dB in files.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .discretize import ContinuousTransferFunction, DigitalFilterCoefficients
from .polynomial import evaluate_complex
from .runtime import RateMismatchError, process
from .signals import ChirpSpec, chirp_phase, generate_chirp, generate_sine

BODE_CSV_HEADER = "freq_hz,magnitude_db,phase_deg"

# File-format stand-in for -inf dB at transmission zeros.
MAGNITUDE_DB_FLOOR = -300.0

# Stepped-sine grids must stay below this fraction of the loop rate; above
# it the per-cycle sample count is too small for a trustworthy fit.
STEPPED_SINE_MAX_FREQ_FRACTION = 0.45


class AboveNyquistError(ValueError):
    """Requested frequency is at or above the Nyquist frequency."""


class DenominatorZeroError(ZeroDivisionError):
    """The response denominator vanished at the requested frequency."""


class DisjointRangesError(ValueError):
    """Two response curves share no frequency overlap."""


@dataclass(frozen=True)
class FrequencyResponsePoint:
    freq_hz: float
    magnitude_db: float
    phase_deg: float


@dataclass(frozen=True)
class ResponseComparison:
    """Absolute deviations between two curves on their common grid."""

    points_compared: int
    max_abs_magnitude_db: float
    mean_abs_magnitude_db: float
    max_abs_phase_deg: float
    mean_abs_phase_deg: float


def analytic_response_continuous(
    tf: ContinuousTransferFunction, omega: float
) -> complex:
    """H(j*omega) of the continuous transfer function, omega in rad/s > 0."""
    if not (math.isfinite(omega) and omega > 0.0):
        raise ValueError(f"omega must be positive and finite, got {omega!r}")
    s = complex(0.0, omega)
    den = evaluate_complex(tf.denominator, s)
    if den == 0.0:
        raise DenominatorZeroError(f"denominator vanishes at omega = {omega}")
    return evaluate_complex(tf.numerator, s) / den


def analytic_response_digital(
    coeffs: DigitalFilterCoefficients, omega: float
) -> complex:
    """Difference-equation response at z = exp(j*omega*dt).

    Evaluates (sum a_hat[k] z^-k) / (1 - sum b_hat[k] z^-(k+1)).  omega is
    rad/s and must sit strictly below the Nyquist angular frequency
    pi * loop_rate.
    """
    if not (math.isfinite(omega) and omega > 0.0):
        raise ValueError(f"omega must be positive and finite, got {omega!r}")
    if omega >= math.pi * coeffs.loop_rate_hz:
        raise AboveNyquistError(
            f"omega = {omega} rad/s is not below the Nyquist angular "
            f"frequency {math.pi * coeffs.loop_rate_hz} rad/s"
        )
    zinv = cmath.exp(complex(0.0, -omega / coeffs.loop_rate_hz))
    num = 0j
    zk = 1.0 + 0j
    for a in coeffs.a_hat:
        num += a * zk
        zk *= zinv
    den = 1.0 + 0j
    zk = zinv
    for b in coeffs.b_hat:
        den -= b * zk
        zk *= zinv
    if den == 0.0:
        raise DenominatorZeroError(f"response denominator vanishes at omega = {omega}")
    return num / den


def _to_points(
    freqs_hz: Sequence[float], response: Sequence[complex]
) -> list[FrequencyResponsePoint]:
    mags = np.abs(np.asarray(response, dtype=complex))
    with np.errstate(divide="ignore"):
        mag_db = 20.0 * np.log10(mags)
    phase_deg = np.degrees(np.unwrap(np.angle(np.asarray(response, dtype=complex))))
    return [
        FrequencyResponsePoint(float(f), float(m), float(p))
        for f, m, p in zip(freqs_hz, mag_db, phase_deg)
    ]


def bode_continuous(
    tf: ContinuousTransferFunction, freqs_hz: Sequence[float]
) -> list[FrequencyResponsePoint]:
    """Analytic continuous response over a frequency grid (Hz)."""
    h = [analytic_response_continuous(tf, 2.0 * math.pi * f) for f in freqs_hz]
    return _to_points(freqs_hz, h)


def bode_digital(
    coeffs: DigitalFilterCoefficients, freqs_hz: Sequence[float]
) -> list[FrequencyResponsePoint]:
    """Analytic digital response over a frequency grid (Hz)."""
    h = [analytic_response_digital(coeffs, 2.0 * math.pi * f) for f in freqs_hz]
    return _to_points(freqs_hz, h)


def _fit_quadrature(
    sin_ref: np.ndarray, cos_ref: np.ndarray, u: np.ndarray
) -> complex:
    # Least-squares fit u ~ p*sin_ref + q*cos_ref via the 2x2 normal
    # equations; returns p + jq.  Solving exactly (instead of summing
    # u*exp(-j*phase)) removes the second-harmonic leakage of short
    # windows.
    sss = float(sin_ref @ sin_ref)
    scc = float(cos_ref @ cos_ref)
    ssc = float(sin_ref @ cos_ref)
    us = float(u @ sin_ref)
    uc = float(u @ cos_ref)
    det = sss * scc - ssc * ssc
    if det <= 0.0:
        raise ValueError("degenerate demodulation window")
    p = (scc * us - ssc * uc) / det
    q = (sss * uc - ssc * us) / det
    return complex(p, q)


def stepped_sine_bode(
    coeffs: DigitalFilterCoefficients,
    freq_grid_hz: Sequence[float],
    settle_cycles: int = 20,
    measure_cycles: int = 5,
) -> list[FrequencyResponsePoint]:
    """Measure the response one frequency at a time with unit sines.

    Parameters
    ----------
    coeffs : DigitalFilterCoefficients
        The filter under test; runs at its design rate.
    freq_grid_hz : sequence of float
        Probe frequencies, each below STEPPED_SINE_MAX_FREQ_FRACTION of the
        loop rate.
    settle_cycles : int
        Input cycles discarded before measuring (>= 5); lets the filter
        transient die off.
    measure_cycles : int
        Input cycles fitted with least squares (>= 2).

    Returns
    -------
    list of FrequencyResponsePoint
        Magnitude 20*log10 sqrt(p**2 + q**2) and phase atan2(q, p) of the
        fit y ~ p sin + q cos, phase unwrapped along the grid.
    """
    if settle_cycles < 5:
        raise ValueError("settle_cycles must be at least 5")
    if measure_cycles < 2:
        raise ValueError("measure_cycles must be at least 2")
    rate = coeffs.loop_rate_hz
    freqs = [float(f) for f in freq_grid_hz]
    if not freqs:
        raise ValueError("frequency grid is empty")
    for f in freqs:
        if not (0.0 < f < STEPPED_SINE_MAX_FREQ_FRACTION * rate):
            raise ValueError(
                f"grid frequency {f} Hz outside (0, "
                f"{STEPPED_SINE_MAX_FREQ_FRACTION} * loop rate)"
            )
    responses = []
    for f in freqs:
        duration = (settle_cycles + measure_cycles) / f
        series = generate_sine(f, 1.0, 0.0, duration, rate)
        out = process(coeffs, series)
        i0 = int(round(settle_cycles / f * rate))
        t = series.times[i0:]
        w = 2.0 * math.pi * f
        responses.append(
            _fit_quadrature(np.sin(w * t), np.cos(w * t), out.samples[i0:])
        )
    return _to_points(freqs, responses)


def chirp_bode(
    coeffs: DigitalFilterCoefficients,
    spec: ChirpSpec,
    window_cycles: float = 4.0,
    hop_cycles: float = 1.0,
) -> list[FrequencyResponsePoint]:
    """Measure the response in one pass by demodulating a chirp.

    The chirp is filtered once; input and output are then demodulated
    against the generator's own accumulated phase over a sliding window
    spanning ``window_cycles`` of that phase, hopping by ``hop_cycles``.
    The amplitude ratio gives the magnitude, the phase difference the
    phase, one point per hop at the window's average frequency.  Windows
    that would run past the end of the sweep are dropped, not padded.

    The sweep must cover at least two decades and be sampled at the
    filter's design rate.
    """
    if spec.omega_max < 100.0 * spec.omega_min:
        raise ValueError("sweep must cover at least two decades")
    if spec.amplitude == 0.0:
        raise ValueError("chirp amplitude must be nonzero")
    if window_cycles <= 0.0 or hop_cycles <= 0.0:
        raise ValueError("window_cycles and hop_cycles must be positive")
    if abs(spec.sample_rate - coeffs.loop_rate_hz) > 1e-9 * coeffs.loop_rate_hz:
        raise RateMismatchError(
            f"sweep rate {spec.sample_rate} Hz != design rate "
            f"{coeffs.loop_rate_hz} Hz"
        )
    x = generate_chirp(spec)
    y = process(coeffs, x)
    phase = chirp_phase(spec)
    sin_ref = np.sin(phase)
    cos_ref = np.cos(phase)
    xs = x.samples
    ys = y.samples
    dt = 1.0 / spec.sample_rate
    total_phase = float(phase[-1])
    window_span = 2.0 * math.pi * window_cycles
    hop_span = 2.0 * math.pi * hop_cycles
    freqs: list[float] = []
    ratios: list[complex] = []
    w = 0
    while True:
        start = w * hop_span
        end = start + window_span
        if end > total_phase:
            break
        i0 = int(np.searchsorted(phase, start, side="left"))
        i1 = int(np.searchsorted(phase, end, side="left"))
        w += 1
        if i1 - i0 < 4:
            continue
        sl = slice(i0, i1)
        cx = _fit_quadrature(sin_ref[sl], cos_ref[sl], xs[sl])
        cy = _fit_quadrature(sin_ref[sl], cos_ref[sl], ys[sl])
        if cx == 0.0:
            continue
        span = float(phase[i1 - 1] - phase[i0])
        elapsed = (i1 - 1 - i0) * dt
        if elapsed <= 0.0:
            continue
        freqs.append(span / elapsed / (2.0 * math.pi))
        ratios.append(cy / cx)
    if not freqs:
        raise ValueError("sweep too short: no demodulation window fits")
    return _to_points(freqs, ratios)


def compare_responses(
    a: Sequence[FrequencyResponsePoint], b: Sequence[FrequencyResponsePoint]
) -> ResponseComparison:
    """Deviations between two curves on their common frequency range.

    The second curve is interpolated onto the first curve's grid points
    inside the overlap, linearly in log-frequency.  Magnitudes below the
    -300 dB file floor are clamped before differencing so a transmission
    zero does not produce an infinite deviation.
    """
    if not a or not b:
        raise ValueError("cannot compare an empty response curve")
    fa = np.array([p.freq_hz for p in a])
    fb = np.array([p.freq_hz for p in b])
    if np.any(fa <= 0.0) or np.any(fb <= 0.0):
        raise ValueError("response frequencies must be positive")
    order_a = np.argsort(fa)
    order_b = np.argsort(fb)
    fa = fa[order_a]
    fb = fb[order_b]
    mag_a = np.maximum([a[i].magnitude_db for i in order_a], MAGNITUDE_DB_FLOOR)
    mag_b = np.maximum([b[i].magnitude_db for i in order_b], MAGNITUDE_DB_FLOOR)
    ph_a = np.array([a[i].phase_deg for i in order_a])
    ph_b = np.array([b[i].phase_deg for i in order_b])
    lo = max(fa[0], fb[0])
    hi = min(fa[-1], fb[-1])
    if lo > hi:
        raise DisjointRangesError(
            f"no overlap: [{fa[0]}, {fa[-1]}] Hz vs [{fb[0]}, {fb[-1]}] Hz"
        )
    keep = (fa >= lo) & (fa <= hi)
    fc = fa[keep]
    dmag = np.abs(mag_a[keep] - np.interp(np.log10(fc), np.log10(fb), mag_b))
    dph = np.abs(ph_a[keep] - np.interp(np.log10(fc), np.log10(fb), ph_b))
    return ResponseComparison(
        points_compared=int(fc.size),
        max_abs_magnitude_db=float(dmag.max()),
        mean_abs_magnitude_db=float(dmag.mean()),
        max_abs_phase_deg=float(dph.max()),
        mean_abs_phase_deg=float(dph.mean()),
    )


def write_bode_csv(points: Iterable[FrequencyResponsePoint], fh: TextIO) -> None:
    """Write a response curve as CSV with 9 significant digits."""
    fh.write(BODE_CSV_HEADER + "\n")
    for p in points:
        mag = max(p.magnitude_db, MAGNITUDE_DB_FLOOR)
        fh.write(f"{p.freq_hz:.9g},{mag:.9g},{p.phase_deg:.9g}\n")


def read_bode_csv(fh: TextIO) -> list[FrequencyResponsePoint]:
    """Read a response curve written by write_bode_csv."""
    header = fh.readline().strip()
    if header != BODE_CSV_HEADER:
        raise ValueError(
            f"expected header {BODE_CSV_HEADER!r}, got {header!r}"
        )
    points = []
    for lineno, line in enumerate(fh, start=2):
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 columns, got {len(parts)}")
        try:
            f, m, p = (float(v) for v in parts)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        points.append(FrequencyResponsePoint(f, m, p))
    return points
