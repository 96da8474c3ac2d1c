"""Growth and asymptotics of the coefficients: the -A/k^2 trend, the
oscillation envelope left after removing it, and samples of the Riesz
function."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import mpmath as mp
import numpy as np

from .kernel import hurwitz_zeta_derivative, riemann_zeta
from .representations import F_function

MIN_POINTS = 8          # below this a window is refused
RECOMMENDED_POINTS = 16  # below this the fit is flagged short
PRE_ASYMPTOTIC_K = 100


class WindowError(ValueError):
    pass


@dataclass
class GrowthFit:
    model: str  # "trend" or "envelope"
    window: tuple
    value: float | None  # amplitude A or exponent rho
    stderr: float | None
    residual_norm: float
    points: int
    flags: list = field(default_factory=list)
    status: str = "ok"  # ok, flagged, indeterminate
    noise_floor: float | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "model": self.model, "window": list(self.window), "value": self.value, "stderr": self.stderr,
            "residual_norm": self.residual_norm, "points": self.points, "flags": list(self.flags),
            "status": self.status, "noise_floor": self.noise_floor, "note": self.note,
        }


def _window(ks, values, window):
    ks = np.asarray(ks, dtype=np.float64)
    vals = np.asarray([float(v) for v in values], dtype=np.float64)
    if window is not None:
        lo, hi = window
        m = (ks >= lo) & (ks <= hi)
        ks, vals = ks[m], vals[m]
    ok = np.isfinite(vals)
    ks, vals = ks[ok], vals[ok]
    if len(ks) < MIN_POINTS:
        raise WindowError(f"window holds {len(ks)} usable points; at least {MIN_POINTS} are needed")
    return ks, vals


def trend_fit(ks: Sequence, values: Sequence, window: tuple | None = None) -> GrowthFit:
    """Least-squares constant fit of c_k k^2 over the window.

    Flags: ``short-window`` (fewer than 16 points), ``pre-asymptotic``
    (window starts below k = 100), ``unstable`` (the two halves of the window
    give amplitudes more than 5% apart) and ``high-residual`` (residual above
    20% of the signal).
    """
    k, v = _window(ks, values, window)
    y = v * k ** 2
    A = float(np.mean(y))
    resid = y - A
    n = len(y)
    stderr = float(np.std(resid, ddof=1) / math.sqrt(n)) if n > 1 else float("nan")
    rnorm = float(np.sqrt(np.mean(resid ** 2)))
    flags = []
    if n < RECOMMENDED_POINTS:
        flags.append("short-window")
    if k[0] < PRE_ASYMPTOTIC_K:
        flags.append("pre-asymptotic")
    half = n // 2
    a1, a2 = float(np.mean(y[:half])), float(np.mean(y[half:]))
    if abs(a1 - a2) > 0.05 * max(abs(A), 1e-300):
        flags.append("unstable")
    if rnorm > 0.2 * max(abs(A), 1e-300):
        flags.append("high-residual")
    return GrowthFit("trend", (int(k[0]), int(k[-1])), A, stderr, rnorm, n, flags,
                     "flagged" if flags else "ok")


@lru_cache(maxsize=4)
def _trivial_zero_coefficients(terms: int) -> tuple:
    with mp.workdps(30):
        return tuple(float(mp.factorial(m) / (2 * mp.re(hurwitz_zeta_derivative(-2 * m, 1, 1, 30)))) for m in range(1, terms + 1))


def trivial_zero_trend(k, terms: int = 40) -> np.ndarray:
    """Contribution of the trivial zeros -2m of zeta to c_k:
    sum_m m! k! / ((k+m+1)! 2 zeta'(-2m)).  The m = 1 term is
    A/((k+1)(k+2)); the series converges for every k because zeta'(-2m)
    grows like (2m)!/(2 pi)^{2m}."""
    coef = _trivial_zero_coefficients(terms)
    k = np.asarray(k, dtype=np.float64)
    out = np.zeros_like(k)
    prod = k + 1
    for m, cm in enumerate(coef, start=1):
        prod = prod * (k + m + 1)
        out = out + cm / prod
    return out


def envelope_exponent(
    ks: Sequence,
    values: Sequence,
    window: tuple | None = None,
    amplitude: float | None = None,
    noise_floor: float | Sequence | None = None,
    bins: int = 12,
) -> GrowthFit:
    """Exponent rho in max|c_k - A/k^2| ~ k^{-rho}, from a log-log regression of
    the per-bin maxima over geometric bins.

    The trend removed is the full trivial-zero series by default; passing
    ``amplitude`` (or ``amplitude="fit"``) uses A/k^2 instead.
    ``noise_floor`` is the absolute accuracy of the inputs (scalar or per k);
    with a fitted amplitude the uncertainty stderr(A)/k^2 is added to it.
    Bins whose maximum is within 10x of the floor are dropped; with fewer
    than 3 bins left the outcome is ``indeterminate`` and no exponent is
    reported.
    """
    k, v = _window(ks, values, window)
    if amplitude is None:
        r = np.abs(v - trivial_zero_trend(k))
        dA = 0.0
    else:
        if amplitude == "fit":
            tf = trend_fit(k, v)
            A, dA = tf.value, tf.stderr
        else:
            A, dA = float(amplitude), 0.0
        r = np.abs(v - A / k ** 2)
    floor = np.zeros_like(k)
    if noise_floor is not None:
        nf = np.asarray(noise_floor, dtype=np.float64)
        floor = floor + (nf if nf.ndim == 0 else nf[: len(k)])
    floor = floor + (dA if np.isfinite(dA) else 0.0) / k ** 2
    edges = np.geomspace(k[0], k[-1] * (1 + 1e-12), bins + 1)
    xs, ys, dropped = [], [], 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        m = (k >= lo) & (k < hi)
        if not m.any():
            continue
        i = int(np.argmax(np.where(m, r, -1.0)))
        if r[i] <= 10 * floor[i] or r[i] == 0:
            dropped += 1
            continue
        xs.append(math.log(k[i]))
        ys.append(math.log(r[i]))
    nf_report = float(np.max(floor))
    if len(xs) < 3:
        return GrowthFit("envelope", (int(k[0]), int(k[-1])), None, None, float("nan"), len(k),
                         ["below-noise-floor"], "indeterminate", nf_report,
                         f"{dropped} of {bins} bins within 10x of the noise floor")
    X = np.vstack([np.ones(len(xs)), xs]).T
    coef, res, *_ = np.linalg.lstsq(X, np.array(ys), rcond=None)
    fitted = X @ coef
    resid = np.array(ys) - fitted
    dof = max(len(xs) - 2, 1)
    s2 = float(resid @ resid) / dof
    cov = s2 * np.linalg.inv(X.T @ X)
    rho = -float(coef[1])
    flags = ["exploratory"]
    if dropped:
        flags.append("bins-dropped")
    return GrowthFit("envelope", (int(k[0]), int(k[-1])), rho, float(math.sqrt(cov[1, 1])),
                     float(math.sqrt(np.mean(resid ** 2))), len(k), flags, "flagged", nf_report,
                     f"{len(xs)} bins used, {dropped} dropped")


@dataclass
class TrendTarget:
    amplitude: object  # via zeta'(-2) evaluated numerically
    closed_form: object  # -2 pi^2 / zeta(3)
    zeta_prime_minus_two: object


def trend_target(dps: int = 30) -> TrendTarget:
    """Amplitude of the -A/k^2 trend.

    Writing c_k as a Rice integral of B(k+1, -z)/zeta(2z+2) and moving the
    contour left, the trivial zero at z = -2 contributes
    Gamma(2) k!/(k+2)! / (2 zeta'(-2)) ~ A/k^2 with A = 1/(2 zeta'(-2)).
    zeta'(-2) is computed numerically here; the closed form -2 pi^2/zeta(3)
    follows from zeta'(-2) = -zeta(3)/(4 pi^2).
    """
    with mp.workdps(dps + 10):
        zp = mp.re(hurwitz_zeta_derivative(-2, 1, 1, dps + 10))
        amp = mp.gamma(2) / (2 * zp)
        closed = -2 * mp.pi ** 2 / riemann_zeta(3, dps + 10)
    with mp.workdps(dps):
        return TrendTarget(+amp, +closed, +zp)


@dataclass
class RieszRow:
    x: object
    value: object | None
    normalized: object | None
    check: object | None = None  # |R at dps - R at dps+10|
    error: str | None = None


def riesz_growth(x_samples: Sequence, dps: int = 20, max_digits: int = 4000) -> list[RieszRow]:
    """R(x) = F(x, 2, 1) and x^{-1/4} R(x) at ascending samples; each value is
    recomputed with 10 more digits and the difference recorded."""
    xs = [mp.mpf(x) for x in x_samples]
    if any(x <= 0 for x in xs) or any(b < a for a, b in zip(xs, xs[1:])):
        raise ValueError("samples must be positive and ascending")
    rows = []
    for x in xs:
        try:
            v = F_function(x, 2, 1, dps, max_digits)
            v2 = F_function(x, 2, 1, dps + 10, max_digits)
        except ValueError as exc:
            rows.append(RieszRow(x, None, None, None, str(exc)))
            continue
        with mp.workdps(dps):
            rows.append(RieszRow(x, v, v * x ** (-mp.mpf(1) / 4), abs(v - v2)))
    return rows
