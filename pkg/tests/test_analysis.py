import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetacoeffs.analysis import (
    MIN_POINTS,
    WindowError,
    envelope_exponent,
    riesz_growth,
    trend_fit,
    trend_target,
    trivial_zero_trend,
)


def test_trend_target_two_routes():
    t = trend_target(30)
    with mp.workdps(30):
        assert abs(t.amplitude - t.closed_form) < 1e-20
        assert abs(t.closed_form - mp.mpf("-16.421193331442471")) < 1e-13
        assert abs(t.zeta_prime_minus_two + mp.zeta(3) / (4 * mp.pi ** 2)) < 1e-25


@given(st.floats(-50, 50).filter(lambda a: abs(a) > 0.1))
@settings(max_examples=25)
def test_trend_fit_recovers_synthetic_amplitude(A):
    k = np.arange(200, 3001, 10)
    fit = trend_fit(k, A / k ** 2)
    assert fit.value == pytest.approx(A, rel=1e-12)
    assert fit.status == "ok"


def test_trend_fit_flags():
    k = np.arange(10, 21)
    fit = trend_fit(k, -5 / k ** 2)
    assert "short-window" in fit.flags and "pre-asymptotic" in fit.flags
    k = np.arange(200, 400)
    noisy = (-5 + 20 * np.sin(k)) / k ** 2
    assert "high-residual" in trend_fit(k, noisy).flags
    drift = (-5 - k / 100) / k ** 2
    assert "unstable" in trend_fit(k, drift).flags


def test_window_too_small():
    k = np.arange(1, 100)
    with pytest.raises(WindowError):
        trend_fit(k, 1 / k ** 2, (10, 10 + MIN_POINTS - 2))


def test_trivial_zero_trend_leading_term():
    A = float(trend_target().amplitude)
    k = np.array([1e3, 1e4])
    t = trivial_zero_trend(k)
    lead = A / ((k + 1) * (k + 2))
    # the m = 2 term is smaller by a factor of about 7.6/k
    assert np.all(np.abs(t - lead) < 10 / k * np.abs(lead))
    assert np.all(np.abs(t - lead) > 5 / k * np.abs(lead))


def test_trivial_zero_trend_first_coefficient():
    from zetacoeffs.analysis import _trivial_zero_coefficients
    c = _trivial_zero_coefficients(3)
    assert c[0] == pytest.approx(float(trend_target().amplitude), rel=1e-14)


def test_envelope_recovers_synthetic_exponent():
    k = np.arange(100, 20001)
    vals = trivial_zero_trend(k) + k ** -0.75 * np.cos(0.7 * np.sqrt(k))
    fit = envelope_exponent(k, vals)
    assert fit.value == pytest.approx(0.75, abs=0.05)
    assert "exploratory" in fit.flags


def test_envelope_indeterminate_below_noise():
    k = np.arange(100, 5000)
    vals = trivial_zero_trend(k) + 1e-12 * np.cos(k)
    fit = envelope_exponent(k, vals, noise_floor=1e-11)
    assert fit.status == "indeterminate" and fit.value is None


def test_envelope_with_fitted_amplitude():
    k = np.arange(200, 3000)
    vals = -16.42 / k ** 2 + 1e-3 * k ** -1.0 * np.cos(k / 7)
    fit = envelope_exponent(k, vals, amplitude=-16.42)
    assert fit.value == pytest.approx(1.0, abs=0.1)
    fit2 = envelope_exponent(k, vals, amplitude="fit")
    assert fit2.status in ("flagged", "indeterminate")


def test_fit_json_roundtrip():
    k = np.arange(200, 300)
    d = trend_fit(k, -3 / k ** 2).to_json()
    assert d["model"] == "trend" and d["points"] == 100 and d["window"] == [200, 299]


def test_riesz_growth_rows():
    rows = riesz_growth([1, 10, 50], dps=15)
    assert all(r.error is None for r in rows)
    assert all(r.check < 1e-12 for r in rows)
    with mp.workdps(15):
        assert abs(rows[0].normalized - rows[0].value) < 1e-14
    with pytest.raises(ValueError):
        riesz_growth([3, 2])


def test_riesz_growth_budget_error_row():
    rows = riesz_growth([1e5], dps=15, max_digits=50)
    assert rows[0].value is None and "digits" in rows[0].error
