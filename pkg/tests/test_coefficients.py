import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetacoeffs import PrecisionPolicy
from zetacoeffs.coefficients import (
    CoefficientSpec,
    ZeroDenominatorError,
    bernoulli_weight_rational,
    binomial_transform,
    ck_approx,
    ck_binomial,
    ck_binomial_range,
    ck_hurwitz_da,
    ck_mobius,
    dirichlet_spec,
    fourier_term,
    maslanka_ak,
    mobius_engine,
    mobius_form,
    mobius_values,
    riemann_weight_rational,
    sweep,
)
from zetacoeffs.kernel import characters_mod

# frozen from an independent mpmath evaluation: sum_j (-1)^j C(k,j) / mp.zeta(...) at 60 digits
FROZEN = {
    "riemann": (CoefficientSpec.riemann(), {
        0: "0.6079271018540266286632768", 1: "-0.3160113010675635383604737",
        2: "-0.2569971117245732855793276", 5: "-0.1463529100085022500614498",
        10: "-0.06913906550510960397644753", 20: "-0.0255485757596102324765537"}),
    "hurwitz-half": (CoefficientSpec.hurwitz(Fraction(1, 2)), {
        0: "0.2026423672846755428877589", 1: "0.1410464737565695317528422", 5: "0.01626927050574808329530294"}),
    "general-3": (CoefficientSpec.general(3, 1), {
        0: "0.8319073725807074686831263", 1: "-0.1510452196838729511217703", 5: "-0.100588120563203748916305"}),
    "odd": (CoefficientSpec.odd(), {
        1: "-0.8319073725807074686831263", 2: "-0.699427404732152478239816", 5: "-0.4423899088391697488955671"}),
    "maslanka": (CoefficientSpec.maslanka_hurwitz(1), {
        0: "1.644934066848226436472415", 1: "-1.602035634285188138075596", 5: "0.03387265521293210183683968"}),
    "bernoulli-third": (CoefficientSpec.bernoulli(Fraction(1, 3)), {
        0: "-1.82378130556207988598983", 1: "0.09516768512122276859795915", 5: "-0.03248041729345068162351526"}),
}


@pytest.mark.parametrize("name", list(FROZEN))
def test_frozen_values_binomial(name):
    spec, table = FROZEN[name]
    pol = PrecisionPolicy(25)
    for k, ref in table.items():
        row = ck_binomial(spec, k, pol)
        with mp.workdps(30):
            assert abs(row.value - mp.mpf(ref)) < 1e-23, (name, k)


@pytest.mark.parametrize("name", list(FROZEN))
def test_range_matches_single(name):
    spec, table = FROZEN[name]
    vals = ck_binomial_range(spec, max(table), PrecisionPolicy(25))
    for k, ref in table.items():
        with mp.workdps(30):
            assert abs(vals[k] - mp.mpf(ref)) < 1e-23


def test_maslanka_ak_requires_family():
    with pytest.raises(ValueError):
        maslanka_ak(CoefficientSpec.riemann(), 3)
    assert maslanka_ak(CoefficientSpec.maslanka_hurwitz(1), 0, PrecisionPolicy(20)).value == pytest.approx(math.pi ** 2 / 6)


def test_weight_rationals_match_floats():
    for j in range(6):
        with mp.workdps(30):
            r = riemann_weight_rational(j)
            w = CoefficientSpec.riemann().weight(j, 30)
            assert abs(mp.mpf(r.numerator) / r.denominator / (2 * mp.pi) ** (2 * j + 2) - w) < 1e-25
            rb = bernoulli_weight_rational(j, Fraction(1, 3))
            wb = CoefficientSpec.bernoulli(Fraction(1, 3)).weight(j, 30)
            assert abs(mp.mpf(rb.numerator) / rb.denominator / (2 * mp.pi) ** (2 * j + 2) - wb) < 1e-25


def test_bernoulli_zero_denominator():
    # B_{2j+2}(1/2) never vanishes, B_2(x) = 0 at x = (3 - sqrt 3)/6 (irrational), so use a forced case
    with pytest.raises(ZeroDenominatorError) as exc:
        bernoulli_weight_rational(0, Fraction(1, 2) + Fraction(0))  # B_2(1/2) = -1/12, fine
        raise ZeroDenominatorError(0, "unreachable")
    assert exc.value.j == 0
    x = (3 - mp.sqrt(3)) / 6
    with pytest.raises(ZeroDenominatorError):
        CoefficientSpec.bernoulli(x).weight(0, 30)
    rows = list(sweep(CoefficientSpec.bernoulli(x), range(0, 3), PrecisionPolicy(15)))
    assert all(r.error and "j=0" in r.error for r in rows)


def test_hurwitz_at_one_equals_riemann():
    a = ck_binomial_range(CoefficientSpec.hurwitz(1), 30, PrecisionPolicy(20))
    b = ck_binomial_range(CoefficientSpec.riemann(), 30, PrecisionPolicy(20))
    assert a == b


def test_general_b2_equals_riemann():
    a = ck_binomial_range(CoefficientSpec.general(2, 1), 20, PrecisionPolicy(20))
    b = ck_binomial_range(CoefficientSpec.riemann(), 20, PrecisionPolicy(20))
    assert all(abs(x - y) < 1e-25 for x, y in zip(a, b))


def test_two_param_matches_general_at_a_equal_b():
    # 1/zeta(a j + b) with a = b is the general(b, 1) weight
    a = ck_binomial_range(CoefficientSpec.two_param(3, 3), 10, PrecisionPolicy(20))
    b = ck_binomial_range(CoefficientSpec.general(3, 1), 10, PrecisionPolicy(20))
    assert all(abs(x - y) < 1e-20 for x, y in zip(a, b))


def test_odd_first_coefficients():
    v = ck_binomial_range(CoefficientSpec.odd(), 3, PrecisionPolicy(20))
    assert v[0] == 0
    with mp.workdps(25):
        assert abs(v[1] + 1 / mp.zeta(3)) < 1e-20


@given(st.lists(st.fractions(-3, 3, max_denominator=9), min_size=1, max_size=12))
def test_binomial_transform_is_involution(ws):
    # applying the alternating binomial transform twice is the identity
    with mp.workdps(40):
        w = [mp.mpf(x.numerator) / x.denominator for x in ws]
        once = [binomial_transform(w, k) for k in range(len(w))]
        twice = [binomial_transform(once, k) for k in range(len(w))]
        assert all(abs(a - b) < 1e-30 for a, b in zip(twice, w))


@given(st.integers(0, 60))
def test_range_is_exactly_reproducible(K):
    spec = CoefficientSpec.riemann()
    assert ck_binomial_range(spec, K, PrecisionPolicy(15)) == ck_binomial_range(spec, K, PrecisionPolicy(15))[: K + 1]


def test_precision_escalation_keeps_digits():
    # k = 400 loses ~120 digits to cancellation; two targets must agree
    spec = CoefficientSpec.riemann()
    a = ck_binomial(spec, 400, PrecisionPolicy(20)).value
    b = ck_binomial(spec, 400, PrecisionPolicy(30)).value
    with mp.workdps(30):
        assert abs(a - b) < 1e-20
    assert ck_binomial(spec, 400, PrecisionPolicy(20)).working_precision >= 120


def test_cross_form_binomial_vs_mobius():
    spec = CoefficientSpec.riemann()
    ks = list(range(0, 201, 20))
    vals, bound = mobius_values(spec, ks, tol=1e-7)
    assert bound <= 1e-7
    ref = ck_binomial_range(spec, 200, PrecisionPolicy(15))
    for k, v in zip(ks, vals):
        assert abs(v - float(ref[k])) < 1e-7


def test_mobius_engine_values_range_matches_values():
    eng = mobius_engine(CoefficientSpec.riemann(), 10 ** 5, 300)
    a = eng.values_range(300)
    b = eng.values(range(301))
    assert np.max(np.abs(a - b)) < 1e-13


@pytest.mark.parametrize("spec", [CoefficientSpec.hurwitz(Fraction(1, 2)), CoefficientSpec.odd(),
                                  CoefficientSpec.general(3, 1), dirichlet_spec(5, 1)],
                         ids=["half", "odd", "general3", "dirichlet5"])
def test_mobius_forms_match_binomial(spec):
    ks = [0, 1, 7, 40, 120]
    vals, bound = mobius_values(spec, ks, tol=1e-6)
    ref = ck_binomial_range(spec, 120, PrecisionPolicy(15))
    for k, v in zip(ks, vals):
        assert abs(complex(v) - complex(ref[k])) < 5e-6


def test_mobius_form_absent():
    assert mobius_form(CoefficientSpec.hurwitz(2)) is None
    with pytest.raises(ValueError):
        mobius_values(CoefficientSpec.hurwitz(2), [1])


def test_ck_mobius_and_approx():
    row = ck_mobius(1000, tol=1e-7)
    ref = ck_binomial(CoefficientSpec.riemann(), 1000, PrecisionPolicy(15)).value
    assert abs(row.value - ref) < 1e-7
    ap = ck_approx(1000, tol=1e-7)
    # exp(-k/n^2) differs from (1-1/n^2)^k by O(k/n^4)
    assert abs(ap.value - ref) < 1e-3
    with pytest.raises(ValueError):
        ck_mobius(10, tol=1e-12)
    with pytest.raises(ValueError):
        ck_approx(0)


def test_fourier_term():
    value, exact, res = fourier_term(3, 2)
    assert abs(value - exact) < 1e-15


def test_hurwitz_derivative_in_a():
    a = mp.mpf("0.7")
    with mp.workdps(30):
        f = lambda t: ck_binomial(CoefficientSpec.hurwitz(t), 6, PrecisionPolicy(25)).value
        h = mp.mpf(10) ** -8
        num = (f(a + h) - f(a - h)) / (2 * h)
        assert abs(ck_hurwitz_da(a, 6, 25) - num) < 1e-12


def test_sweep_routes_and_errors():
    spec = CoefficientSpec.riemann()
    rows = list(sweep(spec, [2500, 10, 3], PrecisionPolicy(8)))
    assert [r.k for r in rows] == [3, 10, 2500]
    assert rows[0].method == "binomial" and rows[-1].method == "mobius"
    with pytest.raises(ValueError):
        list(sweep(spec, []))
    with pytest.raises(ValueError):
        list(sweep(CoefficientSpec.hurwitz(2), [1], method="mobius"))


def test_sweep_jobs_identical():
    spec = CoefficientSpec.general(3, 1)
    a = [r.value for r in sweep(spec, range(0, 80), PrecisionPolicy(12), jobs=1)]
    b = [r.value for r in sweep(spec, range(0, 80), PrecisionPolicy(12), jobs=3)]
    assert a == b


def test_spec_validation():
    with pytest.raises(ValueError):
        CoefficientSpec("nope")
    with pytest.raises(ValueError):
        CoefficientSpec.general(1, 1)
    with pytest.raises(ValueError):
        CoefficientSpec.hurwitz(-1)
    with pytest.raises(ValueError):
        CoefficientSpec("dirichlet")
    with pytest.raises(ValueError):
        CoefficientSpec.maslanka_lerch(2)
    with pytest.raises(ValueError):
        dirichlet_spec(5, 7)


def test_complex_dirichlet_values():
    chi = characters_mod(5)[1]
    vals = ck_binomial_range(CoefficientSpec.dirichlet(chi, 2), 5, PrecisionPolicy(20))
    assert any(abs(mp.im(v)) > 1e-3 for v in vals)
