from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from zetacoeffs.combinatorics import (
    MOBIUS_CAP,
    bernoulli_number,
    bernoulli_poly,
    binomial,
    complete_bell,
    complete_bell_all,
    faa_di_bruno_rhs,
    g_derivatives,
    g_derivatives_at_one,
    gen_binomial,
    lagrange_product_identity,
    mobius_blocks,
    mobius_sieve,
    pochhammer_derivatives,
    pochhammer_eval,
    pochhammer_poly,
    pochhammer_poly_stirling,
    pochhammer_sequence,
    power_derivatives,
    stirling_first,
    taylor_shift,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def test_binomial_domain():
    assert binomial(10, 3) == 120
    with pytest.raises(ValueError):
        binomial(3, 4)


@given(rationals, st.integers(0, 12))
def test_gen_binomial_matches_sympy(x, j):
    assert gen_binomial(x, j) == Fraction(str(sympy.binomial(sympy.Rational(x.numerator, x.denominator), j)))


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 10, 20, 50, 101, 200])
def test_bernoulli_matches_sympy(n):
    ref = sympy.bernoulli(n)
    if n == 1:
        ref = sympy.Rational(-1, 2)  # older sympy used +1/2
    assert bernoulli_number(n) == Fraction(int(ref.p), int(ref.q))


@given(st.integers(0, 30), rationals)
def test_bernoulli_poly_reflection(n, x):
    # B_n(1 - x) = (-1)^n B_n(x)
    assert bernoulli_poly(n, 1 - x) == (-1) ** n * bernoulli_poly(n, x)


@given(st.integers(1, 30), rationals)
def test_bernoulli_poly_difference(n, x):
    # B_n(x + 1) - B_n(x) = n x^(n-1)
    assert bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == n * x ** (n - 1)


def test_bernoulli_poly_float_branch():
    assert abs(bernoulli_poly(6, 0.3) - mp.bernpoly(6, 0.3)) < 1e-14


@pytest.mark.parametrize("k", [0, 1, 5, 12, 30])
def test_stirling_matches_sympy(k):
    from sympy.functions.combinatorial.numbers import stirling
    for l in range(k + 1):
        assert stirling_first(k, l) == int(stirling(k, l, kind=1, signed=True))


def test_stirling_domain():
    with pytest.raises(ValueError):
        stirling_first(3, 5)


def test_complete_bell_small_cases():
    x1, x2, x3 = 2, 3, 5
    ys = complete_bell_all([x1, x2, x3])
    assert ys == [1, x1, x1 ** 2 + x2, x1 ** 3 + 3 * x1 * x2 + x3]


@given(st.lists(rationals, min_size=1, max_size=8))
def test_complete_bell_of_cumulants(xs):
    # Y_n(x, 0, 0, ...) = x^n
    seq = [xs[0]] + [Fraction(0)] * (len(xs) - 1)
    assert complete_bell(seq) == xs[0] ** len(xs)


@given(st.integers(0, 25))
def test_pochhammer_two_constructions_agree(k):
    assert list(pochhammer_poly(k)) == pochhammer_poly_stirling(k)


@given(st.integers(0, 25), rationals)
def test_pochhammer_poly_evaluates_like_product(k, s):
    poly = pochhammer_poly(k)
    assert sum(c * s ** i for i, c in enumerate(poly)) == pochhammer_eval(k, s)


@given(st.integers(1, 20), st.integers(1, 20))
def test_pochhammer_vanishes_at_integers(k, m):
    # (1 - m)_k = 0 for 1 <= m <= k
    v = pochhammer_eval(k, m)
    assert (v == 0) == (m <= k)


def test_pochhammer_sequence_and_float_branch():
    seq = pochhammer_sequence(10, 0.3)
    for k in range(11):
        assert abs(seq[k] - mp.rf(0.7, k) / mp.factorial(k)) < 1e-14
        assert abs(pochhammer_eval(k, 0.3) - seq[k]) < 1e-14


def test_g_derivatives_exact_vs_float():
    exact = g_derivatives_at_one(6, 4)
    approx = g_derivatives(6, 1, 4)
    for e, a in zip(exact, approx):
        assert abs(mp.mpf(e.numerator) / e.denominator - a) < 1e-12


def test_g_derivatives_pole():
    with pytest.raises(ValueError):
        g_derivatives(3, 2, 2)


@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_pochhammer_derivatives_match_numeric_diff(j):
    k, s = 5, mp.mpf("0.37")
    with mp.workdps(30):
        ref = mp.diff(lambda t: mp.rf(1 - t / 2, k) / mp.factorial(k), s, j)
        assert abs(pochhammer_derivatives(k, s, j) - ref) < 1e-20


def test_taylor_shift_roundtrip():
    p = [Fraction(3), Fraction(-2), Fraction(5, 7), Fraction(1)]
    q = taylor_shift(p, Fraction(2, 3))
    back = taylor_shift(q, Fraction(-2, 3))
    assert back == p


@given(st.integers(0, 6), st.integers(0, 6), rationals.filter(lambda a: a.denominator > 1))
def test_lagrange_product_identity(n, j, a):
    if j > n:
        return
    lhs, rhs = lagrange_product_identity(n, j, a)
    assert lhs == rhs


@given(st.integers(0, 6), rationals.filter(lambda a: a != 0), st.integers(1, 3))
def test_faa_di_bruno_against_direct_derivative(n, a, z0):
    # x(z) = 1 + z + z^2 is positive at positive integers
    poly = [1, 1, 1]
    v = power_derivatives(poly, a, z0, n)
    assert faa_di_bruno_rhs(poly, a, z0, n) == v[n]


def test_power_derivatives_float_matches_mp_diff():
    a, z0 = mp.mpf("0.4"), mp.mpf("1.3")
    with mp.workdps(30):
        f = lambda z: (1 + z + z * z) ** (-a)
        v = power_derivatives([1, 1, 1], a, z0, 4)
        for m in range(5):
            assert abs(v[m] - mp.diff(f, z0, m) / f(z0)) < 1e-20


def _mu_oracle(n):
    return int(sympy.mobius(n))


def test_mobius_small_table():
    mu = mobius_sieve(200)
    assert mu[0] == 0
    assert all(mu[n] == _mu_oracle(n) for n in range(1, 201))


@given(st.integers(1, 10 ** 6))
def test_mobius_blocks_pointwise(n):
    lo = max(1, n - 5)
    got = {}
    for start, block in mobius_blocks(n + 5, block=7, start=lo):
        for i, v in enumerate(block):
            got[start + i] = int(v)
    assert got[n] == _mu_oracle(n)


def test_mertens_value():
    # M(10^5) = -48
    assert int(mobius_sieve(10 ** 5).astype(np.int64).sum()) == -48


def test_mobius_cap():
    with pytest.raises(ValueError):
        next(mobius_blocks(MOBIUS_CAP + 1))
    with pytest.raises(ValueError):
        next(mobius_blocks(0))
