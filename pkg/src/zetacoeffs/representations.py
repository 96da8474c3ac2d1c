"""Series representations built on the coefficient families, and the
identity checks that tie them to direct function values.

Three kinds of convergence show up here:

* terminating sums, when the Pochhammer argument is a positive integer;
* convergent but slow sums, evaluated from Moebius-form coefficients in
  float64 and accelerated with the epsilon algorithm on partial sums taken
  at geometrically spaced cut-offs;
* divergent sums (shift a >= 2, where 1/zeta(b j + b, a) grows like
  a^(b j)), which are only summable; the epsilon algorithm is applied to the
  partial sums and the result is labelled as a summation, not a limit.
"""

from __future__ import annotations

import math
import time
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import mpmath as mp
import numpy as np

from .combinatorics import (
    complete_bell,
    complete_bell_all,
    g_derivatives_at_one,
    mobius_sieve,
    pochhammer_eval,
    pochhammer_sequence,
    stirling_first,
)
from .coefficients import (
    CoefficientSpec,
    ck_binomial_range,
    mobius_engine,
    mobius_form,
)
from .kernel import (
    dirichlet_l,
    eta_constants,
    hurwitz_zeta,
    riemann_zeta,
)
from .numerics import (
    PrecisionPolicy,
    SeriesResult,
    accelerate_alternating,
    epsilon_stable,
    extrapolate_limit,
    gauss_legendre,
    sum_until,
    to_mp,
)
from .report import IdentityResult, VerificationReport, make_result


# ---------------------------------------------------------------------------
# Reciprocal series

@dataclass(frozen=True)
class ReciprocalSeriesSpec:
    """Which coefficients feed sum_k c_k P_k(arg(s)), and an optional
    (2^s - 1) prefactor (used with the a = 1/2 coefficients, which turns the
    series into one for 1/zeta(s))."""

    family: CoefficientSpec
    prefactor: bool = False

    def __post_init__(self):
        if self.family.is_maslanka or self.family.family in ("bernoulli_poly", "two_param"):
            raise ValueError(f"no reciprocal series for family {self.family.family}")
        if self.prefactor and not (self.family.family == "hurwitz" and to_mp(self.family.a) == mp.mpf(1) / 2):
            raise ValueError("the (2^s - 1) prefactor pairs with the a = 1/2 coefficients")

    def argument(self, s):
        s = to_mp(s)
        if self.family.family == "odd":
            return (s + 1) / 2
        return s / self.family.scale

    def prefactor_value(self, s):
        return mp.power(2, to_mp(s)) - 1 if self.prefactor else mp.mpf(1)

    def target(self, s, dps: int = 30):
        """The function the series is expected to reproduce."""
        fam = self.family
        with mp.workdps(dps + 5):
            if fam.family == "dirichlet":
                return 1 / dirichlet_l(s, fam.chi, dps + 5)
            if fam.family == "odd" or self.prefactor:
                return 1 / riemann_zeta(s, dps + 5)
            a = 1 if fam.family == "riemann" else fam.a
            return 1 / hurwitz_zeta(s, a, dps + 5)


def _positive_integer(x) -> int | None:
    x = to_mp(x)
    if mp.im(x) == 0 and mp.re(x) >= 1 and mp.re(x) == mp.floor(mp.re(x)):
        return int(mp.re(x))
    return None


def _geometric_cuts(k_min: int, k_max: int, ratio: float = 1.25) -> list[int]:
    cuts = []
    k = float(k_min)
    while k <= k_max:
        if not cuts or int(k) != cuts[-1]:
            cuts.append(int(k))
        k *= ratio
    if cuts[-1] != k_max:
        cuts.append(k_max)
    return cuts


def pochhammer_array(K: int, sigma) -> np.ndarray:
    """P_0(sigma)..P_K(sigma) in float64 (complex when sigma is)."""
    sig = complex(sigma)
    j = np.arange(1, K + 1, dtype=np.float64)
    if sig.imag == 0:
        f = (j - sig.real) / j
        return np.concatenate(([1.0], np.cumprod(f)))
    f = (j - sig) / j
    return np.concatenate(([1.0 + 0j], np.cumprod(f)))


def _divergent_sum(terms_fn, K_list: Sequence[int], dps: int):
    """Epsilon-algorithm summation for several cut-offs; value from the
    largest, spread as the error estimate."""
    ests = []
    for K in K_list:
        partial = terms_fn(K)
        e, _ = epsilon_stable(partial)
        ests.append(e)
    spread = max(abs(ests[i] - ests[-1]) for i in range(len(ests) - 1)) if len(ests) > 1 else mp.inf
    return ests[-1], spread


def reciprocal_zeta_series(
    spec: ReciprocalSeriesSpec,
    s,
    tol=1e-10,
    dps: int = 30,
    k_max: int | None = None,
    consecutive: int = 10,
) -> SeriesResult:
    """sum_k c_k P_k(arg(s)), times the optional prefactor.

    Tries, in order: a terminating sum, plain accumulation with
    ``consecutive`` small terms, epsilon summation for a growing
    (divergent) coefficient sequence, and Moebius-form coefficients with
    epsilon acceleration over geometric cut-offs.
    """
    s = to_mp(s)
    if not mp.re(s) > 1:
        raise ValueError("the reciprocal series requires Re s > 1")
    fam = spec.family
    sigma = spec.argument(s)
    pre = spec.prefactor_value(s)
    policy = PrecisionPolicy(dps)
    m = _positive_integer(sigma)
    if m is not None:
        c = ck_binomial_range(fam, m - 1, policy)
        with mp.workdps(dps + 10):
            value = pre * mp.fsum(c[k] * pochhammer_eval(k, m) for k in range(m))
        with mp.workdps(dps):
            return SeriesResult(+value, m, mp.mpf(0), True, method="terminating")

    K0 = 120
    c = ck_binomial_range(fam, K0, PrecisionPolicy(dps + 20))
    work = policy.working_digits(K0) + 20
    with mp.workdps(work):
        P = pochhammer_sequence(K0, sigma)
        terms = [c[k] * P[k] * pre for k in range(K0 + 1)]
        late = max(abs(t) for t in terms[-10:])
        mid = max(abs(t) for t in terms[K0 // 2 - 10: K0 // 2])
        partial = []
        acc = mp.mpf(0)
        for t in terms:
            acc += t
            partial.append(acc)
    tol = to_mp(tol)
    if late > 10 * mid and late > 1:
        # coefficients grow geometrically: only a summation method applies
        with mp.workdps(work):
            value, spread = _divergent_sum(lambda K: partial[: K + 1], [60, 70, 80], work)
        with mp.workdps(dps):
            return SeriesResult(+value, 81, spread, bool(spread <= tol), raw=partial[80], accelerated=True,
                                method="wynn-epsilon summation of a divergent series")
    small = 0
    for k, t in enumerate(terms):
        small = small + 1 if abs(t) < tol else 0
        if small >= consecutive:
            with mp.workdps(dps):
                return SeriesResult(+partial[k], k + 1, abs(t) * consecutive, True)
    form = mobius_form(fam)
    if form is None:
        with mp.workdps(work):
            value, err = epsilon_stable(partial)
        with mp.workdps(dps):
            return SeriesResult(+value, K0 + 1, err, False, raw=partial[-1], accelerated=True,
                                method="wynn-epsilon on partial sums")
    if k_max is None:
        k_max = 50_000 if form.b <= 2 else 400_000
    N = 1_000_000 if form.b <= 2 else 200_000
    eng = mobius_engine(fam, N, k_max)
    cvals = eng.values_range(k_max)
    Pf = pochhammer_array(k_max, sigma)
    tf = cvals * Pf * complex(pre) if (eng.is_complex or np.iscomplexobj(Pf)) else cvals * Pf * float(pre)
    cums = np.cumsum(tf)
    cuts = _geometric_cuts(64, k_max)
    seq = [mp.mpmathify(complex(cums[k]) if np.iscomplexobj(cums) else float(cums[k])) for k in cuts]
    with mp.workdps(30):
        value, err = epsilon_stable(seq)
        # float64 accumulation over k_max terms limits the attainable accuracy
        err = err + mp.mpf(1e-12)
    return SeriesResult(value, k_max + 1, err, bool(err <= tol), raw=seq[-1], accelerated=True,
                        method="moebius coefficients, wynn-epsilon on geometric cut-offs")


# ---------------------------------------------------------------------------
# Maslanka-type series

def maslanka_series(spec: CoefficientSpec, s, tol=1e-12, dps: int = 30, k_max: int = 640,
                    consecutive: int = 10) -> SeriesResult:
    """(1/(s-1)) sum_k A_k P_k(s/scale) with adaptive truncation."""
    if not spec.is_maslanka:
        raise ValueError("maslanka_series needs a Maslanka family")
    s = to_mp(s)
    if s == 1:
        raise ValueError("the Maslanka series has a pole at s = 1")
    sigma = s / spec.scale
    tol = to_mp(tol)
    m = _positive_integer(sigma)
    if m is not None:
        A = ck_binomial_range(spec, m - 1, PrecisionPolicy(dps))
        with mp.workdps(dps + 10):
            value = mp.fsum(A[k] * pochhammer_eval(k, m) for k in range(m)) / (s - 1)
        with mp.workdps(dps):
            return SeriesResult(+value, m, mp.mpf(0), True, method="terminating")
    # The terms oscillate with a slowly drifting period, so a run of small
    # terms is no proof of convergence; the epsilon estimates at K and K/2
    # must agree as well.
    K = 40
    prev = None
    while True:
        A = ck_binomial_range(spec, K, PrecisionPolicy(dps + 5))
        with mp.workdps(dps + 10):
            P = pochhammer_sequence(K, sigma)
            partial = _cumsum([A[k] * P[k] / (s - 1) for k in range(K + 1)])
            est, _ = epsilon_stable(partial)
            if prev is not None:
                err = abs(est - prev)
                if err < tol or K >= k_max:
                    divergent = abs(partial[-1]) > 1e6 * (1 + abs(est))
                    method = "wynn-epsilon summation of a divergent series" if divergent else "wynn-epsilon on partial sums"
                    return SeriesResult(+est, K + 1, err, bool(err < tol), raw=partial[-1], accelerated=True,
                                        method=method)
        prev = est
        K = min(2 * K, k_max)


@dataclass(frozen=True)
class DirichletSeries:
    """f(s, a) = sum_n f_n (n + a)^{-s}, with a direct evaluator.

    ``abscissa`` is the abscissa of absolute convergence; the Maslanka-type
    weights sample f at p j + p, so p must exceed it.
    """

    name: str
    coefficient: Callable[[int], object]
    evaluate: Callable
    abscissa: float = 1.0

    @classmethod
    def zeta(cls, a=1):
        return cls("hurwitz zeta", lambda n: 1, lambda s, a: hurwitz_zeta(s, a), 1.0)

    @classmethod
    def zeta_squared(cls):
        """zeta(s)^2 = sum d(n) n^{-s}, as f(s, 1) = sum_{n>=0} d(n+1)(n+1)^{-s}."""
        return cls("zeta squared", lambda n: _divisor_count(n + 1), lambda s, a: riemann_zeta(s) ** 2, 1.0)

    @classmethod
    def from_coefficients(cls, name: str, coeffs: Sequence, abscissa: float = 1.0, terms: int | None = None):
        """Finite or slowly varying coefficient list summed directly (with the
        list length as the truncation)."""
        coeffs = list(coeffs)

        def ev(s, a):
            s, a = to_mp(s), to_mp(a)
            return mp.fsum(to_mp(c) * mp.power(n + a, -s) for n, c in enumerate(coeffs))

        return cls(name, lambda n: coeffs[n] if n < len(coeffs) else 0, ev, abscissa)


def _divisor_count(n: int) -> int:
    c = 0
    i = 1
    while i * i <= n:
        if n % i == 0:
            c += 1 if i * i == n else 2
        i += 1
    return c


def direct_dirichlet_sum(series: DirichletSeries, s, a=1, N: int = 100_000) -> SeriesResult:
    """sum_{n<N} f_n (n+a)^{-s} in float arithmetic, with the partial-sum
    change over the last decade as a rough tail estimate."""
    s = float(s)
    a = float(a)
    n = np.arange(N, dtype=np.float64)
    f = np.array([float(series.coefficient(int(i))) for i in range(N)])
    terms = f * (n + a) ** (-s)
    total = math.fsum(terms)
    tail = math.fsum(terms[N // 10:])
    return SeriesResult(mp.mpf(total), N, mp.mpf(abs(tail) / 9), False, method="direct truncation")


def conjecture_probe(series: DirichletSeries, q, s_samples, a=1, dps: int = 30, tol=1e-8) -> VerificationReport:
    """Evaluate the Maslanka-type representation with scale q for ``series``
    at each sample s and compare with the direct value.  Rows are
    exploratory: agreement is evidence, not proof."""
    q = to_mp(q)
    if not q > 1:
        raise ValueError("q must exceed 1")
    if not q > series.abscissa:
        raise ValueError(f"q={q} does not exceed the convergence abscissa {series.abscissa}; the coefficient stream diverges")
    spec = CoefficientSpec.maslanka_general(q, series.evaluate, a, label=series.name)
    rep = VerificationReport()
    for s in s_samples:
        t0 = time.perf_counter()
        res = maslanka_series(spec, s, tol=mp.mpf(tol) / 100, dps=dps)
        direct = series.evaluate(to_mp(s), to_mp(a))
        rep.add(make_result(
            f"probe:{series.name}:q={mp.nstr(q, 4)}:s={mp.nstr(to_mp(s), 4)}",
            "Pochhammer-series representation of a Dirichlet series (conjectural class)",
            res.value, direct, tol,
            {"q": q, "s": s, "a": a, "terms": res.terms_used},
            exploratory=True, seconds=time.perf_counter() - t0,
        ))
    return rep


# ---------------------------------------------------------------------------
# F, G and the phi integral

@lru_cache(maxsize=16)
def reciprocal_dirichlet_terms(a: int, V: float) -> tuple:
    """Frequencies nu <= V and integer weights g with 1/zeta(s, a) =
    sum g_nu nu^{-s} (absolutely convergent for Re s large enough).

    a = 1 gives nu = n, g = mu(n).  For a >= 2,
    zeta(s, a) = a^{-s}(1 + H(s)) with H = sum_{n>a} (n/a)^{-s}, and the
    geometric series in -H yields nu = (n_1 ... n_j)/a^{j+1}, n_i > a.
    """
    if a < 1 or int(a) != a:
        raise ValueError("a must be a positive integer")
    a = int(a)
    if a == 1:
        mu = mobius_sieve(int(V))
        idx = np.nonzero(mu)[0]
        return tuple(Fraction(int(n)) for n in idx), tuple(int(mu[n]) for n in idx)
    out: dict = defaultdict(int)
    cur = {1: 1}
    j = 0
    while cur:
        for m, c in cur.items():
            out[Fraction(m, a ** (j + 1))] += (-1) ** j * c
        nxt: dict = defaultdict(int)
        lim = V * a ** (j + 2)
        for m, c in cur.items():
            n = a + 1
            while m * n <= lim:
                nxt[m * n] += c
                n += 1
        cur = nxt
        j += 1
    nus = sorted(k for k, v in out.items() if v != 0)
    return tuple(nus), tuple(out[k] for k in nus)


class FEvaluator:
    """F(x, b, a) = sum_{k>=1} (-1)^{k+1} x^k / (zeta(b k, a) (k-1)!) for
    0 < x <= x_max, in float64.

    Uses F = sum_nu g_nu y e^{-y}, y = x nu^{-b}, over nu <= V, plus the
    power series of the remainder sum_{nu > V} g_nu nu^{-bk}, which is
    small because x/V^b is.  Needs a positive integer shift a.
    """

    def __init__(self, b, a, x_max: float, guard: float = 4.0):
        if int(a) != a or a < 1:
            raise ValueError("FEvaluator needs a positive integer a; use F_function for other shifts")
        self.b = float(b)
        self.a = int(a)
        V = max(50.0, guard * x_max ** (1.0 / self.b))
        self.V = V
        nus, g = reciprocal_dirichlet_terms(self.a, V)
        r = x_max / V ** self.b
        K = 1
        while r ** K / math.factorial(K - 1) > 1e-25:
            K += 1
        self.K = K
        dps = 30 + int(self.b * K * math.log10(V * self.a)) + 10
        with mp.workdps(dps):
            nu_mp = [mp.mpf(v.numerator) / v.denominator for v in nus]
            T = []
            for k in range(1, K + 1):
                s = mp.mpf(b) * k
                head = mp.fsum(gi * mp.power(v, -s) for v, gi in zip(nu_mp, g))
                T.append(float(1 / hurwitz_zeta(s, self.a, dps) - head))
        self.T = np.array(T)
        self.nu_b = np.array([float(v) ** (-self.b) for v in nus])
        self.g = np.array(g, dtype=np.float64)

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        out = np.empty_like(x)
        for start in range(0, len(x), 64):
            xs = x[start:start + 64]
            y = xs[:, None] * self.nu_b[None, :]
            head = (self.g[None, :] * y * np.exp(-y)).sum(axis=1)
            tail = np.zeros_like(xs)
            for k in range(1, self.K + 1):
                tail += (-1) ** (k + 1) * xs ** k / math.factorial(k - 1) * self.T[k - 1]
            out[start:start + 64] = head + tail
        return out


def _series_digits(x, b, a) -> int:
    """Extra digits lost to the hump of the power series of F at x."""
    growth = float(mp.re(to_mp(a))) ** float(b) if mp.re(to_mp(a)) >= 1 else 1.0
    return int(float(abs(to_mp(x))) * max(growth, 1.0) * 0.4343) + 5


def F_function(x, b=2, a=1, dps: int = 30, max_digits: int = 4000):
    """F(x, b, a) by its entire power series, precision raised for large x."""
    b, a, x = to_mp(b), to_mp(a), to_mp(x)
    if not b > 1:
        raise ValueError("F requires b > 1")
    if not mp.re(a) > 0:
        raise ValueError("F requires Re a > 0")
    extra = _series_digits(x, b, a)
    if dps + extra > max_digits:
        raise ValueError(f"F({mp.nstr(x, 5)}) by power series needs about {dps + extra} digits "
                         f"(budget {max_digits}); raise max_digits")
    work = dps + extra
    with mp.workdps(work):
        eps = mp.mpf(10) ** (-work)
        total = mp.mpf(0)
        xk = x
        k = 1
        fact = mp.mpf(1)  # (k-1)!
        while True:
            term = (-1) ** (k + 1) * xk / (hurwitz_zeta(b * k, a, work) * fact)
            total += term
            if k > abs(x) and abs(term) < eps:
                break
            xk *= x
            fact *= k
            k += 1
    with mp.workdps(dps):
        return +total


def riesz_function(x, dps: int = 30, max_digits: int = 4000):
    """R(x) = F(x, 2, 1)."""
    return F_function(x, 2, 1, dps, max_digits)


def G_function(x, dps: int = 30, max_digits: int = 4000):
    """G(x) = sum_{k>=1} (-1)^k x^k / (k! zeta(2k+1))."""
    x = to_mp(x)
    work = dps + int(float(abs(x)) * 0.4343) + 5
    if work > max_digits:
        raise ValueError(f"G({mp.nstr(x, 5)}) needs about {work} digits (budget {max_digits})")
    with mp.workdps(work):
        eps = mp.mpf(10) ** (-work)
        total = mp.mpf(0)
        term_x = mp.mpf(1)
        k = 1
        while True:
            term_x = term_x * x / k
            term = (-1) ** k * term_x / hurwitz_zeta(2 * k + 1, 1, work)
            total += term
            if k > abs(x) and abs(term) < eps:
                break
            k += 1
    with mp.workdps(dps):
        return +total


@dataclass
class PhiCheck:
    phi: SeriesResult
    outer: object  # Gamma(1 - s/b) / zeta(s, a)
    series: SeriesResult  # sum c_k(b, a) P_k(s/b)
    gamma_factor: object
    report: VerificationReport


def phi_integral(s, b, a=1, u_left: float = 0.0, du: float = 0.25, segments: int = 56, nodes: int = 24,
                 dps: int = 30) -> SeriesResult:
    """phi(s, b, a) = int_0^inf x^{-(s/b + 1)} F(x, b, a) dx.

    With x = e^u the integrand is e^{-(s/b) u} F(e^u).  The part u < u_left
    is integrated term by term from the power series of F; the rest is
    Gauss-Legendre on segments of width ``du``.  Wynn's epsilon algorithm on
    the running segment totals removes the slowly decaying, log-periodic
    tail.
    """
    s, b = to_mp(s), to_mp(b)
    sb = s / b
    with mp.workdps(dps + 10):
        left = mp.mpf(0)
        k = 1
        fact = mp.mpf(1)
        while True:
            term = (-1) ** (k + 1) / (fact * hurwitz_zeta(b * k, a, dps + 10)) * mp.exp((k - sb) * u_left) / (k - sb)
            left += term
            if k > 5 and abs(term) < mp.mpf(10) ** (-dps - 5):
                break
            fact *= k
            k += 1
    u_right = u_left + segments * du
    F = FEvaluator(b, a, math.exp(u_right))
    gx, gw = np.polynomial.legendre.leggauss(nodes)
    sbf = complex(sb) if mp.im(sb) != 0 else float(sb)
    partial = [complex(left) if isinstance(sbf, complex) else float(left)]
    total = partial[0]
    U = u_left
    for _ in range(segments):
        us = du / 2 * gx + U + du / 2
        total = total + du / 2 * np.sum(gw * np.exp(-sbf * us) * F(np.exp(us)))
        partial.append(total)
        U += du
    seq = [mp.mpmathify(v) for v in partial]
    with mp.workdps(dps):
        value, err = epsilon_stable(seq)
        err = max(err, mp.mpf(1e-14))
    return SeriesResult(value, segments * nodes, err, True, raw=seq[-1], accelerated=True,
                        method="log-segment Gauss-Legendre + wynn-epsilon")


def phi_quadrature(s, b, a=1, tol=1e-5, dps: int = 30) -> PhiCheck:
    """phi(s, b, a) by quadrature, checked against both
    phi zeta(s, a) = Gamma(1 - s/b) and phi = Gamma(1 - s/b) sum c_k(b, a) P_k(s/b).
    """
    s, b = to_mp(s), to_mp(b)
    margin = mp.mpf("0.05")
    if not (1 + margin <= mp.re(s) <= b - margin):
        raise ValueError(f"phi requires 1 < Re s < b (with margin 0.05); got s={s}, b={b}")
    t0 = time.perf_counter()
    phi = phi_integral(s, b, a, dps=dps)
    with mp.workdps(dps + 5):
        gfac = mp.gamma(1 - s / b)
        zeta_sa = hurwitz_zeta(s, a, dps + 5)
        outer = gfac / zeta_sa
    ser = reciprocal_zeta_series(ReciprocalSeriesSpec(CoefficientSpec.general(b, a)), s, tol=mp.mpf(tol) / 10, dps=dps)
    with mp.workdps(dps):
        ratio = phi.value / gfac
        series_val = ser.value
        direct = 1 / zeta_sa
    el = time.perf_counter() - t0
    params = {"s": s, "b": b, "a": a}
    rep = VerificationReport()
    rep.add(make_result(f"phi-outer:s={mp.nstr(s, 4)},b={mp.nstr(b, 4)},a={mp.nstr(to_mp(a), 4)}",
                        "phi integral times zeta(s,a) equals Gamma(1-s/b)",
                        phi.value * zeta_sa, gfac, tol, params, seconds=el))
    rep.add(make_result(f"phi-series:s={mp.nstr(s, 4)},b={mp.nstr(b, 4)},a={mp.nstr(to_mp(a), 4)}",
                        "phi integral equals Gamma(1-s/b) times the Pochhammer series",
                        ratio, series_val, tol, params))
    rep.add(make_result(f"series-direct:s={mp.nstr(s, 4)},b={mp.nstr(b, 4)},a={mp.nstr(to_mp(a), 4)}",
                        "Pochhammer series equals 1/zeta(s,a)",
                        series_val, direct, tol, params, note=ser.method))
    return PhiCheck(phi, outer, ser, gfac, rep)


# ---------------------------------------------------------------------------
# Exponential-series identities

def exponential_binomial_check(x, j: int, dps: int = 30, tol=1e-12) -> IdentityResult:
    """sum_{k>=j} C(k, j) x^k / k! = x^j e^x / j!."""
    with mp.workdps(dps + 10):
        x = to_mp(x)
        res = sum_until(lambda k: mp.binomial(k + j, j) * x ** (k + j) / mp.factorial(k + j),
                        mp.mpf(10) ** (-dps - 5), consecutive=3, dps=dps + 10)
        rhs = x ** j * mp.exp(x) / mp.factorial(j)
    return make_result(f"exp-binomial:x={mp.nstr(x, 4)},j={j}", "binomial-weighted exponential series",
                       res.value, rhs, tol, {"x": x, "j": j})


def shift_sum_check(x, b=2, a=1, N: int = 20, dps: int = 30, tol=1e-12) -> IdentityResult:
    """sum_{n>=0} F(x/(n+a)^b, b, a) = x e^{-x}.

    Terms n < N use the power series of F; the remaining tail is
    sum_k (-1)^{k+1} x^k zeta(bk, a+N) / ((k-1)! zeta(bk, a)).
    """
    x, b, a = to_mp(x), to_mp(b), to_mp(a)
    with mp.workdps(dps + 10):
        head = mp.fsum(F_function(x / (n + a) ** b, b, a, dps + 10) for n in range(N))
        tail = mp.mpf(0)
        k = 1
        fact = mp.mpf(1)
        while True:
            term = (-1) ** (k + 1) * x ** k * hurwitz_zeta(b * k, a + N, dps + 10) / (fact * hurwitz_zeta(b * k, a, dps + 10))
            tail += term
            if abs(term) < mp.mpf(10) ** (-dps - 5):
                break
            fact *= k
            k += 1
        rhs = x * mp.exp(-x)
    return make_result(f"shift-sum:x={mp.nstr(x, 4)},b={mp.nstr(b, 4)},a={mp.nstr(a, 4)}",
                       "sum over shifts of F reproduces x e^-x", head + tail, rhs, tol,
                       {"x": x, "b": b, "a": a, "N": N})


def pochhammer_limit_check(s, k_max: int = 10_000, dps: int = 30, tol=1e-6) -> IdentityResult:
    """lim_k P_k(s) (k+1)^s = 1/Gamma(1-s), by Richardson extrapolation in 1/n."""
    s = to_mp(s)
    if _positive_integer(s) is not None:
        raise ValueError("s must not be a positive integer")
    levels = max(2, int(math.log2(max(k_max, 32) / 16)) + 1)
    with mp.workdps(dps + 10):
        seq = lambda n: pochhammer_eval(n - 1, s) * mp.power(n, s)
        value, err = extrapolate_limit(seq, n0=16, levels=levels, dps=dps)
        rhs = mp.rgamma(1 - s)
    return make_result(f"pochhammer-limit:s={mp.nstr(s, 4)}", "scaled Pochhammer polynomial limit",
                       value, rhs, tol, {"s": s, "k_max": 16 * 2 ** (levels - 1)},
                       note=f"extrapolation error estimate {mp.nstr(err, 3)}")


# ---------------------------------------------------------------------------
# Generating-function and logarithmic summatory identities

def _growth_rate(b, a) -> float:
    """limsup |1/zeta(b k + b, a)|^{1/k}."""
    a = float(mp.re(to_mp(a)))
    return max(a, 0.0) ** float(b) if a != 1 else 1.0


def _sum_terms(terms: list, dps: int):
    """Plain sum when terms are already tiny, else Levin-t on them."""
    with mp.workdps(dps + 20):
        raw = mp.fsum(terms)
        if abs(terms[-1]) < mp.mpf(10) ** (-dps - 2):
            return raw, raw, False
        return accelerate_alternating(terms, min(40, len(terms) - 2), dps=dps + 20), raw, True


def genfun_identity(s, b=2, a=1, dps: int = 30, K: int = 200, tol=1e-10) -> IdentityResult:
    """sum_k c_k(b, a) s^k against (1/(1-s)) sum_k (-s/(1-s))^k / zeta(bk+b, a).

    When |s/(1-s)| a^b >= 1 both series diverge; both are then summed by
    the epsilon algorithm and the summed values are compared.
    """
    s, b, a = to_mp(s), to_mp(b), to_mp(a)
    if not (-1 <= mp.re(s) < mp.mpf(1) / 2):
        raise ValueError("the generating-function identity needs -1 <= Re s < 1/2")
    t0 = time.perf_counter()
    z = -s / (1 - s)
    rho = float(abs(z)) * _growth_rate(b, a)
    spec = CoefficientSpec.general(b, a)
    divergent = rho >= 1
    with mp.workdps(dps + 20):
        if not divergent:
            rhs = sum_until(lambda k: z ** k / hurwitz_zeta(b * k + b, a, dps + 20), mp.mpf(10) ** (-dps - 5),
                            consecutive=3, dps=dps + 20).value / (1 - s)
        else:
            w = [z ** k / hurwitz_zeta(b * k + b, a, dps + 40) / (1 - s) for k in range(80)]
            rhs, _ = epsilon_stable(_cumsum(w))
    n_terms = K if not divergent else 80
    c = ck_binomial_range(spec, n_terms, PrecisionPolicy(dps + 20))
    with mp.workdps(dps + 40):
        terms = [c[k] * s ** k for k in range(n_terms + 1)]
        if divergent or abs(c[-1]) > 1:
            lhs, _ = epsilon_stable(_cumsum(terms))
            method = "wynn-epsilon summation"
        else:
            lhs, raw, acc = _sum_terms(terms, dps)
            method = "levin-t" if acc else "direct"
    note = method + ("; both sides divergent, compared as summed values" if divergent else "")
    return make_result(f"genfun:s={mp.nstr(s, 4)},b={mp.nstr(b, 4)},a={mp.nstr(a, 4)}",
                       "generating function of the coefficients", lhs, rhs, tol,
                       {"s": s, "b": b, "a": a},
                       seconds=time.perf_counter() - t0, note=note)


def _cumsum(terms):
    out = []
    acc = mp.mpf(0)
    for t in terms:
        acc += t
        out.append(acc)
    return out


def genfun_rhs(s, b=2, a=1, dps: int = 30):
    """(1/(1-s)) sum_k (-s/(1-s))^k / zeta(bk+b, a) by plain summation."""
    s = to_mp(s)
    z = -s / (1 - s)
    if float(abs(z)) * _growth_rate(b, a) >= 1:
        raise ValueError("the series diverges for these parameters")
    with mp.workdps(dps + 10):
        r = sum_until(lambda k: z ** k / hurwitz_zeta(to_mp(b) * k + to_mp(b), a, dps + 10),
                      mp.mpf(10) ** (-dps - 5), consecutive=3, dps=dps + 10)
        return r.value / (1 - s)


def log_summatory_rhs(t, b=2, a=1, dps: int = 30):
    """sum_{k>=1} (-1)^k (t/(1-t))^k / (k zeta(bk+b, a)).

    At |t/(1-t)| = 1 with a = 1 the series converges only conditionally;
    writing 1/zeta = 1 + (1/zeta - 1) splits off -log(1 + w) and leaves a
    geometrically convergent remainder.
    """
    t, b, a = to_mp(t), to_mp(b), to_mp(a)
    with mp.workdps(dps + 10):
        w = t / (1 - t)
        rho = float(abs(w)) * _growth_rate(b, a)
        if rho > 1:
            raise ValueError("the series diverges for these parameters")
        if a == 1:
            rem = sum_until(lambda k: (-w) ** (k + 1) / (k + 1) * (1 / hurwitz_zeta(b * (k + 2), 1, dps + 10) - 1),
                            mp.mpf(10) ** (-dps - 5), consecutive=3, dps=dps + 10)
            return -mp.log(1 + w) + rem.value
        if rho < 1:
            return sum_until(lambda k: (-w) ** (k + 1) / ((k + 1) * hurwitz_zeta(b * (k + 2), a, dps + 10)),
                             mp.mpf(10) ** (-dps - 5), consecutive=3, dps=dps + 10).value
        terms = [(-w) ** k / (k * hurwitz_zeta(b * (k + 1), a, dps + 10)) for k in range(1, 120)]
        return accelerate_alternating(terms, 40, dps=dps + 10)


def log_summatory_lhs(t, b=2, a=1, dps: int = 30, K: int = 160):
    """c_0 log(1-t) + sum_{k>=1} c_k t^k / k, with Levin-t acceleration when the
    terms are not yet negligible at K (the case t = -1).  Returns
    (value, raw, accelerated)."""
    t = to_mp(t)
    c = ck_binomial_range(CoefficientSpec.general(b, a), K, PrecisionPolicy(dps + 20))
    with mp.workdps(dps + 20):
        terms = [c[k] * t ** k / k for k in range(1, K + 1)]
        value, raw, acc = _sum_terms(terms, dps)
        head = c[0] * mp.log(1 - t)
    return head + value, head + raw, acc


def log_summatory_identity(t, b=2, a=1, dps: int = 30, tol=1e-10) -> IdentityResult:
    t = to_mp(t)
    if not (-1 <= t <= mp.mpf(1) / 2):
        raise ValueError("the logarithmic identity needs -1 <= t <= 1/2")
    t0 = time.perf_counter()
    rhs = log_summatory_rhs(t, b, a, dps)
    lhs, raw, acc = log_summatory_lhs(t, b, a, dps)
    return make_result(f"logsum:t={mp.nstr(t, 4)},b={mp.nstr(to_mp(b), 4)},a={mp.nstr(to_mp(a), 4)}",
                       "integrated generating function", lhs, rhs, tol,
                       {"t": t, "b": b, "a": a}, seconds=time.perf_counter() - t0,
                       note=("levin-t accelerated; raw " + mp.nstr(raw, 12)) if acc else "direct")


# ---------------------------------------------------------------------------
# Taylor coefficients at s = 1

def taylor_weight_tables(K: int, J: int) -> tuple[list, list]:
    """Exact weights W[j][k] with [ (s-1)^j ] sum_k c_k P_k(s/2) = sum_k W[j][k] c_k.

    Method (i): P_k(1/2) Y_j(g(1), ..., g^{(j-1)}(1)) / j!.
    Method (ii): (-1)^k/k! sum_{l=j}^k s(k,l) 2^{-l} (-1)^{l-j} C(l, j).
    """
    W1 = [[Fraction(0)] * (K + 1) for _ in range(J + 1)]
    W2 = [[Fraction(0)] * (K + 1) for _ in range(J + 1)]
    for k in range(K + 1):
        pk = pochhammer_eval(k, Fraction(1, 2))
        g = g_derivatives_at_one(k, J)
        ys = complete_bell_all(g)
        for j in range(J + 1):
            W1[j][k] = pk * ys[j] / math.factorial(j)
            if j <= k:
                acc = Fraction(0)
                for l in range(j, k + 1):
                    acc += Fraction(stirling_first(k, l), 2 ** l) * (-1) ** (l - j) * math.comb(l, j)
                W2[j][k] = Fraction((-1) ** k, math.factorial(k)) * acc
    return W1, W2


def taylor_weights_float(K: int, J: int) -> np.ndarray:
    """Method (i) weights in float64 for large K, shape (J+1, K+1)."""
    k = np.arange(K + 1, dtype=np.float64)
    P = pochhammer_array(K, 0.5)
    # H_m(k) = sum_{i<k} (i + 1/2)^{-m}
    inv = 1.0 / (np.arange(K, dtype=np.float64) + 0.5)
    gs = []
    for l in range(J):
        H = np.concatenate(([0.0], np.cumsum(inv ** (l + 1))))
        gs.append(-math.factorial(l) / 2 ** (l + 1) * H)
    Y = [np.ones(K + 1)]
    for m in range(J):
        acc = np.zeros(K + 1)
        for i in range(m + 1):
            acc += math.comb(m, i) * Y[m - i] * gs[i]
        Y.append(acc)
    return np.array([P * Y[j] / math.factorial(j) for j in range(J + 1)])


@dataclass
class TaylorExtraction:
    K: int
    raw: list  # partial sums at K, method (i)
    accelerated: list
    errors: list
    method_ii: list | None
    residual: object  # max |(i) - (ii)| when both are available
    cuts: list


def _riemann_coefficients_float(K: int, spec: CoefficientSpec | None = None) -> np.ndarray:
    spec = spec or CoefficientSpec.riemann()
    eng = mobius_engine(spec, 2_000_000, K)
    return eng.values_range(K)


def taylor_extraction(K: int, J: int, c=None, spec: CoefficientSpec | None = None) -> TaylorExtraction:
    """Coefficients of (s-1)^j, j <= J, of sum_{k<=K} c_k P_k(s/2).

    For K <= 60 both methods run exactly on mp values of c_k; above that the
    float64 method-(i) weights meet Moebius-form c_k, and epsilon acceleration
    over geometric cut-offs is reported next to the raw partial sums.
    """
    if J > 6:
        raise ValueError("J must be <= 6")
    spec = spec or CoefficientSpec.riemann()
    if K <= 60:
        if c is None:
            c = ck_binomial_range(spec, K, PrecisionPolicy(40))
        W1, W2 = taylor_weight_tables(K, J)
        with mp.workdps(40):
            to = lambda f: mp.mpf(f.numerator) / f.denominator
            m1 = [mp.fsum(to(W1[j][k]) * c[k] for k in range(K + 1)) for j in range(J + 1)]
            m2 = [mp.fsum(to(W2[j][k]) * c[k] for k in range(K + 1)) for j in range(J + 1)]
            res = max(abs(x - y) for x, y in zip(m1, m2))
        return TaylorExtraction(K, m1, m1, [mp.mpf(0)] * (J + 1), m2, res, [K])
    cf = np.asarray(c, dtype=np.float64) if c is not None else _riemann_coefficients_float(K, spec)
    W = taylor_weights_float(K, J)
    cuts = _geometric_cuts(64, K)
    raw, acc, errs = [], [], []
    for j in range(J + 1):
        cums = np.cumsum(W[j] * cf[: K + 1])
        seq = [mp.mpf(float(cums[k])) for k in cuts]
        e, err = epsilon_stable(seq)
        raw.append(seq[-1])
        acc.append(e)
        errs.append(err)
    return TaylorExtraction(K, raw, acc, errs, None, None, cuts)


def stieltjes_targets(J: int, dps: int = 30, a=1) -> list:
    """Taylor coefficients of 1/zeta(s, a) at s = 1 from the Stieltjes constants."""
    from .kernel import reciprocal_zeta_taylor

    return reciprocal_zeta_taylor(J, dps, a)


def derivative_identity_check(Q: int = 3, K: int = 100_000, spec: CoefficientSpec | None = None, tol=1e-3) -> VerificationReport:
    """Coefficient form of (1/zeta)' = (1/zeta)[1/(s-1) + sum_p eta_p (s-1)^p].

    With 1/zeta = sum_j e_j u^j (u = s - 1) this reads
    q e_{q+1} = sum_{j=0}^{q} e_j eta_{q-j} for q >= 0, plus e_0 = 0 from the
    u^{-1} term.  e_j come from :func:`taylor_extraction`.
    """
    if Q > 5:
        raise ValueError("Q must be <= 5")
    spec = spec or CoefficientSpec.riemann()
    a = 1 if spec.family == "riemann" else spec.a
    t0 = time.perf_counter()
    ext = taylor_extraction(K, Q + 1, spec=spec)
    eta = eta_constants(Q, 30, a=a)
    e = ext.accelerated
    rep = VerificationReport()
    el = time.perf_counter() - t0
    rep.add(make_result("derivative-identity:pole", "derivative identity, (s-1)^-1 coefficient",
                        e[0], 0, tol, {"K": K}, seconds=el, note="e_0 must vanish"))
    for q in range(Q + 1):
        lhs = q * e[q + 1]
        rhs = mp.fsum(e[j] * eta[q - j] for j in range(q + 1))
        rep.add(make_result(f"derivative-identity:q={q}", "derivative identity via eta constants",
                            lhs, rhs, tol, {"K": K, "q": q}))
    return rep


@dataclass
class WeightedSum:
    name: str
    target: object
    raw: object
    accelerated: object
    error: object
    K: int

    @property
    def ratio(self):
        """accelerated / target, for spotting a normalisation mismatch."""
        return self.accelerated / self.target if self.target != 0 else None


def half_integer_gamma_sums(K: int = 100_000, spec: CoefficientSpec | None = None) -> list[WeightedSum]:
    """The three sums sum_k Gamma(k+1/2)/k! w_k c_k with w_k = 1,
    -psi(k+1/2)/(2 sqrt(pi)) and psi(k+1/2)^2 + psi'(k+1/2), whose values
    0, 1 and -4 sqrt(pi)(gamma - 2 log 2) are the first Taylor coefficients
    of the reciprocal series at s = 1 written out with digamma functions."""
    cf = _riemann_coefficients_float(K, spec)
    P = pochhammer_array(K, 0.5) * math.sqrt(math.pi)
    inv = 1.0 / (np.arange(K, dtype=np.float64) + 0.5)
    psi = float(mp.digamma(0.5)) + np.concatenate(([0.0], np.cumsum(inv)))
    psi1 = float(mp.psi(1, 0.5)) - np.concatenate(([0.0], np.cumsum(inv ** 2)))
    with mp.workdps(30):
        targets = [mp.mpf(0), mp.mpf(1), -4 * mp.sqrt(mp.pi) * (mp.euler - 2 * mp.log(2))]
    weights = [np.ones(K + 1), -psi / (2 * math.sqrt(math.pi)), psi ** 2 + psi1]
    names = ["gamma-half-sum:plain", "gamma-half-sum:digamma", "gamma-half-sum:digamma-squared"]
    cuts = _geometric_cuts(64, K)
    out = []
    for name, w, tgt in zip(names, weights, targets):
        cums = np.cumsum(P * w * cf[: K + 1])
        seq = [mp.mpf(float(cums[k])) for k in cuts]
        e, err = epsilon_stable(seq)
        out.append(WeightedSum(name, tgt, seq[-1], e, err, K))
    return out
