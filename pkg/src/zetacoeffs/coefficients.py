"""Coefficient families: alternating binomial transforms of reciprocal zeta
and L-values, Maslanka-type coefficients, and Moebius-sum evaluators.

Every family is ``c_k = sum_{j<=k} (-1)^j C(k, j) w_j`` for a family-specific
weight ``w_j``.  The binomial form loses about ``0.301 k`` digits to
cancellation, which :class:`~zetacoeffs.numerics.PrecisionPolicy` pays for
up front.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator

import mpmath as mp
import numpy as np

from .combinatorics import MOBIUS_CAP, bernoulli_number, bernoulli_poly, mobius_blocks
from .kernel import (
    DirichletCharacter,
    characters_mod,
    dirichlet_l,
    hurwitz_zeta,
    lerch_phi,
)
from .numerics import PrecisionPolicy, integrate_oscillatory, to_mp

FAMILIES = (
    "riemann",
    "hurwitz",
    "general",
    "odd",
    "two_param",
    "bernoulli_poly",
    "dirichlet",
    "maslanka_hurwitz",
    "maslanka_lerch",
    "maslanka_general",
)

MASLANKA_FAMILIES = ("maslanka_hurwitz", "maslanka_lerch", "maslanka_general")


class ZeroDenominatorError(ArithmeticError):
    """A weight's denominator vanishes for some index j."""

    def __init__(self, j: int, message: str):
        super().__init__(message)
        self.j = j


@dataclass(frozen=True)
class CoefficientSpec:
    """A coefficient family and its parameters.

    ``general`` uses weights 1/zeta(b j + b, a); ``two_param`` uses
    1/zeta(a j + b).  The two are kept apart on purpose: their parameter
    roles differ.  ``maslanka_general`` takes ``f(s, a)`` as a callable.
    """

    family: str
    a: object = 1
    b: object = 2
    x: object = 0
    z: object = 1
    p: object = 2
    f: Callable | None = field(default=None, compare=False)
    chi: DirichletCharacter | None = None
    label: str = ""

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family == "general":
            if not to_mp(self.b) > 1:
                raise ValueError("general family requires b > 1")
        if self.family in ("hurwitz", "general", "maslanka_hurwitz", "maslanka_lerch", "maslanka_general"):
            if not mp.re(to_mp(self.a)) > 0:
                raise ValueError("the shift a must have positive real part")
        if self.family == "maslanka_general":
            if not to_mp(self.p) > 1:
                raise ValueError("maslanka_general requires p > 1")
            if self.f is None:
                raise ValueError("maslanka_general needs a function f(s, a)")
        if self.family == "dirichlet":
            if self.chi is None:
                raise ValueError("dirichlet family needs a character")
            if not to_mp(self.b) > 1:
                raise ValueError("dirichlet family requires b > 1")
        if self.family == "maslanka_lerch" and abs(to_mp(self.z)) > 1:
            raise ValueError("maslanka_lerch requires |z| <= 1")

    # -- constructors -------------------------------------------------------
    @classmethod
    def riemann(cls):
        return cls("riemann")

    @classmethod
    def hurwitz(cls, a):
        return cls("hurwitz", a=a)

    @classmethod
    def general(cls, b, a=1):
        return cls("general", a=a, b=b)

    @classmethod
    def odd(cls):
        return cls("odd")

    @classmethod
    def two_param(cls, a, b):
        return cls("two_param", a=a, b=b)

    @classmethod
    def bernoulli(cls, x):
        return cls("bernoulli_poly", x=x)

    @classmethod
    def dirichlet(cls, chi: DirichletCharacter, b=2):
        return cls("dirichlet", b=b, chi=chi)

    @classmethod
    def maslanka_hurwitz(cls, a=1):
        return cls("maslanka_hurwitz", a=a)

    @classmethod
    def maslanka_lerch(cls, z, a=1):
        return cls("maslanka_lerch", a=a, z=z)

    @classmethod
    def maslanka_general(cls, p, f, a=1, label: str = ""):
        return cls("maslanka_general", a=a, p=p, f=f, label=label)

    # -- weights ------------------------------------------------------------
    @property
    def is_maslanka(self) -> bool:
        return self.family in MASLANKA_FAMILIES

    @property
    def scale(self):
        """Divisor of s in the Pochhammer argument P_k(s / scale)."""
        if self.family in ("general", "dirichlet"):
            return to_mp(self.b)
        if self.family == "maslanka_general":
            return to_mp(self.p)
        return mp.mpf(2)

    def weight(self, j: int, dps: int):
        """w_j at ``dps`` digits; c_k = sum_j (-1)^j C(k, j) w_j."""
        with mp.workdps(dps + 5):
            fam = self.family
            if fam == "riemann":
                v = 1 / hurwitz_zeta(2 * j + 2, 1, dps + 5)
            elif fam == "hurwitz":
                v = 1 / hurwitz_zeta(2 * j + 2, self.a, dps + 5)
            elif fam == "general":
                b = to_mp(self.b)
                v = 1 / hurwitz_zeta(b * j + b, self.a, dps + 5)
            elif fam == "odd":
                v = mp.mpf(0) if j == 0 else 1 / hurwitz_zeta(2 * j + 1, 1, dps + 5)
            elif fam == "two_param":
                s = to_mp(self.a) * j + to_mp(self.b)
                if s == 1:
                    v = mp.mpf(0)
                else:
                    v = 1 / hurwitz_zeta(s, 1, dps + 5)
            elif fam == "bernoulli_poly":
                bp = bernoulli_poly(2 * j + 2, self.x)
                if bp == 0 or (not isinstance(bp, Fraction) and abs(bp) < mp.mpf(10) ** (-(dps // 2))):
                    raise ZeroDenominatorError(j, f"B_{2 * j + 2}(x) vanishes at x={self.x} (index j={j})")
                bp = to_mp(bp)
                v = (-1) ** j * 2 * mp.factorial(2 * j + 2) / ((2 * mp.pi) ** (2 * j + 2) * bp)
            elif fam == "dirichlet":
                b = to_mp(self.b)
                v = 1 / dirichlet_l(b * j + b, self.chi, dps + 5)
            elif fam == "maslanka_hurwitz":
                v = (2 * j + 1) * hurwitz_zeta(2 * j + 2, self.a, dps + 5)
            elif fam == "maslanka_lerch":
                v = (2 * j + 1) * lerch_phi(self.z, 2 * j + 2, self.a, dps + 5)
            else:
                p = to_mp(self.p)
                v = (p * j + p - 1) * to_mp(self.f(p * j + p, to_mp(self.a)))
        with mp.workdps(dps):
            return +v

    def describe(self) -> str:
        fam = self.family
        if fam == "riemann" or fam == "odd":
            return fam
        if fam == "hurwitz" or fam == "maslanka_hurwitz":
            return f"{fam}(a={self.a})"
        if fam == "general":
            return f"general(b={self.b},a={self.a})"
        if fam == "two_param":
            return f"two_param(a={self.a},b={self.b})"
        if fam == "bernoulli_poly":
            return f"bernoulli_poly(x={self.x})"
        if fam == "dirichlet":
            return f"dirichlet(q={self.chi.q},chi={self.chi.exponents},b={self.b})"
        if fam == "maslanka_lerch":
            return f"maslanka_lerch(z={self.z},a={self.a})"
        return f"maslanka_general(p={self.p},a={self.a},f={self.label or 'custom'})"


def bernoulli_weight_rational(j: int, x) -> Fraction:
    """Exact rational part (-1)^j 2 (2j+2)! / B_{2j+2}(x) of the Bernoulli-family
    weight; the full weight is this times (2 pi)^{-(2j+2)}."""
    bp = bernoulli_poly(2 * j + 2, Fraction(x))
    if bp == 0:
        raise ZeroDenominatorError(j, f"B_{2 * j + 2}(x) vanishes at x={x} (index j={j})")
    return Fraction((-1) ** j * 2 * math.factorial(2 * j + 2)) / bp


def riemann_weight_rational(j: int) -> Fraction:
    """Rational r_j with 1/zeta(2j+2) = r_j (2 pi)^{-(2j+2)}, from the
    Bernoulli-number closed form of zeta at even integers."""
    b = bernoulli_number(2 * j + 2)
    return Fraction(2 * math.factorial(2 * j + 2)) / ((-1) ** j * b)


@dataclass(frozen=True)
class CoefficientRow:
    k: int
    value: object
    working_precision: int
    method: str
    err_bound: object = None
    error: str | None = None


# ---------------------------------------------------------------------------
# Binomial form

_WEIGHT_CACHE: dict = {}


def _weights(spec: CoefficientSpec, K: int, dps: int, jobs: int = 1) -> list:
    key = (spec, dps)
    have = _WEIGHT_CACHE.get(key, [])
    if len(have) <= K:
        todo = list(range(len(have), K + 1))
        if jobs > 1 and len(todo) > 32 and spec.family != "maslanka_general":
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                new = list(pool.map(_weight_task, [(spec, j, dps) for j in todo], chunksize=8))
        else:
            new = [spec.weight(j, dps) for j in todo]
        have = have + new
        _WEIGHT_CACHE[key] = have
    return have[: K + 1]


def _weight_task(args):
    spec, j, dps = args
    return spec.weight(j, dps)


def binomial_transform(weights, k: int):
    """sum_j (-1)^j C(k, j) w_j in the current context."""
    total = mp.mpf(0)
    c = 1
    for j in range(k + 1):
        total += c * weights[j] if j % 2 == 0 else -c * weights[j]
        c = c * (k - j) // (j + 1)
    return total


def ck_binomial(spec: CoefficientSpec, k: int, policy: PrecisionPolicy | None = None) -> CoefficientRow:
    """c_k (or A_k for the Maslanka families) by the alternating binomial sum."""
    if k < 0:
        raise ValueError("k must be non-negative")
    policy = policy or PrecisionPolicy.verification()
    dps = policy.working_digits(k)
    w = _weights(spec, k, dps)
    with mp.workdps(dps):
        value = binomial_transform(w, k)
    with mp.workdps(policy.target_digits + policy.guard_digits):
        value = +value
        bound = mp.mpf(10) ** (-policy.target_digits)
    return CoefficientRow(k, value, dps, "binomial", bound)


def _to_fixed(v, bits: int) -> int:
    return int(mp.nint(mp.ldexp(v, bits)))


def ck_binomial_range(spec: CoefficientSpec, K: int, policy: PrecisionPolicy | None = None, jobs: int = 1) -> list:
    """c_0..c_K at once through a fixed-point difference table.

    D^{m+1}_j = D^m_j - D^m_{j+1} with D^0_j = w_j scaled to integers, so
    c_k = D^k_0.  Integer arithmetic makes the rounding exactly one ulp per
    weight, amplified by at most 2^k.
    """
    policy = policy or PrecisionPolicy.bulk()
    dps = policy.working_digits(K)
    w = _weights(spec, K, dps, jobs)
    bits = int(math.ceil((policy.target_digits + policy.guard_digits) * 3.3219281)) + K + 16
    with mp.workdps(dps):
        re = [_to_fixed(mp.re(v), bits) for v in w]
        im = [_to_fixed(mp.im(v), bits) for v in w] if any(mp.im(v) != 0 for v in w) else None
    out_re = _difference_diagonal(re)
    out_im = _difference_diagonal(im) if im is not None else None
    with mp.workdps(policy.target_digits + policy.guard_digits):
        scale = mp.ldexp(mp.mpf(1), -bits)
        vals = []
        for k in range(K + 1):
            v = out_re[k] * scale
            if out_im is not None:
                v = mp.mpc(v, out_im[k] * scale)
            vals.append(v)
    return vals


def _difference_diagonal(row: list) -> list:
    out = [row[0]]
    cur = row
    for _ in range(len(row) - 1):
        cur = [cur[i] - cur[i + 1] for i in range(len(cur) - 1)]
        out.append(cur[0])
    return out


def maslanka_ak(spec: CoefficientSpec, k: int, policy: PrecisionPolicy | None = None) -> CoefficientRow:
    """A_k = sum_j (-1)^j C(k, j) (scale j + scale - 1) f(scale j + scale, a)."""
    if not spec.is_maslanka:
        raise ValueError("maslanka_ak needs a Maslanka family")
    return ck_binomial(spec, k, policy)


def ck_hurwitz_da(a, k: int, dps: int | None = None):
    """d/da c_k(a) = sum_j (-1)^j C(k, j) (2j+2) zeta(2j+3, a) / zeta(2j+2, a)^2."""
    dps = dps or 30
    work = dps + 10 + PrecisionPolicy.cancellation_slack(k)
    with mp.workdps(work):
        terms = []
        for j in range(k + 1):
            z2 = hurwitz_zeta(2 * j + 2, a, work)
            terms.append((2 * j + 2) * hurwitz_zeta(2 * j + 3, a, work) / z2 ** 2)
        v = binomial_transform(terms, k)
    with mp.workdps(dps):
        return +v


# ---------------------------------------------------------------------------
# Moebius-sum form

@dataclass
class MobiusForm:
    """c_k = sum_n u_n [(1 - x_n)^k - shift] with x_n = n^{-b}.

    ``shift`` is 1 for the odd family (its j sum starts at 1) and 0 for the
    others.
    """

    b: float
    weight: str  # "mu", "mu_over_n", "mu_2adic", "chi_mu"
    shift: int = 0
    chi: DirichletCharacter | None = None


def mobius_form(spec: CoefficientSpec) -> MobiusForm | None:
    fam = spec.family
    if fam == "riemann" or (fam == "hurwitz" and to_mp(spec.a) == 1):
        return MobiusForm(2.0, "mu")
    if fam == "general" and to_mp(spec.a) == 1:
        return MobiusForm(float(spec.b), "mu")
    if fam == "hurwitz" and to_mp(spec.a) == mp.mpf(1) / 2:
        return MobiusForm(2.0, "mu_2adic")
    if fam == "odd":
        return MobiusForm(2.0, "mu_over_n", shift=1)
    if fam == "dirichlet":
        return MobiusForm(float(spec.b), "chi_mu", chi=spec.chi)
    return None


def _block_weights(form: MobiusForm, lo: int, mu: np.ndarray, n: np.ndarray, mu_all) -> np.ndarray:
    """u_n for a block of n."""
    nb = n.astype(np.float64)
    x = nb ** (-form.b)
    if form.weight == "mu":
        return mu * x
    if form.weight == "mu_over_n":
        return mu / nb
    if form.weight == "chi_mu":
        chi = form.chi
        q = chi.q
        table = np.array([complex(chi(r)) for r in range(q)], dtype=np.complex128)
        return table[n % q] * mu * x
    if form.weight == "mu_2adic":
        # e_n = sum_{m>=1, 2^m | n} mu(n / 2^m)
        e = np.zeros(len(n), dtype=np.float64)
        m = 1
        while (1 << m) <= n[-1]:
            step = 1 << m
            first = (-lo) % step
            idx = np.arange(first, len(n), step)
            if len(idx):
                e[idx] += mu_all(n[idx] >> m)
            m += 1
        return e * x
    raise ValueError(form.weight)


class MobiusEngine:
    """Float64 evaluator of a Moebius-type sum for many k at once.

    Terms with n <= M are summed directly.  For M < n <= N the factor
    (1 - x_n)^k is binomially expanded to order I, so only the power sums
    S_i = sum u_n x_n^i over the tail are stored; with k x_n <= 0.01 the
    expansion error is below 1e-30 relative.  ``approx=True`` replaces
    (1 - x)^k by exp(-k x).
    """

    ORDER = 14

    def __init__(self, form: MobiusForm, N: int, k_max: int, block: int = 1 << 22):
        if N > MOBIUS_CAP:
            raise ValueError(f"Moebius sum needs N={N}, above the cap {MOBIUS_CAP}")
        self.form = form
        self.N = N
        self.k_max = k_max
        b = form.b
        self.M = min(N, max(64, int(math.ceil((max(k_max, 1) / 0.01) ** (1.0 / b)))))
        complex_w = form.weight == "chi_mu"
        dtype = np.complex128 if complex_w else np.float64
        # the 2-adic weights need mu at n / 2^m, which may lie in earlier blocks
        small_mu = None
        if form.weight == "mu_2adic":
            small_mu = np.zeros(N // 2 + 1, dtype=np.int8)
            for lo, mu in mobius_blocks(max(N // 2, 1), block):
                small_mu[lo:lo + len(mu)] = mu
            mu_all = lambda idx: small_mu[idx]
        else:
            mu_all = None
        direct_u = []
        direct_x = []
        S = np.zeros(self.ORDER + 1, dtype=dtype)
        for lo, mu in mobius_blocks(N, block):
            n = np.arange(lo, lo + len(mu), dtype=np.int64)
            u = _block_weights(form, lo, mu.astype(np.float64), n, mu_all)
            x = n.astype(np.float64) ** (-b)
            head = n <= self.M
            if head.any():
                direct_u.append(u[head])
                direct_x.append(x[head])
            tail = ~head
            if tail.any():
                ut, xt = u[tail], x[tail]
                p = ut.copy()
                for i in range(self.ORDER + 1):
                    S[i] += p.sum()
                    p = p * xt
        self.u = np.concatenate(direct_u)
        self.x = np.concatenate(direct_x)
        self.S = S
        self.is_complex = complex_w

    def tail_bound(self) -> float:
        """Absolute bound on the omitted n > N terms (no cancellation assumed)."""
        b = self.form.b
        N = self.N
        if self.form.weight == "mu_over_n":
            # |(1 - x)^k - 1| <= k x
            return self.k_max * N ** (-2.0) / 2
        base = N ** (1 - b) / (b - 1)
        if self.form.weight == "mu_2adic":
            base *= math.log2(N) + 1
        return base

    def values(self, ks: Iterable[int], approx: bool = False) -> np.ndarray:
        ks = np.asarray(list(ks), dtype=np.int64)
        if len(ks) and ks.max() > self.k_max:
            raise ValueError("k exceeds the k_max this engine was built for")
        out = np.zeros(len(ks), dtype=np.complex128 if self.is_complex else np.float64)
        shift = self.form.shift
        chunk = max(1, 2_000_000 // max(len(self.x), 1))
        with np.errstate(divide="ignore"):
            logq = np.log1p(-self.x)
        for start in range(0, len(ks), chunk):
            kk = ks[start:start + chunk].astype(np.float64)[:, None]
            if approx:
                fac = np.exp(-kk * self.x[None, :])
            else:
                with np.errstate(invalid="ignore"):
                    fac = np.exp(kk * logq[None, :])
                fac[:, self.x >= 1] = (kk == 0).astype(np.float64)
            out[start:start + chunk] = (fac - shift) @ self.u
        for idx, k in enumerate(ks):
            acc = 0.0
            lo = 1 if shift else 0
            for i in range(lo, self.ORDER + 1):
                if approx:
                    coef = (-float(k)) ** i / math.factorial(i)
                else:
                    if i > k:
                        break
                    coef = (-1) ** i * math.comb(int(k), i)
                acc += coef * self.S[i]
            out[idx] += acc
        return out

    def values_range(self, K: int) -> np.ndarray:
        """c_0..c_K; the tail expansion is vectorised over k."""
        if K > self.k_max:
            raise ValueError("k exceeds the k_max this engine was built for")
        ks = np.arange(K + 1)
        out = np.zeros(K + 1, dtype=np.complex128 if self.is_complex else np.float64)
        shift = self.form.shift
        chunk = max(1, 2_000_000 // max(len(self.x), 1))
        with np.errstate(divide="ignore"):
            logq = np.log1p(-self.x)
        for start in range(0, K + 1, chunk):
            kk = ks[start:start + chunk].astype(np.float64)[:, None]
            with np.errstate(invalid="ignore"):
                fac = np.exp(kk * logq[None, :])
            fac[:, self.x >= 1] = (kk == 0).astype(np.float64)
            out[start:start + chunk] = (fac - shift) @ self.u
        kf = ks.astype(np.float64)
        binom = np.ones(K + 1)
        for i in range(self.ORDER + 1):
            if i:
                binom = binom * (kf - (i - 1)) / i  # C(k, i), zero once i > k
            if i >= 1 or not shift:
                out += (-1) ** i * binom * self.S[i]
        return out


@lru_cache(maxsize=8)
def _engine(form_key, N: int, k_max: int) -> MobiusEngine:
    b, weight, shift, chi = form_key
    return MobiusEngine(MobiusForm(b, weight, shift, chi), N, k_max)


def mobius_engine(spec: CoefficientSpec, N: int, k_max: int) -> MobiusEngine:
    form = mobius_form(spec)
    if form is None:
        raise ValueError(f"no Moebius-sum form for family {spec.describe()}")
    # round k_max up so nearby requests share one engine
    k_cap = 1 << max(8, int(math.ceil(math.log2(max(k_max, 1)))))
    return _engine((form.b, form.weight, form.shift, form.chi), N, k_cap)


def _mobius_N(tol, b: float = 2.0) -> int:
    tol = float(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    # N^{1-b}/(b-1) <= tol
    N = int(math.ceil((tol * (b - 1)) ** (-1.0 / (b - 1))))
    if N > MOBIUS_CAP:
        raise ValueError(f"tol={tol} needs N={N} Moebius terms, above the cap {MOBIUS_CAP}")
    return max(N, 16)


def ck_mobius(k: int, tol=1e-8, spec: CoefficientSpec | None = None) -> CoefficientRow:
    """c_k = sum_{n<=N} mu(n)/n^2 (1 - 1/n^2)^k with N chosen so that the
    absolute tail bound sum_{n>N} n^{-2} < N^{-1} is at most ``tol``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    spec = spec or CoefficientSpec.riemann()
    form = mobius_form(spec)
    N = _mobius_N(tol, form.b if form else 2.0)
    eng = mobius_engine(spec, N, k)
    v = eng.values([k])[0]
    return CoefficientRow(k, _np_to_mp(v), 16, "mobius", eng.tail_bound() + 1e-15)


def ck_approx(k: int, tol=1e-8) -> CoefficientRow:
    """sum_n mu(n)/n^2 exp(-k/n^2), truncated like :func:`ck_mobius`."""
    if k < 1:
        raise ValueError("k must be >= 1")
    N = _mobius_N(tol)
    eng = mobius_engine(CoefficientSpec.riemann(), N, k)
    v = eng.values([k], approx=True)[0]
    return CoefficientRow(k, _np_to_mp(v), 16, "approx", eng.tail_bound() + 1e-15)


def _np_to_mp(v):
    if isinstance(v, (complex, np.complexfloating)):
        return mp.mpc(float(v.real), float(v.imag))
    return mp.mpf(float(v))


def mobius_values(spec: CoefficientSpec, ks, tol=1e-7, approx: bool = False):
    """(values, bound) for many k through one engine."""
    form = mobius_form(spec)
    if form is None:
        raise ValueError(f"no Moebius-sum form for family {spec.describe()}")
    ks = list(ks)
    N = _mobius_N(tol, form.b)
    eng = mobius_engine(spec, N, max(ks))
    return eng.values(ks, approx), eng.tail_bound()


def fourier_term(k, n, dps: int = 30):
    """(2/pi) int_0^inf cos(k t)/(n^2 t^2 + n^-2) dt by oscillatory quadrature,
    returned next to its closed form exp(-k/n^2)."""
    with mp.workdps(dps + 10):
        k, n = to_mp(k), to_mp(n)
        f = lambda t: mp.cos(k * t) / (n * n * t * t + 1 / (n * n))
        res = integrate_oscillatory(f, 2 * mp.pi / k, tol=mp.mpf(10) ** (-dps + 5), dps=dps, max_cycles=2000, order=16)
        value = 2 / mp.pi * res.value
        exact = mp.exp(-k / (n * n))
    return value, exact, res


# ---------------------------------------------------------------------------
# Sweeps

def _row_error(k: int, exc: Exception) -> CoefficientRow:
    return CoefficientRow(k, None, 0, "error", None, f"{type(exc).__name__}: {exc}")


def sweep(
    spec: CoefficientSpec,
    k_range: Iterable[int],
    policy: PrecisionPolicy | None = None,
    k_switch: int = 2000,
    jobs: int = 1,
    method: str = "auto",
) -> Iterator[CoefficientRow]:
    """Rows in ascending k.

    ``auto`` uses the binomial form up to ``k_switch``.  Beyond it the
    Moebius form is used when the family has one and the policy tolerance
    10^-target is reachable within the sieve cap; otherwise the binomial form
    continues.  Per-row failures become error rows.
    """
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise ValueError("empty k range")
    policy = policy or PrecisionPolicy.bulk()
    tol = 10.0 ** (-policy.target_digits)
    form = mobius_form(spec)
    mobius_ok = form is not None and not spec.is_maslanka
    if mobius_ok:
        try:
            _mobius_N(tol, form.b)
        except ValueError:
            mobius_ok = False
    if method == "binomial":
        big, small = [], ks
    elif method in ("mobius", "approx"):
        if form is None:
            raise ValueError(f"no Moebius-sum form for family {spec.describe()}")
        big, small = ks, []
    else:
        small = [k for k in ks if k <= k_switch or not mobius_ok]
        big = [k for k in ks if k > k_switch and mobius_ok]
    rows: dict = {}
    if small:
        try:
            vals = ck_binomial_range(spec, max(small), policy, jobs)
            bound = mp.mpf(10) ** (-policy.target_digits)
            for k in small:
                rows[k] = CoefficientRow(k, vals[k], policy.working_digits(max(small)), "binomial", bound)
        except Exception as exc:  # fall back to per-row evaluation so one bad j is localised
            for k in small:
                try:
                    rows[k] = ck_binomial(spec, k, policy)
                except Exception as exc2:
                    rows[k] = _row_error(k, exc2)
    if big:
        approx = method == "approx"
        try:
            vals, bound = mobius_values(spec, big, tol if method == "auto" else max(tol, 1e-8), approx)
            for k, v in zip(big, vals):
                rows[k] = CoefficientRow(k, _np_to_mp(v), 16, "approx" if approx else "mobius", bound)
        except Exception as exc:
            for k in big:
                rows[k] = _row_error(k, exc)
    for k in ks:
        yield rows[k]


def dirichlet_spec(q: int, index: int, b=2) -> CoefficientSpec:
    chars = characters_mod(q)
    if not 0 <= index < len(chars):
        raise ValueError(f"character index must be in 0..{len(chars) - 1} for q={q}")
    return CoefficientSpec.dirichlet(chars[index], b)
