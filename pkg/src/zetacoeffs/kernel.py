"""Special functions: Gamma family, Hurwitz / Riemann / Lerch / multiple
zeta, Dirichlet characters and L-functions, Stieltjes constants and the
log-derivative constants eta_p.

The Gamma family is delegated to mpmath.  The zeta-type functions are
evaluated here by Euler-Maclaurin summation so that their truncation rules
stay visible and testable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath as mp

from .combinatorics import bernoulli_number, binomial, stirling_first
from .numerics import accelerate_alternating, real_if_possible, to_mp


class PoleError(ArithmeticError):
    """Evaluation requested at a pole."""


def _is_nonpositive_integer(z) -> bool:
    z = to_mp(z)
    return mp.im(z) == 0 and mp.re(z) <= 0 and mp.re(z) == mp.floor(mp.re(z))


# ---------------------------------------------------------------------------
# Gamma family

def gamma(z, dps: int | None = None):
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}")
    with mp.workdps(dps or mp.mp.dps):
        return +mp.gamma(to_mp(z))


def digamma(z, dps: int | None = None):
    if _is_nonpositive_integer(z):
        raise PoleError(f"digamma has a pole at {z}")
    with mp.workdps(dps or mp.mp.dps):
        return +mp.digamma(to_mp(z))


def polygamma(m: int, z, dps: int | None = None):
    if _is_nonpositive_integer(z):
        raise PoleError(f"polygamma has a pole at {z}")
    with mp.workdps(dps or mp.mp.dps):
        return +mp.polygamma(m, to_mp(z))


# ---------------------------------------------------------------------------
# Hurwitz zeta

_BERN_CACHE: dict = {}


def _bernoulli_mp(n: int):
    """B_n as mpf at the current precision (cached per precision)."""
    key = (n, mp.mp.prec)
    if key not in _BERN_CACHE:
        b = bernoulli_number(n)
        _BERN_CACHE[key] = mp.mpf(b.numerator) / b.denominator
    return _BERN_CACHE[key]


def _int_or_none(s):
    if mp.im(s) == 0 and mp.re(s) == mp.floor(mp.re(s)) and abs(mp.re(s)) < 10 ** 6:
        return int(mp.re(s))
    return None


def _hurwitz_em(s, a, dps: int):
    """Euler-Maclaurin evaluation of zeta(s, a) for Re a > 0, s != 1."""
    eps = mp.mpf(10) ** (-dps - 2)
    sigma = mp.re(s)
    s_int = _int_or_none(s)

    def power(x):
        # x^{-s}; integer exponents avoid a logarithm
        return x ** (-s_int) if s_int is not None else mp.power(x, -s)

    # large Re s: plain summation with an explicit integral tail bound
    if sigma > 2 and mp.re(a) > 0:
        total = mp.mpf(0)
        n = 0
        while n < 4096:
            x = n + a
            total += power(x)
            n += 1
            if n >= 2:
                tail = mp.re(n - 1 + a) ** (1 - sigma) / (sigma - 1)
                # relative test: zeta(s, a) ~ a^-s is tiny for large s and a > 1
                if tail < eps * abs(total):
                    return total
        # fall through to Euler-Maclaurin

    N = max(10, int(mp.ceil(abs(s))), int(math.ceil(0.7 * dps)))
    total = mp.mpf(0)
    for n in range(N):
        total += power(n + a)
    x = N + a
    xs = power(x)
    total += x * xs / (s - 1) + xs / 2
    # correction terms B_{2k}/(2k)! (s)_{2k-1} x^{-s-2k+1}
    rising = s  # (s)_{1}
    xpow = xs / x  # x^{-s-1}
    inv_x2 = 1 / (x * x)
    fact = mp.mpf(2)  # (2k)!
    prev = mp.inf
    for k in range(1, 4 * dps + 50):
        term = _bernoulli_mp(2 * k) / fact * rising * xpow
        total += term
        mag = abs(term)
        if mag < eps * (1 + abs(total)):
            return total
        if mag > prev and k > 3:
            raise ArithmeticError(f"Euler-Maclaurin series for zeta({s}, {a}) diverged")
        prev = mag
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        xpow *= inv_x2
        fact *= (2 * k + 1) * (2 * k + 2)
    raise ArithmeticError(f"Euler-Maclaurin series for zeta({s}, {a}) did not converge")


def hurwitz_zeta(s, a=1, dps: int | None = None):
    """zeta(s, a) = sum_{n>=0} (n + a)^{-s}, continued to all s != 1.

    Arguments with Re a <= 0 are shifted up by the finite sum of the missing
    terms.  Real inputs give real outputs.
    """
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        s, a = to_mp(s), to_mp(a)
        if s == 1:
            raise PoleError("zeta(s, a) has a pole at s = 1")
        if _is_nonpositive_integer(a):
            raise ValueError(f"a = {a} is a non-positive integer")
        head = mp.mpf(0)
        while mp.re(a) <= 0.5:
            head += mp.power(a, -s)
            a += 1
        value = head + _hurwitz_em(s, a, dps + 5)
        value = real_if_possible(value)
    return +value


@lru_cache(maxsize=20000)
def _zeta_cached(s, a, dps):
    return hurwitz_zeta(s, a, dps)


def hurwitz_zeta_cached(s, a, dps: int):
    """Memoised :func:`hurwitz_zeta` keyed by (s, a, dps)."""
    return _zeta_cached(to_mp(s), to_mp(a), dps)


def riemann_zeta(s, dps: int | None = None):
    return hurwitz_zeta(s, 1, dps)


def zeta_even(n: int, dps: int | None = None):
    """zeta(2n) = (-1)^(n+1) B_{2n} (2 pi)^{2n} / (2 (2n)!) for n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        b = bernoulli_number(2 * n)
        v = (-1) ** (n + 1) * mp.mpf(b.numerator) / b.denominator * (2 * mp.pi) ** (2 * n) / (2 * mp.factorial(2 * n))
    return +v


def cauchy_derivatives(f, s0, order: int, radius=None, points: int | None = None, dps: int | None = None):
    """[f(s0), f'(s0), ..., f^{(order)}(s0)] by the trapezoidal rule on a circle."""
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10 + order):
        s0 = to_mp(s0)
        r = to_mp(radius) if radius is not None else mp.mpf(1) / 4
        M = points or max(2 * order + 8, int(2.5 * dps) + 16)
        coeff = [mp.mpc(0)] * (order + 1)
        for m in range(M):
            w = mp.expjpi(mp.mpf(2 * m) / M)
            v = f(s0 + r * w)
            wm = mp.mpc(1)
            for j in range(order + 1):
                coeff[j] += v * wm
                wm /= w
        out = []
        for j in range(order + 1):
            c = coeff[j] / M / r ** j * mp.factorial(j)
            out.append(real_if_possible(c) if mp.im(s0) == 0 else c)
    return [real_if_possible(+v) if abs(mp.im(v)) < mp.mpf(10) ** (-dps) else +v for v in out]


def hurwitz_zeta_derivative(s, a=1, order: int = 1, dps: int | None = None):
    """d^order/ds^order zeta(s, a) away from s = 1."""
    dps = dps or mp.mp.dps
    s = to_mp(s)
    dist = abs(s - 1)
    if dist == 0:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    r = min(mp.mpf(1) / 4, dist / 2)
    work = dps + 5
    vals = cauchy_derivatives(lambda z: hurwitz_zeta(z, a, work), s, order, radius=r, dps=work)
    with mp.workdps(dps):
        v = vals[order]
        if abs(mp.im(v)) < mp.mpf(10) ** (-dps) and mp.im(s) == 0 and mp.im(to_mp(a)) == 0:
            v = mp.re(v)
        return +v


# ---------------------------------------------------------------------------
# Lerch transcendent

def _rational_turn(z, max_q: int = 64):
    """(p, q) with z = exp(2 pi i p/q) when |z| = 1 and q <= max_q."""
    theta = mp.arg(z) / (2 * mp.pi)
    for q in range(1, max_q + 1):
        p = mp.nint(theta * q)
        if abs(theta * q - p) < mp.mpf(10) ** (-mp.mp.dps + 5):
            return int(p) % q, q
    return None


def lerch_phi(z, s, a, dps: int | None = None):
    """Phi(z, s, a) = sum_{n>=0} z^n (n + a)^{-s}.

    |z| < 1: direct summation with a geometric tail bound.  |z| = 1 with a
    rational angle p/q: finite combination of Hurwitz zeta values.  Other
    points on the unit circle: Levin-t summation of the direct series.
    """
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        z, s, a = to_mp(z), to_mp(s), to_mp(a)
        if _is_nonpositive_integer(a):
            raise ValueError(f"a = {a} is a non-positive integer")
        r = abs(z)
        if r > 1 + mp.mpf(10) ** (-dps):
            raise ValueError("lerch_phi requires |z| <= 1")
        if abs(r - 1) <= mp.mpf(10) ** (-dps):
            if mp.re(s) <= 1:
                raise ValueError("lerch_phi on |z| = 1 requires Re s > 1")
            turn = _rational_turn(z)
            if turn is not None:
                p, q = turn
                if q == 1:
                    return hurwitz_zeta(s, a, dps)
                total = mp.mpf(0)
                for j in range(q):
                    total += mp.expjpi(mp.mpf(2 * p * j) / q) * hurwitz_zeta(s, (j + a) / q, dps + 5)
                out = total * mp.power(q, -s)
                if mp.im(z) == 0 and mp.im(s) == 0 and mp.im(a) == 0:
                    out = mp.re(out)
                return +out
            terms = [z ** n * mp.power(n + a, -s) for n in range(200)]
            return accelerate_alternating(terms, 60, dps=dps)
        eps = mp.mpf(10) ** (-dps - 3)
        total = mp.mpf(0)
        zn = mp.mpf(1)
        n = 0
        sigma = mp.re(s)
        while True:
            term = zn * mp.power(n + a, -s)
            total += term
            n += 1
            zn *= z
            # for n + a >= 1 and sigma >= 0 the remaining terms are bounded by |term| r^m
            if n > 2 and (sigma >= 0 or n > 10 * abs(sigma)):
                ratio = r * (abs(n + a) / abs(n + 1 + a)) ** min(sigma, 0)
                if ratio < 1 and abs(term) * ratio / (1 - ratio) < eps * (1 + abs(total)):
                    break
            if n > 10 ** 7:
                raise ArithmeticError("lerch_phi direct series did not converge")
        if mp.im(z) == 0 and mp.im(s) == 0 and mp.im(a) == 0:
            total = mp.re(total)
    return +total


def polylog(s, z, dps: int | None = None):
    """Li_s(z) = z Phi(z, s, 1)."""
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 5):
        return +(to_mp(z) * lerch_phi(z, s, 1, dps))


# ---------------------------------------------------------------------------
# Multiple zeta and multiple Gamma

def multiple_zeta_weights(n: int, z) -> list:
    """c_j with C(k+n-1, n-1) = sum_j c_j (k+z)^j, j = 0..n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    exact = isinstance(z, (int, Fraction))
    one = Fraction(1) if exact else mp.mpf(1)
    poly = [one]
    for i in range(1, n):
        # multiply by (w + i - z)
        c0 = (i - z) * one
        new = [0 * one] * (len(poly) + 1)
        for j, c in enumerate(poly):
            new[j] += c * c0
            new[j + 1] += c
        poly = new
    fact = math.factorial(n - 1)
    return [c / fact for c in poly]


def multiple_zeta(n: int, s, z=1, dps: int | None = None):
    """zeta_n(s, z) = sum_k C(k+n-1, n-1)(k+z)^{-s} as a finite combination
    of Hurwitz values zeta(s - j, z), which also continues it in s."""
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        s, zz = to_mp(s), to_mp(z)
        for j in range(n):
            if s - j == 1:
                raise PoleError(f"zeta_{n}(s, z) has a pole at s = {s}")
        weights = multiple_zeta_weights(n, zz)
        total = mp.mpf(0)
        for j, c in enumerate(weights):
            if c != 0:
                total += c * hurwitz_zeta(s - j, zz, dps + 5)
    return +total


def multiple_zeta_derivative_at_zero(n: int, z=1, dps: int | None = None):
    """d/ds zeta_n(s, z) at s = 0."""
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        zz = to_mp(z)
        weights = multiple_zeta_weights(n, zz)
        total = mp.mpf(0)
        for j, c in enumerate(weights):
            if c != 0:
                total += c * hurwitz_zeta_derivative(-j, zz, 1, dps + 5)
    return +total


def multiple_gamma_constants(n: int, literal: bool = False, dps: int | None = None) -> list:
    """[R_1, ..., R_n] for the multiple Gamma normalisation.

    By default R_m = sum_{k=1}^m zeta_k'(0, 1), which makes Gamma_m(1) = 1.
    ``literal=True`` uses R_m = m zeta_m'(0, 1) (the summand without its
    index dependence), kept only to show that it violates Gamma_m(1) = 1.
    """
    dps = dps or mp.mp.dps
    d = [multiple_zeta_derivative_at_zero(k, 1, dps) for k in range(1, n + 1)]
    if literal:
        return [m * d[m - 1] for m in range(1, n + 1)]
    out, acc = [], mp.mpf(0)
    for v in d:
        acc += v
        out.append(acc)
    return out


def log_multiple_gamma(n: int, z, dps: int | None = None, literal: bool = False):
    """ln Gamma_n(z) = zeta_n'(0, z) + sum_{k=1}^n (-1)^k C(z, k-1) R_{n+1-k}."""
    if n not in (1, 2, 3):
        raise ValueError("log_multiple_gamma supports n in {1, 2, 3}")
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        zz = to_mp(z)
        if mp.re(zz) <= 0:
            raise ValueError("z must be positive")
        R = multiple_gamma_constants(n, literal, dps + 5)
        total = multiple_zeta_derivative_at_zero(n, zz, dps + 5)
        for k in range(1, n + 1):
            total += (-1) ** k * mp.binomial(zz, k - 1) * R[n - k]
    return +total


# ---------------------------------------------------------------------------
# Dirichlet characters

def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root(p: int, e: int) -> int:
    phi = p - 1
    fac = [f for f, _ in _factorize(phi)]
    for g in range(2, p + 1):
        if all(pow(g, phi // f, p) != 1 for f in fac):
            break
    else:
        g = 1
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


@dataclass(frozen=True)
class UnitGroup:
    """Generators of (Z/qZ)^* with a discrete-log table.

    ``logs[n]`` is the exponent vector of n on ``gens`` (None when
    gcd(n, q) > 1).
    """

    q: int
    gens: tuple
    orders: tuple
    logs: tuple

    @property
    def size(self) -> int:
        return math.prod(self.orders) if self.orders else 1


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroup:
    if q < 1:
        raise ValueError("modulus must be positive")
    comps = []  # (modulus m, generator residue mod m, order)
    for p, e in _factorize(q):
        m = p ** e
        if p == 2:
            if e == 2:
                comps.append((m, m - 1, 2))
            elif e >= 3:
                comps.append((m, m - 1, 2))
                comps.append((m, 5, 2 ** (e - 2)))
        else:
            comps.append((m, _primitive_root(p, e), m // p * (p - 1)))
    gens = []
    for m, g, _ in comps:
        # lift g mod m to a residue mod q that is 1 modulo the other components
        rest = q // m
        if rest == 1:
            gens.append(g % q)
        else:
            inv = pow(rest, -1, m)
            gens.append((1 + (g - 1) * rest * inv) % q)
    orders = tuple(o for _, _, o in comps)
    logs: list = [None] * q
    # enumerate the group from exponent vectors
    size = math.prod(orders) if orders else 1
    for idx in range(size):
        vec = []
        rem = idx
        for o in orders:
            vec.append(rem % o)
            rem //= o
        n = 1 % q if q > 1 else 0
        for g, e in zip(gens, vec):
            n = n * pow(g, e, q) % q
        logs[n % q if q > 1 else 0] = tuple(vec)
    if q == 1:
        logs = [()]
    return UnitGroup(q, tuple(gens), orders, tuple(logs))


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod q given by an exponent vector on the unit-group
    generators: chi(g_i) = exp(2 pi i e_i / ord_i)."""

    q: int
    exponents: tuple
    _group: UnitGroup = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self._group is None:
            object.__setattr__(self, "_group", unit_group(self.q))
        if len(self.exponents) != len(self._group.orders):
            raise ValueError("exponent vector does not match the unit group")

    @property
    def lcm(self) -> int:
        return math.lcm(*self._group.orders) if self._group.orders else 1

    @property
    def order(self) -> int:
        """Order of chi in the character group."""
        o = 1
        for e, n in zip(self.exponents, self._group.orders):
            o = math.lcm(o, n // math.gcd(e, n))
        return o

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def exponent(self, n: int):
        """t with chi(n) = exp(2 pi i t / lcm), or None when chi(n) = 0."""
        if self.q == 1:
            return 0
        vec = self._group.logs[n % self.q]
        if vec is None:
            return None
        L = self.lcm
        return sum(e * v * (L // o) for e, v, o in zip(self.exponents, vec, self._group.orders)) % L

    def __call__(self, n: int):
        t = self.exponent(n)
        if t is None:
            return 0
        L = self.lcm
        if (2 * t) % L == 0:
            return 1 if t == 0 else -1
        if (4 * t) % L == 0:
            return mp.mpc(0, 1) if 4 * t == L else mp.mpc(0, -1)
        return mp.expjpi(mp.mpf(2 * t) / L)

    def is_real(self) -> bool:
        return self.order <= 2

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.q, tuple((-e) % o for e, o in zip(self.exponents, self._group.orders)))


@lru_cache(maxsize=None)
def characters_mod(q: int) -> tuple:
    """All phi(q) characters mod q; the principal one comes first."""
    G = unit_group(q)
    out = []
    for idx in range(G.size):
        vec = []
        rem = idx
        for o in G.orders:
            vec.append(rem % o)
            rem //= o
        out.append(DirichletCharacter(q, tuple(vec), G))
    return tuple(out)


def character_from_values(q: int, values: dict) -> DirichletCharacter:
    """The unique character mod q with the given values on a few residues."""
    for chi in characters_mod(q):
        if all(abs(complex(chi(n)) - complex(v)) < 1e-12 for n, v in values.items()):
            return chi
    raise ValueError("no character mod q has those values")


def dirichlet_l(s, chi: DirichletCharacter, dps: int | None = None):
    """L(s, chi) = q^{-s} sum_{r=1}^q chi(r) zeta(s, r/q)."""
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        s = to_mp(s)
        q = chi.q
        if s == 1:
            if chi.is_principal:
                raise PoleError("L(s, chi) for the principal character has a pole at s = 1")
            total = mp.mpf(0)
            for r in range(1, q + 1):
                c = chi(r)
                if c != 0:
                    total += c * mp.digamma(mp.mpf(r) / q)
            out = -total / q
        else:
            total = mp.mpf(0)
            for r in range(1, q + 1):
                c = chi(r)
                if c != 0:
                    total += c * hurwitz_zeta(s, mp.mpf(r) / q, dps + 5)
            out = total * mp.power(q, -s)
        if chi.is_real() and mp.im(s) == 0:
            out = mp.re(out)
    return +out


# ---------------------------------------------------------------------------
# Stieltjes constants

@dataclass(frozen=True)
class StieltjesTable:
    """gamma_0(a), ..., gamma_K(a) in the convention
    zeta(s, a) - 1/(s-1) = sum_n (-1)^n gamma_n(a)/n! (s-1)^n."""

    a: object
    values: tuple
    dps: int
    method: str = "contour trapezoid, radius 1/2"

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    def laurent_coefficients(self) -> list:
        """[u^n] coefficients of zeta(s, a) - 1/(s-1), u = s - 1."""
        with mp.workdps(self.dps):
            return [(-1) ** n * g / mp.factorial(n) for n, g in enumerate(self.values)]


def stieltjes(a=1, K: int = 4, dps: int | None = None) -> StieltjesTable:
    """gamma_k(a), k <= K, from the trapezoidal rule on |s - 1| = 1/2 applied
    to the entire function zeta(s, a) - 1/(s - 1)."""
    if K < 0:
        raise ValueError("K must be non-negative")
    dps = dps or mp.mp.dps
    work = dps + 10 + int(0.31 * K) + 5
    with mp.workdps(work):
        a = to_mp(a)
        r = mp.mpf(1) / 2
        M = max(8 * dps, 2 * K + 16)
        real_a = mp.im(a) == 0
        coeff = [mp.mpc(0)] * (K + 1)
        half = M // 2 if real_a and M % 2 == 0 else M
        for m in range(half + 1 if real_a else M):
            w = mp.expjpi(mp.mpf(2 * m) / M)
            u = r * w
            v = hurwitz_zeta(1 + u, a, work) - 1 / u
            weight = 1
            if real_a:
                weight = 1 if m in (0, half) else 2
            wm = mp.mpc(1)
            for n in range(K + 1):
                term = v * wm
                coeff[n] += weight * (mp.re(term) if real_a else term)
                wm /= w
        values = []
        for n in range(K + 1):
            c = coeff[n] / M / r ** n
            g = (-1) ** n * mp.factorial(n) * c
            values.append(mp.re(g) if real_a else g)
    with mp.workdps(dps):
        return StieltjesTable(a, tuple(+v for v in values), dps)


def gamma1_euler_maclaurin(N: int = 50, dps: int | None = None, terms: int = 30):
    """gamma_1 = lim (sum_{n<=N} ln n/n - ln^2 N / 2), with the limit taken by
    Euler-Maclaurin on f(x) = ln x / x, whose derivatives are
    f^{(m)}(x) = (-1)^m m! (ln x - H_m)/x^{m+1}."""
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 20):
        x = mp.mpf(N)
        lx = mp.log(x)
        total = mp.fsum(mp.log(n) / n for n in range(2, N + 1))
        total -= lx ** 2 / 2 + lx / x / 2

        def deriv(m):
            H = mp.fsum(mp.mpf(1) / i for i in range(1, m + 1))
            return (-1) ** m * mp.factorial(m) * (lx - H) / x ** (m + 1)

        for j in range(1, terms + 1):
            b = bernoulli_number(2 * j)
            total -= mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j) * deriv(2 * j - 1)
    with mp.workdps(dps):
        return +total


# ---------------------------------------------------------------------------
# eta_p constants

def series_log(c: Sequence) -> list:
    """Formal log of a power series with c[0] = 1."""
    n = len(c)
    out = [mp.mpf(0)] * n
    # L' = c'/c  ->  m l_m = m c_m - sum_{i=1}^{m-1} i l_i c_{m-i}
    for m in range(1, n):
        acc = m * c[m]
        for i in range(1, m):
            acc -= i * out[i] * c[m - i]
        out[m] = acc / m
    return out


def series_inverse(c: Sequence) -> list:
    """Formal reciprocal of a power series with c[0] != 0."""
    n = len(c)
    out = [1 / c[0]]
    for m in range(1, n):
        acc = mp.fsum(c[i] * out[m - i] for i in range(1, m + 1))
        out.append(-acc / c[0])
    return out


@dataclass(frozen=True)
class EtaTable:
    """eta_0..eta_P with zeta'/zeta(s) = -1/(s-1) - sum_p eta_p (s-1)^p."""

    values: tuple
    dps: int
    method: str = "log-derivative of (s-1) zeta(s) from Stieltjes constants"

    def __getitem__(self, p):
        return self.values[p]

    def __len__(self):
        return len(self.values)

    def log_derivative(self, s):
        """Truncated series for zeta'/zeta at s."""
        with mp.workdps(self.dps):
            u = to_mp(s) - 1
            return -1 / u - mp.fsum(e * u ** p for p, e in enumerate(self.values))


def eta_constants(P: int = 6, dps: int | None = None, stieltjes_table: StieltjesTable | None = None, a=1) -> EtaTable:
    """eta_p from the formal logarithm of (s-1) zeta(s, a) built out of the
    Stieltjes constants; eta_p = -(p+1) [u^{p+1}] log((s-1) zeta(s, a))."""
    if P < 0:
        raise ValueError("P must be non-negative")
    dps = dps or mp.mp.dps
    table = stieltjes_table or stieltjes(a, P + 1, dps + 10)
    with mp.workdps(dps + 10):
        lc = table.laurent_coefficients()
        # (s-1) zeta(s) = 1 + sum_n lc[n] u^{n+1}
        c = [mp.mpf(1)] + list(lc[: P + 1])
        logc = series_log(c)
        values = tuple(-(p + 1) * logc[p + 1] for p in range(P + 1))
    with mp.workdps(dps):
        return EtaTable(tuple(+v for v in values), dps)


def reciprocal_zeta_taylor(K: int, dps: int | None = None, a=1) -> list:
    """[u^n] coefficients (n = 0..K) of 1/zeta(s, a) about s = 1."""
    dps = dps or mp.mp.dps
    table = stieltjes(a, K, dps + 10)
    with mp.workdps(dps + 10):
        lc = table.laurent_coefficients()
        c = [mp.mpf(1)] + list(lc[:K])
        inv = series_inverse(c)
        out = [mp.mpf(0)] + inv[:K]
    with mp.workdps(dps):
        return [+v for v in out]
