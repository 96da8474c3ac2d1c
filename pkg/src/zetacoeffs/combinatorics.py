"""Exact combinatorial objects: binomials, Bernoulli and Stirling numbers,
complete Bell polynomials, the Pochhammer polynomials
``P_k(s) = (1 - s)_k / k!`` and a segmented Moebius sieve.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import mpmath as mp
import numpy as np

from .numerics import to_mp


def binomial(n: int, j: int) -> int:
    """Exact C(n, j) for 0 <= j <= n."""
    if not (0 <= j <= n):
        raise ValueError(f"binomial({n}, {j}) outside 0 <= j <= n")
    return math.comb(n, j)


def gen_binomial(x, j: int):
    """C(x, j) for arbitrary (rational or real) x and integer j >= 0."""
    if j < 0:
        return 0
    out = Fraction(1) if isinstance(x, (int, Fraction)) else mp.mpf(1)
    for i in range(j):
        out = out * (x - i) / (i + 1)
    return out


@lru_cache(maxsize=None)
def _tangent_numbers(m: int) -> tuple:
    """T_1..T_m where tan x = sum T_k x^(2k-1)/(2k-1)!  (Brent-Harvey)."""
    t = [0] * (m + 1)
    if m == 0:
        return ()
    t[1] = 1
    for k in range(2, m + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, m + 1):
        for j in range(k, m + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return tuple(t[1:])


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """Exact B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    k = n // 2
    cap = 1 << max(4, (k - 1).bit_length())
    tk = _tangent_numbers(cap)[k - 1]
    sign = 1 if k % 2 else -1
    return Fraction(sign * n * tk, 4 ** k * (4 ** k - 1))


def bernoulli_poly_coeffs(n: int) -> list[Fraction]:
    """Monomial coefficients of B_n(x), lowest degree first."""
    return [binomial(n, m) * bernoulli_number(n - m) for m in range(n + 1)]


def bernoulli_poly(n: int, x):
    """B_n(x) = sum_m C(n, m) B_{n-m} x^m; exact for rational x."""
    if n < 0:
        raise ValueError("n must be non-negative")
    coeffs = bernoulli_poly_coeffs(n)
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        acc = Fraction(0)
    else:
        x = to_mp(x)
        acc = mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + (c if isinstance(acc, Fraction) else mp.mpf(c.numerator) / c.denominator)
    return acc


@lru_cache(maxsize=None)
def _stirling_row(k: int) -> tuple:
    if k == 0:
        return (1,)
    prev = _stirling_row(k - 1)
    row = [0] * (k + 1)
    for l in range(1, k + 1):
        left = prev[l - 1]
        right = prev[l] if l < k else 0
        row[l] = left - (k - 1) * right
    return tuple(row)


def stirling_first(k: int, l: int) -> int:
    """Signed Stirling number of the first kind s(k, l):
    x(x-1)...(x-k+1) = sum_l s(k, l) x^l."""
    if not (0 <= l <= k):
        raise ValueError(f"stirling_first({k}, {l}) outside 0 <= l <= k")
    if k > 600:
        _stirling_row(k // 2)
    return _stirling_row(k)[l]


def complete_bell(inputs: Sequence):
    """Complete exponential Bell polynomial Y_j(x_1, ..., x_j), j = len(inputs).

    Uses Y_{m+1} = sum_i C(m, i) Y_{m-i} x_{i+1} with Y_0 = 1.
    """
    return complete_bell_all(inputs)[-1]


def complete_bell_all(inputs: Sequence) -> list:
    """[Y_0, Y_1, ..., Y_j] for the given arguments."""
    j = len(inputs)
    ys = [1 if all(isinstance(v, (int, Fraction)) for v in inputs) else mp.mpf(1)]
    for m in range(j):
        ys.append(sum(math.comb(m, i) * ys[m - i] * inputs[i] for i in range(m + 1)))
    return ys


@lru_cache(maxsize=None)
def pochhammer_poly(k: int) -> tuple:
    """Exact monomial coefficients (lowest degree first) of P_k(s) = (1-s)_k/k!."""
    if k < 0:
        raise ValueError("k must be non-negative")
    coeffs = [Fraction(1)]
    for j in range(k):
        # multiply by (j + 1 - s)/(j + 1)
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c
            new[i + 1] -= c / (j + 1)
        coeffs = new
    return tuple(coeffs)


def pochhammer_poly_stirling(k: int) -> list[Fraction]:
    """Same coefficients built from Stirling numbers:
    (1-s)_k = (-1)^k (s-1)(s-2)...(s-k) = (-1)^k sum_l s(k,l) (s-1)^l."""
    out = [Fraction(0)] * (k + 1)
    fk = math.factorial(k)
    for l in range(k + 1):
        c = Fraction((-1) ** k * stirling_first(k, l), fk)
        # expand (s - 1)^l
        for m in range(l + 1):
            out[m] += c * math.comb(l, m) * (-1) ** (l - m)
    return out


def pochhammer_eval(k: int, s):
    """P_k(s) by the running product prod_{j<k} (j + 1 - s)/(j + 1).

    Integer and Fraction arguments give exact Fractions; everything else is
    evaluated in the current mpmath context.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if isinstance(s, (int, Fraction)):
        out = Fraction(1)
        for j in range(k):
            out *= Fraction(j + 1 - s, j + 1) if isinstance(s, int) else (j + 1 - s) / (j + 1)
            if out == 0:
                break
        return out
    s = to_mp(s)
    out = mp.mpf(1)
    for j in range(k):
        out *= (j + 1 - s) / (j + 1)
    return out


def pochhammer_sequence(K: int, s) -> list:
    """[P_0(s), ..., P_K(s)] in one pass."""
    s = to_mp(s)
    out = [mp.mpf(1)]
    p = mp.mpf(1)
    for j in range(K):
        p *= (j + 1 - s) / (j + 1)
        out.append(p)
    return out


def g_derivatives(k: int, s, count: int) -> list:
    """g(s), g'(s), ..., g^{(count-1)}(s) for g = d/ds log P_k(s/2):
    g^{(l)}(s) = (-1)^l / 2^(l+1) [psi^{(l)}(1 - s/2) - psi^{(l)}(k + 1 - s/2)].
    """
    s = to_mp(s)
    z1 = 1 - s / 2
    z2 = k + 1 - s / 2
    for z in (z1, z2):
        if mp.im(z) == 0 and mp.re(z) <= 0 and mp.re(z) == int(mp.re(z)):
            raise ValueError(f"polygamma pole at argument {z}")
    return [(-1) ** l / mp.mpf(2) ** (l + 1) * (mp.polygamma(l, z1) - mp.polygamma(l, z2))
            for l in range(count)]


def g_derivatives_at_one(k: int, count: int) -> list[Fraction]:
    """Exact g^{(l)}(1) = -(l!/2^(l+1)) sum_{i<k} 1/(i+1/2)^(l+1)."""
    out = []
    for l in range(count):
        s = sum(Fraction(2, 2 * i + 1) ** (l + 1) for i in range(k))
        out.append(-Fraction(math.factorial(l), 2 ** (l + 1)) * s)
    return out


def pochhammer_derivatives(k: int, s, j: int):
    """d^j/ds^j P_k(s/2) = P_k(s/2) Y_j[g(s), ..., g^{(j-1)}(s)]."""
    if j < 0:
        raise ValueError("j must be non-negative")
    p = pochhammer_eval(k, to_mp(s) / 2)
    if j == 0:
        return p
    return p * complete_bell(g_derivatives(k, s, j))


def taylor_shift(coeffs: Sequence[Fraction], s0) -> list:
    """Coefficients of p(s0 + t) in powers of t, exact for rational s0."""
    n = len(coeffs)
    out = []
    for j in range(n):
        out.append(sum(coeffs[m] * math.comb(m, j) * s0 ** (m - j) for m in range(j, n)))
    return out


# ---------------------------------------------------------------------------
# Faa di Bruno / Lagrange identities on polynomials in z

def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_pow(p, n):
    out = [Fraction(1)]
    for _ in range(n):
        out = _poly_mul(out, p)
    return out


def _poly_deriv(p, n=1):
    for _ in range(n):
        p = [i * p[i] for i in range(1, len(p))] or [Fraction(0)]
    return p


def _poly_eval(p, z):
    acc = Fraction(0) if isinstance(z, Fraction) else mp.mpf(0)
    for c in reversed(p):
        acc = acc * z + (c if isinstance(z, Fraction) else mp.mpf(c.numerator) / c.denominator)
    return acc


def power_derivatives(x_poly: Sequence, a, z0, n: int) -> list:
    """u_m = x^a D^m x^{-a} at z0 for m = 0..n, from x y' = -a x' y.

    With y = x^{-a}, Leibniz on x y^{(m+1)} = -a sum_i C(m,i) x^{(i+1)} y^{(m-i)}
    minus the terms carried by x's own derivatives gives a recurrence in
    v_m = y^{(m)}/y that never evaluates a fractional power.
    """
    p = [Fraction(c) for c in x_poly]
    exact = isinstance(z0, (int, Fraction)) and isinstance(a, (int, Fraction))
    if exact:
        z0 = Fraction(z0)
        a = Fraction(a)
    else:
        z0, a = to_mp(z0), to_mp(a)
    xd = [_poly_eval(_poly_deriv(p, i), z0) for i in range(n + 2)]
    if xd[0] == 0:
        raise ValueError("x(z0) must be non-zero")
    v = [Fraction(1) if exact else mp.mpf(1)]
    for m in range(n):
        # d^m of (x y' + a x' y) = 0
        acc = 0
        for i in range(1, m + 1):
            acc += math.comb(m, i) * xd[i] * v[m - i + 1]
        for i in range(m + 1):
            acc += a * math.comb(m, i) * xd[i + 1] * v[m - i]
        v.append(-acc / xd[0])
    return v


def faa_di_bruno_rhs(x_poly: Sequence, a, z0, n: int):
    """sum_j C(-a, j) C(n+a, n-j) x^{-j} D^n x^j at z0."""
    p = [Fraction(c) for c in x_poly]
    exact = isinstance(z0, (int, Fraction)) and isinstance(a, (int, Fraction))
    z0 = Fraction(z0) if exact else to_mp(z0)
    a = Fraction(a) if exact else to_mp(a)
    x0 = _poly_eval(p, z0)
    total = 0
    for j in range(n + 1):
        dn = _poly_eval(_poly_deriv(_poly_pow(p, j), n), z0)
        total += gen_binomial(-a, j) * gen_binomial(n + a, n - j) * dn / x0 ** j
    return total


def lagrange_product_identity(n: int, j: int, a):
    """Both sides of C(-a, j) C(n+a, n-j) = prod_{k=0..n, k!=j} (k + a)/(k - j)."""
    a = Fraction(a) if isinstance(a, (int, Fraction)) else to_mp(a)
    lhs = gen_binomial(-a, j) * gen_binomial(n + a, n - j)
    rhs = Fraction(1) if isinstance(a, Fraction) else mp.mpf(1)
    for k in range(n + 1):
        if k != j:
            rhs = rhs * (k + a) / (k - j)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Moebius function

MOBIUS_CAP = 10 ** 8


def _small_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def mobius_blocks(N: int, block: int = 1 << 22, start: int = 1) -> Iterator[tuple[int, np.ndarray]]:
    """Stream ``(lo, mu[lo:hi])`` blocks covering ``start <= n <= N``.

    Each block flips sign once per small prime divisor, zeroes multiples of
    p^2 and finally flips where an unfactored cofactor (a prime above sqrt N)
    remains.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if N > MOBIUS_CAP:
        raise ValueError(f"N={N} exceeds the sieve cap {MOBIUS_CAP}")
    primes = _small_primes(math.isqrt(N))
    lo = max(start, 1)
    while lo <= N:
        hi = min(N + 1, lo + block)
        mu = np.ones(hi - lo, dtype=np.int8)
        rem = np.arange(lo, hi, dtype=np.int64)
        for p in primes:
            p = int(p)
            if p * p >= hi and p >= hi:
                break
            first = (-lo) % p
            mu[first::p] *= -1
            rem[first::p] //= p
            pp = p * p
            if pp < hi:
                mu[(-lo) % pp::pp] = 0
        mu[rem > 1] *= -1
        yield lo, mu
        lo = hi


def mobius_sieve(N: int) -> np.ndarray:
    """Array ``mu`` of length N+1 with ``mu[n] = μ(n)`` (``mu[0] = 0``)."""
    out = np.zeros(N + 1, dtype=np.int8)
    for lo, mu in mobius_blocks(N):
        out[lo:lo + len(mu)] = mu
    return out
