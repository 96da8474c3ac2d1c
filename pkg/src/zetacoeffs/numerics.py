"""Arbitrary-precision substrate: precision policy, summation, acceleration,
quadrature and limit extrapolation.

Values are plain :mod:`mpmath` numbers.  Every routine that needs a working
precision takes it as an explicit ``dps`` argument and evaluates inside
``mpmath.workdps``; nothing here changes the global context permanently.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath as mp

BigReal = mp.mpf
BigComplex = mp.mpc

LOG10_2 = 0.30103


def default_digits() -> int:
    """Default target digits, overridable with ``BD_DEFAULT_DIGITS``."""
    env = os.environ.get("BD_DEFAULT_DIGITS")
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError("BD_DEFAULT_DIGITS must be a positive integer")
        return value
    return 30


class NotConvergedError(ArithmeticError):
    """A summation, quadrature or extrapolation failed to settle."""


@dataclass(frozen=True)
class PrecisionPolicy:
    """Working precision for k-indexed alternating binomial sums.

    The largest binomial term of a length-k sum is at most ``2**k`` times the
    largest weight, so ``ceil(log10(2) * k)`` extra digits cover the
    cancellation.
    """

    target_digits: int = 30
    guard_digits: int = 10

    def __post_init__(self):
        if self.target_digits <= 0 or self.guard_digits < 0:
            raise ValueError("target_digits must be positive, guard_digits non-negative")

    @staticmethod
    def cancellation_slack(k: int) -> int:
        return math.ceil(LOG10_2 * k)

    def working_digits(self, k: int = 0) -> int:
        return self.target_digits + self.guard_digits + self.cancellation_slack(k)

    @classmethod
    def verification(cls) -> "PrecisionPolicy":
        return cls(target_digits=default_digits())

    @classmethod
    def bulk(cls) -> "PrecisionPolicy":
        return cls(target_digits=12)


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of a summation or quadrature.

    ``raw`` keeps the plain partial sum whenever ``value`` came out of a
    nonlinear accelerator (``accelerated`` is then True and the estimate is
    heuristic).
    """

    value: object
    terms_used: int
    tail_estimate: object
    converged: bool
    raw: object = None
    accelerated: bool = False
    method: str = "direct"

    def __post_init__(self):
        if self.raw is None:
            object.__setattr__(self, "raw", self.value)


def to_mp(x):
    """Convert ints, floats, strings, Fractions and mpmath values to mpmath."""
    if isinstance(x, (mp.mpf, mp.mpc)):
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, (int, float)):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpmathify(x)


def is_real(x) -> bool:
    return not isinstance(x, mp.mpc) or x.imag == 0


def real_if_possible(x):
    if isinstance(x, mp.mpc) and x.imag == 0:
        return x.real
    return x


def nstr(x, digits: int = 15) -> str:
    return mp.nstr(x, digits, strip_zeros=False) if x is not None else "nan"


def sum_until(
    term: Callable[[int], object],
    tol,
    consecutive: int = 3,
    max_terms: int = 100_000,
    start: int = 0,
    dps: int | None = None,
) -> SeriesResult:
    """Add ``term(start), term(start+1), ...`` until ``consecutive`` successive
    terms are all smaller than ``tol`` in magnitude.

    The tail estimate is ``|last term| * consecutive``.  Running out of
    ``max_terms`` returns a result with ``converged=False``.
    """
    if consecutive < 1:
        raise ValueError("consecutive must be >= 1")
    dps = dps or mp.mp.dps
    with mp.workdps(dps):
        tol = to_mp(tol)
        if tol <= 0:
            raise ValueError("tol must be positive")
        total = mp.mpf(0)
        small = 0
        last = mp.mpf(0)
        n = start
        used = 0
        while used < max_terms:
            t = term(n)
            total += t
            used += 1
            n += 1
            last = abs(t)
            small = small + 1 if last < tol else 0
            if small >= consecutive:
                tail = last * consecutive
                return SeriesResult(+total, used, +tail, bool(tail <= tol))
        return SeriesResult(+total, used, last * consecutive, False)


def _partial_sums(terms):
    sums = []
    acc = 0
    for t in terms:
        acc = acc + t
        sums.append(acc)
    return sums


def levin(sums: Sequence, terms: Sequence, order: int, variant: str = "t"):
    """Levin transform of order ``order`` over the last ``order + 1`` entries.

    ``sums[n]`` is the n-th partial sum and ``terms[n]`` its last term.
    Variant ``t`` uses the last term as remainder estimate (alternating
    series); ``u`` multiplies it by ``n + 1`` (logarithmic convergence).
    """
    n0 = len(sums) - order - 1
    if n0 < 0:
        raise ValueError("need at least order + 1 partial sums")
    # the alternating binomial weights cancel about `order` digits
    with mp.workdps(mp.mp.dps + 2 * order):
        num = mp.mpf(0)
        den = mp.mpf(0)
        for j in range(order + 1):
            n = n0 + j
            omega = terms[n] * (n + 1) if variant == "u" else terms[n]
            if omega == 0:
                continue
            c = (-1) ** j * mp.binomial(order, j) * (mp.mpf(n + 1) / (n0 + order + 1)) ** (order - 1)
            num += c * sums[n] / omega
            den += c / omega
        value = sums[-1] if den == 0 else num / den
    return +value


def accelerate_alternating(seq: Sequence, order: int = 10, *, sums: bool = False, dps: int | None = None):
    """Levin-t estimate of the limit of an alternating series.

    ``seq`` holds the terms, or the partial sums when ``sums=True``.  The
    result is a nonlinear extrapolation without a proven error bound;
    callers report it next to the raw partial sum.
    """
    if len(seq) < order + 2:
        raise ValueError(f"need at least order+2={order + 2} values, got {len(seq)}")
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        seq = [to_mp(v) for v in seq]
        if sums:
            partial = seq
            terms = [seq[0]] + [seq[i] - seq[i - 1] for i in range(1, len(seq))]
        else:
            terms = seq
            partial = _partial_sums(seq)
        tail = terms[-(order + 1):]
        if all(t == 0 for t in tail):
            return +partial[-1]
        value = levin(partial, terms, order, "t")
    return +value


def accelerate_with_estimate(partial: Sequence, terms: Sequence, order: int = 12, variant: str = "t"):
    """Levin estimate plus a crude error from the order-reduced transform."""
    a = levin(partial, terms, order, variant)
    b = levin(partial[:-1], terms[:-1], order - 1, variant)
    return a, abs(a - b)


def wynn_epsilon(seq: Sequence):
    """Wynn epsilon table on ``seq``; returns ``(estimate, error_estimate)``.

    The estimate is the last entry of the highest even column, the error the
    distance to the previous even-column estimate.
    """
    if len(seq) < 3:
        raise ValueError("epsilon algorithm needs at least three values")
    prev = [mp.mpf(0)] * (len(seq) + 1)
    cur = [to_mp(v) for v in seq]
    estimates = [cur[-1]]
    col = 0
    while len(cur) > 1:
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if d == 0:
                nxt.append(mp.inf)
            else:
                nxt.append(prev[i + 1] + 1 / d)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0 and cur and mp.isfinite(cur[-1]):
            estimates.append(cur[-1])
    if len(estimates) == 1:
        return estimates[0], abs(seq[-1] - seq[-2])
    return estimates[-1], abs(estimates[-1] - estimates[-2])


def epsilon_stable(seq: Sequence):
    """Most self-consistent even-column epsilon estimate.

    Scans the even columns and returns the estimate whose distance to its
    predecessor is smallest; useful when noise eventually spoils high
    columns.
    """
    prev = [mp.mpf(0)] * (len(seq) + 1)
    cur = [to_mp(v) for v in seq]
    cols = [list(cur)]
    k = 0
    while len(cur) > 1:
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            nxt.append(prev[i + 1] + 1 / d if d != 0 else mp.inf)
        prev, cur = cur, nxt
        k += 1
        if k % 2 == 0:
            cols.append(list(cur))
    best = (cols[0][-1], abs(cols[0][-1] - cols[0][-2]))
    for col in cols[1:]:
        if len(col) < 2 or not all(mp.isfinite(v) for v in col[-2:]):
            continue
        err = abs(col[-1] - col[-2])
        if err < best[1]:
            best = (col[-1], err)
    return best


def extrapolate_limit(sequence: Callable[[int], object], n0: int = 16, levels: int = 10, dps: int | None = None):
    """Richardson extrapolation of ``lim sequence(n)`` for an expansion in 1/n.

    Samples ``n = n0 * 2**m`` for ``m < levels``.  Returns ``(limit, error)``.
    Raises :class:`NotConvergedError` when the diagonal does not settle.
    """
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        rows = []
        diag = []
        for m in range(levels):
            row = [to_mp(sequence(n0 * 2 ** m))]
            for j in range(1, m + 1):
                f = mp.mpf(2) ** j
                row.append((f * row[j - 1] - rows[m - 1][j - 1]) / (f - 1))
            rows.append(row)
            diag.append(row[-1])
        diffs = [abs(diag[i] - diag[i - 1]) for i in range(1, len(diag))]
        best = min(range(len(diffs)), key=lambda i: diffs[i])
        value, err = diag[best + 1], diffs[best]
        first = abs(diag[1] - diag[0])
        if first > 0 and err > first / 10 and err > mp.mpf(10) ** (-dps // 2):
            raise NotConvergedError("sequence does not settle under Richardson extrapolation")
    return +value, +err


def _de_nodes(h, t):
    e = mp.exp(t)
    sh = (e - 1 / e) / 2
    ch = (e + 1 / e) / 2
    x = mp.exp(mp.pi / 2 * sh)
    w = mp.pi / 2 * ch * x
    return x, w


def integrate_semiinfinite(
    f: Callable[[object], object],
    tol=None,
    dps: int | None = None,
    max_level: int = 12,
) -> SeriesResult:
    """Double-exponential (exp-sinh) quadrature of ``f`` over ``(0, inf)``.

    Substitutes ``x = exp(pi/2 sinh t)`` and applies the trapezoidal rule with
    successive step halving.  The tail estimate is the change between the
    last two levels.  A weighted integrand that is still large at the far end
    of the transformed axis raises :class:`NotConvergedError`.
    """
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        tol = to_mp(tol) if tol is not None else mp.mpf(10) ** (-dps)
        small = tol * mp.mpf(10) ** (-5)
        t_max = mp.mpf(6)

        def branch(h, offset, step):
            total = mp.mpf(0)
            quiet = 0
            j = 0
            while True:
                t = offset + j * step
                if abs(t) > t_max:
                    if quiet == 0 and abs(t) > 0:
                        raise NotConvergedError("integrand does not decay on (0, inf)")
                    break
                x, w = _de_nodes(h, t)
                if x == 0 or not mp.isfinite(x):
                    break
                v = f(x) * w
                total += v
                quiet = quiet + 1 if abs(v) < small else 0
                if quiet >= 4:
                    break
                j += 1
            return total

        h = mp.mpf(1)
        s = branch(h, 0, h) + branch(h, -h, -h)
        estimate = h * s
        err = mp.inf
        level = 0
        while level < max_level:
            level += 1
            h /= 2
            s += branch(h, h, 2 * h) + branch(h, -h, -2 * h)
            new = h * s
            err = abs(new - estimate)
            estimate = new
            if err < tol and level >= 3:
                break
        nodes = int(2 * 2 ** level * t_max)
    return SeriesResult(+estimate, nodes, +err, bool(err < tol), method="exp-sinh")


_GL_CACHE: dict = {}


def gauss_legendre(n: int, dps: int):
    """Gauss-Legendre nodes and weights on [-1, 1] at ``dps`` digits."""
    key = (n, dps)
    if key not in _GL_CACHE:
        with mp.workdps(dps + 10):
            nodes = []
            for i in range(1, n + 1):
                x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (n + mp.mpf(1) / 2))
                for _ in range(100):
                    p0, p1 = mp.mpf(1), x
                    for k in range(2, n + 1):
                        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                    dp = n * (x * p1 - p0) / (x * x - 1)
                    dx = p1 / dp
                    x -= dx
                    if abs(dx) < mp.mpf(10) ** (-dps - 5):
                        break
                p0, p1 = mp.mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                nodes.append((x, 2 / ((1 - x * x) * dp * dp)))
        _GL_CACHE[key] = nodes
    return _GL_CACHE[key]


def integrate_interval(f, a, b, n: int = 20, dps: int | None = None):
    """Fixed n-point Gauss-Legendre rule on [a, b]."""
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 5):
        a, b = to_mp(a), to_mp(b)
        half = (b - a) / 2
        mid = (b + a) / 2
        total = mp.mpf(0)
        for x, w in gauss_legendre(n, dps):
            total += w * f(mid + half * x)
        return half * total


def integrate_oscillatory(f, period, tol=None, dps: int | None = None, max_cycles: int = 400, order: int = 14):
    """Integral of ``f`` over ``(0, inf)`` for an integrand with sign changes
    every half ``period``.

    Integrates half-period pieces with Gauss-Legendre and sums the resulting
    alternating series with :func:`accelerate_alternating`.
    """
    dps = dps or mp.mp.dps
    with mp.workdps(dps + 10):
        half = to_mp(period) / 2
        tol = to_mp(tol) if tol is not None else mp.mpf(10) ** (-dps)
        pieces = []
        prev = None
        for m in range(max_cycles):
            pieces.append(integrate_interval(f, m * half, (m + 1) * half, n=30, dps=dps))
            if len(pieces) >= order + 2 and len(pieces) % 4 == 0:
                value = accelerate_alternating(pieces, order, dps=dps)
                if prev is not None and abs(value - prev) < tol:
                    return SeriesResult(value, len(pieces), abs(value - prev), True,
                                        raw=mp.fsum(pieces), accelerated=True, method="levin-t")
                prev = value
        value = accelerate_alternating(pieces, order, dps=dps)
        return SeriesResult(value, len(pieces), abs(value - prev), False,
                            raw=mp.fsum(pieces), accelerated=True, method="levin-t")
