"""Named verification suites.

A suite is a list of :class:`IdentityCase` objects.  Each case is a
module-level function plus keyword arguments, so cases can be shipped to
worker processes; the aggregated report is sorted by row id, which keeps it
independent of the number of workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np

from . import combinatorics as cb
from . import kernel as kn
from .coefficients import (
    CoefficientSpec,
    PrecisionPolicy,
    ck_binomial_range,
    fourier_term,
    mobius_values,
)
from .numerics import to_mp
from .report import IdentityResult, VerificationReport, make_result
from . import representations as rp

SUITES = ("core", "summatory", "stieltjes", "maslanka", "dirichlet", "appendix")

# constants quoted with the summatory identities
SUMMATORY_CONSTANTS = {
    "alternating-sum": ("0.7825279853", 1e-10),
    "log-sum:t=1/3": ("-0.369410468", 1e-9),
    "log-sum:t=-1": ("0.65279901499", 1e-11),
    "log-sum:t=1/2": ("-0.624463294", 1e-9),
    "log-sum:combined": ("0.0283357", 1e-7),
}


@dataclass(frozen=True)
class IdentityCase:
    id: str
    reference: str
    fn: object
    kwargs: dict = field(default_factory=dict)
    tolerance: float = 1e-10

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def run(self) -> list[IdentityResult]:
        t0 = time.perf_counter()
        try:
            rows = self.fn(self, **self.kwargs)
        except Exception as exc:  # a crash is a failed row, not a crashed suite
            rows = [IdentityResult(self.id, self.reference, dict(self.kwargs), None, None, None,
                                   self.tolerance, "fail", 0.0, f"{type(exc).__name__}: {exc}")]
        if isinstance(rows, IdentityResult):
            rows = [rows]
        el = time.perf_counter() - t0
        for r in rows:
            if not r.seconds:
                r.seconds = el / len(rows)
        return rows


def _row(case: IdentityCase, lhs, rhs, id_suffix: str = "", **kw) -> IdentityResult:
    return make_result(case.id + id_suffix, case.reference, lhs, rhs, case.tolerance,
                       kw.pop("parameters", dict(case.kwargs)), **kw)


def _relabel(case: IdentityCase, r: IdentityResult, suffix: str = "") -> IdentityResult:
    r.id = case.id + suffix
    r.reference = case.reference
    return r


# ---------------------------------------------------------------------------
# case bodies

def _recip(case, family: str, s, a=None, b=None, prefactor=False, dps=30):
    fam = {
        "riemann": lambda: CoefficientSpec.riemann(),
        "hurwitz": lambda: CoefficientSpec.hurwitz(a),
        "general": lambda: CoefficientSpec.general(b, a),
        "odd": lambda: CoefficientSpec.odd(),
    }[family]()
    spec = rp.ReciprocalSeriesSpec(fam, prefactor)
    res = rp.reciprocal_zeta_series(spec, mp.mpmathify(s), tol=case.tolerance / 100, dps=dps)
    return _row(case, res.value, spec.target(mp.mpmathify(s), dps), note=res.method)


def _cross_form(case, k_max=200, tol=1e-8):
    spec = CoefficientSpec.riemann()
    exact = ck_binomial_range(spec, k_max, PrecisionPolicy(20))
    vals, bound = mobius_values(spec, range(k_max + 1), tol=tol)
    worst = max(abs(exact[k] - vals[k]) for k in range(k_max + 1))
    return _row(case, worst, 0, note=f"max over k <= {k_max}; tail bound {mp.nstr(bound, 3)}")


def _phi(case, s, b, a):
    chk = rp.phi_quadrature(s, b, a, tol=case.tolerance)
    return [_relabel(case, r, ":" + r.id.split(":")[0]) for r in chk.report.rows]


def _f_small(case, x=1e-6):
    with mp.workdps(30):
        ratio = rp.F_function(mp.mpf(x), 2, 1) / mp.mpf(x)
        return _row(case, ratio, 6 / mp.pi ** 2)


def _exp_binomial(case, x, j):
    return _relabel(case, rp.exponential_binomial_check(mp.mpf(x), j, tol=case.tolerance))


def _shift_sum(case, x, b, a):
    return _relabel(case, rp.shift_sum_check(mp.mpf(x), b, a, tol=case.tolerance))


def _poch_limit(case, s):
    return _relabel(case, rp.pochhammer_limit_check(mp.mpf(s), tol=case.tolerance))


def _genfun(case, s, b, a):
    return _relabel(case, rp.genfun_identity(mp.mpmathify(s), b, a, tol=case.tolerance))


def _alternating_constant(case):
    value = rp.genfun_rhs(-1, 2, 1, 30)
    printed, _ = SUMMATORY_CONSTANTS["alternating-sum"]
    return _row(case, value, mp.mpf(printed), note="geometrically convergent side")


def _log_sum(case, t, key=None):
    t = to_mp(Fraction(t)) if isinstance(t, str) else to_mp(t)
    rows = []
    r = rp.log_summatory_identity(t, 2, 1, tol=1e-4)
    rows.append(_relabel(case, r, ":sides"))
    if key:
        printed, tol = SUMMATORY_CONSTANTS[key]
        rows.append(make_result(case.id + ":constant", case.reference, rp.log_summatory_rhs(t, 2, 1),
                                mp.mpf(printed), tol, {"t": t}, note="geometrically convergent side vs printed digits"))
    return rows


def _log_combined(case):
    v = rp.log_summatory_rhs(-1, 2, 1) + rp.log_summatory_rhs(mp.mpf(1) / 2, 2, 1)
    lhs = rp.log_summatory_lhs(-1, 2, 1)[0] + rp.log_summatory_lhs(mp.mpf(1) / 2, 2, 1)[0]
    printed, tol = SUMMATORY_CONSTANTS["log-sum:combined"]
    return [make_result(case.id + ":constant", case.reference, v, mp.mpf(printed), tol, {}),
            make_result(case.id + ":sides", case.reference, lhs, v, 1e-4, {})]


def _log_general(case, t, b, a):
    return _relabel(case, rp.log_summatory_identity(mp.mpmathify(t), b, a, tol=case.tolerance))


def _gamma0(case, a):
    a = to_mp(Fraction(a)) if isinstance(a, str) else to_mp(a)
    with mp.workdps(40):
        g = kn.stieltjes(a, 1, 40)[0]
        return _row(case, g, -mp.digamma(a))


def _gamma1(case):
    with mp.workdps(40):
        return _row(case, kn.stieltjes(1, 2, 40)[1], kn.gamma1_euler_maclaurin(60, 40),
                    note="Euler-Maclaurin oracle")


def _taylor_weights_exact(case, K, J):
    W1, W2 = rp.taylor_weight_tables(K, J)
    mismatches = sum(W1[j][k] != W2[j][k] for j in range(J + 1) for k in range(K + 1))
    return _row(case, mismatches, 0, note="count of unequal rational weights")


def _taylor(case, K):
    ext = rp.taylor_extraction(K, 3)
    with mp.workdps(30):
        g1 = kn.stieltjes(1, 2, 30)[1]
        targets = [mp.mpf(0), mp.mpf(1), -mp.euler, mp.euler ** 2 + g1]
    rows = []
    for j, tgt in enumerate(targets):
        acc, raw = ext.accelerated[j], ext.raw[j]
        # trust the accelerated value only if the raw sums point the same way
        disagree = abs(acc - raw) > case.tolerance
        rows.append(make_result(f"{case.id}:j={j}", case.reference, acc, tgt, case.tolerance,
                                {"K": K, "j": j}, exploratory=disagree,
                                note=f"raw {mp.nstr(raw, 10)}; epsilon error {mp.nstr(ext.errors[j], 3)}"))
    return rows


def _half_gamma(case, K):
    rows = []
    for w in rp.half_integer_gamma_sums(K):
        disagree = abs(w.accelerated - w.raw) > case.tolerance
        note = f"raw {mp.nstr(w.raw, 10)}"
        if w.ratio is not None:
            note += f"; ratio to target {mp.nstr(w.ratio, 8)}"
        rows.append(make_result(f"{case.id}:{w.name.split(':')[1]}", case.reference, w.accelerated, w.target,
                                case.tolerance, {"K": K}, exploratory=disagree, note=note))
    return rows


def _derivative_identity(case, Q, K):
    rep = rp.derivative_identity_check(Q, K, tol=case.tolerance)
    return [_relabel(case, r, ":" + r.id.split(":")[1]) for r in rep.rows]


def _eta0(case):
    with mp.workdps(30):
        return _row(case, kn.eta_constants(2, 30)[0], -mp.euler)


def _maslanka_zeta(case, s, a=1):
    res = rp.maslanka_series(CoefficientSpec.maslanka_hurwitz(a), mp.mpmathify(s), tol=case.tolerance / 100)
    return _row(case, res.value, kn.hurwitz_zeta(mp.mpmathify(s), a, 30), note=res.method)


def _maslanka_lerch(case, z, s, a=1):
    z = mp.mpmathify(z)
    res = rp.maslanka_series(CoefficientSpec.maslanka_lerch(z, a), mp.mpmathify(s), tol=case.tolerance / 100)
    return _row(case, res.value, kn.lerch_phi(z, mp.mpmathify(s), a, 30), note=res.method)


def _probe(case, kind, q, s):
    series = rp.DirichletSeries.zeta() if kind == "zeta" else rp.DirichletSeries.zeta_squared()
    rep = rp.conjecture_probe(series, q, [s], tol=case.tolerance)
    r = rep.rows[0]
    if kind == "zeta":
        # the p-scaled representation of zeta itself is a proved instance
        r = make_result(case.id, case.reference, r.lhs, r.rhs, case.tolerance, r.parameters)
    return _relabel(case, r)


def _catalan(case):
    chi = kn.characters_mod(4)[1]
    spec = rp.ReciprocalSeriesSpec(CoefficientSpec.dirichlet(chi, 2))
    res = rp.reciprocal_zeta_series(spec, 2)
    return _row(case, res.value, 1 / mp.catalan, note=res.method)


def _l_series(case, q, index, s):
    chi = kn.characters_mod(q)[index]
    spec = rp.ReciprocalSeriesSpec(CoefficientSpec.dirichlet(chi, 2))
    res = rp.reciprocal_zeta_series(spec, mp.mpmathify(s), tol=case.tolerance / 100)
    return _row(case, res.value, spec.target(mp.mpmathify(s)), note=res.method)


def _q1_reduction(case, K=40):
    chi = kn.characters_mod(1)[0]
    pol = PrecisionPolicy(30)
    a = ck_binomial_range(CoefficientSpec.dirichlet(chi, 2), K, pol)
    b = ck_binomial_range(CoefficientSpec.riemann(), K, pol)
    return _row(case, sum(x != y for x, y in zip(a, b)), 0, note="count of coefficients differing in any bit")


def _orthogonality(case, q_max=24):
    worst = 0.0
    for q in range(1, q_max + 1):
        chars = kn.characters_mod(q)
        phi = len(chars)
        for i, x in enumerate(chars):
            for j, y in enumerate(chars):
                s = sum(complex(x(n)) * complex(y(n)).conjugate() for n in range(q))
                worst = max(worst, abs(s - (phi if i == j else 0)))
    return _row(case, worst, 0, note=f"max deviation over q <= {q_max}")


def _appendix_power(case, n, a):
    a = Fraction(a)
    poly = [1, 1, 1]
    z0 = Fraction(3, 10)
    lhs = cb.power_derivatives(poly, a, z0, n)[n]
    rhs = cb.faa_di_bruno_rhs(poly, a, z0, n)
    return _row(case, 0 if lhs == rhs else abs(mp.mpf(lhs - rhs)), 0, note="exact rational comparison")


def _appendix_product(case, n, a):
    a = Fraction(a)
    bad = 0
    for j in range(n + 1):
        lhs, rhs = cb.lagrange_product_identity(n, j, a)
        bad += lhs != rhs
    return _row(case, bad, 0, note="count of unequal rational pairs")


def _fourier(case, k, n):
    value, exact, res = fourier_term(k, n)
    return _row(case, value, exact, note=res.method)


def _stirling_cross(case, K=50):
    bad = 0
    for k in range(K + 1):
        if list(cb.pochhammer_poly(k)) != [Fraction(c) for c in cb.pochhammer_poly_stirling(k)]:
            bad += 1
    return _row(case, bad, 0, note="count of k with differing coefficient lists")


def _gamma_recurrence(case, n, z):
    """ln Gamma_n(z+1) = ln Gamma_n(z) - ln Gamma_{n-1}(z), with Gamma_0(z) = 1/z."""
    with mp.workdps(40):
        z = mp.mpf(z)
        prev = -mp.log(z) if n == 1 else kn.log_multiple_gamma(n - 1, z, 40)
        return _row(case, kn.log_multiple_gamma(n, z + 1, 40), kn.log_multiple_gamma(n, z, 40) - prev)


def _gamma_at_one(case, n, literal=False):
    with mp.workdps(30):
        return _row(case, kn.log_multiple_gamma(n, 1, 30, literal=literal), 0)


def _hurwitz_shift(case, s, a):
    with mp.workdps(40):
        s, a = mp.mpf(s), mp.mpf(a)
        return _row(case, kn.hurwitz_zeta(s, a, 40) - kn.hurwitz_zeta(s, a + 1, 40), a ** (-s))


def _polygamma_bridge(case, m, a):
    with mp.workdps(40):
        a = mp.mpf(a)
        lhs = kn.polygamma(m, a, 40)
        rhs = (-1) ** (m + 1) * mp.factorial(m) * kn.hurwitz_zeta(m + 1, a, 40)
        return _row(case, lhs, rhs)


# ---------------------------------------------------------------------------
# suite tables

def _cases(name: str, K: int) -> list[IdentityCase]:
    C = IdentityCase
    if name == "core":
        return [
            C("recip:riemann:s=3", "Pochhammer series for 1/zeta(s)", _recip, {"family": "riemann", "s": 3}, 1e-6),
            C("recip:riemann:s=4", "Pochhammer series for 1/zeta(s)", _recip, {"family": "riemann", "s": 4}, 1e-6),
            C("recip:riemann:s=6", "Pochhammer series for 1/zeta(s)", _recip, {"family": "riemann", "s": 6}, 1e-6),
            C("recip:riemann:s=2+3i", "Pochhammer series for 1/zeta(s)", _recip, {"family": "riemann", "s": "2+3j"}, 1e-6),
            C("recip:half-shift:s=3", "a = 1/2 coefficients with the (2^s - 1) prefactor",
              _recip, {"family": "hurwitz", "a": 0.5, "s": 3, "prefactor": True}, 1e-6),
            C("recip:hurwitz:s=3,a=2", "Pochhammer series for 1/zeta(s, a)", _recip,
              {"family": "hurwitz", "a": 2, "s": 3}, 1e-6),
            C("recip:odd:s=3", "odd-argument coefficients, P_k((s+1)/2)", _recip, {"family": "odd", "s": 3}, 1e-5),
            C("cross-form:k<=200", "binomial sum vs Moebius sum for c_k", _cross_form, {}, 1e-8),
            C("triangle:s=2,b=3,a=1", "phi integral, Pochhammer series and 1/zeta(s,a)", _phi, {"s": 2, "b": 3, "a": 1}, 1e-5),
            C("triangle:s=1.5,b=4,a=1", "phi integral, Pochhammer series and 1/zeta(s,a)", _phi, {"s": 1.5, "b": 4, "a": 1}, 1e-5),
            C("triangle:s=2,b=3,a=2", "phi integral, Pochhammer series and 1/zeta(s,a)", _phi, {"s": 2, "b": 3, "a": 2}, 1e-5),
            C("F-small-x", "F(x)/x tends to 1/zeta(b, a)", _f_small, {}, 1e-5),
            C("exp-binomial:x=0.7,j=2", "binomial-weighted exponential series", _exp_binomial, {"x": 0.7, "j": 2}, 1e-12),
            C("shift-sum:x=1,b=2,a=1", "sum over shifts of F equals x e^-x", _shift_sum, {"x": 1, "b": 2, "a": 1}, 1e-12),
            C("shift-sum:x=0.5,b=3,a=2", "sum over shifts of F equals x e^-x", _shift_sum, {"x": 0.5, "b": 3, "a": 2}, 1e-12),
            C("pochhammer-limit:s=0.3", "scaled Pochhammer polynomial limit", _poch_limit, {"s": 0.3}, 1e-6),
            C("pochhammer-limit:s=-1.2", "scaled Pochhammer polynomial limit", _poch_limit, {"s": -1.2}, 1e-6),
        ]
    if name == "summatory":
        return [
            C("genfun:alternating-constant", "alternating sum of c_k", _alternating_constant, {}, 1e-10),
            C("genfun:s=-1,b=2,a=1", "generating function of c_k", _genfun, {"s": -1, "b": 2, "a": 1}, 1e-10),
            C("genfun:s=1/4,b=2,a=1", "generating function of c_k", _genfun, {"s": 0.25, "b": 2, "a": 1}, 1e-10),
            C("genfun:s=-1,b=3,a=1", "generating function of c_k(b, a)", _genfun, {"s": -1, "b": 3, "a": 1}, 1e-10),
            C("genfun:s=-1,b=3,a=2", "generating function of c_k(b, a), both sides summed", _genfun,
              {"s": -1, "b": 3, "a": 2}, 1e-10),
            C("genfun:s=-1/2,b=2,a=1/2", "generating function of c_k(b, a)", _genfun, {"s": -0.5, "b": 2, "a": 0.5}, 1e-10),
            C("log-sum:t=1/3", "integrated generating function", _log_sum, {"t": "1/3", "key": "log-sum:t=1/3"}, 1e-4),
            C("log-sum:t=-1", "integrated generating function", _log_sum, {"t": -1, "key": "log-sum:t=-1"}, 1e-4),
            C("log-sum:t=1/2", "integrated generating function", _log_sum, {"t": "1/2", "key": "log-sum:t=1/2"}, 1e-4),
            C("log-sum:combined", "sum of the t = -1 and t = 1/2 cases", _log_combined, {}, 1e-7),
            C("log-sum:t=-1,b=3,a=1", "integrated generating function for c_k(b, a)", _log_general,
              {"t": -1, "b": 3, "a": 1}, 1e-10),
            C("log-sum:t=1/4,b=4,a=1", "integrated generating function for c_k(b, a)", _log_general,
              {"t": 0.25, "b": 4, "a": 1}, 1e-10),
        ]
    if name == "stieltjes":
        return [
            C("gamma0:a=1", "gamma_0(a) = -psi(a)", _gamma0, {"a": 1}, 1e-20),
            C("gamma0:a=1/3", "gamma_0(a) = -psi(a)", _gamma0, {"a": "1/3"}, 1e-20),
            C("gamma0:a=2.5", "gamma_0(a) = -psi(a)", _gamma0, {"a": 2.5}, 1e-20),
            C("gamma1", "gamma_1 against an Euler-Maclaurin evaluation", _gamma1, {}, 1e-12),
            C("eta0", "eta_0 = -gamma", _eta0, {}, 1e-20),
            C("taylor-weights:K=12", "two forms of the Taylor weights agree in rationals", _taylor_weights_exact,
              {"K": 12, "J": 5}, 0.5),
            C("taylor-coefficients", "Taylor coefficients at s = 1 from the c_k", _taylor, {"K": K}, 1e-3),
            C("gamma-half-sums", "Gamma(k+1/2)/k! weighted sums of c_k", _half_gamma, {"K": K}, 1e-3),
            C("derivative-identity", "derivative identity via eta constants", _derivative_identity, {"Q": 3, "K": K}, 1e-3),
        ]
    if name == "maslanka":
        return [
            C("maslanka:zeta:s=4", "Pochhammer series for zeta(s)", _maslanka_zeta, {"s": 4}, 1e-10),
            C("maslanka:zeta:s=3", "Pochhammer series for zeta(s)", _maslanka_zeta, {"s": 3}, 1e-9),
            C("maslanka:zeta:s=2.5+1i", "Pochhammer series for zeta(s)", _maslanka_zeta, {"s": "2.5+1j"}, 1e-9),
            C("maslanka:hurwitz:s=3,a=2", "Pochhammer series for zeta(s, a)", _maslanka_zeta, {"s": 3, "a": 2}, 1e-9),
            C("maslanka:hurwitz:s=3,a=1/2", "Pochhammer series for zeta(s, a), summed (divergent for a < 1)",
              _maslanka_zeta, {"s": 3, "a": 0.5}, 1e-8),
            C("maslanka:lerch:z=1/2,s=2", "Pochhammer series for the Lerch function", _maslanka_lerch,
              {"z": 0.5, "s": 2}, 1e-8),
            C("maslanka:lerch:z=1/2,s=3", "Pochhammer series for the Lerch function", _maslanka_lerch,
              {"z": 0.5, "s": 3}, 1e-8),
            C("maslanka:scale-3:s=4", "p-scaled Pochhammer series for zeta", _probe, {"kind": "zeta", "q": 3, "s": 4}, 1e-8),
            C("probe:zeta-squared:q=2,s=3", "Pochhammer series for a Dirichlet series (conjectural)", _probe,
              {"kind": "zeta2", "q": 2, "s": 3}, 1e-8),
        ]
    if name == "dirichlet":
        return [
            C("dirichlet:q=4,s=2", "Pochhammer series for 1/L(s, chi), Catalan", _catalan, {}, 1e-6),
            C("dirichlet:q=5,chi=1,s=3", "Pochhammer series for 1/L(s, chi)", _l_series, {"q": 5, "index": 1, "s": 3}, 1e-6),
            C("dirichlet:q=3,chi=1,s=2.5", "Pochhammer series for 1/L(s, chi)", _l_series, {"q": 3, "index": 1, "s": 2.5}, 1e-6),
            C("dirichlet:q=1-reduction", "modulus 1 reduces to the Riemann coefficients", _q1_reduction, {}, 0.5),
            C("dirichlet:orthogonality", "character orthogonality", _orthogonality, {}, 1e-12),
        ]
    if name == "appendix":
        cases = []
        for a in ("1", "1/2"):
            for n in range(1, 6):
                cases.append(C(f"appendix:power-derivative:n={n},a={a}", "x^a D^n x^-a expansion",
                               _appendix_power, {"n": n, "a": a}, 0.5))
                cases.append(C(f"appendix:product-form:n={n},a={a}", "binomial product as a Lagrange product",
                               _appendix_product, {"n": n, "a": a}, 0.5))
        cases += [
            C("appendix:fourier-term:k=3,n=2", "cosine integral of the exponential term", _fourier, {"k": 3, "n": 2}, 1e-10),
            C("appendix:stirling-pochhammer:k<=50", "Pochhammer coefficients via Stirling numbers", _stirling_cross, {}, 0.5),
            C("appendix:gamma-recurrence:n=1", "multiple Gamma recurrence", _gamma_recurrence, {"n": 1, "z": 2.3}, 1e-10),
            C("appendix:gamma-recurrence:n=2", "multiple Gamma recurrence", _gamma_recurrence, {"n": 2, "z": 2.3}, 1e-10),
            C("appendix:gamma-at-one:n=2", "Gamma_n(1) = 1", _gamma_at_one, {"n": 2}, 1e-10),
            C("appendix:gamma-at-one:n=3", "Gamma_n(1) = 1", _gamma_at_one, {"n": 3}, 1e-10),
            C("appendix:hurwitz-shift", "zeta(s, a) - zeta(s, a+1) = a^-s", _hurwitz_shift, {"s": 2.5, "a": 0.3}, 1e-25),
            C("appendix:polygamma-bridge", "psi^(m)(a) = (-1)^(m+1) m! zeta(m+1, a)", _polygamma_bridge, {"m": 2, "a": 0.7}, 1e-25),
        ]
        return cases
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")


def suite_cases(name: str, K: int = 100_000) -> list[IdentityCase]:
    if name == "all":
        return [c for s in SUITES for c in _cases(s, K)]
    return _cases(name, K)


def _run_case(case: IdentityCase):
    return case.run()


def run_suite(name: str, jobs: int = 1, K: int = 100_000) -> VerificationReport:
    cases = suite_cases(name, K)
    rep = VerificationReport()
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for rows in ex.map(_run_case, cases):
                rep.rows.extend(rows)
    else:
        for c in cases:
            rep.rows.extend(c.run())
    return rep.sorted()
