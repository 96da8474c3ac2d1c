"""Special functions against mpmath's independent implementations and
against values frozen from them at 30 digits."""

import math

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from zetacoeffs import kernel as kn

TOL = mp.mpf(10) ** -25


def close(a, b, tol=TOL):
    with mp.workdps(40):
        return abs(mp.mpmathify(a) - mp.mpmathify(b)) <= tol * max(1, abs(mp.mpmathify(b)))


# values frozen from mpmath.zeta / mpmath.lerchphi / mpmath.stieltjes at 30 digits
FROZEN_HURWITZ = [
    (("2.5", "0.3"), "21.0692392022477230269553583240838"),
    (("-1.5", "2"), "-1.02548520188983303594954298691"),
]


@pytest.mark.parametrize("args,ref", FROZEN_HURWITZ)
def test_hurwitz_frozen(args, ref):
    with mp.workdps(30):
        assert close(kn.hurwitz_zeta(mp.mpf(args[0]), mp.mpf(args[1]), 30), mp.mpf(ref))


def test_riemann_on_critical_line_frozen():
    with mp.workdps(30):
        ref = mp.mpc("0.0222411426099935892462131992", "-0.103258123266450057902363095553")
        assert close(kn.riemann_zeta(mp.mpc(0.5, 14), 30), ref)


# mpmath.zeta itself divides by zero for |s| below ~1e-30, so keep clear of it
@given(st.floats(-8, 12).filter(lambda s: abs(s - 1) > 1e-3 and (s == 0 or abs(s) > 1e-20)), st.floats(0.05, 6))
def test_hurwitz_matches_mpmath(s, a):
    with mp.workdps(25):
        assert close(kn.hurwitz_zeta(s, a, 25), mp.zeta(s, a), mp.mpf(10) ** -18)


@given(st.floats(0.1, 5), st.floats(2, 6))
def test_hurwitz_shift_property(a, s):
    with mp.workdps(30):
        a = mp.mpf(a)
        lhs = kn.hurwitz_zeta(s, a, 30) - kn.hurwitz_zeta(s, a + 1, 30)
        assert close(lhs, mp.mpf(a) ** (-s), mp.mpf(10) ** -22)


def test_hurwitz_negative_a_shift():
    with mp.workdps(30):
        assert close(kn.hurwitz_zeta(3, mp.mpf("-1.5"), 30), mp.zeta(3, mp.mpf("-1.5")))


def test_hurwitz_poles():
    with pytest.raises(kn.PoleError):
        kn.hurwitz_zeta(1, 0.5)
    with pytest.raises(ValueError):
        kn.hurwitz_zeta(2, -2)


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_zeta_even_closed_form(n):
    with mp.workdps(30):
        assert close(kn.zeta_even(n, 30), mp.zeta(2 * n))


def test_zeta_derivative_frozen():
    with mp.workdps(30):
        assert close(kn.hurwitz_zeta_derivative(-2, 1, 1, 30), mp.mpf("-0.0304484570583932707802515304712"), 1e-24)
        assert close(kn.hurwitz_zeta_derivative(0.5, 1, 1, 30), mp.mpf("-3.92264613920915172747153144671"), 1e-24)
        # zeta'(-2) = -zeta(3)/(4 pi^2)
        assert close(kn.hurwitz_zeta_derivative(-2, 1, 1, 30), -mp.zeta(3) / (4 * mp.pi ** 2), 1e-24)


def test_gamma_family_poles():
    for f in (kn.gamma, kn.digamma):
        with pytest.raises(kn.PoleError):
            f(-3)
    with pytest.raises(kn.PoleError):
        kn.polygamma(1, 0)
    with mp.workdps(30):
        assert close(kn.polygamma(2, 0.5, 30), mp.polygamma(2, 0.5))


def test_lerch_frozen():
    with mp.workdps(30):
        assert close(kn.lerch_phi(0.5, 3, 1, 30), mp.mpf("1.07442638721608040188124645119"))
        assert close(kn.lerch_phi(mp.mpf(1) / 3, 2.5, 0.75, 30), mp.mpf("2.14561703189129991142372682537"))


def test_lerch_on_unit_circle():
    with mp.workdps(30):
        # z = -1: Dirichlet eta; z = i with a rational angle; z = exp(i) without
        assert close(kn.lerch_phi(-1, 2, 1, 30), mp.pi ** 2 / 12)
        assert close(kn.lerch_phi(mp.mpc(0, 1), 3, 0.5, 30), mp.lerchphi(mp.mpc(0, 1), 3, 0.5), 1e-22)
        z = mp.expj(1)
        assert close(kn.lerch_phi(z, 3, 1, 20), mp.lerchphi(z, 3, 1), 1e-12)


def test_polylog():
    with mp.workdps(30):
        assert close(kn.polylog(2, 0.5, 30), mp.pi ** 2 / 12 - mp.log(2) ** 2 / 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_multiple_zeta_weights_reproduce_binomial(n):
    ws = kn.multiple_zeta_weights(n, 1)
    for k in range(8):
        assert sum(c * (k + 1) ** j for j, c in enumerate(ws)) == math.comb(k + n - 1, n - 1)


def test_multiple_zeta_direct_sum():
    with mp.workdps(30):
        direct = mp.nsum(lambda k: mp.binomial(k + 2, 2) * (k + mp.mpf("0.7")) ** -6, [0, mp.inf])
        assert close(kn.multiple_zeta(3, 6, mp.mpf("0.7"), 30), direct, 1e-22)
    with pytest.raises(kn.PoleError):
        kn.multiple_zeta(2, 2)


def test_log_multiple_gamma_n1_is_log_gamma():
    with mp.workdps(30):
        assert close(kn.log_multiple_gamma(1, 2.3, 30), mp.loggamma(2.3), 1e-22)


def test_log_double_gamma_against_barnes():
    # with Gamma_2(1) = 1 the double Gamma function is 1/G(z)
    with mp.workdps(30):
        z = mp.mpf(23) / 10
        ref = -mp.log(mp.barnesg(z))
        assert close(kn.log_multiple_gamma(2, z, 30), ref, 1e-20)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_multiple_gamma_normalised_at_one(n):
    with mp.workdps(30):
        assert abs(kn.log_multiple_gamma(n, 1, 30)) < 1e-22


def test_literal_constants_break_normalisation():
    with mp.workdps(30):
        assert abs(kn.log_multiple_gamma(3, 1, 30, literal=True)) > 1e-3


@pytest.mark.parametrize("q", list(range(1, 41)))
def test_characters_group_structure(q):
    chars = kn.characters_mod(q)
    phi = sum(1 for n in range(1, q + 1) if math.gcd(n, q) == 1)
    assert len(chars) == phi
    assert chars[0].is_principal
    # multiplicativity and orthogonality over residues
    for chi in chars[: min(len(chars), 6)]:
        for m in range(1, q + 1):
            for n in range(1, min(q, 8) + 1):
                assert abs(complex(chi(m * n)) - complex(chi(m)) * complex(chi(n))) < 1e-12
        tot = sum(complex(chi(n)) for n in range(q))
        assert abs(tot - (phi if chi.is_principal else 0)) < 1e-9


def test_character_from_values_and_conj():
    chi = kn.character_from_values(4, {3: -1})
    assert chi(3) == -1 and chi(2) == 0 and chi.is_real()
    c5 = kn.characters_mod(5)[1]
    assert not c5.is_real()
    assert abs(complex(c5(2)) * complex(c5.conj()(2)) - 1) < 1e-15
    with pytest.raises(ValueError):
        kn.character_from_values(5, {2: 5})


def test_dirichlet_l_values():
    with mp.workdps(30):
        chi4 = kn.character_from_values(4, {3: -1})
        assert close(kn.dirichlet_l(2, chi4, 30), mp.catalan)
        assert close(kn.dirichlet_l(1, chi4, 30), mp.pi / 4)
        with pytest.raises(kn.PoleError):
            kn.dirichlet_l(1, kn.characters_mod(4)[0])
        # principal character mod q: zeta(s) prod_{p | q} (1 - p^-s)
        chi0 = kn.characters_mod(6)[0]
        assert close(kn.dirichlet_l(3, chi0, 30), mp.zeta(3) * (1 - mp.mpf(2) ** -3) * (1 - mp.mpf(3) ** -3))


def test_stieltjes_frozen():
    with mp.workdps(30):
        t = kn.stieltjes(1, 3, 30)
        assert close(t[0], mp.euler)
        assert close(t[1], mp.mpf("-0.0728158454836767248605863758749"), 1e-27)
        assert close(t[2], mp.mpf("-0.00969036319287231848453038603521"), 1e-27)
        t3 = kn.stieltjes(mp.mpf(1) / 3, 1, 30)
        assert close(t3[1], mp.mpf("-3.25955751591791019525087458268"), 1e-25)


def test_gamma1_two_routes():
    with mp.workdps(30):
        assert close(kn.gamma1_euler_maclaurin(50, 30), kn.stieltjes(1, 1, 30)[1], 1e-25)


def test_eta_constants_log_derivative():
    with mp.workdps(30):
        eta = kn.eta_constants(6, 30)
        assert close(eta[0], -mp.euler)
        s = mp.mpf("1.2")
        ref = mp.zeta(s, 1, 1) / mp.zeta(s)
        assert close(eta.log_derivative(s), ref, 1e-6)


def test_reciprocal_zeta_taylor():
    with mp.workdps(30):
        c = kn.reciprocal_zeta_taylor(5, 30)
        u = mp.mpf("0.05")
        approx = mp.fsum(ci * u ** i for i, ci in enumerate(c))
        assert c[0] == 0 and close(c[1], 1)
        assert abs(approx - 1 / mp.zeta(1 + u)) < 1e-8


def test_series_helpers():
    c = [mp.mpf(1), mp.mpf(2), mp.mpf(3)]
    inv = kn.series_inverse(c)
    assert close(inv[1], -2) and close(inv[2], 1)
    lg = kn.series_log([mp.mpf(1), mp.mpf(1), mp.mpf(0.5), mp.mpf(1) / 6])
    assert close(lg[1], 1) and abs(lg[2]) < 1e-25 and abs(lg[3]) < 1e-25
