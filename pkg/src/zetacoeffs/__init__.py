"""Coefficients of the reciprocal zeta function in Pochhammer-polynomial
expansions, their generalisations (Hurwitz, Dirichlet L, Bernoulli
polynomial, odd-argument), and verifiers for the identities built on them."""

__version__ = "0.1.0"

from .numerics import PrecisionPolicy, SeriesResult, NotConvergedError  # noqa: E402
from .coefficients import (  # noqa: E402
    CoefficientRow,
    CoefficientSpec,
    ZeroDenominatorError,
    ck_binomial,
    ck_binomial_range,
    ck_mobius,
    ck_approx,
    sweep,
)
from .kernel import hurwitz_zeta, riemann_zeta, dirichlet_l, lerch_phi, stieltjes, eta_constants  # noqa: E402
from .report import IdentityResult, VerificationReport  # noqa: E402

__all__ = [
    "__version__", "PrecisionPolicy", "SeriesResult", "NotConvergedError", "CoefficientRow",
    "CoefficientSpec", "ZeroDenominatorError", "ck_binomial", "ck_binomial_range", "ck_mobius",
    "ck_approx", "sweep", "hurwitz_zeta", "riemann_zeta", "dirichlet_l", "lerch_phi", "stieltjes",
    "eta_constants", "IdentityResult", "VerificationReport",
]
