"""Sum the Pochhammer series for 1/zeta(s) and compare with the kernel."""

import mpmath as mp

from zetacoeffs import CoefficientSpec, riemann_zeta
from zetacoeffs.representations import ReciprocalSeriesSpec, reciprocal_zeta_series

cases = [
    ("riemann", CoefficientSpec("riemann"), False, 3),
    ("riemann", CoefficientSpec("riemann"), False, mp.mpc(2, 3)),
    ("a=1/2 with 2^s-1", CoefficientSpec("hurwitz", a=mp.mpf(1) / 2), True, 3),
    ("odd argument", CoefficientSpec("odd"), False, 3),
]

for label, fam, pre, s in cases:
    res = reciprocal_zeta_series(ReciprocalSeriesSpec(fam, prefactor=pre), s, tol=1e-8)
    with mp.workdps(20):
        ref = 1 / riemann_zeta(s, 30)
        print(f"{label:<18} s={mp.nstr(s, 4):<10} series={mp.nstr(res.value, 14):<32} "
              f"|delta|={mp.nstr(abs(res.value - ref), 3):<10} terms={res.terms_used} ({res.method})")
