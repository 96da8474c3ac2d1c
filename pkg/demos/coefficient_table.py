"""Print c_k for the Riemann family by two independent routes.

The binomial difference table is exact up to working precision; the
Moebius sum is a float64 sieve with a bounded tail.
"""

import mpmath as mp

from zetacoeffs import CoefficientSpec, PrecisionPolicy, ck_binomial, ck_mobius

spec = CoefficientSpec("riemann")
policy = PrecisionPolicy(20)

print(f"{'k':>4}  {'binomial':>24}  {'moebius':>20}  {'diff':>9}")
for k in (0, 1, 2, 5, 10, 20, 50, 100):
    b = ck_binomial(spec, k, policy)
    m = ck_mobius(k, tol=1e-7)
    print(f"{k:>4}  {mp.nstr(b.value, 18):>24}  {float(m.value):>20.12e}  {abs(float(b.value) - float(m.value)):9.1e}")
