"""Fit the -A/k^2 trend of c_k and the decay of what is left.

Run with a smaller window (e.g. ``python trend_fit.py 200 1000``) for a
quicker look; the default window takes around half a minute.
"""

import sys

import numpy as np

from zetacoeffs import CoefficientSpec, PrecisionPolicy, sweep
from zetacoeffs.analysis import envelope_exponent, trend_fit, trend_target

lo, hi = (int(v) for v in sys.argv[1:3]) if len(sys.argv) > 2 else (200, 3000)
rows = [r for r in sweep(CoefficientSpec("riemann"), range(lo, hi + 1), PrecisionPolicy(12)) if r.error is None]
ks = np.array([r.k for r in rows])
vals = np.array([float(r.value) for r in rows])

tf = trend_fit(ks, vals)
target = trend_target()
print(f"trend amplitude  {tf.value:.5f} +- {tf.stderr:.1e}   flags={tf.flags}")
print(f"1/(2 zeta'(-2))  {float(target.amplitude):.5f}   closed form {float(target.closed_form):.5f}")

env = envelope_exponent(ks, vals, noise_floor=1e-12)
print(f"envelope exponent {env.value if env.value is None else round(env.value, 3)}  status={env.status}  {env.note}")
