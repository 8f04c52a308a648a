"""
Squeezing couples x and y
=========================

The two-mode squeezed vacuum is a product state only when one of alpha,
beta vanishes.  The Schmidt decomposition of the amplitude matrix c[n, m]
measures how far it is from one.  For real alpha, beta the state is Gaussian,
so the entropy also follows from the symplectic eigenvalue of the x-mode
covariance, a useful independent check.
"""

import numpy as np

from oscfock import ModePair, SqueezeSpec, dispersion_2d_analytic, schmidt_analysis, squeezed_vacuum_exponential


def gaussian_entropy(var_x, var_p):
    nu = np.sqrt(var_x * var_p)
    return (nu + 0.5) * np.log(nu + 0.5) - (nu - 0.5) * np.log(nu - 0.5)


print("  |alpha|^2    R    rank   entropy (Schmidt)   entropy (Gaussian)")
for a2 in (1.0, 0.9, 0.75, 0.5):
    modes = ModePair(np.sqrt(a2), np.sqrt(1 - a2))
    for r in (0.25, 0.5, 1.0):
        spec = SqueezeSpec(0, r, 0.0)
        res = schmidt_analysis(squeezed_vacuum_exponential(spec, modes, 120))
        ana = dispersion_2d_analytic(spec, modes)
        ref = gaussian_entropy(ana.varX, ana.varPx) if a2 < 1 else 0.0
        print(f"  {a2:9.2f}  {r:4.2f}  {res.rank:4d}   {res.entropy:17.12f}   {ref:18.12f}")
