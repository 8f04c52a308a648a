"""
Quadrature dispersions: closed form against the truncated Fock space
====================================================================

Variances are computed from ladder actions on the state vector and compared
with the closed forms.  In 1D the product var X var P stays at 1/4 for a real
squeeze; in 2D the squeeze is shared between x and y in proportion to
|alpha|^2 and |beta|^2, and displacement leaves all variances untouched.
"""

import numpy as np

from oscfock import (
    ModePair,
    SqueezeSpec,
    dispersion_1d_analytic,
    dispersion_2d_analytic,
    squeezed_1d,
    squeezed_2d,
    uncertainty_products,
)
from oscfock.states import suggest_cutoff

print("1D, psi = 0.5, theta = 0")
print("   r     var X (num)     var X (exact)    var X var P")
for r in (0.2, 0.5, 1.0, 1.5):
    spec = SqueezeSpec(0.5, r, 0.0)
    rep = uncertainty_products(squeezed_1d(spec, max(200, suggest_cutoff(spec))))
    vx, vp = dispersion_1d_analytic(spec)
    print(f"  {r:3.1f}  {rep.varX:14.10f}  {vx:14.10f}  {rep.varX * rep.varPx:.12f}")

modes = ModePair(np.sqrt(3) / 2, 0.5)
print("\n2D, alpha = sqrt3/2, beta = 1/2, R = 0.5, Theta = 0")
ana = dispersion_2d_analytic(SqueezeSpec(0, 0.5), modes)
for psi in (0, 1, 1 + 1j):
    num = uncertainty_products(squeezed_2d(SqueezeSpec(psi, 0.5), modes, 80))
    print(
        f"  Psi = {psi!s:6}  var X {num.varX:.8f}  var Px {num.varPx:.8f}  "
        f"var Y {num.varY:.8f}  var Py {num.varPy:.8f}"
    )
print(
    f"  closed form   var X {ana.varX:.8f}  var Px {ana.varPx:.8f}  "
    f"var Y {ana.varY:.8f}  var Py {ana.varPy:.8f}"
)
print(f"  products dX dPx = {ana.products[0]:.6f}, dY dPy = {ana.products[1]:.6f}  (> 1/2: coupled modes)")
