"""
SU(2) coherent states as ellipses
=================================

A state with nu = 40 quanta shared between the x and y oscillators with
amplitudes (alpha, beta) spreads over the degenerate level as a ring-shaped
(elliptical) density.  The orientation and eccentricity follow the mode pair.
"""

import numpy as np

from oscfock import ModePair, SU2CoherentSpec, su2_coherent, variance_numeric
from oscfock.density import density_grid, origin_ratio

pairs = {
    "alpha = (sqrt3/2) i, beta = 1/2": ModePair(np.sqrt(3) / 2 * 1j, 0.5),
    "alpha = sqrt3/2,     beta = 1/2": ModePair(np.sqrt(3) / 2, 0.5),
}

for label, modes in pairs.items():
    state = su2_coherent(SU2CoherentSpec(40, modes), 40)
    grid = density_grid(state, (-12, 12), (-12, 12), 121, 121)
    print(label)
    print(f"  mass on grid          {grid.mass:.10f}")
    print(f"  origin / max density  {origin_ratio(state, grid):.2e}")
    print(f"  var X = {variance_numeric(state, 'X'):.4f}  (1/2 + |alpha|^2 nu = {0.5 + 0.75 * 40})")
    print(f"  var Y = {variance_numeric(state, 'Y'):.4f}  (1/2 + |beta|^2 nu  = {0.5 + 0.25 * 40})")

    # coarse character plot: one row per 8 grid rows
    v = grid.values[::8, ::4] / grid.values.max()
    shades = " .:-=+*#%@"
    for row in v[::-1]:
        print("  " + "".join(shades[min(int(p * len(shades)), len(shades) - 1)] for p in row))
    print()
