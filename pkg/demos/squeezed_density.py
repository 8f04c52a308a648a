"""
Two-dimensional squeezed states and their density maxima
========================================================

The 2D squeezed state replaces each Fock level of the 1D expansion by an
SU(2) coherent state.  Hard-truncating the sum at 20 terms, as one would for
a quick plot, gives an unnormalized state whose density we count maxima in.

Two readings of "displacement 1" differ sharply at large squeeze R: feeding
Psi = 1 through the eigenvalue map gives Z = Psi - conj(Psi) tanh R, almost
zero at R = 10, while using Z = 1 directly is a very large displacement.
"""

import numpy as np

from oscfock import ModePair, SqueezeSpec, count_local_maxima, density_grid, squeezed_2d
from oscfock.states import expansion_2d

phased = ModePair(np.sqrt(3) / 2 * 1j, 0.5)
real = ModePair(np.sqrt(3) / 2, 0.5)

for r, modes, label in ((0.1, phased, "alpha = i sqrt3/2"), (10.0, real, "alpha = sqrt3/2")):
    spec = SqueezeSpec(1.0, r, 0.0)
    state = squeezed_2d(spec, modes, 19, terms=20)
    grid = density_grid(state, nx=201, ny=201)
    print(f"{label}, beta = 1/2, R = {r}: Psi = 1 gives Z = {spec.canonical_z:.3g}")
    print(f"  truncated norm^2 = {state.norm ** 2:.6g}, grid mass = {grid.mass:.6g}")
    print(f"  local maxima above 10% of peak: {count_local_maxima(grid)}")

    direct, _ = expansion_2d(1.0, spec.canonical_gamma, modes, 19, terms=20)
    grid = density_grid(direct, nx=201, ny=201)
    print(f"  with Z = 1 taken directly: {count_local_maxima(grid)} maxima")
    print()
