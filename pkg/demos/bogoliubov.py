"""
Bogoliubov mixing of the two modes
==================================

Conjugating a_x by the two-mode squeeze operator mixes it with a_y and with
both creation operators.  We build S by a dense matrix exponential on a
truncated basis and compare S^dag a_x S with the closed form on the
low-lying block that truncation has not reached.

Truncation creeps into that block as R grows: a level nu spreads up to
roughly nu (cosh 2R + 3 sinh 2R / sqrt 2) under squeezing, and the squeezed
vacuum has a geometric tail tanh(R)^(nu/2), so the block must shrink
(``max_nu``) or the cutoff grow for larger R.  Only the block's columns of S
are computed, as exp-times-vector products on a sparse generator.
"""

import numpy as np

from oscfock import ConvergenceError, ModePair, SqueezeSpec, bogoliubov_check
from oscfock.operators import bogoliubov_min_cutoff

modes = ModePair(np.sqrt(3) / 2, 0.5)
for r, max_nu, cutoff in ((0.0, None, 50), (0.2, None, 50), (0.2, 12, 50), (0.5, 8, 50),
                          (1.0, 4, 50), (1.0, 4, 120)):
    spec = SqueezeSpec(0, r, 0.0)
    try:
        rep = bogoliubov_check(modes, spec, cutoff, max_nu=max_nu)
        print(f"R = {r}, cutoff {cutoff}: block nu <= {rep.max_nu:2d}, residual {rep.residual:.2e}, "
              f"adjoint {rep.residual_adjoint:.2e}")
    except ConvergenceError as exc:
        print(f"R = {r}, cutoff {cutoff}: {exc}")

print("\nminimum cutoff to insulate nu <= 20:")
for r in (0.1, 0.2, 0.5, 1.0):
    print(f"  R = {r}: {bogoliubov_min_cutoff(r, 20)}")
