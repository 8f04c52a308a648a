"""
Hermite polynomials with complex argument and oscillator eigenfunctions.

The squeezed-state expansion needs

    t_nu = (gamma/2)^{nu/2} H_nu(z / sqrt(2 gamma)) / sqrt(nu!),

whose three factors overflow separately near nu ~ 170.  Substituting the
Hermite recurrence gives a recurrence on t_nu itself,

    t_{nu+1} = (z t_nu - gamma sqrt(nu) t_{nu-1}) / sqrt(nu + 1),

which has no square root of gamma (so no branch choice) and reduces to
z^nu / sqrt(nu!) at gamma = 0.
"""

import numpy as np

from .errors import DomainError

_PI_QUARTER = np.pi ** -0.25
# rescale threshold for the eigenfunction recurrence
_BIG = 1e150


def hermite_sequence(order, x):
    """H_0(x), ..., H_order(x) (physicists' convention) as a complex array."""
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    x = complex(x)
    h = np.empty(order + 1, dtype=np.complex128)
    h[0] = 1.0
    if order >= 1:
        h[1] = 2 * x
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, order):
            h[k + 1] = 2 * x * h[k] - 2 * k * h[k - 1]
    return h


def hermite_eval(order, x):
    """H_order(x) by upward recurrence. Overflows to inf at high order."""
    return complex(hermite_sequence(order, x)[-1])


def _check_gamma(gamma):
    if not abs(gamma) < 1.0:
        raise DomainError(f"tanh modulus must be < 1 (|gamma| = {abs(gamma)!r})")


def squeeze_terms(order, z, gamma):
    """Unnormalized expansion coefficients t_0..t_order of a squeezed state."""
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    z, gamma = complex(z), complex(gamma)
    _check_gamma(gamma)
    t = np.empty(order + 1, dtype=np.complex128)
    t[0] = 1.0
    if order >= 1:
        t[1] = z
    for k in range(1, order):
        t[k + 1] = (z * t[k] - gamma * np.sqrt(k) * t[k - 1]) / np.sqrt(k + 1)
    return t


def squeeze_term(order, z, gamma):
    """The single coefficient t_order; see :func:`squeeze_terms`."""
    return complex(squeeze_terms(order, z, gamma)[-1])


def oscillator_eigenfunctions(nmax, x):
    """Table ``psi[n, i] = psi_n(x_i)`` for n = 0..nmax.

    Uses the normalized three-term recurrence with a per-point logarithmic
    scale, so neither factorials nor the Gaussian underflow: values stay
    accurate far into the classically forbidden region.
    """
    if nmax < 0:
        raise DomainError(f"nmax must be >= 0, got {nmax}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((nmax + 1, x.size))
    log_scale = -0.5 * x**2 + np.log(_PI_QUARTER)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    out[0] = np.exp(log_scale)
    for k in range(nmax):
        nxt = x * np.sqrt(2.0 / (k + 1)) * cur - np.sqrt(k / (k + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _BIG
        if big.any():
            cur[big] /= _BIG
            prev[big] /= _BIG
            log_scale[big] += np.log(_BIG)
        with np.errstate(under="ignore"):
            out[k + 1] = cur * np.exp(log_scale)
    return out


def oscillator_eigenfunction(n, x):
    """psi_n(x) = (2^n n!)^{-1/2} pi^{-1/4} exp(-x^2/2) H_n(x)."""
    vals = oscillator_eigenfunctions(n, x)[n]
    return float(vals[0]) if np.ndim(x) == 0 else vals
