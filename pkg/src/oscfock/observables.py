"""
Quadrature variances, closed-form dispersions, uncertainty products and
Schmidt analysis of two-mode amplitudes.
"""

from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import UsageError
from .fock import StateVector1D, StateVector2D, _jsonable
from .operators import apply_quadrature

SCHMIDT_RANK_TOL = 1e-10


def _check_state(state, allow_unnormalized):
    if state.unnormalized and not allow_unnormalized:
        raise UsageError(
            "state is flagged unnormalized (hard-truncated sum); pass allow_unnormalized=True "
            "to compute moments of its normalized version"
        )


def quadrature_moments(state, quadrature, allow_unnormalized=False):
    """``(<O>, <O^2>, leakage)`` for a Hermitian quadrature O.

    <O^2> is the squared norm of O|s>, computed one level above the cutoff so
    that nothing is dropped; ``leakage`` is the weight O|s> puts on that
    extra level, i.e. what a truncated application would have lost.
    Moments refer to the normalized state.
    """
    _check_state(state, allow_unnormalized)
    w = float(np.vdot(state.coeffs, state.coeffs).real)
    if w == 0.0:
        raise UsageError("moments of the zero vector are undefined")
    out, leakage = apply_quadrature(quadrature, state, extend=True)
    first = np.vdot(state.coeffs, out.coeffs[: state.dim]).real / w
    second = float(np.vdot(out.coeffs, out.coeffs).real) / w
    return float(first), second, leakage / w


def variance_numeric(state, quadrature, allow_unnormalized=False, return_leakage=False):
    """<O^2> - <O>^2 for O in {X, Px, Y, Py} (2D) or {X, P} (1D)."""
    first, second, leakage = quadrature_moments(state, quadrature, allow_unnormalized)
    var = second - first**2
    return (var, leakage) if return_leakage else var


def dispersion_1d_analytic(spec):
    """Closed-form (var X, var P) of a displaced squeezed state.

    var X = 1/2 + sinh^2 r + cos(theta) cosh r sinh r, var P with the sign flipped.
    """
    r, th = spec.squeeze_modulus, spec.squeeze_phase
    base = 0.5 + np.sinh(r) ** 2
    cross = np.cos(th) * np.cosh(r) * np.sinh(r)
    return float(base + cross), float(base - cross)


@dataclass
class DispersionReport:
    varX: float
    varPx: float
    varY: Optional[float] = None
    varPy: Optional[float] = None
    leakage: float = 0.0
    params: dict = field(default_factory=dict)

    @property
    def products(self):
        """Standard-deviation products (dX dPx, dY dPy)."""
        px = float(np.sqrt(self.varX * self.varPx))
        if self.varY is None:
            return (px, None)
        return (px, float(np.sqrt(self.varY * self.varPy)))

    def to_dict(self):
        d = asdict(self)
        d["products"] = list(self.products)
        d["params"] = _jsonable(self.params)
        return d


def dispersion_2d_analytic(spec, modes):
    """Closed-form quadrature variances of the 2D squeezed state.

    var X = 1/2 + |alpha|^2 sinh^2 R + Re(e^{i Theta} alpha^2) sinh R cosh R,
    var Px the same with the last sign flipped; Y, Py use beta.  They do not
    depend on the displacement.
    """
    r, ph = spec.squeeze_modulus, np.exp(1j * spec.squeeze_phase)
    sh2, shch = np.sinh(r) ** 2, np.sinh(r) * np.cosh(r)

    def pair(c):
        base = 0.5 + abs(c) ** 2 * sh2
        cross = np.real(ph * c**2) * shch
        return float(base + cross), float(base - cross)

    vx, vpx = pair(modes.alpha)
    vy, vpy = pair(modes.beta)
    return DispersionReport(vx, vpx, vy, vpy, params={"spec": spec, "modes": modes})


def uncertainty_products(state, allow_unnormalized=False):
    """Numeric :class:`DispersionReport` of a 1D or 2D state."""
    quads = ("X", "P") if isinstance(state, StateVector1D) else ("X", "Px", "Y", "Py")
    vals, leaks = [], []
    for q in quads:
        v, leak = variance_numeric(state, q, allow_unnormalized, return_leakage=True)
        vals.append(v)
        leaks.append(leak)
    return DispersionReport(*vals, leakage=max(leaks), params={"cutoff": state.cutoff})


class SchmidtResult(NamedTuple):
    rank: int
    entropy: float
    singular_values: np.ndarray


def schmidt_analysis(state, allow_unnormalized=False):
    """Schmidt decomposition across the x | y split.

    Singular values of the amplitude matrix c[n, m]; the rank counts values
    above 1e-10 and the entropy is -sum s^2 ln s^2 (natural log).
    """
    if not isinstance(state, StateVector2D):
        raise UsageError("Schmidt analysis needs a 2D state")
    _check_state(state, allow_unnormalized)
    sv = np.linalg.svd(state.as_matrix(), compute_uv=False)
    sv = sv / np.sqrt(np.sum(sv**2))
    p = sv[sv > SCHMIDT_RANK_TOL] ** 2
    entropy = float(-np.sum(p * np.log(p)))
    return SchmidtResult(int(np.sum(sv > SCHMIDT_RANK_TOL)), entropy if entropy > 0 else 0.0, sv)
