"""
Constructors for the oscillator state families.

Each closed-form constructor has an independent counterpart built from
operator exponentials (``*_oracle``), so the two can be cross-checked.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy
from scipy.stats import poisson

from .errors import ConvergenceError, DimensionError, DomainError, UsageError
from .fock import (
    ModePair,
    SqueezeSpec,
    StateVector1D,
    StateVector2D,
    basis_labels,
    basis_size_2d,
    block_slice,
)
from .operators import (
    apply_generalized,
    apply_ladder,
    displacement_generator,
    expm_action,
    matrix_exponential,
    squeeze_generator,
)
from .special import squeeze_terms

# closed-form expansions are refused beyond this squeeze modulus
MAX_SQUEEZE = 3.0
TAIL_LEVELS = 10
TAIL_WEIGHT = 1e-10
COHERENT_TAIL = 1e-12
NORM_TOL_2D = 1e-8


@dataclass(frozen=True)
class SU2CoherentSpec:
    nu: int
    modes: ModePair

    def __post_init__(self):
        if int(self.nu) < 0:
            raise DomainError(f"nu must be >= 0, got {self.nu}")
        object.__setattr__(self, "nu", int(self.nu))


def _prefactor(spec):
    """|<0|D(psi) S(xi)|0>| = cosh(r)^{-1/2} exp(-|psi|^2/2 + tanh(r)/2 Re(e^{i theta} conj(psi)^2)).

    Evaluated at the displacement psi; see the module notes in README for
    why psi rather than z enters here.
    """
    psi, r, th = spec.displacement, spec.squeeze_modulus, spec.squeeze_phase
    return np.cosh(r) ** -0.5 * np.exp(
        -abs(psi) ** 2 / 2 + np.tanh(r) / 2 * np.real(np.exp(1j * th) * np.conj(psi) ** 2)
    )


def suggest_cutoff(spec, tol=TAIL_WEIGHT, start=0):
    """Smallest cutoff > ``start`` whose last TAIL_LEVELS levels and beyond weigh < ``tol``."""
    pref = _prefactor(spec)
    order = 256
    while order <= 1 << 16:
        w = np.abs(pref * squeeze_terms(order, spec.canonical_z, spec.canonical_gamma)) ** 2
        if w[-TAIL_LEVELS:].sum() < tol * 1e-3:
            suffix = np.cumsum(w[::-1])[::-1]
            cut = np.arange(order + 1)
            ok = (suffix[np.maximum(cut - TAIL_LEVELS + 1, 0)] < tol) & (cut > start)
            return int(np.nonzero(ok)[0][0])
        order *= 2
    return None


def coherent_1d(z, cutoff):
    """Coherent state e^{-|z|^2/2} sum z^n / sqrt(n!) |n>."""
    z = complex(z)
    lam = abs(z) ** 2
    tail = float(poisson.sf(cutoff, lam)) if lam > 0 else 0.0
    if tail >= COHERENT_TAIL:
        need = int(np.ceil(lam + 10 * np.sqrt(lam + 1) + 20))
        raise ConvergenceError(
            f"cutoff {cutoff} leaves Poisson tail {tail:.3g} >= {COHERENT_TAIL} for |z|={abs(z):.4g}; "
            f"use cutoff >= {need}",
            suggested_cutoff=need,
        )
    coeffs = np.exp(-lam / 2) * squeeze_terms(cutoff, z, 0.0)
    return StateVector1D(
        cutoff,
        coeffs,
        metadata={"construction": "coherent_1d", "z": z, "leakage": tail},
    )


def _check_tail(weights, cutoff, spec, what):
    tail = float(np.sum(weights[-TAIL_LEVELS:]))
    if tail >= TAIL_WEIGHT:
        need = suggest_cutoff(spec, start=cutoff)
        raise ConvergenceError(
            f"{what}: top {TAIL_LEVELS} levels at cutoff {cutoff} carry weight {tail:.3g} "
            f">= {TAIL_WEIGHT}; use cutoff >= {need}",
            suggested_cutoff=need,
        )
    return tail


def squeezed_1d(spec, cutoff):
    """Displaced squeezed state D(psi) S(xi)|0> from its Fock expansion."""
    if spec.squeeze_modulus >= MAX_SQUEEZE:
        raise ConvergenceError(
            f"squeeze modulus {spec.squeeze_modulus} >= {MAX_SQUEEZE}: the Fock expansion "
            "decays too slowly; build the state with squeezed_1d_oracle instead"
        )
    coeffs = _prefactor(spec) * squeeze_terms(cutoff, spec.canonical_z, spec.canonical_gamma)
    tail = _check_tail(np.abs(coeffs) ** 2, cutoff, spec, "squeezed_1d")
    return StateVector1D(
        cutoff,
        coeffs,
        metadata={"construction": "squeezed_1d", "spec": spec, "leakage": tail},
    )


def _su2_amplitudes(ns, ms, modes):
    """alpha^n beta^m sqrt(C(n+m, n)), evaluated in log space."""
    a, b = modes.alpha, modes.beta
    logmag = (
        xlogy(ns, abs(a))
        + xlogy(ms, abs(b))
        + 0.5 * (gammaln(ns + ms + 1) - gammaln(ns + 1) - gammaln(ms + 1))
    )
    phase = ns * np.angle(a) + ms * np.angle(b)
    return np.exp(logmag + 1j * phase)


def su2_coherent(spec, cutoff):
    """|nu>_{alpha,beta} = sum_n alpha^n beta^{nu-n} sqrt(C(nu,n)) |n, nu-n>."""
    if spec.nu > cutoff:
        raise DimensionError(f"nu={spec.nu} exceeds cutoff {cutoff}")
    coeffs = np.zeros(basis_size_2d(cutoff), dtype=np.complex128)
    n = np.arange(spec.nu + 1)
    coeffs[block_slice(spec.nu)] = _su2_amplitudes(n, spec.nu - n, spec.modes)
    return StateVector2D(
        cutoff,
        coeffs,
        metadata={"construction": "su2_coherent", "nu": spec.nu, "modes": spec.modes},
    )


def su2_overlap(mu, modes_a, nu, modes_b):
    """<mu|_{gamma,delta} |nu>_{alpha,beta} = (conj(gamma) alpha + conj(delta) beta)^nu delta_{mu nu}.

    ``modes_a`` = (gamma, delta) labels the bra, ``modes_b`` = (alpha, beta) the ket.
    """
    if mu != nu:
        return 0j
    return complex(
        (np.conj(modes_a.alpha) * modes_b.alpha + np.conj(modes_a.beta) * modes_b.beta) ** nu
    )


def expansion_2d(z, gamma, modes, cutoff, terms=None, scale=1.0):
    """``scale * sum_{nu < terms} t_nu(z, gamma) |nu>_{alpha,beta}`` without normalization.

    Returns the state (flagged unnormalized) and the per-level weights.
    """
    if terms is not None:
        terms = int(terms)
        if terms < 1:
            raise DomainError(f"terms must be >= 1, got {terms}")
        if terms - 1 > cutoff:
            raise DimensionError(f"terms={terms} needs cutoff >= {terms - 1}, got {cutoff}")
    ns, ms, nus = basis_labels(cutoff)
    t = scale * squeeze_terms(cutoff, z, gamma)
    if terms is not None:
        t[terms:] = 0.0
    coeffs = t[nus] * _su2_amplitudes(ns, ms, modes)
    meta = {"construction": "expansion_2d", "z": complex(z), "gamma": complex(gamma),
            "modes": modes, "terms": terms}
    return StateVector2D(cutoff, coeffs, unnormalized=True, metadata=meta), np.abs(t) ** 2


def squeezed_2d(spec, modes, cutoff, terms=None):
    """2D squeezed state: the 1D expansion with |n> replaced by |nu>_{alpha,beta}.

    With ``terms`` the sum keeps only nu < terms and the state is flagged
    unnormalized; otherwise the truncation at ``cutoff`` must be converged.
    """
    r = spec.squeeze_modulus
    if terms is None and r >= MAX_SQUEEZE:
        raise ConvergenceError(
            f"squeeze modulus {r} >= {MAX_SQUEEZE} needs an explicit 'terms' truncation"
        )
    state, block_w = expansion_2d(
        spec.canonical_z, spec.canonical_gamma, modes, cutoff, terms, scale=_prefactor(spec)
    )
    meta = {
        "construction": "squeezed_2d",
        "spec": spec,
        "modes": modes,
        "terms": terms,
    }
    if terms is None:
        tail = _check_tail(block_w, cutoff, spec, "squeezed_2d")
        norm = float(np.sqrt(block_w.sum()))
        if abs(norm - 1.0) > NORM_TOL_2D:
            raise ConvergenceError(
                f"squeezed_2d norm {norm!r} differs from 1 by more than {NORM_TOL_2D}"
            )
        meta["leakage"] = tail
        return StateVector2D(cutoff, state.coeffs, metadata=meta)
    meta["norm"] = float(np.sqrt(block_w.sum()))
    return StateVector2D(cutoff, state.coeffs, unnormalized=True, metadata=meta)


def _quadratic_creation(state, modes, cross_factor):
    """(alpha^2 a_x+^2 + beta^2 a_y+^2 + cross_factor alpha beta a_x+ a_y+) |state>."""
    a, b = modes.alpha, modes.beta
    xx, _ = apply_ladder("x+", apply_ladder("x+", state)[0])
    yy, _ = apply_ladder("y+", apply_ladder("y+", state)[0])
    xy, _ = apply_ladder("x+", apply_ladder("y+", state)[0])
    return a**2 * xx + b**2 * yy + (cross_factor * a * b) * xy


def squeezed_vacuum_exponential(spec, modes, cutoff, cross_factor=2.0):
    """S(Xi)|0,0> via its disentangled form.

    (cosh R)^{-1/2} exp[(e^{i Theta}/2) tanh R (A+)^2] |0,0>, with (A+)^2
    expanded in the 1D ladders.  The a_x+ a_y+ coefficient of (A+)^2 is
    2 alpha beta; ``cross_factor`` exists so the alternative reading with
    coefficient 1 can be tested against it.
    """
    r = spec.squeeze_modulus
    if r >= MAX_SQUEEZE:
        raise ConvergenceError(f"squeeze modulus {r} >= {MAX_SQUEEZE}")
    if spec.displacement != 0:
        raise UsageError("squeezed_vacuum_exponential builds the undisplaced state; pass displacement 0")
    c = 0.5 * np.exp(1j * spec.squeeze_phase) * np.tanh(r)
    term = StateVector2D.basis(0, 0, cutoff)
    total = term
    for k in range(1, cutoff // 2 + 1):
        # the k-th term lives entirely on level nu = 2k
        term = (c / k) * _quadratic_creation(term, modes, cross_factor)
        total = total + term
    total = np.cosh(r) ** -0.5 * total
    weights = total.level_weights()
    tail = float(np.sum(weights[-TAIL_LEVELS:]))
    if tail >= TAIL_WEIGHT:
        need = suggest_cutoff(spec, start=cutoff)
        raise ConvergenceError(
            f"squeezed_vacuum_exponential: top {TAIL_LEVELS} levels carry {tail:.3g}; "
            f"use cutoff >= {need}",
            suggested_cutoff=need,
        )
    return total.replace(
        metadata={
            "construction": "squeezed_vacuum_exponential",
            "spec": spec,
            "modes": modes,
            "cross_factor": cross_factor,
            "leakage": tail,
        }
    )


def eigen_residual(state, z, gamma, modes=None):
    """|| (a + gamma a+) s - z s || on the insulated block nu <= cutoff // 2.

    For 2D states ``modes`` selects the generalized pair A-+ in place of a-+.
    """
    max_nu = state.cutoff // 2
    if isinstance(state, StateVector1D):
        if modes is not None:
            raise UsageError("modes only apply to 2D states")
        low, _ = apply_ladder("-", state)
        up, _ = apply_ladder("+", state)
        k = max_nu + 1
    else:
        if modes is None:
            raise UsageError("2D residual needs the ModePair of the generalized ladder")
        low, _ = apply_generalized("-", modes, state)
        up, _ = apply_generalized("+", modes, state)
        k = basis_size_2d(max_nu)
    res = low.coeffs + gamma * up.coeffs - z * state.coeffs
    return float(np.linalg.norm(res[:k]))


# -- operator-built oracles ------------------------------------------------------


def squeezed_1d_oracle(spec, cutoff):
    """D(psi) S(xi)|0> from dense matrix exponentials of the truncated generators."""
    vac = np.zeros(cutoff + 1, dtype=np.complex128)
    vac[0] = 1.0
    s = matrix_exponential(squeeze_generator(spec, cutoff))
    d = matrix_exponential(displacement_generator(spec.displacement, cutoff))
    return StateVector1D(
        cutoff, d.entries @ (s.entries @ vac), metadata={"construction": "squeezed_1d_oracle", "spec": spec}
    )


def squeezed_2d_oracle(spec, modes, cutoff):
    """D(Psi) S(Xi)|0,0> with the generalized ladder operators.

    The exponentials act on the vacuum through sparse exp-times-vector
    products; dense matrices at 2D cutoffs above ~60 do not fit in memory.
    """
    vec = StateVector2D.basis(0, 0, cutoff).coeffs
    vec = expm_action(squeeze_generator(spec, cutoff, modes, sparse=True), vec)
    vec = expm_action(displacement_generator(spec.displacement, cutoff, modes, sparse=True), vec)
    return StateVector2D(
        cutoff, vec, metadata={"construction": "squeezed_2d_oracle", "spec": spec, "modes": modes}
    )


def su2_coherent_recursive(nu, modes, cutoff):
    """|nu>_{alpha,beta} = (A+)^nu |0,0> / sqrt(nu!), built by repeated A+."""
    state = StateVector2D.basis(0, 0, cutoff)
    for k in range(nu):
        state, _ = apply_generalized("+", modes, state)
        state = state * (1.0 / np.sqrt(k + 1))
    return state
