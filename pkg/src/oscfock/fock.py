"""
Truncated Fock-space states for the 1D and isotropic 2D oscillator.

1D states hold amplitudes of |n> for n = 0..cutoff.  2D states hold
amplitudes of |n,m> with total quanta nu = n+m <= cutoff, stored in a
nu-major order: all pairs with nu = 0, then nu = 1, ..., and within one
block ascending n.  With that order the pair (n, m) lives at

    k = nu (nu + 1) / 2 + n,

so every degenerate level is a contiguous slice of the coefficient vector.
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DegenerateStateError, DimensionError, DomainError

NORMALIZED_TOL = 1e-12


def basis_size_2d(cutoff):
    return (cutoff + 1) * (cutoff + 2) // 2


def encode_index(n, m, cutoff):
    """Linear index of |n,m> in the nu-major basis truncated at ``cutoff``."""
    n, m, cutoff = int(n), int(m), int(cutoff)
    if n < 0:
        raise DomainError(f"n must be >= 0, got n={n}")
    if m < 0:
        raise DomainError(f"m must be >= 0, got m={m}")
    if n + m > cutoff:
        raise DomainError(f"n+m must be <= cutoff={cutoff}, got n+m={n + m}")
    nu = n + m
    return nu * (nu + 1) // 2 + n


def decode_index(k, cutoff):
    """Inverse of :func:`encode_index`; returns ``(n, m)``."""
    k, cutoff = int(k), int(cutoff)
    if not 0 <= k < basis_size_2d(cutoff):
        raise DomainError(
            f"index must lie in [0, {basis_size_2d(cutoff)}) for cutoff={cutoff}, got {k}"
        )
    nu = int((np.sqrt(8 * k + 1) - 1) // 2)
    # guard against rounding in the square root
    while nu * (nu + 1) // 2 > k:
        nu -= 1
    while (nu + 1) * (nu + 2) // 2 <= k:
        nu += 1
    n = k - nu * (nu + 1) // 2
    return n, nu - n


@lru_cache(maxsize=64)
def _basis_arrays(cutoff):
    nus = np.repeat(np.arange(cutoff + 1), np.arange(1, cutoff + 2))
    starts = nus * (nus + 1) // 2
    ns = np.arange(basis_size_2d(cutoff)) - starts
    ms = nus - ns
    for a in (ns, ms, nus):
        a.setflags(write=False)
    return ns, ms, nus


def basis_labels(cutoff):
    """Arrays ``(n, m, nu)`` listing the basis in canonical order."""
    return _basis_arrays(int(cutoff))


def block_slice(nu):
    """Slice of the canonical vector holding the degenerate level ``nu``."""
    start = nu * (nu + 1) // 2
    return slice(start, start + nu + 1)


@dataclass(frozen=True, eq=False)
class _State:
    cutoff: int
    coeffs: np.ndarray
    unnormalized: bool = False
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if int(self.cutoff) < 0:
            raise DomainError(f"cutoff must be >= 0, got {self.cutoff}")
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.shape[0] != self.dim:
            raise DimensionError(
                f"{type(self).__name__} with cutoff {self.cutoff} needs {self.dim} "
                f"coefficients, got shape {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "cutoff", int(self.cutoff))
        object.__setattr__(self, "coeffs", c)

    @property
    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    @property
    def is_normalized(self):
        return abs(self.norm - 1.0) <= NORMALIZED_TOL

    def replace(self, coeffs=None, **changes):
        meta = dict(self.metadata)
        meta.update(changes.pop("metadata", {}))
        return type(self)(
            cutoff=changes.pop("cutoff", self.cutoff),
            coeffs=self.coeffs if coeffs is None else coeffs,
            unnormalized=changes.pop("unnormalized", self.unnormalized),
            metadata=meta,
        )

    def __mul__(self, scalar):
        return self.replace(np.complex128(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __add__(self, other):
        _check_compatible(self, other)
        return self.replace(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_compatible(self, other)
        return self.replace(self.coeffs - other.coeffs)


@dataclass(frozen=True, eq=False)
class StateVector1D(_State):
    """Amplitudes of |0>, ..., |cutoff> for one oscillator mode."""

    kind = "fock1d"

    @property
    def dim(self):
        return int(self.cutoff) + 1

    @classmethod
    def basis(cls, n, cutoff):
        if not 0 <= n <= cutoff:
            raise DomainError(f"level {n} outside 0..{cutoff}")
        c = np.zeros(cutoff + 1, dtype=np.complex128)
        c[n] = 1.0
        return cls(cutoff, c)

    def padded(self, cutoff):
        """The same vector embedded in a larger truncation."""
        if cutoff < self.cutoff:
            raise DimensionError(f"cannot pad cutoff {self.cutoff} down to {cutoff}")
        c = np.zeros(cutoff + 1, dtype=np.complex128)
        c[: self.dim] = self.coeffs
        return self.replace(c, cutoff=cutoff)

    def level_weights(self):
        return np.abs(self.coeffs) ** 2


@dataclass(frozen=True, eq=False)
class StateVector2D(_State):
    """Amplitudes of |n,m>, n+m <= cutoff, in nu-major canonical order."""

    kind = "fock2d"

    @property
    def dim(self):
        return basis_size_2d(int(self.cutoff))

    @classmethod
    def basis(cls, n, m, cutoff):
        c = np.zeros(basis_size_2d(cutoff), dtype=np.complex128)
        c[encode_index(n, m, cutoff)] = 1.0
        return cls(cutoff, c)

    @classmethod
    def from_matrix(cls, mat, cutoff, **kwargs):
        """Build from a square array ``mat[n, m]``; entries with n+m > cutoff are ignored."""
        ns, ms, _ = basis_labels(cutoff)
        return cls(cutoff, np.asarray(mat)[ns, ms], **kwargs)

    def as_matrix(self, size=None):
        """Amplitudes arranged as ``mat[n, m]`` (zero where n+m > cutoff)."""
        size = self.cutoff + 1 if size is None else size
        if size < self.cutoff + 1:
            raise DimensionError(f"matrix size {size} too small for cutoff {self.cutoff}")
        ns, ms, _ = basis_labels(self.cutoff)
        mat = np.zeros((size, size), dtype=np.complex128)
        mat[ns, ms] = self.coeffs
        return mat

    def padded(self, cutoff):
        if cutoff < self.cutoff:
            raise DimensionError(f"cannot pad cutoff {self.cutoff} down to {cutoff}")
        c = np.zeros(basis_size_2d(cutoff), dtype=np.complex128)
        c[: self.dim] = self.coeffs
        return self.replace(c, cutoff=cutoff)

    def level_weights(self):
        """Weight carried by each degenerate level nu = 0..cutoff."""
        _, _, nus = basis_labels(self.cutoff)
        return np.bincount(nus, weights=np.abs(self.coeffs) ** 2, minlength=self.cutoff + 1)


def _check_compatible(a, b):
    if type(a) is not type(b):
        raise DimensionError(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if a.cutoff != b.cutoff:
        raise DimensionError(f"cutoff mismatch: {a.cutoff} vs {b.cutoff}")


def inner_product(a, b):
    """<a|b>, antilinear in the first argument."""
    _check_compatible(a, b)
    return complex(np.vdot(a.coeffs, b.coeffs))


def norm(state):
    return float(np.sqrt(inner_product(state, state).real))


def normalize(state):
    """Unit-norm copy; the original norm is kept under ``metadata['prenorm']``."""
    nrm = norm(state)
    if nrm == 0.0:
        raise DegenerateStateError("cannot normalize the zero vector")
    return state.replace(state.coeffs / nrm, unnormalized=False, metadata={"prenorm": nrm})


def overlap_modulus(a, b):
    """|<a|b>| for two states of possibly different cutoffs (smaller one is padded)."""
    if a.cutoff < b.cutoff:
        a = a.padded(b.cutoff)
    elif b.cutoff < a.cutoff:
        b = b.padded(a.cutoff)
    return abs(inner_product(a, b))


@dataclass(frozen=True)
class ModePair:
    """Coefficients (alpha, beta) of the generalized ladder operators.

    ``A+ = alpha a_x+ + beta a_y+`` and ``A- = conj(alpha) a_x- + conj(beta) a_y-``.
    """

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        total = abs(a) ** 2 + abs(b) ** 2
        if abs(total - 1.0) > 1e-12:
            raise DomainError(
                f"|alpha|^2 + |beta|^2 must equal 1 (got {total!r}); use ModePair.rescaled"
            )

    @classmethod
    def rescaled(cls, alpha, beta):
        """Normalize an arbitrary non-zero pair. Returns ``(pair, factor)``."""
        total = abs(complex(alpha)) ** 2 + abs(complex(beta)) ** 2
        if total == 0.0:
            raise DomainError("alpha and beta cannot both vanish")
        factor = 1.0 / np.sqrt(total)
        return cls(alpha * factor, beta * factor), float(factor)

    @classmethod
    def polar(cls, alpha_mod, alpha_arg, beta_mod, beta_arg):
        return cls(alpha_mod * np.exp(1j * alpha_arg), beta_mod * np.exp(1j * beta_arg))

    def swapped(self):
        return ModePair(self.beta, self.alpha)

    def orthogonal(self):
        """The pair (conj(beta), -conj(alpha)), whose SU(2) states are orthogonal to ours for nu > 0."""
        return ModePair(np.conj(self.beta), -np.conj(self.alpha))


def canonical_parameters(displacement, modulus, phase):
    """Map (psi, r, theta) to the eigenvalue-equation pair (z, gamma)."""
    e = np.exp(1j * phase) * np.tanh(modulus)
    gamma = -e
    z = displacement - np.conj(displacement) * e
    return complex(z), complex(gamma)


@dataclass(frozen=True)
class SqueezeSpec:
    """Displacement psi and squeeze xi = r e^{i theta}, with the derived (z, gamma).

    Used for both the 1D parameters (psi, r, theta) and their 2D counterparts
    (Psi, R, Theta).
    """

    displacement: complex = 0j
    squeeze_modulus: float = 0.0
    squeeze_phase: float = 0.0

    def __post_init__(self):
        r = float(self.squeeze_modulus)
        if not np.isfinite(r) or r < 0:
            raise DomainError(f"squeeze modulus must be finite and >= 0, got {r}")
        phase = float(self.squeeze_phase) % (2 * np.pi)
        object.__setattr__(self, "displacement", complex(self.displacement))
        object.__setattr__(self, "squeeze_modulus", r)
        object.__setattr__(self, "squeeze_phase", phase)

    @classmethod
    def from_xi(cls, displacement, xi):
        return cls(displacement, abs(xi), float(np.angle(xi)))

    @classmethod
    def from_canonical(cls, z, modulus, phase):
        """Spec whose eigenvalue parameter equals ``z`` at the given squeeze."""
        e = np.exp(1j * phase) * np.tanh(modulus)
        psi = (z + e * np.conj(z)) / (1.0 - abs(e) ** 2)
        return cls(psi, modulus, phase)

    @property
    def xi(self):
        return self.squeeze_modulus * np.exp(1j * self.squeeze_phase)

    @property
    def canonical_z(self):
        return canonical_parameters(self.displacement, self.squeeze_modulus, self.squeeze_phase)[0]

    @property
    def canonical_gamma(self):
        return canonical_parameters(self.displacement, self.squeeze_modulus, self.squeeze_phase)[1]

    def to_dict(self):
        return {
            "displacement": [self.displacement.real, self.displacement.imag],
            "squeeze_modulus": self.squeeze_modulus,
            "squeeze_phase": self.squeeze_phase,
            "canonical_z": [self.canonical_z.real, self.canonical_z.imag],
            "canonical_gamma": [self.canonical_gamma.real, self.canonical_gamma.imag],
        }


# -- JSON serialization -------------------------------------------------------

_KINDS = {"fock1d": StateVector1D, "fock2d": StateVector2D}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, (ModePair,)):
        return {"alpha": _jsonable(obj.alpha), "beta": _jsonable(obj.beta)}
    if isinstance(obj, SqueezeSpec):
        return obj.to_dict()
    return obj


def state_to_dict(state):
    return {
        "kind": state.kind,
        "cutoff": state.cutoff,
        "coeffs": [[float(c.real), float(c.imag)] for c in state.coeffs],
        "unnormalized": bool(state.unnormalized),
        "metadata": _jsonable(state.metadata),
    }


def state_from_dict(data):
    try:
        cls = _KINDS[data["kind"]]
    except KeyError:
        raise DomainError(f"unknown state kind {data.get('kind')!r}") from None
    pairs = np.asarray(data["coeffs"], dtype=float).reshape(-1, 2)
    return cls(
        cutoff=int(data["cutoff"]),
        coeffs=pairs[:, 0] + 1j * pairs[:, 1],
        unnormalized=bool(data.get("unnormalized", False)),
        metadata=dict(data.get("metadata", {})),
    )


def dumps_state(state, indent=None):
    # float repr is the shortest string that round-trips to the same double
    return json.dumps(state_to_dict(state), indent=indent, allow_nan=False)


def loads_state(text):
    return state_from_dict(json.loads(text))


def save_state(state, path):
    with open(path, "w") as fh:
        fh.write(dumps_state(state))
        fh.write("\n")


def load_state(path):
    with open(path) as fh:
        return loads_state(fh.read())
