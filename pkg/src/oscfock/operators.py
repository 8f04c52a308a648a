"""
Ladder, generalized-ladder and quadrature operators on the truncated basis.

Operators are available two ways: as direct actions on state vectors
(:func:`apply_ladder`, :func:`apply_generalized`) and as matrices
(:func:`build_matrix`).  Raising operators push the top block nu = cutoff out
of the truncated space; the dropped weight is returned as ``leakage``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import ConvergenceError, DomainError, NumericError, UsageError
from .fock import (
    ModePair,
    StateVector1D,
    StateVector2D,
    basis_labels,
    basis_size_2d,
)

SQRT2 = np.sqrt(2.0)


# -- direct actions -------------------------------------------------------------


def _shift(mat, axis, sign):
    """Ladder action on an amplitude array along ``axis`` (no truncation)."""
    out = np.zeros_like(mat)
    size = mat.shape[axis]
    root = np.sqrt(np.arange(1, size))
    shape = [1] * mat.ndim
    shape[axis] = size - 1
    root = root.reshape(shape)
    lo = [slice(None)] * mat.ndim
    hi = [slice(None)] * mat.ndim
    lo[axis] = slice(0, size - 1)
    hi[axis] = slice(1, size)
    if sign == "-":
        out[tuple(lo)] = root * mat[tuple(hi)]
    else:
        out[tuple(hi)] = root * mat[tuple(lo)]
    return out


def _parse_which(which, state):
    which = which.replace("a_", "").replace("a", "")
    if isinstance(state, StateVector1D):
        if which not in ("+", "-"):
            raise UsageError(f"1D ladder must be '+' or '-', got {which!r}")
        return None, which
    if len(which) != 2 or which[0] not in "xy" or which[1] not in "+-":
        raise UsageError(f"2D ladder must be one of x+, x-, y+, y-, got {which!r}")
    return "xy".index(which[0]), which[1]


def _combine(state, terms, extend):
    """Sum of weighted ladder actions, truncated back to the state's cutoff.

    ``terms`` is a list of ``(coefficient, axis, sign)``.  With ``extend`` the
    result lives at cutoff+1 and nothing is dropped; the reported leakage is
    then the weight that a non-extended application would have lost.
    """
    top = state.cutoff + 1
    if isinstance(state, StateVector1D):
        vec = np.zeros(top + 1, dtype=np.complex128)
        vec[: state.dim] = state.coeffs
        out = sum(c * _shift(vec, 0, sign) for c, _, sign in terms)
        leakage = float(abs(out[top]) ** 2)
        if extend:
            return StateVector1D(top, out, metadata=state.metadata), leakage
        return state.replace(out[:top]), leakage

    mat = state.as_matrix(size=top + 1)
    out = sum(c * _shift(mat, axis, sign) for c, axis, sign in terms)
    idx = np.arange(top + 1)
    leakage = float(np.sum(np.abs(out[idx, top - idx]) ** 2))
    if extend:
        return StateVector2D.from_matrix(out, top, metadata=state.metadata), leakage
    return state.replace(StateVector2D.from_matrix(out, state.cutoff).coeffs), leakage


def apply_ladder(which, state, extend=False):
    """Apply a_x+-, a_y+- (2D, ``which`` like ``"x-"``) or a+- (1D, ``"+"``/``"-"``).

    Returns ``(new_state, leakage)``.
    """
    axis, sign = _parse_which(which, state)
    return _combine(state, [(1.0, axis or 0, sign)], extend)


def apply_generalized(sign, modes, state, extend=False):
    """Apply A+ = alpha a_x+ + beta a_y+ or A- = conj(alpha) a_x- + conj(beta) a_y-."""
    if sign not in ("+", "-"):
        raise UsageError(f"sign must be '+' or '-', got {sign!r}")
    if not isinstance(state, StateVector2D):
        raise UsageError("generalized ladder operators act on 2D states")
    a, b = modes.alpha, modes.beta
    if sign == "-":
        a, b = np.conj(a), np.conj(b)
    return _combine(state, [(a, 0, sign), (b, 1, sign)], extend)


def apply_quadrature(quadrature, state, extend=True):
    """Apply X, Px (or P in 1D), Y, Py; returns ``(new_state, leakage)``."""
    q = quadrature.upper()
    if isinstance(state, StateVector1D):
        axis = 0
        q = {"PX": "P"}.get(q, q)
        if q not in ("X", "P"):
            raise UsageError(f"1D quadrature must be X or P, got {quadrature!r}")
        kind = q
    else:
        table = {"X": (0, "X"), "PX": (0, "P"), "Y": (1, "X"), "PY": (1, "P")}
        if q not in table:
            raise UsageError(f"quadrature must be X, Px, Y or Py, got {quadrature!r}")
        axis, kind = table[q]
    if kind == "X":
        terms = [(1 / SQRT2, axis, "+"), (1 / SQRT2, axis, "-")]
    else:
        # (a - a+) / (sqrt2 i)
        terms = [(-1j / SQRT2, axis, "-"), (1j / SQRT2, axis, "+")]
    return _combine(state, terms, extend)


# -- matrices -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Matrix of an operator on the truncated basis.

    ``entries`` is a dense ndarray, or a scipy sparse matrix when built with
    ``sparse=True`` for large oracle computations.
    """

    entries: object
    cutoff: int
    label: str
    kind: str = "fock2d"

    @property
    def dim(self):
        return self.entries.shape[0]

    @property
    def is_sparse(self):
        return scipy.sparse.issparse(self.entries)

    def dense(self):
        return self.entries.toarray() if self.is_sparse else np.asarray(self.entries)

    def dag(self):
        return OperatorMatrix(self.entries.conj().T, self.cutoff, f"({self.label})^dag", self.kind)

    def _wrap(self, entries, label):
        return OperatorMatrix(entries, self.cutoff, label, self.kind)

    def _other(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other.cutoff != self.cutoff or other.kind != self.kind:
            raise UsageError("operators built on different truncations")
        return other.entries

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return self._wrap(self.entries @ self._other(other), f"{self.label}*{other.label}")
        return self.entries @ other

    def __add__(self, other):
        return self._wrap(self.entries + self._other(other), f"{self.label}+{other.label}")

    def __sub__(self, other):
        return self._wrap(self.entries - self._other(other), f"{self.label}-{other.label}")

    def __mul__(self, scalar):
        return self._wrap(self.entries * scalar, self.label)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


def _ladder_coo(cutoff, axis, sign):
    """Row, column and value arrays of a 2D ladder matrix."""
    ns, ms, _ = basis_labels(cutoff)
    occ = ns if axis == 0 else ms
    if sign == "-":
        keep = occ > 0
        val = np.sqrt(occ[keep])
        dn, dm = (-1, 0) if axis == 0 else (0, -1)
    else:
        keep = ns + ms < cutoff
        val = np.sqrt(occ[keep] + 1.0)
        dn, dm = (1, 0) if axis == 0 else (0, 1)
    cols = np.nonzero(keep)[0]
    tn, tm = ns[keep] + dn, ms[keep] + dm
    nu = tn + tm
    rows = nu * (nu + 1) // 2 + tn
    return rows, cols, val


def _ladder_sparse(cutoff, axis, sign):
    rows, cols, val = _ladder_coo(cutoff, axis, sign)
    d = basis_size_2d(cutoff)
    return scipy.sparse.csr_matrix((val.astype(np.complex128), (rows, cols)), shape=(d, d))


_LABELS_2D = ("a_x-", "a_x+", "a_y-", "a_y+", "A-", "A+", "X", "Px", "Y", "Py", "N", "I")
_LABELS_1D = ("a-", "a+", "X", "P", "N", "I")


def build_matrix(label, cutoff, modes=None, sparse=False):
    """Matrix of a 2D operator.

    Labels: ``a_x-, a_x+, a_y-, a_y+, A-, A+, X, Px, Y, Py, N`` (total
    number) and ``I``.  ``A+-`` need ``modes``.
    """
    if cutoff < 0:
        raise DomainError(f"cutoff must be >= 0, got {cutoff}")
    d = basis_size_2d(cutoff)
    lad = {
        (ax, s): _ladder_sparse(cutoff, i, s)
        for i, ax in enumerate("xy")
        for s in "+-"
        if label not in ("N", "I")
    }
    if label.startswith("a_") and label in _LABELS_2D:
        m = lad[(label[2], label[3])]
    elif label in ("A+", "A-"):
        if modes is None:
            raise UsageError(f"{label} needs a ModePair")
        a, b = modes.alpha, modes.beta
        if label == "A-":
            m = np.conj(a) * lad[("x", "-")] + np.conj(b) * lad[("y", "-")]
        else:
            m = a * lad[("x", "+")] + b * lad[("y", "+")]
    elif label in ("X", "Y"):
        ax = label.lower()
        m = (lad[(ax, "+")] + lad[(ax, "-")]) / SQRT2
    elif label in ("Px", "Py"):
        ax = label[1]
        m = (lad[(ax, "-")] - lad[(ax, "+")]) / (SQRT2 * 1j)
    elif label == "N":
        _, _, nus = basis_labels(cutoff)
        m = scipy.sparse.diags(nus.astype(np.complex128), format="csr")
    elif label == "I":
        m = scipy.sparse.identity(d, dtype=np.complex128, format="csr")
    else:
        raise UsageError(f"unknown operator label {label!r}; expected one of {_LABELS_2D}")
    m = scipy.sparse.csr_matrix(m)
    return OperatorMatrix(m if sparse else m.toarray(), cutoff, label)


def build_matrix_1d(label, cutoff, sparse=False):
    """Matrix of a single-mode operator: ``a-, a+, X, P, N, I``."""
    if cutoff < 0:
        raise DomainError(f"cutoff must be >= 0, got {cutoff}")
    lower = scipy.sparse.diags(np.sqrt(np.arange(1, cutoff + 1, dtype=np.complex128)), 1)
    raise_ = lower.T
    table = {
        "a-": lower,
        "a+": raise_,
        "X": (lower + raise_) / SQRT2,
        "P": (lower - raise_) / (SQRT2 * 1j),
        "N": scipy.sparse.diags(np.arange(cutoff + 1, dtype=np.complex128)),
        "I": scipy.sparse.identity(cutoff + 1, dtype=np.complex128),
    }
    if label not in table:
        raise UsageError(f"unknown 1D operator label {label!r}; expected one of {_LABELS_1D}")
    m = scipy.sparse.csr_matrix(table[label])
    return OperatorMatrix(m if sparse else m.toarray(), cutoff, label, kind="fock1d")


def commutator(a, b):
    return a @ b - b @ a


def insulated_count(max_nu, kind="fock2d"):
    """Number of leading canonical indices with total quanta <= max_nu."""
    return max_nu + 1 if kind == "fock1d" else basis_size_2d(max_nu)


def displacement_generator(displacement, cutoff, modes=None, sparse=False):
    """Psi A+ - conj(Psi) A- (2D, with ``modes``) or psi a+ - conj(psi) a- (1D)."""
    if modes is None:
        up, down = build_matrix_1d("a+", cutoff, sparse), build_matrix_1d("a-", cutoff, sparse)
    else:
        up = build_matrix("A+", cutoff, modes, sparse)
        down = build_matrix("A-", cutoff, modes, sparse)
    g = up * displacement - down * np.conj(displacement)
    return OperatorMatrix(g.entries, cutoff, "D-generator", g.kind)


def squeeze_generator(spec, cutoff, modes=None, sparse=False):
    """(xi (A+)^2 - conj(xi) (A-)^2) / 2, or its 1D counterpart when ``modes`` is None."""
    xi = spec.xi if hasattr(spec, "xi") else complex(spec)
    if modes is None:
        up, down = build_matrix_1d("a+", cutoff, sparse), build_matrix_1d("a-", cutoff, sparse)
    else:
        up = build_matrix("A+", cutoff, modes, sparse)
        down = build_matrix("A-", cutoff, modes, sparse)
    g = ((up @ up) * xi - (down @ down) * np.conj(xi)) * 0.5
    return OperatorMatrix(g.entries, cutoff, "S-generator", g.kind)


def matrix_exponential(m):
    """Dense exp(m) by scaling and squaring with Pade approximants."""
    entries = m.dense() if isinstance(m, OperatorMatrix) else np.asarray(m)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise UsageError(f"matrix exponential needs a square matrix, got shape {entries.shape}")
    if not np.all(np.isfinite(entries)):
        raise NumericError("matrix has non-finite entries")
    out = scipy.linalg.expm(entries)
    if not np.all(np.isfinite(out)):
        raise NumericError("matrix exponential overflowed")
    if isinstance(m, OperatorMatrix):
        return OperatorMatrix(out, m.cutoff, f"exp({m.label})", m.kind)
    return out


def expm_action(m, vector):
    """exp(m) @ vector without forming exp(m); for large sparse generators."""
    entries = m.entries if isinstance(m, OperatorMatrix) else m
    vector = np.asarray(vector, dtype=np.complex128)
    if scipy.sparse.issparse(entries):
        bad = not np.all(np.isfinite(entries.data))
    else:
        bad = not np.all(np.isfinite(entries))
    if bad or not np.all(np.isfinite(vector)):
        raise NumericError("non-finite input to expm_action")
    return scipy.sparse.linalg.expm_multiply(entries, vector)


# -- Bogoliubov transformation ---------------------------------------------------


@dataclass(frozen=True)
class BogoliubovReport:
    residual: float  # S^dag a S versus the closed form, max entrywise
    residual_adjoint: float  # same for the raising partner
    max_nu: int  # insulated block used for the comparison
    cutoff: int
    which: str


BOGOLIUBOV_TAIL = 1e-6


def _spread_factor(modulus):
    # squeezing |nu> reaches about nu cosh 2R + 3 sigma, sigma ~ nu sinh 2R / sqrt 2
    return np.cosh(2 * modulus) + 3 * np.sinh(2 * modulus) / SQRT2


def _tail_levels(modulus):
    # squeezed-vacuum amplitudes fall off like tanh(R)^(nu/2): levels until BOGOLIUBOV_TAIL
    if modulus == 0:
        return 0.0
    return 2 * np.log(BOGOLIUBOV_TAIL) / np.log(np.tanh(modulus))


def bogoliubov_min_cutoff(modulus, max_nu):
    """Smallest cutoff for which block ``max_nu`` is insulated at squeeze ``modulus``.

    The larger of two estimates: the Gaussian-like spread of a squeezed
    level nu, and its mean position plus the geometric tail of the
    squeezed vacuum (which dominates for small ``max_nu`` at large R).
    """
    spread = _spread_factor(modulus) * max_nu
    tail = np.cosh(2 * modulus) * max_nu + _tail_levels(modulus)
    return int(np.ceil(max(spread, tail) + np.sinh(modulus) ** 2))


def bogoliubov_rhs(modes, spec, cutoff, which="x", sparse=False):
    """Closed-form S^dag a_i- S and S^dag a_i+ S for i = ``which``.

    For i = x:
        S^dag a_x- S = (|b|^2 + |a|^2 ch) a_x- + a conj(b) (ch - 1) a_y-
                       + e^{i Theta} sh (a^2 a_x+ + a b a_y+)
    with (a, b) = (alpha, beta), ch = cosh R, sh = sinh R.  The y form swaps
    the roles of the two modes.  The raising partner is the adjoint.
    """
    a, b = modes.alpha, modes.beta
    axes = ("x", "y")
    if which == "y":
        a, b = b, a
        axes = ("y", "x")
    elif which != "x":
        raise UsageError(f"which must be 'x' or 'y', got {which!r}")
    ch, sh = np.cosh(spec.squeeze_modulus), np.sinh(spec.squeeze_modulus)
    ph = np.exp(1j * spec.squeeze_phase)
    own_m = build_matrix(f"a_{axes[0]}-", cutoff, sparse=sparse)
    own_p = build_matrix(f"a_{axes[0]}+", cutoff, sparse=sparse)
    oth_m = build_matrix(f"a_{axes[1]}-", cutoff, sparse=sparse)
    oth_p = build_matrix(f"a_{axes[1]}+", cutoff, sparse=sparse)
    lower = (
        own_m * (abs(b) ** 2 + abs(a) ** 2 * ch)
        + oth_m * (a * np.conj(b) * (ch - 1))
        + (own_p * a**2 + oth_p * (a * b)) * (ph * sh)
    )
    return lower, lower.dag()


def bogoliubov_check(modes, spec, cutoff, which="x", max_nu=None):
    """Compare S^dag a_i+- S, with S = exp(squeeze generator), to the closed form.

    Residuals are max entrywise deviations over the insulated block
    nu <= max_nu (default cutoff // 2).  Squeezing spreads a level nu over
    roughly nu cosh 2R +- 3 nu sinh 2R / sqrt 2, so the default block is only
    insulated for R up to about 0.2; pass a smaller ``max_nu`` beyond that.
    The guard :func:`bogoliubov_min_cutoff` is an estimate, not a bound.
    """
    r = spec.squeeze_modulus
    if r > 1.0:
        raise DomainError(f"bogoliubov_check supports squeeze modulus <= 1, got {r}")
    max_nu = cutoff // 2 if max_nu is None else int(max_nu)
    need = bogoliubov_min_cutoff(r, max_nu)
    if cutoff < need:
        raise ConvergenceError(
            f"cutoff {cutoff} leaves block nu <= {max_nu} exposed to truncation at "
            f"squeeze modulus {r}; use cutoff >= {need} or a smaller max_nu",
            suggested_cutoff=need,
        )
    k = insulated_count(max_nu)
    # only the insulated columns S E_k enter the compared block; they come from
    # the exponential's action on the first k basis vectors, never forming S
    gen = squeeze_generator(spec, cutoff, modes, sparse=True)
    s_cols = expm_action(gen, np.eye(gen.dim, k))
    lower_rhs, upper_rhs = bogoliubov_rhs(modes, spec, cutoff, which, sparse=True)
    lower_lhs = s_cols.conj().T @ (build_matrix(f"a_{which}-", cutoff, sparse=True).entries @ s_cols)
    upper_lhs = s_cols.conj().T @ (build_matrix(f"a_{which}+", cutoff, sparse=True).entries @ s_cols)

    def dev(lhs, rhs):
        return float(np.max(np.abs(lhs - rhs.entries.tocsr()[:k, :k].toarray())))

    return BogoliubovReport(
        residual=dev(lower_lhs, lower_rhs),
        residual_adjoint=dev(upper_lhs, upper_rhs),
        max_nu=max_nu,
        cutoff=cutoff,
        which=which,
    )


__all__ = [
    "BogoliubovReport",
    "ModePair",
    "OperatorMatrix",
    "apply_generalized",
    "apply_ladder",
    "apply_quadrature",
    "bogoliubov_check",
    "bogoliubov_min_cutoff",
    "bogoliubov_rhs",
    "build_matrix",
    "build_matrix_1d",
    "commutator",
    "displacement_generator",
    "expm_action",
    "insulated_count",
    "matrix_exponential",
    "squeeze_generator",
]
