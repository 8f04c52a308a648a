import numpy as np
import pytest
from scipy.linalg import expm

from oscfock import (
    ConvergenceError,
    DomainError,
    ModePair,
    NumericError,
    SqueezeSpec,
    StateVector1D,
    StateVector2D,
    UsageError,
    apply_generalized,
    apply_ladder,
    bogoliubov_check,
    build_matrix,
    build_matrix_1d,
    matrix_exponential,
)
from oscfock.fock import basis_size_2d, encode_index
from oscfock.operators import (
    OperatorMatrix,
    apply_quadrature,
    bogoliubov_min_cutoff,
    commutator,
    expm_action,
    insulated_count,
    squeeze_generator,
)

LABELS_2D = ["a_x-", "a_x+", "a_y-", "a_y+", "X", "Px", "Y", "Py", "N", "I"]


def test_ladder_examples_2d():
    s, leak = apply_ladder("x+", StateVector2D.basis(1, 0, 4))
    assert s.coeffs[encode_index(2, 0, 4)] == pytest.approx(np.sqrt(2))
    assert leak == 0.0
    s, _ = apply_ladder("y-", StateVector2D.basis(0, 0, 4))
    assert s.norm == 0.0
    s, leak = apply_ladder("y+", StateVector2D.basis(1, 3, 4))
    assert s.norm == 0.0 and leak == pytest.approx(4.0)


def test_ladder_examples_1d():
    s, _ = apply_ladder("-", StateVector1D.basis(3, 5))
    assert s.coeffs[2] == pytest.approx(np.sqrt(3))
    s, leak = apply_ladder("+", StateVector1D.basis(5, 5), extend=True)
    assert s.cutoff == 6 and s.coeffs[6] == pytest.approx(np.sqrt(6)) and leak == pytest.approx(6.0)
    with pytest.raises(UsageError):
        apply_ladder("x+", StateVector1D.basis(0, 3))


@pytest.mark.parametrize("label", LABELS_2D + ["A-", "A+"])
def test_matrix_matches_direct_action(label, rng, ref_modes):
    cutoff = 6
    c = rng.normal(size=basis_size_2d(cutoff)) + 1j * rng.normal(size=basis_size_2d(cutoff))
    s = StateVector2D(cutoff, c)
    m = build_matrix(label, cutoff, modes=ref_modes)
    if label in ("I", "N"):
        return
    if label.startswith("a_"):
        direct, _ = apply_ladder(label[2:], s)
    elif label.startswith("A"):
        direct, _ = apply_generalized(label[1], ref_modes, s)
    else:
        direct, _ = apply_quadrature(label, s, extend=False)
    assert np.allclose(m.dense() @ c, direct.coeffs, atol=1e-13)


@pytest.mark.parametrize("label", ["X", "Px", "Y", "Py", "N", "I"])
def test_hermitian(label):
    m = build_matrix(label, 8).dense()
    assert np.allclose(m, m.conj().T, atol=1e-15)


def test_sparse_equals_dense(ref_modes):
    for label in LABELS_2D + ["A-", "A+"]:
        d = build_matrix(label, 7, modes=ref_modes)
        s = build_matrix(label, 7, modes=ref_modes, sparse=True)
        assert s.is_sparse
        assert np.allclose(d.dense(), s.dense())


def test_number_operator_diagonal():
    n = build_matrix("N", 5).dense()
    from oscfock.fock import basis_labels

    assert np.allclose(np.diag(n), basis_labels(5)[2])


@pytest.mark.parametrize("pair", [("a_x-", "a_x+"), ("a_y-", "a_y+")])
def test_canonical_commutator_on_insulated_block(pair):
    cutoff = 10
    c = commutator(build_matrix(pair[0], cutoff), build_matrix(pair[1], cutoff)).dense()
    k = insulated_count(cutoff - 1)
    assert np.allclose(c[:k, :k], np.eye(k), atol=1e-13)


def test_generalized_commutator(ref_modes):
    cutoff = 12
    c = commutator(build_matrix("A-", cutoff, modes=ref_modes), build_matrix("A+", cutoff, modes=ref_modes))
    k = insulated_count(cutoff - 1)
    assert np.max(np.abs(c.dense()[:k, :k] - np.eye(k))) < 1e-12


def test_orthogonal_modes_commute():
    m = ModePair(np.sqrt(3) / 2 * 1j, 0.5)
    o = m.orthogonal()
    c = commutator(build_matrix("A-", 9, modes=m), build_matrix("A+", 9, modes=o)).dense()
    k = insulated_count(8)
    assert np.max(np.abs(c[:k, :k])) < 1e-13


def test_unknown_label():
    with pytest.raises(UsageError):
        build_matrix("Q", 3)
    with pytest.raises(UsageError):
        build_matrix_1d("X+", 3)


def test_matrix_exponential_examples():
    assert np.allclose(matrix_exponential(OperatorMatrix(np.zeros((3, 3)), 2, "0", kind="fock1d")).dense(), np.eye(3))
    gen = np.array([[0, -np.pi / 2], [np.pi / 2, 0]])
    rot = matrix_exponential(OperatorMatrix(gen, 1, "rot", kind="fock1d")).dense()
    assert np.allclose(rot, [[0, -1], [1, 0]], atol=1e-15)
    bad = OperatorMatrix(np.array([[np.nan, 0], [0, 0]]), 1, "bad", kind="fock1d")
    with pytest.raises(NumericError):
        matrix_exponential(bad)


def test_expm_routes_agree(ref_modes):
    spec = SqueezeSpec(0, 0.4, 0.3)
    gen = squeeze_generator(spec, 14, ref_modes)
    dense = matrix_exponential(gen).dense()[:, 0]
    sparse = expm_action(squeeze_generator(spec, 14, ref_modes, sparse=True), np.eye(gen.dim)[:, 0])
    assert np.allclose(dense, sparse, atol=1e-13)
    assert np.allclose(dense, expm(gen.dense())[:, 0], atol=1e-13)


def test_squeeze_generator_antihermitian(ref_modes):
    g = squeeze_generator(SqueezeSpec(0, 0.5, 1.0), 8, ref_modes).dense()
    assert np.allclose(g, -g.conj().T)


def test_operator_algebra():
    a = build_matrix("a_x-", 4)
    ad = build_matrix("a_x+", 4)
    assert np.allclose(a.dag().dense(), ad.dense())
    assert np.allclose((a @ ad - ad @ a).dense(), commutator(a, ad).dense())
    assert np.allclose((2 * a - a).dense(), a.dense())


def test_bogoliubov_zero_squeeze_is_identity_map(ref_modes):
    rep = bogoliubov_check(ref_modes, SqueezeSpec(0, 0.0), 20)
    assert rep.residual < 1e-14 and rep.residual_adjoint < 1e-14


@pytest.mark.slow
@pytest.mark.parametrize("which", ["x", "y"])
def test_bogoliubov_reference_modes(ref_modes, which):
    rep = bogoliubov_check(ref_modes, SqueezeSpec(0, 0.2, 0.0), 60, which=which)
    assert rep.max_nu == 30
    assert rep.residual <= 1e-6 and rep.residual_adjoint <= 1e-6


def test_bogoliubov_single_mode_limit():
    # alpha = 1 reduces to a_x cosh R + e^{i Theta} sinh R a_x+ (block nu <= 15 at cutoff 60)
    rep = bogoliubov_check(ModePair(1, 0), SqueezeSpec(0, 0.2, 0.7), 60, max_nu=15)
    assert rep.residual < 1e-10


@pytest.mark.parametrize("r, max_nu", [(0.5, 8), (1.0, 4)])
def test_bogoliubov_larger_squeeze_on_small_block(ref_modes, r, max_nu):
    cutoff = bogoliubov_min_cutoff(r, max_nu)
    rep = bogoliubov_check(ref_modes, SqueezeSpec(0, r, 0.4), cutoff, which="y", max_nu=max_nu)
    assert rep.residual <= 1e-6 and rep.residual_adjoint <= 1e-6


def test_bogoliubov_guards(ref_modes):
    with pytest.raises(DomainError):
        bogoliubov_check(ref_modes, SqueezeSpec(0, 1.5), 60)
    with pytest.raises(ConvergenceError) as info:
        bogoliubov_check(ref_modes, SqueezeSpec(0, 0.8), 20)
    assert info.value.suggested_cutoff == bogoliubov_min_cutoff(0.8, 10)
