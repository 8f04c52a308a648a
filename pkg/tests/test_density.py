import numpy as np
import pytest

from oscfock import (
    ModePair,
    SqueezeSpec,
    SU2CoherentSpec,
    StateVector1D,
    StateVector2D,
    UsageError,
    count_local_maxima,
    density_grid,
    oscillator_eigenfunction,
    squeezed_2d,
    squeezed_vacuum_exponential,
    su2_coherent,
    wavefunction_2d,
)
from oscfock.density import (
    local_maxima,
    origin_ratio,
    read_density_csv,
    sidecar,
    wavefunction_grid,
    write_density_csv,
)
from oscfock.errors import DegenerateStateError, DomainError
from oscfock.states import expansion_2d

SQ3 = np.sqrt(3) / 2
LEFT = ModePair(SQ3 * 1j, 0.5)
RIGHT = ModePair(SQ3, 0.5)


def test_wavefunction_examples():
    assert wavefunction_2d(StateVector2D.basis(0, 0, 2), 0, 0).real == pytest.approx(np.pi**-0.5)
    assert wavefunction_2d(StateVector2D.basis(1, 0, 2), 0.0, 1.7) == 0
    s = su2_coherent(SU2CoherentSpec(1, ModePair(1, 0)), 3)
    ref = oscillator_eigenfunction(1, 1.0) * oscillator_eigenfunction(0, 0.0)
    assert wavefunction_2d(s, 1.0, 0.0).real == pytest.approx(ref)


def test_wavefunction_grid_matches_pointwise(rng):
    c = rng.normal(size=15) + 1j * rng.normal(size=15)
    s = StateVector2D(4, c)
    x, y = np.linspace(-3, 3, 7), np.linspace(-2, 2, 5)
    g = wavefunction_grid(s, x, y)
    for iy, yv in enumerate(y):
        for ix, xv in enumerate(x):
            ref = sum(
                c[k] * oscillator_eigenfunction(n, xv) * oscillator_eigenfunction(m, yv)
                for k, (n, m) in enumerate((n, nu - n) for nu in range(5) for n in range(nu + 1))
            )
            assert g[iy, ix] == pytest.approx(ref, abs=1e-14)


def test_vacuum_grid():
    g = density_grid(StateVector2D.basis(0, 0, 3), (-5, 5), (-5, 5), 101, 101)
    assert abs(g.mass - 1) < 1e-6
    peaks = local_maxima(g)
    assert len(peaks) == 1 and tuple(peaks[0]) == (50, 50)


def test_grid_validation():
    s = StateVector2D.basis(0, 0, 3)
    with pytest.raises(DomainError):
        density_grid(s, (-1, 1), (-1, 1), 1, 5)
    with pytest.raises(DomainError):
        density_grid(s, (-np.inf, 1), (-1, 1))
    with pytest.raises(UsageError):
        density_grid(StateVector1D.basis(0, 3))
    with pytest.raises(DegenerateStateError):
        density_grid(StateVector2D(3, np.zeros(10)))
    with pytest.raises(DomainError):
        count_local_maxima(density_grid(s), floor=0)


def test_richardson_mass_convergence():
    s = squeezed_2d(SqueezeSpec(0.5, 0.4, 0.3), LEFT, 60)
    coarse = density_grid(s, (-9, 9), (-9, 9), 121, 121).mass
    fine = density_grid(s, (-9, 9), (-9, 9), 241, 241).mass
    extrapolated = (4 * fine - coarse) / 3
    assert abs(fine - coarse) < 1e-4
    assert extrapolated == pytest.approx(s.norm**2, abs=1e-6)


def test_point_symmetry_of_even_state():
    s = squeezed_vacuum_exponential(SqueezeSpec(0, 0.5, 0.0), RIGHT, 80)
    g = density_grid(s, (-6, 6), (-6, 6), 121, 121)
    assert np.max(np.abs(g.values - g.values[::-1, ::-1])) < 1e-12


def test_terms_truncated_mass_is_norm_squared():
    s = squeezed_2d(SqueezeSpec(1.0, 0.1, 0.0), LEFT, 19, terms=20)
    g = density_grid(s, nx=201, ny=201)
    assert g.mass == pytest.approx(s.norm**2, rel=1e-8)


def test_su2_ring():
    s = su2_coherent(SU2CoherentSpec(40, LEFT), 40)
    g = density_grid(s, (-12, 12), (-12, 12), 241, 241)
    assert g.mass == pytest.approx(1, abs=1e-8)
    assert origin_ratio(s, g) < 0.05


@pytest.mark.parametrize("r, modes, expected", [(0.1, LEFT, 1), (10.0, RIGHT, 2)])
def test_two_lobes_with_unit_eigenvalue(r, modes, expected):
    # the value 1 used directly as the expansion parameter Z
    s, _ = expansion_2d(1.0, -np.tanh(r), modes, 19, terms=20)
    assert count_local_maxima(density_grid(s, nx=201, ny=201)) == expected


def test_unit_displacement_at_large_squeeze_is_a_ridge():
    # with Psi = 1 the eigenvalue is Z = 1 - tanh 10 ~ 4e-9 and the density is a
    # striped ridge rather than two lobes
    s = squeezed_2d(SqueezeSpec(1.0, 10.0, 0.0), RIGHT, 19, terms=20)
    assert count_local_maxima(density_grid(s, nx=201, ny=201)) > 2


def test_csv_round_trip(tmp_path):
    s = squeezed_2d(SqueezeSpec(0.3, 0.2), RIGHT, 40)
    g = density_grid(s, (-4, 4), (-3, 3), 17, 13)
    path = tmp_path / "grid.csv"
    write_density_csv(g, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,y,density"
    assert len(lines) == 1 + 17 * 13
    # y is the outer loop
    assert [float(v) for v in lines[2].split(",")[:2]] == [g.x_axis[1], g.y_axis[0]]
    back = read_density_csv(path)
    assert np.array_equal(back.values, g.values)
    assert back.mass == g.mass


def test_sidecar_contents():
    s = StateVector2D.basis(0, 0, 3)
    g = density_grid(s, (-5, 5), (-5, 5), 51, 51)
    meta = sidecar(g, s, floor=0.1, note="vac")
    assert meta["maxima_count"] == 1
    assert meta["maxima"] == [[0.0, 0.0]]
    assert meta["origin_to_max_ratio"] == pytest.approx(1.0)
    assert meta["params"] == {"note": "vac"}
