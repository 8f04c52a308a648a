"""
Position-space densities |<x,y|s>|^2 on rectangular grids.

The wavefunction is sum_{n,m} c[n,m] psi_n(x) psi_m(y); with per-axis
eigenfunction tables this is two matrix products, Phi_y^T C^T Phi_x, so a
241 x 241 grid at cutoff 40 costs a few milliseconds.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .errors import DegenerateStateError, DomainError, UsageError
from .fock import StateVector2D, _jsonable
from .special import oscillator_eigenfunctions

MAXIMA_FLOOR = 0.1


@dataclass(frozen=True, eq=False)
class DensityGrid:
    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray  # values[iy, ix]
    mass: float


def _require_2d(state):
    if not isinstance(state, StateVector2D):
        raise UsageError("densities are defined for 2D states")


def wavefunction_grid(state, x, y):
    """Amplitudes ``w[iy, ix] = <x_ix, y_iy|s>`` on the outer grid of two axes."""
    _require_2d(state)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    phx = oscillator_eigenfunctions(state.cutoff, x)
    phy = oscillator_eigenfunctions(state.cutoff, y)
    c = state.as_matrix()
    return phy.T @ (c.T @ phx)


def wavefunction_2d(state, x, y):
    """<x,y|s> at a single point."""
    return complex(wavefunction_grid(state, [x], [y])[0, 0])


def mean_total_quanta(state):
    w = state.level_weights()
    if w.sum() == 0:
        raise DegenerateStateError("mean quanta of the zero vector are undefined")
    return float(np.dot(np.arange(w.size), w) / w.sum())


def default_extent(state):
    """Half-width covering the classical turning points plus Gaussian tails."""
    return float(np.sqrt(2 * mean_total_quanta(state)) + 4)


def density_grid(state, x_range=None, y_range=None, nx=201, ny=201):
    """|<x,y|s>|^2 on an ``nx`` by ``ny`` grid, with its trapezoidal integral."""
    if nx < 2 or ny < 2:
        raise DomainError(f"grid needs at least 2 points per axis, got {nx}x{ny}")
    if x_range is None or y_range is None:
        half = default_extent(state)
        x_range = x_range or (-half, half)
        y_range = y_range or (-half, half)
    if not (np.all(np.isfinite(x_range)) and np.all(np.isfinite(y_range))):
        raise DomainError("grid ranges must be finite")
    x = np.linspace(*x_range, nx)
    y = np.linspace(*y_range, ny)
    vals = np.abs(wavefunction_grid(state, x, y)) ** 2
    mass = float(trapezoid(trapezoid(vals, x, axis=1), y))
    return DensityGrid(x, y, vals, mass)


def local_maxima(grid, floor=MAXIMA_FLOOR):
    """Grid indices ``(iy, ix)`` of strict 8-neighbourhood maxima above ``floor`` x global max."""
    if floor <= 0:
        raise DomainError(f"floor must be > 0, got {floor}")
    v = grid.values
    padded = np.pad(v, 1, constant_values=-np.inf)
    core = padded[1:-1, 1:-1]
    mask = core > floor * v.max()
    ny, nx = v.shape
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dy or dx:
                mask &= core > padded[1 + dy : ny + 1 + dy, 1 + dx : nx + 1 + dx]
    return np.argwhere(mask)


def count_local_maxima(grid, floor=MAXIMA_FLOOR):
    return int(len(local_maxima(grid, floor)))


def write_density_csv(grid, path):
    """``x,y,density`` rows, y in the outer loop and x in the inner one."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "y", "density"])
        for iy, yv in enumerate(grid.y_axis):
            for ix, xv in enumerate(grid.x_axis):
                w.writerow([repr(float(xv)), repr(float(yv)), repr(float(grid.values[iy, ix]))])


def read_density_csv(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    x = np.unique(data[:, 0])
    y = np.unique(data[:, 1])
    vals = data[:, 2].reshape(y.size, x.size)
    mass = float(trapezoid(trapezoid(vals, x, axis=1), y))
    return DensityGrid(x, y, vals, mass)


def sidecar(grid, state, floor=MAXIMA_FLOOR, **params):
    peaks = local_maxima(grid, floor)
    return _jsonable(
        {
            "mass": grid.mass,
            "state_norm_squared": state.norm**2,
            "maxima_floor": floor,
            "maxima_count": int(len(peaks)),
            "maxima": [[float(grid.x_axis[ix]), float(grid.y_axis[iy])] for iy, ix in peaks],
            "origin_to_max_ratio": origin_ratio(state, grid),
            "x_range": [float(grid.x_axis[0]), float(grid.x_axis[-1])],
            "y_range": [float(grid.y_axis[0]), float(grid.y_axis[-1])],
            "nx": int(grid.x_axis.size),
            "ny": int(grid.y_axis.size),
            "params": params,
            "state_metadata": state.metadata,
        }
    )


def origin_ratio(state, grid):
    """Density at the origin relative to the grid maximum."""
    return float(abs(wavefunction_2d(state, 0.0, 0.0)) ** 2 / grid.values.max())


def write_sidecar(meta, path):
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
