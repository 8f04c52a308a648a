"""Squeezed, coherent and SU(2) coherent states of the 1D and isotropic 2D
harmonic oscillator on a truncated Fock space, with numerical checks of
their closed-form properties."""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DegenerateStateError,
    DimensionError,
    DomainError,
    NumericError,
    OscFockError,
    UsageError,
)
from .fock import (
    ModePair,
    SqueezeSpec,
    StateVector1D,
    StateVector2D,
    canonical_parameters,
    decode_index,
    encode_index,
    inner_product,
    load_state,
    norm,
    normalize,
    overlap_modulus,
    save_state,
)
from .special import hermite_eval, oscillator_eigenfunction, squeeze_term, squeeze_terms
from .operators import (
    OperatorMatrix,
    apply_generalized,
    apply_ladder,
    bogoliubov_check,
    build_matrix,
    build_matrix_1d,
    matrix_exponential,
)
from .states import (
    SU2CoherentSpec,
    coherent_1d,
    eigen_residual,
    squeezed_1d,
    squeezed_2d,
    squeezed_vacuum_exponential,
    su2_coherent,
    su2_overlap,
)
from .observables import (
    DispersionReport,
    dispersion_1d_analytic,
    dispersion_2d_analytic,
    schmidt_analysis,
    uncertainty_products,
    variance_numeric,
)
from .density import DensityGrid, count_local_maxima, density_grid, wavefunction_2d
