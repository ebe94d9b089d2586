"""Discretized Green's functions for 1D periodic Schrodinger-type operators.

The package discretizes lam - H with H = -Laplacian + V three ways (second
order finite differences, pseudo-spectral, mollified pseudo-spectral), solves
(lam - H) g = e_y / dx, and measures/verifies the off-diagonal decay of the
resulting columns: exponential for fd2, super-algebraic for mps, stalled at
the consistency error for plain ps.
"""

__version__ = "0.1.0"

from .errors import CapExceeded, DegenerateProfile, ParameterError, SingularResolvent
from .lattice import (
    GridSpec,
    LatticeFunction,
    SpectralFunction,
    build_grid,
    dft,
    idft,
    mollified_distance,
    norm,
    periodic_distance,
)
from .mollifier import MollifierSpec, bump_phi, h_on_grid, h_symbol, theta, theta_on_grid
from .operators import (
    FD2,
    MPS,
    PS,
    SCHEMES,
    PotentialSpec,
    ProblemSpec,
    apply_hamiltonian,
    difference,
    fd_laplacian,
    fd_symbol,
    fourier_hamiltonian_matrix,
    ps_symbol,
    scheme_symbol,
    spectral_difference,
)
from .greens import (
    DENSE_CAP_DEFAULT,
    GreensColumn,
    closed_form_ghat,
    solve_green_column,
    solve_green_matrix,
)
from .analysis import (
    DecayReport,
    WeightedHNorm,
    decay_profile,
    decay_report,
    fd_characteristic_rate,
    h_ratio_sup,
    matrix_2norm,
    measure_gamma,
    moment_check,
    weighted_G_h_norm,
    weighted_resolvent_norm,
)

__all__ = [
    "CapExceeded",
    "DegenerateProfile",
    "ParameterError",
    "SingularResolvent",
    "GridSpec",
    "LatticeFunction",
    "SpectralFunction",
    "build_grid",
    "dft",
    "idft",
    "norm",
    "periodic_distance",
    "mollified_distance",
    "MollifierSpec",
    "bump_phi",
    "theta",
    "h_symbol",
    "theta_on_grid",
    "h_on_grid",
    "FD2",
    "PS",
    "MPS",
    "SCHEMES",
    "PotentialSpec",
    "ProblemSpec",
    "difference",
    "fd_laplacian",
    "fd_symbol",
    "ps_symbol",
    "scheme_symbol",
    "apply_hamiltonian",
    "fourier_hamiltonian_matrix",
    "spectral_difference",
    "DENSE_CAP_DEFAULT",
    "GreensColumn",
    "closed_form_ghat",
    "solve_green_column",
    "solve_green_matrix",
    "DecayReport",
    "WeightedHNorm",
    "decay_profile",
    "decay_report",
    "fd_characteristic_rate",
    "h_ratio_sup",
    "matrix_2norm",
    "measure_gamma",
    "moment_check",
    "weighted_G_h_norm",
    "weighted_resolvent_norm",
    "__version__",
]
