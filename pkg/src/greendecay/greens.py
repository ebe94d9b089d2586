"""Solvers for (lam - H) g = e_y / dx and full discretized Green's matrices.

The fd2 scheme solves the periodic tridiagonal system in O(N) via a rank-one
corner correction of a banded solve.  The ps and mps schemes assemble
lam - Hhat in Fourier space (dense), factorize once with partial pivoting,
solve against the transformed delta (a pure phase), and invert-transform.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import CapExceeded, ParameterError, SingularResolvent
from .lattice import LatticeFunction, SpectralFunction, idft_values
from .operators import FD2, ProblemSpec, apply_hamiltonian, fourier_hamiltonian_matrix, scheme_symbol

__all__ = [
    "DENSE_CAP_DEFAULT",
    "GreensColumn",
    "closed_form_ghat",
    "solve_green_column",
    "solve_green_matrix",
]

DENSE_CAP_DEFAULT = 4096

# relative residual contract on every returned column
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GreensColumn:
    """One column g of the Green's function, (lam - H) g = e_y / dx.

    residual is ||(lam - H) g - e_y/dx||_2 / ||e_y/dx||_2, measured through the
    matrix-free operator application (independent of the solve path).
    """

    problem: ProblemSpec
    y_index: int
    g: LatticeFunction
    residual: float


def closed_form_ghat(spec: ProblemSpec) -> SpectralFunction:
    """Fourier coefficients ghat_k = 1/(lam - s(k)) of the free Green's column at y=0.

    Requires a zero potential; each scheme contributes its own symbol s.
    """
    if not spec.potential.is_zero():
        raise ParameterError("closed_form_ghat requires a zero potential")
    sym = scheme_symbol(spec)
    denom = spec.lam - sym
    if np.min(np.abs(denom)) < 1e-14 * (1.0 + abs(spec.lam)):
        raise SingularResolvent(
            f"lam = {spec.lam} collides with the {spec.scheme} symbol on the grid"
        )
    return SpectralFunction(spec.grid, 1.0 / denom)


def _delta_rhs(spec: ProblemSpec, y_index: int) -> np.ndarray:
    rhs = np.zeros(spec.grid.N, dtype=complex)
    rhs[y_index] = 1.0 / spec.grid.dx
    return rhs


def _check_y_index(spec: ProblemSpec, y_index: int) -> int:
    if not 0 <= y_index < spec.grid.N:
        raise ParameterError(f"y_index must be in [0, {spec.grid.N}), got {y_index}")
    return int(y_index)


def _fd_banded_parts(spec: ProblemSpec):
    """Banded interior of lam - H for fd2 plus the Sherman-Morrison corner data.

    lam - H = lam + Lap - V has diagonal a_i = lam - 2/dx^2 - V_i, constant
    off-diagonals c = 1/dx^2, and corner entries c from periodicity.  Writing
    the corner part as u v^T leaves a plain tridiagonal T.
    """
    grid = spec.grid
    N = grid.N
    c = 1.0 / grid.dx ** 2
    a = spec.lam - 2.0 * c - spec.potential.evaluate(grid)
    pivot = -a[0]
    if pivot == 0:
        pivot = c  # any nonzero choice is valid; a[0] = 0 only for exotic lam, V
    ab = np.zeros((3, N), dtype=complex)
    ab[0, 1:] = c
    ab[1] = a
    ab[1, 0] = a[0] - pivot
    ab[1, -1] = a[-1] - c * c / pivot
    ab[2, :-1] = c
    u = np.zeros(N, dtype=complex)
    v = np.zeros(N, dtype=complex)
    u[0], u[-1] = pivot, c
    v[0], v[-1] = 1.0, c / pivot
    return ab, u, v


def _solve_fd(spec: ProblemSpec, rhs: np.ndarray) -> np.ndarray:
    """Periodic tridiagonal solve; rhs may be a vector or a matrix of columns."""
    ab, u, v = _fd_banded_parts(spec)
    try:
        z = scipy.linalg.solve_banded((1, 1), ab, rhs)
        q = scipy.linalg.solve_banded((1, 1), ab, u)
    except scipy.linalg.LinAlgError as err:
        raise SingularResolvent(f"banded factorization failed: {err}") from None
    denom = 1.0 + v @ q
    if abs(denom) < 1e-14 * (1.0 + np.linalg.norm(q)):
        raise SingularResolvent("corner correction is singular; lam is not in the resolvent set")
    if rhs.ndim == 1:
        return z - q * ((v @ z) / denom)
    return z - np.outer(q, (v @ z) / denom)


def _assemble_fourier_system(spec: ProblemSpec, dense_cap: int) -> np.ndarray:
    N = spec.grid.N
    if N > dense_cap:
        raise CapExceeded(
            f"dense Fourier solve needs N = {N} <= dense_cap = {dense_cap}; "
            "raise the cap explicitly to acknowledge the memory cost"
        )
    A = fourier_hamiltonian_matrix(spec)
    A *= -1.0
    A[np.arange(N), np.arange(N)] += spec.lam
    return A


def _lu_factor(A: np.ndarray):
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
            return scipy.linalg.lu_factor(A)
    except (scipy.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as err:
        raise SingularResolvent(f"dense factorization failed: {err}") from None


def _column_residual(spec: ProblemSpec, g: np.ndarray, y_index: int) -> float:
    rhs = _delta_rhs(spec, y_index)
    r = spec.lam * g - apply_hamiltonian(spec, LatticeFunction(spec.grid, g)).values - rhs
    return float(np.linalg.norm(r) / np.linalg.norm(rhs))


def solve_green_column(
    spec: ProblemSpec, y_index: int, dense_cap: int = DENSE_CAP_DEFAULT
) -> GreensColumn:
    """Solve (lam - H) g = e_y / dx for one source index y.

    The returned column carries its measured relative residual, which must be
    below 1e-10; otherwise lam is treated as numerically outside the resolvent
    set and SingularResolvent is raised.
    """
    y_index = _check_y_index(spec, y_index)
    grid = spec.grid
    if spec.scheme == FD2:
        g = _solve_fd(spec, _delta_rhs(spec, y_index))
    else:
        A = _assemble_fourier_system(spec, dense_cap)
        lu = _lu_factor(A)
        bhat = np.exp(-1j * grid.k * grid.x[y_index])
        ghat = scipy.linalg.lu_solve(lu, bhat)
        g = idft_values(grid, ghat)
        if _column_residual(spec, g, y_index) > 0.5 * RESIDUAL_TOL:
            ghat = ghat + scipy.linalg.lu_solve(lu, bhat - A @ ghat)
            g = idft_values(grid, ghat)
    residual = _column_residual(spec, g, y_index)
    if not residual <= RESIDUAL_TOL:
        raise SingularResolvent(
            f"solve left relative residual {residual:.3e} > {RESIDUAL_TOL:.0e}; "
            "lam is numerically singular for this discretization"
        )
    return GreensColumn(spec, y_index, LatticeFunction(grid, g), residual)


def solve_green_matrix(spec: ProblemSpec, dense_cap: int = DENSE_CAP_DEFAULT) -> np.ndarray:
    """Full Green's matrix G with (lam - H) G = I / dx; column j is the y=j column.

    One factorization serves all N right-hand sides.  Every scheme's matrix
    path is capped at dense_cap because the result itself is dense N x N.
    """
    grid = spec.grid
    N = grid.N
    if N > dense_cap:
        raise CapExceeded(
            f"green matrix needs N = {N} <= dense_cap = {dense_cap}; "
            "raise the cap explicitly to acknowledge the memory cost"
        )
    if spec.scheme == FD2:
        rhs = np.eye(N, dtype=complex) / grid.dx
        return _solve_fd(spec, rhs)
    A = _assemble_fourier_system(spec, dense_cap)
    lu = _lu_factor(A)
    # DFT of e_y/dx for every y at once: bhat[k, y] = exp(-i k x_y)
    bhat = np.exp(-1j * np.outer(grid.k, grid.x))
    ghat = scipy.linalg.lu_solve(lu, bhat)
    return np.fft.ifft(np.roll(ghat, -(N // 2 - 1), axis=0), axis=0) / grid.dx
