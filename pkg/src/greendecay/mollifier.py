"""Smooth Fourier cutoff built from a compactly supported bump.

The cutoff theta equals 1 on |k| <= kc/2 and 0 on |k| >= (3/4)kc; in between
it is the sharp cutoff 1_{|k| <= (5/8)kc} convolved with a C-infinity bump of
half-width sigma*kc.  The mollified Laplacian symbol replaces k^2 by

    h(k) = theta(k) * (k^2 - kc^2) + kc^2,

which agrees with k^2 on the inner half of the grid, is constant kc^2 near the
edge, and is smooth across the periodic wrap at +-kc.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errors import ParameterError
from .lattice import GridSpec, _readonly

__all__ = ["MollifierSpec", "bump_phi", "theta", "h_symbol", "theta_on_grid", "h_on_grid"]


@dataclass(frozen=True)
class MollifierSpec:
    """Bump half-width as a fraction of kc, plus the quadrature tolerance.

    sigma must stay in (0, 1/8]: wider bumps would smear the cutoff outside
    the [kc/2, (3/4)kc] transition band and destroy the plateau guarantees.
    """

    sigma: float = 0.125
    quad_rel_tol: float = 1e-12

    def __post_init__(self):
        if not 0.0 < self.sigma <= 0.125:
            raise ParameterError(f"sigma must be in (0, 1/8], got {self.sigma}")
        if not 0.0 < self.quad_rel_tol <= 1e-6:
            raise ParameterError(f"quad_rel_tol must be in (0, 1e-6], got {self.quad_rel_tol}")


def _bump_profile(u: float) -> float:
    """exp(-1/(1-u^2)) on (-1, 1), zero outside; all derivatives vanish at +-1."""
    w = 1.0 - u * u
    if w <= 0.0:
        return 0.0
    return float(np.exp(-1.0 / w))


@lru_cache(maxsize=None)
def _profile_integral() -> float:
    """Integral of the normalized bump profile over [-1, 1] (a universal constant)."""
    val, _ = quad(_bump_profile, -1.0, 1.0, epsabs=1e-16, epsrel=1e-13, limit=200)
    return val


def _normalization(kc: float, spec: MollifierSpec) -> float:
    """Z such that the bump of half-width sigma*kc integrates to one.

    Z*sigma*kc is scale invariant (substitute u = k/(sigma*kc)), so only the
    universal profile integral is ever computed by quadrature.
    """
    return 1.0 / (spec.sigma * kc * _profile_integral())


def bump_phi(k, kc: float, spec: MollifierSpec = MollifierSpec()):
    """C-infinity bump Z*exp(-sigma^2 kc^2/(sigma^2 kc^2 - k^2)) supported on |k| < sigma*kc."""
    if kc < np.pi:
        raise ParameterError(f"kc must be >= pi, got {kc}")
    Z = _normalization(kc, spec)
    k = np.asarray(k, dtype=float)
    half = spec.sigma * kc
    out = np.zeros_like(k)
    inside = np.abs(k) < half
    w = 1.0 - (k[inside] / half) ** 2
    out[inside] = Z * np.exp(-1.0 / w)
    if out.ndim == 0:
        return float(out)
    return out


def _band_integral(a: float, b: float, tol: float) -> float:
    """Integral of the unit-mass bump over [a, b], in units of the half-width."""
    a = max(a, -1.0)
    b = min(b, 1.0)
    if b <= a:
        return 0.0
    val, _ = quad(_bump_profile, a, b, epsabs=1e-15, epsrel=tol, limit=200)
    # quadrature roundoff may overshoot the exact range by an ulp
    return min(max(val / _profile_integral(), 0.0), 1.0)


def theta(k, kc: float, spec: MollifierSpec = MollifierSpec()):
    """Smooth cutoff: 1 for |k| <= kc/2, 0 for |k| >= (3/4)kc, monotone between.

    Inside the transition band the value is the incomplete integral of the
    bump, int_{max(-s, k-(5/8)kc)}^{min(s, k+(5/8)kc)} phi(u) du with
    s = sigma*kc, evaluated by adaptive quadrature; the plateaus are returned
    exactly without quadrature.
    """
    if kc < np.pi:
        raise ParameterError(f"kc must be >= pi, got {kc}")
    k = np.asarray(k, dtype=float)
    a = np.abs(k)
    out = np.zeros(k.shape)
    out[a <= kc / 2.0] = 1.0
    band = (a > kc / 2.0) & (a < 0.75 * kc)
    half = spec.sigma * kc
    flat = out.reshape(-1)
    aband = a.reshape(-1)
    for i in np.nonzero(band.reshape(-1))[0]:
        lo = (aband[i] - 0.625 * kc) / half
        hi = (aband[i] + 0.625 * kc) / half
        flat[i] = _band_integral(lo, hi, spec.quad_rel_tol)
    if out.ndim == 0:
        return float(out)
    return out


def h_symbol(k, kc: float, spec: MollifierSpec = MollifierSpec()):
    """Mollified Laplacian symbol theta(k)*(k^2 - kc^2) + kc^2.

    Evaluated piecewise so the plateau identities are exact: h = k^2 for
    |k| <= kc/2 and h = kc^2 for |k| >= (3/4)kc.
    """
    k = np.asarray(k, dtype=float)
    th = theta(k, kc, spec)
    out = np.where(
        np.abs(k) <= kc / 2.0,
        k * k,
        np.asarray(th) * (k * k - kc * kc) + kc * kc,
    )
    if out.ndim == 0:
        return float(out)
    return out


@lru_cache(maxsize=32)
def theta_on_grid(grid: GridSpec, spec: MollifierSpec = MollifierSpec()) -> np.ndarray:
    """Cutoff sampled on the Fourier grid K (canonical order), memoized.

    Quadrature only runs for the O(N/4) points in the transition band, once
    per (grid, spec) pair.
    """
    return _readonly(theta(grid.k, grid.kc, spec))


@lru_cache(maxsize=32)
def h_on_grid(grid: GridSpec, spec: MollifierSpec = MollifierSpec()) -> np.ndarray:
    """Mollified symbol sampled on K (canonical order), memoized."""
    k = grid.k
    kc = grid.kc
    th = theta_on_grid(grid, spec)
    return _readonly(np.where(np.abs(k) <= kc / 2.0, k * k, th * (k * k - kc * kc) + kc * kc))
