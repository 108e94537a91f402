"""Archimedean Whittaker data on the diagonal torus and its local zeta integral.

The distinguished vector is pinned on the diagonal by

    W(a(y)) = T^(3/4) * e(-y / sqrt(T)) * V0(y / T^(3/2)),   y > 0,

with V0 the basic bump. Its local zeta integral against y^(s - 1/2 + iT) d*y
is always evaluated in rescaled coordinates z = y / T^(3/2):

    Z(1/2 + s + iT) = T^(3s/2) * T^(3iT/2) *
                      integral V0(z) e(-Tz) z^(iT - 1/2 + s) d*z,

whose phase -2*pi*T*z + (T + Im s)*ln(z) is stationary at
z0 = (T + Im s)/(2*pi*T). For s = 0 that is z0 = 1/(2*pi) and stationary
phase gives Z = C_T * T^(-1/2) + O(T^(-3/2)) with the explicit constant

    C_T = (2*pi)^(1-iT) * exp(-i*pi/4) * T^(3iT/2) * e(-T/(2*pi)) * V0(1/(2*pi)).

z0 leaves the support of V0 exactly when Im s leaves [-3T/4, c1*T], which is
why |Z| collapses outside that window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cutoffs import ONE_OVER_2PI, Cutoff, v0_cutoff
from .errors import ConfigError
from .oscquad import QuadResult, integrate_phase
from .util import TWO_PI, loglog_slope

# Relative gap between local_zeta(s=0) and C_T * T^(-1/2) is <= K_ZETA_REL / T;
# calibrated at T = 250 (rel * T = 1.127) with a 4x cushion and frozen.
K_ZETA_REL = 4.6

# Absolute residual envelope K_WEIGHTED * T^(-3/2) for weighted integrals
# with leading value C_T T^(-1/2) f(...) [u(...)]; calibrated at T = 250
# on the standard test amplitude (residual * T^(3/2) = 1.89), 4x cushion.
K_WEIGHTED = 7.6

DEFAULT_ZETA_TOL = 1e-10


def whittaker_diag(y, T: float, c1: float = 1.0):
    """W(a(y)) on the diagonal; zero for y <= 0."""
    if T <= 0.0:
        raise ConfigError("T must be positive")
    v0 = v0_cutoff(c1)
    y_arr = np.asarray(y, dtype=float)
    out = np.zeros(y_arr.shape, dtype=complex)
    pos = y_arr > 0.0
    yp = y_arr[pos]
    out[pos] = (T**0.75 * np.exp(-2j * np.pi * yp / np.sqrt(T))
                * v0.fn(yp / T**1.5))
    if np.isscalar(y) or getattr(y, "ndim", 1) == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class LocalZetaParams:
    """Evaluation point 1/2 + s + iT of the local zeta integral."""

    T: float
    s: complex = 0.0 + 0.0j
    c1: float = 1.0

    def __post_init__(self):
        if self.T <= 0.0:
            raise ConfigError("T must be positive")
        if not (-0.5 <= self.s.real <= 0.5):
            raise ConfigError("Re(s) must lie in [-1/2, 1/2]")
        if self.c1 <= 0.0:
            raise ConfigError("c1 must be positive")

    @property
    def im_in_core_range(self) -> bool:
        """True when the stationary point stays inside the bump support."""
        return -0.75 * self.T <= self.s.imag <= self.c1 * self.T


def _power_amplitude(c1: float, exponent: float, extra=None) -> Cutoff:
    """V0(z) * z^exponent (* extra(z)) as a Cutoff on V0's support."""
    v0 = v0_cutoff(c1)

    def fn(z):
        z = np.asarray(z, dtype=float)
        vals = v0.fn(z) * z**exponent
        if extra is not None:
            vals = vals * extra(z)
        return vals

    return Cutoff(kind="composite", support_lo=v0.support_lo,
                  support_hi=v0.support_hi, fn=fn)


def local_zeta(params: LocalZetaParams, tol: float = DEFAULT_ZETA_TOL) -> QuadResult:
    """Z(1/2 + s + iT), evaluated in z-coordinates (see module docstring).

    The returned value includes the T^(3s/2) * T^(3iT/2) prefactor; abs_err
    is the quadrature bound scaled by the prefactor modulus.
    """
    sigma, tau = params.s.real, params.s.imag
    amp = _power_amplitude(params.c1, sigma - 1.5)
    core = integrate_phase(amp, c_log=params.T + tau, c_inv=0.0, c_lin=params.T, tol=tol)
    pref = np.exp(1.5 * (params.s + 1j * params.T) * np.log(params.T))
    return QuadResult(value=complex(pref * core.value),
                      abs_err=float(abs(pref)) * core.abs_err,
                      panels=core.panels, evaluations=core.evaluations)


def c_constant(T: float, c1: float = 1.0) -> complex:
    """C_T, the stationary-phase constant of the s = 0 local zeta integral.

    |C_T| = 2*pi * V0(1/(2*pi)) and the phase rotates with derivative
    (3/2) ln T + 1/2 - ln(2*pi) in T.
    """
    if T <= 0.0:
        raise ConfigError("T must be positive")
    vstar = float(v0_cutoff(c1)(ONE_OVER_2PI))
    return complex(TWO_PI * np.exp(-1j * T * np.log(TWO_PI))
                   * np.exp(-0.25j * np.pi)
                   * np.exp(1.5j * T * np.log(T))
                   * np.exp(-1j * T)
                   * vstar)


def _validate_weight(fname: str, f, lo: float, hi: float):
    """Reject weight callables that are non-finite on the sampling window."""
    xs = np.linspace(lo, hi, 65)
    vals = np.asarray(f(xs), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ConfigError(f"{fname} is not finite on the evaluation window")


def lemma_range_flag(n: int, T: float, kappa: float = 1.0 / 18.0,
                     eps: float = 0.02) -> bool:
    """True when n sits in the asymptotic window [T^(3/2-kappa), T^(3/2+eps)].

    Advisory only: the weighted integrals are computed for any n >= 1, but the
    leading-term comparison carries its stated envelope inside this window.
    """
    return T ** (1.5 - kappa) <= n <= T ** (1.5 + eps)


def weighted_zeta_first(f, n: int, T: float, tol: float = DEFAULT_ZETA_TOL,
                        c1: float = 1.0) -> complex:
    """integral W(a(y)) f(T^3 / (4*pi^2*n*y)) y^(iT - 1/2) d*y.

    In z-coordinates the weight argument becomes T^(3/2)/(4*pi^2*n*z); the
    stationary-phase value is C_T * T^(-1/2) * f(T^(3/2)/(2*pi*n)) within
    K_WEIGHTED * T^(-3/2).
    """
    if n < 1:
        raise ConfigError("n must be a positive integer")
    fe = f.fn if isinstance(f, Cutoff) else f
    scale = T**1.5 / (4.0 * np.pi**2 * n)
    v0 = v0_cutoff(c1)
    _validate_weight("f", fe, scale / v0.support_hi, scale / v0.support_lo)
    amp = _power_amplitude(c1, -1.5, extra=lambda z: fe(scale / z))
    core = integrate_phase(amp, c_log=T, c_inv=0.0, c_lin=T, tol=tol)
    return complex(np.exp(1.5j * T * np.log(T)) * core.value)


def weighted_zeta_second(f, u, n: int, Y: float, T: float,
                         tol: float = DEFAULT_ZETA_TOL, c1: float = 1.0) -> complex:
    """integral W(a(y)) f(y/n) u(y/(n*Y)) y^(iT - 1/2) d*y.

    Stationary-phase value: C_T * T^(-1/2) * f(T^(3/2)/(2*pi*n)) *
    u(T^(3/2)/(2*pi*n*Y)) within K_WEIGHTED * T^(-3/2). Callers probing the
    sharp asymptotic regime can consult lemma_range_flag(n, T).
    """
    if n < 1:
        raise ConfigError("n must be a positive integer")
    if Y <= 0.0:
        raise ConfigError("Y must be positive")
    fe = f.fn if isinstance(f, Cutoff) else f
    ue = u.fn if isinstance(u, Cutoff) else u
    cf = T**1.5 / n
    cu = T**1.5 / (n * Y)
    v0 = v0_cutoff(c1)
    _validate_weight("f", fe, cf * v0.support_lo, cf * v0.support_hi)
    _validate_weight("u", ue, cu * v0.support_lo, cu * v0.support_hi)
    amp = _power_amplitude(c1, -1.5, extra=lambda z: fe(cf * z) * ue(cu * z))
    core = integrate_phase(amp, c_log=T, c_inv=0.0, c_lin=T, tol=tol)
    return complex(np.exp(1.5j * T * np.log(T)) * core.value)


@dataclass(frozen=True)
class ZetaScalingStudy:
    """Scaling table of |Z| across a T grid at fixed Re(s) = sigma."""

    sigma: float
    t_grid: tuple
    abs_z: tuple
    normalized: tuple      # |Z| * T^(1/2 - 3*sigma/2)
    residuals: tuple       # |Z - C_T T^(-1/2)|, sigma = 0 only, else ()
    slope_abs_z: float
    slope_residual: float  # nan when residuals are absent

    @property
    def band_ratio(self) -> float:
        """max/min of the normalized level across the grid."""
        return max(self.normalized) / min(self.normalized)


def zeta_scaling_study(t_grid, sigma: float = 0.0,
                       tol: float = DEFAULT_ZETA_TOL, c1: float = 1.0) -> ZetaScalingStudy:
    """Evaluate Z on a T grid at Re(s) = sigma and fit decay slopes.

    |Z| should fall like T^(3*sigma/2 - 1/2); for sigma = 0 the residual
    against C_T * T^(-1/2) should fall like T^(-3/2).
    """
    t_grid = tuple(float(t) for t in t_grid)
    if len(t_grid) < 2:
        raise ConfigError("scaling study needs at least two T values")
    abs_z, normalized, residuals = [], [], []
    for T in t_grid:
        z = local_zeta(LocalZetaParams(T=T, s=complex(sigma, 0.0), c1=c1), tol=tol)
        abs_z.append(abs(z.value))
        normalized.append(abs(z.value) * T ** (0.5 - 1.5 * sigma))
        if sigma == 0.0:
            residuals.append(abs(z.value - c_constant(T, c1) * T**-0.5))
    if len(t_grid) >= 3:
        slope_abs_z, _ = loglog_slope(t_grid, abs_z)
        slope_residual = loglog_slope(t_grid, residuals)[0] if residuals else float("nan")
    else:
        slope_abs_z = float("nan")
        slope_residual = float("nan")
    return ZetaScalingStudy(sigma=sigma, t_grid=t_grid, abs_z=tuple(abs_z),
                            normalized=tuple(normalized), residuals=tuple(residuals),
                            slope_abs_z=slope_abs_z, slope_residual=slope_residual)
