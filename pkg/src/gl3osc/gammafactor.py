"""Archimedean gamma factor for a self-dual degree-3 functional equation,
and the inverse-Mellin kernel it produces.

The factor is

    gamma(s) = pi^(3s - 3/2) * prod_i Gamma((1 - s + a_i) / 2) / Gamma((s - a_i) / 2)

with spectral parameters a = (a_1, a_2, a_3).  On the shifted line
s = 1/2 + sigma + i(T + t) its modulus grows like (T / 2 pi)^(-3 sigma),
so pushing a contour left multiplies the kernel by that power; the kernel

    G(z) = (1 / 2 pi i) * int F(-s) * (T^3 / (4 pi^2 z))^s * gamma(1/2 + s + iT) ds

(with F the Mellin transform of the dyadic-window cutoff) is therefore
negligible once z * T^(3 epsilon... ) -- concretely once the per-unit-sigma
shrink factor 4 pi^2 z T^(-eps) / (2 pi)^3 drops below 1.  All poles of the
integrand sit in Re(s) > 0, so any line Re(s) = sigma <= 0 gives the same
value; `g_kernel` exploits that to pick a line deep enough for the target
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import loggamma

from .cutoffs import h0_cutoff, mellin_on_line
from .errors import (
    ConfigError,
    GammaPoleError,
    InsufficientGridError,
    TailNotConvergedError,
    ToleranceUnreachableError,
)
from .oscquad import _NODES16, _W16
from .util import TWO_PI, kahan_csum

#: Tempered self-dual-ish default triple; purely imaginary, summing to zero.
DEFAULT_ALPHA = (0.5j, -0.3j, -0.2j)

_POLE_EPS = 1e-12


def _near_nonpositive_integer(z: complex) -> bool:
    if abs(z.imag) > _POLE_EPS:
        return False
    k = round(z.real)
    return k <= 0 and abs(z.real - k) <= _POLE_EPS


@dataclass(frozen=True)
class LanglandsParams:
    """Spectral parameter triple with |Re a_i| < 1/2 (tempered-window)."""

    alpha: tuple[complex, complex, complex] = DEFAULT_ALPHA

    def __post_init__(self) -> None:
        if len(self.alpha) != 3:
            raise ConfigError("alpha must have exactly three entries")
        alpha = tuple(complex(a) for a in self.alpha)
        for a in alpha:
            if abs(a.real) >= 0.5:
                raise ConfigError(f"Re(alpha) must lie in (-1/2, 1/2), got {a}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def dual(self) -> "LanglandsParams":
        """Parameters of the contragredient: negated conjugates."""
        return LanglandsParams(tuple(-a.conjugate() for a in self.alpha))


def _log_gamma_ratio(s, alpha) -> np.ndarray:
    """log of prod Gamma((1 - s + a)/2) / Gamma((s - a)/2), vectorized in s.

    No pole handling: exact pole hits produce inf/nan and are the caller's
    problem (scalar entry points check first).
    """
    s = np.asarray(s, dtype=complex)
    total = np.zeros_like(s)
    for a in alpha:
        total = total + loggamma((1.0 - s + a) / 2.0) - loggamma((s - a) / 2.0)
    return total


def gamma_pi(s: complex, params: LanglandsParams | None = None) -> complex:
    """Evaluate the degree-3 gamma factor at a point.

    A pole of a numerator Gamma is a genuine pole of the factor and raises
    GammaPoleError; a pole of a denominator Gamma is a zero and returns 0.
    """
    params = params or LanglandsParams()
    s = complex(s)
    for a in params.alpha:
        if _near_nonpositive_integer((1.0 - s + a) / 2.0):
            raise GammaPoleError(f"gamma factor has a pole at s = {s}")
    for a in params.alpha:
        if _near_nonpositive_integer((s - a) / 2.0):
            return 0.0 + 0.0j
    log_val = (3.0 * s - 1.5) * np.log(np.pi) + _log_gamma_ratio(s, params.alpha)
    return complex(np.exp(log_val))


def gamma_pi_line(s: np.ndarray, params: LanglandsParams) -> np.ndarray:
    """Vectorized gamma factor on an array of points, no pole checks."""
    log_val = (3.0 * s - 1.5) * np.log(np.pi) + _log_gamma_ratio(s, params.alpha)
    return np.exp(log_val)


@dataclass(frozen=True)
class GammaDecayFit:
    """Least-squares slope of log |gamma(1/2 + sigma + iT)| against log T."""

    sigma: float
    t_grid: tuple[float, ...]
    values: tuple[float, ...]
    slope: float
    predicted_slope: float


def gamma_decay_fit(
    sigma: float,
    t_grid,
    params: LanglandsParams | None = None,
) -> GammaDecayFit:
    """Fit |gamma| ~ T^(-3 sigma) on the line Re(s) = 1/2 + sigma."""
    params = params or LanglandsParams()
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size < 4:
        raise InsufficientGridError("need at least four heights to fit a slope")
    s = 0.5 + sigma + 1j * t_grid
    vals = np.abs(gamma_pi_line(s, params))
    slope, _ = np.polyfit(np.log(t_grid), np.log(vals), 1)
    return GammaDecayFit(
        sigma=float(sigma),
        t_grid=tuple(float(t) for t in t_grid),
        values=tuple(float(v) for v in vals),
        slope=float(slope),
        predicted_slope=float(-3.0 * sigma),
    )


@dataclass(frozen=True)
class ContourSpec:
    """Vertical line Re(s) = re_line, truncated at |Im s| = im_cut.

    im_cut is the starting truncation; integration keeps doubling it until
    the newly added shells fall below tolerance.
    """

    re_line: float = 0.0
    im_cut: float = 48.0
    samples: int = 64

    def __post_init__(self) -> None:
        if self.re_line > 0.0:
            raise ConfigError("contour must sit at Re(s) <= 0; poles live to the right")
        if self.im_cut <= 0.0:
            raise ConfigError("im_cut must be positive")
        if self.samples < 64:
            raise ConfigError("need at least 64 samples per unit height")


def f_line_mass(
    T: float,
    kappa: float = 1.0 / 18.0,
    eps: float = 0.01,
    im_cut: float = 512.0,
) -> float:
    """(1 / 2 pi) * int |F(it)| dt for the dyadic-window cutoff's Mellin
    transform F, truncated once shells stop contributing.

    This is the constant C with |G(z)| <= C * max |gamma| on the Re(s) = 0
    line; it grows like log T through the window's width.  |F(-it)| equals
    |F(it)| because the cutoff is real, so only t >= 0 is integrated.
    """
    h0 = h0_cutoff(T, kappa=kappa, eps=eps)
    total = 0.0
    lo, hi = 0.0, 8.0
    while True:
        ts = np.linspace(lo, hi, max(128, int(64 * (hi - lo))))
        vals = np.abs(mellin_on_line(h0, 0.0, ts))
        shell = float(np.trapezoid(vals, ts))
        total += shell
        if lo > 0.0 and shell < 1e-12 * max(total, 1.0):
            break
        if hi >= im_cut:
            break
        lo, hi = hi, min(2.0 * hi, im_cut)
    return 2.0 * total / TWO_PI


def _auto_re_line(z: float) -> float:
    """Two canonical contour positions: Re(s) = 0 where the kernel is merely
    bounded, Re(s) = -3 where each leftward step shrinks the integrand
    (small z).  The value itself is contour-independent.
    """
    return -3.0 if z < 0.25 else 0.0


def g_kernel(
    z: float,
    T: float,
    params: LanglandsParams | None = None,
    contour: ContourSpec | None = None,
    tol: float = 1e-8,
    kappa: float = 1.0 / 18.0,
    eps: float = 0.01,
) -> complex:
    """Inverse-Mellin kernel G(z) by explicit contour integration.

    With contour=None the line is chosen automatically: deep (very negative)
    for small z where each leftward step shrinks the integrand, at Re(s) = 0
    otherwise.  The value is contour-independent because the integrand is
    holomorphic in Re(s) <= 0.
    """
    if z <= 0.0:
        raise ConfigError("kernel argument must be positive")
    if T <= 1.0:
        raise ConfigError("T must exceed 1")
    if kappa == eps:
        return 0.0 + 0.0j  # degenerate window: h0 and hence F vanish identically
    params = params or LanglandsParams()
    if contour is None:
        contour = ContourSpec(re_line=_auto_re_line(z), im_cut=48.0)
    h0 = h0_cutoff(T, kappa=kappa, eps=eps)
    sigma = contour.re_line

    def f_neg(ts: np.ndarray) -> np.ndarray:
        return mellin_on_line(h0, -sigma, -ts)  # F(-s) on the reflected line

    u_band = max(kappa, eps) * np.log(T) + np.log(2.0) + 1.0
    return _contour_quad(z, T, params, sigma, u_band, contour.im_cut, tol, f_neg)


def _contour_quad(
    z: float,
    T: float,
    params: LanglandsParams,
    sigma: float,
    u_band: float,
    im_cut: float,
    tol: float,
    f_neg,
) -> complex:
    """Shell-doubled GL16 quadrature of the kernel integrand along a line.

    f_neg maps the t array to F(-sigma - it); u_band bounds the Mellin
    factor's own frequency so panel widths resolve every phase component.
    """
    log_x = 3.0 * np.log(T) - np.log(4.0 * np.pi**2 * z)

    def local_freq(t: float) -> float:
        # phase rate of X^(it) * gamma(1/2 + sigma + i(T + t)) plus the band
        return abs(log_x - 3.0 * np.log(max(T + t, 2.0) / TWO_PI)) + u_band + 0.5

    def shell(lo: float, hi: float) -> complex:
        # GL16 panels sized to a few cycles of the local oscillation
        edges = [lo]
        while edges[-1] < hi:
            w = min(16.0, 2.0 * TWO_PI / local_freq(edges[-1]))
            edges.append(min(hi, edges[-1] + w))
        ts = []
        wts = []
        for a, b in zip(edges[:-1], edges[1:]):
            half = 0.5 * (b - a)
            ts.append(0.5 * (a + b) + half * _NODES16)
            wts.append(half * _W16)
        ts = np.concatenate(ts)
        wts = np.concatenate(wts)
        s = sigma + 1j * ts
        fvals = f_neg(ts)
        gvals = gamma_pi_line(0.5 + s + 1j * T, params)
        # ds = i dt cancels the i in the 1/(2 pi i) prefactor
        return kahan_csum(fvals * np.exp(s * log_x) * gvals * wts) / TWO_PI

    total = shell(-im_cut, im_cut)
    lo = im_cut
    while True:
        hi = 2.0 * lo
        added = shell(lo, hi) + shell(-hi, -lo)
        total += added
        if abs(added) < max(tol, 1e-15) / 2.0:
            break
        if hi > 16.0 * T:
            raise TailNotConvergedError(
                f"contour tail still {abs(added):.3e} at height {hi:.0f}"
            )
        lo = hi
    return complex(total)


def h2_h3(
    z: float,
    T: float,
    params: LanglandsParams | None = None,
    tol: float = 1e-8,
    kappa: float = 1.0 / 18.0,
    eps: float = 0.01,
) -> tuple[complex, complex]:
    """The kernel and its dual-parameter twin at the same argument."""
    params = params or LanglandsParams()
    g = g_kernel(z, T, params, tol=tol, kappa=kappa, eps=eps)
    g_dual = g_kernel(z, T, params.dual, tol=tol, kappa=kappa, eps=eps)
    return g, g_dual


def _model_phase(z, T: float, u_mid: float):
    """Leading phase of G(z) for moderate z, from the stationary band of the
    contour integrand at height T + t* with T + t* = T (2 pi / z)^(1/3):

        phi(z) = T log z + 3 T (2 pi / z)^(1/3) - u_mid * t*(z)

    where u_mid re-centres the Mellin factor's own oscillation.  Dividing
    this out leaves a function slow enough for a modest cubic spline.
    """
    cube = (TWO_PI / z) ** (1.0 / 3.0)
    return T * np.log(z) + 3.0 * T * cube - u_mid * T * (cube - 1.0)


@dataclass(frozen=True)
class GKernelTable:
    """Cubic-spline cache of G on a geometric grid, for bulk evaluation.

    G oscillates in z roughly like exp(i phi(z)) with phi from the
    stationary band, so the spline stores G / exp(i phi) and the call
    restores the phase.  `max_rel_error` records the ten-point validation
    against direct contour evaluation.
    """

    z_lo: float
    z_hi: float
    T: float
    u_mid: float
    grid: np.ndarray = field(repr=False, compare=False)
    _re: CubicSpline = field(repr=False, compare=False)
    _im: CubicSpline = field(repr=False, compare=False)
    max_rel_error: float = np.nan

    @classmethod
    def build(
        cls,
        z_lo: float,
        z_hi: float,
        T: float,
        params: LanglandsParams | None = None,
        tol: float = 1e-8,
        rel_tol: float = 0.02,
        kappa: float = 1.0 / 18.0,
        eps: float = 0.01,
        seed: int = 20260814,
    ) -> "GKernelTable":
        if not 0.0 < z_lo < z_hi:
            raise ConfigError("need 0 < z_lo < z_hi")
        if z_lo < 0.25:
            raise ConfigError("table covers the moderate-z regime (z >= 0.25) only")
        params = params or LanglandsParams()
        h0 = h0_cutoff(T, kappa=kappa, eps=eps)
        u_lo = -kappa * np.log(T)
        u_hi = np.log(2.0) - eps * np.log(T)
        u_mid = 0.5 * (u_lo + u_hi)
        u_band = max(kappa, eps) * np.log(T) + np.log(2.0) + 1.0
        sigma = 0.0  # bounded-regime line; the value is line-independent

        # F(it) on a uniform grid once; per-z integration then only needs
        # spline lookups plus log-gamma values.  Spacing resolves the
        # transform's bandwidth (the window's log-support).
        span = max(1536.0, 8.0 * T)
        taus = np.arange(-span, span + 0.25, 0.25)
        line = mellin_on_line(h0, 0.0, taus)
        fre = CubicSpline(taus, line.real)
        fim = CubicSpline(taus, line.imag)

        def f_neg(ts: np.ndarray) -> np.ndarray:
            out = fre(-ts) + 1j * fim(-ts)
            far = np.abs(ts) > span
            if np.any(far):
                out[far] = mellin_on_line(h0, 0.0, -ts[far])
            return out

        def direct(zz: float) -> complex:
            return _contour_quad(zz, T, params, sigma, u_band, 48.0, tol, f_neg)

        # Node count from the residual phase rate after dividing the model
        # phase out: the window edges sit u_band/2-ish either side of u_mid
        # and drag the stationary-band phase by (u - u_mid) * dt*/dz.
        zg = np.linspace(z_lo, z_hi, 65)
        dts = T * (TWO_PI / zg) ** (1.0 / 3.0) / (3.0 * zg)
        resid_rate = 0.5 * (u_hi - u_lo) * dts + 8.0 / zg
        budget = float(np.trapezoid(resid_rate, zg))
        n = max(64, int(np.ceil(1.3 * budget)) + 32)

        rng = np.random.default_rng(seed)
        checks = np.exp(rng.uniform(np.log(z_lo), np.log(z_hi), 10))
        truths = np.array([direct(float(zz)) for zz in checks])
        for _ in range(3):
            grid = np.geomspace(z_lo, z_hi, n)
            vals = np.array([direct(float(zz)) for zz in grid])
            hat = vals * np.exp(-1j * _model_phase(grid, T, u_mid))
            lg = np.log(grid)
            re_s = CubicSpline(lg, hat.real)
            im_s = CubicSpline(lg, hat.imag)
            approx = (re_s(np.log(checks)) + 1j * im_s(np.log(checks))) * np.exp(
                1j * _model_phase(checks, T, u_mid)
            )
            rel = float(np.max(np.abs(approx - truths) / np.abs(truths)))
            if rel <= rel_tol:
                return cls(
                    z_lo=float(z_lo),
                    z_hi=float(z_hi),
                    T=float(T),
                    u_mid=float(u_mid),
                    grid=grid,
                    _re=re_s,
                    _im=im_s,
                    max_rel_error=rel,
                )
            n *= 2
        raise ToleranceUnreachableError(
            f"kernel table validation stuck at relative error {rel:.3e}",
            achieved=rel,
        )

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        if np.any(z < self.z_lo * (1.0 - 1e-12)) or np.any(z > self.z_hi * (1.0 + 1e-12)):
            raise ConfigError("argument outside tabulated range")
        lg = np.log(z)
        out = (self._re(lg) + 1j * self._im(lg)) * np.exp(
            1j * _model_phase(z, self.T, self.u_mid)
        )
        return complex(out) if out.ndim == 0 else out

    def h2(self, z):
        """Real part of the tabulated kernel."""
        out = self(z)
        return out.real if isinstance(out, np.ndarray) else float(out.real)

    def h3(self, z):
        """Imaginary part of the tabulated kernel."""
        out = self(z)
        return out.imag if isinstance(out, np.ndarray) else float(out.imag)
