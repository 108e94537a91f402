"""Weighted coefficient sums along three routes with cross-route comparison.

The object is S(Y) = integral of the diagonal Whittaker average against
f0(y) g(y/Y) y^(iT-1/2) d*y, computed as:

  * sum route: C_T T^(-1/2) sum_n a(1,n) n^(-1/2-iT)
    f0(T^(3/2)/(2 pi n)) g(T^(3/2)/(2 pi n Y)); g truncates n to the dyadic
    window (N, 2N) with N = T^(3/2)/Y.
  * integral route: Y^(iT) sqrt(N) sum_n (a(1,n)/n) I_n with the per-n
    oscillatory integrals I_n = integral x^(-iT) e(-nT/(Nx)) V_n(x) dx,
    V_n(x) = V0(n/(Nx)) g(1/x) f0(Y/x) / sqrt(x).
  * discretized route: Y^(iT) N^(-1/2) sum_n a(1,n) w(n/N) Mhat_n, where the
    stationary-phase replacement trades V_n for w0(n/N) times the fixed
    amplitude V(x) = V0(1/x) f0(Y/x)/sqrt(x), and Mhat_n recovers the main
    integral from the windowed-sum-minus-dual-sum identity averaged over an
    amplifier's prime pairs.

The first two differ by the transformation formula's O(T^(-3/4+eps)) tail;
the last two by the per-n O(T^(-3/2)) replacement error. Both envelopes
carry calibrated constants frozen below.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .coeffs import CoefficientTable
from .cutoffs import Cutoff, g_cutoff, h1_cutoff, v0_cutoff, weight_w0_w
from .errors import ConfigError, TableTooSmallError
from .gammafactor import GKernelTable, LanglandsParams
from .keyident import AmplifierSpec, KeyIdentityInstance, amplified_average
from .oscquad import OscInstance, integrate_main
from .util import TWO_PI, kahan_csum
from .whittaker import c_constant

# Absolute sum-versus-integral envelope K_ROUTE_34 * T^(-0.7); calibrated on
# the d3 model over T in {100, 200, 500} and all three f0 choices, 4x cushion
# over the worst measured ratio (27.4 at T = 500, h1; the per-n stationary
# errors share the main term's phase, so they add coherently and the gap
# wanders below the envelope rather than decaying monotonically).
K_ROUTE_34 = 110.0

# Per-n stationary-phase replacement envelope K_SP_REL * T^(-3/2), weighted
# by |a(1,n)| w(n/N) (and N/n on the integral-only fringe); calibrated on the
# d3 model at T in {100, 200}, 4x cushion over the worst ratio (0.83 at 200).
K_SP_REL = 3.5

F0_CHOICES = ("h1", "h2", "h3")


@dataclass(frozen=True)
class SumSpec:
    """One sum configuration: frequency T, window Y, weight choice, table."""

    T: float
    table: CoefficientTable
    Y: float = 4.0 * np.pi
    f0_choice: str = "h1"
    tol: float = 1e-8
    kappa: float = 1.0
    eps: float = 0.02
    c1: float = 1.0
    params: LanglandsParams = field(default_factory=LanglandsParams)

    def __post_init__(self):
        if self.T <= 1.0:
            raise ConfigError("need T > 1")
        if self.tol <= 0.0:
            raise ConfigError("tol must be positive")
        if not (0.0 < self.eps < self.kappa <= 1.5):
            raise ConfigError("need 0 < eps < kappa <= 3/2")
        if self.c1 <= 0.0:
            raise ConfigError("c1 must be positive")
        if not (self.T**-self.eps <= self.Y <= self.T**self.kappa):
            raise ConfigError("Y must lie in [T^-eps, T^kappa]")
        if self.f0_choice not in F0_CHOICES:
            raise ConfigError(f"f0_choice must be one of {F0_CHOICES}")
        need = 2 * int(np.ceil(self.T ** (1.5 + self.eps)))
        if self.table.x_max < need:
            raise TableTooSmallError(
                f"table covers {self.table.x_max}, sum support needs {need}")
        if self.f0_choice != "h1" and self._kernel_range()[0] < 0.25:
            raise ConfigError(
                "h2/h3 weights need Y >= 2 pi so the kernel argument stays "
                "in the tabulated moderate-z regime")

    @property
    def N(self) -> float:
        """The dyadic center T^(3/2)/Y of the coefficient window."""
        return self.T**1.5 / self.Y

    def _kernel_range(self) -> tuple[float, float]:
        # the fixed amplitude V queries f0 on (Y/(8 pi), (1+c1) Y/(2 pi));
        # the g-windowed routes stay inside [Y/(4 pi), Y/(2 pi)]
        return (0.995 * self.Y / (4.0 * TWO_PI),
                1.005 * (1.0 + self.c1) * self.Y / TWO_PI)

    @cached_property
    def _kernel_table(self) -> GKernelTable | None:
        if self.f0_choice == "h1":
            return None
        lo, hi = self._kernel_range()
        return GKernelTable.build(lo, hi, self.T, params=self.params,
                                  kappa=self.kappa, eps=self.eps)

    @cached_property
    def f0(self):
        """The weight as an array-in, array-out callable."""
        if self.f0_choice == "h1":
            return h1_cutoff(self.T, self.kappa, self.eps).fn
        table = self._kernel_table
        return table.h2 if self.f0_choice == "h2" else table.h3

    def sum_window(self) -> tuple[int, int]:
        """Indices with g(T^(3/2)/(2 pi n Y)) nonzero: the open (N, 2N)."""
        n = self.N
        return int(np.floor(n)) + 1, int(np.ceil(2.0 * n)) - 1

    def integral_window(self) -> tuple[int, int]:
        """Indices where V_n has nonempty support: (N/4, 2 (1+c1) N)."""
        n = self.N
        lo = max(1, int(np.floor(n / 4.0)) + 1)
        hi = int(np.ceil(2.0 * (1.0 + self.c1) * n)) - 1
        return lo, hi


def s_sum_form(spec: SumSpec) -> complex:
    """The transformation-formula route; exact finite sum, compensated."""
    n_lo, n_hi = spec.sum_window()
    if n_hi > spec.table.x_max:
        raise TableTooSmallError(
            f"sum window reaches {n_hi}, table covers {spec.table.x_max}")
    if n_hi < n_lo:
        return 0.0 + 0.0j
    g = g_cutoff()
    ns = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    coeffs = spec.table.values[ns]
    live = coeffs != 0.0
    if not np.any(live):
        return 0.0 + 0.0j
    ns = ns[live]
    nf = ns.astype(float)
    arg = spec.T**1.5 / (TWO_PI * nf)
    terms = (coeffs[live]
             * np.exp(-1j * spec.T * np.log(nf)) / np.sqrt(nf)
             * spec.f0(arg) * g.fn(arg / spec.Y))
    pref = c_constant(spec.T, spec.c1) / np.sqrt(spec.T)
    return complex(pref * kahan_csum(terms))


def _vn_cutoff(spec: SumSpec, n: int) -> Cutoff | None:
    """Per-n integrand amplitude V_n, or None when its support is empty."""
    v0 = v0_cutoff(spec.c1)
    g = g_cutoff()
    ratio = n / spec.N
    lo = max(TWO_PI, ratio / v0.support_hi)
    hi = min(2.0 * TWO_PI, ratio / v0.support_lo)
    if not lo < hi:
        return None
    f0, Y, N = spec.f0, spec.Y, spec.N

    def fn(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0.0
        base = np.zeros_like(x)
        base[pos] = v0.fn(n / (N * x[pos])) * g.fn(1.0 / x[pos])
        live = base != 0.0
        if np.any(live):
            out[live] = base[live] * f0(Y / x[live]) / np.sqrt(x[live])
        return out

    return Cutoff(kind="composite", support_lo=lo, support_hi=hi, fn=fn)


def _integral_route(spec: SumSpec) -> tuple[complex, float]:
    """Value and accumulated quadrature bound of the per-n oracle route."""
    n_lo, n_hi = spec.integral_window()
    if n_hi > spec.table.x_max:
        raise TableTooSmallError(
            f"integral window reaches {n_hi}, table covers {spec.table.x_max}")
    terms = []
    err = 0.0
    root_n = np.sqrt(spec.N)
    for n in range(n_lo, n_hi + 1):
        a = spec.table.values[n]
        if a == 0.0:
            continue
        amp = _vn_cutoff(spec, n)
        if amp is None:
            continue
        res = integrate_main(
            OscInstance(T=spec.T, n=n, N=spec.N, amplitude=amp, tol=spec.tol))
        terms.append(a / n * res.value)
        err += abs(a) / n * res.abs_err
    pref = np.exp(1j * spec.T * np.log(spec.Y)) * root_n
    return complex(pref * kahan_csum(terms)), float(root_n * err)


def s_integral_form(spec: SumSpec) -> complex:
    """The unfolded per-n oscillatory-integral route."""
    return _integral_route(spec)[0]


def _v_cutoff(spec: SumSpec) -> Cutoff:
    """The fixed amplitude V of the discretized route (no g factor)."""
    v0 = v0_cutoff(spec.c1)
    f0, Y = spec.f0, spec.Y
    lo = 1.0 / v0.support_hi
    hi = 1.0 / v0.support_lo

    def fn(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0.0
        base = np.zeros_like(x)
        base[pos] = v0.fn(1.0 / x[pos])
        live = base != 0.0
        if np.any(live):
            out[live] = base[live] * f0(Y / x[live]) / np.sqrt(x[live])
        return out

    return Cutoff(kind="composite", support_lo=lo, support_hi=hi, fn=fn)


def _keyident_route(spec: SumSpec,
                    amp: AmplifierSpec) -> tuple[complex, float]:
    """Value and quadrature bound of the discretized, amplified route."""
    n_lo, n_hi = spec.sum_window()
    if n_hi > spec.table.x_max:
        raise TableTooSmallError(
            f"sum window reaches {n_hi}, table covers {spec.table.x_max}")
    v_amp = _v_cutoff(spec)
    wpc = amp.weighted_pair_count()
    p0, l0 = amp.pairs[0]
    # each pair's identity residual obeys the enforced tolerance-share bound
    pair_budget = 10.0 * 2.0 * spec.tol
    terms = []
    err = 0.0
    for n in range(n_lo, n_hi + 1):
        a = spec.table.values[n]
        if a == 0.0:
            continue
        _, w = weight_w0_w(n / spec.N, spec.c1)
        if w == 0.0:
            continue
        base = KeyIdentityInstance(T=spec.T, n=n, N=spec.N, p=p0, l=l0,
                                   tol=spec.tol, amplitude=v_amp)
        a_avg, o_avg = amplified_average(base, amp)
        m_hat = (a_avg - o_avg) / wpc
        terms.append(a * w * m_hat)
        err += abs(a) * w * pair_budget
    pref = np.exp(1j * spec.T * np.log(spec.Y)) / np.sqrt(spec.N)
    return complex(pref * kahan_csum(terms)), float(err / np.sqrt(spec.N))


def s_keyident_form(spec: SumSpec, amp: AmplifierSpec) -> complex:
    """The discretized route with the amplified main-integral replacement."""
    return _keyident_route(spec, amp)[0]


def keyident_envelope(spec: SumSpec) -> float:
    """Stationary-phase replacement budget for keyident versus integral.

    Each window term carries K_SP_REL * T^(-3/2) weighted by |a(1,n)| w(n/N);
    fringe terms present only in the integral route (stationary point outside
    the g-support) are charged with weight N/n. The constant is calibrated
    against full-mass tables, where the per-n replacement errors carry
    varying phases and partially cancel; very sparse tables can exceed this
    aggregate envelope even though each per-n error is O(T^(-3/2)).
    """
    n_lo, n_hi = spec.integral_window()
    k_lo, k_hi = spec.sum_window()
    ns = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    mags = np.abs(spec.table.values[ns])
    _, w = weight_w0_w(ns / spec.N, spec.c1)
    w = np.asarray(w)
    fringe = (ns < k_lo) | (ns > k_hi)
    w[fringe] = np.maximum(w[fringe], spec.N / ns[fringe])
    weighted = float(np.sum(mags * w))
    return K_SP_REL * spec.T**-1.5 * weighted / np.sqrt(spec.N)


@dataclass(frozen=True)
class RouteReport:
    """All three routes with pairwise residuals and their budgets."""

    T: float
    Y: float
    N: float
    f0_choice: str
    s_sum: complex
    s_integral: complex
    s_keyident: complex
    resid_sum_integral: float
    resid_integral_keyident: float
    resid_sum_keyident: float
    budget_sum_integral: float
    budget_keyident: float
    quad_err_integral: float
    quad_err_keyident: float
    passed_sum_integral: bool
    passed_keyident: bool

    @property
    def passed(self) -> bool:
        return self.passed_sum_integral and self.passed_keyident


def compare_routes(spec: SumSpec, amp: AmplifierSpec) -> RouteReport:
    """Run all three routes and check the two envelope claims.

    Deterministic: fixed summation orders, no sampling; repeated runs give
    identical reports.
    """
    s_sum = s_sum_form(spec)
    s_int, int_err = _integral_route(spec)
    s_key, key_err = _keyident_route(spec, amp)
    budget_34 = K_ROUTE_34 * spec.T**-0.7
    budget_key = keyident_envelope(spec) + key_err + int_err
    r_si = abs(s_sum - s_int)
    r_ik = abs(s_int - s_key)
    r_sk = abs(s_sum - s_key)
    return RouteReport(
        T=spec.T, Y=spec.Y, N=spec.N, f0_choice=spec.f0_choice,
        s_sum=s_sum, s_integral=s_int, s_keyident=s_key,
        resid_sum_integral=r_si, resid_integral_keyident=r_ik,
        resid_sum_keyident=r_sk,
        budget_sum_integral=budget_34, budget_keyident=budget_key,
        quad_err_integral=int_err, quad_err_keyident=key_err,
        passed_sum_integral=r_si <= budget_34,
        passed_keyident=r_ik <= budget_key)
