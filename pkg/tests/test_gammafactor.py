"""Tests for the degree-3 gamma factor and the contour kernel."""
import numpy as np
import pytest

from gl3osc.errors import (
    ConfigError,
    GammaPoleError,
    InsufficientGridError,
    ToleranceUnreachableError,
)
from gl3osc.gammafactor import (
    DEFAULT_ALPHA,
    ContourSpec,
    GKernelTable,
    LanglandsParams,
    f_line_mass,
    g_kernel,
    gamma_decay_fit,
    gamma_pi,
    gamma_pi_line,
    h2_h3,
)
from gl3osc.util import TWO_PI

ZERO_PARAMS = LanglandsParams(alpha=(0.0j, 0.0j, 0.0j))

# pinned line mass (1/2*pi) integral |F(it)| dt for the T = 500 window
C_F_500 = 0.7885911291622076


def test_params_validation_and_dual():
    with pytest.raises(ConfigError):
        LanglandsParams(alpha=(0.5 + 0.0j, 0.0j, 0.0j))
    p = LanglandsParams(alpha=(0.1 + 0.2j, -0.1 - 0.3j, 0.0 + 0.1j))
    assert p.dual.alpha == (-0.1 + 0.2j, 0.1 - 0.3j, -0.0 + 0.1j)
    # the default parameters are self-dual
    q = LanglandsParams(alpha=DEFAULT_ALPHA)
    assert q.dual.alpha == q.alpha


def test_gamma_at_half_with_trivial_parameters():
    assert abs(gamma_pi(0.5, ZERO_PARAMS) - 1.0) < 1e-12


def test_gamma_unimodular_on_critical_line():
    # purely imaginary parameters pair conjugate arguments in each ratio
    ts = np.linspace(-40.0, 40.0, 10)
    for t in ts:
        val = gamma_pi(0.5 + 1j * float(t))
        assert abs(abs(val) - 1.0) < 1e-10


def test_gamma_schwarz_reflection():
    p = LanglandsParams(alpha=(0.2 + 0.1j, -0.1 + 0.05j, -0.1 - 0.15j))
    pbar = LanglandsParams(alpha=tuple(a.conjugate() for a in p.alpha))
    for s in (0.3 + 7.0j, -1.2 + 100.0j, 0.5 - 3.0j):
        assert abs(gamma_pi(s.conjugate(), pbar) - gamma_pi(s, p).conjugate()) < 1e-10


def test_gamma_modulus_law_on_zero_line():
    # |gamma(0 + iT)| = (T/2*pi)^(3/2) for trivial parameters
    for T in (500.0, 1000.0):
        got = abs(gamma_pi(1j * T, ZERO_PARAMS))
        want = (T / TWO_PI) ** 1.5
        assert abs(got - want) < 1e-9 * want


def test_gamma_growth_rate_between_two_heights():
    # growth exponent 3/2 at Re = 0, probed by doubling the height
    ratio = abs(gamma_pi(2000.0j, ZERO_PARAMS)) / abs(gamma_pi(1000.0j, ZERO_PARAMS))
    want = 2.0**1.5
    assert want / 2.0 <= ratio <= want * 2.0


def test_gamma_pole_handling():
    # numerator pole: s = 1 makes Gamma((1 - s)/2) = Gamma(0)
    with pytest.raises(GammaPoleError):
        gamma_pi(1.0, ZERO_PARAMS)
    # denominator poles return exact zero
    assert gamma_pi(0.0, ZERO_PARAMS) == 0.0
    assert gamma_pi(-2.0, ZERO_PARAMS) == 0.0


def test_gamma_finite_in_pole_free_strip():
    rng = np.random.default_rng(20260814)
    sig = rng.uniform(-3.0, 0.5, 40)
    tau = rng.uniform(-200.0, 200.0, 40)
    for s in sig + 1j * tau:
        val = gamma_pi(complex(s))
        assert np.isfinite(val.real) and np.isfinite(val.imag)


def test_gamma_line_matches_scalar():
    ss = np.array([0.5 + 10.0j, -1.0 + 50.0j, -2.5 + 300.0j])
    line = gamma_pi_line(ss, LanglandsParams(alpha=DEFAULT_ALPHA))
    for s, got in zip(ss, line):
        assert abs(got - gamma_pi(complex(s))) < 1e-10 * abs(got)


def test_decay_fit_slopes():
    t_grid = [250.0, 500.0, 1000.0, 2000.0]
    for sigma, want in ((0.0, 0.0), (-0.5, 1.5), (-1.0, 3.0)):
        fit = gamma_decay_fit(sigma, t_grid)
        assert abs(fit.slope - want) <= 0.3
        assert fit.predicted_slope == -3.0 * sigma


def test_decay_fit_needs_four_heights():
    with pytest.raises(InsufficientGridError):
        gamma_decay_fit(-0.5, [250.0, 500.0, 1000.0])


def test_contour_spec_validation():
    with pytest.raises(ConfigError):
        ContourSpec(re_line=1.0)
    with pytest.raises(ConfigError):
        ContourSpec(im_cut=0.0)
    with pytest.raises(ConfigError):
        ContourSpec(samples=32)


def test_g_kernel_argument_validation():
    with pytest.raises(ConfigError):
        g_kernel(0.0, 500.0)
    with pytest.raises(ConfigError):
        g_kernel(1.0, 0.5)


def test_g_kernel_degenerate_window_vanishes():
    # equal window exponents collapse the defining cutoff to zero
    assert g_kernel(1.0, 500.0, kappa=0.02, eps=0.02) == 0.0


def test_f_line_mass_pinned():
    got = f_line_mass(500.0)
    assert abs(got - C_F_500) < 1e-3
    assert f_line_mass(200.0) > 0.0


def test_g_kernel_bounded_by_line_mass():
    T = 200.0
    c_f = f_line_mass(T)
    for z in (0.5, 1.0, 2.0):
        assert abs(g_kernel(z, T, tol=1e-8)) <= c_f
    assert abs(g_kernel(1.0, 500.0, tol=1e-8)) <= f_line_mass(500.0)


def test_g_kernel_scaled_derivatives_bounded():
    # finite-difference proxies for z G'(z) and z^2 G''(z); generous j=2
    # constant since the bound's constant grows with the derivative order
    T = 200.0
    for z in (0.5, 1.0, 2.0):
        d = 1e-3 * z
        g0 = g_kernel(z, T, tol=1e-10)
        gp = g_kernel(z + d, T, tol=1e-10)
        gm = g_kernel(z - d, T, tol=1e-10)
        assert abs(z * (gp - gm) / (2.0 * d)) <= 1.0
        assert abs(z * z * (gp - 2.0 * g0 + gm) / d**2) <= 16.0


def test_g_kernel_contour_independence():
    # the integrand is pole-free left of the origin, so the two canonical
    # contour positions must agree
    a = g_kernel(0.5, 500.0, tol=1e-10)
    b = g_kernel(0.5, 500.0, contour=ContourSpec(re_line=-3.0), tol=1e-10)
    assert abs(a - b) <= 1e-12


def test_g_kernel_pair_self_dual():
    g, g_dual = h2_h3(1.0, 200.0, tol=1e-9)
    assert g == g_dual  # default parameters are self-dual
    assert np.isfinite(g.real) and np.isfinite(g.imag)


def test_kernel_table_accuracy_and_parts():
    T = 200.0
    table = GKernelTable.build(0.5, 2.0, T)
    assert table.max_rel_error <= 0.02
    zs = np.array([0.61, 1.07, 1.93])
    via = table(zs)
    direct = np.array([g_kernel(float(z), T, tol=1e-10) for z in zs])
    scale = np.max(np.abs(direct))
    assert np.max(np.abs(via - direct)) <= 0.02 * scale
    np.testing.assert_allclose(table.h2(zs) + 1j * table.h3(zs), via, atol=0.0)
    # scalar calls agree with vectorized ones
    assert table(float(zs[0])) == via[0]


def test_kernel_table_range_enforcement():
    table = GKernelTable.build(0.5, 2.0, 200.0)
    with pytest.raises(ConfigError):
        table(0.2)
    with pytest.raises(ConfigError):
        table(2.5)
    with pytest.raises(ConfigError):
        GKernelTable.build(0.1, 2.0, 200.0)  # below the shallow-contour range
