"""Tests for the smooth cutoff family and its Mellin machinery."""
import numpy as np
import pytest
from scipy.integrate import quad

from gl3osc.cutoffs import (
    ONE_OVER_2PI,
    ONE_OVER_4PI,
    ONE_OVER_8PI,
    Cutoff,
    bump_g,
    bump_v0,
    cutoff_h,
    derivative_proxy,
    g_cutoff,
    h0_cutoff,
    h1_cutoff,
    h_cutoff,
    mellin,
    mellin_invert,
    mellin_on_line,
    v0_cutoff,
    weight_w0_w,
    window_h0_h1,
)
from gl3osc.errors import ConfigError, MellinDivergenceError

# pinned value of the mollifier bump at 1/(2*pi) with c1 = 1; equals
# exp(-49/48) because 1/(2*pi) maps to u = -1/7 on the reference interval
V_STAR = 0.3602945695614048


def test_bump_v0_support_and_golden_point():
    assert bump_v0(0.0) == 0.0
    assert bump_v0(ONE_OVER_8PI) == 0.0
    assert bump_v0(2.0 * ONE_OVER_2PI) == 0.0
    assert abs(bump_v0(ONE_OVER_2PI) - V_STAR) < 1e-15
    assert abs(V_STAR - np.exp(-49.0 / 48.0)) < 1e-16


def test_bump_v0_positive_on_designated_interval():
    xs = np.linspace(ONE_OVER_4PI, ONE_OVER_2PI, 41)
    assert np.all(bump_v0(xs) > 0.0)


def test_bump_v0_c1_widens_support():
    wide = v0_cutoff(c1=3.0)
    assert wide.support_hi == pytest.approx(4.0 * ONE_OVER_2PI)
    assert wide(3.0 * ONE_OVER_2PI) > 0.0
    assert bump_v0(3.0 * ONE_OVER_2PI, c1=1.0) == 0.0


def test_cutoffs_vanish_outside_declared_support_exactly():
    rng = np.random.default_rng(20260814)
    for f in (v0_cutoff(), g_cutoff(), h0_cutoff(500.0, 1.0 / 18.0, 0.01),
              h1_cutoff(500.0, 1.0 / 18.0, 0.01)):
        left = rng.uniform(f.support_lo - 5.0, f.support_lo, 50)
        right = rng.uniform(f.support_hi, f.support_hi + 5.0, 50)
        assert np.all(f(left) == 0.0)
        assert np.all(f(right) == 0.0)
        inside = rng.uniform(f.support_lo, f.support_hi, 200)
        assert np.all(f(inside) >= 0.0)


def test_cutoff_rejects_bad_geometry():
    with pytest.raises(ConfigError):
        Cutoff(kind="bump", support_lo=1.0, support_hi=1.0, fn=lambda y: y)
    with pytest.raises(ConfigError):
        Cutoff(kind="bump", support_lo=0.0, support_hi=1.0, scale=-1.0, fn=lambda y: y)
    with pytest.raises(ConfigError):
        Cutoff(kind="plateau", support_lo=0.0, support_hi=1.0, plateau=(0.5, 2.0),
               fn=lambda y: y)


def test_plateau_h_values():
    assert cutoff_h(0.5) == 1.0
    assert cutoff_h(1.0) == 1.0
    assert cutoff_h(3.0) == 0.0
    ys = np.linspace(-3.0, 3.0, 121)
    vals = cutoff_h(ys)
    assert np.all((0.0 <= vals) & (vals <= 1.0))
    np.testing.assert_array_equal(cutoff_h(-ys), vals)
    assert np.all(cutoff_h(np.linspace(-1.0, 1.0, 21)) == 1.0)
    assert np.all(cutoff_h(np.linspace(2.0, 5.0, 21)) == 0.0)


def test_window_telescoping_identity():
    T, kappa, eps = 1000.0, 1.0 / 18.0, 0.01
    ys = np.geomspace(0.05, 20.0, 300)
    h0, h1 = window_h0_h1(ys, T, kappa, eps)
    rhs = cutoff_h(ys * T**-kappa) - cutoff_h(ys * T**kappa)
    np.testing.assert_allclose(h0 + h1, rhs, atol=1e-15)


def test_window_values_at_unit_point():
    h0, h1 = window_h0_h1(1.0, 1000.0, 1.0 / 18.0, 0.01)
    assert 0.0 <= h0 <= 1.0
    assert 0.0 <= h1 <= 1.0


def test_window_zero_deep_in_plateau():
    # all three dilations still sit inside h's plateau there
    h0, h1 = window_h0_h1(0.3, 1000.0, 1.0 / 18.0, 0.01)
    assert h0 == 0.0
    assert h1 == 0.0


def test_window_parameter_validation():
    with pytest.raises(ConfigError):
        window_h0_h1(1.0, 1000.0, 0.01, 0.05)   # eps >= kappa
    with pytest.raises(ConfigError):
        window_h0_h1(1.0, 1000.0, 1.0 / 18.0, -0.01)
    with pytest.raises(ConfigError):
        window_h0_h1(1.0, 0.5, 1.0 / 18.0, 0.01)  # T <= 1


def test_h0_support_matches_window_geometry():
    T, kappa, eps = 500.0, 1.0 / 18.0, 0.01
    f = h0_cutoff(T, kappa, eps)
    assert f.support_lo == pytest.approx(T**-kappa)
    assert f.support_hi == pytest.approx(2.0 * T**-eps)


def test_bump_g_support_and_normalization():
    assert bump_g(1.0) == 0.0
    assert bump_g(ONE_OVER_4PI) == 0.0
    assert bump_g(3.0 / (8.0 * np.pi)) > 0.0
    g = g_cutoff()
    mass, err = quad(lambda y: g(y) / y, g.support_lo, g.support_hi, limit=200)
    assert abs(mass - 1.0) < 1e-10


def test_weight_w0_w_support_and_ratio():
    assert weight_w0_w(0.5) == (0.0, 0.0)
    assert weight_w0_w(2.5) == (0.0, 0.0)
    w0, w = weight_w0_w(4.0 / 3.0)
    assert w0 > 0.0
    zs = np.linspace(1.01, 1.99, 37)
    w0s, ws = weight_w0_w(zs)
    np.testing.assert_allclose(ws * zs, w0s, atol=1e-14)


def test_mellin_of_h_is_positive_real_on_positive_axis():
    h = h_cutoff()
    for sigma in (0.5, 1.0, 2.0):
        ms = mellin(h, sigma)
        assert ms.value.imag == 0.0
        assert ms.value.real > 0.0
        assert ms.abs_err >= 0.0


def test_mellin_of_h_at_one_pinned():
    # plateau head contributes exactly 1, the symmetric ramp exactly 1/2
    ms = mellin(h_cutoff(), 1.0)
    assert abs(ms.value - 1.5) < 1e-12


def test_mellin_scale_law():
    h = h_cutoff()
    s = 1.0 + 1.0j
    base = mellin(h, s)
    scaled = mellin(h.scaled(2.0), s)
    assert abs(scaled.value - 2.0**s * base.value) < 1e-12


def test_mellin_divergence_for_plateau_at_zero():
    h = h_cutoff()
    with pytest.raises(MellinDivergenceError):
        mellin(h, 0.0)
    with pytest.raises(MellinDivergenceError):
        mellin(h, -1.0 + 2.0j)


def test_mellin_any_line_for_compactly_supported_window():
    # h0 lives away from 0, so every vertical line is fine
    f = h0_cutoff(500.0, 1.0 / 18.0, 0.01)
    ms = mellin(f, -2.0 + 1.0j)
    assert np.isfinite(ms.value.real) and np.isfinite(ms.value.imag)


def test_mellin_on_line_matches_pointwise_mellin():
    f = h0_cutoff(500.0, 1.0 / 18.0, 0.01)
    ts = np.array([-3.0, 0.0, 2.0])
    line = mellin_on_line(f, 0.5, ts)
    for t, got in zip(ts, line):
        want = mellin(f, 0.5 + 1j * t).value
        assert abs(got - want) < 1e-10


def test_mellin_inversion_round_trip():
    # reconstruct the window from its transform on the Re(s) = 1 line
    f = h0_cutoff(500.0, 1.0 / 18.0, 0.01)
    lo, hi = f.support_lo, f.support_hi
    points = np.linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 5)
    for y in points:
        got = mellin_invert(f, float(y), tol=1e-9, re_line=1.0)
        want = f(float(y))
        assert abs(got - want) <= 1e-6
        assert abs(got.imag) <= 1e-6


def test_mellin_invert_rejects_nonpositive_point():
    with pytest.raises(ConfigError):
        mellin_invert(h0_cutoff(500.0, 1.0 / 18.0, 0.01), 0.0)


def test_derivative_proxy_bounded_per_function():
    # smoothness proxy: 6th-order difference quotients stay finite, with a
    # per-function ceiling frozen from the implemented mollifier shapes
    bounds = {
        "h": (h_cutoff(), 1e7),
        "v0": (v0_cutoff(), 1e14),
        "g": (g_cutoff(), 1e18),
        "h0": (h0_cutoff(500.0, 1.0 / 18.0, 0.01), 1e8),
    }
    for f, ceiling in bounds.values():
        proxy = derivative_proxy(f, order=6)
        assert np.isfinite(proxy)
        assert proxy < ceiling


def test_derivative_proxy_order_validation():
    with pytest.raises(ConfigError):
        derivative_proxy(h_cutoff(), order=0)
    with pytest.raises(ConfigError):
        derivative_proxy(h_cutoff(), order=9)


def test_scaled_cutoff_tracks_support_and_values():
    g = g_cutoff()
    c = 4.0 * np.pi
    gc = g.scaled(c)
    assert gc.support_lo == pytest.approx(1.0)
    assert gc.support_hi == pytest.approx(2.0)
    xs = np.linspace(0.9, 2.1, 50)
    np.testing.assert_allclose(gc(xs), g(xs / c), atol=0.0)
