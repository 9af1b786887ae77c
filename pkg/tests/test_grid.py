import numpy as np
import pytest

from splicelab.grid import (CylinderGrid, DiscreteMap, DomainError, d_s, d_t,
                            make_grid, map_from_function, max_abs,
                            multiply_profile, resample, restrict, translate,
                            zero_map)


def test_grid_spacing_and_axes():
    g = make_grid(-2.0, 3.0, 51, 8)
    assert g.h_t == pytest.approx(0.1)
    assert g.h_s == pytest.approx(2.0 * np.pi / 8)
    assert g.t[0] == -2.0 and g.t[-1] == pytest.approx(3.0)
    assert g.s[0] == 0.0 and g.s[-1] < 2.0 * np.pi


def test_grid_validation():
    with pytest.raises(ValueError):
        make_grid(1.0, 1.0, 10, 8)
    with pytest.raises(ValueError):
        make_grid(0.0, 1.0, 3, 8)
    with pytest.raises(ValueError):
        make_grid(0.0, 1.0, 10, 2)


def test_map_shape_checks():
    g = make_grid(0.0, 1.0, 11, 8)
    with pytest.raises(ValueError):
        DiscreteMap(g, np.zeros((10, 8)))
    u = DiscreteMap(g, np.zeros((11, 8)))
    assert u.n_comp == 1
    bad = np.zeros((11, 8))
    bad[3, 2] = np.nan
    with pytest.raises(ValueError):
        DiscreteMap(g, bad)


def test_d_t_exact_on_cubics():
    # 4th-order stencils differentiate cubics exactly, edges included
    g = make_grid(-1.0, 1.0, 21, 4)
    u = map_from_function(g, lambda t, s: t ** 3 - 2.0 * t + 0.5)
    du = d_t(u)
    expect = 3.0 * g.t ** 2 - 2.0
    err = np.abs(du.values[:, 0, 0].real - expect).max()
    assert err < 1e-12


def test_d_t_fourth_order_convergence():
    errs = []
    for n in (41, 81):
        g = make_grid(0.0, 2.0, n, 4)
        u = map_from_function(g, lambda t, s: np.sin(3.0 * t))
        du = d_t(u)
        errs.append(np.abs(du.values[:, 0, 0].real
                           - 3.0 * np.cos(3.0 * g.t)).max())
    order = np.log2(errs[0] / errs[1])
    assert 3.5 < order < 4.5


def test_d_s_spectral_exact():
    g = make_grid(0.0, 1.0, 5, 16)
    u = map_from_function(g, lambda t, s: np.cos(2.0 * s) + np.sin(s))
    du = d_s(u)
    tt, ss = np.meshgrid(g.t, g.s, indexing="ij")
    expect = -2.0 * np.sin(2.0 * ss) + np.cos(ss)
    assert np.abs(du.values[:, :, 0].real - expect).max() < 1e-12


def test_translate_aligned_is_index_shift():
    g = make_grid(0.0, 4.0, 41, 8)
    u = map_from_function(g, lambda t, s: np.exp(-t) * np.cos(s))
    v = translate(u, 0.5)
    inside = g.t + 0.5 <= 4.0 + 1e-12
    assert np.allclose(v.values[inside],
                       u.values[np.flatnonzero(inside) + 5], atol=0)
    assert not v.valid[-3:].any()
    with pytest.raises(DomainError):
        v.require_valid()


def test_translate_zero_fill():
    g = make_grid(0.0, 4.0, 41, 8)
    u = map_from_function(g, lambda t, s: np.exp(-t))
    v = translate(u, 1.0, fill="zero")
    assert v.valid.all()
    assert np.all(v.values[-5:] == 0.0)
    with pytest.raises(ValueError):
        translate(u, 1.0, fill="nonsense")


def test_fractional_shift_uses_spline():
    g = make_grid(0.0, 4.0, 81, 8)
    u = map_from_function(g, lambda t, s: np.sin(t))
    v = translate(u, 0.525)
    inside = v.valid
    expect = np.sin(g.t[inside] + 0.525)
    err = np.abs(v.values[inside, 0, 0].real - expect).max()
    assert err < 1e-5


def test_angular_shift_phase_exact():
    g = make_grid(0.0, 1.0, 5, 16)
    u = map_from_function(g, lambda t, s: np.exp(2j * s))
    v = translate(u, 0.0, dtheta=0.3)
    tt, ss = np.meshgrid(g.t, g.s, indexing="ij")
    expect = np.exp(2j * (ss + 0.3))
    assert np.abs(v.values[:, :, 0] - expect).max() < 1e-12


def test_multiply_profile_mask_rules():
    g = make_grid(0.0, 4.0, 41, 8)
    u = translate(map_from_function(g, lambda t, s: t + 1.0), 1.0)
    prof = np.where(g.t <= 2.5, 1.0, 0.0)
    w = multiply_profile(u, prof)
    assert w.valid.all()
    bad = np.ones(g.n_t)
    with pytest.raises(DomainError):
        multiply_profile(u, bad)
    with pytest.raises(ValueError):
        multiply_profile(u, np.ones(5))


def test_restrict():
    g = make_grid(-2.0, 2.0, 41, 8)
    u = map_from_function(g, lambda t, s: t)
    v = restrict(u, -1.0, 1.0)
    assert v.grid.t_min == pytest.approx(-1.0)
    assert v.grid.t_max == pytest.approx(1.0)
    assert v.grid.n_t == 21
    w = translate(u, 1.0)
    with pytest.raises(DomainError):
        restrict(w, 0.0, 2.0)


def test_arithmetic_and_max_abs():
    g = make_grid(0.0, 1.0, 11, 8)
    u = map_from_function(g, lambda t, s: t)
    v = map_from_function(g, lambda t, s: 1.0 - t)
    w = 2.0 * u + v - u
    assert max_abs(w - map_from_function(g, lambda t, s: 1.0 + 0.0 * t)) < 1e-14
    assert max_abs(zero_map(g)) == 0.0
