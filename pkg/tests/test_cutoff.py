import math

import numpy as np
import pytest

from splicelab.cutoff import (BaseCutoff, CutoffFamily, CutoffParams,
                              GluingProfile, _smoothstep_poly,
                              feasibility_check, length_function)


def test_smoothstep_known_polynomials():
    # classical smoothstep and smootherstep coefficients
    p1 = _smoothstep_poly(1)
    assert np.allclose(p1.coef[:4], [0.0, 0.0, 3.0, -2.0])
    p2 = _smoothstep_poly(2)
    assert np.allclose(p2.coef[:6], [0.0, 0.0, 0.0, 10.0, -15.0, 6.0])


def test_base_cutoff_endpoints_and_symmetry():
    alpha = BaseCutoff()
    assert alpha(-1.0) == 1.0
    assert alpha(1.0) == 0.0
    assert alpha(-3.0) == 1.0 and alpha(5.0) == 0.0
    t = np.linspace(-1.0, 1.0, 201)
    assert np.abs(alpha(t) + alpha(-t) - 1.0).max() < 1e-14
    vals = alpha(t)
    assert np.all(np.diff(vals) <= 1e-14)


def test_base_cutoff_flat_to_high_order():
    alpha = BaseCutoff(order=7)
    for j in range(1, 7):
        assert alpha(-1.0, deriv=j) == 0.0
        assert alpha(1.0, deriv=j) == 0.0
        assert alpha(-1.2, deriv=j) == 0.0


def test_base_cutoff_derivative_matches_fd():
    alpha = BaseCutoff()
    t = np.linspace(-0.95, 0.95, 101)
    h = 1e-6
    fd = (alpha(t + h) - alpha(t - h)) / (2.0 * h)
    assert np.abs(fd - alpha(t, deriv=1)).max() < 1e-7


def test_cutoff_params_validation():
    with pytest.raises(ValueError):
        CutoffParams(l=1.0, d=6.0)
    with pytest.raises(ValueError):
        CutoffParams(l=3.0, d=8.0)  # d < 3l
    CutoffParams(l=2.0, d=6.0)


def test_ramp_plateaus():
    fam = CutoffFamily(CutoffParams(l=2.0, d=8.0))
    t = np.array([-20.0, -10.1, -6.0, 0.0, 5.9, 10.1, 20.0])
    bm = np.asarray(fam.ramp(t, -1))
    bp = np.asarray(fam.ramp(t, +1))
    # the minus ramp drops in the window at +d, the plus ramp rises at -d
    assert np.all(bm[:5] == 1.0) and np.all(bm[5:] == 0.0)
    assert np.all(bp[:1] == 0.0) and np.all(bp[2:] == 1.0)


def test_determinant_bounds_exact():
    fam = CutoffFamily(CutoffParams(l=2.0, d=8.0))
    t = np.linspace(-14.0, 14.0, 40001)
    D = np.asarray(fam.det(t))
    assert D.min() >= 1.0
    assert D.max() <= 2.0
    mid = (t > -6.0) & (t < 6.0)
    out = (t <= -10.0) | (t >= 10.0)
    assert np.abs(D[mid] - 2.0).max() == 0.0
    assert np.abs(D[out] - 1.0).max() == 0.0


def test_connection_inverts_ramp_derivatives():
    # (e, f) satisfy e b_- + f b_+ = -b_-' and -e b_+ + f b_- = b_+'
    fam = CutoffFamily(CutoffParams(l=2.0, d=8.0))
    t = np.linspace(-12.0, 12.0, 2001)
    e, f = fam.connection(t)
    bm, bp = np.asarray(fam.ramp(t, -1)), np.asarray(fam.ramp(t, +1))
    bmp, bpp = np.asarray(fam.ramp(t, -1, 1)), np.asarray(fam.ramp(t, +1, 1))
    assert np.abs(e * bm + f * bp + bmp).max() < 1e-13
    assert np.abs(-e * bp + f * bm - bpp).max() < 1e-13


def test_coeff_derivative_matches_fd():
    fam = CutoffFamily(CutoffParams(l=2.0, d=8.0))
    t = np.linspace(-11.5, 11.5, 401)
    h = 1e-6
    for a, b in ((+1, +1), (+1, -1), (-1, +1), (-1, -1)):
        fd = (np.asarray(fam.coeff(a, b, t + h))
              - np.asarray(fam.coeff(a, b, t - h))) / (2.0 * h)
        exact = np.asarray(fam.coeff(a, b, t, deriv=1))
        assert np.abs(fd - exact).max() < 1e-6


def test_coeff_scale_invariance():
    # sup |b_a b_b' / D| scales like 1/l for fixed window shape
    f1 = CutoffFamily(CutoffParams(l=2.0, d=6.0))
    f2 = CutoffFamily(CutoffParams(l=4.0, d=12.0))
    c1 = f1.coeff_c_norm(-1, -1, 0) * f1.l
    c2 = f2.coeff_c_norm(-1, -1, 0) * f2.l
    assert c1 == pytest.approx(c2, rel=1e-4)


def test_region_tags():
    fam = CutoffFamily(CutoffParams(l=2.0, d=8.0))
    tags = fam.region([-20.0, -8.0, 0.0, 8.0, 20.0])
    assert list(tags) == ["M1", "splice-", "M2", "splice+", "M3"]


def test_length_function():
    assert length_function(math.e ** 2) == pytest.approx(math.e * 4.0)
    assert (length_function(100.0, order=2)
            == pytest.approx(100.0 ** (2.0 / 3.0) * math.log(100.0) ** 2))
    with pytest.raises(ValueError):
        length_function(0.5)


def test_gluing_profile_roundtrip_and_slope():
    prof = GluingProfile(r0=0.25)
    r = 0.2
    R = prof.neck(r)
    assert prof.r_of_neck(R) == pytest.approx(r, rel=1e-12)
    assert prof.neck(0.0) == math.inf
    h = 1e-7
    fd = (prof.neck(r + h) - prof.neck(r - h)) / (2.0 * h)
    assert prof.neck_slope(r) == pytest.approx(fd, rel=1e-5)
    assert prof.neck_slope(r) < 0.0


def test_feasibility_check():
    params = CutoffParams(l=2.0, d=8.0)
    assert feasibility_check(params, 20.0)
    assert not feasibility_check(params, 9.0)
