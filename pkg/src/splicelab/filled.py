"""The linear filled section and its derivatives.

Two routes compute the same object.  The conjugated route glues the pair,
applies the covariant axial derivative (plain d/dt on the neck, d/dt plus
the connection coupling on the anti-glued cylinder), and unglues.  The
direct route evaluates the closed formula: d/dt of the pair plus an error
term built from translated cut-off coefficients.  Their agreement at
stencil accuracy is the central identity of this module.

Cut-off coefficient shorthand (all divided by the determinant D):

    g1 = beta_+ beta_+'   supported in [-d-l, -d+l]
    g2 = beta_+ beta_-'   supported in [ d-l,  d+l]
    g3 = beta_- beta_+'   supported in [-d-l, -d+l]
    g4 = beta_- beta_-'   supported in [ d-l,  d+l]
"""

from __future__ import annotations

import math

import numpy as np

from .cutoff import CutoffFamily, GluingProfile
from .grid import DiscreteMap, d_s, d_t, multiply_profile, resample, zero_map
from .splicing import (GluedPair, GluingParam, MapPair, total_glue,
                       total_unglue)


def _coeff_profile(family: CutoffFamily, t_native: np.ndarray, shift: float,
                   a_sign: int, b_sign: int, deriv: int = 0) -> np.ndarray:
    return np.asarray(family.coeff(a_sign, b_sign, t_native + shift, deriv=deriv))


def _check_truncation(pair: MapPair, a: GluingParam, family: CutoffFamily):
    reach = a.R + family.d + family.l
    if -pair.minus.grid.t_min < reach or pair.plus.grid.t_max < reach:
        raise ValueError(
            f"truncation range must reach R + d + l = {reach:g} on both halves"
        )


def covariant_dt(glued: GluedPair, family: CutoffFamily) -> GluedPair:
    """d/dt on the neck; d/dt plus the connection coupling on the anti side."""
    anti_t = glued.anti.grid.t
    e, f = family.connection(anti_t)
    coupled = resample(glued.glued, glued.anti.grid)
    anti = (d_t(glued.anti)
            + multiply_profile(glued.anti, np.asarray(e))
            + multiply_profile(coupled, np.asarray(f)))
    return GluedPair(anti, d_t(glued.glued))


def error_term(pair: MapPair, a: GluingParam, family: CutoffFamily) -> MapPair:
    """The deviation of the filled section from plain d/dt."""
    if a.is_degenerate:
        return MapPair(zero_map(pair.minus.grid, pair.minus.n_comp),
                       zero_map(pair.plus.grid, pair.plus.n_comp))
    _check_truncation(pair, a, family)
    R, th = a.R, a.theta
    tm = pair.minus.grid.t
    tp = pair.plus.grid.t

    up_shift = resample(pair.plus, pair.minus.grid, dt=2 * R, dtheta=2 * th)
    e_minus = (multiply_profile(pair.minus,
                                _coeff_profile(family, tm, R, +1, +1))
               + multiply_profile(up_shift,
                                  _coeff_profile(family, tm, R, +1, -1)))

    um_shift = resample(pair.minus, pair.plus.grid, dt=-2 * R, dtheta=-2 * th)
    e_plus = (multiply_profile(um_shift,
                               _coeff_profile(family, tp, -R, -1, +1))
              + multiply_profile(pair.plus,
                                 _coeff_profile(family, tp, -R, -1, -1)))
    return MapPair(e_minus, e_plus)


def filled_direct(pair: MapPair, a: GluingParam, family: CutoffFamily) -> MapPair:
    """Closed formula: d/dt of the pair plus the error term."""
    err = error_term(pair, a, family)
    return MapPair(d_t(pair.minus) + err.minus, d_t(pair.plus) + err.plus)


def filled_conjugated(pair: MapPair, a: GluingParam,
                      family: CutoffFamily) -> MapPair:
    """Literal pipeline: glue, covariant derivative, unglue."""
    if a.is_degenerate:
        return MapPair(d_t(pair.minus), d_t(pair.plus))
    glued = total_glue(pair, a, family)
    phi = covariant_dt(glued, family)
    return total_unglue(phi, a, family, pair.minus.grid, pair.plus.grid)


def deriv_map(xi: MapPair, a: GluingParam, family: CutoffFamily) -> MapPair:
    """Derivative in the map direction: the section is linear, so this is
    the section itself applied to the variation (independent of the base map)."""
    return filled_direct(xi, a, family)


def deriv_neck(pair: MapPair, a: GluingParam, family: CutoffFamily) -> MapPair:
    """Partial derivative along the neck length R.

    Product rule: translated coefficients differentiate to (+/-) their
    axial derivative; translated maps contribute (+/-)2 times their axial
    derivative (the argument moves at speed 2R).
    """
    if a.is_degenerate:
        return MapPair(zero_map(pair.minus.grid, pair.minus.n_comp),
                       zero_map(pair.plus.grid, pair.plus.n_comp))
    _check_truncation(pair, a, family)
    R, th = a.R, a.theta
    tm = pair.minus.grid.t
    tp = pair.plus.grid.t

    up_shift = resample(pair.plus, pair.minus.grid, dt=2 * R, dtheta=2 * th)
    dup_shift = resample(d_t(pair.plus), pair.minus.grid, dt=2 * R, dtheta=2 * th)
    e_minus = (multiply_profile(pair.minus,
                                _coeff_profile(family, tm, R, +1, +1, deriv=1))
               + multiply_profile(up_shift,
                                  _coeff_profile(family, tm, R, +1, -1, deriv=1))
               + 2.0 * multiply_profile(dup_shift,
                                        _coeff_profile(family, tm, R, +1, -1)))

    um_shift = resample(pair.minus, pair.plus.grid, dt=-2 * R, dtheta=-2 * th)
    dum_shift = resample(d_t(pair.minus), pair.plus.grid, dt=-2 * R, dtheta=-2 * th)
    e_plus = (-1.0 * multiply_profile(um_shift,
                                      _coeff_profile(family, tp, -R, -1, +1, deriv=1))
              - 2.0 * multiply_profile(dum_shift,
                                       _coeff_profile(family, tp, -R, -1, +1))
              - 1.0 * multiply_profile(pair.plus,
                                       _coeff_profile(family, tp, -R, -1, -1, deriv=1)))
    return MapPair(e_minus, e_plus)


def deriv_twist(pair: MapPair, a: GluingParam, family: CutoffFamily) -> MapPair:
    """Partial derivative along the twist angle.

    Only the doubly translated cross terms depend on the twist; their
    argument rotates at speed (+/-)2, producing (+/-)2 times the periodic
    derivative of the far map.
    """
    if a.is_degenerate:
        return MapPair(zero_map(pair.minus.grid, pair.minus.n_comp),
                       zero_map(pair.plus.grid, pair.plus.n_comp))
    _check_truncation(pair, a, family)
    R, th = a.R, a.theta
    tm = pair.minus.grid.t
    tp = pair.plus.grid.t

    dsp = resample(d_s(pair.plus), pair.minus.grid, dt=2 * R, dtheta=2 * th)
    e_minus = 2.0 * multiply_profile(dsp, _coeff_profile(family, tm, R, +1, -1))

    dsm = resample(d_s(pair.minus), pair.plus.grid, dt=-2 * R, dtheta=-2 * th)
    e_plus = -2.0 * multiply_profile(dsm, _coeff_profile(family, tp, -R, -1, +1))
    return MapPair(e_minus, e_plus)


def deriv_xy(pair: MapPair, r: float, theta: float, profile: GluingProfile,
             family: CutoffFamily):
    """Cartesian partials on the gluing disk, assembled from the polar ones.

    The axial-derivative part of the section does not move with the
    gluing parameter, so both Cartesian partials consist of error terms
    only; at r = 0 they take the continuous extension value zero.
    """
    if r == 0.0:
        zeros = MapPair(zero_map(pair.minus.grid, pair.minus.n_comp),
                        zero_map(pair.plus.grid, pair.plus.n_comp))
        return zeros, MapPair(zeros.minus.copy(), zeros.plus.copy())
    a = GluingParam(profile.neck(r), theta)
    d_radial = profile.neck_slope(r) * deriv_neck(pair, a, family)
    d_angular = (1.0 / r) * deriv_twist(pair, a, family)
    c, s = math.cos(theta), math.sin(theta)
    dx = c * d_radial - s * d_angular
    dy = s * d_radial + c * d_angular
    return dx, dy
