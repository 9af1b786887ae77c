"""Total gluing and anti-gluing of map pairs on half-cylinders.

Conventions.  The minus half-cylinder carries native coordinate
``t_- in [-T, 0]`` (node at ``t_- -> -infty``), the plus half
``t_+ in [0, T]``.  For neck parameter ``a = (R, theta)`` the neck
coordinate ``t`` satisfies ``t_- = t - R`` and ``t_+ = t + R``; the glued
finite neck covers ``t in (-R, R)`` and the anti-glued cylinder the whole
line (truncated here to ``[R - T, T - R]``).

``R = inf`` is represented by ``math.inf``: gluing at the sentinel is the
identity on the pair, matching the degenerate surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cutoff import CutoffFamily, feasibility_check
from .grid import (CylinderGrid, DiscreteMap, map_from_function,
                   multiply_profile, resample)

_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class GluingParam:
    """Neck length R (may be math.inf) and twist angle theta."""

    R: float
    theta: float = 0.0

    @property
    def is_degenerate(self) -> bool:
        return math.isinf(self.R)


@dataclass
class MapPair:
    """Maps on the two half-cylinders."""

    minus: DiscreteMap
    plus: DiscreteMap

    def __getitem__(self, i):
        return (self.minus, self.plus)[i]

    def __add__(self, other):
        return MapPair(self.minus + other.minus, self.plus + other.plus)

    def __sub__(self, other):
        return MapPair(self.minus - other.minus, self.plus - other.plus)

    def __mul__(self, c):
        return MapPair(c * self.minus, c * self.plus)

    __rmul__ = __mul__


@dataclass
class GluedPair:
    """Anti-glued map on the infinite cylinder and glued map on the neck."""

    anti: DiscreteMap
    glued: DiscreteMap


def splicing_matrix(family: CutoffFamily, t, which: str = "beta") -> np.ndarray:
    """The 2x2 splicing matrix at t (stacked over the last two axes)."""
    t = np.asarray(t, dtype=float)
    if which == "beta":
        a = family.ramp(t, -1)
        b = family.ramp(t, +1)
    elif which == "alpha":
        a = family.base(t)
        b = 1.0 - a
    else:
        raise ValueError("which must be 'alpha' or 'beta'")
    out = np.empty(t.shape + (2, 2))
    out[..., 0, 0] = a
    out[..., 0, 1] = -b
    out[..., 1, 0] = b
    out[..., 1, 1] = a
    return out


def connection_omega(family: CutoffFamily, t) -> np.ndarray:
    """The connection matrix [[e, f], [0, 0]] at t."""
    t = np.asarray(t, dtype=float)
    e, f = family.connection(t)
    out = np.zeros(t.shape + (2, 2))
    out[..., 0, 0] = e
    out[..., 0, 1] = f
    return out


def complex_glue(eta: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Gluing as multiplication of ``beta_- + i beta_+`` with ``eta_- + i eta_+``."""
    return beta * eta


def _require_feasible(family: CutoffFamily, a: GluingParam) -> None:
    if not feasibility_check(family.params, a.R):
        raise ValueError(
            f"infeasible configuration: l={family.l}, d={family.d}, R={a.R}"
        )


def _neck_grids(pair: MapPair, a: GluingParam, family: CutoffFamily):
    gm, gp = pair.minus.grid, pair.plus.grid
    h = gm.h_t
    if abs(gp.h_t - h) > _ALIGN_TOL:
        raise ValueError("half-cylinder grids must share the axial spacing")
    if gm.n_s != gp.n_s:
        raise ValueError("half-cylinder grids must share the periodic resolution")
    lo = a.R + gm.t_min          # reach of the translated minus map
    hi = gp.t_max - a.R          # reach of the translated plus map
    edge = family.d + family.l
    if lo > -edge or hi < edge:
        raise ValueError("truncation ranges do not cover the splicing windows")

    def steps(x):
        n = (x / h)
        if abs(n - round(n)) > 1e-6:
            raise ValueError("neck endpoints must align with the grid spacing")
        return int(round(n))

    neck = CylinderGrid(-a.R, a.R, 2 * steps(a.R) + 1, gm.n_s)
    anti = CylinderGrid(lo, hi, steps(hi - lo) + 1, gm.n_s)
    return anti, neck


def total_glue(pair: MapPair, a: GluingParam, family: CutoffFamily) -> GluedPair:
    """Apply the splicing matrix to the translated pair.

    anti(t)  = beta_-(t) u_-(t - R, s - th) - beta_+(t) u_+(t + R, s + th)
    glued(t) = beta_+(t) u_-(t - R, s - th) + beta_-(t) u_+(t + R, s + th)
    """
    if a.is_degenerate:
        return GluedPair(pair.minus.copy(), pair.plus.copy())
    _require_feasible(family, a)
    anti_grid, neck_grid = _neck_grids(pair, a, family)

    def on(grid):
        um = resample(pair.minus, grid, dt=-a.R, dtheta=-a.theta)
        up = resample(pair.plus, grid, dt=+a.R, dtheta=+a.theta)
        bm = np.asarray(family.ramp(grid.t, -1))
        bp = np.asarray(family.ramp(grid.t, +1))
        return um, up, bm, bp

    um, up, bm, bp = on(anti_grid)
    anti = multiply_profile(um, bm) - multiply_profile(up, bp)
    um, up, bm, bp = on(neck_grid)
    glued = multiply_profile(um, bp) + multiply_profile(up, bm)
    return GluedPair(anti, glued)


def total_unglue(glued: GluedPair, a: GluingParam, family: CutoffFamily,
                 minus_grid: CylinderGrid, plus_grid: CylinderGrid) -> MapPair:
    """Invert the splicing matrix pointwise and translate back.

    u_-(t_-) = tau_a [ (beta_- anti + beta_+ glued) / D ](t_-)
    u_+(t_+) = tau_-a[ (-beta_+ anti + beta_- glued) / D ](t_+)
    """
    if a.is_degenerate:
        return MapPair(glued.anti.copy(), glued.glued.copy())
    _require_feasible(family, a)

    def back(grid, dt, dtheta, c_anti, c_glued):
        t_neck = grid.t + dt
        dd = np.asarray(family.det(t_neck))
        ea = resample(glued.anti, grid, dt=dt, dtheta=dtheta)
        eg = resample(glued.glued, grid, dt=dt, dtheta=dtheta)
        term_a = multiply_profile(ea, c_anti(t_neck) / dd)
        term_g = multiply_profile(eg, c_glued(t_neck) / dd)
        return term_a + term_g

    minus = back(minus_grid, +a.R, +a.theta,
                 lambda t: np.asarray(family.ramp(t, -1)),
                 lambda t: np.asarray(family.ramp(t, +1)))
    plus = back(plus_grid, -a.R, -a.theta,
                lambda t: -np.asarray(family.ramp(t, +1)),
                lambda t: np.asarray(family.ramp(t, -1)))
    return MapPair(minus, plus)


def random_pair(minus_grid: CylinderGrid, plus_grid: CylinderGrid, seed: int,
                decay: float, n_comp: int = 1, n_modes: int = 3) -> MapPair:
    """Seeded smooth pair with certified exponential decay toward the node.

    Each component is ``exp(decay * t_-)`` (resp. ``exp(-decay * t_+)``)
    times a random trigonometric polynomial in s with a bounded random
    smooth modulation in t, so the decay rate is exactly ``decay``.
    """
    rng = np.random.default_rng(seed)

    def build(grid, sign):
        t, s = np.meshgrid(grid.t, grid.s, indexing="ij")
        vals = np.zeros(t.shape + (n_comp,), dtype=complex)
        for c in range(n_comp):
            f = np.zeros_like(t, dtype=complex)
            for m in range(-n_modes, n_modes + 1):
                amp = (rng.uniform(0.5, 1.5) if m == 0 else rng.uniform(0.1, 0.5))
                f += amp * np.exp(1j * rng.uniform(0, 2 * np.pi)) * np.exp(1j * m * s)
            width = rng.uniform(3.0, 6.0)
            f *= 1.0 + 0.3 * np.sin(t / width + rng.uniform(0, 2 * np.pi))
            vals[:, :, c] = f * np.exp(sign * decay * t)
        return DiscreteMap(grid, vals)

    return MapPair(build(minus_grid, +1), build(plus_grid, -1))


def exponential_pair(minus_grid: CylinderGrid, plus_grid: CylinderGrid,
                     decay: float, modes=((1, 1.0),)) -> MapPair:
    """Pure exponential pair: useful when exact decay algebra is needed."""
    def build(grid, sign):
        return map_from_function(
            grid,
            lambda t, s: np.exp(sign * decay * t)
            * sum(a * np.exp(1j * m * s) for m, a in modes),
        )
    return MapPair(build(minus_grid, +1), build(plus_grid, -1))
