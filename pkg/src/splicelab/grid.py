"""Discretized cylinders and sampled maps.

A cylinder ``I x S^1`` is sampled on a uniform tensor grid: ``n_t`` points
in the axial direction (closed interval, endpoints included) and ``n_s``
points in the periodic direction with period ``2*pi``.  Maps take values in
``C^n`` and are stored as complex arrays of shape ``(n_t, n_s, n_comp)``.

Translation in the axial direction can move samples outside the known
range; such rows are tracked by a per-row validity mask.  A masked row may
only be consumed after multiplication by a profile that vanishes there
(see :func:`multiply_profile`), which mirrors the fact that a translated
half-cylinder map is only meaningful inside the support of the cut-off
that multiplies it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

S_PERIOD = 2.0 * np.pi

_ALIGN_TOL = 1e-9


class DomainError(ValueError):
    """Raised when samples outside the known axial range are consumed."""


@dataclass(frozen=True)
class CylinderGrid:
    """Uniform grid on ``[t_min, t_max] x S^1``."""

    t_min: float
    t_max: float
    n_t: int
    n_s: int

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ValueError(f"need t_min < t_max, got [{self.t_min}, {self.t_max}]")
        if self.n_t < 4 or self.n_s < 4:
            raise ValueError("need at least 4 samples in each direction")

    @property
    def h_t(self) -> float:
        return (self.t_max - self.t_min) / (self.n_t - 1)

    @property
    def h_s(self) -> float:
        return S_PERIOD / self.n_s

    @property
    def t(self) -> np.ndarray:
        return self.t_min + self.h_t * np.arange(self.n_t)

    @property
    def s(self) -> np.ndarray:
        return self.h_s * np.arange(self.n_s)


def make_grid(t_min: float, t_max: float, n_t: int, n_s: int) -> CylinderGrid:
    return CylinderGrid(t_min, t_max, n_t, n_s)


@dataclass
class DiscreteMap:
    """Sampled ``C^n``-valued map on a :class:`CylinderGrid`."""

    grid: CylinderGrid
    values: np.ndarray
    valid: np.ndarray = field(default=None)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.ndim == 2:
            self.values = self.values[:, :, None]
        if self.values.shape[:2] != (self.grid.n_t, self.grid.n_s):
            raise ValueError(
                f"sample shape {self.values.shape} does not match grid "
                f"({self.grid.n_t}, {self.grid.n_s})"
            )
        if self.valid is None:
            self.valid = np.ones(self.grid.n_t, dtype=bool)
        else:
            self.valid = np.asarray(self.valid, dtype=bool)
        if not np.all(np.isfinite(self.values[self.valid])):
            raise ValueError("non-finite samples in valid rows")

    @property
    def n_comp(self) -> int:
        return self.values.shape[2]

    def require_valid(self) -> None:
        if not self.valid.all():
            bad = np.flatnonzero(~self.valid)
            raise DomainError(
                f"{bad.size} axial rows are out of domain "
                f"(first at t={self.grid.t[bad[0]]:g})"
            )

    def copy(self) -> "DiscreteMap":
        return DiscreteMap(self.grid, self.values.copy(), self.valid.copy())

    def __add__(self, other: "DiscreteMap") -> "DiscreteMap":
        _check_same_grid(self, other)
        return DiscreteMap(self.grid, self.values + other.values,
                           self.valid & other.valid)

    def __sub__(self, other: "DiscreteMap") -> "DiscreteMap":
        _check_same_grid(self, other)
        return DiscreteMap(self.grid, self.values - other.values,
                           self.valid & other.valid)

    def __mul__(self, c) -> "DiscreteMap":
        return DiscreteMap(self.grid, c * self.values, self.valid.copy())

    __rmul__ = __mul__

    def __neg__(self) -> "DiscreteMap":
        return DiscreteMap(self.grid, -self.values, self.valid.copy())


def _check_same_grid(u: DiscreteMap, v: DiscreteMap) -> None:
    if u.grid != v.grid:
        raise ValueError("maps live on different grids")


def map_from_function(grid: CylinderGrid, fn, n_comp: int = 1) -> DiscreteMap:
    """Sample ``fn(t, s)`` on the grid; fn broadcasts over meshgrid arrays."""
    tt, ss = np.meshgrid(grid.t, grid.s, indexing="ij")
    vals = np.asarray(fn(tt, ss), dtype=complex)
    if vals.ndim == 2:
        vals = vals[:, :, None]
    if vals.shape[2] != n_comp:
        vals = np.repeat(vals, n_comp, axis=2) if vals.shape[2] == 1 else vals
    return DiscreteMap(grid, vals)


def zero_map(grid: CylinderGrid, n_comp: int = 1) -> DiscreteMap:
    return DiscreteMap(grid, np.zeros((grid.n_t, grid.n_s, n_comp), dtype=complex))


def _phase_shift_s(values: np.ndarray, n_s: int, dtheta: float) -> np.ndarray:
    """Trigonometric interpolation of ``u(., s + dtheta)``."""
    k = np.fft.fftfreq(n_s, d=1.0 / n_s)
    phase = np.exp(1j * k * dtheta)
    spec = np.fft.fft(values, axis=1)
    return np.fft.ifft(spec * phase[None, :, None], axis=1)


def resample(u: DiscreteMap, grid: CylinderGrid, dt: float = 0.0,
             dtheta: float = 0.0, fill: str = "invalid") -> DiscreteMap:
    """Evaluate ``u(t + dt, s + dtheta)`` at the nodes of ``grid``.

    Axial positions that fall outside the source range (or on invalid
    source rows) are flagged invalid in the result, or set to zero when
    ``fill="zero"`` (legitimate when the source has certified decay and
    the lost tail is below quadrature tolerance).  Grid-multiple axial
    offsets are index shifts; fractional offsets fall back to cubic
    interpolation and require a fully valid source.
    """
    src = u.grid
    if grid.n_s != src.n_s:
        raise ValueError("periodic resolutions differ")
    x = grid.t + dt
    vals = np.zeros((grid.n_t, src.n_s, u.n_comp), dtype=complex)
    valid = np.zeros(grid.n_t, dtype=bool)

    offs = (x - src.t_min) / src.h_t
    idx = np.rint(offs).astype(int)
    if np.allclose(offs, idx, atol=_ALIGN_TOL, rtol=0.0):
        inside = (idx >= 0) & (idx < src.n_t)
        take = idx[inside]
        valid[inside] = u.valid[take]
        vals[inside] = u.values[take]
        vals[~valid] = 0.0
    else:
        from scipy.interpolate import CubicSpline

        u.require_valid()
        inside = (x >= src.t_min - _ALIGN_TOL) & (x <= src.t_max + _ALIGN_TOL)
        if inside.any():
            spline = CubicSpline(src.t, u.values, axis=0)
            vals[inside] = spline(np.clip(x[inside], src.t_min, src.t_max))
        valid = inside

    if dtheta != 0.0:
        vals = _phase_shift_s(vals, src.n_s, dtheta)
        vals[~valid] = 0.0
    if fill == "zero":
        valid = np.ones(grid.n_t, dtype=bool)
    elif fill != "invalid":
        raise ValueError(f"unknown fill mode {fill!r}")
    return DiscreteMap(grid, vals, valid)


def translate(u: DiscreteMap, dt: float, dtheta: float = 0.0,
              fill: str = "invalid") -> DiscreteMap:
    """``(translate u)(t, s) = u(t + dt, s + dtheta)`` on the same grid."""
    return resample(u, u.grid, dt=dt, dtheta=dtheta, fill=fill)


def restrict(u: DiscreteMap, t_lo: float, t_hi: float) -> DiscreteMap:
    """Restriction to the grid rows inside ``[t_lo, t_hi]``; rows must be valid."""
    keep = (u.grid.t >= t_lo - _ALIGN_TOL) & (u.grid.t <= t_hi + _ALIGN_TOL)
    if not keep.any():
        raise ValueError("empty restriction window")
    if not u.valid[keep].all():
        raise DomainError("restriction window touches out-of-domain rows")
    t = u.grid.t[keep]
    sub = CylinderGrid(t[0], t[-1], int(keep.sum()), u.grid.n_s)
    return DiscreteMap(sub, u.values[keep])


def multiply_profile(u: DiscreteMap, profile: np.ndarray) -> DiscreteMap:
    """Pointwise product with a real axial profile ``profile[i] = f(t_i)``.

    Wherever the profile vanishes the product is zero regardless of the
    state of ``u``, so invalid rows under the zero set become valid.  A
    nonzero profile value on an invalid row is an error.
    """
    profile = np.asarray(profile, dtype=float)
    if profile.shape != (u.grid.n_t,):
        raise ValueError("profile shape mismatch")
    touches = (~u.valid) & (profile != 0.0)
    if touches.any():
        i = np.flatnonzero(touches)[0]
        raise DomainError(
            f"profile is nonzero at out-of-domain row t={u.grid.t[i]:g}"
        )
    vals = u.values * profile[:, None, None]
    vals[~u.valid] = 0.0
    return DiscreteMap(u.grid, vals)


# 4th-order one-sided stencils for the first two rows (divided by 12h).
_EDGE_STENCIL = np.array([
    [-25.0, 48.0, -36.0, 16.0, -3.0],
    [-3.0, -10.0, 18.0, -6.0, 1.0],
])


def d_t(u: DiscreteMap) -> DiscreteMap:
    """Axial derivative, 4th-order central differences (one-sided at edges)."""
    u.require_valid()
    f = u.values
    h = u.grid.h_t
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    head = np.tensordot(_EDGE_STENCIL, f[:5], axes=(1, 0)) / (12.0 * h)
    tail = -np.tensordot(_EDGE_STENCIL, f[-1:-6:-1], axes=(1, 0)) / (12.0 * h)
    out[0], out[1] = head[0], head[1]
    out[-1], out[-2] = tail[0], tail[1]
    return DiscreteMap(u.grid, out)


def d_s(u: DiscreteMap) -> DiscreteMap:
    """Periodic derivative via Fourier differentiation (spectral accuracy)."""
    u.require_valid()
    n_s = u.grid.n_s
    k = np.fft.fftfreq(n_s, d=1.0 / n_s)
    if n_s % 2 == 0:
        k[n_s // 2] = 0.0  # Nyquist mode has no well-defined derivative
    spec = np.fft.fft(u.values, axis=1)
    out = np.fft.ifft(spec * (1j * k)[None, :, None], axis=1)
    return DiscreteMap(u.grid, out)


def max_abs(u: DiscreteMap) -> float:
    """Sup norm over valid rows."""
    if not u.valid.any():
        return 0.0
    return float(np.abs(u.values[u.valid]).max())
