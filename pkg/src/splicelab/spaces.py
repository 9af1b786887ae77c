"""Exponentially weighted Sobolev norms and operator-norm probing.

The norm of order (k, p, delta) weights a map by ``exp(delta * |t|)`` first
and then accumulates all mixed derivatives ``D_s^i D_t^j`` with
``i + j <= k`` of the weighted product (composite trapezoid in t, exact
Riemann sum in the periodic direction).  An alternative convention that
weights each derivative of the raw map is provided for cross-checks.

Operator norms are estimated from below by a finite probe family: tensor
products of low Fourier modes with exponential envelopes, plus seeded
random smooth decaying fields.  All analytic bounds in this package are
upper bounds, so comparing a lower estimate against them is sound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import CylinderGrid, DiscreteMap, d_s, d_t

_OVERFLOW_LIMIT = 1e280


@dataclass(frozen=True)
class WeightSpec:
    """Exponent delta, derivative order k, and integrability p."""

    delta: float
    k: int = 1
    p: float = 3.0

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.p <= 2.0:
            raise ValueError("p must be > 2")


def weight_eval(spec: WeightSpec, t):
    """The weight ``exp(delta * |t|)``."""
    # overflow to inf is caught by the norm's range guard
    with np.errstate(over="ignore"):
        return np.exp(spec.delta * np.abs(t))


def _cell_weights(grid: CylinderGrid) -> np.ndarray:
    w = np.full(grid.n_t, grid.h_t)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w * grid.h_s


def _lp_pow(u: DiscreteMap, p: float) -> float:
    mag = np.sqrt((np.abs(u.values) ** 2).sum(axis=2))
    return float((_cell_weights(u.grid)[:, None] * mag ** p).sum())


def lp_norm(u: DiscreteMap, p: float) -> float:
    """Unweighted L^p norm by quadrature."""
    u.require_valid()
    return _lp_pow(u, p) ** (1.0 / p)


def _mixed_derivatives(u: DiscreteMap, k: int):
    """All D_s^i D_t^j u with i + j <= k."""
    rows = [[u]]
    for _ in range(k):
        prev = rows[-1]
        rows.append([d_t(prev[0])] + [d_s(m) for m in prev])
    for row in rows:
        yield from row


def norm_weighted(u: DiscreteMap, spec: WeightSpec,
                  convention: str = "weight-first") -> float:
    """The (k, p, delta)-norm of u on its grid's native axial coordinate."""
    u.require_valid()
    w = weight_eval(spec, u.grid.t)
    peak = float(np.abs(u.values).max(initial=0.0))
    if w.max() * max(peak, 1.0) > _OVERFLOW_LIMIT:
        raise OverflowError("weight overflows on this truncation range")
    total = 0.0
    if convention == "weight-first":
        weighted = DiscreteMap(u.grid, u.values * w[:, None, None])
        for m in _mixed_derivatives(weighted, spec.k):
            total += _lp_pow(m, spec.p)
    elif convention == "weighted-derivatives":
        for m in _mixed_derivatives(u, spec.k):
            total += _lp_pow(DiscreteMap(u.grid, m.values * w[:, None, None]),
                             spec.p)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return total ** (1.0 / spec.p)


def pair_norm(pair, spec: WeightSpec) -> float:
    """Norm of a two-component map pair: p-sum of the component norms."""
    a = norm_weighted(pair[0], spec)
    b = norm_weighted(pair[1], spec)
    return (a ** spec.p + b ** spec.p) ** (1.0 / spec.p)


def jensen_gap(F: np.ndarray, grid: CylinderGrid, q: np.ndarray, p: float):
    """Both sides of the convexity inequality for an average over ``q in [0,1]``.

    ``F`` has shape (n_t, n_s, n_q) with the last axis sampled at ``q``.
    Returns (lhs, rhs) with lhs the p-th power integral of the q-average
    and rhs the q-average of the p-th power integrals; lhs <= rhs up to
    quadrature tolerance.
    """
    F = np.asarray(F)
    if F.shape[:2] != (grid.n_t, grid.n_s):
        raise ValueError("F shape does not match grid")
    cells = _cell_weights(grid)

    def surface_integral(g2d):
        return float((cells[:, None] * np.abs(g2d) ** p).sum())

    lhs = surface_integral(np.trapezoid(F, q, axis=2))
    per_q = np.array([surface_integral(F[:, :, i]) for i in range(len(q))])
    rhs = float(np.trapezoid(per_q, q))
    return lhs, rhs


@dataclass
class OperatorProbe:
    """Finite family of unit-norm maps standing in for the unit ball."""

    maps: list = field(default_factory=list)
    seed: int = 0


def _envelope(t: np.ndarray, gamma: float, center: float) -> np.ndarray:
    return np.exp(-gamma * np.abs(t - center))


def make_probes(grid: CylinderGrid, spec: WeightSpec, n_modes: int = 3,
                gammas=(0.75, 1.0, 1.5), centers=None, n_random: int = 4,
                seed: int = 0, n_comp: int = 1,
                boundary_gamma: float | None = None) -> OperatorProbe:
    """Fourier-mode x exponential-envelope probes plus seeded random fields.

    Every gamma must exceed the weight exponent so the probes have finite
    weighted norm on the truncated grid with a certified tail.
    """
    if min(gammas) <= spec.delta:
        raise ValueError("probe decay must exceed the weight exponent")
    rng = np.random.default_rng(seed)
    t, s = np.meshgrid(grid.t, grid.s, indexing="ij")
    if centers is None:
        centers = np.linspace(grid.t_min, grid.t_max, 5)[1:-1]
    raw = []
    for gamma in gammas:
        for c in centers:
            env = _envelope(t, gamma, c)
            for m in range(n_modes + 1):
                raw.append(env * np.exp(1j * m * s))
    if boundary_gamma is not None:
        # near-extremal probe: mass concentrated at the boundary closest to
        # the node, where translation loses the least weight
        c = grid.t_min if abs(grid.t_min) < abs(grid.t_max) else grid.t_max
        raw.append(_envelope(t, boundary_gamma, c))
    for _ in range(n_random):
        f = np.zeros_like(t, dtype=complex)
        for _ in range(4):
            gamma = rng.uniform(max(2.0 * spec.delta, 0.6), 2.5)
            c = rng.uniform(grid.t_min, grid.t_max)
            m = rng.integers(-n_modes, n_modes + 1)
            a = rng.normal() + 1j * rng.normal()
            f += a * np.exp(-gamma * np.sqrt((t - c) ** 2 + 1.0)) * np.exp(1j * m * s)
        raw.append(f)

    maps = []
    for f in raw:
        vals = np.repeat(f[:, :, None], n_comp, axis=2)
        u = DiscreteMap(grid, vals)
        nrm = norm_weighted(u, spec)
        if nrm > 0:
            maps.append((1.0 / nrm) * u)
    return OperatorProbe(maps=maps, seed=seed)


def _check_linear(op, probes: OperatorProbe, cod_spec: WeightSpec) -> None:
    if len(probes.maps) < 2:
        return
    rng = np.random.default_rng(probes.seed + 1)
    u, v = probes.maps[0], probes.maps[-1]
    a = complex(rng.normal(), rng.normal())
    b = complex(rng.normal(), rng.normal())
    lhs = op(a * u + b * v)
    rhs = a * op(u) + b * op(v)
    resid = norm_weighted(lhs - rhs, cod_spec)
    scale = max(norm_weighted(lhs, cod_spec), 1.0)
    if resid > 1e-8 * scale:
        raise ValueError(f"operator failed linearity check (residual {resid:g})")


def op_norm_lower(op, probes: OperatorProbe, dom_spec: WeightSpec,
                  cod_spec: WeightSpec, check_linearity: bool = True) -> float:
    """Max over probes of ||op(u)||_cod / ||u||_dom.

    A lower bound on the operator norm; compare against analytic upper
    bounds only.
    """
    if check_linearity:
        _check_linear(op, probes, cod_spec)
    best = 0.0
    for u in probes.maps:
        dom = norm_weighted(u, dom_spec)
        if dom == 0.0:
            continue
        best = max(best, norm_weighted(op(u), cod_spec) / dom)
    return best
