"""Cut-off functions, the two-region splicing family, and the neck profile.

The base cut-off ``alpha`` is a piecewise-polynomial smoothstep: identically
1 left of -1, identically 0 right of 1, monotone, and symmetric in the
sense ``alpha(t) + alpha(-t) = 1``.  The two-parameter family

    beta_-(t) = alpha((t - d) / l),     beta_+(t) = 1 - alpha((t + d) / l)

places the two transition windows of width ``2l`` at ``+d`` and ``-d``;
for ``d >= 3l`` the windows are disjoint and at least one of the pair
equals 1 everywhere, which pins the determinant ``beta_-^2 + beta_+^2``
into [1, 2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial


@lru_cache(maxsize=8)
def _smoothstep_poly(n: int) -> Polynomial:
    """Polynomial S with S(0)=0, S(1)=1 and n vanishing derivatives at both ends."""
    coeffs = np.zeros(2 * n + 2)
    for k in range(n + 1):
        coeffs[n + 1 + k] = ((-1) ** k * math.comb(n + k, k)
                             * math.comb(2 * n + 1, n - k))
    return Polynomial(coeffs)


class BaseCutoff:
    """Smoothstep cut-off ``alpha`` with closed-form derivatives.

    ``order`` is the smoothness order m: derivatives up to order m - 1 are
    continuous across the break points at t = -1 and t = 1.
    """

    def __init__(self, order: int = 7):
        if order < 2:
            raise ValueError("order must be >= 2")
        self.order = order
        self._polys = [_smoothstep_poly(order - 1)]
        for _ in range(order):
            self._polys.append(self._polys[-1].deriv())

    def _step(self, x: np.ndarray, deriv: int) -> np.ndarray:
        # evaluate on the mirrored branch near x = 1 to avoid cancellation,
        # using the exact symmetry S(x) + S(1 - x) = 1
        lo = x <= 0.5
        xm = np.where(lo, x, 1.0 - x)
        val = self._polys[deriv](xm)
        if deriv == 0:
            return np.where(lo, val, 1.0 - val)
        return np.where(lo, val, (-1.0) ** (deriv - 1) * val)

    def __call__(self, t, deriv: int = 0):
        if not 0 <= deriv <= self.order:
            raise ValueError(f"derivative order {deriv} not available (max {self.order})")
        t = np.asarray(t, dtype=float)
        x = np.clip((t + 1.0) / 2.0, 0.0, 1.0)
        if deriv == 0:
            out = 1.0 - self._step(x, 0)
        else:
            out = -self._step(x, deriv) / 2.0 ** deriv
            out = np.where((t <= -1.0) | (t >= 1.0), 0.0, out)
        return out if out.ndim else float(out)

    def c_norm(self, k: int, samples: int = 4001) -> float:
        """sup over j <= k of ||alpha^(j)||_{C^0}, sampled on a fine grid."""
        t = np.linspace(-1.0, 1.0, samples)
        return max(float(np.abs(self(t, j)).max()) for j in range(k + 1))


@dataclass(frozen=True)
class CutoffParams:
    """Affine placement of the splicing windows."""

    l: float
    d: float
    l0: float = 1.5
    d0: float = 1.5

    def __post_init__(self):
        if not self.l0 > 1 or not self.d0 > 1:
            raise ValueError("need l0 > 1 and d0 > 1")
        if self.l < self.l0 or self.d < self.d0:
            raise ValueError(f"need l >= {self.l0} and d >= {self.d0}")
        if self.d < 3 * self.l:
            raise ValueError("window separation requires d >= 3 l")


class CutoffFamily:
    """Base cut-off bound to window parameters (l, d)."""

    def __init__(self, params: CutoffParams, base: BaseCutoff | None = None):
        self.params = params
        self.base = base if base is not None else BaseCutoff()

    @property
    def l(self) -> float:
        return self.params.l

    @property
    def d(self) -> float:
        return self.params.d

    def ramp(self, t, sign: int, deriv: int = 0):
        """``beta_sign^(deriv)(t)`` for sign = -1 (window at +d) or +1 (at -d)."""
        l, d = self.l, self.d
        if sign == -1:
            return self.base((np.asarray(t, dtype=float) - d) / l, deriv) / l ** deriv
        if sign == +1:
            val = self.base((np.asarray(t, dtype=float) + d) / l, deriv) / l ** deriv
            return 1.0 - val if deriv == 0 else -val
        raise ValueError("sign must be -1 or +1")

    def det(self, t):
        bm = self.ramp(t, -1)
        bp = self.ramp(t, +1)
        return bm * bm + bp * bp

    def connection(self, t):
        """Entries (e, f) of the connection matrix at t."""
        bm, bp = self.ramp(t, -1), self.ramp(t, +1)
        bmp, bpp = self.ramp(t, -1, 1), self.ramp(t, +1, 1)
        dd = bm * bm + bp * bp
        e = -(bmp * bm + bpp * bp) / dd
        f = -(bmp * bp - bpp * bm) / dd
        return e, f

    def coeff(self, a_sign: int, b_sign: int, t, deriv: int = 0):
        """``beta_a * beta_b' / D`` at t, or its first t-derivative."""
        A = self.ramp(t, a_sign)
        B = self.ramp(t, b_sign, 1)
        dd = self.det(t)
        g = A * B / dd
        if deriv == 0:
            return g
        if deriv != 1:
            raise ValueError("only deriv in {0, 1} supported")
        Ap = self.ramp(t, a_sign, 1)
        Bp = self.ramp(t, b_sign, 2)
        ddp = 2.0 * (self.ramp(t, -1) * self.ramp(t, -1, 1)
                     + self.ramp(t, +1) * self.ramp(t, +1, 1))
        return (Ap * B + A * Bp) / dd - g * ddp / dd

    def coeff_c_norm(self, a_sign: int, b_sign: int, k: int,
                     deriv: int = 0, samples: int = 8001) -> float:
        """C^k norm of ``beta_a beta_b'/D`` (or its derivative) by fine sampling.

        Derivatives beyond the closed forms above are taken by centered
        differences on the sampling grid; the composite is smooth so this
        is adequate for norm estimates.
        """
        lo = -(self.d + self.l + 1.0)
        t = np.linspace(lo, -lo, samples)
        h = t[1] - t[0]
        f = np.asarray(self.coeff(a_sign, b_sign, t, deriv=deriv), dtype=float)
        best = float(np.abs(f).max())
        for _ in range(k):
            f = np.gradient(f, h)
            best = max(best, float(np.abs(f).max()))
        return best

    def ramp_c_norm(self, sign: int, k: int, start_deriv: int = 1) -> float:
        """C^k norm of ``beta_sign^(start_deriv)``."""
        return max(
            abs(self.ramp(np.linspace(-self.d - self.l, self.d + self.l, 8001),
                          sign, start_deriv + j)).max()
            for j in range(k + 1)
        )

    def region(self, t) -> np.ndarray:
        """Tag each t with one of M1, splice-, M2, splice+, M3."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        l, d = self.l, self.d
        tags = np.full(t.shape, "M2", dtype=object)
        tags[t <= -d - l] = "M1"
        tags[(t > -d - l) & (t < -d + l)] = "splice-"
        tags[(t > d - l) & (t < d + l)] = "splice+"
        tags[t >= d + l] = "M3"
        return tags


def length_function(R: float, order: int = 1) -> float:
    """Transition-width scale ``R^(order/(order+1)) * ln(R)^2``."""
    if R <= 1.0:
        raise ValueError("length function needs R > 1")
    return R ** (order / (order + 1.0)) * math.log(R) ** 2


@dataclass(frozen=True)
class GluingProfile:
    """Reparametrization ``R = exp(1/r) - exp(1/r0)`` of the neck length."""

    r0: float

    def __post_init__(self):
        if self.r0 <= 0:
            raise ValueError("r0 must be positive")

    def neck(self, r: float) -> float:
        if r == 0.0:
            return math.inf
        if not 0.0 < r < self.r0:
            raise ValueError(f"r={r} outside [0, {self.r0})")
        return math.exp(1.0 / r) - math.exp(1.0 / self.r0)

    def neck_slope(self, r: float) -> float:
        """dR/dr = -exp(1/r)/r^2 (negative: R grows as r shrinks)."""
        if not 0.0 < r < self.r0:
            raise ValueError(f"r={r} outside (0, {self.r0})")
        return -math.exp(1.0 / r) / r ** 2

    def r_of_neck(self, R: float) -> float:
        return 1.0 / math.log(R + math.exp(1.0 / self.r0))


def feasibility_check(params: CutoffParams, R: float) -> bool:
    """True iff the splicing windows fit strictly inside the neck (-R, R)."""
    return (params.d + params.l < R
            and params.l >= params.l0
            and params.d >= 3 * params.l)
