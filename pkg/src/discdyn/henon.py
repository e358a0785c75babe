"""The Henon map T(x, y) = (y + 1 - a x^2, b x).

T factors as a bend, a contraction along x and a reflection in the diagonal,
applied in that order (see :func:`henon_step_decomposed`).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DomainError, EscapeError, Point2, is_finite

ESCAPE_NORM = 100.0
PERIOD_CAP = 32
PERIOD_TOL = 1e-6
FIXED_DIAMETER = 1e-6

# Onsets of the strange attractor and of escape at b = 0.3; known only numerically.
A2_APPROX = 1.06
A3_APPROX = 1.55

# default cloud seed, 8-digit rounding of the positive fixed point at a=1.4, b=0.3
CLOUD_START = Point2(0.63135448, 0.18940634)


@dataclass(frozen=True)
class HenonParams:
    a: float = 1.4
    b: float = 0.3

    def __post_init__(self):
        if not is_finite((self.a, self.b)):
            raise DomainError(f"non-finite Henon parameters: {self}")


CANONICAL = HenonParams()


class Stability(enum.Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    SADDLE = "saddle"
    NONHYPERBOLIC = "nonhyperbolic"


@dataclass(frozen=True)
class HenonFixedPoint:
    location: Point2
    eigenvalues: tuple  # (-ax + sqrt(a^2x^2 + b), -ax - sqrt(a^2x^2 + b))
    slopes: Optional[tuple]  # eigenvector slopes b / lambda; None for complex pairs
    stability: Stability


class Regime(enum.Enum):
    ESCAPE = "escape"
    FIXED_POINT = "fixed_point"
    PERIODIC = "periodic"
    STRANGE_ATTRACTOR = "strange_attractor"


@dataclass(frozen=True)
class RegimeLabel:
    label: Regime
    a0: float
    a1: float
    a2: float = A2_APPROX
    a3: float = A3_APPROX
    period: Optional[int] = None


def _checked(p: Point2, x: float, y: float) -> Point2:
    if not (math.isfinite(x) and math.isfinite(y)):
        raise EscapeError(f"Henon iterate of {tuple(p)} is not finite", iterate=(x, y))
    return Point2(x, y)


def henon_step(p: Point2, params: HenonParams = CANONICAL) -> Point2:
    x, y = p
    return _checked(p, y + 1.0 - params.a * x * x, params.b * x)


def bend(p: Point2, a: float) -> Point2:
    x, y = p
    return Point2(x, y + 1.0 - a * x * x)


def contract(p: Point2, b: float) -> Point2:
    return Point2(b * p[0], p[1])


def reflect(p: Point2) -> Point2:
    return Point2(p[1], p[0])


def henon_step_decomposed(p: Point2, params: HenonParams = CANONICAL) -> Point2:
    q = reflect(contract(bend(p, params.a), params.b))
    return _checked(p, q.x, q.y)


def henon_inverse(p: Point2, params: HenonParams = CANONICAL) -> Point2:
    if params.b == 0:
        raise DomainError("the Henon map is not invertible for b = 0")
    x1, y1 = p
    a, b = params.a, params.b
    return _checked(p, y1 / b, x1 - 1.0 + (a / (b * b)) * y1 * y1)


def henon_jacobian(p: Point2, params: HenonParams = CANONICAL) -> np.ndarray:
    return np.array([[-2.0 * params.a * p[0], 1.0], [params.b, 0.0]])


def jacobian_det(params: HenonParams = CANONICAL) -> float:
    """Determinant of the Jacobian; the same at every point."""
    return -params.b


def _classify(eigenvalues, tol: float = 1e-12) -> Stability:
    mods = [abs(ev) for ev in eigenvalues]
    if any(abs(m - 1.0) <= tol for m in mods):
        return Stability.NONHYPERBOLIC
    if all(m < 1 for m in mods):
        return Stability.ATTRACTING
    if all(m > 1 for m in mods):
        return Stability.REPELLING
    return Stability.SADDLE


def fixed_points(params: HenonParams = CANONICAL) -> list[HenonFixedPoint]:
    """Both fixed points: roots of a x^2 + (1 - b) x - 1 = 0 with y = b x.

    Listed with the positive (attractor-side) point first.
    """
    a, b = params.a, params.b
    if a == 0:
        raise DomainError("a = 0 leaves a single (linear) fixed point; not supported")
    B = 1.0 - b
    disc = B * B + 4.0 * a
    if disc < 0:
        return []
    q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
    xs = sorted((q / a, -1.0 / q), reverse=True)
    out = []
    for x in xs:
        ax = a * x
        d = ax * ax + b
        if d >= 0:
            s = math.sqrt(d)
            eig = (-ax + s, -ax - s)
            slopes = tuple(b / ev if ev != 0 else math.inf for ev in eig)
        else:
            s = cmath.sqrt(d)
            eig = (-ax + s, -ax - s)
            slopes = None
        out.append(HenonFixedPoint(Point2(x, b * x), eig, slopes, _classify(eig)))
    return out


def regime_thresholds(b: float) -> tuple[float, float]:
    """(a0, a1): the positive fixed point attracts for a0 < a < a1."""
    return (1.0 - b) ** 2 / 4.0, 3.0 * (1.0 - b) ** 2 / 4.0


def iterate(params: HenonParams, x0: Point2, n: int) -> np.ndarray:
    """(n + 1, 2) array x0, T(x0), ..., T^n(x0); EscapeError past norm 100."""
    a, b = params.a, params.b
    out = np.empty((n + 1, 2))
    x, y = float(x0[0]), float(x0[1])
    out[0] = x, y
    for i in range(1, n + 1):
        x, y = y + 1.0 - a * x * x, b * x
        if not (abs(x) <= ESCAPE_NORM and abs(y) <= ESCAPE_NORM and math.hypot(x, y) <= ESCAPE_NORM):
            raise EscapeError(
                f"orbit from {tuple(x0)} left the norm-{ESCAPE_NORM:g} ball at iterate {i}",
                iterate=(x, y),
                completed=[Point2(*r) for r in out[:i]],
            )
        out[i] = x, y
    return out


def _closest_return_period(pts: np.ndarray, cap: int, tol: float) -> Optional[int]:
    for p in range(1, min(cap, len(pts) - 1) + 1):
        if np.max(np.abs(pts[p:] - pts[:-p])) < tol:
            return p
    return None


def classify_regime(params: HenonParams, x0: Point2 = Point2(0.0, 0.0),
                    n_transient: int = 1000, n_probe: int = 10_000) -> RegimeLabel:
    """Empirical long-run behaviour of the orbit of x0.

    escape: the orbit leaves the norm-100 ball; fixed_point: the probe window
    has diameter < 1e-6; periodic: every probe iterate recurs within 1e-6
    after p <= 32 steps; strange_attractor: bounded with none of the above.
    """
    if n_probe < 64:
        raise DomainError("n_probe must be at least 64")
    a0, a1 = regime_thresholds(params.b)
    try:
        pts = iterate(params, x0, n_transient + n_probe)[n_transient + 1:]
    except EscapeError:
        return RegimeLabel(Regime.ESCAPE, a0, a1)
    diameter = float(np.hypot(*np.ptp(pts, axis=0)))
    if diameter < FIXED_DIAMETER:
        return RegimeLabel(Regime.FIXED_POINT, a0, a1, period=1)
    period = _closest_return_period(pts, PERIOD_CAP, PERIOD_TOL)
    if period is not None:
        return RegimeLabel(Regime.PERIODIC, a0, a1, period=period)
    return RegimeLabel(Regime.STRANGE_ATTRACTOR, a0, a1)


def attractor_cloud(params: HenonParams = CANONICAL, x0: Point2 = CLOUD_START,
                    n_transient: int = 0, n: int = 10_000) -> list[Point2]:
    """The n iterates following n_transient discarded ones (x0 itself counts as iterate 0)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    try:
        pts = iterate(params, x0, n_transient + n - 1)
    except EscapeError as err:
        err.completed = err.completed[n_transient:]
        raise
    return [Point2(float(x), float(y)) for x, y in pts[n_transient:]]


def regime_sweep(b: float, a_values, x0: Point2 = Point2(0.0, 0.0),
                 n_transient: int = 1000, n_probe: int = 10_000) -> list[tuple[float, RegimeLabel]]:
    return [(float(a), classify_regime(HenonParams(float(a), b), x0, n_transient, n_probe))
            for a in a_values]
