"""The quadratic (logistic) map f(x) = a x (1 - x) on [0, 1] for 0 < a <= 4."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError

GRID_CELLS = 2**16
MAX_PERIOD = 12
PRIME_TOL = 1e-9
HYPERBOLIC_TOL = 1e-9
CLUSTER_GAP = 1e-4
DEFAULT_X0 = 0.5  # the critical point


class Stability(enum.Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    NONHYPERBOLIC = "nonhyperbolic"


@dataclass(frozen=True)
class PeriodicOrbitReport:
    period: int
    points: tuple  # ascending
    multiplier: float
    stability: Stability


@dataclass(frozen=True)
class CascadeRecord:
    """``onsets[k] = (2**(k+1), a)``: at ``a`` the 2**k cycle flips and period 2**(k+1) takes over."""

    onsets: list
    complete: bool = True

    @property
    def periods(self) -> list[int]:
        return [p for p, _ in self.onsets]

    @property
    def a_values(self) -> list[float]:
        return [a for _, a in self.onsets]


def logistic_step(x, a: float):
    return a * x * (1.0 - x)


def derivative(x, a: float):
    return a * (1.0 - 2.0 * x)


def iterate_n(x, a: float, n: int):
    for _ in range(n):
        x = a * x * (1.0 - x)
    return x


def orbit(x0: float, a: float, n: int) -> np.ndarray:
    """x0, f(x0), ..., f^n(x0)."""
    out = np.empty(n + 1)
    x = out[0] = x0
    for i in range(1, n + 1):
        x = out[i] = a * x * (1.0 - x)
    return out


def _iterate_with_derivative(x: float, a: float, n: int) -> tuple[float, float]:
    """(f^n(x), (f^n)'(x)) by the chain rule."""
    d = 1.0
    for _ in range(n):
        d *= a * (1.0 - 2.0 * x)
        x = a * x * (1.0 - x)
    return x, d


def classify(multiplier: float, tol: float = HYPERBOLIC_TOL) -> Stability:
    m = abs(multiplier)
    if abs(m - 1.0) <= tol:
        return Stability.NONHYPERBOLIC
    return Stability.ATTRACTING if m < 1 else Stability.REPELLING


def cycle_report(points, a: float) -> PeriodicOrbitReport:
    pts = tuple(sorted(float(p) for p in points))
    mult = math.prod(a * (1.0 - 2.0 * p) for p in pts)
    return PeriodicOrbitReport(len(pts), pts, mult, classify(mult))


def fixed_points(a: float) -> list[PeriodicOrbitReport]:
    """0 (multiplier a) and, for a > 1, (a - 1)/a (multiplier 2 - a)."""
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    out = [PeriodicOrbitReport(1, (0.0,), a, classify(a))]
    if a > 1:
        out.append(PeriodicOrbitReport(1, ((a - 1.0) / a,), 2.0 - a, classify(2.0 - a)))
    return out


def _bisect(h, lo: float, hi: float, h_lo: float) -> float:
    # run to machine resolution; the bracket is at most one grid cell wide
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        h_mid = h(mid)
        if h_mid == 0:
            return mid
        if (h_mid < 0) == (h_lo < 0):
            lo, h_lo = mid, h_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _newton_distance(x: float, a: float, d: int) -> float:
    """Estimated distance from x to the nearest root of f^d(x) - x."""
    y, dy = _iterate_with_derivative(x, a, d)
    slope = abs(dy - 1.0)
    return abs(y - x) / max(slope, 1.0)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def _polish(x: float, a: float, n: int, steps: int = 8) -> float:
    for _ in range(steps):
        y, dy = _iterate_with_derivative(x, a, n)
        if dy == 1.0:
            break
        step = (y - x) / (dy - 1.0)
        x_new = min(max(x - step, 0.0), 1.0)
        if x_new == x:
            break
        x = x_new
    return x


def roots_of_iterate(a: float, n: int, cells: int = GRID_CELLS) -> np.ndarray:
    """All sign-change roots of f^n(x) - x on [0, 1], by grid scan plus bisection."""
    grid = np.linspace(0.0, 1.0, cells + 1)
    h = iterate_n(grid, a, n) - grid
    exact = grid[h == 0.0]
    cells_idx = np.flatnonzero(h[:-1] * h[1:] < 0)
    hf = lambda x: iterate_n(x, a, n) - x
    found = [_bisect(hf, grid[i], grid[i + 1], h[i]) for i in cells_idx]
    return np.sort(np.concatenate([exact, np.asarray(found, dtype=float)]))


def find_periodic_orbits(a: float, n: int, cells: int = GRID_CELLS) -> list[PeriodicOrbitReport]:
    """Every prime-period-n cycle in [0, 1], ordered by smallest point.

    Roots of f^n(x) - x come from a sign scan over ``cells`` uniform cells.
    Cycles with every point packed closer than one cell to another root are
    invisible to the scan; for a = 4 that starts to bite around n = 9.
    """
    if not 1 <= n <= MAX_PERIOD:
        raise DomainError(f"period must be in 1..{MAX_PERIOD}, got {n}")
    if not 0 < a <= 4:
        raise DomainError(f"a must be in (0, 4], got {a}")
    roots = [
        x for x in roots_of_iterate(a, n, cells)
        if all(_newton_distance(x, a, d) >= PRIME_TOL for d in _divisors(n))
    ]
    remaining = list(roots)
    match_tol = max(1e-6, 0.5 / cells)
    cycles = []
    while remaining:
        x = remaining.pop(0)
        pts = [x]
        y = x
        for _ in range(n - 1):
            y = logistic_step(y, a)
            j = min(range(len(remaining)), key=lambda k: abs(remaining[k] - y), default=None)
            if j is not None and abs(remaining[j] - y) < match_tol:
                y = remaining.pop(j)
            else:
                y = _polish(y, a, n)
            pts.append(y)
        cycles.append(cycle_report(pts, a))
    cycles.sort(key=lambda c: c.points[0])
    return cycles


def _locate_cycle(x: float, a: float, period: int) -> tuple[float, float] | None:
    """Newton-polish x onto a period-``period`` point; returns (x, multiplier)."""
    x = _polish(x, a, period, steps=50)
    y, dy = _iterate_with_derivative(x, a, period)
    if abs(y - x) > 1e-10:
        return None
    if period > 1 and _newton_distance(x, a, period // 2) < 1e-7:
        return None  # collapsed onto the parent cycle
    return x, dy


def cascade_scan(a_lo: float = 2.5, a_hi: float = 3.57, k_max: int = 6,
                 tol: float = 1e-9) -> CascadeRecord:
    """Flip points of the period-1, 2, 4, ... cycles, found by continuation plus bisection.

    For each k < k_max the period-2**k cycle is picked up by iterating the
    critical point a little past the previous flip, then continued in a until
    its multiplier passes -1; the crossing is bisected to ``tol``.
    """
    if not 1 < a_lo < a_hi <= 4:
        raise DomainError("need 1 < a_lo < a_hi <= 4")
    if not 1 <= k_max <= 6:
        raise DomainError("k_max must be in 1..6")
    onsets = []
    previous = [1.0]  # birth of the nontrivial fixed point
    for k in range(k_max):
        period = 2**k
        if k == 0:
            a_start, step = a_lo, (a_hi - a_lo) / 64
        else:
            gap = 0.25 * (previous[-1] - previous[-2])
            a_start, step = previous[-1] + 0.25 * gap, gap / 16
        if a_start >= a_hi:
            return CascadeRecord(onsets, complete=False)
        x = orbit(DEFAULT_X0, a_start, 4000 * period)[-1]
        found = _locate_cycle(x, a_start, period)
        if found is None or found[1] <= -1.0:
            return CascadeRecord(onsets, complete=False)
        a, (x, mult) = a_start, found
        while mult > -1.0:
            a_next = a + step
            nxt = _locate_cycle(x, a_next, period) if a_next <= a_hi else None
            if nxt is None:
                return CascadeRecord(onsets, complete=False)
            if nxt[1] <= -1.0:
                break
            a, (x, mult) = a_next, nxt
        lo, hi, x_lo = a, a_next, x
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            res = _locate_cycle(x_lo, mid, period)
            if res is None:
                return CascadeRecord(onsets, complete=False)
            if res[1] > -1.0:
                lo, x_lo = mid, res[0]
            else:
                hi = mid
        onset = 0.5 * (lo + hi)
        onsets.append((2 * period, onset))
        previous.append(onset)
    return CascadeRecord(onsets)


def bifurcation_diagram(a_lo: float, a_hi: float, n_params: int, n_transient: int = 1000,
                        n_keep: int = 200, x0: float = DEFAULT_X0) -> list[tuple[float, np.ndarray]]:
    """Post-transient iterates of x0 for each a on a uniform grid (vectorised over a)."""
    if n_params < 2:
        raise DomainError("n_params must be >= 2")
    if not 0 < a_lo <= a_hi <= 4:
        raise DomainError(f"need 0 < a_lo <= a_hi <= 4, got [{a_lo}, {a_hi}]")
    if not 0 < x0 < 1:
        raise DomainError("x0 must lie in (0, 1)")
    a = np.linspace(a_lo, a_hi, n_params)
    x = np.full(n_params, float(x0))
    for _ in range(n_transient):
        x = a * x * (1.0 - x)
    kept = np.empty((n_keep, n_params))
    for i in range(n_keep):
        x = a * x * (1.0 - x)
        kept[i] = x
    return [(float(a[j]), kept[:, j].copy()) for j in range(n_params)]


def clusters(values, gap: float = CLUSTER_GAP) -> list[np.ndarray]:
    """Split sorted values wherever consecutive entries differ by more than ``gap``."""
    v = np.sort(np.asarray(values, dtype=float))
    cuts = np.flatnonzero(np.diff(v) > gap) + 1
    return np.split(v, cuts)


def forcing_spot_check(a: float, periods=range(1, 8)) -> dict[int, bool]:
    """Existence of cycles of each period, given that period 3 exists at a."""
    if not find_periodic_orbits(a, 3):
        raise DomainError(f"no period-3 cycle at a={a}; the forcing check does not apply")
    return {n: bool(find_periodic_orbits(a, n)) for n in periods}
