"""Surfaces of section for sampled 3-D flows and the induced return map."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import DomainError, InsufficientDataError, Orbit, State3, Tolerance, approx_eq

ON_PLANE = 1e-14


class Direction(enum.Enum):
    POSITIVE = "positive"  # g goes from < 0 to > 0
    NEGATIVE = "negative"
    BOTH = "both"


@dataclass(frozen=True)
class SectionPlane:
    """The plane {s : normal . s = offset}; ``direction`` selects which crossings count."""

    normal: tuple
    offset: float = 0.0
    direction: Direction = Direction.POSITIVE

    def __post_init__(self):
        n = tuple(float(c) for c in self.normal)
        if len(n) != 3:
            raise DomainError("normal must be a 3-vector")
        if abs(math.sqrt(sum(c * c for c in n)) - 1.0) > 1e-12:
            raise DomainError(f"normal must have unit length, got {n}")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "direction", Direction(self.direction))

    @classmethod
    def through(cls, normal: Sequence[float], offset: float = 0.0,
                direction: Direction | str = Direction.POSITIVE) -> "SectionPlane":
        """Build a plane from an arbitrary (non-zero) normal; normal and offset are rescaled."""
        v = np.asarray(normal, dtype=float)
        length = float(np.linalg.norm(v))
        if length == 0 or not math.isfinite(length):
            raise DomainError("normal must be a finite non-zero vector")
        return cls(tuple(v / length), offset / length, Direction(direction))

    def g(self, s) -> np.ndarray:
        return np.asarray(s, dtype=float) @ np.asarray(self.normal) - self.offset


@dataclass(frozen=True)
class SectionPoint:
    location: State3
    t: float
    index: int


def _accepts(direction: Direction, before: float, after: float) -> bool:
    if direction is Direction.POSITIVE:
        return before < 0 < after
    if direction is Direction.NEGATIVE:
        return before > 0 > after
    return before * after < 0


def section(orbit: Orbit, plane: SectionPlane) -> list[SectionPoint]:
    """Crossings of a sampled orbit with ``plane``, located by linear interpolation in g.

    A sample lying on the plane (|g| < 1e-14) is attributed to the interval
    that ends at it; it only counts if the orbit actually passes to the
    other side, so touches are ignored, as are grazes between samples.
    """
    if orbit.dt is None:
        raise DomainError("sectioning needs a flow orbit with a recorded dt")
    samples = np.asarray(orbit.samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 3 or len(samples) < 2:
        raise DomainError("section needs at least two 3-D samples")
    g = plane.g(samples)
    on = np.abs(g) < ON_PLANE
    side = np.where(on, 0.0, np.sign(g))

    strict = np.flatnonzero(side[:-1] * side[1:] < 0)
    # intervals ending on the plane: resolved against the next off-plane sample
    landing = np.flatnonzero((side[:-1] != 0) & on[1:])
    candidates = np.union1d(strict, landing)

    out = []
    for i in candidates:
        before = side[i]
        if on[i + 1]:
            j = i + 1
            while j < len(side) and side[j] == 0:
                j += 1
            if j == len(side):
                continue
            if not _accepts(plane.direction, before, side[j]):
                continue
            loc = samples[i + 1]
            t = orbit.t0 + (i + 1) * orbit.dt
        else:
            if not _accepts(plane.direction, before, side[i + 1]):
                continue
            frac = g[i] / (g[i] - g[i + 1])
            loc = samples[i] + frac * (samples[i + 1] - samples[i])
            t = orbit.t0 + (i + frac) * orbit.dt
        out.append(SectionPoint(State3(*map(float, loc)), float(t), len(out)))
    return out


def return_map(points: Sequence[SectionPoint]) -> list[tuple[SectionPoint, SectionPoint]]:
    if len(points) < 2:
        raise InsufficientDataError(f"a return map needs >= 2 crossings, got {len(points)}")
    return list(zip(points[:-1], points[1:]))


def detect_period(points: Sequence[SectionPoint], tol: Tolerance,
                  max_n: int = 20) -> Optional[int]:
    """Smallest n <= max_n with p_k ~ p_{k+n} (componentwise) for every available k."""
    if max_n < 1:
        raise DomainError("max_n must be >= 1")
    if not points:
        raise DomainError("detect_period needs at least one point")
    locs = [p.location for p in points]
    for n in range(1, min(max_n, len(locs) - 1) + 1):
        if all(
            approx_eq(u, v, tol)
            for k in range(len(locs) - n)
            for u, v in zip(locs[k], locs[k + n])
        ):
            return n
    return None


def section_coordinates(points: Sequence[SectionPoint]) -> np.ndarray:
    """(n, 3) array of crossing locations."""
    return np.array([p.location for p in points], dtype=float).reshape(-1, 3)
