"""Shared value types, error classes and float comparison."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Optional

import numpy as np


class DynamicsError(Exception):
    """Base class for every error raised by this package."""

    kind = "error"


class DomainError(DynamicsError, ValueError):
    kind = "domain"


class SingularParameterError(DynamicsError, ValueError):
    kind = "singular-parameter"


class InsufficientDataError(DynamicsError, ValueError):
    kind = "insufficient-data"


class IntegrationError(DynamicsError, ArithmeticError):
    """A step produced a non-finite state.

    ``step`` is the 0-based index of the failing step (it would have produced
    sample ``step + 1``); ``orbit`` holds every finite sample up to it.
    """

    kind = "integration"

    def __init__(self, message: str, step: int, orbit: "Orbit | None" = None):
        super().__init__(message)
        self.step = step
        self.orbit = orbit


class EscapeError(DynamicsError, ArithmeticError):
    """A map iterate diverged; ``completed`` carries the iterates computed so far."""

    kind = "escape"

    def __init__(self, message: str, iterate: Any = None, completed: Optional[list] = None):
        super().__init__(message)
        self.iterate = iterate
        self.completed = [] if completed is None else completed


class State3(NamedTuple):
    x: float
    y: float
    z: float


class Point2(NamedTuple):
    x: float
    y: float


def is_finite(values) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class Tolerance:
    abs: float = 0.0
    rel: float = 0.0

    def __post_init__(self):
        if self.abs < 0 or self.rel < 0:
            raise DomainError(f"tolerances must be non-negative, got {self}")
        if self.abs + self.rel <= 0:
            raise DomainError("abs + rel must be positive")


def approx_eq(u: float, v: float, tol: Tolerance) -> bool:
    """|u - v| <= tol.abs + tol.rel * max(|u|, |v|)."""
    if not (math.isfinite(u) and math.isfinite(v)):
        raise DomainError(f"approx_eq needs finite inputs, got {u!r}, {v!r}")
    return abs(u - v) <= tol.abs + tol.rel * max(abs(u), abs(v))


@dataclass(frozen=True, eq=False)
class Orbit:
    """Consecutive samples of a flow or iterates of a map.

    ``samples`` has shape (n,) for scalar maps or (n, dim) otherwise.
    ``dt`` is None for maps. Sample ``i`` of a flow sits at ``t0 + i * dt``.
    """

    samples: np.ndarray
    dt: Optional[float] = None
    params: Any = None
    t0: float = 0.0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.samples) == 0:
            raise DomainError("an orbit needs at least one sample")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def times(self) -> np.ndarray:
        if self.dt is None:
            raise DomainError("map orbits carry no time axis")
        return self.t0 + self.dt * np.arange(len(self.samples))

    @property
    def final(self):
        return self.samples[-1]
