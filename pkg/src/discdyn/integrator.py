"""Fixed-step double-approximation (Heun) integration of autonomous systems.

One step predicts with forward Euler and corrects with the trapezoidal mean
of the two slopes::

    P~    = P + F(P) dt
    P_new = P + (F(P) + F(P~)) dt / 2

which is algebraically the mean of ``P`` and the two-step Euler image of ``P``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import DomainError, IntegrationError, Orbit

DEFAULT_DT = 0.01


@dataclass(frozen=True)
class OdeSystem:
    dim: int
    rhs: Callable[[np.ndarray], np.ndarray]
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("system dimension must be positive")


@dataclass(frozen=True)
class StepPlan:
    dt: float = DEFAULT_DT
    n_steps: int = 1
    t0: float = 0.0

    def __post_init__(self):
        if not self.dt > 0:
            raise DomainError(f"dt must be positive, got {self.dt}")
        if self.n_steps < 1:
            raise DomainError(f"n_steps must be >= 1, got {self.n_steps}")

    @classmethod
    def over(cls, t_end: float, dt: float, t0: float = 0.0) -> "StepPlan":
        """Plan covering [t0, t_end] with the nearest whole number of steps."""
        return cls(dt=dt, n_steps=int(round((t_end - t0) / dt)), t0=t0)


def _slope(sys: OdeSystem, p: np.ndarray, step: int) -> np.ndarray:
    k = np.asarray(sys.rhs(p), dtype=float)
    if not np.all(np.isfinite(k)):
        raise IntegrationError(f"non-finite derivative at step {step}", step)
    return k


def _check_input(p, dt) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(p)):
        raise DomainError("initial state must be finite")
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    return p


def euler_step(sys: OdeSystem, p, dt: float, *, step: int = 0) -> np.ndarray:
    p = _check_input(p, dt)
    return p + _slope(sys, p, step) * dt


def double_approx_step(sys: OdeSystem, p, dt: float, *, step: int = 0) -> np.ndarray:
    p = _check_input(p, dt)
    k1 = _slope(sys, p, step)
    k2 = _slope(sys, p + k1 * dt, step)
    out = p + 0.5 * (k1 + k2) * dt
    if not np.all(np.isfinite(out)):
        raise IntegrationError(f"non-finite state at step {step}", step)
    return out


def integrate(sys: OdeSystem, p0, plan: StepPlan, params=None) -> Orbit:
    """Integrate ``n_steps`` double-approximation steps from ``p0``.

    Returns an orbit of ``n_steps + 1`` samples. On a non-finite step the
    raised IntegrationError carries the finite prefix as ``err.orbit``.
    """
    p = _check_input(p0, plan.dt)
    if p.shape != (sys.dim,):
        raise DomainError(f"expected a state of shape ({sys.dim},), got {p.shape}")
    out = np.empty((plan.n_steps + 1, sys.dim))
    out[0] = p
    rhs, dt = sys.rhs, plan.dt
    with np.errstate(over="ignore", invalid="ignore"):  # checked explicitly below
        for n in range(plan.n_steps):
            k1 = np.asarray(rhs(p), dtype=float)
            k2 = np.asarray(rhs(p + k1 * dt), dtype=float)
            p = p + 0.5 * (k1 + k2) * dt
            if not np.all(np.isfinite(p)):
                prefix = Orbit(out[: n + 1].copy(), dt=dt, params=params, t0=plan.t0)
                raise IntegrationError(f"non-finite state at step {n}", n, prefix)
            out[n + 1] = p
    return Orbit(out, dt=dt, params=params, t0=plan.t0)
