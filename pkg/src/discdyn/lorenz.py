"""The Lorenz convection model.

    X' = -sigma X + sigma Y
    Y' = -X Z + r X - Y
    Z' =  X Y - b Z
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, SingularParameterError, State3, is_finite
from .integrator import OdeSystem, StepPlan, integrate


@dataclass(frozen=True)
class LorenzParams:
    sigma: float = 10.0
    r: float = 28.0
    b: float = 8.0 / 3.0

    def __post_init__(self):
        if not is_finite((self.sigma, self.r, self.b)):
            raise DomainError(f"non-finite Lorenz parameters: {self}")
        if self.sigma <= 0 or self.b <= 0:
            raise DomainError(f"sigma and b must be positive: {self}")


CANONICAL = LorenzParams()


@dataclass(frozen=True)
class EquilibriumReport:
    location: State3
    char_coeffs: tuple  # monic cubic, highest power first
    eigenvalues: tuple  # complex roots of char_coeffs, sorted by real part

    @property
    def stable(self) -> bool:
        return all(ev.real < 0 for ev in self.eigenvalues)


@dataclass(frozen=True)
class OriginCharPoly:
    """(lambda + b)(lambda^2 + (sigma+1) lambda + sigma(1-r)) at the origin."""

    linear_root: float
    quadratic: tuple
    discriminant: float
    quadratic_roots: tuple

    @property
    def all_real(self) -> bool:
        return self.discriminant >= 0

    @property
    def has_positive_root(self) -> bool:
        # product of the quadratic roots is sigma(1-r): negative iff r > 1
        return self.quadratic[2] < 0

    def cubic(self) -> tuple:
        return tuple(float(c) for c in np.polymul([1.0, -self.linear_root], self.quadratic))


def lorenz_rhs(s: State3, p: LorenzParams = CANONICAL) -> State3:
    x, y, z = s
    return State3(-p.sigma * x + p.sigma * y, -x * z + p.r * x - y, x * y - p.b * z)


def lorenz_system(p: LorenzParams = CANONICAL) -> OdeSystem:
    """OdeSystem over 3-vectors, for use with the integrator."""
    sigma, r, b = p.sigma, p.r, p.b

    def rhs(v: np.ndarray) -> np.ndarray:
        x, y, z = v
        return np.array([-sigma * x + sigma * y, -x * z + r * x - y, x * y - b * z])

    return OdeSystem(3, rhs, name="lorenz")


def jacobian(s: State3, p: LorenzParams = CANONICAL) -> np.ndarray:
    x, y, z = s
    return np.array(
        [
            [-p.sigma, p.sigma, 0.0],
            [p.r - z, -1.0, -x],
            [y, x, -p.b],
        ]
    )


def _sorted_roots(coeffs) -> tuple:
    roots = np.roots(np.asarray(coeffs, dtype=float)).astype(complex)
    return tuple(sorted(roots, key=lambda z: (z.real, z.imag)))


def char_poly_origin(p: LorenzParams = CANONICAL) -> OriginCharPoly:
    quad = (1.0, p.sigma + 1.0, p.sigma * (1.0 - p.r))
    disc = quad[1] ** 2 - 4.0 * quad[2]
    if disc >= 0:
        sq = math.sqrt(disc)
        # avoid cancellation: larger-magnitude root first
        q = -0.5 * (quad[1] + math.copysign(sq, quad[1]))
        roots = tuple(sorted((q, quad[2] / q if q != 0 else 0.0)))
    else:
        sq = math.sqrt(-disc)
        roots = (complex(-quad[1] / 2, -sq / 2), complex(-quad[1] / 2, sq / 2))
    return OriginCharPoly(-p.b, quad, disc, roots)


def char_poly_nontrivial(p: LorenzParams = CANONICAL) -> tuple:
    """Cubic at the two symmetric equilibria (r > 1 only)."""
    if p.r <= 1:
        raise DomainError(f"nontrivial equilibria need r > 1, got r={p.r}")
    s, r, b = p.sigma, p.r, p.b
    return (1.0, s + b + 1.0, (r + s) * b, 2.0 * s * b * (r - 1.0))


def critical_r(p: LorenzParams = CANONICAL) -> float:
    """r at which the nontrivial equilibria have a purely imaginary eigenpair."""
    denom = p.sigma - p.b - 1.0
    if denom == 0:
        raise SingularParameterError(f"sigma - b - 1 = 0 (sigma={p.sigma}, b={p.b})")
    return p.sigma * (p.sigma + p.b + 3.0) / denom


def equilibria(p: LorenzParams = CANONICAL) -> list[EquilibriumReport]:
    origin = State3(0.0, 0.0, 0.0)
    cubic = char_poly_origin(p).cubic()
    reports = [EquilibriumReport(origin, cubic, _sorted_roots(cubic))]
    if p.r <= 1:
        return reports
    c = math.sqrt(p.b * (p.r - 1.0))
    coeffs = char_poly_nontrivial(p)
    roots = _sorted_roots(coeffs)
    for sign in (1.0, -1.0):
        reports.append(EquilibriumReport(State3(sign * c, sign * c, p.r - 1.0), coeffs, roots))
    return reports


@dataclass(frozen=True)
class DivergenceResult:
    t: np.ndarray
    separation: np.ndarray

    @property
    def growth(self) -> float:
        return float(self.separation[-1] / self.separation[0])


def divergence_experiment(p: LorenzParams, s0: State3, delta0: float,
                          plan: StepPlan) -> DivergenceResult:
    """Separation between the orbits of s0 and s0 + (delta0, 0, 0)."""
    if not (delta0 >= 0 and math.isfinite(delta0)):
        raise DomainError(f"delta0 must be finite and non-negative, got {delta0}")
    sys = lorenz_system(p)
    a = integrate(sys, s0, plan, params=p)
    shifted = (s0[0] + delta0, s0[1], s0[2])
    b = integrate(sys, shifted, plan, params=p)
    sep = np.linalg.norm(a.samples - b.samples, axis=1)
    return DivergenceResult(a.times, sep)


def lorenz_orbit(p: LorenzParams = CANONICAL, s0=(0.0, 1.0, 0.0), dt: float = 0.01,
                 n_steps: int = 10_000, t0: float = 0.0):
    """Convenience wrapper: Lorenz orbit from s0 with the double-approximation scheme."""
    return integrate(lorenz_system(p), s0, StepPlan(dt=dt, n_steps=n_steps, t0=t0), params=p)
