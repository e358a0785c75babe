"""The logistic map for a > 4: escape from [0, 1] and the surviving Cantor set.

For a > 4 the middle interval A0 is sent above 1 and from there to -inf.
Level n of the construction keeps the points whose first n + 1 images stay
in [0, 1]; it is the union of 2**(n+1) closed intervals, each level nested
in the previous one.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import DomainError

MAX_DEPTH = 20  # level 20 already holds 2**21 intervals


class Interval(NamedTuple):
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


class IntervalSet:
    """Sorted, non-overlapping closed subintervals of [0, 1], held as two arrays."""

    __slots__ = ("lo", "hi")

    def __init__(self, intervals=None, *, lo=None, hi=None):
        if intervals is not None:
            arr = np.asarray(intervals, dtype=float).reshape(-1, 2)
            lo, hi = arr[:, 0], arr[:, 1]
        lo = np.array(lo, dtype=float)
        hi = np.array(hi, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1 or lo.size == 0:
            raise DomainError("an interval set needs matching, non-empty endpoint arrays")
        if not (np.all(lo >= 0.0) and np.all(lo <= hi) and np.all(hi <= 1.0)):
            raise DomainError("every interval must be a subinterval of [0, 1]")
        # float64 cannot separate the pieces crowding x = 1 past depth ~20,
        # so touching neighbours are tolerated here
        if np.any(hi[:-1] > lo[1:]):
            raise DomainError("intervals overlap or are unsorted")
        lo.flags.writeable = False
        hi.flags.writeable = False
        self.lo, self.hi = lo, hi

    def __len__(self) -> int:
        return self.lo.size

    def __iter__(self):
        return (Interval(float(l), float(h)) for l, h in zip(self.lo, self.hi))

    def __getitem__(self, i) -> Interval:
        return Interval(float(self.lo[i]), float(self.hi[i]))

    def __repr__(self) -> str:
        head = ", ".join(f"[{l:.6g}, {h:.6g}]" for l, h in zip(self.lo[:4], self.hi[:4]))
        more = ", ..." if len(self) > 4 else ""
        return f"IntervalSet({len(self)}: {head}{more})"

    @property
    def intervals(self) -> list[Interval]:
        return list(self)

    @property
    def lengths(self) -> np.ndarray:
        return self.hi - self.lo

    @property
    def total_length(self) -> float:
        return math.fsum(self.lengths)

    @property
    def max_length(self) -> float:
        return float(self.lengths.max())

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.lo + self.hi)

    def gaps(self) -> list[Interval]:
        return [Interval(float(l), float(r)) for l, r in zip(self.hi[:-1], self.lo[1:])]

    def contains_point(self, x: float) -> bool:
        i = np.searchsorted(self.lo, x, side="right") - 1
        return bool(i >= 0 and x <= self.hi[i])

    def parent_index(self, coarser: "IntervalSet") -> np.ndarray:
        """For each interval, the index of the interval of ``coarser`` containing it (-1 if none)."""
        i = np.searchsorted(coarser.lo, self.lo, side="right") - 1
        ok = (i >= 0) & (self.hi <= coarser.hi[np.clip(i, 0, None)])
        return np.where(ok, i, -1)


class Branch(enum.Enum):
    LEFT = "left"  # x <= 1/2, f increasing
    RIGHT = "right"  # x >= 1/2, f decreasing


def _require_escape_regime(a: float) -> None:
    if not a > 4:
        raise DomainError(f"the escape construction needs a > 4, got a={a}")


def logistic(x: float, a: float) -> float:
    return a * x * (1.0 - x)


def escape_interval(a: float) -> Interval:
    """A0: the points sent above 1 by one step; both endpoints map to exactly 1."""
    _require_escape_regime(a)
    s = math.sqrt(a * (a - 4.0))
    return Interval((a - s) / (2.0 * a), (a + s) / (2.0 * a))


def _branch_root(y, a: float, branch: Branch):
    # roots of a x (1 - x) = y: left root via x1 = (y/a) / x2 to avoid cancellation
    s = np.sqrt(np.maximum(0.0, 1.0 - 4.0 * np.asarray(y, dtype=float) / a))
    left = 2.0 * y / (a * (1.0 + s))
    return left if branch is Branch.LEFT else 1.0 - left


def preimage(target: Interval, a: float, branch: Branch | str) -> Optional[Interval]:
    """Preimage of ``target`` under f restricted to one monotone branch.

    Returns None when ``target`` is not inside that branch's range [0, a/4].
    """
    _require_escape_regime(a)
    branch = Branch(branch)
    lo, hi = target
    if lo > hi or lo < 0.0 or hi > a / 4.0:
        return None
    x_lo, x_hi = float(_branch_root(lo, a, branch)), float(_branch_root(hi, a, branch))
    if branch is Branch.RIGHT:
        x_lo, x_hi = x_hi, x_lo
    return Interval(x_lo, x_hi)


def _pull_back(level: IntervalSet, a: float) -> IntervalSet:
    """Both branch preimages of every interval, in ascending order."""
    left_lo = _branch_root(level.lo, a, Branch.LEFT)
    left_hi = _branch_root(level.hi, a, Branch.LEFT)
    right_lo = _branch_root(level.hi[::-1], a, Branch.RIGHT)
    right_hi = _branch_root(level.lo[::-1], a, Branch.RIGHT)
    return IntervalSet(lo=np.concatenate([left_lo, right_lo]),
                       hi=np.concatenate([left_hi, right_hi]))


def cantor_levels(a: float, depth: int) -> list[IntervalSet]:
    """Levels 0..depth; level n has 2**(n+1) intervals."""
    _require_escape_regime(a)
    if not 0 <= depth <= MAX_DEPTH:
        raise DomainError(f"depth must be in 0..{MAX_DEPTH}, got {depth}")
    levels = [_pull_back(IntervalSet([(0.0, 1.0)]), a)]
    for _ in range(depth):
        levels.append(_pull_back(levels[-1], a))
    return levels


@dataclass(frozen=True)
class EscapeReport:
    """``level = n`` means f^1..f^n stay in [0, 1] and f^(n+1) leaves (x lies in A_n).

    ``level is None`` means the orbit stayed through level ``retained_through``.
    """

    level: Optional[int]
    retained_through: Optional[int] = None

    @property
    def escaped(self) -> bool:
        return self.level is not None


def escape_time(x: float, a: float, n_max: int) -> EscapeReport:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    _require_escape_regime(a)
    for n in range(n_max + 1):
        x = a * x * (1.0 - x)
        if not 0.0 <= x <= 1.0:
            return EscapeReport(n)
    return EscapeReport(None, n_max)


@dataclass(frozen=True)
class ExpansionCheck:
    holds: bool
    min_derivative: float


def expansion_check(a: float) -> ExpansionCheck:
    """Is |f'| > 1 on all of [0, 1] minus A0?

    |f'(x)| = a|1 - 2x| is smallest at the endpoints of A0, where it equals
    sqrt(a(a - 4)); the condition holds exactly for a > 2 + sqrt(5).
    """
    _require_escape_regime(a)
    m = math.sqrt(a * (a - 4.0))
    return ExpansionCheck(m > 1.0, m)
