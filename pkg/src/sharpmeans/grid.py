"""Sample grids over t > 1 used by the sign and bound verifiers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union


@dataclass(frozen=True)
class GridSpec:
    """Linear refinement on ``(1, t_near]`` plus a geometric tail on ``(t_near, t_max]``.

    Points with ``t - 1 < exclusion`` are dropped: inside that zone the strict
    inequalities degenerate into rounding noise.
    """

    near_count: int = 128
    far_count: int = 512
    t_near: float = 1.01
    t_max: float = 1e8
    exclusion: float = 1e-8

    def __post_init__(self) -> None:
        if self.near_count < 0 or self.far_count < 0:
            raise ValueError("grid counts must be non-negative")
        if self.near_count + self.far_count == 0:
            raise ValueError("grid must contain at least one point")
        if not (self.t_near > 1.0 and self.t_max > 1.0):
            raise ValueError("t_near and t_max must exceed 1")
        if not math.isfinite(self.t_max):
            raise ValueError("t_max must be finite")

    def points(self) -> list[float]:
        near_top = min(self.t_near, self.t_max)
        pts = [1.0 + (near_top - 1.0) * i / self.near_count for i in range(1, self.near_count + 1)]
        if self.t_max > near_top and self.far_count:
            log_span = math.log(self.t_max / near_top)
            pts += [near_top * math.exp(log_span * j / self.far_count) for j in range(1, self.far_count)]
            pts.append(self.t_max)
        return sorted({t for t in pts if t - 1.0 >= self.exclusion})

    def describe(self) -> dict:
        return {
            "near_count": self.near_count,
            "far_count": self.far_count,
            "t_near": self.t_near,
            "t_max": self.t_max,
            "exclusion": self.exclusion,
        }


DEFAULT_GRID = GridSpec()

GridLike = Union[GridSpec, Sequence[float], None]


def resolve(grid: GridLike) -> list[float]:
    """Turn a spec, an explicit list of abscissae or ``None`` into sorted points."""
    if grid is None:
        return DEFAULT_GRID.points()
    if isinstance(grid, GridSpec):
        return grid.points()
    return sorted(float(t) for t in grid)


def describe(grid: GridLike) -> dict:
    if grid is None:
        return DEFAULT_GRID.describe()
    if isinstance(grid, GridSpec):
        return grid.describe()
    pts = resolve(grid)
    return {"explicit": len(pts), "t_min": pts[0] if pts else None, "t_max": pts[-1] if pts else None}

