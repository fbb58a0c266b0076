"""
Quotient distances and injectivity radii over word balls.

The group is infinitely generated, so every infimum over the group is
replaced by a minimum over the reduced words of length <= word_radius of a
truncation. The values are upper bounds on the true quantities and are
nonincreasing in the radius and in the generator count.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from flutelab.dynamics.flows import UnitTangent, geodesic_flow
from flutelab.errors import ConfigError
from flutelab.geometry.moebius import MoebiusTransform, apply
from flutelab.geometry.plane import PlanePoint, dist
from flutelab.surfaces.flute import GroupTruncation
from flutelab.surfaces.words import word_ball

logger = logging.getLogger("flutelab.dynamics")

LINEAR_SLOPE = 0.5


def ball_matrices(
    g: GroupTruncation, radius: int, include_identity: bool
) -> list[MoebiusTransform]:
    return [m for _, m in word_ball(g, radius, include_identity=include_identity)]


def ball_minimum(
    fn: Callable[[MoebiusTransform], float], matrices: Sequence[MoebiusTransform]
) -> float:
    """min(fn(m) for m in matrices), inf for an empty ball."""
    return min((fn(m) for m in matrices), default=math.inf)


def quotient_distance(
    z: PlanePoint, w: PlanePoint, g: GroupTruncation, word_radius: int,
    matrices: Optional[Sequence[MoebiusTransform]] = None,
) -> float:
    """min of d(z, gamma w) over reduced words with |gamma| <= word_radius, identity included."""
    if matrices is None:
        matrices = ball_matrices(g, word_radius, include_identity=True)
    return ball_minimum(lambda m: dist(z, apply(m, w)), matrices)


def injectivity_radius(
    x: PlanePoint, g: GroupTruncation, word_radius: int,
    matrices: Optional[Sequence[MoebiusTransform]] = None,
) -> float:
    """
    min over nonidentity reduced words of d(x, gamma x), without a 1/2 factor.

    Returns inf when the truncation has no generators.
    """
    if matrices is None:
        matrices = ball_matrices(g, word_radius, include_identity=False)
    return ball_minimum(lambda m: dist(x, apply(m, x)), matrices)


@dataclass
class RayProfile:
    times: list[float]
    inj: list[float]
    word_radius: int
    gen_count: int
    running_min_tail: list[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.running_min_tail:
            self.running_min_tail = running_min_tail(self.inj)

    @property
    def last_quartile_min(self) -> float:
        """Minimum over the last quarter of the grid, the finite liminf proxy."""
        start = (3 * len(self.inj)) // 4
        return min(self.inj[start:], default=math.inf)


def running_min_tail(values: Sequence[float]) -> list[float]:
    """out[k] = min(values[k:])."""
    out = list(values)
    for k in range(len(out) - 2, -1, -1):
        out[k] = min(out[k], out[k + 1])
    return out


def time_grid(t_max: float, steps: int) -> list[float]:
    if steps < 2 or not t_max > 0:
        raise ConfigError("profile grid needs steps >= 2 and t_max > 0")
    return [float(t) for t in np.linspace(0.0, t_max, steps)]


def thinness_profile(
    u: UnitTangent, g: GroupTruncation, t_max: float, steps: int, word_radius: int
) -> RayProfile:
    """Injectivity radius at g_t u along an even grid of t in [0, t_max]."""
    times = time_grid(t_max, steps)
    matrices = ball_matrices(g, word_radius, include_identity=False)
    inj = [
        injectivity_radius(geodesic_flow(u, t).base, g, word_radius, matrices) for t in times
    ]
    profile = RayProfile(times, inj, word_radius, g.count)
    logger.info(
        "Thinness profile: N=%d radius=%d t_max=%s last-quartile min=%.6g",
        g.count, word_radius, t_max, profile.last_quartile_min,
    )
    return profile


@dataclass
class QuasiMinimizingEstimate:
    """Grid witness for d(u(0), u(t)) >= t - C on the quotient."""

    times: list[float]
    deficits: list[float]
    word_radius: int

    @property
    def constant(self) -> float:
        return max(self.deficits)

    @property
    def tail_slope(self) -> float:
        """Growth rate of the deficit over the second half of the grid."""
        mid = len(self.times) // 2
        span = self.times[-1] - self.times[mid]
        return 0.0 if span <= 0 else (self.deficits[-1] - self.deficits[mid]) / span

    @property
    def grows_linearly(self) -> bool:
        """The ray wraps around the surface; no bounded C exists."""
        return self.tail_slope > LINEAR_SLOPE


def quasi_minimizing_estimate(
    u: UnitTangent, g: GroupTruncation, t_max: float, steps: int, word_radius: int
) -> QuasiMinimizingEstimate:
    times = time_grid(t_max, steps)
    matrices = ball_matrices(g, word_radius, include_identity=True)
    start = u.base
    deficits = [
        t - quotient_distance(start, geodesic_flow(u, t).base, g, word_radius, matrices)
        for t in times
    ]
    estimate = QuasiMinimizingEstimate(times, deficits, word_radius)
    if estimate.grows_linearly:
        logger.warning(
            "Ray is not quasi-minimizing at radius %d: deficit slope %.3f",
            word_radius, estimate.tail_slope,
        )
    return estimate


def quasi_minimizing_constant(
    u: UnitTangent, g: GroupTruncation, t_max: float, steps: int, word_radius: int
) -> float:
    """Smallest C with t - C <= quotient distance on every grid time."""
    return quasi_minimizing_estimate(u, g, t_max, steps, word_radius).constant
