"""
Angle and limit-point diagnostics used alongside the orbit-closure scan.

Everything here is evidence at a finite word radius, never a classification
of the limit set.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from flutelab.errors import DegenerateFoot, DegenerateInput
from flutelab.geometry.moebius import apply
from flutelab.geometry.plane import I, Geodesic, angle_between, cross_ratio
from flutelab.surfaces.flute import GroupTruncation
from flutelab.surfaces.words import word_ball

logger = logging.getLogger("flutelab.orbits")

DEFAULT_STRIPS = (1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0)
CROSS_RATIO_TOL = 1e-12


@dataclass
class FootAngle:
    """
    The foot geodesic (beta, x/2) of an axis (y, x) and the angle it determines.

    The foot is orthogonal to the axis for every 0 < y < x. The cross-ratio
    equals y/(x - 2y), which lies in [0, 1] only for x >= 3y; for y < x < 3y
    ``angle_defined`` is False and ``theta`` is nan.
    """

    beta: float
    theta: float
    foot: Geodesic
    orthogonality_residual: float
    cross_ratio: float
    angle_defined: bool = True


def orthogonal_foot_angle(axis: Geodesic) -> FootAngle:
    """
    beta = -x^2/(2y) + 3x/2 for an axis with endpoints 0 < y < x, and theta in
    [0, pi] from [beta; 0; inf; x/2] = (1 + cos theta)/2.

    Raises:
        DegenerateInput: for a vertical axis or endpoints outside 0 < y < x.
        DegenerateFoot: when beta = x/2.
    """
    if axis.is_vertical:
        raise DegenerateInput("foot angle needs an axis with two finite endpoints")
    y, x = axis.e1.value, axis.e2.value
    if not 0 < y < x:
        raise DegenerateInput(f"foot angle needs 0 < y < x, got y={y}, x={x}")
    beta = -x * x / (2.0 * y) + 1.5 * x
    half = x / 2.0
    if beta == half:
        raise DegenerateFoot(f"foot geodesic collapses at x = {x}, y = {y}")
    value = cross_ratio(beta, 0.0, math.inf, half)
    cos_theta = 2.0 * value - 1.0
    foot = Geodesic.between(beta, half)
    residual = abs(angle_between(foot, axis) - math.pi / 2.0)
    if abs(cos_theta) > 1.0 + CROSS_RATIO_TOL:
        logger.debug("Cross-ratio %.6g outside [0, 1] for y=%s x=%s", value, y, x)
        return FootAngle(beta, math.nan, foot, residual, value, angle_defined=False)
    theta = math.acos(max(-1.0, min(1.0, cos_theta)))
    return FootAngle(beta, theta, foot, residual, value)


@dataclass
class StripCount:
    low: float
    high: float
    count: int
    max_abs_re: float


@dataclass
class LimitPointReport:
    word_radius: int
    count: int
    orbit_size: int
    sup_im: float
    strips: list[StripCount] = field(default_factory=list)
    real_part_residual: float = 0.0

    @property
    def evidence(self) -> str:
        return f"evidence at word radius {self.word_radius}, not a classification"


def limit_point_diagnostic(
    g: GroupTruncation, word_radius: int, strips: Optional[Sequence[float]] = None
) -> LimitPointReport:
    """
    Census of the orbit of i over the word ball.

    Reports sup Im(gamma i), the number of orbit points in each horizontal
    strip between consecutive edges of ``strips`` with the largest |Re| among
    them, and the largest relative residual of
    Re(gamma i) = a/c - d/(c(c^2 + d^2)) over words with c != 0.
    """
    edges = np.asarray(DEFAULT_STRIPS if strips is None else strips, dtype=float)
    points = []
    residual = 0.0
    for _, m in word_ball(g, word_radius, include_identity=True):
        z = apply(m, I)
        points.append((z.x, z.y))
        if m.c != 0:
            # entries share one scale; d/(c(c^2 + d^2)) carries exp(-2 log_scale)
            tail = m.d / (m.c * (m.c**2 + m.d**2)) * math.exp(-2.0 * m.log_scale)
            predicted = m.a / m.c - tail
            residual = max(residual, abs(z.x - predicted) / max(1.0, abs(z.x)))
    coords = np.asarray(points)
    re, im = coords[:, 0], coords[:, 1]
    counts, _ = np.histogram(im, bins=edges)
    bins = np.digitize(im, edges) - 1
    census = []
    for k, n in enumerate(counts):
        members = np.abs(re[bins == k])
        census.append(StripCount(
            low=float(edges[k]), high=float(edges[k + 1]), count=int(n),
            max_abs_re=float(members.max()) if members.size else 0.0,
        ))
    report = LimitPointReport(
        word_radius=word_radius, count=g.count, orbit_size=len(points),
        sup_im=float(im.max()), strips=census, real_part_residual=residual,
    )
    logger.info(
        "Limit-point census: N=%d radius=%d orbit=%d sup Im=%.6g",
        g.count, word_radius, report.orbit_size, report.sup_im,
    )
    return report
