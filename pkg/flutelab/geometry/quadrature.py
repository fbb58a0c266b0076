"""
Quadrature oracles for hyperbolic lengths.

Integrates the half-plane metric ds = |dz| / Im z along geodesic arcs with
``scipy.integrate.quad``. Used to validate the closed-form distance formulas,
in particular the cross-ratio identities for the distance between disjoint
geodesics.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable

from scipy.integrate import quad

from flutelab.errors import Interlaced, SharedEndpoint
from flutelab.geometry.plane import (
    EuclideanCircle,
    Geodesic,
    PlanePoint,
    cross_ratio,
    geodesic_intersection,
    interlaced,
    separation_order,
)

logger = logging.getLogger("flutelab.geometry")

QUAD_OPTIONS = {"epsabs": 1e-13, "epsrel": 1e-13, "limit": 200}


def arc_length(z: PlanePoint, w: PlanePoint) -> float:
    """Length of the geodesic segment [z, w] by numerical integration."""
    if z.x == w.x:
        lo, hi = sorted((z.y, w.y))
        value, _ = quad(lambda y: 1.0 / y, lo, hi, **QUAD_OPTIONS)
        return value
    center = (w.x**2 + w.y**2 - z.x**2 - z.y**2) / (2.0 * (w.x - z.x))
    t1 = math.atan2(z.y, z.x - center)
    t2 = math.atan2(w.y, w.x - center)
    lo, hi = sorted((t1, t2))
    # on a circle of radius r, ds / y = r dt / (r sin t)
    value, _ = quad(lambda t: 1.0 / math.sin(t), lo, hi, **QUAD_OPTIONS)
    return value


def common_orthogonal(g1: Geodesic, g2: Geodesic) -> Geodesic:
    """The unique geodesic orthogonal to two disjoint, non-asymptotic geodesics."""
    for p in g1.endpoints:
        if g2.has_endpoint(p):
            raise SharedEndpoint(f"{g1} and {g2} share the endpoint {p}")
    if interlaced(g1, g2):
        raise Interlaced(f"{g1} and {g2} cross")
    if g1.is_vertical or g2.is_vertical:
        line, other = (g1, g2) if g1.is_vertical else (g2, g1)
        circle = other.circle()
        e = line.e1.value
        rho = math.sqrt((e - circle.center) ** 2 - circle.radius**2)
        return EuclideanCircle(e, rho).to_geodesic()
    c1, c2 = g1.circle(), g2.circle()
    if c1.center == c2.center:
        return Geodesic.between(c1.center, math.inf)
    m = (c1.radius**2 - c2.radius**2 + c2.center**2 - c1.center**2) / (
        2.0 * (c2.center - c1.center)
    )
    rho = math.sqrt((m - c1.center) ** 2 - c1.radius**2)
    return EuclideanCircle(m, rho).to_geodesic()


def oracle_distance(g1: Geodesic, g2: Geodesic) -> float:
    """Distance between disjoint geodesics by integrating along their common orthogonal."""
    ortho = common_orthogonal(g1, g2)
    return arc_length(geodesic_intersection(ortho, g1), geodesic_intersection(ortho, g2))


@dataclass
class DistanceCalibration:
    """Worst residual of each printed/measured cross-ratio distance identity."""

    pairs: int = 0
    residuals: dict[str, float] = field(
        default_factory=lambda: {
            "half_cosh_sq_half_d": 0.0,
            "cosh_sq_half_d": 0.0,
            "tanh_sq_d": 0.0,
            "tanh_sq_half_d": 0.0,
        }
    )

    def matching(self, tol: float = 1e-8) -> list[str]:
        return sorted(name for name, r in self.residuals.items() if r <= tol)


def calibrate_distance_formulas(pairs: Iterable[tuple[Geodesic, Geodesic]]) -> DistanceCalibration:
    """
    Compare the cross-ratio distance identities against the quadrature oracle.

    For g1 = (a, b), g2 = (c, d) in cyclic order a, b, d, c the candidates are
    [a, c, d, b] = 1/2 cosh^2(d/2) or cosh^2(d/2), and [a, b, c, d] = tanh^2(d)
    or tanh^2(d/2). Residuals are relative to the size of the compared value.
    """
    result = DistanceCalibration()
    for g1, g2 in pairs:
        d = oracle_distance(g1, g2)
        a, b, c, dd = separation_order(g1, g2)
        q_cosh = cross_ratio(a, c, dd, b)
        q_tanh = cross_ratio(a, b, c, dd)
        candidates = {
            "half_cosh_sq_half_d": (q_cosh, 0.5 * math.cosh(d / 2.0) ** 2),
            "cosh_sq_half_d": (q_cosh, math.cosh(d / 2.0) ** 2),
            "tanh_sq_d": (q_tanh, math.tanh(d) ** 2),
            "tanh_sq_half_d": (q_tanh, math.tanh(d / 2.0) ** 2),
        }
        for name, (measured, predicted) in candidates.items():
            err = abs(measured - predicted) / max(1.0, abs(predicted))
            result.residuals[name] = max(result.residuals[name], err)
        result.pairs += 1
    logger.info(
        "Distance calibration over %d pairs: matching=%s residuals=%s",
        result.pairs,
        ",".join(result.matching()) or "none",
        {k: f"{v:.3e}" for k, v in result.residuals.items()},
    )
    return result
