"""
Geodesic and horocycle flows on the unit tangent bundle of H.

A unit tangent vector is stored as its base point and the forward endpoint
of the geodesic it points along. Both flows are computed in the standard
frame: the unique isometry T with T(base) = i and T(forward) = inf. There

  - g_t moves i to e^t i,
  - h_s moves i to s + i (positive s toward +x, seen from inf),

and the result is mapped back by T^-1. With these orientations the flows
satisfy g_t o h_s = h_(s e^-t) o g_t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from flutelab.geometry.moebius import MoebiusTransform, apply, invert, to_standard_frame
from flutelab.geometry.plane import (
    INF,
    I,
    BoundaryPoint,
    Geodesic,
    PlanePoint,
    busemann,
    geodesic_through,
)


@dataclass(frozen=True)
class UnitTangent:
    base: PlanePoint
    forward: BoundaryPoint = INF

    @property
    def geodesic(self) -> Geodesic:
        return geodesic_through(self.base, self.forward)

    @property
    def backward(self) -> BoundaryPoint:
        g = self.geodesic
        return g.e1 if g.e2 == self.forward else g.e2

    def opposite(self) -> UnitTangent:
        """Same base point, pointing toward the backward endpoint."""
        return UnitTangent(self.base, self.backward)

    def frame(self) -> MoebiusTransform:
        return to_standard_frame(self.base, self.forward)

    def transform(self, m: MoebiusTransform) -> UnitTangent:
        """Push the vector forward by an isometry."""
        return UnitTangent(apply(m, self.base), apply(m, self.forward))

    def horocycle_level(self) -> float:
        """B_forward(base, i): the level of the stable horocycle through the base."""
        return busemann(self.forward, self.base, I)


def geodesic_flow(u: UnitTangent, t: float) -> UnitTangent:
    """Move distance |t| along the oriented geodesic (toward forward for t > 0)."""
    back = invert(u.frame())
    return UnitTangent(apply(back, PlanePoint(0.0, math.exp(t))), u.forward)


def horocycle_flow(u: UnitTangent, s: float) -> UnitTangent:
    """Move signed arclength s along the horocycle based at the forward endpoint."""
    back = invert(u.frame())
    return UnitTangent(apply(back, PlanePoint(s, 1.0)), u.forward)
