"""
Primitives of the upper half-plane model.

Points of H are ``PlanePoint`` (Euclidean coordinates, y > 0); points of the
boundary R u {inf} are ``BoundaryPoint`` with an explicit infinity tag, so no
arithmetic ever runs on a floating-point ``inf``.

Conventions:
  - Busemann cocycle B_xi(z, w) is the limit of d(z, .) - d(w, .) toward xi,
    so B_inf(z, w) = log(Im w / Im z). For finite xi the Poisson-kernel form
    log(|z - xi|^2 / Im z) - log(|w - xi|^2 / Im w) is used.
  - Horocycle levels are measured against the reference point i.
  - Distance between disjoint geodesics uses the cross-ratio identity
    [a, b, c, d] = tanh^2(d/2) with the endpoints in cyclic order a, b, d, c.
    The printed variants 1/2 cosh^2(d/2) and tanh^2(d) do not reproduce the
    quadrature oracle; the measured forms are cosh^2(d/2) and tanh^2(d/2)
    (see ``flutelab.geometry.quadrature.calibrate_distance_formulas``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from flutelab.errors import (
    DegenerateInput,
    Interlaced,
    NotHyperbolic,
    NotIntersecting,
    SharedEndpoint,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class PlanePoint:
    """A point x + iy of the open upper half-plane."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (self.y > 0) or not math.isfinite(self.x) or not math.isfinite(self.y):
            raise DegenerateInput(f"PlanePoint needs finite x and y > 0, got ({self.x}, {self.y})")

    @classmethod
    def from_complex(cls, z: complex) -> PlanePoint:
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


I = PlanePoint(0.0, 1.0)


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of R u {inf}; ``infinite`` tags the point at infinity."""

    value: float = 0.0
    infinite: bool = False

    def __post_init__(self) -> None:
        if not self.infinite and not math.isfinite(self.value):
            raise DegenerateInput(f"finite BoundaryPoint needs a finite value, got {self.value}")

    @classmethod
    def at(cls, value: float) -> BoundaryPoint:
        return cls(float(value))

    @classmethod
    def infinity(cls) -> BoundaryPoint:
        return cls(0.0, True)

    def sort_key(self) -> tuple[int, float]:
        return (1, 0.0) if self.infinite else (0, self.value)

    def __repr__(self) -> str:
        return "BoundaryPoint(inf)" if self.infinite else f"BoundaryPoint({self.value!r})"


INF = BoundaryPoint.infinity()

Boundaryish = Union[BoundaryPoint, float, int]


def boundary(value: Boundaryish) -> BoundaryPoint:
    """Coerce a float (``math.inf`` allowed) or BoundaryPoint to a BoundaryPoint."""
    if isinstance(value, BoundaryPoint):
        return value
    if math.isinf(value):
        return INF
    return BoundaryPoint.at(value)


@dataclass(frozen=True)
class EuclideanCircle:
    """Circle orthogonal to the real axis: a geodesic or bisector of the model."""

    center: float
    radius: float

    def __post_init__(self) -> None:
        if not (self.radius > 0):
            raise DegenerateInput(f"circle radius must be positive, got {self.radius}")

    @property
    def left(self) -> float:
        return self.center - self.radius

    @property
    def right(self) -> float:
        return self.center + self.radius

    def to_geodesic(self) -> Geodesic:
        return Geodesic(BoundaryPoint.at(self.left), BoundaryPoint.at(self.right))

    def power(self, z: PlanePoint) -> float:
        """|z - center|^2 - radius^2 in factored form (stable for large circles)."""
        return (z.x - self.left) * (z.x - self.right) + z.y * z.y


@dataclass(frozen=True)
class Geodesic:
    """Unoriented geodesic stored with e1 < e2, or e2 = inf."""

    e1: BoundaryPoint
    e2: BoundaryPoint

    def __post_init__(self) -> None:
        if self.e1 == self.e2:
            raise DegenerateInput("geodesic endpoints must differ")
        if self.e1.sort_key() > self.e2.sort_key():
            first, second = self.e2, self.e1
            object.__setattr__(self, "e1", first)
            object.__setattr__(self, "e2", second)

    @classmethod
    def between(cls, a: Boundaryish, b: Boundaryish) -> Geodesic:
        return cls(boundary(a), boundary(b))

    @property
    def is_vertical(self) -> bool:
        return self.e2.infinite

    @property
    def endpoints(self) -> tuple[BoundaryPoint, BoundaryPoint]:
        return self.e1, self.e2

    def circle(self) -> EuclideanCircle:
        if self.is_vertical:
            raise DegenerateInput("vertical geodesic has no Euclidean circle")
        return EuclideanCircle(
            (self.e1.value + self.e2.value) / 2.0, (self.e2.value - self.e1.value) / 2.0
        )

    def has_endpoint(self, p: BoundaryPoint) -> bool:
        return p == self.e1 or p == self.e2

    def separates(self, p: BoundaryPoint) -> Optional[bool]:
        """True if p lies strictly inside the arc (e1, e2); None on an endpoint."""
        if self.has_endpoint(p):
            return None
        if p.infinite:
            return False
        if self.is_vertical:
            return p.value > self.e1.value
        return self.e1.value < p.value < self.e2.value


@dataclass(frozen=True)
class Horocycle:
    """Horocycle {z : busemann(base, z, i) = level}."""

    base: BoundaryPoint
    level: float

    def contains(self, z: PlanePoint, tol: float = DEFAULT_TOL) -> bool:
        return abs(busemann(self.base, z, I) - self.level) <= tol

    def euclidean(self) -> tuple[float, float, float]:
        """(center x, center y, radius) for finite base; (0, height, inf) at infinity."""
        if self.base.infinite:
            return 0.0, math.exp(-self.level), math.inf
        diameter = (self.base.value**2 + 1.0) * math.exp(self.level)
        return self.base.value, diameter / 2.0, diameter / 2.0


def dist(z: PlanePoint, w: PlanePoint) -> float:
    """Hyperbolic distance, 2 asinh(|z - w| / (2 sqrt(Im z Im w)))."""
    return 2.0 * math.asinh(abs(z.z - w.z) / (2.0 * math.sqrt(z.y * w.y)))


def _interval_factor(p: BoundaryPoint, q: BoundaryPoint) -> Optional[float]:
    if p.infinite or q.infinite:
        return None
    return p.value - q.value


def cross_ratio(
    a: Boundaryish, b: Boundaryish, c: Boundaryish, d: Boundaryish
) -> float:
    """
    [a; b; c; d] = (a - c)(b - d) / ((a - d)(b - c)).

    A point at infinity cancels the numerator and denominator factor that
    contain it.

    Raises:
        DegenerateInput: if two of the points coincide.
    """
    pts = [boundary(p) for p in (a, b, c, d)]
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                raise DegenerateInput("cross-ratio needs four distinct points")
    a, b, c, d = pts
    if a.infinite:
        bottom = _interval_factor(b, c)
        top = _interval_factor(b, d)
    elif b.infinite:
        top = _interval_factor(a, c)
        bottom = _interval_factor(a, d)
    elif c.infinite:
        top = _interval_factor(b, d)
        bottom = _interval_factor(a, d)
    elif d.infinite:
        top = _interval_factor(a, c)
        bottom = _interval_factor(b, c)
    else:
        top = (a.value - c.value) * (b.value - d.value)
        bottom = (a.value - d.value) * (b.value - c.value)
    return top / bottom


def interlaced(g1: Geodesic, g2: Geodesic) -> bool:
    """True when the endpoints of g2 separate those of g1 (transverse crossing)."""
    s1 = g1.separates(g2.e1)
    s2 = g1.separates(g2.e2)
    if s1 is None or s2 is None:
        return False
    return s1 != s2


def _crossing_order(g1: Geodesic, g2: Geodesic) -> tuple[BoundaryPoint, ...]:
    a, b = g1.e1, g1.e2
    c, d = (g2.e1, g2.e2) if g1.separates(g2.e1) else (g2.e2, g2.e1)
    return a, c, b, d


def angle_between(
    g1: Geodesic,
    g2: Geodesic,
    ordering: Optional[Sequence[Boundaryish]] = None,
) -> float:
    """
    Angle in [0, pi] between two crossing geodesics from (cos b + 1)/2 = [a, c, d, b].

    Args:
        g1, g2: crossing geodesics, g1 = (a, b), g2 = (c, d).
        ordering: the cyclic order (a; c; b; d) of the four endpoints. Derived
            from the canonical endpoint order when omitted.

    Raises:
        NotIntersecting: if the geodesics are equal or disjoint.
    """
    if g1 == g2 or not interlaced(g1, g2):
        raise NotIntersecting(f"{g1} and {g2} do not cross")
    a, c, b, d = (
        tuple(boundary(p) for p in ordering) if ordering is not None else _crossing_order(g1, g2)
    )
    value = cross_ratio(a, c, d, b)
    return math.acos(max(-1.0, min(1.0, 2.0 * value - 1.0)))


def separation_order(g1: Geodesic, g2: Geodesic) -> tuple[BoundaryPoint, ...]:
    """Endpoints (a, b, c, d) with g1 = (a, b), g2 = (c, d) in cyclic order a, b, d, c."""
    pts = sorted([(g1.e1, 1), (g1.e2, 1), (g2.e1, 2), (g2.e2, 2)], key=lambda t: t[0].sort_key())
    # rotate so that the cyclic sequence starts with the two g1 endpoints
    for shift in range(4):
        rot = pts[shift:] + pts[:shift]
        if rot[0][1] == 1 and rot[1][1] == 1:
            return rot[0][0], rot[1][0], rot[3][0], rot[2][0]
    raise Interlaced("geodesic endpoints separate each other")


def dist_between_geodesics(g1: Geodesic, g2: Geodesic) -> float:
    """
    Length of the common orthogonal of two disjoint geodesics.

    Calibrated against quadrature: [a, b, c, d] = tanh^2(d/2) with the
    endpoints in cyclic order a, b, d, c.

    Raises:
        SharedEndpoint: if the geodesics are asymptotic or equal.
        Interlaced: if the geodesics cross.
    """
    for p in g1.endpoints:
        if g2.has_endpoint(p):
            raise SharedEndpoint(f"{g1} and {g2} share the endpoint {p}")
    if interlaced(g1, g2):
        raise Interlaced(f"{g1} and {g2} cross")
    a, b, c, d = separation_order(g1, g2)
    q = cross_ratio(a, b, c, d)
    return 2.0 * math.atanh(math.sqrt(q))


def busemann(xi: Boundaryish, z: PlanePoint, w: PlanePoint) -> float:
    """Busemann cocycle B_xi(z, w); B_inf(z, w) = log(Im w) - log(Im z)."""
    xi = boundary(xi)
    if xi.infinite:
        return math.log(w.y) - math.log(z.y)
    kz = ((z.x - xi.value) ** 2 + z.y**2) / z.y
    kw = ((w.x - xi.value) ** 2 + w.y**2) / w.y
    return math.log(kz) - math.log(kw)


def horocycle_point_at(h: Horocycle, s: float) -> PlanePoint:
    """
    Point at signed arclength s from the top of the horocycle.

    The reference point is the highest point for a finite base and x = 0 for
    the base at infinity; positive s moves in the +x direction seen from the
    base at infinity.
    """
    if h.base.infinite:
        height = math.exp(-h.level)
        return PlanePoint(s * height, height)
    _, _, radius = h.euclidean()
    diameter = 2.0 * radius
    # conjugate by z -> -1/(z - xi), which sends the base to infinity
    w = complex(s / diameter, 1.0 / diameter)
    return PlanePoint.from_complex(h.base.value - 1.0 / w)


def polygon_area(angles: Sequence[float]) -> float:
    """
    Area of a hyperbolic polygon from its interior angles, pi (n - 2) - sum(angles).

    Raises:
        NotHyperbolic: fewer than three angles, an angle outside [0, pi), or
            nonpositive area.
    """
    if len(angles) < 3:
        raise NotHyperbolic("a polygon needs at least three angles")
    for angle in angles:
        if not (0.0 <= angle < math.pi):
            raise NotHyperbolic(f"interior angle {angle} outside [0, pi)")
    area = math.pi * (len(angles) - 2) - math.fsum(angles)
    if area <= 0:
        raise NotHyperbolic(f"angle sum leaves no hyperbolic area ({area})")
    return area


def geodesic_through(z: PlanePoint, xi: Boundaryish) -> Geodesic:
    """The geodesic through z with xi as one endpoint."""
    xi = boundary(xi)
    if xi.infinite or xi.value == z.x:
        return Geodesic(BoundaryPoint.at(z.x), INF)
    center = (xi.value**2 - z.x**2 - z.y**2) / (2.0 * (xi.value - z.x))
    return Geodesic.between(xi.value, 2.0 * center - xi.value)


def geodesic_endpoint_toward(z: PlanePoint, w: PlanePoint) -> BoundaryPoint:
    """Forward endpoint of the geodesic ray from z through w."""
    if z.x == w.x:
        return INF if w.y > z.y else BoundaryPoint.at(z.x)
    center = (w.x**2 + w.y**2 - z.x**2 - z.y**2) / (2.0 * (w.x - z.x))
    radius = math.hypot(z.x - center, z.y)
    return BoundaryPoint.at(center + radius if w.x > z.x else center - radius)


def point_geodesic_distance(z: PlanePoint, g: Geodesic) -> float:
    """Hyperbolic distance from z to the geodesic g."""
    if g.is_vertical:
        return math.asinh(abs(z.x - g.e1.value) / z.y)
    circle = g.circle()
    return math.asinh(abs(circle.power(z)) / (2.0 * circle.radius * z.y))


def geodesic_intersection(g1: Geodesic, g2: Geodesic) -> PlanePoint:
    """
    Crossing point of two geodesics.

    Raises:
        NotIntersecting: if the geodesics do not cross transversally.
    """
    if not interlaced(g1, g2):
        raise NotIntersecting(f"{g1} and {g2} do not cross")
    if g1.is_vertical or g2.is_vertical:
        line, other = (g1, g2) if g1.is_vertical else (g2, g1)
        circle = other.circle()
        x = line.e1.value
        return PlanePoint(x, math.sqrt((x - circle.left) * (circle.right - x)))
    c1, c2 = g1.circle(), g2.circle()
    x = (c1.radius**2 - c2.radius**2 + c2.center**2 - c1.center**2) / (
        2.0 * (c2.center - c1.center)
    )
    return PlanePoint(x, math.sqrt((x - c1.left) * (c1.right - x)))


def _arc_coordinate(z: PlanePoint, circle: EuclideanCircle) -> float:
    theta = math.atan2(z.y, z.x - circle.center)
    return math.log(math.tan(theta / 2.0))


def hyperbolic_midpoint(z: PlanePoint, w: PlanePoint) -> PlanePoint:
    """Midpoint of the geodesic segment [z, w]."""
    if z.x == w.x:
        return PlanePoint(z.x, math.sqrt(z.y * w.y))
    center = (w.x**2 + w.y**2 - z.x**2 - z.y**2) / (2.0 * (w.x - z.x))
    circle = EuclideanCircle(center, math.hypot(z.x - center, z.y))
    s = (_arc_coordinate(z, circle) + _arc_coordinate(w, circle)) / 2.0
    theta = 2.0 * math.atan(math.exp(s))
    return PlanePoint(center + circle.radius * math.cos(theta), circle.radius * math.sin(theta))
