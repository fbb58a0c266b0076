"""
Real Moebius transformations and reflections of the half-plane.

A ``MoebiusTransform`` stores its coefficients scaled so that the largest
entry has absolute value 1, together with ``log_scale``: the unimodular
matrix (ad - bc = 1) is exp(log_scale) * (a, b, c, d). Every action on
points and boundary points is scale-invariant, so words of any depth can be
composed without overflow. Signs are canonical: a > 0, or a = 0 and b > 0.

Orientation-reversing isometries are ``Reflection`` objects (a vertical
mirror line or a Euclidean circle orthogonal to the real axis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union, overload

from flutelab.errors import (
    DegenerateImage,
    DegenerateInput,
    EllipticFixedPointsComplex,
    EllipticNoLength,
    FixedBasepoint,
)
from flutelab.geometry.plane import (
    INF,
    BoundaryPoint,
    EuclideanCircle,
    Geodesic,
    PlanePoint,
    dist,
)
from flutelab.models.enums import Classification

IDENTITY_TOL = 1e-9
TRACE_TOL = 1e-12
LARGE_LOG_TRACE = 30.0


def _exact_det(a: float, b: float, c: float, d: float) -> float:
    return float(Fraction(a) * Fraction(d) - Fraction(b) * Fraction(c))


@dataclass(frozen=True)
class MoebiusTransform:
    """z -> (az + b) / (cz + d), scaled entries plus a log normalization factor."""

    a: float
    b: float
    c: float
    d: float
    log_scale: float = 0.0

    @classmethod
    def from_matrix(cls, a: float, b: float, c: float, d: float) -> MoebiusTransform:
        """
        Build from any real matrix with positive determinant.

        Raises:
            DegenerateInput: if the determinant is not positive.
        """
        det = _exact_det(a, b, c, d)
        if not det > 0:
            raise DegenerateInput(f"matrix determinant must be positive, got {det}")
        s = math.sqrt(det)
        return cls._rescaled(a / s, b / s, c / s, d / s, 0.0)

    @classmethod
    def from_unimodular(cls, a: float, b: float, c: float, d: float) -> MoebiusTransform:
        """Build from entries known analytically to satisfy ad - bc = 1."""
        return cls._rescaled(a, b, c, d, 0.0)

    @classmethod
    def _rescaled(
        cls, a: float, b: float, c: float, d: float, log_scale: float
    ) -> MoebiusTransform:
        top = max(abs(a), abs(b), abs(c), abs(d))
        if top == 0 or not math.isfinite(top):
            raise DegenerateInput("matrix entries vanished or overflowed")
        a, b, c, d = a / top, b / top, c / top, d / top
        if a < 0 or (a == 0 and b < 0):
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d, log_scale + math.log(top))

    @classmethod
    def from_scaled(
        cls, a: float, b: float, c: float, d: float, log_scale: float
    ) -> MoebiusTransform:
        """Entries of exp(-log_scale) times a unimodular matrix."""
        return cls._rescaled(a, b, c, d, log_scale)

    @classmethod
    def identity(cls) -> MoebiusTransform:
        return cls(1.0, 0.0, 0.0, 1.0, 0.0)

    @classmethod
    def diagonal(cls, lam: float) -> MoebiusTransform:
        """z -> lam * z, i.e. diag(sqrt(lam), 1/sqrt(lam))."""
        r = math.sqrt(lam)
        return cls.from_matrix(r, 0.0, 0.0, 1.0 / r)

    @classmethod
    def translation(cls, x: float) -> MoebiusTransform:
        return cls.from_matrix(1.0, x, 0.0, 1.0)

    def unimodular(self) -> tuple[float, float, float, float]:
        """Entries of the det-1 matrix (may overflow for very deep words)."""
        s = math.exp(self.log_scale)
        return self.a * s, self.b * s, self.c * s, self.d * s

    @property
    def det(self) -> float:
        return _exact_det(self.a, self.b, self.c, self.d) * math.exp(2.0 * self.log_scale)

    @property
    def log_abs_trace(self) -> float:
        t = abs(self.a + self.d)
        return -math.inf if t == 0 else math.log(t) + self.log_scale

    @property
    def trace(self) -> float:
        return (self.a + self.d) * math.exp(self.log_scale)


def compose(m1: MoebiusTransform, m2: MoebiusTransform) -> MoebiusTransform:
    """m1 o m2 as a matrix product."""
    return MoebiusTransform._rescaled(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
        m1.log_scale + m2.log_scale,
    )


def compose_all(transforms: list[MoebiusTransform]) -> MoebiusTransform:
    """Left-to-right product t0 o t1 o ... ; identity for an empty list."""
    result = MoebiusTransform.identity()
    for t in transforms:
        result = compose(result, t)
    return result


def invert(m: MoebiusTransform) -> MoebiusTransform:
    return MoebiusTransform._rescaled(m.d, -m.b, -m.c, m.a, m.log_scale)


@overload
def apply(m: MoebiusTransform, p: PlanePoint) -> PlanePoint: ...


@overload
def apply(m: MoebiusTransform, p: BoundaryPoint) -> BoundaryPoint: ...


def apply(m, p):
    """Action on a point of H or of its boundary; infinity is handled by tag."""
    if isinstance(p, PlanePoint):
        z = p.z
        den = m.c * z + m.d
        w = (m.a * z + m.b) / den
        # Im(mz) = det * Im z / |cz + d|^2, computed in logs
        log_y = math.log(p.y) - 2.0 * m.log_scale - 2.0 * math.log(abs(den))
        return PlanePoint(w.real, math.exp(log_y))
    if p.infinite:
        return INF if m.c == 0 else BoundaryPoint.at(m.a / m.c)
    den = m.c * p.value + m.d
    if den == 0:
        return INF
    return BoundaryPoint.at((m.a * p.value + m.b) / den)


def log_im_image(m: MoebiusTransform, p: PlanePoint) -> float:
    """log Im(m p) without forming the image point."""
    return math.log(p.y) - 2.0 * m.log_scale - 2.0 * math.log(abs(m.c * p.z + m.d))


def busemann_inverse_i(m: MoebiusTransform) -> float:
    """B_inf(m^-1 i, i) = log(a^2 + c^2) for the unimodular entries, scale-safe."""
    return math.log(m.a * m.a + m.c * m.c) + 2.0 * m.log_scale


def classify(m: MoebiusTransform) -> Classification:
    """Identity, elliptic, parabolic or hyperbolic from |trace| against 2."""
    if abs(m.b) <= IDENTITY_TOL and abs(m.c) <= IDENTITY_TOL and abs(m.a - m.d) <= IDENTITY_TOL:
        return Classification.IDENTITY
    log_t = m.log_abs_trace
    if log_t > math.log(2.0) + TRACE_TOL:
        return Classification.HYPERBOLIC
    if log_t < math.log(2.0) - TRACE_TOL:
        return Classification.ELLIPTIC
    return Classification.PARABOLIC


def translation_length(m: MoebiusTransform) -> float:
    """
    2 arccosh(|trace| / 2) for hyperbolic m, 0 for parabolic or identity.

    Raises:
        EllipticNoLength: if |trace| < 2.
    """
    kind = classify(m)
    if kind is Classification.ELLIPTIC:
        raise EllipticNoLength(f"elliptic transformation, |trace|={abs(m.trace):.6g}")
    if kind is not Classification.HYPERBOLIC:
        return 0.0
    log_t = m.log_abs_trace
    if log_t > LARGE_LOG_TRACE:
        # acosh(T/2) = log(T) - O(T^-2)
        return 2.0 * log_t
    return 2.0 * math.acosh(math.exp(log_t) / 2.0)


def fixed_points(m: MoebiusTransform) -> tuple[BoundaryPoint, BoundaryPoint]:
    """
    Fixed points ordered (repelling, attracting); a parabolic point is doubled.

    Raises:
        EllipticFixedPointsComplex: for elliptic m.
    """
    kind = classify(m)
    if kind is Classification.ELLIPTIC:
        raise EllipticFixedPointsComplex("elliptic transformation has no boundary fixed points")
    if kind is Classification.IDENTITY:
        raise DegenerateInput("identity fixes every point")
    if m.c == 0:
        if kind is Classification.PARABOLIC:
            return INF, INF
        finite = BoundaryPoint.at(m.b / (m.d - m.a))
        return (finite, INF) if abs(m.a) > abs(m.d) else (INF, finite)
    if kind is Classification.PARABOLIC:
        z = BoundaryPoint.at((m.a - m.d) / (2.0 * m.c))
        return z, z
    bq = m.d - m.a
    disc = bq * bq + 4.0 * m.b * m.c
    q = -(bq + math.copysign(math.sqrt(disc), bq)) / 2.0
    r1, r2 = q / m.c, -m.b / q
    # the eigenvalue at a fixed point z is cz + d; the larger one attracts
    if abs(m.c * r1 + m.d) > abs(m.c * r2 + m.d):
        return BoundaryPoint.at(r2), BoundaryPoint.at(r1)
    return BoundaryPoint.at(r1), BoundaryPoint.at(r2)


def axis(m: MoebiusTransform) -> Geodesic:
    """Axis of a hyperbolic transformation (unoriented; see ``fixed_points``)."""
    repelling, attracting = fixed_points(m)
    return Geodesic(repelling, attracting)


def to_standard_frame(base: PlanePoint, forward: BoundaryPoint) -> MoebiusTransform:
    """The isometry sending base to i and forward to infinity."""
    if forward.infinite:
        t1 = MoebiusTransform.identity()
    else:
        t1 = MoebiusTransform.from_matrix(0.0, -1.0, 1.0, -forward.value)
    w = apply(t1, base)
    t2 = MoebiusTransform.from_matrix(1.0, -w.x, 0.0, w.y)
    return compose(t2, t1)


@dataclass(frozen=True)
class Reflection:
    """Reflection in a vertical line x = line_x or in a circle orthogonal to R."""

    circle: EuclideanCircle | None = None
    line_x: float | None = None

    def __post_init__(self) -> None:
        if (self.circle is None) == (self.line_x is None):
            raise DegenerateInput("a reflection needs exactly one mirror")

    @classmethod
    def in_circle(cls, center: float, radius: float) -> Reflection:
        return cls(circle=EuclideanCircle(center, radius))

    @classmethod
    def in_line(cls, x: float) -> Reflection:
        return cls(line_x=x)

    def mirror_distance(self, z: PlanePoint) -> float:
        """Hyperbolic distance from z to the mirror."""
        if self.line_x is not None:
            return math.asinh(abs(z.x - self.line_x) / z.y)
        return math.asinh(abs(self.circle.power(z)) / (2.0 * self.circle.radius * z.y))


UNIT_CIRCLE = Reflection.in_circle(0.0, 1.0)

Reflectable = Union[PlanePoint, BoundaryPoint, EuclideanCircle]


def _reflect_real(r: Reflection, x: float) -> BoundaryPoint:
    if r.line_x is not None:
        return BoundaryPoint.at(2.0 * r.line_x - x)
    if x == r.circle.center:
        return INF
    return BoundaryPoint.at(r.circle.center + r.circle.radius**2 / (x - r.circle.center))


def reflect(r: Reflection, p: Reflectable) -> Reflectable:
    """
    Apply a reflection to a point, boundary point or orthogonal circle.

    Raises:
        DegenerateImage: if a circle passes through the mirror's center
            (its image is a vertical line).
    """
    if isinstance(p, PlanePoint):
        if r.line_x is not None:
            return PlanePoint(2.0 * r.line_x - p.x, p.y)
        rel = p.z - r.circle.center
        return PlanePoint.from_complex(r.circle.center + r.circle.radius**2 / rel.conjugate())
    if isinstance(p, BoundaryPoint):
        if p.infinite:
            return INF if r.line_x is not None else BoundaryPoint.at(r.circle.center)
        return _reflect_real(r, p.value)
    if r.line_x is not None:
        return EuclideanCircle(2.0 * r.line_x - p.center, p.radius)
    if p.left == r.circle.center or p.right == r.circle.center:
        raise DegenerateImage("circle passes through the mirror center; its image is a line")
    e1 = _reflect_real(r, p.left).value
    e2 = _reflect_real(r, p.right).value
    return EuclideanCircle((e1 + e2) / 2.0, abs(e2 - e1) / 2.0)


@dataclass(frozen=True)
class Bisector:
    """Half-plane {z : d(z, basepoint) <= d(z, image)} and its boundary mirror."""

    basepoint: PlanePoint
    image: PlanePoint
    mirror: Reflection

    @property
    def circle(self) -> EuclideanCircle | None:
        return self.mirror.circle

    def excess(self, z: PlanePoint) -> float:
        """d(z, basepoint) - d(z, image); <= 0 inside the half-plane."""
        return dist(z, self.basepoint) - dist(z, self.image)

    def contains(self, z: PlanePoint, tol: float = 1e-9) -> bool:
        return self.excess(z) <= tol

    def on_boundary(self, z: PlanePoint, tol: float = 1e-9) -> bool:
        return abs(self.excess(z)) <= tol

    @property
    def predicate(self) -> Callable[[PlanePoint], bool]:
        return self.contains


def bisector_between(b: PlanePoint, w: PlanePoint) -> Reflection:
    """Perpendicular bisector of [b, w] as the mirror swapping b and w."""
    if b.y == w.y:
        return Reflection.in_line((b.x + w.x) / 2.0)
    # y_w |z - b|^2 = y_b |z - w|^2
    center = (w.y * b.x - b.y * w.x) / (w.y - b.y)
    # r^2 = y_b y_w |b - w|^2 / (y_w - y_b)^2, free of cancellation
    radius = math.sqrt(b.y * w.y) * abs(b.z - w.z) / abs(w.y - b.y)
    return Reflection.in_circle(center, radius)


def bisector_halfplane(basepoint: PlanePoint, m: MoebiusTransform) -> Bisector:
    """
    Dirichlet half-plane of m at the basepoint.

    Raises:
        FixedBasepoint: if m fixes the basepoint.
    """
    image = apply(m, basepoint)
    if dist(basepoint, image) < 1e-12:
        raise FixedBasepoint("transformation fixes the basepoint")
    return Bisector(basepoint, image, bisector_between(basepoint, image))
