"""
Verification checks on a flute truncation.

  - check_schottky: pairwise external disjointness of the 2N pairing circles
    (Dirichlet bisectors at a basepoint, or isometric circles for the delta
    family whose Dirichlet circles at i are not the ping-pong circles).
  - check_untwisted: coefficient relation forced by a common orthogonal
    geodesic, plus an angle cross-check of every axis against it.
  - check_nested: axes pairwise nested or disjoint.
  - fundamental_domain_contains: membership in the intersection of the 2N
    Dirichlet half-planes.

Checks return report objects; failures are entries, not exceptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from flutelab.errors import DegenerateInput, NotIntersecting
from flutelab.geometry.moebius import Bisector, axis, bisector_halfplane, invert
from flutelab.geometry.plane import I, EuclideanCircle, Geodesic, PlanePoint, angle_between
from flutelab.models.enums import FluteKind, Membership, RelationCase
from flutelab.surfaces.flute import GroupTruncation, circle_margin

RESIDUAL_TOL = 1e-9
ANGLE_TOL = 1e-9


@dataclass
class PairMargin:
    first: str
    second: str
    margin: float


@dataclass
class SchottkyReport:
    count: int
    circles: str  # "dirichlet" or "isometric"
    margins: list[PairMargin] = field(default_factory=list)

    @property
    def min_margin(self) -> Optional[float]:
        return min((m.margin for m in self.margins), default=None)

    @property
    def passed(self) -> bool:
        return all(m.margin > 0 for m in self.margins)


def pairing_circles(
    g: GroupTruncation, basepoint: PlanePoint = I, circles: str = "auto"
) -> list[tuple[str, EuclideanCircle]]:
    """The 2N circles paired by the generators, labelled ``C<n>`` / ``C'<n>``."""
    if circles == "auto":
        circles = "isometric" if g.kind is FluteKind.TWISTED_DELTA else "dirichlet"
    out: list[tuple[str, EuclideanCircle]] = []
    for label, gen in zip(g.labels, g.generators):
        if circles == "isometric":
            # |cz + d| = 1 for gen and |-cz + a| = 1 for its inverse
            radius = 1.0 / (abs(gen.c) * math.exp(gen.log_scale))
            out.append((f"C{label}", EuclideanCircle(-gen.d / gen.c, radius)))
            out.append((f"C'{label}", EuclideanCircle(gen.a / gen.c, radius)))
        else:
            for name, m in ((f"C{label}", invert(gen)), (f"C'{label}", gen)):
                circle = bisector_halfplane(basepoint, m).circle
                if circle is None:
                    raise DegenerateInput(f"bisector {name} is a vertical line")
                out.append((name, circle))
    return out


def check_schottky(
    g: GroupTruncation, basepoint: PlanePoint = I, circles: str = "auto"
) -> SchottkyReport:
    """
    Margins of every pair of pairing circles, sorted by pair.

    A margin is |center gap| - radius sum, so it measures overlap as well as
    separation: two coincident circles of radius r (a generator listed twice)
    have zero center gap and margin -2r, and tangent circles have margin 0.
    """
    labelled = pairing_circles(g, basepoint, circles)
    report = SchottkyReport(
        count=g.count,
        circles=circles if circles != "auto" else (
            "isometric" if g.kind is FluteKind.TWISTED_DELTA else "dirichlet"
        ),
    )
    for i, (n1, c1) in enumerate(labelled):
        for n2, c2 in labelled[i + 1:]:
            report.margins.append(PairMargin(n1, n2, circle_margin(c1, c2)))
    return report


@dataclass
class GeneratorRelation:
    label: int
    residual: float
    alt_residual: Optional[float] = None  # (alpha, inf) only: a - d = 2 alpha c
    axis_angle: Optional[float] = None


@dataclass
class UntwistedReport:
    orthogonal: Geodesic
    case: RelationCase
    rows: list[GeneratorRelation] = field(default_factory=list)
    tol: float = RESIDUAL_TOL

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.rows), default=0.0)

    @property
    def angles_ok(self) -> bool:
        return all(
            r.axis_angle is not None and abs(r.axis_angle - math.pi / 2) <= ANGLE_TOL
            for r in self.rows
        )

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol and self.angles_ok


def relation_case(orthogonal: Geodesic) -> RelationCase:
    if orthogonal.is_vertical:
        return RelationCase.VERTICAL if orthogonal.e1.value == 0 else RelationCase.HALF_INFINITE
    return RelationCase.FINITE


def check_untwisted(g: GroupTruncation, orthogonal: Geodesic) -> UntwistedReport:
    """
    Residual of the coefficient relation each generator must satisfy when its
    axis is orthogonal to ``orthogonal``:

      - (0, inf): a = d
      - (alpha, beta): (a - d)(alpha + beta) + 2b = 2 alpha beta c
      - (alpha, inf): a - d = 2c, with a - d = 2 alpha c reported alongside

    Residuals use the scaled entries, so they are relative to the largest
    coefficient.

    Raises:
        DegenerateInput: if a generator axis coincides with ``orthogonal``.
    """
    case = relation_case(orthogonal)
    report = UntwistedReport(orthogonal=orthogonal, case=case)
    for label, m in zip(g.labels, g.generators):
        gen_axis = axis(m)
        if gen_axis == orthogonal:
            raise DegenerateInput(f"axis of generator {label} coincides with {orthogonal}")
        alt = None
        if case is RelationCase.VERTICAL:
            residual = abs(m.a - m.d)
        elif case is RelationCase.FINITE:
            al, be = orthogonal.e1.value, orthogonal.e2.value
            residual = abs((m.a - m.d) * (al + be) + 2.0 * m.b - 2.0 * al * be * m.c)
        else:
            al = orthogonal.e1.value
            residual = abs(m.a - m.d - 2.0 * m.c)
            alt = abs(m.a - m.d - 2.0 * al * m.c)
        try:
            angle = angle_between(gen_axis, orthogonal)
        except NotIntersecting:
            angle = None
        report.rows.append(GeneratorRelation(label, residual, alt, angle))
    return report


@dataclass
class NestednessReport:
    intervals: list[tuple[int, float, float]] = field(default_factory=list)
    interlaced_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.interlaced_pairs


def check_nested(g: GroupTruncation) -> NestednessReport:
    """Axis intervals must be pairwise nested or disjoint."""
    report = NestednessReport()
    for label, m in zip(g.labels, g.generators):
        ax = axis(m)
        hi = math.inf if ax.e2.infinite else ax.e2.value
        report.intervals.append((label, ax.e1.value, hi))
    for i, (l1, a1, b1) in enumerate(report.intervals):
        for l2, a2, b2 in report.intervals[i + 1:]:
            disjoint = b1 <= a2 or b2 <= a1
            nested = (a1 <= a2 and b2 <= b1) or (a2 <= a1 and b1 <= b2)
            if not (disjoint or nested):
                report.interlaced_pairs.append((l1, l2))
    return report


def dirichlet_bisectors(g: GroupTruncation, basepoint: PlanePoint = I) -> list[Bisector]:
    out = []
    for m in g.generators:
        out.append(bisector_halfplane(basepoint, m))
        out.append(bisector_halfplane(basepoint, invert(m)))
    return out


def fundamental_domain_contains(
    z: PlanePoint, g: GroupTruncation, basepoint: PlanePoint = I, tol: float = 1e-9
) -> Membership:
    """Inside, on the boundary of, or outside the truncated Dirichlet domain."""
    excesses = [b.excess(z) for b in dirichlet_bisectors(g, basepoint)]
    if any(e > tol for e in excesses):
        return Membership.OUTSIDE
    if any(abs(e) <= tol for e in excesses):
        return Membership.BOUNDARY
    return Membership.INSIDE
