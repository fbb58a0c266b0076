"""
SVG figures of a flute truncation in the upper half-plane.

The scene is built in world coordinates, then rendered with drawsvg:
  1. Viewport: real-axis window fitted to the pairing circles of the first
     ``fit_count`` generators (all of them when 0) plus a 10% margin on each
     side, with one uniform scale so circles stay round. Later circles grow
     so fast that fitting all of them leaves the first ones a single pixel.
  2. Layers, bottom to top: fundamental domain (shaded complement of the
     discs), pairing circles C_n / C'_n, generator axes, the common
     orthogonal, horocycles, the ray [i, inf), points and labels.
  3. Every coordinate is written with six decimals and primitives are
     emitted in build order, so the same truncation gives the same bytes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Union

import drawsvg as draw

from flutelab.errors import OutputError
from flutelab.geometry.moebius import axis
from flutelab.geometry.plane import I, Geodesic, Horocycle, boundary
from flutelab.models.enums import FluteKind
from flutelab.surfaces.checks import pairing_circles
from flutelab.surfaces.flute import GroupTruncation

logger = logging.getLogger("flutelab.render")

MARGIN = 0.10
HOROCYCLE_LABEL = "Im z = 1"

STYLES: dict[str, dict[str, object]] = {
    "domain": {"fill": "#eef3fb", "stroke": "none"},
    "circles": {"fill": "#ffffff", "stroke": "#1f4e79", "stroke_width": 1.2},
    "axes": {"fill": "none", "stroke": "#c0392b", "stroke_width": 1.0},
    "orthogonal": {"fill": "none", "stroke": "#27ae60", "stroke_width": 1.4},
    "horocycles": {"fill": "none", "stroke": "#8e44ad", "stroke_width": 1.0},
    "ray": {"fill": "none", "stroke": "#000000", "stroke_width": 1.6},
    "points": {"fill": "#000000", "stroke": "none"},
    "labels": {"fill": "#333333"},
}


def fmt(v: float) -> str:
    return f"{v:.6f}"


@dataclass(frozen=True)
class Arc:
    """Upper half of a Euclidean circle centered on the real axis."""

    center: float
    radius: float
    layer: str
    label: str = ""


@dataclass(frozen=True)
class Disc:
    """Full circle with a finite center above the axis (horocycles)."""

    cx: float
    cy: float
    radius: float
    layer: str
    label: str = ""


@dataclass(frozen=True)
class VerticalRay:
    x: float
    y_from: float  # clipped at the viewport top
    layer: str
    label: str = ""


@dataclass(frozen=True)
class HorizontalLine:
    y: float
    layer: str
    label: str = ""


@dataclass(frozen=True)
class Point:
    x: float
    y: float
    layer: str
    label: str = ""


Primitive = Union[Arc, Disc, VerticalRay, HorizontalLine, Point]


@dataclass
class SvgScene:
    x_min: float
    x_max: float
    width: int
    height: int
    primitives: list[Primitive] = field(default_factory=list)

    @property
    def scale(self) -> float:
        return self.width / (self.x_max - self.x_min)

    @property
    def y_top(self) -> float:
        return self.height / self.scale

    def px(self, x: float) -> float:
        return (x - self.x_min) * self.scale

    def py(self, y: float) -> float:
        return self.height - y * self.scale


def _geodesic_primitive(g: Geodesic, layer: str, label: str) -> Primitive:
    if g.is_vertical:
        return VerticalRay(g.e1.value, 0.0, layer, label)
    c = g.circle()
    return Arc(c.center, c.radius, layer, label)


def fit_window(circles: list[Arc], extra: list[float]) -> tuple[float, float]:
    """Real-axis window of the outermost circle (and any extra x), widened by 10%."""
    lo = min([c.center - c.radius for c in circles] + extra)
    hi = max([c.center + c.radius for c in circles] + extra)
    if hi <= lo:
        lo, hi = lo - 1.0, hi + 1.0
    pad = MARGIN * (hi - lo)
    return lo - pad, hi + pad


def build_scene(
    g: GroupTruncation,
    width: int = 800,
    height: int = 400,
    orthogonal: Optional[Geodesic] = None,
    fit_count: int = 1,
) -> SvgScene:
    """
    Pairing circles, axes, the common orthogonal, the ray [i, inf), the
    horocycle Im z = 1 with its image under inversion in the unit circle,
    and the points i and p_n.

    Primitives outside the window are still emitted and clipped by the viewer.
    """
    if orthogonal is None and g.kind is FluteKind.UNTWISTED:
        orthogonal = Geodesic.between(-1.0, 1.0)
    circles = [Arc(c.center, c.radius, "circles", name) for name, c in pairing_circles(g)]
    prims: list[Primitive] = list(circles)
    for label, m in zip(g.labels, g.generators):
        prims.append(_geodesic_primitive(axis(m), "axes", f"axis {label}"))
    if orthogonal is not None:
        prims.append(_geodesic_primitive(orthogonal, "orthogonal", "orthogonal"))
    prims.append(HorizontalLine(1.0, "horocycles", HOROCYCLE_LABEL))
    # inversion in the unit circle sends Im z = 1 to the horocycle at 0 through i
    cx, cy, r = Horocycle(boundary(0.0), 0.0).euclidean()
    prims.append(Disc(cx, cy, r, "horocycles", "j(Im z = 1)"))
    prims.append(VerticalRay(0.0, 1.0, "ray", "[i, inf)"))
    prims.append(Point(I.x, I.y, "points", "i"))
    if g.trace is not None:
        for step in g.trace.steps:
            prims.append(Point(step.p.x, step.p.y, "points", f"p{step.n}"))
    extra = [-1.0, 1.0]
    framed = circles[: 2 * fit_count] if fit_count > 0 else circles
    x_min, x_max = fit_window(framed, extra)
    scene = SvgScene(x_min, x_max, width, height, prims)
    logger.info(
        "Scene: %d primitives, window [%s, %s]", len(prims), fmt(x_min), fmt(x_max)
    )
    return scene


def _style(layer: str) -> dict[str, object]:
    return dict(STYLES[layer])


def _arc_path(scene: SvgScene, center: float, radius: float) -> str:
    x1, x2 = scene.px(center - radius), scene.px(center + radius)
    y0 = scene.py(0.0)
    r = radius * scene.scale
    return f"M {fmt(x1)} {fmt(y0)} A {fmt(r)} {fmt(r)} 0 0 1 {fmt(x2)} {fmt(y0)}"


def render_drawing(scene: SvgScene) -> draw.Drawing:
    d = draw.Drawing(scene.width, scene.height)
    d.append(draw.Rectangle("0", "0", str(scene.width), str(scene.height), **_style("domain")))
    top = scene.py(scene.y_top)
    for prim in scene.primitives:
        style = _style(prim.layer)
        if isinstance(prim, Arc):
            path = _arc_path(scene, prim.center, prim.radius)
            if prim.layer == "circles":
                path += " Z"
            d.append(draw.Path(d=path, **style))
        elif isinstance(prim, Disc):
            d.append(draw.Circle(
                fmt(scene.px(prim.cx)), fmt(scene.py(prim.cy)), fmt(prim.radius * scene.scale),
                **style,
            ))
        elif isinstance(prim, VerticalRay):
            x = fmt(scene.px(prim.x))
            path = f"M {x} {fmt(scene.py(prim.y_from))} L {x} {fmt(top)}"
            d.append(draw.Path(d=path, **style))
        elif isinstance(prim, HorizontalLine):
            y = fmt(scene.py(prim.y))
            path = f"M {fmt(scene.px(scene.x_min))} {y} L {fmt(scene.px(scene.x_max))} {y}"
            d.append(draw.Path(d=path, **style))
        elif isinstance(prim, Point):
            x, y = scene.px(prim.x), scene.py(prim.y)
            d.append(draw.Circle(fmt(x), fmt(y), "2.500000", **style))
            if prim.label:
                d.append(draw.Text(
                    prim.label, 11, fmt(x + 4.0), fmt(y - 4.0), **_style("labels")
                ))
    return d


def render_svg(scene: SvgScene) -> str:
    """SVG document text for a scene."""
    return render_drawing(scene).as_svg()


def write_svg(scene: SvgScene, path: str) -> None:
    """
    Raises:
        OutputError: if the file cannot be written.
    """
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render_svg(scene))
    except OSError as e:
        raise OutputError(f"cannot write SVG to {path}: {e}") from e
