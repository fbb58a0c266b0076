from flutelab.geometry.moebius import (
    Bisector,
    MoebiusTransform,
    Reflection,
    UNIT_CIRCLE,
    apply,
    axis,
    bisector_halfplane,
    busemann_inverse_i,
    classify,
    compose,
    compose_all,
    fixed_points,
    invert,
    reflect,
    translation_length,
)
from flutelab.geometry.plane import (
    I,
    INF,
    BoundaryPoint,
    EuclideanCircle,
    Geodesic,
    Horocycle,
    PlanePoint,
    angle_between,
    busemann,
    cross_ratio,
    dist,
    dist_between_geodesics,
    geodesic_intersection,
    geodesic_through,
    horocycle_point_at,
    polygon_area,
)

__all__ = [
    "Bisector",
    "BoundaryPoint",
    "EuclideanCircle",
    "Geodesic",
    "Horocycle",
    "I",
    "INF",
    "MoebiusTransform",
    "PlanePoint",
    "Reflection",
    "UNIT_CIRCLE",
    "angle_between",
    "apply",
    "axis",
    "bisector_halfplane",
    "busemann",
    "busemann_inverse_i",
    "classify",
    "compose",
    "compose_all",
    "cross_ratio",
    "dist",
    "dist_between_geodesics",
    "fixed_points",
    "geodesic_intersection",
    "geodesic_through",
    "horocycle_point_at",
    "invert",
    "polygon_area",
    "reflect",
    "translation_length",
]
