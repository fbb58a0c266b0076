"""Tests for half-plane primitives and the quadrature oracle."""

import math

import numpy as np
import pytest

from flutelab.errors import DegenerateInput, Interlaced, NotHyperbolic, SharedEndpoint
from flutelab.geometry.plane import (
    INF,
    I,
    BoundaryPoint,
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
    hyperbolic_midpoint,
    point_geodesic_distance,
    polygon_area,
)
from flutelab.geometry.quadrature import (
    arc_length,
    calibrate_distance_formulas,
    oracle_distance,
)


def random_point(rng: np.random.Generator) -> PlanePoint:
    return PlanePoint(rng.uniform(-10.0, 10.0), rng.uniform(0.05, 10.0))


def random_disjoint_pairs(count: int, seed: int = 7):
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < count:
        xs = sorted(rng.uniform(-10.0, 10.0) for _ in range(4))
        if min(b - a for a, b in zip(xs, xs[1:])) < 0.05:
            continue
        if rng.random() < 0.5:
            # side by side
            pairs.append((Geodesic.between(xs[0], xs[1]), Geodesic.between(xs[2], xs[3])))
        else:
            # nested
            pairs.append((Geodesic.between(xs[0], xs[3]), Geodesic.between(xs[1], xs[2])))
    return pairs


class TestPoints:
    def test_point_below_axis_rejected(self):
        with pytest.raises(DegenerateInput):
            PlanePoint(0.0, 0.0)

    def test_boundary_point_needs_finite_value(self):
        with pytest.raises(DegenerateInput):
            BoundaryPoint(math.inf)

    def test_geodesic_endpoints_sorted(self):
        g = Geodesic.between(INF, 2.0)
        assert g.e1 == BoundaryPoint.at(2.0)
        assert g.is_vertical

    def test_geodesic_needs_distinct_endpoints(self):
        with pytest.raises(DegenerateInput):
            Geodesic.between(1.0, 1.0)


class TestDistance:
    def test_vertical_distance(self):
        assert dist(I, PlanePoint(0.0, math.e)) == pytest.approx(1.0, abs=1e-12)

    def test_symmetric(self):
        z, w = PlanePoint(0.3, 0.7), PlanePoint(-2.0, 4.0)
        assert dist(z, w) == pytest.approx(dist(w, z), abs=1e-14)

    def test_matches_quadrature(self):
        w = PlanePoint(1.0, 2.0)
        assert dist(I, w) == pytest.approx(arc_length(I, w), abs=1e-8)

    def test_midpoint_is_equidistant(self):
        z, w = PlanePoint(-1.0, 0.5), PlanePoint(3.0, 2.0)
        m = hyperbolic_midpoint(z, w)
        assert dist(z, m) == pytest.approx(dist(z, w) / 2.0, abs=1e-10)
        assert dist(m, w) == pytest.approx(dist(z, w) / 2.0, abs=1e-10)

    def test_metric_axioms_on_random_triples(self):
        rng = np.random.default_rng(13)
        for _ in range(1000):
            x, y, z = (random_point(rng) for _ in range(3))
            assert dist(x, x) < 1e-12
            assert dist(x, y) == pytest.approx(dist(y, x), abs=1e-12)
            assert dist(x, z) <= dist(x, y) + dist(y, z) + 1e-12


class TestBusemann:
    def test_at_infinity_is_log_height_ratio(self):
        assert busemann(INF, I, PlanePoint(5.0, 3.0)) == pytest.approx(math.log(3.0))

    def test_cocycle(self):
        x, y, z = PlanePoint(0.2, 0.5), PlanePoint(-1.0, 2.0), PlanePoint(3.0, 0.1)
        for xi in (INF, BoundaryPoint.at(0.7), BoundaryPoint.at(-4.0)):
            total = busemann(xi, x, y) + busemann(xi, y, z)
            assert busemann(xi, x, z) == pytest.approx(total, abs=1e-12)

    def test_cocycle_on_random_instances(self):
        rng = np.random.default_rng(17)
        for _ in range(1000):
            xi = INF if rng.random() < 0.1 else BoundaryPoint.at(rng.uniform(-10.0, 10.0))
            z, y, w = (random_point(rng) for _ in range(3))
            residual = busemann(xi, z, w) - busemann(xi, z, y) - busemann(xi, y, w)
            assert abs(residual) < 1e-12

    def test_vanishes_on_horocycle(self):
        h = Horocycle(BoundaryPoint.at(1.5), 0.4)
        for s in (-2.0, -0.3, 0.0, 1.1):
            assert h.contains(horocycle_point_at(h, s))

    def test_limit_of_distance_differences(self):
        z, w = PlanePoint(0.5, 0.8), PlanePoint(-0.4, 1.7)
        far = PlanePoint(2.0, 1e-7)
        expected = busemann(BoundaryPoint.at(2.0), z, w)
        assert dist(z, far) - dist(w, far) == pytest.approx(expected, abs=1e-5)


class TestCrossRatio:
    def test_point_at_infinity_cancels(self):
        assert cross_ratio(INF, 0.0, 1.0, 3.0) == pytest.approx((0.0 - 3.0) / (0.0 - 1.0))

    def test_coincident_points_rejected(self):
        with pytest.raises(DegenerateInput):
            cross_ratio(1.0, 1.0, 2.0, 3.0)

    def test_orthogonal_pairs_give_one_half(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            c = rng.uniform(-5.0, 5.0)
            r = rng.uniform(0.1, 4.0)
            s = rng.uniform(0.1, 4.0)
            # the circle about c + r with radius s meets the circle about c with radius r
            # orthogonally when their centers are sqrt(r^2 + s^2) apart
            center = c + math.hypot(r, s)
            g1 = Geodesic.between(c - r, c + r)
            g2 = Geodesic.between(center - s, center + s)
            assert angle_between(g1, g2) == pytest.approx(math.pi / 2, abs=1e-9)


class TestDistanceBetweenGeodesics:
    def test_concentric_semicircles(self):
        for R in (1.5, 3.0, 10.0):
            d = dist_between_geodesics(Geodesic.between(-1, 1), Geodesic.between(-R, R))
            assert math.tanh(d / 2.0) ** 2 == pytest.approx(((R - 1) / (R + 1)) ** 2, abs=1e-10)
            assert d == pytest.approx(math.log(R), abs=1e-12)

    def test_agrees_with_quadrature_oracle(self):
        for g1, g2 in random_disjoint_pairs(100):
            assert dist_between_geodesics(g1, g2) == pytest.approx(
                oracle_distance(g1, g2), abs=1e-8
            )

    def test_shared_endpoint_rejected(self):
        with pytest.raises(SharedEndpoint):
            dist_between_geodesics(Geodesic.between(0, 1), Geodesic.between(1, 2))

    def test_crossing_rejected(self):
        with pytest.raises(Interlaced):
            dist_between_geodesics(Geodesic.between(0, 2), Geodesic.between(1, 3))

    def test_calibration_selects_half_distance_forms(self):
        result = calibrate_distance_formulas(random_disjoint_pairs(100, seed=11))
        assert result.pairs == 100
        assert result.matching() == ["cosh_sq_half_d", "tanh_sq_half_d"]


class TestGeodesicThrough:
    def test_vertical_through_i(self):
        assert geodesic_through(I, INF) == Geodesic.between(0.0, INF)

    def test_finite_endpoint(self):
        g = geodesic_through(I, 2.0)
        # center (xi^2 - 1) / (2 xi)
        assert g.circle().center == pytest.approx(0.75)
        assert g.circle().radius == pytest.approx(1.25)
        assert g.has_endpoint(BoundaryPoint.at(2.0))

    def test_endpoint_below_the_point(self):
        assert geodesic_through(PlanePoint(0.0, 2.0), 0.0) == Geodesic.between(0.0, INF)

    def test_point_lies_on_geodesic(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            z = PlanePoint(rng.uniform(-2.0, 2.0), rng.uniform(0.5, 2.0))
            xi = rng.uniform(-3.0, 3.0)
            if abs(xi - z.x) < 0.2:
                continue
            g = geodesic_through(z, xi)
            assert g.has_endpoint(BoundaryPoint.at(xi))
            assert point_geodesic_distance(z, g) < 1e-12


class TestIntersections:
    def test_vertical_and_unit_circle(self):
        z = geodesic_intersection(Geodesic.between(0, INF), Geodesic.between(-1, 1))
        assert z.x == pytest.approx(0.0)
        assert z.y == pytest.approx(1.0)

    def test_right_angle(self):
        assert angle_between(Geodesic.between(0, INF), Geodesic.between(-1, 1)) == pytest.approx(
            math.pi / 2
        )


class TestPolygonArea:
    def test_ideal_triangle(self):
        assert polygon_area([0.0, 0.0, 0.0]) == pytest.approx(math.pi)

    def test_right_angled_pentagon(self):
        assert polygon_area([math.pi / 2] * 5) == pytest.approx(math.pi / 2)

    def test_three_right_angles_bound_the_fourth(self):
        rng = np.random.default_rng(23)
        for theta in rng.uniform(0.0, math.pi, size=100):
            angles = [math.pi / 2, math.pi / 2, math.pi / 2, float(theta)]
            if theta < math.pi / 2:
                assert polygon_area(angles) == pytest.approx(math.pi / 2 - theta, abs=1e-12)
            else:
                with pytest.raises(NotHyperbolic):
                    polygon_area(angles)

    def test_euclidean_angles_rejected(self):
        with pytest.raises(NotHyperbolic):
            polygon_area([math.pi / 2] * 4)

    def test_too_few_angles(self):
        with pytest.raises(NotHyperbolic):
            polygon_area([0.1, 0.2])
