"""Tests for Moebius transformations, reflections and Dirichlet bisectors."""

import math

import numpy as np
import pytest

from flutelab.errors import (
    DegenerateImage,
    DegenerateInput,
    EllipticFixedPointsComplex,
    EllipticNoLength,
    FixedBasepoint,
)
from flutelab.geometry.moebius import (
    UNIT_CIRCLE,
    MoebiusTransform,
    Reflection,
    apply,
    bisector_halfplane,
    busemann_inverse_i,
    classify,
    compose,
    compose_all,
    fixed_points,
    invert,
    reflect,
    to_standard_frame,
    translation_length,
)
from flutelab.geometry.plane import (
    INF,
    I,
    BoundaryPoint,
    EuclideanCircle,
    PlanePoint,
    busemann,
    cross_ratio,
    dist,
)
from flutelab.models.enums import Classification


class TestConstruction:
    def test_normalized_to_unit_determinant(self):
        m = MoebiusTransform.from_matrix(2.0, 1.0, 1.0, 3.0)
        assert m.det == pytest.approx(1.0, abs=1e-12)

    def test_nonpositive_determinant_rejected(self):
        with pytest.raises(DegenerateInput):
            MoebiusTransform.from_matrix(1.0, 2.0, 2.0, 4.0)

    def test_sign_is_canonical(self):
        m = MoebiusTransform.from_matrix(-2.0, 0.0, 0.0, -0.5)
        assert m.a > 0
        assert apply(m, I).y == pytest.approx(4.0)

    def test_deep_products_do_not_overflow(self):
        m = MoebiusTransform.diagonal(1e100)
        deep = compose_all([m] * 50)
        assert math.isfinite(deep.log_scale)
        assert busemann_inverse_i(deep) == pytest.approx(50 * math.log(1e100), rel=1e-12)


class TestAction:
    def test_image_of_infinity(self):
        m = MoebiusTransform.from_matrix(2.0, 1.0, 1.0, 1.0)
        assert apply(m, INF) == BoundaryPoint.at(2.0)

    def test_pole_goes_to_infinity(self):
        m = MoebiusTransform.from_matrix(2.0, 1.0, 1.0, 1.0)
        assert apply(m, BoundaryPoint.at(-1.0)).infinite

    def test_isometry(self):
        m = MoebiusTransform.from_matrix(3.0, -1.0, 2.0, 0.5)
        z, w = PlanePoint(0.1, 0.3), PlanePoint(-2.0, 1.4)
        assert dist(apply(m, z), apply(m, w)) == pytest.approx(dist(z, w), abs=1e-10)

    def test_inverse(self):
        m = MoebiusTransform.from_matrix(3.0, -1.0, 2.0, 0.5)
        z = apply(compose(m, invert(m)), PlanePoint(0.4, 0.9))
        assert z.x == pytest.approx(0.4, abs=1e-12)
        assert z.y == pytest.approx(0.9, abs=1e-12)

    def test_busemann_inverse_i_closed_form(self):
        m = MoebiusTransform.from_matrix(3.0, -1.0, 2.0, 0.5)
        expected = busemann(INF, apply(invert(m), I), I)
        assert busemann_inverse_i(m) == pytest.approx(expected, abs=1e-12)

    def test_standard_frame(self):
        base, forward = PlanePoint(2.0, 0.5), BoundaryPoint.at(-1.0)
        t = to_standard_frame(base, forward)
        image = apply(t, base)
        assert image.x == pytest.approx(0.0, abs=1e-12)
        assert image.y == pytest.approx(1.0, abs=1e-12)
        assert apply(t, forward).infinite


class TestClassification:
    def test_kinds(self):
        assert classify(MoebiusTransform.identity()) is Classification.IDENTITY
        assert classify(MoebiusTransform.translation(1.0)) is Classification.PARABOLIC
        assert classify(MoebiusTransform.diagonal(4.0)) is Classification.HYPERBOLIC
        rotation = MoebiusTransform.from_matrix(math.cos(0.3), -math.sin(0.3),
                                                math.sin(0.3), math.cos(0.3))
        assert classify(rotation) is Classification.ELLIPTIC

    def test_translation_length_of_dilation(self):
        assert translation_length(MoebiusTransform.diagonal(math.e**2)) == pytest.approx(2.0)

    def test_parabolic_has_zero_length(self):
        assert translation_length(MoebiusTransform.translation(3.0)) == 0.0

    def test_elliptic_has_no_length(self):
        rotation = MoebiusTransform.from_matrix(0.0, -1.0, 1.0, 0.0)
        with pytest.raises(EllipticNoLength):
            translation_length(rotation)
        with pytest.raises(EllipticFixedPointsComplex):
            fixed_points(rotation)

    def test_fixed_points_repelling_then_attracting(self):
        repelling, attracting = fixed_points(MoebiusTransform.diagonal(4.0))
        assert repelling == BoundaryPoint.at(0.0)
        assert attracting.infinite

    def test_fixed_points_of_conjugate(self):
        t = MoebiusTransform.from_matrix(1.0, 1.0, 0.0, 1.0)
        m = compose_all([t, MoebiusTransform.diagonal(9.0), invert(t)])
        repelling, attracting = fixed_points(m)
        assert repelling.value == pytest.approx(1.0)
        assert attracting.infinite


class TestReflections:
    def test_unit_circle_swaps_zero_and_infinity(self):
        assert reflect(UNIT_CIRCLE, INF) == BoundaryPoint.at(0.0)
        assert reflect(UNIT_CIRCLE, BoundaryPoint.at(0.0)).infinite

    def test_fixes_mirror(self):
        z = reflect(UNIT_CIRCLE, PlanePoint(math.cos(1.0), math.sin(1.0)))
        assert z.x == pytest.approx(math.cos(1.0))
        assert z.y == pytest.approx(math.sin(1.0))

    def test_circle_image(self):
        image = reflect(UNIT_CIRCLE, EuclideanCircle(3.0, 1.0))
        assert image.center == pytest.approx((0.5 + 0.25) / 2)
        assert image.radius == pytest.approx((0.5 - 0.25) / 2)

    def test_circle_through_center_has_line_image(self):
        with pytest.raises(DegenerateImage):
            reflect(UNIT_CIRCLE, EuclideanCircle(1.0, 1.0))

    def test_line_reflection(self):
        z = reflect(Reflection.in_line(2.0), PlanePoint(0.5, 1.0))
        assert (z.x, z.y) == (3.5, 1.0)


class TestBisectors:
    def test_bisector_swaps_basepoint_and_image(self):
        m = MoebiusTransform.from_matrix(2.0, 1.0, 1.0, 1.0)
        b = bisector_halfplane(I, m)
        swapped = reflect(b.mirror, I)
        assert swapped.x == pytest.approx(b.image.x, abs=1e-10)
        assert swapped.y == pytest.approx(b.image.y, abs=1e-10)
        assert b.contains(I)
        assert not b.contains(b.image)

    def test_fixed_basepoint_rejected(self):
        rotation = MoebiusTransform.from_matrix(0.0, -1.0, 1.0, 0.0)
        with pytest.raises(FixedBasepoint):
            bisector_halfplane(I, rotation)


def random_transform(rng: np.random.Generator) -> MoebiusTransform:
    while True:
        a, b, c, d = (rng.uniform(-10.0, 10.0) for _ in range(4))
        if a * d - b * c > 0.5:
            return MoebiusTransform.from_matrix(a, b, c, d)


class TestEquivariance:
    def test_cross_ratio_invariance(self):
        rng = np.random.default_rng(5)
        for _ in range(1000):
            m = random_transform(rng)
            pts = [BoundaryPoint.at(x) for x in sorted(rng.uniform(-5.0, 5.0) for _ in range(4))]
            if min(q.value - p.value for p, q in zip(pts, pts[1:])) < 0.1:
                continue
            images = [apply(m, p) for p in pts]
            if any(p.infinite or abs(p.value) > 10.0 for p in images):
                continue
            assert cross_ratio(*images) == pytest.approx(cross_ratio(*pts), rel=1e-10, abs=1e-10)

    def test_busemann_equivariance(self):
        rng = np.random.default_rng(9)
        for _ in range(1000):
            m = random_transform(rng)
            xi = BoundaryPoint.at(rng.uniform(-5.0, 5.0))
            z = PlanePoint(rng.uniform(-3.0, 3.0), rng.uniform(0.2, 3.0))
            w = PlanePoint(rng.uniform(-3.0, 3.0), rng.uniform(0.2, 3.0))
            image = busemann(apply(m, xi), apply(m, z), apply(m, w))
            assert image == pytest.approx(busemann(xi, z, w), abs=1e-10)
