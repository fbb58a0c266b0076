"""Tests for Busemann limits, orbit-closure criteria, the T_u scan and diagnostics."""

import math
from fractions import Fraction

import pytest

from flutelab.config import settings
from flutelab.errors import ConditionOneFailed, ConfigError, DegenerateFoot, DegenerateInput
from flutelab.geometry.moebius import MoebiusTransform, compose
from flutelab.geometry.plane import INF, BoundaryPoint, Geodesic
from flutelab.models.enums import CoefficientCase, FluteKind
from flutelab.orbits.criteria import (
    Custom,
    PowerTower,
    SingleGenerator,
    busemann_along_words,
    chordal,
    recurrence_test,
    tower_indices,
    tower_target,
    tunv_test,
    word_matrix,
)
from flutelab.orbits.diagnostics import limit_point_diagnostic, orthogonal_foot_angle
from flutelab.orbits.scan import (
    Candidate,
    CoefficientDiagnostic,
    classify_coefficients,
    evaluate_witness,
    power_tower_witnesses,
    semigroup_consistency,
    single_linkage,
    tu_scan,
    window_sweep,
)
from flutelab.surfaces.flute import GroupTruncation, h_coefficients
from flutelab.surfaces.words import Word


def case_one(n: int) -> MoebiusTransform:
    """b, c -> 0 and d -> 1 while gamma_n(inf) = n + 1 escapes."""
    return MoebiusTransform.from_matrix(1 + 1 / n, 1 / n, 1 / n, (1 + 1 / n**2) / (1 + 1 / n))


def empty() -> GroupTruncation:
    return GroupTruncation(generators=[], labels=[], kind=FluteKind.UNTWISTED)


def candidate(t: float) -> Candidate:
    diagnostics = CoefficientDiagnostic(CoefficientCase.UNCLASSIFIED, {}, (0.0, 0.0, 0.0, 0.0))
    return Candidate(t=t, witnesses=[], spread=0.0, values=[t], diagnostics=diagnostics)


class TestWordSchemas:
    def test_tower_indices(self):
        assert tower_indices(2, 3) == [2, 4, 16, 256]

    def test_tower_matches_exact_product(self):
        exact = [h_coefficients(p, 3.0) for p in tower_indices(2, 2)]
        a, b, c, d = exact[0]
        for a2, b2, c2, d2 in exact[1:]:
            a, b, c, d = a * a2 + b * c2, a * b2 + b * d2, c * a2 + d * c2, c * b2 + d * d2
        m = word_matrix(PowerTower(1, 2), 3.0)
        for got, want in zip(m.unimodular(), (a, b, c, d)):
            assert got == pytest.approx(float(want), rel=1e-12)
        assert a * d - b * c == Fraction(1)

    def test_single_generator_power(self):
        m = word_matrix(SingleGenerator(2, power=-2), 3.0)
        inverse = word_matrix(SingleGenerator(2, power=2), 3.0)
        product = compose(m, inverse)
        assert product.b == pytest.approx(0.0, abs=1e-9)
        assert product.c == pytest.approx(0.0, abs=1e-9)

    def test_custom_word_uses_labels(self):
        m = word_matrix(Custom(Word.of([(2, 1)])), 3.0)
        single = word_matrix(SingleGenerator(2), 3.0)
        assert m == single

    def test_delta_must_exceed_one(self):
        with pytest.raises(ConfigError, match="delta > 1"):
            word_matrix(PowerTower(1, 1), 1.0)

    def test_str(self):
        assert str(PowerTower(3, 2)) == "tower(n=3, k=2)"
        assert str(SingleGenerator(4, power=-1)) == "h4^-1"


class TestBusemannLimits:
    def test_single_generator_limit(self):
        est = busemann_along_words(0, range(5, 21), 3.0)
        assert est.target == pytest.approx(math.log(9.0))
        assert est.error < 1e-3
        assert not est.non_convergent

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_tower_limits(self, k):
        est = busemann_along_words(k, range(5, 21), 3.0)
        assert est.target == pytest.approx(2.0 * math.log(3.0 * 4.0**k))
        assert est.error < 1e-2

    def test_errors_shrink(self):
        est = busemann_along_words(1, range(5, 21), 3.0)
        assert est.errors[-1] < est.errors[0]

    def test_single_generator_errors_strictly_decrease(self):
        errors = busemann_along_words(0, range(5, 21), 3.0).errors
        assert len(errors) == 16
        assert all(b < a for a, b in zip(errors, errors[1:]))

    def test_other_delta(self):
        est = busemann_along_words(1, range(5, 21), 5.0)
        assert est.tail == pytest.approx(tower_target(5.0, 1), abs=1e-2)

    def test_empty_range_rejected(self):
        with pytest.raises(ConfigError):
            busemann_along_words(1, [], 3.0)

    def test_negative_k_rejected(self):
        with pytest.raises(ConfigError):
            busemann_along_words(-1, range(5, 10), 3.0)


class TestCriteria:
    def test_chordal(self):
        assert chordal(INF, INF) == 0.0
        assert chordal(BoundaryPoint.at(0.0), INF) == pytest.approx(2.0)

    def test_recurrence_along_case_one(self, standard_vector):
        ok, result = recurrence_test(standard_vector, case_one, range(1000, 10001, 1000))
        assert ok
        assert result.condition_one
        assert abs(result.t) < 1e-2

    def test_constant_sequence_is_degenerate(self, standard_vector):
        ok, result = recurrence_test(standard_vector, lambda n: case_one(5), range(1, 6))
        assert not ok
        assert result.degenerate
        assert not result.distinct

    def test_identity_sequence_is_degenerate(self, standard_vector):
        ok, result = recurrence_test(
            standard_vector, lambda n: MoebiusTransform.identity(), range(1, 4)
        )
        assert not ok
        assert result.has_identity

    def test_untwisted_generators_fail_condition_one(self, untwisted, standard_vector):
        with pytest.raises(ConditionOneFailed) as exc:
            tunv_test(
                standard_vector,
                MoebiusTransform.identity(),
                lambda n: untwisted.generators[n - 1],
                range(1, 9),
            )
        # f_n(inf) = 1 / X_n -> 0
        assert exc.value.last_image == pytest.approx(0.0, abs=1e-6)

    def test_non_strict_reports_failure(self, untwisted, standard_vector):
        result = tunv_test(
            standard_vector,
            MoebiusTransform.identity(),
            lambda n: untwisted.generators[n - 1],
            range(1, 9),
            strict=False,
        )
        assert not result.condition_one
        assert not result.passes(0.0)

    def test_boundary_tolerance_from_settings(self, standard_vector, monkeypatch):
        # gamma_n(inf) = n + 1 stops at 1001: chordal gap about 2e-3
        ns = range(100, 1001, 100)
        _, result = recurrence_test(standard_vector, case_one, ns)
        assert result.boundary_tol == settings.boundary_tol
        assert not result.condition_one

        monkeypatch.setattr(settings, "boundary_tol", 1e-2)
        _, result = recurrence_test(standard_vector, case_one, ns)
        assert result.condition_one


class TestFootAngle:
    def test_right_angle(self):
        foot = orthogonal_foot_angle(Geodesic.between(1.0, 4.0))
        assert foot.beta == pytest.approx(-2.0)
        assert foot.theta == pytest.approx(math.pi / 2)
        assert foot.orthogonality_residual < 1e-9

    def test_collapsed_foot(self):
        with pytest.raises(DegenerateFoot):
            orthogonal_foot_angle(Geodesic.between(1.0, 2.0))

    def test_vertical_axis_rejected(self):
        with pytest.raises(DegenerateInput):
            orthogonal_foot_angle(Geodesic.between(1.0, INF))

    def test_endpoints_must_be_positive(self):
        with pytest.raises(DegenerateInput):
            orthogonal_foot_angle(Geodesic.between(-1.0, 2.0))

    def test_angle_opens_toward_pi(self):
        thetas = [orthogonal_foot_angle(Geodesic.between(1.0 / m, m)).theta for m in range(2, 51)]
        assert thetas[0] == pytest.approx(math.pi / 2)
        assert all(b > a for a, b in zip(thetas, thetas[1:]))
        assert thetas[-1] > 3.0

    @pytest.mark.parametrize("x", [1.2, 1.5, 2.5, 2.9])
    def test_angle_undefined_below_three_y(self, x):
        foot = orthogonal_foot_angle(Geodesic.between(1.0, x))
        assert not foot.angle_defined
        assert math.isnan(foot.theta)
        assert foot.cross_ratio == pytest.approx(1.0 / (x - 2.0))
        assert foot.orthogonality_residual < 1e-9


class TestLimitPointDiagnostic:
    def test_empty_group(self):
        report = limit_point_diagnostic(empty(), 3)
        assert report.orbit_size == 1
        assert report.sup_im == 1.0
        assert "not a classification" in report.evidence

    def test_strip_census(self):
        g = GroupTruncation(
            generators=[MoebiusTransform.from_matrix(2.0, 1.0, 1.0, 1.0)],
            labels=[1],
            kind=FluteKind.UNTWISTED,
        )
        report = limit_point_diagnostic(g, 3, strips=[1e-3, 1e-1, 10.0])
        assert report.orbit_size == 7
        assert sum(s.count for s in report.strips) <= report.orbit_size
        assert report.real_part_residual < 1e-9

    def test_untwisted_orbit(self, small_untwisted):
        report = limit_point_diagnostic(small_untwisted, 2)
        assert report.count == 3
        assert report.orbit_size == 1 + 6 + 6 * 5
        assert report.sup_im >= 1.0


class TestCoefficientClassification:
    def test_case_one(self):
        witnesses = [evaluate_witness(str(n), case_one(n), None) for n in range(1000, 2001, 100)]
        assert classify_coefficients(witnesses).case is CoefficientCase.CASE_1

    def test_case_two(self):
        # c = 1 and d = 2 fixed, det = 2a - b = 1
        witnesses = [
            evaluate_witness(str(n), MoebiusTransform.from_matrix(n, 2 * n - 1, 1.0, 2.0), None)
            for n in range(10, 20)
        ]
        assert classify_coefficients(witnesses).case is CoefficientCase.CASE_2

    def test_case_three(self):
        # c = 1 fixed and d = 1/n -> 0, det = a/n - b = 1
        witnesses = [
            evaluate_witness(str(n), MoebiusTransform.from_matrix(1.0, 1 / n - 1, 1.0, 1 / n), None)
            for n in range(1000, 2001, 100)
        ]
        assert classify_coefficients(witnesses).case is CoefficientCase.CASE_3


class TestScan:
    def test_single_linkage(self):
        groups = single_linkage([0.0, 0.04, 0.5, 0.08, 0.52, 2.0], 0.05)
        assert groups == [[0, 1, 3], [2, 4], [5]]

    def test_empty_group(self, standard_vector):
        report = tu_scan(standard_vector, empty(), 3)
        assert report.witness_count == 0
        assert report.candidates == []
        assert "neither complete nor certified" in report.soundness

    def test_power_towers_recover_limits(self, standard_vector, delta3_deep):
        evaluated = power_tower_witnesses(standard_vector, 3.0, 14, 3)
        report = tu_scan(standard_vector, delta3_deep, 1, boundary_window=1e2, evaluated=evaluated)
        ts = [c.t for c in report.candidates]
        for k in range(4):
            assert any(abs(t - tower_target(3.0, k)) < 5e-2 for t in ts)

    def test_single_window_shows_spurious_cluster(self, standard_vector, untwisted):
        report = tu_scan(standard_vector, untwisted, 2, boundary_window=1e2)
        assert report.nonzero()

    def test_window_sweep_drops_spurious_cluster(self, standard_vector, untwisted):
        sweep = window_sweep(standard_vector, untwisted, 2)
        assert sweep.windows == [1e2, 1e3, 1e4]
        assert len(sweep.reports) == 3
        assert sweep.stable_nonzero() == []

    def test_untwisted_has_no_stable_nonzero_time(self, standard_vector, untwisted):
        sweep = window_sweep(standard_vector, untwisted, 4)
        assert sweep.stable_nonzero() == []
        assert "word radius 4" in sweep.soundness


class TestSemigroup:
    def test_sums_within_range(self):
        checks = semigroup_consistency([candidate(1.0), candidate(2.0), candidate(3.5)], 0.05)
        assert [(c.first, c.second, c.total, c.found) for c in checks] == [
            (1.0, 1.0, 2.0, True),
            (1.0, 2.0, 3.0, False),
        ]

    def test_no_candidates(self):
        assert semigroup_consistency([], 0.05) == []
