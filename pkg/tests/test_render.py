"""Tests for SVG scene building and rendering."""

import pytest

from flutelab.errors import OutputError
from flutelab.render.svg import (
    HOROCYCLE_LABEL,
    MARGIN,
    Arc,
    Disc,
    HorizontalLine,
    Point,
    VerticalRay,
    build_scene,
    fit_window,
    render_svg,
    write_svg,
)
from flutelab.surfaces.checks import pairing_circles


def labels(scene, kind):
    return [p.label for p in scene.primitives if isinstance(p, kind)]


class TestScene:
    def test_circles_match_pairing_circles(self, small_untwisted):
        scene = build_scene(small_untwisted)
        arcs = [p for p in scene.primitives if isinstance(p, Arc) and p.layer == "circles"]
        assert [a.label for a in arcs] == [name for name, _ in pairing_circles(small_untwisted)]
        assert len(arcs) == 6

    def test_layers(self, small_untwisted):
        scene = build_scene(small_untwisted)
        assert labels(scene, Point) == ["i", "p1", "p2", "p3"]
        assert labels(scene, VerticalRay) == ["[i, inf)"]
        assert labels(scene, HorizontalLine) == [HOROCYCLE_LABEL]
        assert "orthogonal" in labels(scene, Arc)

    def test_inverted_horocycle_passes_through_i(self, small_untwisted):
        disc = next(p for p in build_scene(small_untwisted).primitives if isinstance(p, Disc))
        assert (disc.cx, disc.cy, disc.radius) == pytest.approx((0.0, 0.5, 0.5))

    def test_delta_family_has_no_orthogonal(self, delta3):
        scene = build_scene(delta3)
        assert "orthogonal" not in labels(scene, Arc)
        assert labels(scene, Point) == ["i"]

    def test_window_margin(self):
        lo, hi = fit_window([Arc(0.0, 2.0, "circles")], [])
        assert (lo, hi) == pytest.approx((-2.0 - 4.0 * MARGIN, 2.0 + 4.0 * MARGIN))

    def test_window_contains_unit_interval(self, small_untwisted):
        scene = build_scene(small_untwisted)
        assert scene.x_min < -1.0
        assert scene.x_max > 1.0

    def test_window_framed_on_first_generators(self, untwisted):
        scene = build_scene(untwisted)
        arcs = [p for p in scene.primitives if isinstance(p, Arc) and p.layer == "circles"]
        assert (scene.x_min, scene.x_max) == fit_window(arcs[:2], [-1.0, 1.0])
        assert scene.x_max < 1e3
        # C1 and the unit circle keep a visible size
        assert arcs[0].radius * scene.scale > 10.0
        assert scene.scale > 10.0

    def test_window_framed_on_three_generators(self, untwisted):
        scene = build_scene(untwisted, fit_count=3)
        arcs = [p for p in scene.primitives if isinstance(p, Arc) and p.layer == "circles"]
        assert (scene.x_min, scene.x_max) == fit_window(arcs[:6], [-1.0, 1.0])

    def test_window_framed_on_all_circles(self, untwisted):
        scene = build_scene(untwisted, fit_count=0)
        assert scene.x_max - scene.x_min > 1e20

    def test_uniform_scale(self, small_untwisted):
        scene = build_scene(small_untwisted, width=600, height=300)
        assert scene.y_top == pytest.approx(300 / scene.scale)
        assert scene.py(0.0) == 300


class TestRender:
    def test_deterministic(self, small_untwisted):
        first = render_svg(build_scene(small_untwisted))
        second = render_svg(build_scene(small_untwisted))
        assert first == second
        assert "<svg" in first

    def test_labels_in_document(self, small_untwisted):
        text = render_svg(build_scene(small_untwisted))
        assert ">p1<" in text
        assert ">i<" in text

    def test_write(self, tmp_path, small_untwisted):
        scene = build_scene(small_untwisted)
        path = tmp_path / "flute.svg"
        write_svg(scene, str(path))
        assert path.read_text(encoding="utf-8") == render_svg(scene)

    def test_write_failure(self, tmp_path, small_untwisted):
        with pytest.raises(OutputError):
            write_svg(build_scene(small_untwisted), str(tmp_path / "missing" / "flute.svg"))
