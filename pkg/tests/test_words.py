"""Tests for reduced words and word-ball enumeration."""

import pytest

from flutelab.geometry.moebius import MoebiusTransform, apply, classify, compose
from flutelab.geometry.plane import PlanePoint
from flutelab.models.enums import Classification, FluteKind
from flutelab.surfaces.flute import GroupTruncation
from flutelab.surfaces.words import Word, alphabet, ball_size, word_ball


class TestWord:
    def test_merges_adjacent_letters(self):
        assert Word.of([(1, 1), (1, 1), (2, -1)]).letters == ((1, 2), (2, -1))

    def test_cancels_to_identity(self):
        w = Word.of([(1, 1), (2, 1), (2, -1), (1, -1)])
        assert w.is_identity
        assert str(w) == "id"

    def test_length_counts_exponents(self):
        assert Word.of([(1, 3), (2, -2)]).length == 5

    def test_inverse_product_is_identity(self):
        w = Word.of([(1, 1), (2, -1), (3, 2)])
        assert (w * w.inverse()).is_identity

    def test_str(self):
        assert str(Word.of([(1, 1), (2, -1)])) == "g1 g2^-1"

    def test_evaluate_identity(self, small_untwisted):
        m = Word().evaluate(small_untwisted)
        assert classify(m) is Classification.IDENTITY

    def test_evaluate_product(self, small_untwisted):
        g = small_untwisted
        m = Word.of([(1, 1), (2, 1)]).evaluate(g)
        expected = compose(g.generators[0], g.generators[1])
        z = PlanePoint(0.3, 0.8)
        assert apply(m, z).x == pytest.approx(apply(expected, z).x, rel=1e-12)
        assert apply(m, z).y == pytest.approx(apply(expected, z).y, rel=1e-12)


class TestWordBall:
    def test_alphabet_order(self, small_untwisted):
        assert alphabet(small_untwisted) == [(1, 1), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1)]

    def test_size_matches_count(self, small_untwisted):
        for radius in range(4):
            words = list(word_ball(small_untwisted, radius, include_identity=False))
            assert len(words) == ball_size(3, radius)

    def test_words_are_reduced_and_distinct(self, small_untwisted):
        words = [w for w, _ in word_ball(small_untwisted, 3)]
        assert len({w.letters for w in words}) == len(words)
        assert all(w.length <= 3 for w in words)

    def test_identity_first(self, small_untwisted):
        first, m = next(iter(word_ball(small_untwisted, 2)))
        assert first.is_identity
        assert m == MoebiusTransform.identity()

    def test_deterministic_order(self, small_untwisted):
        a = [str(w) for w, _ in word_ball(small_untwisted, 3)]
        b = [str(w) for w, _ in word_ball(small_untwisted, 3)]
        assert a == b
        assert a[1:4] == ["g1", "g1^-1", "g2"]

    def test_matrices_match_words(self, small_untwisted):
        z = PlanePoint(0.1, 2.0)
        for w, m in word_ball(small_untwisted, 2, include_identity=False):
            expected = apply(w.evaluate(small_untwisted), z)
            assert apply(m, z).x == pytest.approx(expected.x, rel=1e-9, abs=1e-12)
            assert apply(m, z).y == pytest.approx(expected.y, rel=1e-9)

    def test_empty_group(self):
        g = GroupTruncation(generators=[], labels=[], kind=FluteKind.UNTWISTED)
        assert [str(w) for w, _ in word_ball(g, 3)] == ["id"]
        assert ball_size(0, 3) == 0
