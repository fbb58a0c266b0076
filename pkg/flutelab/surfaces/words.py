"""
Reduced words over the generators of a truncation and word-ball enumeration.

A ``Word`` stores merged letters (label, exponent): adjacent letters with the
same label are combined and zero exponents dropped, so a Word is reduced in
the free group. ``word_ball`` walks all reduced words of length <= radius in
breadth-first, lexicographic order over the alphabet
(1, +1), (1, -1), (2, +1), (2, -1), ... and carries each word's matrix along,
so every prefix is composed once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from flutelab.geometry.moebius import MoebiusTransform, compose, compose_all, invert
from flutelab.surfaces.flute import GroupTruncation

Letter = tuple[int, int]


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> Word:
        """Merge adjacent letters with equal labels; drop zero exponents."""
        merged: list[Letter] = []
        for label, exp in letters:
            if merged and merged[-1][0] == label:
                exp += merged.pop()[1]
            if exp != 0:
                merged.append((label, exp))
        return cls(tuple(merged))

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> Word:
        return Word(tuple((label, -e) for label, e in reversed(self.letters)))

    def __mul__(self, other: Word) -> Word:
        return Word.of(self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "id"
        return " ".join(f"g{label}" if e == 1 else f"g{label}^{e}" for label, e in self.letters)

    def evaluate(self, g: GroupTruncation) -> MoebiusTransform:
        """Left-to-right product of the letter matrices."""
        factors = []
        for label, e in self.letters:
            letter = g.letter(label, 1 if e > 0 else -1)
            factors.extend([letter] * abs(e))
        return compose_all(factors)


def alphabet(g: GroupTruncation) -> list[Letter]:
    return [(label, e) for label in g.labels for e in (1, -1)]


def word_ball(
    g: GroupTruncation, radius: int, include_identity: bool = True
) -> Iterator[tuple[Word, MoebiusTransform]]:
    """
    Every reduced word of length <= radius with its matrix.

    Deterministic order: by length, then lexicographically in the alphabet.
    """
    if include_identity:
        yield Word(), MoebiusTransform.identity()
    if radius < 1 or g.count == 0:
        return
    letters = alphabet(g)
    matrices = {
        (label, e): g.generators[g.labels.index(label)] if e > 0
        else invert(g.generators[g.labels.index(label)])
        for label, e in letters
    }
    layer: list[tuple[tuple[Letter, ...], MoebiusTransform]] = [
        ((letter,), matrices[letter]) for letter in letters
    ]
    depth = 1
    while layer:
        for seq, m in layer:
            yield Word.of(seq), m
        if depth == radius:
            return
        nxt = []
        for seq, m in layer:
            last_label, last_exp = seq[-1]
            for letter in letters:
                if letter == (last_label, -last_exp):
                    continue
                nxt.append((seq + (letter,), compose(m, matrices[letter])))
        layer = nxt
        depth += 1


def ball_size(count: int, radius: int) -> int:
    """Number of nonidentity reduced words of length <= radius on ``count`` generators."""
    if count == 0 or radius < 1:
        return 0
    k = 2 * count
    return sum(k * (k - 1) ** (r - 1) for r in range(1, radius + 1))
