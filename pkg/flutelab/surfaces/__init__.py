from flutelab.surfaces.checks import (
    check_nested,
    check_schottky,
    check_untwisted,
    fundamental_domain_contains,
)
from flutelab.surfaces.flute import (
    GroupTruncation,
    TwistedDeltaParams,
    UntwistedFluteParams,
    build_twisted_delta,
    build_untwisted,
    h_generator,
)
from flutelab.surfaces.words import Word, word_ball

__all__ = [
    "GroupTruncation",
    "TwistedDeltaParams",
    "UntwistedFluteParams",
    "Word",
    "build_twisted_delta",
    "build_untwisted",
    "check_nested",
    "check_schottky",
    "check_untwisted",
    "fundamental_domain_contains",
    "h_generator",
    "word_ball",
]
