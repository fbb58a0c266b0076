"""Enumerations for the flutelab domain model."""

from enum import Enum


class Classification(str, Enum):
    """Conjugacy type of a real Moebius transformation."""

    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class Membership(str, Enum):
    """Position of a point relative to a fundamental domain."""

    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class FluteKind(str, Enum):
    """Which explicit construction a truncation came from."""

    UNTWISTED = "untwisted"
    TWISTED_DELTA = "twisted-delta"


class RelationCase(str, Enum):
    """Coefficient relation selected by the shape of a common orthogonal."""

    VERTICAL = "vertical"  # (0, inf): a = d
    FINITE = "finite"  # (alpha, beta): (a - d)(alpha + beta) + 2b = 2 alpha beta c
    HALF_INFINITE = "half-infinite"  # (alpha, inf): a - d = 2c


class CoefficientCase(str, Enum):
    """Limit pattern of witness coefficients in a scan cluster."""

    CASE_1 = "case-1"  # a -> 1/d, b -> 0, c -> 0
    CASE_2 = "case-2"  # a -> (1 + alpha^2 c^2)/d, b -> -alpha^2 c
    CASE_3 = "case-3"  # d -> 0, b -> -alpha^2 c
    UNCLASSIFIED = "unclassified"


class CheckStatus(str, Enum):
    """Outcome of a single verification check."""

    PASS = "pass"
    FAIL = "fail"
    WARN = "warn"
