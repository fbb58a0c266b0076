"""
Builders for the two explicit flute groups.

Untwisted flute (from rays g_n = [i, xi_n) and offsets eps_n):
  1. p_n is the point of g_n with B_inf(p_n, i) = eps_n, so Im p_n = I_n = e^-eps_n.
  2. C_n, the perpendicular bisector of [i, p_n], has center
     X_n = Y_n / (1 - I_n) and radius R_n with R_n^2 = I_n (1 + X_n^2).
  3. C'_n is the image of C_n under the reflection j in the unit circle:
     center X_n / (X_n^2 - R_n^2), radius R_n / |X_n^2 - R_n^2|.
  4. f_n = j o (reflection in C_n), z -> (z - X_n) / (X_n z + R_n^2 - X_n^2).

Twisted delta family: h_p has coefficients a = delta + 2p/(p^2 + 1),
b = p + (p^2 + 1) delta, c = 1/p, d = (p^2 + 1)/p, with indices
p_1 = 1 + floor((delta - 1)/2), p_(n+1) = 1 + floor((delta + 1) p_n / (delta - 1)).

Notes on the closed forms:
  - I_n is exactly e^-eps_n; 1 - eps_n is only its first-order expansion.
  - The bisector center is Y_n / (1 - I_n) > 0; the form Y_n / (I_n - 1)
    has the opposite sign and contradicts alpha_n -> +inf.
  - X_n^2 - R_n^2 is evaluated as X_n Y_n - I_n to avoid cancellation.
  - The unnormalized matrix (1, -X_n; X_n, R_n^2 - X_n^2) has determinant R_n^2
    and trace 1 + R_n^2 - X_n^2; only normalized traces are used.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from flutelab.errors import ConfigError, SchottkyViolation
from flutelab.geometry.moebius import MoebiusTransform, invert
from flutelab.geometry.plane import EuclideanCircle, PlanePoint
from flutelab.models.enums import FluteKind
from flutelab.surfaces import schedules

logger = logging.getLogger("flutelab.surfaces")

TRACE_BOUND = 5.0


@dataclass
class UntwistedFluteParams:
    """Sequences n -> xi_n and n -> eps_n, truncated at n = count."""

    xi: Callable[[int], float]
    eps: Callable[[int], float]
    count: int
    schedule: str = "custom"

    @classmethod
    def from_schedule(
        cls, name: str = schedules.DEFAULT_SCHEDULE, count: int = 8,
        overrides: Optional[dict[str, float]] = None,
    ) -> UntwistedFluteParams:
        xs, es = schedules.sample(name, count, overrides)
        return cls(xi=lambda n: xs[n - 1], eps=lambda n: es[n - 1], count=count, schedule=name)

    def validate(self) -> None:
        if self.count < 0:
            raise ConfigError(f"truncation count must be >= 0, got {self.count}")
        xs = [self.xi(n) for n in range(1, self.count + 1)]
        es = [self.eps(n) for n in range(1, self.count + 1)]
        if any(x <= 0 for x in xs) or any(e <= 0 for e in es):
            raise ConfigError("xi_n and eps_n must be positive")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ConfigError("xi_n must be strictly increasing")
        if any(b >= a for a, b in zip(es, es[1:])):
            raise ConfigError("eps_n must be strictly decreasing")


@dataclass
class TwistedDeltaParams:
    delta: float
    count: int

    def validate(self) -> None:
        if not self.delta > 1:
            raise ConfigError(f"delta > 1 required, got delta = {self.delta}")
        if self.count < 0:
            raise ConfigError(f"truncation count must be >= 0, got {self.count}")


@dataclass
class ConstructionStep:
    """Every intermediate quantity of the untwisted construction at index n."""

    n: int
    xi: float
    eps: float
    p: PlanePoint
    Y: float
    I: float
    X: float
    R: float
    C: EuclideanCircle
    Cp: EuclideanCircle
    Xp: float
    K: float
    f: MoebiusTransform

    @property
    def Mp(self) -> tuple[float, float, float, float]:
        """Normalized matrix M'_n = (1/R, -X/R; X/R, (R^2 - X^2)/R)."""
        R = self.R
        return 1.0 / R, -self.X / R, self.X / R, (self.I - self.X * self.Y) / R

    @property
    def alpha(self) -> float:
        return self.X - self.R

    @property
    def beta(self) -> float:
        return self.X + self.R

    @property
    def abs_trace(self) -> float:
        # (1 + R^2 - X^2) / R is negative once X Y > 1 + I
        return abs(1.0 + self.I - self.X * self.Y) / self.R


@dataclass
class ConstructionTrace:
    steps: list[ConstructionStep] = field(default_factory=list)

    def trace_threshold_index(self, bound: float = TRACE_BOUND) -> Optional[int]:
        """Smallest N0 with |Tr(M'_n)| >= bound for every built n >= N0."""
        n0 = None
        for step in reversed(self.steps):
            if step.abs_trace < bound:
                break
            n0 = step.n
        return n0


@dataclass
class GroupTruncation:
    """The first N generators of a flute group and where they came from."""

    generators: list[MoebiusTransform]
    labels: list[int]
    kind: FluteKind
    trace: Optional[ConstructionTrace] = None
    delta: Optional[float] = None
    p_sequence: list[int] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.generators)

    def letter(self, index: int, exponent: int = 1) -> MoebiusTransform:
        """Generator with label ``index`` raised to +1 or -1."""
        g = self.generators[self.labels.index(index)]
        return g if exponent > 0 else invert(g)


def construction_step(n: int, xi: float, eps: float) -> ConstructionStep:
    """All construction quantities for one (xi_n, eps_n) pair."""
    height = math.exp(-eps)
    one_minus = -math.expm1(-eps)
    # geodesic from i toward xi is the circle with endpoints -1/xi and xi
    c = (xi - 1.0 / xi) / 2.0
    Y = c + math.sqrt(c * c + one_minus * (1.0 + height))
    X = Y / one_minus
    R = math.sqrt(height) * math.hypot(1.0, X)
    gap = X * Y - height  # X^2 - R^2
    Xp = X / gap
    K = R / abs(gap)
    f = MoebiusTransform.from_unimodular(1.0 / R, -X / R, X / R, -gap / R)
    return ConstructionStep(
        n=n, xi=xi, eps=eps, p=PlanePoint(Y, height), Y=Y, I=height, X=X, R=R,
        C=EuclideanCircle(X, R), Cp=EuclideanCircle(Xp, K), Xp=Xp, K=K, f=f,
    )


def circle_margin(c1: EuclideanCircle, c2: EuclideanCircle) -> float:
    """|center gap| - radius sum; positive iff the disks are externally disjoint."""
    return abs(c1.center - c2.center) - (c1.radius + c2.radius)


def build_untwisted(params: UntwistedFluteParams) -> GroupTruncation:
    """
    Build the untwisted flute truncation and its construction trace.

    Raises:
        ConfigError: if the sequences violate their monotonicity invariants.
        SchottkyViolation: if two of the 2N bisector circles are not externally
            disjoint; the error names the first failing generator pair.
    """
    params.validate()
    steps = [
        construction_step(n, params.xi(n), params.eps(n)) for n in range(1, params.count + 1)
    ]
    circles = [(s.n, s.C) for s in steps] + [(s.n, s.Cp) for s in steps]
    for i, (n, ci) in enumerate(circles):
        for k, ck in circles[i + 1:]:
            margin = circle_margin(ci, ck)
            if margin <= 0:
                raise SchottkyViolation(
                    min(n, k), max(n, k), margin,
                    detail=f"schedule {params.schedule!r} at N={params.count}",
                )
    trace = ConstructionTrace(steps)
    logger.info(
        "Built untwisted flute: schedule=%s N=%d N0(trace>=5)=%s",
        params.schedule, params.count, trace.trace_threshold_index(),
    )
    return GroupTruncation(
        generators=[s.f for s in steps],
        labels=[s.n for s in steps],
        kind=FluteKind.UNTWISTED,
        trace=trace,
    )


def p_sequence(delta: float, count: int) -> list[int]:
    """Indices p_1, ..., p_count of the delta family (exact floor arithmetic)."""
    d = Fraction(delta)
    seq: list[int] = []
    if count <= 0:
        return seq
    p = 1 + math.floor((d - 1) / 2)
    seq.append(p)
    while len(seq) < count:
        p = 1 + math.floor((d + 1) * p / (d - 1))
        seq.append(p)
    return seq


def h_coefficients(p: int, delta: float) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact coefficients (a, b, c, d) of h_p; ad - bc = 1 identically."""
    d_ = Fraction(delta)
    pf = Fraction(p)
    q = pf * pf + 1
    return d_ + 2 * pf / q, pf + q * d_, 1 / pf, q / pf


def coefficient_det(p: int, delta: float) -> Fraction:
    a, b, c, d = h_coefficients(p, delta)
    return a * d - b * c


def _log_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def h_generator(p: int, delta: float) -> MoebiusTransform:
    """
    h_p as a transform, rounded from the exact coefficients.

    Entries are divided by b (the largest coefficient) before rounding, so
    indices such as p^(2^k) never overflow.
    """
    if p < 1:
        raise ConfigError(f"h_p needs p >= 1, got {p}")
    if not delta > 1:
        raise ConfigError(f"delta > 1 required, got delta = {delta}")
    a, b, c, d = h_coefficients(p, delta)
    return MoebiusTransform.from_scaled(
        float(a / b), 1.0, float(c / b), float(d / b), _log_fraction(b)
    )


def build_twisted_delta(params: TwistedDeltaParams) -> GroupTruncation:
    """Build the delta-family truncation h_(p_1), ..., h_(p_N)."""
    params.validate()
    ps = p_sequence(params.delta, params.count)
    logger.info("Built twisted delta flute: delta=%s N=%d p=%s", params.delta, params.count, ps)
    return GroupTruncation(
        generators=[h_generator(p, params.delta) for p in ps],
        labels=list(range(1, len(ps) + 1)),
        kind=FluteKind.TWISTED_DELTA,
        delta=params.delta,
        p_sequence=ps,
    )
