"""
Orbit-closure criteria in the normalization u(inf) = inf.

For a unit tangent vector u with forward endpoint inf and a sequence
(gamma_n) of group elements, g_t u lies in the closure of the horocycle
orbit of u when

  (i)  gamma_n(inf) -> alpha(inf), and
  (ii) B_inf(gamma_n^-1 i, alpha^-1 i) -> t.

With alpha the identity and t = 0 this is the recurrence criterion. All
Busemann values come from the scale-free first column of each matrix:
B_inf(gamma^-1 i, i) = log(a^2 + c^2) for the unimodular entries.

Word schemas name the sequences used by the delta family, including the
power towers h_(p_n) h_(p_n^2) h_(p_n^4) ... h_(p_n^(2^k)); their letters are
evaluated as matrices whether or not the index p_n^(2^l) is a member of the
recurrence sequence.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from flutelab.config import settings
from flutelab.dynamics.flows import UnitTangent
from flutelab.errors import ConditionOneFailed, ConfigError
from flutelab.geometry.moebius import (
    MoebiusTransform,
    apply,
    busemann_inverse_i,
    classify,
    compose,
    compose_all,
    invert,
)
from flutelab.geometry.plane import INF, BoundaryPoint
from flutelab.models.enums import Classification
from flutelab.surfaces.flute import h_generator, p_sequence
from flutelab.surfaces.words import Word

logger = logging.getLogger("flutelab.orbits")

TAIL_SPAN = 3


@dataclass(frozen=True)
class PowerTower:
    """h_(p_n) h_(p_n^2) ... h_(p_n^(2^k))."""

    n: int
    k: int

    def __str__(self) -> str:
        return f"tower(n={self.n}, k={self.k})"


@dataclass(frozen=True)
class SingleGenerator:
    """h_(p_n) raised to ``power``."""

    n: int
    power: int = 1

    def __str__(self) -> str:
        return f"h{self.n}" if self.power == 1 else f"h{self.n}^{self.power}"


@dataclass(frozen=True)
class Custom:
    """A reduced word over the labels 1..N of the delta family."""

    word: Word

    def __str__(self) -> str:
        return str(self.word)


WordSchema = Union[PowerTower, SingleGenerator, Custom]


def tower_indices(p: int, k: int) -> list[int]:
    """p, p^2, p^4, ..., p^(2^k)."""
    return [p ** (2**level) for level in range(k + 1)]


def word_matrix(schema: WordSchema, delta: float) -> MoebiusTransform:
    """
    Left-to-right product of the letter matrices of a schema.

    Raises:
        ConfigError: for delta <= 1 or out-of-range parameters.
    """
    if not delta > 1:
        raise ConfigError(f"delta > 1 required, got delta = {delta}")
    if isinstance(schema, PowerTower):
        if schema.n < 1 or schema.k < 0:
            raise ConfigError(f"power tower needs n >= 1 and k >= 0, got {schema}")
        p = p_sequence(delta, schema.n)[-1]
        return compose_all([h_generator(q, delta) for q in tower_indices(p, schema.k)])
    if isinstance(schema, SingleGenerator):
        if schema.n < 1:
            raise ConfigError(f"generator index must be >= 1, got {schema.n}")
        h = h_generator(p_sequence(delta, schema.n)[-1], delta)
        letter = h if schema.power > 0 else invert(h)
        return compose_all([letter] * abs(schema.power))
    labels = [label for label, _ in schema.word.letters]
    if not labels:
        return MoebiusTransform.identity()
    ps = p_sequence(delta, max(labels))
    factors = []
    for label, e in schema.word.letters:
        h = h_generator(ps[label - 1], delta)
        factors.extend([h if e > 0 else invert(h)] * abs(e))
    return compose_all(factors)


def tower_target(delta: float, k: int) -> float:
    """2 log(delta (delta + 1)^k)."""
    return 2.0 * (math.log(delta) + k * math.log(delta + 1.0))


@dataclass
class LimitEstimate:
    """B_inf(gamma_n^-1 i, i) along a word family, with its tail against a target."""

    k: int
    delta: float
    ns: list[int]
    values: list[float]
    target: float
    tol: float

    @property
    def tail(self) -> float:
        return self.values[-1]

    @property
    def error(self) -> float:
        return abs(self.tail - self.target)

    @property
    def errors(self) -> list[float]:
        return [abs(v - self.target) for v in self.values]

    @property
    def non_convergent(self) -> bool:
        """The last few values still spread by more than the tolerance."""
        last = self.values[-TAIL_SPAN:]
        return max(last) - min(last) > self.tol


def busemann_along_words(
    k: int,
    n_range: Sequence[int],
    delta: float,
    family: Callable[[int, int], WordSchema] = PowerTower,
    tol: Optional[float] = None,
) -> LimitEstimate:
    """
    B_n = B_inf(gamma_(n,k)^-1 i, i) for n in n_range, computed as
    log(a^2 + c^2) + 2 log_scale so deep products never overflow.
    """
    if k < 0:
        raise ConfigError(f"k must be >= 0, got {k}")
    ns = list(n_range)
    if not ns or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ConfigError("n_range must be nonempty and strictly increasing")
    values = [busemann_inverse_i(word_matrix(family(n, k), delta)) for n in ns]
    estimate = LimitEstimate(
        k=k, delta=delta, ns=ns, values=values, target=tower_target(delta, k),
        tol=settings.limit_tol if tol is None else tol,
    )
    if estimate.non_convergent:
        logger.warning("Busemann values along k=%d have not settled: %s", k, values[-TAIL_SPAN:])
    return estimate


def chordal(x: BoundaryPoint, y: BoundaryPoint) -> float:
    """Chordal distance on the boundary circle; d(x, inf) = 2 / sqrt(1 + x^2)."""
    if x.infinite and y.infinite:
        return 0.0
    if x.infinite or y.infinite:
        v = y.value if x.infinite else x.value
        return 2.0 / math.sqrt(1.0 + v * v)
    return 2.0 * abs(x.value - y.value) / math.sqrt((1.0 + x.value**2) * (1.0 + y.value**2))


def standard_conjugator(u: UnitTangent) -> Optional[MoebiusTransform]:
    """The isometry moving u to (i, inf), or None when u is already there."""
    if u.forward.infinite and u.base.x == 0.0 and u.base.y == 1.0:
        return None
    return u.frame()


def conjugate(m: MoebiusTransform, t: Optional[MoebiusTransform]) -> MoebiusTransform:
    return m if t is None else compose(compose(t, m), invert(t))


def element_key(m: MoebiusTransform, digits: int = 9) -> tuple[float, ...]:
    """Rounded canonical entries; equal keys mean equal elements at that precision."""
    return tuple(round(x, digits) for x in (m.a, m.b, m.c, m.d, m.log_scale))


@dataclass
class TunvResult:
    """Trends of both conditions along a sequence."""

    ns: list[int]
    chordal_gaps: list[float]
    values: list[float]
    condition_one: bool
    distinct: bool
    has_identity: bool
    boundary_tol: float
    last_image: Optional[float] = None
    tol: float = field(default_factory=lambda: settings.limit_tol)

    @property
    def t(self) -> float:
        return self.values[-1]

    @property
    def degenerate(self) -> bool:
        return self.has_identity or not self.distinct

    def passes(self, target: float) -> bool:
        return self.condition_one and not self.degenerate and abs(self.t - target) < self.tol


def tunv_test(
    u: UnitTangent,
    alpha: MoebiusTransform,
    seq: Callable[[int], MoebiusTransform],
    n_range: Sequence[int],
    boundary_tol: Optional[float] = None,
    strict: bool = True,
) -> TunvResult:
    """
    Estimate t with g_t u in the closure of the horocycle orbit of u.

    A vector whose forward endpoint is finite is first moved to (i, inf) and
    the sequence conjugated accordingly.

    Raises:
        ConditionOneFailed: when ``strict`` and gamma_n(inf) stays away from
            alpha(inf) in the chordal metric.
    """
    if boundary_tol is None:
        boundary_tol = settings.boundary_tol
    t = standard_conjugator(u)
    alpha_c = conjugate(alpha, t)
    ns = list(n_range)
    elements = [conjugate(seq(n), t) for n in ns]
    target_point = apply(alpha_c, INF)
    images = [apply(m, INF) for m in elements]
    gaps = [chordal(p, target_point) for p in images]
    base_value = busemann_inverse_i(alpha_c)
    values = [busemann_inverse_i(m) - base_value for m in elements]
    has_identity = any(classify(m) is Classification.IDENTITY for m in elements)
    distinct = len({element_key(m) for m in elements}) == len(elements)
    last = images[-1]
    result = TunvResult(
        ns=ns, chordal_gaps=gaps, values=values,
        condition_one=gaps[-1] < boundary_tol,
        distinct=distinct, has_identity=has_identity, boundary_tol=boundary_tol,
        last_image=None if last.infinite else last.value,
    )
    if result.degenerate:
        logger.warning("Sequence is degenerate: identity=%s distinct=%s", has_identity, distinct)
    if strict and not result.condition_one:
        raise ConditionOneFailed(
            f"gamma_n(inf) does not approach alpha(inf): chordal gap {gaps[-1]:.6g}",
            last_image=result.last_image,
        )
    return result


def recurrence_test(
    u: UnitTangent,
    seq: Callable[[int], MoebiusTransform],
    n_range: Sequence[int],
    boundary_tol: Optional[float] = None,
) -> tuple[bool, TunvResult]:
    """Recurrence: the tunv test with alpha the identity and target t = 0."""
    result = tunv_test(
        u, MoebiusTransform.identity(), seq, n_range, boundary_tol=boundary_tol, strict=False
    )
    return result.passes(0.0), result
