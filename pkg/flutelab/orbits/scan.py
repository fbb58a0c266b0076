"""
Candidate scan for T_u = {t : g_t u in the closure of h_R u}.

Flow for one scan:
  1. Evaluate every witness candidate gamma (a reduced word of the truncation,
     or an explicit list such as power towers) in the frame where u = (i, inf).
  2. Keep gamma when |gamma(inf)| > window and the lower-left unimodular
     coefficient satisfies |c| <= coefficient_bound. Along a sequence with
     gamma_n(inf) -> inf and bounded B, a^2 + c^2 = e^B forces c_n -> 0, so
     the bound separates such sequences from words whose Busemann value only
     grows with their boundary image.
  3. Cluster the values B_inf(gamma^-1 i, i) by single linkage at
     cluster_epsilon; keep clusters with at least min_witnesses members.
  4. Estimate each cluster's t by the witness with the largest |gamma(inf)|
     and attach coefficient diagnostics.

``window_sweep`` repeats steps 2-4 over several windows and marks the
clusters present at every window as stable. Results are candidates at the
given radius: neither complete nor certified.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from flutelab.config import settings
from flutelab.dynamics.flows import UnitTangent
from flutelab.geometry.moebius import MoebiusTransform, busemann_inverse_i, compose
from flutelab.models.enums import CoefficientCase
from flutelab.orbits.criteria import (
    PowerTower,
    conjugate,
    standard_conjugator,
    word_matrix,
)
from flutelab.surfaces.flute import GroupTruncation
from flutelab.surfaces.words import word_ball

logger = logging.getLogger("flutelab.orbits")

DEFAULT_WINDOWS = (1e2, 1e3, 1e4)
COEFFICIENT_BOUND = 1.0
CASE_TOL = 1.0
SOUNDNESS = "candidates at word radius {radius}: neither complete nor certified"


@dataclass(frozen=True)
class Witness:
    """One group element with its boundary image, Busemann value and entries."""

    label: str
    value: float
    log_image: float  # log |gamma(inf)|, inf when c = 0
    log_abs_c: float  # log |c| of the unimodular matrix, -inf when c = 0
    matrix: MoebiusTransform

    def unimodular_log_entries(self) -> tuple[float, float, float, float]:
        m = self.matrix
        return tuple(
            -math.inf if x == 0 else math.log(abs(x)) + m.log_scale for x in (m.a, m.b, m.c, m.d)
        )


def evaluate_witness(
    label: str, m: MoebiusTransform, frame: Optional[MoebiusTransform]
) -> Witness:
    m = conjugate(m, frame)
    if m.c == 0:
        log_image = math.inf
    elif m.a == 0:
        log_image = -math.inf
    else:
        log_image = math.log(abs(m.a)) - math.log(abs(m.c))
    log_abs_c = -math.inf if m.c == 0 else math.log(abs(m.c)) + m.log_scale
    return Witness(label, busemann_inverse_i(m), log_image, log_abs_c, m)


@dataclass
class CoefficientDiagnostic:
    """Which limit pattern the witnesses' entries resemble; descriptive only."""

    case: CoefficientCase
    residuals: dict[str, float]
    tail_log_entries: tuple[float, float, float, float]


@dataclass
class Candidate:
    t: float
    witnesses: list[str]
    spread: float
    values: list[float]
    diagnostics: CoefficientDiagnostic

    @property
    def size(self) -> int:
        return len(self.witnesses)


@dataclass
class ScanReport:
    word_radius: int
    boundary_window: float
    cluster_epsilon: float
    min_witnesses: int
    coefficient_bound: float
    count: int
    witness_count: int
    candidates: list[Candidate] = field(default_factory=list)

    @property
    def soundness(self) -> str:
        return SOUNDNESS.format(radius=self.word_radius)

    def nonzero(self, tol: Optional[float] = None) -> list[Candidate]:
        tol = self.cluster_epsilon if tol is None else tol
        return [c for c in self.candidates if abs(c.t) > tol]


def _mean_square(xs: Sequence[float]) -> float:
    return math.fsum(x * x for x in xs) / len(xs)


def _relative_spread(xs: Sequence[float]) -> float:
    """Variance over mean square: 0 for a constant, 1 for an all-zero or overflowing entry."""
    ms = _mean_square(xs)
    if ms == 0 or not math.isfinite(ms):
        return 1.0
    mean = math.fsum(xs) / len(xs)
    return max(0.0, 1.0 - mean * mean / ms)


def _entry(log_abs: float) -> float:
    return 0.0 if log_abs == -math.inf else math.exp(min(log_abs, 700.0))


def classify_coefficients(witnesses: Sequence[Witness]) -> CoefficientDiagnostic:
    """
    Compare the entries of the upper half of the witnesses (by |gamma(inf)|)
    against the three limit patterns:

      1. b -> 0, c -> 0, d -> d != 0
      2. c -> c != 0, d -> d != 0
      3. c -> c != 0, d -> 0

    Convergence to a nonzero limit is scored by the relative spread of the
    entry, so the residuals do not depend on the size of the limits.
    """
    ordered = sorted(witnesses, key=lambda w: w.log_image)
    tail = ordered[len(ordered) // 2:]
    logs = [w.unimodular_log_entries() for w in tail]
    b = [_entry(e[1]) for e in logs]
    c = [_entry(e[2]) for e in logs]
    d = [_entry(e[3]) for e in logs]
    c_square = _mean_square(c)
    d_over_c = (
        math.inf if c_square == 0 or not math.isfinite(c_square) else _mean_square(d) / c_square
    )
    residuals = {
        "case_1": _mean_square(b) + c_square + _relative_spread(d),
        "case_2": _relative_spread(c) + _relative_spread(d),
        "case_3": d_over_c + _relative_spread(c),
    }
    best = min(residuals, key=residuals.get)
    case = {
        "case_1": CoefficientCase.CASE_1,
        "case_2": CoefficientCase.CASE_2,
        "case_3": CoefficientCase.CASE_3,
    }[best]
    if not math.isfinite(residuals[best]) or residuals[best] > CASE_TOL:
        case = CoefficientCase.UNCLASSIFIED
    return CoefficientDiagnostic(case, residuals, logs[-1])


def single_linkage(values: Sequence[float], eps: float) -> list[list[int]]:
    """Indices grouped so that consecutive sorted values differ by <= eps."""
    order = sorted(range(len(values)), key=lambda i: (values[i], i))
    groups: list[list[int]] = []
    for idx in order:
        if groups and values[idx] - values[groups[-1][-1]] <= eps:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    return groups


def cluster_witnesses(
    witnesses: Sequence[Witness], eps: float, min_witnesses: int
) -> list[Candidate]:
    candidates = []
    for group in single_linkage([w.value for w in witnesses], eps):
        if len(group) < min_witnesses:
            continue
        members = [witnesses[i] for i in group]
        lead = max(members, key=lambda w: (w.log_image, w.label))
        values = [w.value for w in members]
        candidates.append(Candidate(
            t=lead.value,
            witnesses=[w.label for w in members],
            spread=max(values) - min(values),
            values=values,
            diagnostics=classify_coefficients(members),
        ))
    return sorted(candidates, key=lambda c: c.t)


def select_witnesses(
    evaluated: Sequence[Witness], window: float, coefficient_bound: float
) -> list[Witness]:
    log_window = math.log(window)
    log_bound = math.log(coefficient_bound)
    return [
        w for w in evaluated
        if w.log_image > log_window and w.log_abs_c <= log_bound
    ]


def evaluate_ball(u: UnitTangent, g: GroupTruncation, word_radius: int) -> list[Witness]:
    frame = standard_conjugator(u)
    return [
        evaluate_witness(str(word), m, frame)
        for word, m in word_ball(g, word_radius, include_identity=False)
    ]


def alpha_witnesses(
    u: UnitTangent, g: GroupTruncation, word_radius: int, alpha_radius: int
) -> list[Witness]:
    """
    Witnesses for a general alpha: gamma = alpha eta with eta(inf) escaping,
    valued at B_inf(gamma^-1 i, alpha^-1 i) = B(gamma) - B(alpha).
    """
    frame = standard_conjugator(u)
    etas = list(word_ball(g, word_radius, include_identity=False))
    out = []
    for alpha_word, alpha in word_ball(g, alpha_radius, include_identity=False):
        alpha_c = conjugate(alpha, frame)
        offset = busemann_inverse_i(alpha_c)
        for eta_word, eta in etas:
            w = evaluate_witness(f"{alpha_word} | {eta_word}", eta, frame)
            gamma = compose(alpha_c, w.matrix)
            out.append(Witness(
                w.label, busemann_inverse_i(gamma) - offset, w.log_image, w.log_abs_c, gamma,
            ))
    return out


def _scan(
    evaluated: Sequence[Witness], count: int, word_radius: int, window: float,
    eps: float, min_witnesses: int, coefficient_bound: float,
) -> ScanReport:
    selected = select_witnesses(evaluated, window, coefficient_bound)
    report = ScanReport(
        word_radius=word_radius, boundary_window=window, cluster_epsilon=eps,
        min_witnesses=min_witnesses, coefficient_bound=coefficient_bound,
        count=count, witness_count=len(selected),
        candidates=cluster_witnesses(selected, eps, min_witnesses),
    )
    logger.info(
        "T_u scan: N=%d radius=%d window=%g witnesses=%d clusters=%d",
        count, word_radius, window, len(selected), len(report.candidates),
    )
    return report


def tu_scan(
    u: UnitTangent,
    g: GroupTruncation,
    word_radius: int,
    boundary_window: float = 1e3,
    cluster_epsilon: Optional[float] = None,
    min_witnesses: Optional[int] = None,
    coefficient_bound: float = COEFFICIENT_BOUND,
    alpha_radius: int = 0,
    evaluated: Optional[Sequence[Witness]] = None,
) -> ScanReport:
    """Cluster Busemann values of witnesses beyond the boundary window."""
    eps = settings.cluster_epsilon if cluster_epsilon is None else cluster_epsilon
    minimum = settings.min_witnesses if min_witnesses is None else min_witnesses
    if evaluated is None:
        evaluated = evaluate_ball(u, g, word_radius)
        if alpha_radius > 0:
            evaluated = list(evaluated) + alpha_witnesses(u, g, word_radius, alpha_radius)
    return _scan(
        evaluated, g.count, word_radius, boundary_window, eps, minimum, coefficient_bound
    )


def power_tower_witnesses(
    u: UnitTangent, delta: float, n_max: int, k_max: int
) -> list[Witness]:
    """Witnesses restricted to the towers gamma_(n,k), 1 <= n <= n_max, 0 <= k <= k_max."""
    frame = standard_conjugator(u)
    return [
        evaluate_witness(str(PowerTower(n, k)), word_matrix(PowerTower(n, k), delta), frame)
        for k in range(k_max + 1)
        for n in range(1, n_max + 1)
    ]


@dataclass
class SweepReport:
    windows: list[float]
    reports: list[ScanReport]
    stable: list[Candidate]

    @property
    def soundness(self) -> str:
        return self.reports[0].soundness if self.reports else ""

    def stable_nonzero(self, tol: Optional[float] = None) -> list[Candidate]:
        if tol is None:
            tol = self.reports[0].cluster_epsilon if self.reports else 0.0
        return [c for c in self.stable if abs(c.t) > tol]


def window_sweep(
    u: UnitTangent,
    g: GroupTruncation,
    word_radius: int,
    windows: Sequence[float] = DEFAULT_WINDOWS,
    cluster_epsilon: Optional[float] = None,
    min_witnesses: Optional[int] = None,
    coefficient_bound: float = COEFFICIENT_BOUND,
    evaluated: Optional[Sequence[Witness]] = None,
) -> SweepReport:
    """
    Run the scan at each window; a cluster of the first window is stable when
    every later window has a cluster whose t is within cluster_epsilon.
    """
    if evaluated is None:
        evaluated = evaluate_ball(u, g, word_radius)
    reports = [
        tu_scan(
            u, g, word_radius, w, cluster_epsilon, min_witnesses, coefficient_bound,
            evaluated=evaluated,
        )
        for w in windows
    ]
    stable: list[Candidate] = []
    if reports:
        eps = reports[0].cluster_epsilon
        for cand in reports[0].candidates:
            if all(any(abs(o.t - cand.t) <= eps for o in r.candidates) for r in reports[1:]):
                stable.append(cand)
    logger.info("Window sweep %s: %d stable clusters", list(windows), len(stable))
    return SweepReport(list(windows), reports, stable)


@dataclass
class SemigroupCheck:
    first: float
    second: float
    total: float
    found: bool


def semigroup_consistency(candidates: Sequence[Candidate], eps: float) -> list[SemigroupCheck]:
    """
    For candidate pairs whose sum lies within the scanned range, whether the sum
    is itself a candidate. Reported only; a missing sum is not a failure.
    """
    ts = sorted(c.t for c in candidates)
    if not ts:
        return []
    top = ts[-1] + eps
    checks = []
    for i, s in enumerate(ts):
        for t in ts[i:]:
            total = s + t
            if total > top:
                continue
            found = any(abs(total - x) <= eps for x in ts)
            checks.append(SemigroupCheck(s, t, total, found))
    return checks
