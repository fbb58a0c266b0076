"""
Verification suite runner, the execution engine behind ``flutelab verify``.

Runs every invariant check on one built truncation. The flow:

  1. Group checks (determinant, hyperbolicity, ping-pong circles, nestedness)
  2. The coefficient relation against a candidate common orthogonal
     (expected to hold for the untwisted flute and to fail for the delta family)
  3. Construction checks for the kind of truncation:
       - untwisted: gamma_n^-1 i = p_n, Busemann offsets, axis endpoints,
         trace threshold, monotone f_n(inf), alpha_n and translation lengths
       - delta family: exact determinants and coefficient trends
  4. Trail entry per check, and a summary with categorized counts

Every claim is about the first N generators; the report states N.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional

from flutelab.audit.logger import CheckRecord, CheckTrail
from flutelab.geometry.moebius import apply, classify, fixed_points, invert, translation_length
from flutelab.geometry.plane import INF, I, Geodesic, busemann
from flutelab.models.enums import CheckStatus, Classification, FluteKind
from flutelab.surfaces.checks import check_nested, check_schottky, check_untwisted
from flutelab.surfaces.flute import GroupTruncation, coefficient_det, h_coefficients

logger = logging.getLogger("flutelab.engine")

DET_TOL = 1e-12
IMAGE_TOL = 1e-10
OFFSET_TOL = 1e-12
PRODUCT_TOL = 1e-9
DEFAULT_ORTHOGONAL = Geodesic.between(-1.0, 1.0)

Outcome = tuple[bool, dict]


@dataclass
class SuiteReport:
    suite: str
    kind: str
    count: int
    passed_count: int = 0
    failed_count: int = 0
    warned_count: int = 0
    failure_breakdown: dict[str, int] = field(default_factory=dict)
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed_count == 0


def _strictly_increasing(xs: list[float]) -> bool:
    return all(b > a for a, b in zip(xs, xs[1:]))


def _strictly_decreasing(xs: list[float]) -> bool:
    return all(b < a for a, b in zip(xs, xs[1:]))


def _det_one(g: GroupTruncation) -> Outcome:
    if g.kind is FluteKind.TWISTED_DELTA:
        # exact rational coefficients; float entries lose the cancellation in ad - bc
        worst = max(abs(float(coefficient_det(p, g.delta)) - 1.0) for p in g.p_sequence)
    else:
        worst = max(abs(m.det - 1.0) for m in g.generators)
    return worst < DET_TOL, {"max_det_error": worst}


def _hyperbolic(g: GroupTruncation) -> Outcome:
    kinds = [classify(m) for m in g.generators]
    bad = [label for label, k in zip(g.labels, kinds) if k is not Classification.HYPERBOLIC]
    return not bad, {"non_hyperbolic": bad}


def _schottky(g: GroupTruncation) -> Outcome:
    report = check_schottky(g)
    return report.passed, {"circles": report.circles, "min_margin": report.min_margin}


def _nested(g: GroupTruncation) -> Outcome:
    report = check_nested(g)
    return report.passed, {"interlaced_pairs": report.interlaced_pairs}


def _relation(g: GroupTruncation, orthogonal: Geodesic) -> Outcome:
    report = check_untwisted(g, orthogonal)
    expected = g.kind is FluteKind.UNTWISTED
    e2 = None if orthogonal.e2.infinite else orthogonal.e2.value
    return report.passed == expected, {
        "orthogonal": [orthogonal.e1.value, e2],
        "case": report.case.value,
        "max_residual": report.max_residual,
        "expected_untwisted": expected,
    }


def _inverse_image(g: GroupTruncation) -> Outcome:
    worst = 0.0
    for step in g.trace.steps:
        z = apply(invert(step.f), I)
        err = max(abs(z.x - step.p.x) / max(1.0, abs(step.p.x)), abs(z.y - step.p.y) / step.p.y)
        worst = max(worst, err)
    return worst < IMAGE_TOL, {"max_relative_error": worst}


def _offsets(g: GroupTruncation) -> Outcome:
    worst = max(abs(busemann(INF, s.p, I) - s.eps) for s in g.trace.steps)
    return worst < OFFSET_TOL, {"max_offset_error": worst}


def _axis_product(g: GroupTruncation) -> Outcome:
    worst = 0.0
    for m in g.generators:
        r, a = fixed_points(m)
        worst = max(worst, abs(r.value * a.value - 1.0))
    return worst < PRODUCT_TOL, {"max_product_error": worst}


def _trace_threshold(g: GroupTruncation) -> Outcome:
    n0 = g.trace.trace_threshold_index()
    traces = [s.abs_trace for s in g.trace.steps]
    return n0 is not None, {"n0": n0, "abs_traces": traces}


def _image_of_infinity(g: GroupTruncation) -> Outcome:
    values = [apply(m, INF).value for m in g.generators]
    return _strictly_decreasing(values), {"last": values[-1]}


def _alpha_growth(g: GroupTruncation) -> Outcome:
    alphas = [s.alpha for s in g.trace.steps]
    return _strictly_increasing(alphas), {"first": alphas[0], "last": alphas[-1]}


def _lengths(g: GroupTruncation) -> Outcome:
    lengths = [translation_length(m) for m in g.generators]
    return _strictly_increasing(lengths), {"lengths": lengths}


def _coefficient_trends(g: GroupTruncation) -> Outcome:
    coeffs = [h_coefficients(p, g.delta) for p in g.p_sequence]
    a_gap = [float(abs(a - g.delta)) for a, _, _, _ in coeffs]
    c = [float(c) for _, _, c, _ in coeffs]
    ok = all(b <= a for a, b in zip(a_gap, a_gap[1:])) and _strictly_decreasing(c)
    return ok, {"last_a_gap": a_gap[-1], "last_c": c[-1]}


CheckFn = Callable[[GroupTruncation], Outcome]

GROUP_CHECKS: dict[str, CheckFn] = {
    "det_one": _det_one,
    "hyperbolic": _hyperbolic,
    "schottky": _schottky,
    "nested": _nested,
}

KIND_CHECKS: dict[FluteKind, dict[str, CheckFn]] = {
    FluteKind.UNTWISTED: {
        "inverse_image_of_i": _inverse_image,
        "busemann_offsets": _offsets,
        "axis_endpoint_product": _axis_product,
        "trace_threshold": _trace_threshold,
        "image_of_infinity": _image_of_infinity,
        "alpha_growth": _alpha_growth,
        "translation_lengths": _lengths,
    },
    FluteKind.TWISTED_DELTA: {
        "coefficient_trends": _coefficient_trends,
    },
}


def run_suite(
    g: GroupTruncation,
    suite: Optional[str] = None,
    orthogonal: Geodesic = DEFAULT_ORTHOGONAL,
) -> SuiteReport:
    """
    Run every check that applies to the truncation.

    Args:
        g: The built truncation.
        suite: Name used in the trail; defaults to the truncation kind.
        orthogonal: Candidate common orthogonal for the coefficient relation.

    Returns:
        A SuiteReport with categorized counts and the ordered check trail.
    """
    name = suite or g.kind.value
    trail = CheckTrail(name)
    logger.info("Suite %s: checking N=%d generators (%s)", name, g.count, g.kind.value)

    if g.count == 0:
        trail.record("empty_truncation", CheckStatus.WARN, {"count": 0})
    else:
        checks: dict[str, Callable[[GroupTruncation], Outcome]] = dict(GROUP_CHECKS)
        checks["coefficient_relation"] = lambda t: _relation(t, orthogonal)
        if g.kind is FluteKind.UNTWISTED and g.trace is None:
            trail.record("construction_trace", CheckStatus.WARN, {"reason": "no trace attached"})
        else:
            checks.update(KIND_CHECKS[g.kind])
        for check, fn in checks.items():
            try:
                ok, details = fn(g)
            except Exception as e:  # recorded as a failure
                ok, details = False, {"error": f"{type(e).__name__}: {e}"}
            trail.record(check, CheckStatus.PASS if ok else CheckStatus.FAIL, details)

    statuses = Counter(r.status for r in trail.records)
    failures: Counter[str] = Counter(
        r.check for r in trail.records if r.status is CheckStatus.FAIL
    )
    report = SuiteReport(
        suite=name,
        kind=g.kind.value,
        count=g.count,
        passed_count=statuses[CheckStatus.PASS],
        failed_count=statuses[CheckStatus.FAIL],
        warned_count=statuses[CheckStatus.WARN],
        failure_breakdown=dict(failures),
        records=list(trail.records),
    )
    logger.info(
        "Suite %s summary: passed=%d, failed=%d (%s), warned=%d",
        name,
        report.passed_count,
        report.failed_count,
        ", ".join(f"{k}={v}" for k, v in failures.items()) or "none",
        report.warned_count,
    )
    return report
