"""
Command implementations for build, verify, limits, scan, profile and render.

Each command takes a validated ExperimentConfig and returns the JSON report
model plus the exit code it earned. Library errors propagate to the entry
point, which maps them to exit codes.
"""

import logging
from dataclasses import dataclass
from typing import Callable

from pydantic import BaseModel

from flutelab.dynamics.flows import UnitTangent
from flutelab.dynamics.thinness import quasi_minimizing_estimate, thinness_profile
from flutelab.engine.suite import run_suite
from flutelab.errors import EXIT_OK, EXIT_VERIFICATION, ConfigError
from flutelab.geometry.moebius import apply, classify, translation_length
from flutelab.geometry.plane import INF, I, PlanePoint, boundary
from flutelab.models.enums import Classification, FluteKind
from flutelab.models.experiment import ExperimentConfig, SurfaceSection
from flutelab.models.reports import (
    BuildReport,
    CheckRow,
    GeneratorRow,
    LimitReport,
    LimitRow,
    MarginRow,
    ProfileModel,
    RenderModel,
    SemigroupRow,
    SuiteModel,
    SweepModel,
    candidate_model,
    scan_model,
)
from flutelab.orbits.criteria import busemann_along_words
from flutelab.orbits.scan import (
    DEFAULT_WINDOWS,
    alpha_witnesses,
    evaluate_ball,
    power_tower_witnesses,
    semigroup_consistency,
    tu_scan,
    window_sweep,
)
from flutelab.render.svg import build_scene, write_svg
from flutelab.surfaces.checks import check_schottky
from flutelab.surfaces.flute import (
    GroupTruncation,
    TwistedDeltaParams,
    UntwistedFluteParams,
    build_twisted_delta,
    build_untwisted,
)

logger = logging.getLogger("flutelab.cli")

SCAN_VECTOR = UnitTangent(I, INF)


@dataclass
class CommandResult:
    report: BaseModel
    exit_code: int = EXIT_OK


def build_truncation(surface: SurfaceSection) -> GroupTruncation:
    if surface.kind is FluteKind.TWISTED_DELTA:
        return build_twisted_delta(TwistedDeltaParams(delta=surface.delta, count=surface.count))
    params = UntwistedFluteParams.from_schedule(
        surface.schedule, surface.count, surface.schedule_overrides()
    )
    return build_untwisted(params)


def _generator_rows(g: GroupTruncation) -> list[GeneratorRow]:
    steps = {s.n: s for s in g.trace.steps} if g.trace is not None else {}
    rows = []
    for i, (label, m) in enumerate(zip(g.labels, g.generators)):
        step = steps.get(label)
        hyperbolic = classify(m) is Classification.HYPERBOLIC
        image = apply(m, INF)
        rows.append(GeneratorRow(
            label=label,
            p=g.p_sequence[i] if g.p_sequence else None,
            xi=step.xi if step else None,
            eps=step.eps if step else None,
            center=step.X if step else None,
            radius=step.R if step else None,
            abs_trace=step.abs_trace if step else None,
            log_abs_trace=m.log_abs_trace,
            translation_length=translation_length(m) if hyperbolic else 0.0,
            image_of_infinity=None if image.infinite else image.value,
        ))
    return rows


def cmd_build(cfg: ExperimentConfig) -> CommandResult:
    g = build_truncation(cfg.surface)
    schottky = check_schottky(g)
    report = BuildReport(
        kind=g.kind.value,
        count=g.count,
        schedule=cfg.surface.schedule if g.kind is FluteKind.UNTWISTED else None,
        delta=g.delta,
        p_sequence=g.p_sequence,
        n0=g.trace.trace_threshold_index() if g.trace is not None else None,
        schottky_passed=schottky.passed,
        min_margin=schottky.min_margin,
        margins=[MarginRow(first=m.first, second=m.second, margin=m.margin)
                 for m in schottky.margins],
        generators=_generator_rows(g),
    )
    return CommandResult(report, EXIT_OK if schottky.passed else EXIT_VERIFICATION)


def cmd_verify(cfg: ExperimentConfig) -> CommandResult:
    g = build_truncation(cfg.surface)
    suite = run_suite(g)
    report = SuiteModel(
        suite=suite.suite,
        kind=suite.kind,
        count=suite.count,
        passed=suite.passed,
        passed_count=suite.passed_count,
        failed_count=suite.failed_count,
        warned_count=suite.warned_count,
        failure_breakdown=suite.failure_breakdown,
        checks=[CheckRow(check=r.check, status=r.status.value, details=r.details)
                for r in suite.records],
    )
    return CommandResult(report, EXIT_OK if suite.passed else EXIT_VERIFICATION)


def _require_delta(cfg: ExperimentConfig, command: str) -> float:
    if cfg.surface.kind is not FluteKind.TWISTED_DELTA:
        raise ConfigError(f"{command} needs surface.kind = twisted-delta")
    return cfg.surface.delta


def cmd_limits(cfg: ExperimentConfig) -> CommandResult:
    delta = _require_delta(cfg, "limits")
    limits = cfg.limits
    n_range = range(limits.n_min, limits.n_max + 1)
    rows = []
    for k in range(limits.k_max + 1):
        est = busemann_along_words(k, n_range, delta)
        rows.append(LimitRow(
            k=k, delta=delta, ns=est.ns, values=est.values, tail=est.tail,
            target=est.target, error=est.error, non_convergent=est.non_convergent,
        ))
    return CommandResult(LimitReport(delta=delta, rows=rows))


def cmd_scan(cfg: ExperimentConfig) -> CommandResult:
    scan = cfg.scan
    u = SCAN_VECTOR
    if scan.words == "power-tower":
        delta = _require_delta(cfg, "scan with words = power-tower")
        g = build_twisted_delta(TwistedDeltaParams(delta=delta, count=cfg.surface.count))
        evaluated = power_tower_witnesses(u, delta, scan.n_max, scan.k_max)
    else:
        g = build_truncation(cfg.surface)
        evaluated = evaluate_ball(u, g, scan.word_radius)
        if scan.alpha_radius > 0:
            evaluated += alpha_witnesses(u, g, scan.word_radius, scan.alpha_radius)
    options = dict(
        cluster_epsilon=scan.cluster_epsilon,
        min_witnesses=scan.min_witnesses,
        coefficient_bound=scan.coefficient_bound,
        evaluated=evaluated,
    )
    if not scan.sweep:
        report = tu_scan(u, g, scan.word_radius, scan.boundary_window, **options)
        return CommandResult(scan_model(report))
    sweep = window_sweep(u, g, scan.word_radius, DEFAULT_WINDOWS, **options)
    checks = semigroup_consistency(sweep.stable, scan.cluster_epsilon)
    model = SweepModel(
        windows=sweep.windows,
        soundness=sweep.soundness,
        scans=[scan_model(r) for r in sweep.reports],
        stable=[candidate_model(c) for c in sweep.stable],
        stable_nonzero=[c.t for c in sweep.stable_nonzero()],
        semigroup=[SemigroupRow(first=c.first, second=c.second, total=c.total, found=c.found)
                   for c in checks],
    )
    return CommandResult(model)


def cmd_profile(cfg: ExperimentConfig) -> CommandResult:
    p = cfg.profile
    g = build_truncation(cfg.surface)
    forward = INF if p.forward is None else boundary(p.forward)
    u = UnitTangent(PlanePoint(p.base_x, p.base_y), forward)
    profile = thinness_profile(u, g, p.t_max, p.steps, p.word_radius)
    estimate = quasi_minimizing_estimate(u, g, p.t_max, p.steps, p.word_radius)
    return CommandResult(ProfileModel(
        times=profile.times,
        inj=profile.inj,
        word_radius=profile.word_radius,
        gen_count=profile.gen_count,
        running_min_tail=profile.running_min_tail,
        last_quartile_min=profile.last_quartile_min,
        quasi_minimizing_constant=estimate.constant,
        grows_linearly=estimate.grows_linearly,
    ))


def cmd_render(cfg: ExperimentConfig) -> CommandResult:
    out = cfg.output
    if not out.svg_path:
        raise ConfigError("render needs output.svg_path")
    g = build_truncation(cfg.surface)
    scene = build_scene(g, out.svg_width, out.svg_height, fit_count=out.svg_fit)
    write_svg(scene, out.svg_path)
    logger.info("Wrote %s", out.svg_path)
    return CommandResult(RenderModel(
        svg_path=out.svg_path, primitives=len(scene.primitives),
        window=[scene.x_min, scene.x_max],
    ))


COMMANDS: dict[str, Callable[[ExperimentConfig], CommandResult]] = {
    "build": cmd_build,
    "verify": cmd_verify,
    "limits": cmd_limits,
    "scan": cmd_scan,
    "profile": cmd_profile,
    "render": cmd_render,
}
