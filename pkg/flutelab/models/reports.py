"""
JSON report models for the CLI.

Each command's result is validated into one of these models (read from the
library dataclasses by attribute) and written with ``to_json``: camelCase
keys, floats at 17 significant digits, non-finite floats as null. Writing a
re-read report gives the same bytes.
"""

import json
import math
from typing import Any, Optional

from pydantic import BaseModel
from pydantic.alias_generators import to_camel

INDENT = "  "


class ReportModel(BaseModel):
    model_config = {"from_attributes": True, "alias_generator": to_camel, "populate_by_name": True}


class MarginRow(ReportModel):
    first: str
    second: str
    margin: float


class GeneratorRow(ReportModel):
    label: int
    p: Optional[int] = None
    xi: Optional[float] = None
    eps: Optional[float] = None
    center: Optional[float] = None
    radius: Optional[float] = None
    abs_trace: Optional[float] = None
    log_abs_trace: float
    translation_length: float
    image_of_infinity: Optional[float] = None


class BuildReport(ReportModel):
    kind: str
    count: int
    schedule: Optional[str] = None
    delta: Optional[float] = None
    p_sequence: list[int] = []
    n0: Optional[int] = None
    schottky_passed: bool
    min_margin: Optional[float] = None
    margins: list[MarginRow] = []
    generators: list[GeneratorRow] = []


class CheckRow(ReportModel):
    check: str
    status: str
    details: dict[str, Any] = {}


class SuiteModel(ReportModel):
    suite: str
    kind: str
    count: int
    passed: bool
    passed_count: int
    failed_count: int
    warned_count: int
    failure_breakdown: dict[str, int] = {}
    checks: list[CheckRow] = []


class LimitRow(ReportModel):
    k: int
    delta: float
    ns: list[int]
    values: list[float]
    tail: float
    target: float
    error: float
    non_convergent: bool


class LimitReport(ReportModel):
    delta: float
    rows: list[LimitRow] = []


class Diagnostics(ReportModel):
    case: str
    residuals: dict[str, float]
    coeff_tails: list[float]


class CandidateModel(ReportModel):
    t: float
    spread: float
    witness_words: list[str]
    diagnostics: Diagnostics


class ScanModel(ReportModel):
    word_radius: int
    boundary_window: float
    cluster_epsilon: float
    min_witnesses: int
    coefficient_bound: float
    count: int
    witness_count: int
    soundness: str
    candidates: list[CandidateModel] = []


class SemigroupRow(ReportModel):
    first: float
    second: float
    total: float
    found: bool


class SweepModel(ReportModel):
    windows: list[float]
    soundness: str
    scans: list[ScanModel] = []
    stable: list[CandidateModel] = []
    stable_nonzero: list[float] = []
    semigroup: list[SemigroupRow] = []


class ProfileModel(ReportModel):
    times: list[float]
    inj: list[float]
    word_radius: int
    gen_count: int
    running_min_tail: list[float]
    last_quartile_min: float
    quasi_minimizing_constant: Optional[float] = None
    grows_linearly: Optional[bool] = None


class RenderModel(ReportModel):
    svg_path: str
    primitives: int
    window: list[float]


def candidate_model(c) -> CandidateModel:
    """Scan candidate to its JSON shape (witnesses are listed as words)."""
    return CandidateModel(
        t=c.t,
        spread=c.spread,
        witness_words=list(c.witnesses),
        diagnostics=Diagnostics(
            case=c.diagnostics.case.value,
            residuals=c.diagnostics.residuals,
            coeff_tails=list(c.diagnostics.tail_log_entries),
        ),
    )


def scan_model(report) -> ScanModel:
    return ScanModel(
        word_radius=report.word_radius,
        boundary_window=report.boundary_window,
        cluster_epsilon=report.cluster_epsilon,
        min_witnesses=report.min_witnesses,
        coefficient_bound=report.coefficient_bound,
        count=report.count,
        witness_count=report.witness_count,
        soundness=report.soundness,
        candidates=[candidate_model(c) for c in report.candidates],
    )


def _encode(value: Any, depth: int) -> str:
    pad = INDENT * (depth + 1)
    end = INDENT * depth
    if value is None or isinstance(value, bool):
        return "null" if value is None else ("true" if value else "false")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}" if math.isfinite(value) else "null"
    if isinstance(value, str):
        return _string(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{_string(str(k))}: {_encode(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_encode(v, depth + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _string(str(value))


def _string(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def to_json(data: Any) -> str:
    """Deterministic JSON text for a report model or plain data, newline-terminated."""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="python", by_alias=True)
    return _encode(data, 0) + "\n"
