"""Experiment configuration: the validated form of a config file plus overrides."""

from typing import Literal, Optional

from pydantic import BaseModel, Field, ValidationInfo, field_validator, model_validator

from flutelab.config import settings
from flutelab.models.enums import FluteKind
from flutelab.surfaces.schedules import DEFAULT_SCHEDULE, SCHEDULES


class SurfaceSection(BaseModel):
    kind: FluteKind = FluteKind.UNTWISTED
    count: int = Field(default=8, ge=0)
    delta: Optional[float] = None
    schedule: str = DEFAULT_SCHEDULE
    xi_base: Optional[float] = Field(default=None, gt=1)
    eps_base: Optional[float] = Field(default=None, gt=1)

    model_config = {"extra": "forbid"}

    @field_validator("delta")
    @classmethod
    def delta_above_one(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not v > 1:
            raise ValueError(f"delta > 1 required, got delta = {v}")
        return v

    @field_validator("schedule")
    @classmethod
    def known_schedule(cls, v: str) -> str:
        if v not in SCHEDULES:
            raise ValueError(f"unknown schedule {v!r} (known: {', '.join(sorted(SCHEDULES))})")
        return v

    @model_validator(mode="after")
    def delta_for_twisted(self) -> "SurfaceSection":
        if self.kind is FluteKind.TWISTED_DELTA and self.delta is None:
            raise ValueError("kind = twisted-delta needs delta > 1")
        return self

    def schedule_overrides(self) -> dict[str, float]:
        out = {}
        if self.xi_base is not None:
            out["xi_base"] = self.xi_base
        if self.eps_base is not None:
            out["eps_base"] = self.eps_base
        return out


class ScanSection(BaseModel):
    word_radius: int = Field(default=3, gt=0)
    boundary_window: float = Field(default=1e3, gt=1)
    cluster_epsilon: float = Field(default_factory=lambda: settings.cluster_epsilon, gt=0)
    min_witnesses: int = Field(default_factory=lambda: settings.min_witnesses, gt=0)
    coefficient_bound: float = Field(default=1.0, gt=0)
    alpha_radius: int = Field(default=0, ge=0)
    sweep: bool = True
    words: Literal["ball", "power-tower"] = "ball"
    n_max: int = Field(default=14, gt=0)
    k_max: int = Field(default=3, ge=0)

    model_config = {"extra": "forbid"}


class ProfileSection(BaseModel):
    t_max: float = Field(default=12.0, gt=0)
    steps: int = Field(default=13, ge=2)
    word_radius: int = Field(default=2, gt=0)
    base_x: float = 0.0
    base_y: float = Field(default=1.0, gt=0)
    forward: Optional[float] = None  # None points at infinity

    model_config = {"extra": "forbid"}


class LimitsSection(BaseModel):
    k_max: int = Field(default=3, ge=0)
    n_min: int = Field(default=5, gt=0)
    n_max: int = Field(default=20, gt=0)

    model_config = {"extra": "forbid"}

    @field_validator("n_max")
    @classmethod
    def range_nonempty(cls, v: int, info: ValidationInfo) -> int:
        n_min = info.data.get("n_min")
        if n_min is not None and v < n_min + 2:
            raise ValueError(f"n_max must be at least n_min + 2, got {v} < {n_min} + 2")
        return v


class OutputSection(BaseModel):
    json_path: Optional[str] = None
    svg_path: Optional[str] = None
    svg_width: int = Field(default=800, gt=0)
    svg_height: int = Field(default=400, gt=0)
    svg_fit: int = Field(default=1, ge=0)  # generators framing the window, 0 for all

    model_config = {"extra": "forbid"}


class ExperimentConfig(BaseModel):
    surface: SurfaceSection = Field(default_factory=SurfaceSection)
    scan: ScanSection = Field(default_factory=ScanSection)
    profile: ProfileSection = Field(default_factory=ProfileSection)
    limits: LimitsSection = Field(default_factory=LimitsSection)
    output: OutputSection = Field(default_factory=OutputSection)

    model_config = {"extra": "forbid"}
