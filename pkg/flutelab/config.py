"""Runtime configuration via environment variables (prefix ``FLUTELAB_``)."""

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    log_level: str = "INFO"
    boundary_tol: float = Field(default=1e-3, gt=0)  # chordal gap for condition (i)
    cluster_epsilon: float = 0.05
    min_witnesses: int = 3
    limit_tol: float = 1e-2  # tail-vs-target tolerance for limit tables

    model_config = {"env_prefix": "FLUTELAB_", "env_file": ".env", "env_file_encoding": "utf-8"}


settings = Settings()
