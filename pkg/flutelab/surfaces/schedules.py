"""
Parameter schedules for the untwisted flute.

A schedule gives the ray endpoints xi_n (increasing to infinity) and the
Busemann offsets eps_n (decreasing to 0) for n = 1, 2, ...

Consecutive bisector circles are externally disjoint roughly when
xi_(n+1) > 4 xi_n / eps_n, so a schedule whose xi grows only geometrically
while eps shrinks geometrically fails the ping-pong check between the first
two generators. ``triangular`` grows xi superexponentially and is the default.
"""

from dataclasses import dataclass, field
from typing import Callable

from flutelab.errors import ConfigError

ScheduleFn = Callable[[int, dict[str, float]], float]


@dataclass(frozen=True)
class Schedule:
    """A named (xi_n, eps_n) family with default parameters."""

    name: str
    xi: ScheduleFn
    eps: ScheduleFn
    defaults: dict[str, float] = field(default_factory=dict)
    description: str = ""


SCHEDULES: dict[str, Schedule] = {
    # 4^(n(n+1)/2) and 2^-n by default; margins stay positive through N = 8
    "triangular": Schedule(
        name="triangular",
        xi=lambda n, p: p["xi_base"] ** (n * (n + 1) / 2),
        eps=lambda n, p: p["eps_base"] ** (-n),
        defaults={"xi_base": 4.0, "eps_base": 2.0},
        description="xi_n = xi_base^(n(n+1)/2), eps_n = eps_base^-n",
    ),
    # circles C_1 and C_2 overlap for the default bases
    "geometric": Schedule(
        name="geometric",
        xi=lambda n, p: p["xi_base"] ** n,
        eps=lambda n, p: p["eps_base"] ** (-n),
        defaults={"xi_base": 4.0, "eps_base": 4.0},
        description="xi_n = xi_base^n, eps_n = eps_base^-n",
    ),
}

DEFAULT_SCHEDULE = "triangular"


def get_schedule(name: str) -> Schedule:
    """Look up a schedule by name; unknown names are configuration errors."""
    try:
        return SCHEDULES[name]
    except KeyError:
        known = ", ".join(sorted(SCHEDULES))
        raise ConfigError(f"unknown schedule {name!r} (known: {known})") from None


def sample(
    name: str, count: int, overrides: dict[str, float] | None = None
) -> tuple[list[float], list[float]]:
    """The first ``count`` values of (xi_n, eps_n) for a named schedule."""
    schedule = get_schedule(name)
    params = {**schedule.defaults, **(overrides or {})}
    for key, value in params.items():
        if value <= 1:
            raise ConfigError(f"schedule parameter {key} must be > 1, got {value}")
    xs = [schedule.xi(n, params) for n in range(1, count + 1)]
    es = [schedule.eps(n, params) for n in range(1, count + 1)]
    return xs, es
