"""
Exception hierarchy for flutelab.

Every error carries the process exit code the CLI should use when it
escapes a command:
  - 1: configuration errors (bad file, unknown key, violated precondition)
  - 2: geometric degeneracy or failed verification
  - 3: I/O errors while writing reports or figures

Library code raises; only the CLI turns these into exit codes.
"""

from typing import Optional

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFICATION = 2
EXIT_OUTPUT = 3


class FluteLabError(Exception):
    """Base exception for flutelab errors."""

    def __init__(self, message: str, exit_code: int = EXIT_VERIFICATION):
        super().__init__(message)
        self.exit_code = exit_code


class GeometryError(FluteLabError):
    """A geometric construction has no (or no unique) answer."""


class DegenerateInput(GeometryError):
    """Coincident points or otherwise degenerate arguments."""


class NotIntersecting(GeometryError):
    """Two geodesics are disjoint or equal where an intersection was required."""


class Interlaced(GeometryError):
    """Endpoints of two geodesics separate each other (the geodesics cross)."""


class SharedEndpoint(GeometryError):
    """Two geodesics are asymptotic (share a boundary endpoint)."""


class NotHyperbolic(GeometryError):
    """Angle data does not describe a hyperbolic polygon."""


class EllipticNoLength(GeometryError):
    """Translation length requested for an elliptic transformation."""


class EllipticFixedPointsComplex(GeometryError):
    """Fixed points of an elliptic transformation lie off the boundary."""


class DegenerateImage(GeometryError):
    """A circle reflects to a line (the circle passes through the mirror's center)."""


class FixedBasepoint(GeometryError):
    """The transformation fixes the basepoint, so the bisector is undefined."""


class DegenerateFoot(GeometryError):
    """The orthogonal foot geodesic collapses to a single boundary point."""


class ConditionOneFailed(GeometryError):
    """gamma_n applied to the forward endpoint does not approach the target."""

    def __init__(self, message: str, last_image: Optional[float] = None):
        super().__init__(message)
        self.last_image = last_image


class SchottkyViolation(FluteLabError):
    """Two bisector circles of a truncation are not externally disjoint."""

    def __init__(self, n: int, k: int, margin: float, detail: str = ""):
        message = f"bisector circles of generators {n} and {k} overlap (margin={margin:.6g})"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message, exit_code=EXIT_VERIFICATION)
        self.n = n
        self.k = k
        self.margin = margin


class ConfigError(FluteLabError):
    """Malformed or invalid experiment configuration."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message, exit_code=EXIT_CONFIG)
        self.line = line
        self.column = column


class OutputError(FluteLabError):
    """Writing a report or figure failed."""

    def __init__(self, message: str):
        super().__init__(message, exit_code=EXIT_OUTPUT)
