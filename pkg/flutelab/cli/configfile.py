"""
Experiment config files.

Grammar (UTF-8, one statement per line):

    line     := blank | comment | header | entry
    comment  := ("#" | ";") any*
    header   := "[" name "]"
    entry    := key ws* "=" ws* value
    key      := [a-z_][a-z0-9_]*
    value    := any non-empty text, surrounding whitespace stripped

Sections are surface, scan, profile, limits and output. Every error names
the line and column it was found at; values are typed by ExperimentConfig,
whose validation errors are mapped back to the position of the offending
value. ``--set section.key=value`` overrides are applied after the file.
"""

import re
from dataclasses import dataclass, field
from typing import Optional

from pydantic import ValidationError

from flutelab.errors import ConfigError
from flutelab.models.experiment import ExperimentConfig

SECTIONS = ("surface", "scan", "profile", "limits", "output")
KEY_RE = re.compile(r"[a-z_][a-z0-9_]*\Z")

Position = tuple[Optional[int], Optional[int]]


@dataclass
class ConfigDocument:
    values: dict[str, dict[str, str]] = field(default_factory=dict)
    positions: dict[tuple[str, str], Position] = field(default_factory=dict)

    def set(self, section: str, key: str, value: str, position: Position) -> None:
        self.values.setdefault(section, {})[key] = value
        self.positions[(section, key)] = position


def parse_config(text: str) -> ConfigDocument:
    """
    Parse config text into raw string values.

    Raises:
        ConfigError: with the 1-based line and column of the first problem.
    """
    doc = ConfigDocument()
    section: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        indent = len(raw) - len(raw.lstrip())
        if not stripped or stripped[0] in "#;":
            continue
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ConfigError("unterminated section header", lineno, indent + 1)
            name = stripped[1:-1].strip()
            if name not in SECTIONS:
                raise ConfigError(
                    f"unknown section [{name}] (known: {', '.join(SECTIONS)})", lineno, indent + 2
                )
            section = name
            continue
        if "=" not in stripped:
            raise ConfigError("expected 'key = value'", lineno, indent + 1)
        key_part, _, value_part = raw.partition("=")
        key = key_part.strip()
        value = value_part.strip()
        value_col = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        if section is None:
            raise ConfigError(f"key {key!r} outside any section", lineno, indent + 1)
        if not KEY_RE.match(key):
            raise ConfigError(f"invalid key {key!r}", lineno, indent + 1)
        if (section, key) in doc.positions:
            raise ConfigError(f"duplicate key {section}.{key}", lineno, indent + 1)
        if not value:
            raise ConfigError(f"missing value for {section}.{key}", lineno, value_col)
        doc.set(section, key, value, (lineno, value_col))
    return doc


def read_config(path: str) -> ConfigDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    return parse_config(text)


def apply_override(doc: ConfigDocument, assignment: str) -> None:
    """Apply ``section.key=value`` on top of the parsed file."""
    target, sep, value = assignment.partition("=")
    section, dot, key = target.strip().partition(".")
    if not sep or not dot or not value.strip():
        raise ConfigError(f"--set expects section.key=value, got {assignment!r}")
    if section not in SECTIONS:
        raise ConfigError(f"--set {assignment!r}: unknown section {section!r}")
    if not KEY_RE.match(key):
        raise ConfigError(f"--set {assignment!r}: invalid key {key!r}")
    doc.set(section, key, value.strip(), (None, None))


def to_experiment(doc: ConfigDocument) -> ExperimentConfig:
    """
    Validate raw values into an ExperimentConfig.

    Raises:
        ConfigError: for unknown keys or invalid values, positioned at the value.
    """
    try:
        return ExperimentConfig.model_validate(doc.values)
    except ValidationError as e:
        err = e.errors()[0]
        loc = tuple(str(p) for p in err["loc"])
        line, column = doc.positions.get(loc[:2], (None, None)) if len(loc) >= 2 else (None, None)
        where = ".".join(loc) or "config"
        message = err["msg"].removeprefix("Value error, ")
        raise ConfigError(f"{where}: {message}", line, column) from None


def load_experiment(path: Optional[str], overrides: list[str]) -> ExperimentConfig:
    doc = read_config(path) if path else ConfigDocument()
    for assignment in overrides:
        apply_override(doc, assignment)
    return to_experiment(doc)
