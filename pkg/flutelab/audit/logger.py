"""
Append-only trail of verification checks.

Every check a suite runs gets one trail entry with:
  - Suite (which suite ran it, e.g. "untwisted-default")
  - Check (what was verified, e.g. "det_one", "schottky")
  - Status (pass, fail or warn)
  - Details (residuals, margins, counts)
  - Timestamp (UTC)

Entries are never modified once recorded, and each one is mirrored to the
``flutelab.audit`` logger as a single CHECK line.
"""

import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Optional

from flutelab.models.enums import CheckStatus

logger = logging.getLogger("flutelab.audit")

DETAIL_CHARS = 200


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    check: str
    status: CheckStatus
    details: dict[str, Any] = field(default_factory=dict)
    timestamp: datetime = field(default_factory=_utcnow)


@dataclass
class CheckTrail:
    """Ordered, append-only list of check records for one suite run."""

    suite: str
    records: list[CheckRecord] = field(default_factory=list)

    def record(
        self, check: str, status: CheckStatus, details: Optional[dict[str, Any]] = None
    ) -> CheckRecord:
        entry = log_check(self.suite, check, status, details)
        self.records.append(entry)
        return entry


def log_check(
    suite: str,
    check: str,
    status: CheckStatus,
    details: Optional[dict[str, Any]] = None,
) -> CheckRecord:
    """
    Create a check record and emit its CHECK line.

    Args:
        suite: Name of the suite running the check.
        check: What was verified.
        status: Outcome of the check.
        details: Arbitrary context (serialized to JSON in the log line).

    Returns:
        The created CheckRecord.
    """
    entry = CheckRecord(suite=suite, check=check, status=status, details=dict(details or {}))
    level = logging.WARNING if status is CheckStatus.FAIL else logging.INFO
    logger.log(
        level,
        "CHECK | suite=%s check=%s status=%s | %s",
        suite,
        check,
        status.value,
        json.dumps(details, default=str)[:DETAIL_CHARS] if details else "",
    )
    return entry
