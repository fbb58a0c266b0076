from flutelab.audit.logger import CheckRecord, CheckTrail, log_check

__all__ = ["CheckRecord", "CheckTrail", "log_check"]
