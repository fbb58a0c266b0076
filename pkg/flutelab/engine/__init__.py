from flutelab.engine.suite import SuiteReport, run_suite

__all__ = ["SuiteReport", "run_suite"]
