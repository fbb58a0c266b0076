from flutelab.cli.commands import COMMANDS, CommandResult, build_truncation
from flutelab.cli.configfile import load_experiment, parse_config

__all__ = ["COMMANDS", "CommandResult", "build_truncation", "load_experiment", "parse_config"]
