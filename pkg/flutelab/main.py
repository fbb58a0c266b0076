"""
flutelab command-line entry point.

Build flute truncations from an experiment config, verify them, tabulate
Busemann limits, scan for orbit-closure candidates, profile injectivity
radii along rays and render figures:

    flutelab build   --config flute.cfg
    flutelab verify  --config flute.cfg --set surface.count=6
    flutelab scan    --config delta.cfg --set scan.words=power-tower

Reports are JSON on stdout (and in output.json_path when set). Exit codes:
0 pass, 1 configuration error, 2 verification failure, 3 I/O error.
FLUTELAB_LOG_LEVEL sets logging; FLUTELAB_BOUNDARY_TOL the chordal tolerance.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from flutelab import __version__
from flutelab.cli.commands import COMMANDS
from flutelab.cli.configfile import load_experiment
from flutelab.config import settings
from flutelab.errors import EXIT_OUTPUT, FluteLabError, OutputError
from flutelab.models.reports import to_json

logger = logging.getLogger("flutelab.main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flutelab",
        description="Flute surfaces, Busemann cocycles and horocycle-orbit diagnostics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=f"run {name} on an experiment config")
        cmd.add_argument("--config", metavar="PATH", help="experiment config file")
        cmd.add_argument(
            "--set", dest="overrides", action="append", default=[], metavar="SECTION.KEY=VALUE",
            help="override one config value (repeatable)",
        )
    return parser


def write_report(text: str, path: Optional[str]) -> None:
    sys.stdout.write(text)
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            raise OutputError(f"cannot write report to {path}: {e}") from e


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        cfg = load_experiment(args.config, args.overrides)
        result = COMMANDS[args.command](cfg)
        write_report(to_json(result.report), cfg.output.json_path)
    except FluteLabError as e:
        logger.error("%s failed: %s", args.command, e)
        return e.exit_code
    except OSError as e:
        logger.error("%s failed: %s", args.command, e)
        return EXIT_OUTPUT
    if result.exit_code:
        logger.warning("%s finished with exit code %d", args.command, result.exit_code)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
