#!/usr/bin/env python
# main.py - Entry point for the motif command-line front end

import argparse
import logging
import os
import sys
import unittest
from typing import Any, Optional

from src import config

log_level = os.environ.get("LOG_LEVEL", "WARNING").upper()
logging.basicConfig(
    level=log_level,
    format=config.LOG_FORMAT,
    handlers=[logging.StreamHandler(sys.stderr)]
)

logger = logging.getLogger("MotifMain")


def build_parser() -> argparse.ArgumentParser:
    from src.pipeline import Command

    parser = argparse.ArgumentParser(
        prog="motif",
        description="Exact computations with linear 1-motifs, their algebras and Fourier transforms. "
                    "Reads one JSON payload (stdin or --in) and writes a JSON report.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    parser.add_argument(
        "command",
        nargs="?",
        choices=Command.list(),
        help="Operation to run"
    )
    parser.add_argument("--in", dest="input", type=str, default=None,
                        help="Read the payload from this file instead of stdin")
    parser.add_argument("--out", type=str, default=None,
                        help="Write the report to this file (bare names go under reports/)")
    parser.add_argument("--window", type=int, default=None,
                        help=f"Homology window (library default {config.DEFAULT_WINDOW})")
    parser.add_argument("--trials", type=int, default=None,
                        help=f"Random trials for harness/exchange (defaults {config.DEFAULT_TRIALS}/10)")
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED,
                        help="Seed for every randomized check")
    parser.add_argument("--progress", action="store_true",
                        help="Show tqdm progress bars on stderr")
    parser.add_argument("--strict", action="store_true",
                        help="Fail with an error report (exit 1) on the first failed check")
    parser.add_argument("--test", action="store_true",
                        help="Run unit tests in 'tests/'")
    parser.add_argument(
        "--log-level",
        type=str,
        default=log_level,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Set the logging level"
    )
    return parser


def run_tests() -> int:
    """Discovers and runs unit tests."""
    test_dir = "tests"
    if not os.path.isdir(test_dir):
        logger.error(f"Test directory '{test_dir}' not found.")
        return 1
    sys.path.insert(0, os.path.abspath('.'))
    tests = unittest.TestLoader().discover(test_dir, pattern='test_*.py')
    if tests.countTestCases() == 0:
        logger.warning(f"No tests found in '{test_dir}' matching 'test_*.py'.")
        return 0
    logger.info(f"Running {tests.countTestCases()} tests...")
    result = unittest.TextTestRunner(verbosity=2).run(tests)
    return 0 if result.wasSuccessful() else 1


def read_payload(path: Optional[str], required: bool) -> Any:
    """Decoded payload from --in or stdin; None when optional input is absent."""
    from src.utils import codec
    from src.utils.errors import ParseError

    if path is not None:
        return codec.load_file(path)
    if not required and sys.stdin.isatty():
        return None
    text = sys.stdin.read()
    if not text.strip():
        if required:
            raise ParseError("empty input")
        return None
    return codec.loads(text)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.getLogger().setLevel(logging.getLevelName(args.log_level))
    logger.debug(f"Parsed arguments: {args}")

    if args.test:
        return run_tests()
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    from src.pipeline import Command, MotifPipeline, error_report, exit_code
    from src.utils.errors import MotifError, ParseError
    from src.utils.reporting import ReportWriter, summarize

    pipeline = MotifPipeline(window=args.window, trials=args.trials, seed=args.seed,
                             progress=args.progress, strict=args.strict)
    command = Command(args.command)
    try:
        payload = read_payload(args.input, command.input_required)
    except MotifError as e:
        report = error_report(command.value, e)
    except OSError as e:
        logger.error(f"Cannot read {args.input}: {e}")
        report = error_report(command.value, ParseError(f"cannot read {args.input}: {e.strerror}"))
    else:
        report = pipeline.run(command.value, payload)

    ReportWriter().write(report, args.out)
    logger.info(summarize(report))
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
