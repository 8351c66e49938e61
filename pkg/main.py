#!/usr/bin/env python3
"""
acimov-lint command line

    main.py init  [--root PATH]
    main.py test  --model --data --query [--mode manual|pre-commit|ci] [--staged FILE ...]
    main.py flush [--root PATH]

Exit codes: 0 no blocking error, 1 at least one MajorFail outcome,
2 usage, configuration or internal error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

from rdfkit.errors import LintError
from lint_orchestrator import LintOrchestrator
from reports.context import Trigger
from suites.config import LintConfig

logger = logging.getLogger(__name__)

COMMANDS = ("init", "test", "flush")
EXIT_OK = 0
EXIT_BLOCKING = 1
EXIT_ERROR = 2


class UsageError(LintError):
    """Invalid combination of command line options"""


@dataclass(frozen=True)
class RunRequest:
    command: str
    suites: Tuple[str, ...] = ()
    mode: str = Trigger.MANUAL.value
    staged_files: Optional[Tuple[str, ...]] = None
    root: Path = Path(".")
    developer: Optional[str] = None
    config: Optional[Path] = None
    output: Optional[Path] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command '{self.command}'")
        if self.mode not in {trigger.value for trigger in Trigger}:
            raise UsageError(f"unknown mode '{self.mode}'")
        if self.command == "test" and not self.suites:
            raise UsageError("test requires at least one of --model, --data, --query")
        if self.mode == Trigger.PRE_COMMIT.value and self.command == "test" and self.staged_files is None:
            raise UsageError("pre-commit mode requires --staged")
        if not self.root.is_dir():
            raise UsageError(f"repository root not found: {self.root}")


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main() maps usage errors to exit 2"""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog="acimov-lint", description="Continuous integration linter for ACIMOV ontology repositories")
    parser.add_argument("command", choices=COMMANDS, help="init the skeleton, run tests, or flush reports")
    parser.add_argument("--model", action="store_true", help="run the model suite")
    parser.add_argument("--data", action="store_true", help="run the data suite")
    parser.add_argument("--query", action="store_true", help="run the query suite")
    parser.add_argument("--mode", default=Trigger.MANUAL.value, choices=[trigger.value for trigger in Trigger],
                        help="execution context (default: manual)")
    parser.add_argument("--root", default=".", help="repository root (default: current directory)")
    parser.add_argument("--developer", help="developer name recorded in the reports")
    parser.add_argument("--staged", nargs="*", metavar="FILE", help="files staged for commit (pre-commit mode)")
    parser.add_argument("--output", help="report folder (default: .acimov/output)")
    parser.add_argument("--config", help=f"parameters file (default: ${LintConfig.CONFIG_ENV_VAR} or .acimov/parameters.json)")
    parser.add_argument("--verbose", action="store_true", help="log progress")
    parser.add_argument("--debug", action="store_true", help="log debugging details")
    return parser


def parse_request(argv: Optional[Sequence[str]] = None) -> Tuple[RunRequest, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    suites = tuple(name for name in LintConfig.SUITES if getattr(args, name))
    request = RunRequest(
        command=args.command,
        suites=suites,
        mode=args.mode,
        staged_files=tuple(args.staged) if args.staged is not None else None,
        root=Path(args.root),
        developer=args.developer,
        config=Path(args.config) if args.config else None,
        output=Path(args.output) if args.output else None,
    )
    return request, args


def configure_logging(verbose: bool = False, debug: bool = False):
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def run(request: RunRequest) -> int:
    """Execute one request and return the process exit code"""
    try:
        request.validate()
        orchestrator = LintOrchestrator(request.root, request.config, request.output)
        if request.command == "init":
            orchestrator.init_project()
            return EXIT_OK
        if request.command == "flush":
            orchestrator.flush_output()
            return EXIT_OK
        result = orchestrator.run_tests(request.suites, request.mode, request.staged_files, request.developer)
        return result.exit_code
    except LintError as e:
        print(f"acimov-lint: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        logger.exception("Internal error")
        print(f"acimov-lint: internal error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        request, args = parse_request(argv)
    except UsageError as e:
        print(f"acimov-lint: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    configure_logging(args.verbose, args.debug)
    return run(request)


if __name__ == "__main__":
    sys.exit(main())
