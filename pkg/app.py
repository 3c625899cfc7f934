"""
Leavitt Lab command line
Combines the kernel, right ideal and localization commands
"""

import argparse
import sys
from typing import List, Optional, Sequence

from config import LabConfig, load_config
from models.model import StatusResponse
from routers import ideals, kernel, localization
from routers.context import LabContext
from services.leavitt import ReductionMode
from utils.errors import InputError, InvariantViolation, LabError
from utils.logger import log_debug, log_error, log_exception, setup_logging


# ===========================
# PARSER
# ===========================

class LabArgumentParser(argparse.ArgumentParser):
    """argparse reports usage errors through InputError so every failure shares one exit path."""

    def error(self, message: str):
        raise InputError(message)


def _common_options() -> argparse.ArgumentParser:
    common = LabArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file")
    common.add_argument("--field", help="ground field: 'rat' or 'fp:P'")
    common.add_argument("--json", action="store_true", default=None, help="emit JSON documents")
    common.add_argument("--mode", choices=[m.value for m in ReductionMode], default=ReductionMode.LEAVITT.value,
                        help="reduce with (CK2) or stay in the Cohn algebra")
    common.add_argument("--degree-bound", type=int, help="path length bound for quotient tables")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    return common


def build_parser() -> LabArgumentParser:
    parser = LabArgumentParser(prog="leavitt-lab",
                               description="Leavitt path algebras as rings of quotients of quiver algebras")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=LabArgumentParser)
    subparsers.required = True
    common = _common_options()
    for router in (kernel.router, ideals.router, localization.router):
        router.mount(subparsers, parents=[common])
    return parser


def _apply_overrides(config: LabConfig, args: argparse.Namespace) -> LabConfig:
    if args.field:
        config.field.descriptor = args.field
    if args.json:
        config.output.json = True
    if args.degree_bound is not None:
        if args.degree_bound < 0:
            raise InputError("--degree-bound must be non-negative")
        config.schreier.degree_bound = args.degree_bound
    if args.log_level:
        config.log_level = args.log_level
    return config


# ===========================
# ENTRY POINT
# ===========================

def _report(stdout, json_output: bool, status: str, message: str, exit_code: int) -> int:
    if json_output:
        document = StatusResponse(status=status, message=message, exit_code=exit_code)
        (stdout or sys.stdout).write(document.model_dump_json(indent=2) + "\n")
    else:
        sys.stderr.write(f"leavitt-lab: {message}\n")
    return exit_code


def main(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None) -> int:
    """Run one command and return its exit code: 0 ok, 1 input error, 2 undecided, 3 internal."""
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    json_output = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        config = _apply_overrides(load_config(), args)
        setup_logging(config.log_level, config.log_file)
        ctx = LabContext(config, args.graph, ReductionMode(args.mode),
                         stdin=stdin or sys.stdin, stdout=stdout or sys.stdout)
        log_debug(f"running {args.tags}/{args.command}")
        return args.handler(ctx, args)
    except InvariantViolation as e:
        log_exception(f"invariant violated: {e}")
        return _report(stdout, json_output, "invariant-violation", str(e), e.exit_code)
    except LabError as e:
        log_error(str(e))
        return _report(stdout, json_output, "undecided" if e.exit_code == 2 else "error", str(e), e.exit_code)


if __name__ == "__main__":
    sys.exit(main())
