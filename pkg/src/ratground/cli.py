"""Command-line front end: parse, check, ground, then emit or solve.

Exit codes: 0 success, 1 parse/safety error, 2 grounding error, 3 program
too large for the reference solver.  Diagnostics go to stderr with source
spans; results go to stdout.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import evaluator
from .emitter import emit
from .errors import (GroundingError, ParseError, RatGroundError,
                     TooLargeForBruteForceError)
from .grounder import ground
from .parser import Parser, check_safety
from .syntax import Program, PrintStyle, render_statement


def _arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratground",
        description="Ground logic programs with exact rational arithmetic, "
                    "emit the solver numeric format, or enumerate answer "
                    "sets with the built-in reference evaluator.")
    parser.add_argument("files", nargs="*",
                        help="input programs (stdin when omitted)")
    parser.add_argument("--mode", choices=["ground-numeric", "ground-text",
                                           "solve-reference"],
                        default="ground-numeric")
    parser.add_argument("--decimal-digits", type=int, default=6, metavar="N",
                        help="decimal digits kept in literals and decimal "
                             "printing, 0..6 (default 6)")
    parser.add_argument("--print", dest="print_mode",
                        choices=["fraction", "decimal"], default="fraction",
                        help="how non-integer rationals are rendered")
    parser.add_argument("--integer-division", action="store_true",
                        help="truncate '/' on integers toward zero instead "
                             "of producing exact fractions")
    parser.add_argument("--warn-undefined", action="store_true",
                        help="report bindings dropped by undefined arithmetic")
    parser.add_argument("--models", type=int, default=0, metavar="N",
                        help="answer sets to print in solve mode (0 = all)")
    return parser


def _read_program(args) -> Program:
    program = Program([], [])
    parser = Parser(decimal_digits=args.decimal_digits)
    if not args.files:
        parser.parse_into(program, sys.stdin.read(), "<stdin>")
        return program
    for path in args.files:
        with open(path, encoding="utf-8") as handle:
            parser.parse_into(program, handle.read(), path)
    return program


def main(argv: Optional[list] = None) -> int:
    args = _arg_parser().parse_args(argv)
    if not 0 <= args.decimal_digits <= 6:
        print("error: --decimal-digits must be between 0 and 6",
              file=sys.stderr)
        return 1
    style = PrintStyle(args.print_mode, args.decimal_digits)

    try:
        program = _read_program(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GroundingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    violations = check_safety(program)
    if violations:
        for violation in violations:
            print(f"error: {violation}", file=sys.stderr)
        return 1

    warn = None
    if args.warn_undefined:
        def warn(span, message):
            where = f"{span}: " if span else ""
            print(f"warning: {where}{message}", file=sys.stderr)

    try:
        ground_program = ground(program, integer_division=args.integer_division,
                                warn=warn)
    except GroundingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.mode == "ground-numeric":
        emit(ground_program, sys.stdout, style)
        return 0
    if args.mode == "ground-text":
        for rule in ground_program.rules:
            print(render_statement(rule, style))
        for weak in ground_program.weaks:
            print(render_statement(weak, style))
        return 0

    try:
        if ground_program.weaks:
            models = evaluator.optimal_answer_sets(ground_program)
        else:
            models = evaluator.answer_sets(ground_program)
    except TooLargeForBruteForceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.models > 0:
        models = models[:args.models]
    for interp in models:
        print(evaluator.render_answer_set(ground_program, interp, style))
        if ground_program.weaks:
            print(evaluator.render_costs(
                evaluator.costs(ground_program, interp), style))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
