"""Command-line front end.

Exit codes: 0 success (an empty result is still success), 1 usage or parse
error, 2 atom cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .report import check_report, compare_report, solve_report
from .solvers import CapExceeded, SemanticsId
from .syntax import ParseError, parse_program

EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="elpkit", description="Answer sets and world views of epistemic logic programs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    semantics = [s.value for s in SemanticsId]

    def common(p):
        p.add_argument("file", help="program file (.elp)")
        p.add_argument("--max-atoms", type=int, default=None,
                       help="atom cap for the engines (default: per semantics, or $ELP_MAX_ATOMS)")
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("solve", help="compute answer sets or world views")
    common(p)
    p.add_argument("--semantics", choices=semantics, default="g91")

    p = sub.add_parser("check", help="check constraint monotonicity or foundedness")
    common(p)
    p.add_argument("--property", choices=["cm", "foundedness"], required=True)
    p.add_argument("--semantics", choices=semantics, default="g91")
    p.add_argument("--constraint", type=int, default=None, metavar="INDEX",
                   help="0-based rule index of the constraint to remove (default: last constraint)")

    p = sub.add_parser("compare", help="side-by-side table of all semantics")
    common(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    max_atoms = args.max_atoms
    if max_atoms is None and os.environ.get("ELP_MAX_ATOMS"):
        max_atoms = int(os.environ["ELP_MAX_ATOMS"])
    path = Path(args.file)
    try:
        source = path.read_text(encoding="utf-8")
    except OSError as err:
        print(f"elpkit: cannot read {args.file}: {err.strerror}", file=sys.stderr)
        return EXIT_USAGE
    try:
        program = parse_program(source)
    except ParseError as err:
        print(f"elpkit: {path.name}: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "solve":
            rep = solve_report(program, path.name, source, args.semantics, max_atoms)
        elif args.command == "check":
            rep = check_report(program, path.name, source, args.property, args.semantics,
                               args.constraint, max_atoms)
        else:
            rep = compare_report(program, path.name, source, max_atoms)
    except CapExceeded as err:
        print(f"elpkit: {err}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as err:
        print(f"elpkit: {err}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(rep.to_json() if args.format == "json" else rep.to_text())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
