"""Command-line interface for orecalc.

Subcommands ``eval``, ``goodpoints``, ``vanish`` and ``rmcode`` work on a tower
given as a file (``--tower``) or by name (``--preset``).  Results go to stdout
as plain lines; with ``--verbose`` progress is logged to stderr with a
distinct color per source.  Exit codes: 0 success, 2 input error, 3 a
resource cap was hit.
"""

import argparse
import json
import sys
from typing import Dict, List

from colorama import Fore, Style, deinit, init
from pydantic import ValidationError

from src.commands import CommandRequest
from src.config import get_settings
from src.errors import OreCalcError, ResourceLimitError
from src.orchestrator import CommandOrchestrator


# Assign a unique color for each log source.
COLOR_MAP: Dict[str, str] = {
    "tower": Fore.CYAN,
    "config": Fore.YELLOW,
    "eval": Fore.GREEN,
    "goodpoints": Fore.MAGENTA,
    "vanish": Fore.BLUE,
    "rmcode": Fore.LIGHTYELLOW_EX,
}


def color_log(source: str, message: str, detail: str) -> None:
    """Callback for CommandOrchestrator that prints colored logs to stderr.

    :param source: Subcommand or component emitting the event.
    :param message: Short description of the step.
    :param detail: Extra information, printed dimmed.
    """
    color = COLOR_MAP.get(source, Fore.WHITE)
    print(color + f"[{source}] " + Style.RESET_ALL + message, file=sys.stderr)
    if detail:
        print(Style.DIM + "  " + detail.strip() + Style.RESET_ALL, file=sys.stderr)


def _caps(text: str) -> List[int]:
    try:
        return [int(c) for c in text.split(",") if c.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"caps must be comma-separated integers: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orecalc",
        description="Evaluate polynomials in iterated Ore extensions and build skew Reed-Muller codes.",
    )
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--tower", help="Tower description file.")
    source.add_argument("--preset", help="Named tower, e.g. weyl-f101, f4-frobenius-2, classical-2^1-3.")
    common.add_argument("--json", action="store_true", help="Print the result payload as JSON after the text lines.")
    common.add_argument("--verbose", action="store_true", help="Log progress to stderr.")

    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="Evaluate a polynomial or word at points.")
    p_eval.add_argument("expression", help="Sum of words, e.g. 't2 t1' or '1 + 2 t1 t2'.")
    p_eval.add_argument("--word", action="store_true", help="Evaluate each word by peeling its rightmost letter.")
    p_eval.add_argument("--points", help="File with one point per line ('-' for stdin); default all of K^n.")

    sub.add_parser("goodpoints", parents=[common], help="Tag every point GOOD or BAD.")
    sub.add_parser("vanish", parents=[common], help="List the vanishing-ideal generators G_i.")

    p_rm = sub.add_parser("rmcode", parents=[common], help="Report [n, k, d] of a skew Reed-Muller code.")
    p_rm.add_argument("--monomials", help="File with one word per line.")
    p_rm.add_argument("--r", type=int, help="Total degree bound of the generated basis.")
    p_rm.add_argument("--caps", type=_caps, help="Per-variable degree caps, e.g. 1,1,2.")
    p_rm.add_argument("--multilinear", action="store_true", help="Cap every variable at degree 1.")
    p_rm.add_argument("--reduced", action="store_true", help="Cap t_i at deg G_i - 1.")
    p_rm.add_argument("--mode", choices=["word", "normal", "literal"], default="word", help="Evaluation of each monomial.")
    p_rm.add_argument("--matrix", action="store_true", help="Also print the row-reduced generator matrix.")
    p_rm.add_argument("--max-codewords", type=int, help="Cap on q^k for the distance scan.")
    return parser


def _request(args: argparse.Namespace) -> CommandRequest:
    return CommandRequest(
        command=args.command,
        tower_file=args.tower,
        preset=args.preset,
        expression=getattr(args, "expression", None),
        word=getattr(args, "word", False),
        points_file=getattr(args, "points", None),
        monomials_file=getattr(args, "monomials", None),
        r=getattr(args, "r", None),
        caps=getattr(args, "caps", None),
        multilinear=getattr(args, "multilinear", False),
        reduced=getattr(args, "reduced", False),
        mode=getattr(args, "mode", "word"),
        matrix=getattr(args, "matrix", False),
        max_codewords=getattr(args, "max_codewords", None),
    )


def _fail(message: str, code: int) -> int:
    print(Fore.RED + message + Style.RESET_ALL, file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    """Entry point for CLI execution; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    init(autoreset=True)  # Initialize colorama
    try:
        try:
            settings = get_settings()
            on_log = color_log if (args.verbose or settings.verbose) else None
            result = CommandOrchestrator(settings, on_log=on_log).run(_request(args))
        except ResourceLimitError as e:
            return _fail(f"resource limit: {e}", e.exit_code)
        except ValidationError as e:
            return _fail(f"invalid arguments: {e}", 2)
        except OreCalcError as e:
            return _fail(f"error: {e}", e.exit_code)
        except Exception as e:
            return _fail(f"An error occurred during processing: {e}", 2)

        for line in result.lines:
            print(line)
        if args.json:
            print(json.dumps(result.payload, indent=2))
        return 0
    finally:
        deinit()


if __name__ == "__main__":
    sys.exit(main())
