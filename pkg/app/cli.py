"""Command-line front end.

    python -m app.cli rank groups.spec S3deg3
    python -m app.cli tree groups.spec S3deg3 --k 2 --dot
    python -m app.cli verify --seed 1 --trials 100
    python -m app.cli truncate groups.spec W --depth 4 --breadth 2 -o w.spec
    python -m app.cli examples --alpha "w+1" --kind G

Exit status: 0 on success, 1 when verification finds a counterexample, 2 on
input errors.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from app.config import settings
from app.dsl.spec_parser import load_spec
from app.errors import LabError
from app.handlers.commands import commands
from app.ordinals.cnf import parse_ordinal

logging.basicConfig(level=getattr(logging, settings.log_level.upper()))
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cli-rank-lab", description="Ordinal ranks of chain groups and symbolic CLI groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", help="rho_k table of a chain, or the classification of an expression")
    rank.add_argument("file")
    rank.add_argument("name")
    rank.add_argument("--alpha", help="ordinal for the alpha-CLI verdicts, e.g. w*2+1")

    tree = sub.add_parser("tree", help="orbit tree of G/G_k")
    tree.add_argument("file")
    tree.add_argument("name")
    tree.add_argument("--k", type=int, required=True)
    fmt = tree.add_mutually_exclusive_group()
    fmt.add_argument("--dot", dest="fmt", action="store_const", const="dot")
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    tree.set_defaults(fmt="json")

    verify = sub.add_parser("verify", help="run the seeded property suite")
    verify.add_argument("--file", help="draw chain groups and expressions from this spec file")
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--check", action="append", dest="only", help="run only the named check (repeatable)")
    verify.add_argument("--mutant", help=argparse.SUPPRESS)

    trunc = sub.add_parser("truncate", help="write a finite chain-group shadow of an expression")
    trunc.add_argument("file")
    trunc.add_argument("name")
    trunc.add_argument("--depth", type=int, required=True)
    trunc.add_argument("--breadth", type=int, required=True)
    trunc.add_argument("-o", "--out", help="output spec file (stdout when omitted)")

    examples = sub.add_parser("examples", help="the witnesses G_alpha and H_alpha")
    examples.add_argument("--alpha", required=True)
    examples.add_argument("--kind", choices=["G", "H"])
    return parser


def _print(data) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


def run(args: argparse.Namespace) -> int:
    if args.command == "rank":
        alpha = parse_ordinal(args.alpha) if args.alpha else None
        _print(commands.cmd_rank(load_spec(args.file), args.name, alpha))
    elif args.command == "tree":
        result = commands.cmd_tree(load_spec(args.file), args.name, args.k, args.fmt)
        print(result["output"])
    elif args.command == "verify":
        spec = load_spec(args.file) if args.file else None
        report = commands.cmd_verify(spec, args.seed, args.trials, args.mutant, args.only)
        _print(report)
        if not report["ok"]:
            return EXIT_VERIFY_FAILED
    elif args.command == "truncate":
        result = commands.cmd_truncate(load_spec(args.file), args.name, args.depth, args.breadth, args.out)
        if not args.out:
            print(result["text"], end="")
    elif args.command == "examples":
        _print(commands.cmd_examples(parse_ordinal(args.alpha), args.kind))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except LabError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as e:
        logger.error(f"❌ cannot read or write file: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
