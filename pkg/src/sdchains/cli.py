"""Command line front end: ``sdchains COMMAND FILE [options]``.

Exit codes: 0 all checks pass, 1 a check failed, 2 the input could not be
read or parsed, 3 nothing failed but some verdict is unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import api
from .errors import SdchainsError
from .session import read_json

EXIT_INPUT = 2


def _subset(text: str) -> tuple[int, ...]:
    text = text.strip().strip("{}")
    try:
        return tuple(sorted(int(x) for x in text.split(",") if x.strip()))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a subset: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdchains", description="Exact checks for chains of semidualizing modules.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", "-N", type=int, default=None, help="Ext/Tor degree bound (default: session option, else 4)")
    common.add_argument("--window", "-W", type=int, default=None, help="Tate window (default 3)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--out", type=Path, default=None, help="write the JSON report (or Q document for present) here")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check every algebra, module and chain in a session file")
    p.add_argument("file")
    p = sub.add_parser("semidual", parents=[common], help="is a named module semidualizing")
    p.add_argument("file")
    p.add_argument("module")
    p = sub.add_parser("chain", parents=[common], help="verify a named chain")
    p.add_argument("file")
    p.add_argument("chain")
    p.add_argument("--suitable", action="store_true", help="also check suitability")
    p = sub.add_parser("present", parents=[common], help="build Q from a suitable chain")
    p.add_argument("file")
    p.add_argument("chain")
    p = sub.add_parser("verify-theorem", parents=[common], help="check the six items on a Q document")
    p.add_argument("qfile")
    p = sub.add_parser("converse", parents=[common], help="recover the semidualizing modules from a Q document")
    p.add_argument("qfile")
    p = sub.add_parser("tensor-lemmas", parents=[common], help="Tor vanishing and tensor identities on a Q document")
    p.add_argument("qfile")
    p.add_argument("--lam", type=_subset, default=None)
    p.add_argument("--gam", type=_subset, default=None)
    return parser


def dispatch(args) -> tuple[api.Report, dict | None]:
    bound_or = args.bound or 4
    if args.command == "validate":
        return api.run_validate(read_json(args.file)), None
    if args.command == "semidual":
        return api.run_semidual(read_json(args.file), args.module, args.bound), None
    if args.command == "chain":
        return api.run_chain(read_json(args.file), args.chain, args.bound, args.suitable, args.trials, args.seed), None
    if args.command == "present":
        return api.run_present(read_json(args.file), args.chain, args.bound, args.trials, args.seed)
    qdoc = read_json(args.qfile)
    if args.command == "verify-theorem":
        return api.run_verify_theorem(qdoc, bound_or, args.window or 3), None
    if args.command == "converse":
        return api.run_converse(qdoc, bound_or, trials=args.trials or 64, seed=args.seed or 0), None
    pairs = None
    if args.lam is not None or args.gam is not None:
        pairs = [(args.lam or (), args.gam or ())]
    return api.run_tensor_lemmas(qdoc, bound_or, pairs), None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, qdoc = dispatch(args)
    except (SdchainsError, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = report.model_dump(mode="json")
    if args.out is not None:
        args.out.write_text(json.dumps(qdoc if args.command == "present" else payload, indent=1) + "\n")
    if args.json:
        print(json.dumps(payload, indent=1))
    else:
        print("\n".join(report.lines()))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
