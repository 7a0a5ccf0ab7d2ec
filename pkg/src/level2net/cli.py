"""Command-line interface: extract, build, eq, compare-trinets, gen, validate.

Exit status is 0 on success or a true answer, 1 on a false answer and 2 on
usage, parse or contract errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .network import NetworkError, isomorphic
from .newick import NewickError, load_enewick, write_enewick
from .random_nets import random_level2_network
from .reconstruct import ReconstructionReport, reconstruct
from .restriction import binets_and_trinets, trinets
from .trinet_file import TrinetFileError, format_trinets, load_trinets

SEED_ENV = "LEVEL2NET_SEED"


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_extract(args) -> int:
    net = load_enewick(args.network)
    coll = binets_and_trinets(net) if args.binets else trinets(net)
    _emit(format_trinets(coll), args.output)
    return 0


def cmd_build(args) -> int:
    coll = load_trinets(args.trinets)
    report = ReconstructionReport()
    net = reconstruct(coll, report)
    _emit(write_enewick(net) + "\n", args.output)
    if args.report:
        sys.stderr.write(report.as_text())
    return 0


def cmd_eq(args) -> int:
    same = isomorphic(load_enewick(args.a), load_enewick(args.b))
    print("isomorphic" if same else "not isomorphic")
    return 0 if same else 1


def cmd_compare(args) -> int:
    ta = set(trinets(load_enewick(args.a)).keys())
    tb = set(trinets(load_enewick(args.b)).keys())
    if ta == tb:
        print("equal trinet sets")
        return 0
    print(f"different trinet sets: {len(ta - tb)} only in first, {len(tb - ta)} only in second")
    return 1


def cmd_gen(args) -> int:
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        if env is None:
            print(f"level2net gen: --seed is required (or set {SEED_ENV})", file=sys.stderr)
            return 2
        seed = int(env)
    net = random_level2_network(args.leaves, seed, max_level=args.level)
    _emit(write_enewick(net) + "\n", args.output)
    return 0


def cmd_validate(args) -> int:
    net = load_enewick(args.network)
    problems = net.validate()
    if not problems and not net.is_recoverable():
        problems.append("not recoverable: the lowest stable ancestor of all taxa is not the root")
    for p in problems:
        print(p)
    if not problems:
        print(f"ok: {len(net.taxa)} taxa, level {net.level()}")
    return 0 if not problems else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="level2net",
                                     description="Level-2 phylogenetic networks from trinets.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="write the trinets of a network")
    p.add_argument("network")
    p.add_argument("--binets", action="store_true", help="include binets")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("build", help="reconstruct a network from a trinet file")
    p.add_argument("trinets")
    p.add_argument("-o", "--output")
    p.add_argument("--report", action="store_true", help="stage diagnostics on stderr")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("eq", help="exit 0 iff two networks are isomorphic")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("compare-trinets", help="exit 0 iff two networks have the same trinets")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="random recoverable binary network")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--level", type=int, choices=(0, 1, 2), default=2)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="print structural problems of a network")
    p.add_argument("network")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (NewickError, TrinetFileError, NetworkError, OSError, ValueError) as exc:
        print(f"level2net {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
