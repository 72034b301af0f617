"""Command line front end.

Three subcommands: ``info`` prints the invariants of one semigroup, ``count``
emits a multiplicity-by-genus count matrix, ``search`` streams target hits as
JSON lines.  The CLI itself is single-threaded; ``--threads`` is handed to the
explorer, and output is byte-identical whatever the thread count.

Exit codes: 0 success, 1 usage problem, 2 unusable semigroup spec,
4 accumulator overflow.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import Semigroup, from_generators, superficial
from .counting import kaplan_extend
from .errors import CapacityExceeded, SgtrimError
from .explorer import (
    COUNT_ALL,
    ELIAHOU_NEGATIVE,
    WILF_NEGATIVE,
    ZERO_WILF_NONTRIVIAL,
    ExplorationTask,
    default_trim,
    explore,
    non_generic,
    plan_roots,
)
from .oracle import naive_invariants
from .properties import gcd_lefts, genus_bound, is_cutting, large_density, small_depth


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; our contract reserves 2 for bad
    semigroup specs, so usage problems are remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_semigroup_spec(text: str) -> Semigroup:
    """``14,22,23@56`` → the semigroup generated by 14,22,23 and all n ≥ 56."""
    body, _, tail = text.partition("@")
    try:
        gens = [int(x) for x in body.split(",")]
        truncation = int(tail) if tail else None
    except ValueError:
        raise SgtrimError(f"unparsable semigroup spec {text!r}")
    if any(g <= 0 for g in gens):
        raise SgtrimError("generators must be positive")
    return from_generators(gens, truncation=truncation)


def _threads_default() -> int:
    env = os.environ.get("SGTRIM_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_info(args) -> int:
    try:
        s = parse_semigroup_spec(args.spec)
    except (SgtrimError, ValueError) as exc:
        print(f"sgtrim info: {exc}", file=sys.stderr)
        return 2
    rec = s.invariants()
    if args.verify and naive_invariants(s) != rec:  # pragma: no cover
        print("sgtrim info: oracle disagrees with incremental invariants",
              file=sys.stderr)
        return 2
    cutting = {
        # genus bound at the semigroup's own conductor, plus the two
        # fixed-parameter properties every search uses
        "genus_bound_conductor": (
            s.conductor >= 1 and is_cutting(s, genus_bound(s.conductor))
        ),
        "small_depth_3": is_cutting(s, small_depth(3)),
        "large_density_3": is_cutting(s, large_density(3)),
    }
    record = {
        "multiplicity": s.multiplicity,
        "conductor": s.conductor,
        "frobenius": s.frobenius,
        "genus": s.genus,
        "edim": rec.edim,
        "left_count": s.left_count,
        "left_primitives": list(s.left_primitives),
        "big_primitives": list(s.big_primitives),
        "depth": rec.depth,
        "density": rec.density,
        "wilf": rec.wilf,
        "eliahou": rec.eliahou,
        "quasi_superficial": s.is_quasi_superficial(),
        "gcd_lefts": gcd_lefts(s),
        "cutting": cutting,
    }
    print(json.dumps(record))
    return 0


def cmd_count(args) -> int:
    gamma = args.gamma
    if args.kaplan and not args.all:
        print("sgtrim count: --kaplan needs --all (the recurrence spans "
              "whole genus columns)", file=sys.stderr)
        return 1
    if args.all:
        if args.kaplan:
            boundary = -(-2 * gamma // 3)
            roots = [superficial(m) for m in range(2, boundary + 1)]
        else:
            roots = plan_roots(gamma, COUNT_ALL)
    else:
        if args.multiplicity > gamma + 1:
            print(f"sgtrim count: multiplicity {args.multiplicity} has no "
                  f"semigroups of genus <= {gamma}", file=sys.stderr)
            return 1
        roots = [superficial(args.multiplicity)]
    task = ExplorationTask(roots=roots, max_genus=gamma, trim=[],
                           target=COUNT_ALL, workers=args.threads)
    matrix = explore(task).counts
    if args.kaplan:
        kaplan_extend(matrix, gamma)
    if args.format == "csv":
        sys.stdout.write(matrix.to_csv())
    else:
        rows = [
            {"m": m, "g": g, "count": v, "provenance": prov}
            for m, g, v, prov in matrix.cells()
        ]
        print(json.dumps(rows))
    return 0


_SEARCH_TARGETS = [
    ("wilf_negative", WILF_NEGATIVE, "Wilf number < 0"),
    ("eliahou_negative", ELIAHOU_NEGATIVE, "Eliahou number < 0"),
    ("zero_wilf_nontrivial", ZERO_WILF_NONTRIVIAL,
     "Wilf number 0 beyond the known shapes"),
    ("non_generic", non_generic(3), "conductor > 3*multiplicity"),
]


def cmd_search(args) -> int:
    gamma = args.gamma
    target = next(t for name, t, _ in _SEARCH_TARGETS if getattr(args, name))
    if args.trim == "auto":
        roots = plan_roots(gamma, target)
        trim = default_trim(target)
    else:
        roots = plan_roots(gamma, COUNT_ALL)
        trim = []
    task = ExplorationTask(roots=roots, max_genus=gamma, trim=trim,
                           target=target, workers=args.threads)
    result = explore(task)
    for h in result.hits:
        line = {
            "generators": list(h.generators),
            "truncation": h.truncation,
            "multiplicity": h.multiplicity,
            "genus": h.genus,
            "conductor": h.conductor,
            "edim": h.record.edim,
            "wilf": h.record.wilf,
            "eliahou": h.record.eliahou,
        }
        print(json.dumps(line))
    print(f"{len(result.hits)} hits", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="sgtrim",
                     description="numerical semigroup trees: inspect, count, search")
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="invariants of one semigroup",
                            description="Print the invariant record of a "
                            "semigroup given as generators with an optional "
                            "truncation, e.g. 14,22,23@56.")
    p_info.add_argument("spec", help="comma-separated generators[@truncation]")
    p_info.add_argument("--verify", action="store_true",
                        help="cross-check against the brute-force oracle")
    p_info.set_defaults(func=cmd_info)

    p_count = sub.add_parser("count", help="count semigroups by (m, genus)")
    p_count.add_argument("gamma", type=_positive, help="genus bound")
    which = p_count.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true",
                       help="every multiplicity up to gamma+1")
    which.add_argument("--multiplicity", type=_positive, metavar="M",
                       help="a single fixed-multiplicity subtree")
    p_count.add_argument("--kaplan", action="store_true",
                         help="explore only m <= ceil(2*gamma/3), fill the "
                         "rest by the two-term recurrence")
    p_count.add_argument("--threads", type=_positive, default=_threads_default())
    p_count.add_argument("--format", choices=("csv", "json"), default="csv")
    p_count.set_defaults(func=cmd_count)

    p_search = sub.add_parser("search", help="stream target hits as JSON lines")
    p_search.add_argument("gamma", type=_positive, help="genus bound")
    which = p_search.add_mutually_exclusive_group(required=True)
    for name, _, blurb in _SEARCH_TARGETS:
        which.add_argument("--" + name.replace("_", "-"), dest=name,
                           action="store_true", help="hits: " + blurb)
    p_search.add_argument("--threads", type=_positive, default=_threads_default())
    p_search.add_argument("--trim", choices=("auto", "none"), default="auto",
                          help="auto = root exclusions + skilled-primitive "
                          "descent; none = full truncated tree")
    p_search.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityExceeded as exc:
        print(f"sgtrim: {exc}", file=sys.stderr)
        return 4
    except BrokenPipeError:
        # downstream closed the pipe (head, less); silence the shutdown flush
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
