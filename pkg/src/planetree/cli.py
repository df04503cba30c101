"""Command-line interface.

Exit codes: 0 success, 1 invalid input (including usage errors), 2 property
or bound violation, 3 enumeration cap exceeded.  All output is a pure
function of the command line, so repeated runs diff clean byte for byte.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from .bounds import monte_carlo_report
from .codec import (
    OrderKind,
    decode,
    tree_from_text,
    tree_to_counts_text,
    tree_to_parent_text,
)
from .errors import CapExceededError, PlaneTreeError
from .kernels import KIND_CODES, run_campaign
from .rng import RandomStream, mix64
from .sampler import DEFAULT_CAP, enumerate_trees, sample_uniform
from .selfcheck import DEFAULT_SEED, run_all
from .seqcore import count_trees, parse_sequence_text
from .treestats import profile

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VIOLATION = 2
EXIT_CAP = 3

_KINDS = [k.value for k in OrderKind]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage problems to exit code 1
        raise _UsageError(message)


def _add_source(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--seq", help="inline sequence text")
    group.add_argument(
        "--seq-file", help="read sequence text from this path (- for stdin)"
    )


def _read_source(args) -> str:
    if args.seq is not None:
        return args.seq
    if args.seq_file == "-":
        return sys.stdin.read()
    return Path(args.seq_file).read_text()


@contextmanager
def _open_output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="planetree",
        description="Plane trees with a fixed child sequence: count, "
        "enumerate, sample, and verify tail bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact number of trees")
    _add_source(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list every tree")
    _add_source(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument(
        "--tree-form", choices=["counts", "parents"], default="counts"
    )
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sample", help="draw uniform trees")
    _add_source(p)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=_KINDS, default=OrderKind.BFS.value)
    p.add_argument("--emit", choices=["trees", "stats"], default="trees")
    p.add_argument(
        "--tree-form", choices=["counts", "parents"], default="counts"
    )
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("stats", help="profile/height/width of one tree")
    _add_source(p)
    p.add_argument("--kind", choices=_KINDS, default=OrderKind.LEX_DFS.value)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="Monte Carlo tail report vs bounds")
    _add_source(p)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=_KINDS, default=OrderKind.BFS.value)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selfcheck", help="run the exact property suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_selfcheck)

    return parser


def cmd_count(args) -> int:
    c = parse_sequence_text(_read_source(args))
    print(count_trees(c))
    return EXIT_OK


def _emit_tree(tree, form: str, fh) -> None:
    if form == "counts":
        fh.write(tree_to_counts_text(tree) + "\n")
    else:
        fh.write(tree_to_parent_text(tree) + "\n\n")


def cmd_enumerate(args) -> int:
    c = parse_sequence_text(_read_source(args))
    trees = enumerate_trees(c, cap=args.cap)
    with _open_output(args.output) as fh:
        for t in trees:
            _emit_tree(t, args.tree_form, fh)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.trials < 1:
        raise _UsageError("--trials must be >= 1")
    c = parse_sequence_text(_read_source(args))
    kind = OrderKind(args.kind)
    with _open_output(args.output) as fh:
        if args.emit == "trees":
            for t in range(args.trials):
                rng = RandomStream(mix64(args.seed, t))
                _emit_tree(sample_uniform(c, rng, kind), args.tree_form, fh)
        else:
            stats = run_campaign(
                c.as_array(), args.trials, args.seed, kind.value, args.workers
            )
            for h, w in zip(stats.heights, stats.widths):
                fh.write(f"{h},{w}\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    text = _read_source(args)
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    if ":" in body:
        tree = tree_from_text(text)
    else:
        tree = decode(OrderKind(args.kind), parse_sequence_text(text))
    p = profile(tree)
    with _open_output(args.output) as fh:
        fh.write(f"n={tree.n}\n")
        fh.write(f"height={p.height}\n")
        fh.write(f"width={p.width}\n")
        fh.write("profile=" + ",".join(map(str, p.z)) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise _UsageError("--trials must be >= 1")
    c = parse_sequence_text(_read_source(args))
    report = monte_carlo_report(
        c,
        trials=args.trials,
        seed=args.seed,
        kind=OrderKind(args.kind),
        workers=args.workers,
    )
    with _open_output(args.output) as fh:
        if args.format == "csv":
            report.write_csv(fh)
        else:
            fh.write(report.json_text() + "\n")
    violations = report.domination_violations()
    if violations:
        for v in violations:
            print(
                f"violation: {v.column} tail at m={v.m}: "
                f"emp={v.emp:.6g} > bound={v.bound:.6g}",
                file=sys.stderr,
            )
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    results = run_all(seed=args.seed)
    failed = False
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: {r.detail}")
        failed = failed or not r.passed
    return EXIT_VIOLATION if failed else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BrokenPipeError:
        # downstream consumer closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (PlaneTreeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
