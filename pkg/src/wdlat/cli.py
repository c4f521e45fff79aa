"""Command-line interface.

Exit status contract: 0 clean, 1 property violation found (differential
violations, triple orphans, rank mismatch), 2 usage or IO errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import analyze, fileio, ideals, process
from .poset import Ideal, Poset, PosetError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _load_poset(path: str) -> Poset:
    try:
        return fileio.read_poset(path)
    except OSError as exc:
        raise SystemExit(_usage_error(f"cannot read {path}: {exc}"))
    except fileio.FormatError as exc:
        raise SystemExit(_usage_error(f"{path}: {exc}"))


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _parse_ideal(poset: Poset, text: str) -> Ideal:
    names = [t for t in text.split(",") if t]
    return Ideal(tuple(poset.id_of(n) for n in names))


def _numbered_path(path: str, index: int) -> str:
    stem, dot, ext = path.rpartition(".")
    if not dot:
        return f"{path}.{index:03d}"
    return f"{stem}.{index:03d}.{ext}"


def cmd_construct(args: argparse.Namespace) -> int:
    degree = process.DegreeFunction.constant(args.degree)
    if args.weights == "unit":
        result = process.construct(
            degree, process.WeightPolicy.unit(), args.max_size, order=args.order
        )
        fileio.write_poset(result.poset, args.out)
        if args.trace:
            fileio.write_trace(result.poset, result.trace, args.trace)
        print(
            f"constructed {len(result.poset)} points over "
            f"{len(result.trace)} ideals -> {args.out}"
        )
        return EXIT_OK
    policy = process.WeightPolicy.search(args.max_weight, args.max_new)
    outcome = process.search(
        degree, policy, args.max_size, branch_limit=args.branch_limit
    )
    for index, hit in enumerate(outcome.lattices, start=1):
        path = _numbered_path(args.out, index)
        fileio.write_poset(hit.poset, path)
        if args.trace:
            fileio.write_trace(hit.poset, hit.trace, _numbered_path(args.trace, index))
        print(f"lattice {index}: {len(hit.poset)} points -> {path}")
    print(
        f"search: {len(outcome.lattices)} distinct lattices, "
        f"{outcome.pruned_branches} pruned branches, "
        f"{outcome.explored_choices} explored choices"
    )
    if outcome.truncated:
        print("warning: branch limit reached, results are partial", file=sys.stderr)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    poset = _load_poset(args.poset)
    degree = process.DegreeFunction.constant(args.degree)
    report = analyze.verify_differential(poset, degree, args.max_size)
    print(
        f"checked {report.ideal_count} ideals up to size {report.checked_horizon}"
    )
    if report.ok:
        print("differential condition holds on the checked horizon")
        return EXIT_OK
    for ideal, lhs, rhs in report.violations:
        print(
            f"violation at {ideal.label(poset)}: "
            f"insertion weight {lhs} != deletion weight + degree {rhs}"
        )
    return EXIT_VIOLATION


def cmd_orphans(args: argparse.Namespace) -> int:
    poset = _load_poset(args.poset)
    report = analyze.orphan_report(poset)
    names = sorted(poset.name(p) for p in report.orphans)
    print(f"orphans ({len(names)}): {' '.join(names) if names else '-'}")
    for parent, count in report.multi_orphan_parents:
        print(f"point {poset.name(parent)} is covered by {count} orphans")
    for point in poset.point_ids():
        principal = poset.generated_ideal([point])
        try:
            rel = analyze.derived_relations(poset, args.degree, point)
        except analyze.UnverifiedPosetError:
            continue
        status = "hold" if rel.all_hold else "FAIL"
        print(
            f"relations at {poset.name(point)} "
            f"(principal size {len(principal)}): {status}; "
            f"orphans {{{','.join(sorted(poset.name(a) for a in rel.orphans))}}}"
        )
    if report.multi_orphan_parents:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_ranks(args: argparse.Namespace) -> int:
    poset = _load_poset(args.poset)
    profile = ideals.rank_profile(poset, args.max_n)
    print("ideals by size: " + ",".join(str(c) for c in profile))
    if args.expect_degree is not None:
        expected = ideals.partition_convolution_oracle(
            args.expect_degree, args.max_n
        )
        if list(profile.counts) != expected:
            print(
                "mismatch with the degree-"
                f"{args.expect_degree} oracle: {','.join(map(str, expected))}"
            )
            return EXIT_VIOLATION
        print(f"matches the degree-{args.expect_degree} partition oracle")
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    poset = _load_poset(args.poset)
    highlight = None
    if args.ideal is not None:
        try:
            highlight = _parse_ideal(poset, args.ideal)
        except PosetError as exc:
            return _usage_error(str(exc))
        if not poset.is_ideal(highlight):
            return _usage_error(
                f"--ideal {args.ideal!r} is not downward closed"
            )
    text = fileio.export_dot(poset, highlight)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(text)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wdlat",
        description="Construct, search, and verify weighted-differential "
        "distributive lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="run the ideal-iteration process")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--weights", choices=["unit", "search"], default="unit")
    p.add_argument("--max-weight", type=int, default=1)
    p.add_argument("--max-new", type=int, default=4)
    p.add_argument("--branch-limit", type=int, default=1_000_000)
    p.add_argument("--order", choices=["size", "agenda"], default="size")
    p.add_argument("--out", required=True)
    p.add_argument("--trace")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="verify the differential condition")
    p.add_argument("--poset", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("orphans", help="orphan report and derived relations")
    p.add_argument("--poset", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_orphans)

    p = sub.add_parser("ranks", help="ideal counts by size")
    p.add_argument("--poset", required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--expect-degree", type=int)
    p.set_defaults(func=cmd_ranks)

    p = sub.add_parser("export-dot", help="write a DOT Hasse diagram")
    p.add_argument("--poset", required=True)
    p.add_argument("--ideal", help="comma-separated point names to highlight")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (process.ProcessError, PosetError, OSError) as exc:
        return _usage_error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
