"""Command-line front end: generate, assign, verify, reduce, solve, bench.

All structured data moves as JSON (one object per file) and bench emits CSV.
Outputs are byte-deterministic for identical inputs and flags; the optional
``--version-header`` flag prepends a single ``#``-prefixed metadata line,
which every consuming subcommand skips on read.

Exit status: 0 on success (for ``verify``/``equivalence``: the property
held), 1 when the checked property failed, 2 on malformed input or any
other error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from . import __version__
from .core import (
    SetSystem,
    WeightAssignment,
    assign_deterministic,
    separation_trial_rate,
    verify_separated,
)
from .errors import EquivalenceFailureError, SetSepError
from .families import (
    Tree,
    bounded_subset_family,
    disjoint_pair_union_family,
    interval_family,
    tree_path_family,
)
from .reductions import (
    BinFillingInstance,
    ThreeDPMInstance,
    check_equivalence,
    reduce_3dpm_to_binfilling,
    solve_3dpm_bruteforce,
    solve_binfilling_bruteforce,
)

_BENCH_COLUMNS = (
    "instance_id",
    "family_kind",
    "n_elements",
    "family_size",
    "det_max_weight",
    "bound_thm1",
    "bound_thm2",
    "rand_M",
    "rand_success_rate",
    "trials",
    "seed",
)


class _CliError(Exception):
    def __init__(self, message: str, status: int = 2):
        super().__init__(message)
        self.status = status


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}") from exc
    # Skip leading metadata lines written under --version-header.
    lines = text.splitlines(keepends=True)
    body_start = 0
    while body_start < len(lines) and lines[body_start].startswith("#"):
        body_start += 1
    body = "".join(lines[body_start:])
    try:
        return json.loads(body)
    except json.JSONDecodeError as exc:
        raise _CliError(f"parse error in {path}: {exc}") from exc


def _write_text(text: str, output: str | None, version_header: bool) -> None:
    header = f"# setsep {__version__}\n" if version_header else ""
    payload = header + text
    if output is None:
        sys.stdout.write(payload)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(payload)


def _dump_json(data: dict, output: str | None, version_header: bool) -> None:
    _write_text(json.dumps(data, sort_keys=True, indent=2) + "\n", output, version_header)


def _load_system(path: str) -> SetSystem:
    return SetSystem.from_json_dict(_read_json(path))


def _cmd_generate(args: argparse.Namespace) -> int:
    requested = [
        args.intervals is not None,
        args.pairs is not None,
        args.subsets is not None,
        args.tree is not None,
    ]
    if sum(requested) != 1:
        raise _CliError("generate needs exactly one of --intervals, --pairs, --subsets, --tree")
    if args.intervals is not None:
        system = interval_family(args.intervals)
    elif args.pairs is not None:
        system = disjoint_pair_union_family(args.pairs, include_singles=args.include_singles)
    elif args.subsets is not None:
        size, k = args.subsets
        system = bounded_subset_family(size, k)
    else:
        tree = Tree.from_json_dict(_read_json(args.tree))
        system = tree_path_family(tree)
    _dump_json(system.to_json_dict(), args.output, args.version_header)
    return 0


def _cmd_assign(args: argparse.Namespace) -> int:
    system = _load_system(args.input)
    assignment, report = assign_deterministic(system)
    payload = {"weights": list(assignment.weights), "report": report.to_json_dict()}
    _dump_json(payload, args.output, args.version_header)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    system = _load_system(args.input)
    assignment = WeightAssignment.from_json_dict(_read_json(args.weights))
    report = verify_separated(system, assignment)
    _dump_json(report.to_json_dict(), args.output, args.version_header)
    return 0 if report.separated else 1


def _cmd_reduce(args: argparse.Namespace) -> int:
    inst = ThreeDPMInstance.from_json_dict(_read_json(args.input))
    reduced = reduce_3dpm_to_binfilling(inst, capacity_mode=args.mode)
    _dump_json(reduced.to_json_dict(), args.output, args.version_header)
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    data = _read_json(args.input)
    if "triples" in data:
        inst = ThreeDPMInstance.from_json_dict(data)
        kwargs = {} if args.limit is None else {"limit": args.limit}
        matching = solve_3dpm_bruteforce(inst, **kwargs)
        payload = {
            "feasible": matching is not None,
            "matching": matching.to_json_dict() if matching else None,
        }
    elif "capacity" in data:
        binfill = BinFillingInstance.from_json_dict(data)
        kwargs = {} if args.limit is None else {"limit": args.limit}
        packing = solve_binfilling_bruteforce(binfill, **kwargs)
        payload = {
            "feasible": packing is not None,
            "packing": packing.to_json_dict() if packing else None,
        }
    else:
        raise _CliError(f"{args.input}: neither a 3DPM instance nor a bin-filling instance")
    _dump_json(payload, args.output, args.version_header)
    return 0


def _cmd_equivalence(args: argparse.Namespace) -> int:
    inst = ThreeDPMInstance.from_json_dict(_read_json(args.input))
    kwargs = {}
    if args.limit is not None:
        kwargs["binfill_limit"] = args.limit
    try:
        report = check_equivalence(inst, capacity_mode=args.mode, **kwargs)
    except EquivalenceFailureError as exc:
        raise _CliError(f"equivalence failed: {exc}", status=1) from exc
    _dump_json(report.to_json_dict(), args.output, args.version_header)
    return 0


def _bench_systems(args: argparse.Namespace) -> list[tuple[str, SetSystem]]:
    systems: list[tuple[str, SetSystem]] = []
    for n in args.intervals or []:
        systems.append(("intervals", interval_family(n)))
    for n in args.pairs or []:
        systems.append(("pairs", disjoint_pair_union_family(n, include_singles=args.include_singles)))
    for size, k in args.subsets or []:
        systems.append(("subsets", bounded_subset_family(size, k)))
    for path in args.tree or []:
        systems.append(("tree", tree_path_family(Tree.from_json_dict(_read_json(path)))))
    for path in args.input or []:
        systems.append(("file", _load_system(path)))
    if not systems:
        raise _CliError("bench needs at least one family flag or --input")
    return systems


def _cmd_bench(args: argparse.Namespace) -> int:
    out = io.StringIO()
    out.write(",".join(_BENCH_COLUMNS) + "\n")
    for instance_id, (kind, system) in enumerate(_bench_systems(args)):
        _, report = assign_deterministic(system)
        rand_m = args.M if args.M is not None else max(1, 2 * len(system.family) ** 2)
        rate = separation_trial_rate(system, rand_m, args.trials, args.seed)
        row = (
            instance_id,
            kind,
            system.n,
            len(system.family),
            report.max_weight,
            report.bound_thm1,
            report.bound_thm2,
            rand_m,
            f"{rate:.6f}",
            args.trials,
            args.seed,
        )
        out.write(",".join(str(v) for v in row) + "\n")
    _write_text(out.getvalue(), args.output, args.version_header)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setsep",
        description="Distinct-sum weight assignments for set families, "
        "specialized family generators, and the matching-to-bin-filling reduction.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("--input", required=True, help="input JSON file")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument(
            "--version-header",
            action="store_true",
            help="prepend a '# setsep <version>' metadata line to the output",
        )

    p = sub.add_parser("generate", help="emit a set system for a built-in family")
    common(p, needs_input=False)
    p.add_argument("--intervals", type=int, metavar="N", help="all intervals on N elements")
    p.add_argument("--pairs", type=int, metavar="N", help="unions of two disjoint intervals on N elements")
    p.add_argument("--include-singles", action="store_true", help="with --pairs, also include single intervals")
    p.add_argument("--subsets", nargs=2, type=int, metavar=("M", "K"), help="nonempty subsets of size <= K on M elements")
    p.add_argument("--tree", metavar="FILE", help="tree JSON file; emits its path family")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("assign", help="run the deterministic assigner on a set system")
    common(p)
    p.set_defaults(func=_cmd_assign)

    p = sub.add_parser("verify", help="check a weight assignment separates a set system")
    common(p)
    p.add_argument("--weights", required=True, help="weight assignment JSON file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reduce", help="reduce a 3DPM instance to bin filling")
    common(p)
    p.add_argument("--mode", choices=["safe", "paper"], default="safe", help="capacity rule")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("solve", help="brute-force a 3DPM or bin-filling instance")
    common(p)
    p.add_argument("--limit", type=int, help="override the solver size limit")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("equivalence", help="check both oracles agree on a 3DPM instance")
    common(p)
    p.add_argument("--mode", choices=["safe", "paper"], default="safe", help="capacity rule")
    p.add_argument("--limit", type=int, help="override the bin-filling item limit")
    p.set_defaults(func=_cmd_equivalence)

    p = sub.add_parser("bench", help="CSV of deterministic vs randomized weight ranges")
    p.add_argument("--input", action="append", metavar="FILE", help="set system JSON (repeatable)")
    p.add_argument("--output", help="output CSV file (default: stdout)")
    p.add_argument("--version-header", action="store_true", help="prepend a metadata line")
    p.add_argument("--intervals", action="append", type=int, metavar="N")
    p.add_argument("--pairs", action="append", type=int, metavar="N")
    p.add_argument("--include-singles", action="store_true")
    p.add_argument("--subsets", action="append", nargs=2, type=int, metavar=("M", "K"))
    p.add_argument("--tree", action="append", metavar="FILE")
    p.add_argument("--M", type=int, dest="M", help="randomized weight range (default: 2*|family|^2)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"setsep: {exc}", file=sys.stderr)
        return exc.status
    except (SetSepError, ValueError) as exc:
        print(f"setsep: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
