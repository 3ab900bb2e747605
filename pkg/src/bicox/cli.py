"""Command-line front end.

Subcommands: ``build`` (enumerate a group into the cache), ``verify`` (run
the structural, topological, and enumerative check suite), ``tables`` (emit
the two-sided Eulerian matrix and gamma table), and ``export`` (Hasse
diagrams and contingency tables as DOT/JSON).

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from pathlib import Path

from . import cache as cache_mod
from .complexes import (
    TwoSidedComplex,
    euler_characteristic,
    face_count,
    face_label,
    hasse_dot,
    sigma_ideal,
    verify_balanced,
    verify_boolean,
    verify_facet_count,
    verify_partition,
    verify_pseudomanifold,
    verify_shelling,
    verify_sigma_embedding,
    verify_thin,
    verify_weak_order_monotone,
)
from .contingency import SymmetricGroupFaces, verify_refinement_isomorphism
from .cosets import double_quotient_size
from .coxeter import DEFAULT_BUDGET, build_group, classify, length_order, parse_type_spec
from .enumeration import (
    eulerian_from_flag,
    eulerian_symmetric,
    flag_f,
    flag_h,
    flag_h_from_f,
    gamma_expansion,
    reciprocity_holds,
    two_sided_eulerian,
)
from .errors import BicoxError, CacheError, CapacityError, NotFiniteError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

HEAVY_ORDER = 1_000_000
COMPLEX_GATE = 500_000  # max face count the verify suite will materialize
SAMPLE_FACES = 10_000


def default_cache_dir() -> Path:
    env = os.environ.get("BICOX_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "bicox"


def get_table(args):
    system = classify(parse_type_spec(args.type))
    if system.order > HEAVY_ORDER and not args.allow_heavy:
        raise CapacityError(
            f"{system.canonical_name} has {system.order} elements; "
            "pass --allow-heavy to build it"
        )
    path = cache_mod.cache_path(args.cache_dir, system.canonical_name)
    if path.exists():
        table = cache_mod.load_table(path)
        if table.system.matrix != system.matrix:
            raise CacheError(f"cache file {path} was built from a different matrix")
        return table, path, True
    table = build_group(system, budget=args.budget)
    cache_mod.save_table(table, args.cache_dir)
    return table, path, False


def emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text + ("\n" if not text.endswith("\n") else ""))
    else:
        print(text)


# ---------------------------------------------------------------------------
# verify


def run_verification(table, full_shelling: bool = False, seed: int = 0):
    """All checks as (name, status, detail); statuses PASS/FAIL/SKIP/FLAG."""
    n = table.rank
    results = []

    def record(name, ok, detail=""):
        results.append((name, "PASS" if ok else "FAIL", detail))

    f = flag_f(table)
    h = flag_h(table)
    record("inclusion-exclusion", flag_h_from_f(f, n) == h)
    record("reciprocity", reciprocity_holds(f, h, n))
    census = two_sided_eulerian(table)
    record("eulerian-from-flag", eulerian_from_flag(f, n) == census)
    record("eulerian-symmetries", eulerian_symmetric(census))
    try:
        gamma = gamma_expansion(census)
        record("gamma-reconstruction", True)
        negatives = gamma.negative_entries()
        if negatives:
            results.append(("gamma-nonnegative", "FLAG", f"negative entries {negatives}"))
        else:
            record("gamma-nonnegative", True)
    except BicoxError as err:
        record("gamma-reconstruction", False, str(err))

    if n <= 4:
        full = table.full_mask
        ok = all(
            f[full ^ gens_l][full ^ gens_r]
            == double_quotient_size(table, gens_l, gens_r)
            for gens_l in range(full + 1)
            for gens_r in range(full + 1)
        )
        record("double-quotient-oracle", ok, f"{4 ** n} subset pairs")
    else:
        results.append(("double-quotient-oracle", "SKIP", "rank > 4"))

    total_faces = face_count(table)
    if total_faces > COMPLEX_GATE:
        results.append(
            ("complex", "SKIP", f"{total_faces} faces exceed the gate of {COMPLEX_GATE}")
        )
        return results

    cx = TwoSidedComplex.build(table)
    rng = random.Random(seed)
    if n <= 3:
        sample = None
        pair_sample = None
    else:
        sample = [cx.faces[rng.randrange(len(cx.faces))] for _ in range(SAMPLE_FACES)]
        pair_sample = SAMPLE_FACES
    record("boolean-intervals", verify_boolean(cx, faces=sample))
    record("balanced-coloring", verify_balanced(cx, faces=sample))
    record("interval-partition", verify_partition(cx))
    if table.order <= 20000:
        record("weak-order-monotone", verify_weak_order_monotone(cx, faces=sample))
    else:
        results.append(("weak-order-monotone", "SKIP", "group too large"))
    record("facet-count", verify_facet_count(cx))
    record("sigma-embedding", verify_sigma_embedding(cx, sample_pairs=pair_sample))
    record("thin", verify_thin(cx))
    record("pseudomanifold", verify_pseudomanifold(cx))
    record("euler-characteristic", euler_characteristic(cx) == 0)
    if n <= 3 or full_shelling:
        report = verify_shelling(cx, length_order(table))
        record(
            "shelling",
            report.ok,
            "" if report.ok else f"first mismatch at facet {report.first_mismatch}",
        )
    else:
        results.append(("shelling", "SKIP", "rank > 3; pass --full-shelling"))
    if table.system.is_irreducible("A") and n <= 3:
        record("contingency-isomorphism", verify_refinement_isomorphism(table))
    return results


def cmd_verify(args) -> int:
    table, _, _ = get_table(args)
    results = run_verification(table, full_shelling=args.full_shelling)
    if args.format == "json":
        emit(
            args,
            json.dumps(
                {
                    "type": table.system.canonical_name,
                    "order": table.order,
                    "checks": [
                        {"name": name, "status": status, "detail": detail}
                        for name, status, detail in results
                    ],
                },
                indent=2,
            ),
        )
    else:
        lines = [f"{table.system.canonical_name}: order {table.order}"]
        for name, status, detail in results:
            suffix = f"  ({detail})" if detail else ""
            lines.append(f"{status:4} {name}{suffix}")
        emit(args, "\n".join(lines))
    failed = any(status == "FAIL" for _, status, _ in results)
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# tables


def _matrix_text(matrix) -> str:
    width = max(len(str(x)) for row in matrix for x in row)
    return "\n".join(" ".join(f"{x:>{width}}" for x in row) for row in matrix)


def _matrix_csv(matrix, corner: str) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow([corner] + list(range(len(matrix[0]))))
    for i, row in enumerate(matrix):
        writer.writerow([i] + list(row))
    return out.getvalue().rstrip("\n")


def cmd_tables(args) -> int:
    table, _, _ = get_table(args)
    census = two_sided_eulerian(table)
    gamma = gamma_expansion(census)
    grid = gamma.as_grid()
    if args.format == "json":
        payload = {
            "type": table.system.canonical_name,
            "order": table.order,
            "eulerian": census,
            "gamma": {
                "entries": sorted(
                    [a, b, v] for (a, b), v in gamma.entries.items() if v
                ),
                "grid": grid,
            },
        }
        emit(args, json.dumps(payload, indent=2))
    elif args.format == "csv":
        emit(
            args,
            _matrix_csv(census, "descents")
            + "\n\n"
            + _matrix_csv(grid, "a+b\\a"),
        )
    else:
        emit(
            args,
            f"{table.system.canonical_name}: order {table.order}\n"
            "two-sided Eulerian matrix:\n"
            + _matrix_text(census)
            + "\ngamma table (row a+b, column a):\n"
            + _matrix_text(grid),
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# export


def cmd_export(args) -> int:
    table, _, _ = get_table(args)
    if face_count(table) > COMPLEX_GATE:
        raise CapacityError("complex too large to export")
    cx = TwoSidedComplex.build(table)
    if args.what == "hasse":
        emit(args, hasse_dot(cx, min_rank=args.min_rank, max_rank=args.max_rank))
        return EXIT_OK
    if args.what == "sigma":
        emit(args, hasse_dot(cx, faces=sigma_ideal(cx)))
        return EXIT_OK
    model = SymmetricGroupFaces(table)  # raises ValueError unless type A
    entries = []
    order = sorted(cx.faces, key=lambda f: (cx.face_rank(f), f.left, f.right, f.w))
    for face in order:
        entries.append(
            {
                "face": face_label(table, face),
                "table": model.face_to_table(face).display(),
            }
        )
    if args.format == "dot":
        index = {face: i for i, face in enumerate(order)}
        lines = ["digraph tables {", "  rankdir=BT;"]
        for face, i in index.items():
            label = json.dumps(model.face_to_table(face).display(), separators=(",", ":"))
            lines.append(f'  n{i} [label="{label}"];')
        for face in order:
            for g in cx.down_covers(face):
                lines.append(f"  n{index[g]} -> n{index[face]};")
        lines.append("}")
        emit(args, "\n".join(lines))
    else:
        emit(args, json.dumps(entries, indent=2))
    return EXIT_OK


def cmd_build(args) -> int:
    table, path, hit = get_table(args)
    status = "cached" if hit else "built"
    print(
        f"{status} {table.system.canonical_name}: order {table.order}, "
        f"max length {int(table.length.max())}, cache {path}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicox",
        description="Finite Coxeter groups and their two-sided Coxeter complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", required=True, help='type spec, e.g. "A3", "B4xA1", "I2(7)"')
        p.add_argument("--cache-dir", default=None, help="cache directory (or $BICOX_CACHE_DIR)")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="element budget")
        p.add_argument("--allow-heavy", action="store_true", help="permit very large groups")
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")

    p_build = sub.add_parser("build", help="enumerate a group and cache its table")
    common(p_build)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    common(p_verify)
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    p_verify.add_argument(
        "--full-shelling",
        action="store_true",
        help="face-level shelling verification above rank 3 (expensive)",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_tables = sub.add_parser("tables", help="emit Eulerian and gamma tables")
    common(p_tables)
    p_tables.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p_tables.set_defaults(func=cmd_tables)

    p_export = sub.add_parser("export", help="export Hasse diagrams or contingency tables")
    common(p_export)
    p_export.add_argument("--what", choices=["hasse", "sigma", "contingency"], required=True)
    p_export.add_argument("--format", choices=["dot", "json"], default="dot")
    p_export.add_argument("--min-rank", type=int, default=0)
    p_export.add_argument("--max-rank", type=int, default=None)
    p_export.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.cache_dir is None:
        args.cache_dir = default_cache_dir()
    try:
        return args.func(args)
    except CapacityError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except (NotFiniteError, CacheError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except BicoxError as err:
        print(f"internal error: {err}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
