"""Command-line front end.

Subcommands:

* ``cvol FILE``      full pipeline: parse, solve shapes, solve flattenings,
                     evaluate the lifted Rogers sum; reports volume and the
                     Chern-Simons value modulo pi^2.
* ``verify``         randomized identity suites (five-term, transfer, ...).
* ``homology FILE``  homology of the J-complex.
* ``edges FILE``     edge classes and valences.
* ``flatten FILE``   branch-index table and residual report.

Output is text or JSON; JSON field order is fixed and floats use the
shortest round-trip decimal, so identical inputs (and seeds) give
byte-identical output.  Exit code 0 means every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CVolError
from .flattening import (
    build_j_complex,
    complex_volume,
    homology_of_j,
    h1_mod2,
    integral_defect,
    omega,
    solve_flattenings,
)
from .gluing import solve_shapes
from .triangulation import edge_classes, parse_triangulation
from .verify import run_all


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise CVolError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CVolError(f"{path} is not valid JSON: {exc}") from exc
    return parse_triangulation(document)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report))
        return
    for key, value in report.items():
        print(f"{key}: {value}")


def _pipeline(args) -> dict:
    if args.mode != "ep":
        raise CVolError(
            "even-index (eep) triangulation pipeline not implemented; "
            "use --mode ep"
        )
    tri = _stage("parse", _load, args.file)
    solution = _stage(
        "solve_shapes", solve_shapes, tri, None, args.tolerance_newton,
        args.max_iter,
    )
    assignment = _stage(
        "solve_flattenings", solve_flattenings, tri, solution.shapes,
        args.tolerance,
    )
    vol, cs = complex_volume(tri, solution.shapes, assignment)
    warnings = []
    if not solution.geometric:
        warnings.append("solution contains negatively oriented tetrahedra")
    if assignment.edge_flattened_only:
        warnings.append("edge-flattened only: no cusp paths supplied, "
                        "cs unverified")
    report = {
        "volume": vol,
        "cs_mod_pi2": cs,
        "flattenings": [list(pq) for pq in assignment.pq()],
        "shapes": [[z.real, z.imag] for z in solution.shapes],
        "residuals": {
            "gluing_max": solution.residual,
            "edge_flattening_max": max(
                (abs(r) for r in assignment.edge_residuals), default=0.0
            ),
            "path_flattening_max": max(
                (abs(r) for r in assignment.path_residuals), default=0.0
            ),
            "path_parities": assignment.path_parities,
            "defect_even": all(d % 2 == 0 for d in assignment.defect),
        },
        "mode": args.mode,
        "warnings": warnings,
    }
    return report


class _StageError(CVolError):
    def __init__(self, stage: str, original: Exception):
        super().__init__(f"error at stage {stage}: {original}")
        self.stage = stage


def _stage(name: str, fn, *args):
    try:
        return fn(*args)
    except CVolError as exc:
        raise _StageError(name, exc) from exc


def cmd_cvol(args) -> int:
    _emit(_pipeline(args), args.format)
    return 0


def cmd_verify(args) -> int:
    results = run_all(count=args.count, seed=args.seed, tol=args.tolerance)
    report = {
        "seed": args.seed,
        "count": args.count,
        "suites": [
            {
                "name": r.name,
                "count": r.count,
                "passed": r.passed,
                "max_residual": r.max_residual,
                "failures": r.failures,
            }
            for r in results
        ],
        "passed": all(r.passed for r in results),
        "max_residual": max((r.max_residual for r in results), default=0.0),
    }
    if args.format == "json":
        print(json.dumps(report))
    else:
        for r in results:
            status = "pass" if r.passed else "FAIL"
            print(f"{status}  {r.name}  (count={r.count}, "
                  f"max residual {r.max_residual:.3g})")
            for failure in r.failures:
                print(f"      counterexample: {failure}")
        print("all passed" if report["passed"] else "FAILURES above")
    return 0 if report["passed"] else 1


def cmd_homology(args) -> int:
    tri = _stage("parse", _load, args.file)
    jc = build_j_complex(tri)
    groups = homology_of_j(jc)
    report = {
        "homology": {f"H{k}": str(groups[k]) for k in (5, 4, 3, 2, 1)},
        "h1_mod2_rank": h1_mod2(tri),
    }
    _emit(report, args.format)
    return 0


def cmd_edges(args) -> int:
    tri = _stage("parse", _load, args.file)
    classes = edge_classes(tri)
    report = {
        "edge_classes": [
            {
                "index": e.index,
                "valence": e.valence,
                "incidences": [
                    {"tet": t, "edge": list(pair), "orientation": o}
                    for t, pair, o in e.incidences
                ],
            }
            for e in classes
        ],
    }
    _emit(report, args.format)
    return 0


def cmd_flatten(args) -> int:
    tri = _stage("parse", _load, args.file)
    solution = _stage(
        "solve_shapes", solve_shapes, tri, None, args.tolerance_newton,
        args.max_iter,
    )
    assignment = _stage(
        "solve_flattenings", solve_flattenings, tri, solution.shapes,
        args.tolerance,
    )
    jc = build_j_complex(tri)
    defect = integral_defect(jc, omega(tri, solution.shapes), args.tolerance)
    report = {
        "flattenings": [list(pq) for pq in assignment.pq()],
        "orientation_signs": assignment.signs,
        "edge_residuals": [abs(r) for r in assignment.edge_residuals],
        "path_residuals": [abs(r) for r in assignment.path_residuals],
        "path_parities": assignment.path_parities,
        "defect": defect,
        "edge_flattened_only": assignment.edge_flattened_only,
        "kernel": assignment.kernel,
    }
    _emit(report, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvol",
        description="Complex volume of hyperbolic 3-manifolds from ideal "
        "triangulations, plus identity verification suites.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--tolerance", type=float, default=1e-9,
                        help="integrality / comparison tolerance")
    parser.add_argument("--tolerance-newton", type=float, default=1e-12,
                        help="Newton residual target")
    parser.add_argument("--max-iter", type=int, default=100)
    parser.add_argument("--mode", choices=("ep", "eep"), default="ep")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cvol", help="volume and Chern-Simons of a "
                       "triangulation file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_cvol)

    p = sub.add_parser("verify", help="run the randomized identity suites")
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("homology", help="homology of the J-complex")
    p.add_argument("file")
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("edges", help="edge classes of a triangulation")
    p.add_argument("file")
    p.set_defaults(fn=cmd_edges)

    p = sub.add_parser("flatten", help="branch-index assignment and residuals")
    p.add_argument("file")
    p.set_defaults(fn=cmd_flatten)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CVolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
