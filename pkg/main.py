"""
Main entry point for cyclogon
Cyclic polygon metrics, identity fuzzing and symbolic derivation from the
command line
"""
import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

ROOT_DIR = Path(__file__).resolve().parent
if str(ROOT_DIR) not in sys.path:
    sys.path.insert(0, str(ROOT_DIR))

from cyclogon.errors import (
    CyclogonError, DerivationError, NoConvexCyclicPolygon, NoCyclicQuad, ZeroDenominator,
)
from cyclogon.models import OutputFormat, PolygonPath, Precision, RunConfig, SideLengths5
from cyclogon.settings import get_settings
from backend.affine_regular import AffineRegularService
from backend.cyclic_solver import VARIANTS, CyclicSolverService
from backend.elim_engine import DERIVATION_TARGETS, EliminationService, derive_area_rational, shown_diff
from backend.formats import emit, read_points
from backend.fuzz import FuzzService
from backend.geom_kernel import IDENTITIES, GeometryKernelService, polygon_area, vertex_triangle_areas

logger = logging.getLogger("cyclogon")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NO_POLYGON = 2
EXIT_MISMATCH = 3
EXIT_CHECK_FAILED = 4
EXIT_DERIVATION_FAILED = 5


def _print(record: Dict, args: argparse.Namespace) -> None:
    print(emit(record, OutputFormat(args.output)))


def _tolerance(args: argparse.Namespace) -> float:
    return args.tol if args.tol is not None else get_settings().tolerance


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


def _quadrilateral_sides(sides: Sequence[float]) -> Optional[List[float]]:
    """Four sides in path order when the input describes a quadrilateral, else None."""
    if len(sides) == 4:
        return list(sides)
    zeros = [i for i, x in enumerate(sides) if x == 0]
    if len(zeros) == 1:
        return [x for x in sides if x != 0]
    return None


def _status(residuals: Sequence[float], tolerance: float) -> int:
    return EXIT_OK if all(r <= tolerance for r in residuals) else EXIT_MISMATCH


# ----------------------------------------------------------------------
# metric subcommands
# ----------------------------------------------------------------------

def cmd_area(args: argparse.Namespace) -> int:
    tolerance = _tolerance(args)
    quad = _quadrilateral_sides(args.sides)
    if quad is not None:
        metrics = CyclicSolverService.quad_metrics(*quad)
        path, _, _, _ = CyclicSolverService.construct_cyclic_polygon(quad)
        shoelace = float(polygon_area(path))
        residual = _relative(metrics.A, shoelace)
        record = {"path": "quadrilateral", "sides": list(args.sides), "A": shoelace,
                  "brahmagupta": metrics.A, "residual": residual}
        residuals = [residual]
        if len(args.sides) == 5:
            reports = CyclicSolverService.quadrilateral_degeneration(SideLengths5(tuple(args.sides)))
            record["degeneration"] = {name: r.relative for name, r in sorted(reports.items())}
            residuals.extend(r.relative for r in reports.values())
        _print(record, args)
        return _status(residuals, tolerance)

    sides = SideLengths5(tuple(args.sides))
    solution = CyclicSolverService.construct_cyclic_pentagon(sides)
    e = CyclicSolverService.elem_sym(sides)
    y = (4 * solution.A) ** 2
    roots = CyclicSolverService.robbins_roots(e, y, args.variant)
    flagged = next((r.root for r in roots if r.flagged), math.nan)
    root_area = math.sqrt(flagged) / 4 if flagged >= 0 else math.nan
    residual = CyclicSolverService.robbins_eval(y, e, args.variant)
    record = {
        "path": "pentagon",
        "sides": list(sides.a),
        "A": solution.A,
        "root_A": root_area,
        "root_Y": flagged,
        "real_roots_Y": [r.root for r in roots],
        "residual": residual.relative,
        "variant": args.variant,
    }
    if args.variant == "derived":
        t = vertex_triangle_areas(solution.vertices)
        try:
            record["rational_A"] = CyclicSolverService.area_rational_T68(sides, t)
        except ZeroDenominator as exc:
            logger.warning("Rational area form unusable here: %s", exc)
            record["rational_A"] = None
    _print(record, args)
    mismatch = _relative(root_area, solution.A) if not math.isnan(root_area) else math.inf
    return _status([residual.relative, mismatch], tolerance)


def cmd_radius(args: argparse.Namespace) -> int:
    tolerance = _tolerance(args)
    quad = _quadrilateral_sides(args.sides)
    if quad is not None:
        metrics = CyclicSolverService.quad_metrics(*quad)
        radius, center_inside = CyclicSolverService.solve_circumradius(quad)
        residual = _relative(metrics.R, radius)
        _print({"path": "quadrilateral", "sides": list(args.sides), "R": radius,
                "closed_form_R": metrics.R, "center_inside": center_inside, "residual": residual}, args)
        return _status([residual], tolerance)

    sides = SideLengths5(tuple(args.sides))
    solution = CyclicSolverService.construct_cyclic_pentagon(sides)
    e = CyclicSolverService.elem_sym(sides)
    r2 = solution.R ** 2
    roots = CyclicSolverService.table_roots("circumradius", e, r2, args.variant)
    flagged = next((r.root for r in roots if r.flagged), math.nan)
    root_radius = math.sqrt(flagged) if flagged >= 0 else math.nan
    residual = CyclicSolverService.circumradius_poly_residual(r2, e, args.variant)
    _print({
        "path": "pentagon",
        "sides": list(sides.a),
        "R": solution.R,
        "root_R": root_radius,
        "center_inside": solution.center_inside,
        "residual": residual.relative,
        "variant": args.variant,
    }, args)
    mismatch = _relative(root_radius, solution.R) if not math.isnan(root_radius) else math.inf
    return _status([residual.relative, mismatch], tolerance)


def cmd_diagonals(args: argparse.Namespace) -> int:
    tolerance = _tolerance(args)
    quad = _quadrilateral_sides(args.sides)
    if quad is not None:
        metrics = CyclicSolverService.quad_metrics(*quad)
        a, b, c, d = quad
        residual = _relative(metrics.e * metrics.f, a * c + b * d)
        _print({"path": "quadrilateral", "sides": list(args.sides), "e": metrics.e, "f": metrics.f,
                "residual": residual}, args)
        return _status([residual], tolerance)

    sides = SideLengths5(tuple(args.sides))
    solution = CyclicSolverService.construct_cyclic_pentagon(sides)
    root_values, residuals = [], []
    for i, diagonal in enumerate(solution.d):
        roots = CyclicSolverService.diagonal_roots(sides, i, diagonal)
        root_values.append(next((r.root for r in roots if r.flagged), math.nan))
        residuals.append(CyclicSolverService.diagonal_septic_residual(diagonal, sides.rotated(i)).relative)
    _print({"path": "pentagon", "sides": list(sides.a), "d": list(solution.d),
            "root_d": root_values, "residual": residuals}, args)
    mismatches = [_relative(r, d) if not math.isnan(r) else math.inf for r, d in zip(root_values, solution.d)]
    return _status(residuals + mismatches, tolerance)


# ----------------------------------------------------------------------
# verification and derivation
# ----------------------------------------------------------------------

def cmd_check(args: argparse.Namespace) -> int:
    config = RunConfig(
        seed=args.seed,
        trials=args.trials,
        tolerance=args.tol,
        precision=Precision(args.precision),
        output=OutputFormat(args.output),
    )
    report = FuzzService.run(args.identity, config, args.workers)
    _print(report.to_json_dict(), args)
    if not report.ok:
        for case in report.failing_cases:
            print(f"FAILED {args.identity} {case}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_derive(args: argparse.Namespace) -> int:
    if args.target == "area_rational":
        report = derive_area_rational()
        _print(report.to_json_dict(), args)
        return EXIT_OK
    directory = Path(args.out_dir) if args.out_dir else None
    try:
        report, paths = EliminationService.derive_and_write(args.target, directory)
    except DerivationError as exc:
        print(f"Derivation of {args.target} failed: {exc}", file=sys.stderr)
        if exc.diff:
            print(f"{len(exc.diff)} differing terms", file=sys.stderr)
        for line in shown_diff(exc.diff):
            print(line, file=sys.stderr)
        return EXIT_DERIVATION_FAILED
    record = report.to_json_dict()
    record["files"] = [str(p) for p in paths]
    _print(record, args)
    if not report.ok:
        failed = sorted(name for name, passed in report.checks.items() if not passed)
        print(f"Derivation of {args.target} failed checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_DERIVATION_FAILED
    return EXIT_OK


def cmd_residual(args: argparse.Namespace) -> int:
    points = read_points(args.points)
    reports = GeometryKernelService.residuals(args.identity, points)
    _print({"identity": args.identity, "residuals": [r.to_json_dict() for r in reports]}, args)
    return _status([r.relative for r in reports], _tolerance(args))


def cmd_classify(args: argparse.Namespace) -> int:
    points = read_points(args.points)
    tol = args.tol if args.tol is not None else 1e-9
    if len(points) == 5:
        verdict = AffineRegularService.parallel_classification(points, tol)
    elif len(points) == 6:
        verdict = AffineRegularService.is_affine_regular_hexagon(PolygonPath(tuple(points)), tol)
    else:
        raise ValueError(f"classify takes 5 or 6 points, got {len(points)}")
    _print(verdict.to_json_dict(), args)
    return EXIT_OK


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="Relative tolerance")
    parser.add_argument("--output", choices=[f.value for f in OutputFormat], default="json",
                        help="Output format")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="More logging (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclogon",
        description="Areas, circumradii and diagonals of cyclic and affine-regular polygons",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, handler, summary in (
        ("area", cmd_area, "Area of the cyclic polygon with the given sides"),
        ("radius", cmd_radius, "Circumradius of the cyclic polygon with the given sides"),
        ("diagonals", cmd_diagonals, "Diagonals of the cyclic polygon with the given sides"),
    ):
        sub = subparsers.add_parser(name, help=summary)
        sub.add_argument("sides", type=float, nargs="+",
                         help="a0 .. a4 (side a[i] opposite vertex i), or four quadrilateral sides")
        sub.add_argument("--variant", choices=VARIANTS, default="derived",
                         help="Use the derived or the printed polynomial")
        _add_common(sub)
        sub.set_defaults(handler=handler)

    check = subparsers.add_parser("check", help="Fuzz one identity on seeded random configurations")
    check.add_argument("identity", choices=FuzzService.identities())
    check.add_argument("--seed", type=int, default=42, help="Base seed")
    check.add_argument("--trials", type=int, default=1000, help="Number of trials")
    check.add_argument("--precision", choices=[p.value for p in Precision], default="double")
    check.add_argument("--workers", type=int, default=None, help="Worker threads")
    _add_common(check)
    check.set_defaults(handler=cmd_check)

    derive = subparsers.add_parser("derive", help="Derive a degree-7 polynomial and write golden files")
    derive.add_argument("target", choices=DERIVATION_TARGETS + ("area_rational",))
    derive.add_argument("--out-dir", default=None, help="Golden directory (default from settings)")
    _add_common(derive)
    derive.set_defaults(handler=cmd_derive)

    residual = subparsers.add_parser("residual", help="Evaluate one area identity on a point list")
    residual.add_argument("identity", choices=sorted(IDENTITIES))
    residual.add_argument("--points", required=True, help="JSON or CSV point file")
    _add_common(residual)
    residual.set_defaults(handler=cmd_residual)

    classify = subparsers.add_parser("classify", help="Affine-regularity verdict for 5 or 6 points")
    classify.add_argument("--points", required=True, help="JSON or CSV point file")
    _add_common(classify)
    classify.set_defaults(handler=cmd_classify)

    return parser


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, get_settings().log_level, logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except NoConvexCyclicPolygon as exc:
        print(f"No convex cyclic polygon: {exc}", file=sys.stderr)
        return EXIT_NO_POLYGON
    except NoCyclicQuad as exc:
        print(f"No cyclic quadrilateral: {exc}", file=sys.stderr)
        return EXIT_NO_POLYGON
    except (CyclogonError, ValueError, OSError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == '__main__':
    sys.exit(main())
