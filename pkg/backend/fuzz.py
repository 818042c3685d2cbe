"""
Identity fuzzing harness
Trials are keyed by (seed, index) and sharded over a thread pool, so a
report does not depend on scheduling
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath

from cyclogon.errors import CyclogonError
from cyclogon.models import CheckReport, ElemSym, Point, Precision, RunConfig
from cyclogon.settings import get_settings
from backend.cyclic_oracle import PENTAGON_SIDE_ORDER
from backend.cyclic_solver import CyclicSolverService
from backend.elim_engine import EliminationService, area_rational_form
from backend.geom_kernel import IDENTITIES, GeometryKernelService, polygon_area, vertex_triangle_areas
from data.generators import ConfigurationGenerator

logger = logging.getLogger(__name__)

# binary digits of extended precision (IEEE quad)
EXTENDED_BITS = 113
MAX_REPORTED_CASES = 20

Trial = Callable[[ConfigurationGenerator, Precision], float]


@dataclass(frozen=True)
class IdentityCheck:
    """A fuzzable identity: a trial returning a relative residual"""
    name: str
    tolerance: float
    trial: Trial
    tables: Tuple[str, ...] = ()


def _lift(value, precision: Precision):
    return mpmath.mpf(value) if precision is Precision.EXTENDED else value


def _lift_points(points: Sequence[Point], precision: Precision) -> List[Point]:
    if precision is Precision.DOUBLE:
        return list(points)
    return [Point(mpmath.mpf(p.x), mpmath.mpf(p.y)) for p in points]


def _geometry_trial(name: str) -> Trial:
    spec = GeometryKernelService.identity(name)

    def trial(generator: ConfigurationGenerator, precision: Precision) -> float:
        if spec.convex:
            points = list(generator.convex_polygon(spec.points).vertices)
        else:
            points = generator.random_points(spec.points)
        reports = GeometryKernelService.residuals(name, _lift_points(points, precision))
        return float(max(r.relative for r in reports))

    return trial


def _lemma62_trial(generator: ConfigurationGenerator, precision: Precision) -> float:
    sides = generator.cyclic_sides(4)
    worst = max(CyclicSolverService.lemma62_residuals(*sides).values())
    path, _, _, _ = CyclicSolverService.construct_cyclic_polygon(sides)
    area = CyclicSolverService.quad_metrics(*sides).A
    return max(worst, abs(area - float(polygon_area(path))) / area)


def _oracle_trial(generator: ConfigurationGenerator, precision: Precision) -> float:
    sides = generator.pentagon_sides()
    ordered = [sides[i] for i in PENTAGON_SIDE_ORDER]
    solution = CyclicSolverService.construct_cyclic_pentagon(sides)
    worst = CyclicSolverService.closure_residual(ordered)
    worst = max(worst, abs(math.fsum(solution.theta) - 2 * math.pi) / (2 * math.pi))
    # rounded vertices only carry ulp(R) absolute error
    path = solution.vertices
    for j, i in enumerate(PENTAGON_SIDE_ORDER):
        length = path[j].distance(path[j + 1])
        worst = max(worst, abs(length - sides[i]) / max(sides[i], solution.R * 1e-3))
    return worst


def _cyclic_trial(name: str) -> Trial:

    def trial(generator: ConfigurationGenerator, precision: Precision) -> float:
        sides = generator.pentagon_sides()
        solution = CyclicSolverService.construct_cyclic_pentagon(sides)
        X, R, A = (_lift(v, precision) for v in (solution.d[0], solution.R, solution.A))
        e = ElemSym(*(_lift(v, precision) for v in CyclicSolverService.elem_sym(sides).as_tuple()))
        if name == "diagonal":
            return float(CyclicSolverService.diagonal_septic_residual(X, sides).relative)
        if name == "relations":
            reports = CyclicSolverService.cubic_quadratic_quartic_residuals(X, R, A, sides)
            return float(max(r.relative for r in reports))
        if name == "area_in_X":
            return float(CyclicSolverService.area_poly_in_X_residual(X, A, sides).relative)
        if name == "robbins":
            return float(CyclicSolverService.robbins_eval((4 * A) ** 2, e).relative)
        if name == "fourAR":
            return float(CyclicSolverService.fourAR_poly_residual((4 * A * R) ** 2, e).relative)
        if name == "circumradius":
            return float(CyclicSolverService.circumradius_poly_residual(R * R, e).relative)
        if name == "area_rational":
            t = vertex_triangle_areas(solution.vertices)
            value = CyclicSolverService.area_rational_T68(sides, t)
            return abs(value - solution.A) / solution.A
        raise ValueError(f"Unknown cyclic identity {name!r}")

    return trial


def _build_checks() -> Dict[str, IdentityCheck]:
    checks = {}
    for name, spec in IDENTITIES.items():
        tolerance = 1e-9 if spec.convex else 1e-10
        checks[name] = IdentityCheck(name, tolerance, _geometry_trial(name))
    checks["lemma62"] = IdentityCheck("lemma62", 1e-10, _lemma62_trial)
    checks["oracle"] = IdentityCheck("oracle", 1e-12, _oracle_trial)
    for name, tolerance, tables in (
        ("diagonal", 1e-8, ()),
        ("relations", 1e-8, ()),
        ("area_in_X", 1e-7, ()),
        ("robbins", 1e-6, ("robbins",)),
        ("fourAR", 1e-6, ("fourAR",)),
        ("circumradius", 1e-6, ("circumradius",)),
        ("area_rational", 1e-6, ("robbins",)),
    ):
        checks[name] = IdentityCheck(name, tolerance, _cyclic_trial(name), tables)
    return checks


CHECKS: Dict[str, IdentityCheck] = _build_checks()


def _run_trial(check: IdentityCheck, seed: int, precision: Precision,
               index: int) -> Tuple[int, Optional[float], Optional[str]]:
    generator = ConfigurationGenerator(seed, index)
    try:
        return index, check.trial(generator, precision), None
    except (CyclogonError, ZeroDivisionError) as exc:
        return index, None, f"{type(exc).__name__}: {exc}"


class FuzzService:
    """Seeded identity fuzzing"""

    @staticmethod
    def identities() -> List[str]:
        return sorted(CHECKS)

    @staticmethod
    def check(name: str) -> IdentityCheck:
        try:
            return CHECKS[name]
        except KeyError:
            raise ValueError(f"Unknown identity {name!r}; known: {', '.join(sorted(CHECKS))}") from None

    @staticmethod
    def run(identity: str, config: RunConfig, workers: Optional[int] = None) -> CheckReport:
        """
        Fuzz one identity

        Args:
            identity: name from :meth:`identities`
            config: seed, trial count, tolerance and precision
            workers: thread count (defaults to the configured worker count)

        Returns:
            CheckReport with the worst relative residual and the failing cases
        """
        check = FuzzService.check(identity)
        tolerance = config.tolerance or check.tolerance
        workers = workers or get_settings().workers
        for target in check.tables:
            EliminationService.table(target)
        if identity == "area_rational":
            area_rational_form()

        previous = mpmath.mp.prec
        if config.precision is Precision.EXTENDED:
            mpmath.mp.prec = EXTENDED_BITS
        try:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                results = list(executor.map(
                    partial(_run_trial, check, config.seed, config.precision), range(config.trials)
                ))
        finally:
            mpmath.mp.prec = previous

        worst = 0.0
        failures = 0
        cases: List[str] = []
        for index, residual, error in results:
            if error is None and residual is not None and not math.isnan(residual):
                worst = max(worst, residual)
                if residual <= tolerance:
                    continue
                message = f"residual {residual:.3e}"
            else:
                message = error or "residual is NaN"
            failures += 1
            if len(cases) < MAX_REPORTED_CASES:
                cases.append(f"seed={config.seed} index={index}: {message}")
        if failures:
            logger.warning("%s: %d of %d trials failed", identity, failures, config.trials)
        return CheckReport(
            identity=identity,
            trials=config.trials,
            seed=config.seed,
            tolerance=tolerance,
            max_relative_residual=worst,
            failures=failures,
            failing_cases=cases,
        )
