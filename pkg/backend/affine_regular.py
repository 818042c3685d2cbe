"""
Affine-regular pentagons and hexagons
Generation from affine maps and detection from vertex triangle areas
"""
import logging
import math
from typing import List, Sequence

import numpy as np

from cyclogon.errors import DegenerateInput, NonConvex, SingularMap
from cyclogon.models import AffineMap, Point, PolygonPath, RegularityVerdict, VerdictKind
from backend.geom_kernel import (
    GOLDEN_RATIO, centroid, oriented_area, turning_number, vertex_triangle_areas,
)

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9


def _consistent_areas(path: PolygonPath, tol: float) -> List[float]:
    """Vertex triangle areas made positive; mixed signs are rejected."""
    areas = [float(t) for t in vertex_triangle_areas(path).t]
    largest = max(abs(t) for t in areas)
    if largest == 0:
        raise NonConvex("All vertex triangles are flat")
    floor = tol * largest
    if any(t < -floor for t in areas) and any(t > floor for t in areas):
        raise NonConvex(f"Vertex triangle areas change sign: {areas}")
    sign = 1.0 if sum(areas) > 0 else -1.0
    return [sign * t for t in areas]


def _spread(areas: Sequence[float]) -> float:
    smallest = min(areas)
    if smallest <= 0:
        return math.inf
    return max(areas) / smallest - 1


def _diagonal_side_ratios(path: PolygonPath) -> List[float]:
    """|v(i-1) v(i+1)| / |v(i+2) v(i+3)|, each diagonal against its parallel side."""
    ratios = []
    for i in range(5):
        side = path[i + 2].distance(path[i + 3])
        diagonal = path[i - 1].distance(path[i + 1])
        ratios.append(diagonal / side if side > 0 else math.inf)
    return ratios


class AffineRegularService:
    """Generation and detection of affine-regular polygons"""

    @staticmethod
    def affine_image_regular(n: int, affine: AffineMap, tol: float = 1e-12) -> PolygonPath:
        """
        Image of the regular n-gon on the unit circle (first vertex at angle 0)

        Raises:
            SingularMap: if the map's determinant is below ``tol`` in magnitude
        """
        if n < 3:
            raise ValueError(f"n must be at least 3, got {n}")
        if abs(affine.determinant) < tol:
            raise SingularMap(f"Affine map has determinant {affine.determinant:.3g}")
        angles = 2 * np.pi * np.arange(n) / n
        regular = PolygonPath(tuple(Point(float(np.cos(a)), float(np.sin(a))) for a in angles))
        return affine.apply_path(regular)

    @staticmethod
    def lambda_hexagon(lam: float, k: float = 0.5) -> PolygonPath:
        """
        Hexagon with every vertex triangle of area k and (013) = lam * k

        lam = 2 gives an affine-regular hexagon.

        Raises:
            ValueError: if lam is 1 (no such hexagon)
        """
        if lam == 1:
            raise ValueError("lambda = 1 admits no hexagon")
        s = 1 / (2 * (lam - 1))
        height = 2 * k
        coords = [(0, 0), (1, 0), (1 + s, 1), (lam * s, lam), (1 - lam * s, lam), (-s, 1)]
        return PolygonPath(tuple(Point(float(x), float(y * height)) for x, y in coords))

    @staticmethod
    def is_affine_regular_pentagon(path: PolygonPath, tol: float = DEFAULT_TOL) -> RegularityVerdict:
        """
        Equal vertex triangle areas and golden diagonal/side ratios

        Raises:
            NonConvex: if the vertex triangle areas have mixed signs
        """
        if path.n != 5:
            raise ValueError(f"Expected a pentagon, got {path.n} vertices")
        areas = _consistent_areas(path, tol)
        spread = _spread(areas)
        ratios = _diagonal_side_ratios(path)
        deviation = max(abs(r - GOLDEN_RATIO) for r in ratios)
        regular = spread <= tol and deviation <= tol
        return RegularityVerdict(
            kind=VerdictKind.AFFINE_REGULAR if regular else VerdictKind.NOT_REGULAR,
            diagonal_side_ratio=float(np.mean(ratios)),
            residuals={"area_spread": spread, "ratio_deviation": deviation},
        )

    @staticmethod
    def parallel_classification(points: Sequence[Point], tol: float = DEFAULT_TOL) -> RegularityVerdict:
        """
        Test that every side is parallel to the diagonal joining its two
        neighbours' far ends, then tell convex from star by turning number

        Raises:
            DegenerateInput: on repeated points or five collinear points
        """
        if len(points) != 5:
            raise ValueError(f"Expected 5 points, got {len(points)}")
        path = PolygonPath(tuple(points))
        diameter = path.diameter()
        if diameter == 0:
            raise DegenerateInput("All five points coincide")
        for i in range(5):
            for j in range(i + 1, 5):
                if points[i].distance(points[j]) <= tol * diameter:
                    raise DegenerateInput(f"Points {i} and {j} coincide")
        flat = tol * diameter * diameter
        if all(abs(oriented_area(points[0], points[1], points[j])) <= flat for j in range(2, 5)):
            raise DegenerateInput("All five points are collinear")

        worst = 0.0
        for i in range(5):
            u = path[i + 1] - path[i]
            v = path[i + 2] - path[i - 1]
            cross = u.x * v.y - u.y * v.x
            worst = max(worst, abs(cross) / (math.hypot(u.x, u.y) * math.hypot(v.x, v.y)))
        residuals = {"parallel_deviation": worst}
        ratios = _diagonal_side_ratios(path)
        if worst > tol:
            return RegularityVerdict(VerdictKind.NOT_REGULAR, float(np.mean(ratios)), residuals)
        turns = turning_number(path)
        residuals["turning_number"] = float(turns)
        kind = VerdictKind.STAR_AFFINE_REGULAR if abs(turns) == 2 else VerdictKind.AFFINE_REGULAR
        return RegularityVerdict(kind, float(np.mean(ratios)), residuals)

    @staticmethod
    def is_affine_regular_hexagon(path: PolygonPath, tol: float = DEFAULT_TOL) -> RegularityVerdict:
        """
        Equal vertex triangle areas, (013) twice that area, and a center of symmetry

        Raises:
            NonConvex: if the vertex triangle areas have mixed signs
        """
        if path.n != 6:
            raise ValueError(f"Expected a hexagon, got {path.n} vertices")
        areas = _consistent_areas(path, tol)
        spread = _spread(areas)
        mean = float(np.mean(areas))
        lam = abs(float(oriented_area(path[0], path[1], path[3]))) / mean
        center = centroid(path.vertices)
        diameter = path.diameter()
        asymmetry = max(
            (path[i] + path[i + 3] - center.scaled(2)).distance(Point(0.0, 0.0)) for i in range(3)
        ) / diameter
        residuals = {"area_spread": spread, "lambda": lam, "symmetry_deviation": asymmetry}
        regular = spread <= tol and abs(lam - 2) <= tol and asymmetry <= tol
        if spread <= tol and abs(lam - 2) <= tol and asymmetry > tol:
            logger.warning("Hexagon passes the area test but has no center of symmetry")
        return RegularityVerdict(
            kind=VerdictKind.AFFINE_REGULAR if regular else VerdictKind.NOT_REGULAR,
            diagonal_side_ratio=None,
            residuals=residuals,
        )
