"""
Plane polygon area identities evaluated on explicit point configurations

Orientation convention: counterclockwise is positive and the vertex
triangle i is (i-1, i, i+1) in path order. Every routine is plain
arithmetic, so mpmath numbers pass through unchanged.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from cyclogon.errors import ComplexRoots, DegenerateTriangle, SingularLambda
from cyclogon.models import Point, PolygonPath, ResidualReport, VertexTriangleAreas

logger = logging.getLogger(__name__)

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2

# star traversal 0, 2, 4, 1, 3 of a pentagon
STAR_ORDER = (0, 2, 4, 1, 3)


def _require(points: Sequence[Point], count: int, what: str) -> None:
    if len(points) != count:
        raise ValueError(f"{what} needs exactly {count} points, got {len(points)}")


def oriented_area(p: Point, q: Point, r: Point):
    """Half the determinant of (q - p, r - p); positive for a counterclockwise triple."""
    return ((q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y)) / 2


def polygon_area(path: PolygonPath):
    """Signed shoelace area."""
    total = 0
    for i in range(path.n):
        p, q = path[i], path[i + 1]
        total += p.x * q.y - q.x * p.y
    return total / 2


def vertex_triangle_areas(path: PolygonPath) -> VertexTriangleAreas:
    return VertexTriangleAreas(tuple(
        oriented_area(path[i - 1], path[i], path[i + 1]) for i in range(path.n)
    ))


def configuration_scale(points: Sequence[Point]):
    """Largest squared pairwise distance; the natural unit for area products."""
    best = 0
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            dx, dy = p.x - q.x, p.y - q.y
            best = max(best, dx * dx + dy * dy)
    return best


def centroid(points: Sequence[Point]) -> Point:
    n = len(points)
    return Point(sum(p.x for p in points) / n, sum(p.y for p in points) / n)


def fan_area(points: Sequence[Point], origin: Point):
    """Sum of oriented areas (O, v_i, v_{i+1}) around the closed sequence."""
    n = len(points)
    return sum(oriented_area(origin, points[i], points[(i + 1) % n]) for i in range(n))


# ----------------------------------------------------------------------
# pentagons
# ----------------------------------------------------------------------

def gauss_residual(path: PolygonPath):
    """A^2 - c1*A + c2 for a pentagon (zero for any five points)."""
    _require(path.vertices, 5, "Gauss residual")
    area = polygon_area(path)
    t = vertex_triangle_areas(path)
    return area * area - t.c1 * area + t.c2


def gauss_roots(t: VertexTriangleAreas, tol: float = 1e-12) -> Tuple[float, float]:
    """
    Roots of x^2 - c1*x + c2, larger first

    For a convex pentagon these are A and A - A'.

    Raises:
        ComplexRoots: if the discriminant is negative beyond ``tol`` (relative to c1^2)
    """
    if len(t.t) != 5:
        raise ValueError("Gauss roots need five vertex triangle areas")
    c1, c2 = t.c1, t.c2
    discriminant = c1 * c1 - 4 * c2
    if discriminant < 0:
        if discriminant < -tol * max(c1 * c1, abs(c2), 1e-300):
            raise ComplexRoots(float(discriminant))
        discriminant = 0 * discriminant
    root = discriminant ** 0.5
    return (c1 + root) / 2, (c1 - root) / 2


def monge_residual(pts: Sequence[Point]):
    """(012)(034) + (014)(023) - (013)(024), point 0 as the common vertex."""
    _require(pts, 5, "Monge residual")
    o = pts[0]

    def tri(i: int, j: int):
        return oriented_area(o, pts[i], pts[j])

    return tri(1, 2) * tri(3, 4) + tri(1, 4) * tri(2, 3) - tri(1, 3) * tri(2, 4)


def star_pentagon_area(path: PolygonPath):
    """Fan sum t_13 + t_35 + t_52 + t_24 + t_41 about the centroid (vertex order 0, 2, 4, 1, 3)."""
    _require(path.vertices, 5, "Star pentagon area")
    star = [path[i] for i in STAR_ORDER]
    return fan_area(star, centroid(path.vertices))


def generalized_gauss_residuals(pts: Sequence[Point]) -> Tuple[object, object, object, object]:
    """
    The four pentagon/star identities for arbitrary five points

    Returns:
        (A^2 - c1 A + c2, A'^2 - c1^2 + 4 c2, A^2 - c1'^2 + 4 c2', A'^2 - c1' A' + c2')
        where primes refer to the star path 0, 2, 4, 1, 3
    """
    _require(pts, 5, "Generalized Gauss residuals")
    path = PolygonPath(tuple(pts))
    star = path.reordered(STAR_ORDER)
    area = polygon_area(path)
    star_area = star_pentagon_area(path)
    t = vertex_triangle_areas(path)
    t_star = vertex_triangle_areas(star)
    c1, c2 = t.c1, t.c2
    c1s, c2s = t_star.c1, t_star.c2
    return (
        area * area - c1 * area + c2,
        star_area * star_area - c1 * c1 + 4 * c2,
        area * area - c1s * c1s + 4 * c2s,
        star_area * star_area - c1s * star_area + c2s,
    )


def _chord_over_radius(o: Point, p: Point, q: Point, scale) -> object:
    """|pq| / R_opq with the signed circumradius R = |op||oq||pq| / (4 * oriented area)."""
    area = oriented_area(o, p, q)
    if abs(area) <= 1e-14 * scale:
        raise DegenerateTriangle(f"Triangle ({o.x},{o.y}),({p.x},{p.y}),({q.x},{q.y}) has zero area")
    return 4 * area / (o.distance(p) * o.distance(q))


def ptolemy_circumradius_terms(pts: Sequence[Point]) -> Tuple[object, object, object]:
    """The three products |ij|/R_0ij * |kl|/R_0kl of the Ptolemy-type identity."""
    _require(pts, 5, "Ptolemy-type identity")
    o = pts[0]
    scale = configuration_scale(pts)

    def ratio(i: int, j: int):
        return _chord_over_radius(o, pts[i], pts[j], scale)

    return (ratio(1, 2) * ratio(3, 4), ratio(1, 4) * ratio(2, 3), ratio(1, 3) * ratio(2, 4))


def ptolemy_circumradius_residual(pts: Sequence[Point]):
    """
    |12|/R012 * |34|/R034 + |14|/R014 * |23|/R023 - |13|/R013 * |24|/R024

    Raises:
        DegenerateTriangle: if one of the six triangles through point 0 is flat
    """
    first, second, third = ptolemy_circumradius_terms(pts)
    return first + second - third


def ptolemy_residual(p1: Point, p2: Point, p3: Point, p4: Point):
    """|13||24| - |12||34| - |14||23| for a quadrilateral 1234 inscribed in order."""
    return (p1.distance(p3) * p2.distance(p4)
            - p1.distance(p2) * p3.distance(p4)
            - p1.distance(p4) * p2.distance(p3))


def border_quadrilateral_residual(path: PolygonPath):
    """A^2 - C1*A + C2 with C1, C2 the cyclic sums of the border quadrilateral areas A - t[i]."""
    _require(path.vertices, 5, "Border quadrilateral residual")
    return _border_sums_residual(path)


def _border_sums_residual(path: PolygonPath):
    area = polygon_area(path)
    border = VertexTriangleAreas(tuple(area - t for t in vertex_triangle_areas(path).t))
    return area * area - border.c1 * area + border.c2


def border_pentagon_areas(path: PolygonPath) -> VertexTriangleAreas:
    """Areas A - (i) of the six pentagons left after cutting off one vertex of a hexagon."""
    _require(path.vertices, 6, "Border pentagon areas")
    area = polygon_area(path)
    return VertexTriangleAreas(tuple(area - t for t in vertex_triangle_areas(path).t))


def border_pentagon_residual(path: PolygonPath) -> Tuple[object, object]:
    """(C1 - (6A - c1), C2 - (6A^2 - 2 c1 A + c2)) for a hexagon's border pentagons."""
    area = polygon_area(path)
    t = vertex_triangle_areas(path)
    border = border_pentagon_areas(path)
    return (border.c1 - (6 * area - t.c1),
            border.c2 - (6 * area * area - 2 * t.c1 * area + t.c2))


def equal_area_pentagon_ratio() -> float:
    """A/k for a pentagon whose vertex triangles all have area k (sqrt(5)*phi)."""
    return math.sqrt(5) * GOLDEN_RATIO


def regular_pentagon_area(side: float = 1.0) -> float:
    return side * side / 4 * math.sqrt(25 + 10 * math.sqrt(5))


# ----------------------------------------------------------------------
# hexagons
# ----------------------------------------------------------------------

def hexagon_theorem41_residual(path: PolygonPath):
    """
    Quadratic relation between a hexagon's area, its vertex triangle
    areas (0)..(5) and p = (013); returned raw, not normalized by p - (1)
    """
    _require(path.vertices, 6, "Hexagon area relation")
    t0, t1, t2, t3, t4, t5 = vertex_triangle_areas(path).t
    p = oriented_area(path[0], path[1], path[3])
    area = polygon_area(path)
    lead = p - t1
    if abs(lead) <= 1e-12 * max(abs(p), abs(t1), 1e-300):
        logger.warning("Hexagon relation degenerates: p = (013) equals vertex area (1)")
    linear = (t1 * t4 + 2 * t1 * t2 + t1 * t5 - p * p + t1 * p + t0 * t1
              - t2 * p - t3 * p - t5 * p - t4 * p - t0 * t2 - t0 * p)
    constant = (- t1 * t2 * t5 - t1 * t2 * p - t1 * t2 * t4 - t1 * t4 * t5 - t1 * t2 * t2
                + t2 * t3 * p + t3 * p * p - t0 * t1 * t5 + t0 * t2 * t2 + t4 * t5 * p
                - t0 * t1 * t2 + t0 * t2 * t5 + t0 * p * p - t0 * t1 * p + 2 * t0 * t2 * p
                + t0 * t5 * p + t3 * t4 * p)
    return lead * area * area + linear * area + constant


def affine_hexagon_area(k: float, lam: float, tol: float = 1e-12) -> float:
    """
    Area of an equal-vertex-area (k) hexagon with (013) = lam * k

    Raises:
        SingularLambda: if lam is within ``tol`` of 1
    """
    if abs(lam - 1) < tol:
        raise SingularLambda(f"lambda = {lam} makes the leading coefficient vanish")
    return (lam * lam + 2 * lam - 2) / (lam - 1) * k


def hexagon_identity45_residual(path: PolygonPath):
    """A^2 - [sum (i)] A + [(1)+(3)+(5)][(0)+(2)+(4)] - (135)(024)."""
    _require(path.vertices, 6, "Hexagon identity")
    t = vertex_triangle_areas(path).t
    area = polygon_area(path)
    odd = t[1] + t[3] + t[5]
    even = t[0] + t[2] + t[4]
    odd_triangle = oriented_area(path[1], path[3], path[5])
    even_triangle = oriented_area(path[0], path[2], path[4])
    return area * area - sum(t) * area + odd * even - odd_triangle * even_triangle


def prouhet_residual(pts: Sequence[Point]):
    """(013)(024)(035) + (015)(023)(034) - (013)(025)(034) - (014)(023)(035)."""
    _require(pts, 6, "Prouhet residual")
    o = pts[0]

    def tri(i: int, j: int):
        return oriented_area(o, pts[i], pts[j])

    return (tri(1, 3) * tri(2, 4) * tri(3, 5) + tri(1, 5) * tri(2, 3) * tri(3, 4)
            - tri(1, 3) * tri(2, 5) * tri(3, 4) - tri(1, 4) * tri(2, 3) * tri(3, 5))


def turning_number(path: PolygonPath) -> int:
    """Signed number of full turns of the edge direction around the closed path."""
    total = 0.0
    for i in range(path.n):
        a, b, c = path[i - 1], path[i], path[i + 1]
        ux, uy = float(b.x - a.x), float(b.y - a.y)
        vx, vy = float(c.x - b.x), float(c.y - b.y)
        total += math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
    return round(total / (2 * math.pi))


def degenerate_hexagon_residuals(pentagon: PolygonPath) -> Tuple[object, object]:
    """
    Hexagon relation on v0..v4 with v5 repeated at v0, next to the Gauss
    residual of the pentagon itself; both vanish
    """
    _require(pentagon.vertices, 5, "Degenerate hexagon")
    hexagon = PolygonPath(pentagon.vertices + (pentagon[0],))
    return hexagon_theorem41_residual(hexagon), gauss_residual(pentagon)


def rigid_motion(points: Sequence[Point], angle: float, shift: Point) -> List[Point]:
    c, s = math.cos(angle), math.sin(angle)
    return [Point(c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y) for p in points]


def _gauss_root_residuals(pts: Sequence[Point]):
    path = PolygonPath(tuple(pts))
    area = polygon_area(path)
    high, low = gauss_roots(vertex_triangle_areas(path))
    return high - area, low - (area - star_pentagon_area(path))


def _ptolemy_scale(pts: Sequence[Point]):
    return max(abs(term) for term in ptolemy_circumradius_terms(pts))


@dataclass(frozen=True)
class IdentitySpec:
    """A residual identity over a fixed number of points"""
    name: str
    points: int
    degrees: Tuple[int, ...]
    evaluate: Callable[[Sequence[Point]], Tuple]
    convex: bool = False
    scale: Optional[Callable[[Sequence[Point]], object]] = None


def _path(function):
    return lambda pts: function(PolygonPath(tuple(pts)))


IDENTITIES: Dict[str, IdentitySpec] = {spec.name: spec for spec in (
    IdentitySpec("gauss", 5, (2,), lambda pts: (gauss_residual(PolygonPath(tuple(pts))),)),
    IdentitySpec("monge", 5, (2,), lambda pts: (monge_residual(pts),)),
    IdentitySpec("theorem31", 5, (2, 2, 2, 2), generalized_gauss_residuals),
    IdentitySpec("gauss_roots", 5, (1, 1), _gauss_root_residuals, convex=True),
    IdentitySpec("border", 5, (2,), lambda pts: (border_quadrilateral_residual(PolygonPath(tuple(pts))),)),
    IdentitySpec("ptolemy", 5, (0,), lambda pts: (ptolemy_circumradius_residual(pts),),
                 scale=_ptolemy_scale),
    IdentitySpec("hexagon41", 6, (3,), lambda pts: (hexagon_theorem41_residual(PolygonPath(tuple(pts))),),
                 convex=True),
    IdentitySpec("identity45", 6, (2,), lambda pts: (hexagon_identity45_residual(PolygonPath(tuple(pts))),)),
    IdentitySpec("prouhet", 6, (3,), lambda pts: (prouhet_residual(pts),)),
    IdentitySpec("border_pentagon", 6, (1, 2), _path(border_pentagon_residual)),
)}


class GeometryKernelService:
    """Named access to the polygon area identities"""

    @staticmethod
    def identity(name: str) -> IdentitySpec:
        try:
            return IDENTITIES[name]
        except KeyError:
            raise ValueError(f"Unknown identity {name!r}; known: {', '.join(sorted(IDENTITIES))}") from None

    @staticmethod
    def residuals(name: str, points: Sequence[Point]) -> List[ResidualReport]:
        """
        Evaluate one identity on explicit points

        Args:
            name: identity name (see IDENTITIES)
            points: exactly as many points as the identity takes

        Returns:
            One ResidualReport per residual, scaled by the configuration
            size to the power of the residual's area degree
        """
        spec = GeometryKernelService.identity(name)
        _require(points, spec.points, name)
        values = spec.evaluate(points)
        reports = []
        for index, (value, degree) in enumerate(zip(values, spec.degrees)):
            if spec.scale is not None:
                scale = spec.scale(points)
            else:
                scale = configuration_scale(points) ** degree
            label = name if len(values) == 1 else f"{name}[{index}]"
            reports.append(ResidualReport(label, float(value), float(scale)))
        return reports


__all__ = [
    'GOLDEN_RATIO', 'STAR_ORDER', 'oriented_area', 'polygon_area', 'vertex_triangle_areas',
    'configuration_scale', 'centroid', 'fan_area', 'gauss_residual', 'gauss_roots',
    'monge_residual', 'star_pentagon_area', 'generalized_gauss_residuals',
    'ptolemy_circumradius_terms', 'ptolemy_circumradius_residual', 'ptolemy_residual',
    'border_quadrilateral_residual', 'border_pentagon_residual', 'equal_area_pentagon_ratio',
    'regular_pentagon_area', 'hexagon_theorem41_residual', 'affine_hexagon_area',
    'hexagon_identity45_residual', 'prouhet_residual', 'turning_number', 'border_pentagon_areas',
    'degenerate_hexagon_residuals', 'rigid_motion', 'IdentitySpec', 'IDENTITIES', 'GeometryKernelService',
]
