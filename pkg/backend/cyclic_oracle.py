"""
Cyclic polygon oracle
Numeric construction of cyclic quadrilaterals and pentagons from side lengths
"""
from __future__ import annotations

import logging
import math
from math import comb
from typing import List, Sequence, Tuple

from mpmath.ctx_mp import MPContext
from scipy.optimize import bisect

from cyclogon.errors import (
    FormMismatch, NoConvexCyclicPolygon, NoCyclicQuad, NotATriangle,
)
from cyclogon.models import (
    CyclicPentagonSolution, DerivedParams, ElemSym, Point, PolygonPath,
    QuadMetrics, SideLengths5,
)
from backend.symfun import elem_values

logger = logging.getLogger(__name__)

# side from vertex j to j+1 is a[(j + 3) % 5]
PENTAGON_SIDE_ORDER = (3, 4, 0, 1, 2)

_BISECT_MAXITER = 200

# private context: the global mpmath precision is switched by extended fuzzing runs
_WORKING = MPContext()
_WORKING.dps = 40


def _angle(chord: float, radius: float) -> float:
    """Central angle of a chord; the argument is clamped into asin's domain."""
    return 2 * math.asin(min(1.0, chord / (2 * radius)))


def _working_angle(chord: float, radius):
    ratio = _WORKING.mpf(chord) / (2 * radius)
    return 2 * _WORKING.asin(min(ratio, _WORKING.mpf(1)))


def _distance(p, q):
    return _WORKING.sqrt((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2)


def _polish(radius: float, xtol: float, positive: Sequence[float], center_inside: bool):
    """Circumradius at working precision inside the bracket left by double-precision bisection."""
    longest = max(positive)
    others = list(positive)
    others.remove(longest)

    def target(r):
        if center_inside:
            return _WORKING.fsum(_working_angle(x, r) for x in positive) - 2 * _WORKING.pi
        return _WORKING.fsum(_working_angle(x, r) for x in others) - _working_angle(longest, r)

    width = 2 * xtol + 1e-12 * radius
    low = max(_WORKING.mpf(longest) / 2, _WORKING.mpf(radius) - width)
    high = _WORKING.mpf(radius) + width
    f_low, f_high = target(low), target(high)
    if f_low == 0:
        return low
    if f_high == 0:
        return high
    if (f_low < 0) == (f_high < 0):
        logger.debug("No sign change around R = %r; keeping the double-precision root", radius)
        return _WORKING.mpf(radius)
    try:
        return _WORKING.findroot(target, (low, high), solver="anderson")
    except (ValueError, ZeroDivisionError) as exc:
        logger.debug("Circumradius polish failed for R = %r: %s", radius, exc)
        return _WORKING.mpf(radius)


def _solve(sides: Sequence[float]):
    """(R at working precision, center_inside)."""
    sides = [float(x) for x in sides]
    if any(not math.isfinite(x) or x < 0 for x in sides):
        raise NoConvexCyclicPolygon(f"Sides must be finite and nonnegative, got {sides}")
    positive = [x for x in sides if x > 0]
    if len(positive) < 3:
        raise NoConvexCyclicPolygon(f"Need at least three positive sides, got {sides}")
    longest = max(positive)
    perimeter = sum(positive)
    if longest >= perimeter - longest:
        raise NoConvexCyclicPolygon(f"Longest side {longest} is not shorter than the rest")
    others = list(positive)
    others.remove(longest)
    half = longest / 2

    def inside(radius: float) -> float:
        return sum(_angle(x, radius) for x in positive) - 2 * math.pi

    def outside(radius: float) -> float:
        return sum(_angle(x, radius) for x in others) - _angle(longest, radius)

    center_inside = inside(half) >= 0
    target = inside if center_inside else outside
    if target(half) == 0:
        return _WORKING.mpf(half), center_inside
    upper = half + perimeter
    for _ in range(_BISECT_MAXITER):
        if (target(upper) < 0) == center_inside:
            break
        upper *= 2
    else:
        raise NoConvexCyclicPolygon(f"No bracket for the circumradius of {sides}")
    xtol = 1e-15 * half
    try:
        radius = bisect(target, half, upper, xtol=xtol, maxiter=_BISECT_MAXITER)
    except (ValueError, RuntimeError) as exc:
        raise NoConvexCyclicPolygon(f"Circumradius search failed for {sides}: {exc}") from exc
    return _polish(float(radius), xtol, positive, center_inside), center_inside


def _place(sides: Sequence[float]):
    """Working-precision vertices, central angles, R and center_inside for sides in path order."""
    radius, center_inside = _solve(sides)
    angles = [_working_angle(float(x), radius) for x in sides]
    if not center_inside:
        k = max(range(len(sides)), key=lambda i: sides[i])
        angles[k] = 2 * _WORKING.pi - angles[k]
    coordinates = []
    for j in range(len(sides)):
        phi = _WORKING.fsum(angles[:j])
        coordinates.append((radius * _WORKING.cos(phi), radius * _WORKING.sin(phi)))
    return coordinates, angles, radius, center_inside


class CyclicOracleService:
    """Numeric oracle for cyclic polygons"""

    @staticmethod
    def heron_area(a: float, b: float, c: float, tol: float = 1e-12) -> float:
        """
        Triangle area from side lengths

        Raises:
            NotATriangle: if the sides violate the triangle inequality beyond ``tol``
        """
        a2, b2, c2 = a * a, b * b, c * c
        sixteen_area_sq = 2 * (a2 * b2 + b2 * c2 + c2 * a2) - (a2 * a2 + b2 * b2 + c2 * c2)
        scale = max(a2, b2, c2) ** 2
        if sixteen_area_sq < 0:
            if sixteen_area_sq < -tol * max(scale, 1e-300):
                raise NotATriangle(f"Sides ({a}, {b}, {c}) do not form a triangle")
            return 0.0
        return math.sqrt(sixteen_area_sq) / 4

    @staticmethod
    def quad_metrics(a: float, b: float, c: float, d: float) -> QuadMetrics:
        """
        Diagonals, area and circumradius of the cyclic quadrilateral with sides a, b, c, d

        e separates sides (a, b) from (c, d); f separates (a, d) from (b, c);
        g is the diagonal of the quadrilateral with sides b and c swapped.

        Raises:
            NoCyclicQuad: if a side is not shorter than the sum of the others
        """
        sides = (a, b, c, d)
        if any(not math.isfinite(x) or x < 0 for x in sides):
            raise NoCyclicQuad(f"Sides must be finite and nonnegative, got {sides}")
        total = sum(sides)
        if max(sides) >= total - max(sides):
            raise NoCyclicQuad(f"Sides {sides} do not close up")
        ab_cd = a * b + c * d
        ac_bd = a * c + b * d
        ad_bc = a * d + b * c
        if min(ab_cd, ac_bd, ad_bc) <= 0:
            raise NoCyclicQuad(f"Sides {sides} leave fewer than three nonzero edges")
        e = math.sqrt(ad_bc * ac_bd / ab_cd)
        f = math.sqrt(ab_cd * ac_bd / ad_bc)
        g = math.sqrt(ab_cd * ad_bc / ac_bd)
        s = total / 2
        area = math.sqrt(max((s - a) * (s - b) * (s - c) * (s - d), 0.0))
        radius = math.sqrt(ab_cd * ac_bd * ad_bc) / (4 * area) if area > 0 else math.inf
        return QuadMetrics(e=e, f=f, g=g, A=area, R=radius, s=s)

    @staticmethod
    def lemma62_residuals(a: float, b: float, c: float, d: float) -> dict:
        """Relative residuals of the cyclic quadrilateral relations, keyed by name."""
        m = CyclicOracleService.quad_metrics(a, b, c, d)
        ab_cd, ac_bd, ad_bc = a * b + c * d, a * c + b * d, a * d + b * c
        four_ar = 4 * m.A * m.R
        s = m.s
        pairs = {
            "4AR=(ab+cd)e": (four_ar, ab_cd * m.e),
            "4AR=(ad+bc)f": (four_ar, ad_bc * m.f),
            "4AR=(ac+bd)g": (four_ar, ac_bd * m.g),
            "ef=ac+bd": (m.e * m.f, ac_bd),
            "eg=ad+bc": (m.e * m.g, ad_bc),
            "fg=ab+cd": (m.f * m.g, ab_cd),
            "4AR=efg": (four_ar, m.e * m.f * m.g),
            "(4AR)^2=product": (four_ar * four_ar, ab_cd * ac_bd * ad_bc),
            "brahmagupta": (16 * m.A * m.A, 16 * (s - a) * (s - b) * (s - c) * (s - d)),
        }
        return {
            name: abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
            for name, (lhs, rhs) in pairs.items()
        }

    @staticmethod
    def solve_circumradius(sides: Sequence[float]) -> Tuple[float, bool]:
        """
        Circumradius of the convex cyclic polygon with the given sides

        Zero sides are allowed (coincident vertices) as long as three
        positive sides remain.

        Args:
            sides: side lengths in path order

        Returns:
            (R, center_inside)

        Raises:
            NoConvexCyclicPolygon: if the sides admit no convex cyclic polygon
        """
        radius, center_inside = _solve(sides)
        return float(radius), center_inside

    @staticmethod
    def construct_cyclic_polygon(sides: Sequence[float]) -> Tuple[PolygonPath, List[float], float, bool]:
        """
        Place a convex cyclic polygon counterclockwise on its circumcircle

        Vertices are placed at working precision and rounded once.

        Returns:
            (vertices, central angle per side in path order, R, center_inside)
        """
        coordinates, angles, radius, center_inside = _place(sides)
        vertices = tuple(Point(float(x), float(y)) for x, y in coordinates)
        return PolygonPath(vertices), [float(a) for a in angles], float(radius), center_inside

    @staticmethod
    def construct_cyclic_pentagon(sides: SideLengths5) -> CyclicPentagonSolution:
        """
        Cyclic pentagon with side a[i] opposite vertex i

        d[i] = |v(i-1) v(i+1)| is the diagonal disjoint from a[i]; theta[i]
        is the central angle of a[i].
        """
        ordered = [sides[i] for i in PENTAGON_SIDE_ORDER]
        coordinates, angles, radius, center_inside = _place(ordered)
        theta = [0.0] * 5
        for j, i in enumerate(PENTAGON_SIDE_ORDER):
            theta[i] = float(angles[j])
        area = _WORKING.fsum(
            coordinates[i][0] * coordinates[(i + 1) % 5][1] - coordinates[(i + 1) % 5][0] * coordinates[i][1]
            for i in range(5)
        ) / 2
        diagonals = tuple(float(_distance(coordinates[i - 1], coordinates[(i + 1) % 5])) for i in range(5))
        return CyclicPentagonSolution(
            R=float(radius),
            A=float(area),
            d=diagonals,
            theta=tuple(theta),
            center_inside=center_inside,
            vertices=PolygonPath(tuple(Point(float(x), float(y)) for x, y in coordinates)),
        )

    @staticmethod
    def closure_residual(sides: Sequence[float]) -> float:
        """
        Worst relative closure error of the placed polygon

        Compares the central angle sum with 2 pi and every rebuilt side with
        its input, both on the working-precision vertices.
        """
        coordinates, angles, _, _ = _place(sides)
        n = len(coordinates)
        worst = abs(_WORKING.fsum(angles) - 2 * _WORKING.pi) / (2 * _WORKING.pi)
        for j, length in enumerate(sides):
            if length > 0:
                rebuilt = _distance(coordinates[j], coordinates[(j + 1) % n])
                worst = max(worst, abs(rebuilt - length) / length)
        return float(worst)

    @staticmethod
    def derived_params(sides: SideLengths5) -> DerivedParams:
        a0, a1, a2, a3, a4 = sides.a
        return DerivedParams(
            p=a2 * a3,
            P=a0 * a1 * a4,
            q=a2 * a2 + a3 * a3,
            Q=a0 * a0 + a1 * a1 + a4 * a4,
            S=(a0 * a1) ** 2 + (a0 * a4) ** 2 + (a1 * a4) ** 2,
        )

    @staticmethod
    def elem_sym(sides: SideLengths5, tol: float = 1e-9) -> ElemSym:
        """
        Elementary symmetric functions of the squared sides

        Raises:
            FormMismatch: if the parameter bridge disagrees with direct expansion
        """
        direct = elem_values(sides.squares)
        bridged = params_to_elem(CyclicOracleService.derived_params(sides))
        for k, (x, y) in enumerate(zip(direct, bridged), start=1):
            if abs(x - y) > tol * max(abs(x), abs(y), 1):
                raise FormMismatch(f"e{k}: direct {x} != bridged {y}")
        return ElemSym(*direct)

    @staticmethod
    def delta_k(k: int) -> int:
        """
        Number of (2k+1)-gons inscribed in a circle with given sides

        Raises:
            FormMismatch: if the two closed forms disagree
        """
        if k < 1:
            raise ValueError(f"k must be a positive integer, got {k}")
        first = ((2 * k + 1) * comb(2 * k, k) - 4 ** k) // 2
        second = sum((k - i) * comb(2 * k + 1, i) for i in range(k))
        if first != second:
            raise FormMismatch(f"Closed forms for k={k} disagree: {first} != {second}")
        return first


def params_to_elem(params: DerivedParams) -> Tuple:
    """e1..e5 from p, q, P, Q, S."""
    p2, P2 = params.p * params.p, params.P * params.P
    q, Q, S = params.q, params.Q, params.S
    return (q + Q, S + p2 + q * Q, q * S + p2 * Q + P2, p2 * S + P2 * q, p2 * P2)
