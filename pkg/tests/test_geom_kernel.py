"""
Tests for the polygon area identities
Closed-form constants, seeded fuzzing and invariance under motions
"""
from __future__ import annotations

import math
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.affine_regular import AffineRegularService
from backend.geom_kernel import (
    GOLDEN_RATIO, IDENTITIES, GeometryKernelService, affine_hexagon_area, border_pentagon_areas,
    configuration_scale, degenerate_hexagon_residuals, equal_area_pentagon_ratio, fan_area,
    gauss_residual, gauss_roots, monge_residual, polygon_area, prouhet_residual,
    ptolemy_residual, regular_pentagon_area, rigid_motion, star_pentagon_area,
    turning_number, vertex_triangle_areas,
)
from cyclogon.errors import ComplexRoots, DegenerateTriangle, SingularLambda
from cyclogon.models import Point, PolygonPath, VertexTriangleAreas
from data.generators import ConfigurationGenerator


class TestPentagonConstants:
    """Test closed forms on regular and equal-area pentagons"""

    def test_regular_unit_pentagon_area(self):
        """Test (1/4) sqrt(25 + 10 sqrt 5) for unit side"""
        assert regular_pentagon_area() == pytest.approx(1.7204774005889669, rel=1e-12)

    def test_equal_area_ratio(self):
        """Test A/k = sqrt(5) phi"""
        assert equal_area_pentagon_ratio() == pytest.approx(3.6180339887498949, rel=1e-12)

    def test_regular_pentagon_matches_ratio(self, regular_pentagon):
        """Test the regular pentagon realizes the equal-area ratio"""
        t = vertex_triangle_areas(regular_pentagon).t
        assert max(t) - min(t) < 1e-14
        assert polygon_area(regular_pentagon) / t[0] == pytest.approx(equal_area_pentagon_ratio(), rel=1e-12)

    def test_gauss_roots_of_regular_pentagon(self, regular_pentagon):
        """Test the larger root is the area and the smaller the area minus the star area"""
        area = polygon_area(regular_pentagon)
        high, low = gauss_roots(vertex_triangle_areas(regular_pentagon))
        assert high == pytest.approx(area, rel=1e-12)
        assert low == pytest.approx(area - star_pentagon_area(regular_pentagon), rel=1e-9)

    def test_complex_roots(self):
        """Test a negative discriminant raises ComplexRoots"""
        with pytest.raises(ComplexRoots):
            gauss_roots(VertexTriangleAreas((2.0, 2.0, -1.0, -1.0, -1.0)))

    def test_unit_square_fan(self):
        """Test the fan area of the unit square about an outside point"""
        square = [Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)]
        assert fan_area(square, Point(5, -3)) == pytest.approx(1.0, abs=1e-14)


class TestFuzzedIdentities:
    """Test every identity vanishes on seeded random points"""

    @pytest.mark.parametrize("name", sorted(IDENTITIES))
    def test_identity_vanishes(self, name, fuzz_trials):
        """Test the relative residual stays below tolerance"""
        spec = GeometryKernelService.identity(name)
        tolerance = 1e-9 if spec.convex else 1e-10
        for index in range(fuzz_trials):
            generator = ConfigurationGenerator(42, index)
            if spec.convex:
                points = list(generator.convex_polygon(spec.points).vertices)
            else:
                points = generator.random_points(spec.points)
            for report in GeometryKernelService.residuals(name, points):
                assert report.relative <= tolerance, f"{name} index={index}: {report}"

    def test_monge_and_gauss_are_raw(self, generator):
        """Test the raw residuals are tiny against the configuration scale"""
        points = generator.random_points(5)
        scale = configuration_scale(points) ** 2
        assert abs(monge_residual(points)) <= 1e-10 * scale
        assert abs(gauss_residual(PolygonPath(tuple(points)))) <= 1e-10 * scale

    def test_prouhet_on_hexagon(self, generator):
        """Test the three-factor identity on six random points"""
        points = generator.random_points(6)
        assert abs(prouhet_residual(points)) <= 1e-10 * configuration_scale(points) ** 3

    def test_ptolemy_on_concyclic_quadrilateral(self, generator):
        """Test |13||24| = |12||34| + |14||23| on a circle"""
        quad = generator.concyclic_polygon(4)
        residual = ptolemy_residual(quad[0], quad[1], quad[2], quad[3])
        assert abs(residual) <= 1e-10 * configuration_scale(quad.vertices)

    def test_wrong_point_count(self, generator):
        """Test a wrong number of points is rejected"""
        with pytest.raises(ValueError):
            GeometryKernelService.residuals("gauss", generator.random_points(4))

    def test_unknown_identity(self):
        """Test an unknown identity name"""
        with pytest.raises(ValueError):
            GeometryKernelService.identity("pythagoras")

    def test_flat_ptolemy_triangle(self):
        """Test collinear points through point 0 raise DegenerateTriangle"""
        points = [Point(0, 0), Point(1, 1), Point(2, 2), Point(1, -1), Point(-1, 2)]
        with pytest.raises(DegenerateTriangle):
            GeometryKernelService.residuals("ptolemy", points)


class TestHexagons:
    """Test the hexagon relations"""

    def test_affine_regular_hexagon_area(self):
        """Test lambda = 2 gives area 6k"""
        assert affine_hexagon_area(1.0, 2.0) == pytest.approx(6.0, rel=1e-15)

    def test_lambda_three(self):
        """Test k = 1, lambda = 3 gives 6.5"""
        assert affine_hexagon_area(1.0, 3.0) == pytest.approx(6.5, rel=1e-15)

    def test_singular_lambda(self):
        """Test lambda = 1 raises SingularLambda"""
        with pytest.raises(SingularLambda):
            affine_hexagon_area(1.0, 1.0)

    @pytest.mark.parametrize("lam", [1.5, 2.0, 3.0, 4.5])
    def test_lambda_family_matches_shoelace(self, lam):
        """Test the closed form against an explicit hexagon of the family"""
        hexagon = AffineRegularService.lambda_hexagon(lam, k=0.5)
        assert polygon_area(hexagon) == pytest.approx(affine_hexagon_area(0.5, lam), rel=1e-12)

    def test_degenerate_hexagon(self, generator):
        """Test a repeated vertex reduces the hexagon relation to the pentagon one"""
        pentagon = generator.convex_polygon(5)
        hexagon_residual, pentagon_residual = degenerate_hexagon_residuals(pentagon)
        scale = configuration_scale(pentagon.vertices)
        assert abs(hexagon_residual) <= 1e-9 * scale ** 3
        assert abs(pentagon_residual) <= 1e-10 * scale ** 2

    def test_border_pentagon_areas(self, regular_hexagon):
        """Test each border pentagon is the hexagon minus one vertex triangle"""
        area = polygon_area(regular_hexagon)
        t = vertex_triangle_areas(regular_hexagon).t
        border = border_pentagon_areas(regular_hexagon).t
        for i in range(6):
            assert border[i] == pytest.approx(area - t[i], rel=1e-14)


class TestInvariance:
    """Test residuals under rigid motions and turning numbers"""

    def test_rigid_motion_keeps_residuals_small(self, generator):
        """Test every five-point identity survives a rotation and shift"""
        points = generator.random_points(5)
        moved = rigid_motion(points, 0.7, Point(3.0, -2.0))
        for name, spec in IDENTITIES.items():
            if spec.points != 5 or spec.convex:
                continue
            for report in GeometryKernelService.residuals(name, moved):
                assert report.relative <= 1e-10

    def test_area_is_rigid(self, generator):
        """Test the shoelace area is unchanged by a rigid motion"""
        path = generator.convex_polygon(5)
        moved = PolygonPath(tuple(rigid_motion(path.vertices, 2.1, Point(-1.0, 4.0))))
        assert polygon_area(moved) == pytest.approx(polygon_area(path), rel=1e-12)

    def test_turning_numbers(self, regular_pentagon):
        """Test convex paths turn once and the star path twice"""
        assert turning_number(regular_pentagon) == 1
        assert turning_number(regular_pentagon.reordered((0, 2, 4, 1, 3))) == 2
        assert turning_number(regular_pentagon.reordered((4, 3, 2, 1, 0))) == -1

    def test_golden_ratio_diagonal(self, regular_pentagon):
        """Test diagonal over side is the golden ratio"""
        side = regular_pentagon[0].distance(regular_pentagon[1])
        diagonal = regular_pentagon[0].distance(regular_pentagon[2])
        assert diagonal / side == pytest.approx(GOLDEN_RATIO, rel=1e-14)
        assert math.isclose(GOLDEN_RATIO ** 2, GOLDEN_RATIO + 1)
