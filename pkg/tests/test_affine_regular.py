"""
Tests for affine-regular pentagon and hexagon detection
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.affine_regular import AffineRegularService
from backend.geom_kernel import GOLDEN_RATIO
from cyclogon.errors import DegenerateInput, NonConvex, SingularMap
from cyclogon.models import AffineMap, Point, PolygonPath, VerdictKind
from data.generators import ConfigurationGenerator


class TestAffineImages:
    """Test affine images of the regular pentagon are recognized"""

    def test_images_are_regular(self):
        """Test 100 random affine images pass both detectors"""
        for index in range(100):
            generator = ConfigurationGenerator(7, index)
            pentagon = AffineRegularService.affine_image_regular(5, generator.affine_map())
            verdict = AffineRegularService.is_affine_regular_pentagon(pentagon)
            assert verdict.kind is VerdictKind.AFFINE_REGULAR, f"index={index}: {verdict.residuals}"
            assert verdict.diagonal_side_ratio == pytest.approx(GOLDEN_RATIO, rel=1e-9)
            parallel = AffineRegularService.parallel_classification(list(pentagon.vertices))
            assert parallel.kind is VerdictKind.AFFINE_REGULAR

    def test_perturbed_images_are_not_regular(self):
        """Test moving one vertex breaks regularity"""
        for index in range(100):
            generator = ConfigurationGenerator(11, index)
            pentagon = AffineRegularService.affine_image_regular(5, generator.affine_map())
            moved = generator.perturbed(pentagon, fraction=1e-3)
            parallel = AffineRegularService.parallel_classification(list(moved.vertices))
            assert parallel.kind is VerdictKind.NOT_REGULAR
            assert not parallel.is_regular
            try:
                verdict = AffineRegularService.is_affine_regular_pentagon(moved)
            except NonConvex:
                continue
            assert verdict.kind is VerdictKind.NOT_REGULAR

    def test_star_order(self, regular_pentagon):
        """Test the pentagram order is classified as a star"""
        star = regular_pentagon.reordered((0, 2, 4, 1, 3))
        verdict = AffineRegularService.parallel_classification(list(star.vertices))
        assert verdict.kind is VerdictKind.STAR_AFFINE_REGULAR
        assert verdict.residuals["turning_number"] == 2.0

    def test_clockwise_image(self):
        """Test an orientation-reversing map still gives an affine-regular pentagon"""
        mirror = AffineMap(np.array([[1.0, 0.0], [0.0, -2.0]]))
        pentagon = AffineRegularService.affine_image_regular(5, mirror)
        assert pentagon.orientation() == -1
        assert AffineRegularService.is_affine_regular_pentagon(pentagon).is_regular

    def test_singular_map(self):
        """Test a rank-one map raises SingularMap"""
        with pytest.raises(SingularMap):
            AffineRegularService.affine_image_regular(5, AffineMap(np.array([[1.0, 2.0], [2.0, 4.0]])))

    def test_too_few_vertices(self):
        """Test n below 3 is rejected"""
        with pytest.raises(ValueError):
            AffineRegularService.affine_image_regular(2, AffineMap(np.eye(2)))


class TestDegenerateInput:
    """Test invalid pentagons"""

    def test_repeated_point(self):
        """Test coincident points raise DegenerateInput"""
        points = [Point(0, 0), Point(1, 0), Point(1, 0), Point(0, 1), Point(-1, 1)]
        with pytest.raises(DegenerateInput):
            AffineRegularService.parallel_classification(points)

    def test_collinear_points(self):
        """Test five points on a line raise DegenerateInput"""
        points = [Point(float(k), 2.0 * k) for k in range(5)]
        with pytest.raises(DegenerateInput):
            AffineRegularService.parallel_classification(points)

    def test_reflex_vertex(self):
        """Test a dented pentagon raises NonConvex"""
        dented = PolygonPath.from_coords([(0, 0), (2, 0), (2, 2), (1, 0.5), (0, 2)])
        with pytest.raises(NonConvex):
            AffineRegularService.is_affine_regular_pentagon(dented)

    def test_wrong_count(self, regular_hexagon):
        """Test the pentagon detector refuses a hexagon"""
        with pytest.raises(ValueError):
            AffineRegularService.is_affine_regular_pentagon(regular_hexagon)


class TestHexagons:
    """Test affine-regular hexagon detection"""

    def test_affine_images(self):
        """Test affine images of the regular hexagon"""
        for index in range(20):
            generator = ConfigurationGenerator(13, index)
            hexagon = AffineRegularService.affine_image_regular(6, generator.affine_map())
            verdict = AffineRegularService.is_affine_regular_hexagon(hexagon)
            assert verdict.kind is VerdictKind.AFFINE_REGULAR
            assert verdict.residuals["lambda"] == pytest.approx(2.0, rel=1e-9)

    def test_lambda_two_member(self):
        """Test the lambda = 2 member of the family is affine-regular"""
        hexagon = AffineRegularService.lambda_hexagon(2.0)
        assert AffineRegularService.is_affine_regular_hexagon(hexagon).is_regular

    @pytest.mark.parametrize("lam", [1.5, 3.0])
    def test_other_lambdas(self, lam):
        """Test equal vertex triangles alone do not make the hexagon regular"""
        verdict = AffineRegularService.is_affine_regular_hexagon(AffineRegularService.lambda_hexagon(lam))
        assert verdict.residuals["area_spread"] <= 1e-9
        assert verdict.residuals["lambda"] == pytest.approx(lam, rel=1e-9)
        assert verdict.kind is VerdictKind.NOT_REGULAR

    def test_lambda_one(self):
        """Test the excluded lambda"""
        with pytest.raises(ValueError):
            AffineRegularService.lambda_hexagon(1.0)
