"""
Tests for input parsing, output emission and the seeded generators
"""
from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.formats import emit, format_number, parse_points, parse_sides, read_points
from backend.geom_kernel import polygon_area, turning_number
from cyclogon.models import OutputFormat, Point
from data.generators import ConfigurationGenerator


class TestParsing:
    """Test side and point input"""

    def test_sides_from_json_and_csv(self):
        """Test both side formats give the same floats"""
        assert parse_sides("[1, 2.5, 3, 4, 5]") == [1.0, 2.5, 3.0, 4.0, 5.0]
        assert parse_sides("1, 2.5,3,4,5\n") == [1.0, 2.5, 3.0, 4.0, 5.0]

    @pytest.mark.parametrize("text", ["", "[1, NaN, 2]", "1,inf,2", "[1, \"x\"]", "[1, 2"])
    def test_bad_sides(self, text):
        """Test malformed or non-finite sides raise ValueError"""
        with pytest.raises(ValueError):
            parse_sides(text)

    def test_points_from_json_forms(self):
        """Test arrays and the points object"""
        expected = [Point(0.0, 0.0), Point(1.0, 2.0)]
        assert parse_points("[[0, 0], [1, 2]]") == expected
        assert parse_points('{"points": [[0, 0], [1, 2]]}') == expected

    def test_points_from_csv(self):
        """Test one x,y row per point"""
        assert parse_points("0,0\n1,2\n") == [Point(0.0, 0.0), Point(1.0, 2.0)]

    @pytest.mark.parametrize("text", ["[[0, 0, 1]]", '{"vertices": []}', "0,nan", ""])
    def test_bad_points(self, text):
        """Test malformed points raise ValueError"""
        with pytest.raises(ValueError):
            parse_points(text)

    def test_read_points(self, tmp_path):
        """Test reading a points file"""
        path = tmp_path / "points.json"
        path.write_text("[[1, 1], [2, 3], [0, 5]]")
        assert len(read_points(path)) == 3


class TestEmission:
    """Test the three output formats"""

    RECORD = {"A": 1.7204774005889669, "d": [1.5, 2.0], "meta": {"n": 5, "ok": True}}

    def test_json_is_sorted(self):
        """Test equal records give equal bytes"""
        shuffled = {"meta": {"ok": True, "n": 5}, "d": [1.5, 2.0], "A": 1.7204774005889669}
        assert emit(self.RECORD) == emit(shuffled)
        assert json.loads(emit(self.RECORD)) == self.RECORD

    def test_csv_flattens(self):
        """Test nested keys become dotted columns"""
        header, row = emit(self.RECORD, OutputFormat.CSV).splitlines()
        assert header == "A,d.0,d.1,meta.n,meta.ok"
        assert row.split(",")[0] == "1.7204774005889669"

    def test_text(self):
        """Test one key per line"""
        lines = emit(self.RECORD, OutputFormat.TEXT).splitlines()
        assert lines[0] == "A: 1.7204774005889669"
        assert "meta.ok: True" in lines

    def test_format_number_round_trips(self):
        """Test 17 significant digits recover the double"""
        value = math.pi / 7
        assert float(format_number(value)) == value
        assert format_number(3) == "3"
        assert format_number(None) == "None"


class TestGenerators:
    """Test the seeded configuration generators"""

    def test_streams_are_keyed(self):
        """Test (seed, index) fixes the stream"""
        first = ConfigurationGenerator(5, 3).random_points(5)
        again = ConfigurationGenerator(5, 3).random_points(5)
        other = ConfigurationGenerator(5, 4).random_points(5)
        assert first == again
        assert first != other

    def test_convex_polygon(self, generator):
        """Test convex polygons turn once counterclockwise"""
        for n in (5, 6, 8):
            path = generator.convex_polygon(n)
            assert path.n == n
            assert turning_number(path) == 1
            assert polygon_area(path) > 0

    def test_concyclic_polygon(self, generator):
        """Test every vertex lies on the circle"""
        path = generator.concyclic_polygon(5, radius=2.0)
        for vertex in path.vertices:
            assert math.hypot(vertex.x, vertex.y) == pytest.approx(2.0, rel=1e-14)

    def test_cyclic_sides_close_up(self, generator):
        """Test every side is shorter than the others together"""
        for _ in range(50):
            sides = generator.cyclic_sides(5)
            assert max(sides) < sum(sides) - max(sides)

    def test_affine_map_is_nonsingular(self, generator):
        """Test the determinant floor"""
        for _ in range(50):
            assert abs(generator.affine_map(min_det=0.5).determinant) >= 0.5

    def test_perturbed_moves_one_vertex(self, generator):
        """Test exactly one vertex moves"""
        path = generator.convex_polygon(5)
        moved = generator.perturbed(path, fraction=1e-2)
        changed = [i for i in range(5) if path[i] != moved[i]]
        assert len(changed) == 1
