"""
Tests for the command-line entry point
Exit codes and printed records of each subcommand
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

from main import (
    EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_MISMATCH, EXIT_NO_POLYGON, EXIT_OK, build_parser, main,
)
from backend.cyclic_solver import CyclicSolverService
from backend.geom_kernel import GOLDEN_RATIO
from cyclogon.models import ResidualReport


def run(capsys, *argv):
    """Run the CLI and return (exit code, parsed stdout or raw text, stderr)"""
    code = main(list(argv))
    captured = capsys.readouterr()
    try:
        out = json.loads(captured.out)
    except ValueError:
        out = captured.out
    return code, out, captured.err


def write_points(path: Path, points) -> str:
    path.write_text(json.dumps([list(p) for p in points]))
    return str(path)


class TestQuadrilateralCommands:
    """Test the quadrilateral paths that need no degree-7 table"""

    def test_square_area(self, capsys):
        """Test the unit square"""
        code, out, _ = run(capsys, "area", "1", "1", "1", "1")
        assert code == EXIT_OK
        assert out["path"] == "quadrilateral"
        assert out["A"] == pytest.approx(1.0, rel=1e-12)

    def test_square_radius(self, capsys):
        """Test R = sqrt(2)/2"""
        code, out, _ = run(capsys, "radius", "1", "1", "1", "1")
        assert code == EXIT_OK
        assert out["R"] == pytest.approx(math.sqrt(2) / 2, rel=1e-12)

    def test_quadrilateral_diagonals(self, capsys):
        """Test Ptolemy for a kite"""
        code, out, _ = run(capsys, "diagonals", "1", "2", "2", "1")
        assert code == EXIT_OK
        assert out["e"] * out["f"] == pytest.approx(1 * 2 + 2 * 1, rel=1e-12)

    def test_no_cyclic_quadrilateral(self, capsys):
        """Test exit 2 when the sides do not close"""
        code, _, err = run(capsys, "area", "1", "1", "1", "3")
        assert code == EXIT_NO_POLYGON
        assert "No cyclic quadrilateral" in err


class TestPentagonCommands:
    """Test pentagon subcommands"""

    def test_diagonals_of_unit_pentagon(self, capsys):
        """Test every diagonal is the golden ratio and is a flagged root"""
        code, out, _ = run(capsys, "diagonals", "1", "1", "1", "1", "1")
        assert code == EXIT_OK
        for d, root in zip(out["d"], out["root_d"]):
            assert d == pytest.approx(GOLDEN_RATIO, rel=1e-9)
            assert root == pytest.approx(d, rel=1e-9)

    def test_no_convex_pentagon(self, capsys):
        """Test exit 2 for a side longer than the rest"""
        code, _, err = run(capsys, "radius", "1", "1", "1", "1", "5")
        assert code == EXIT_NO_POLYGON
        assert "No convex cyclic polygon" in err

    @pytest.mark.parametrize("sides", [["1", "1", "1"], ["1", "1", "1", "1", "-1"], ["1", "nan", "1", "1", "1"]])
    def test_invalid_sides(self, capsys, sides):
        """Test wrong counts, negative and non-finite sides exit 1"""
        code, _, err = run(capsys, "diagonals", *sides)
        assert code == EXIT_INVALID
        assert err.startswith("Error:")

    @pytest.mark.slow
    def test_unit_pentagon_area(self, capsys):
        """Test A of the regular unit pentagon from the flagged root"""
        code, out, _ = run(capsys, "area", "1", "1", "1", "1", "1")
        assert code == EXIT_OK
        assert out["A"] == pytest.approx(1.720477, abs=1e-6)
        assert out["root_A"] == pytest.approx(out["A"], rel=1e-6)
        assert out["rational_A"] == pytest.approx(out["A"], rel=1e-6)

    @pytest.mark.slow
    def test_zero_side_area(self, capsys):
        """Test a zero side takes the quadrilateral path"""
        code, out, _ = run(capsys, "area", "1", "1", "1", "1", "0")
        assert code == EXIT_OK
        assert out["A"] == pytest.approx(1.0, rel=1e-12)
        assert set(out["degeneration"]) == {"brahmagupta", "diagonal", "fourAR", "quadrilateral_4AR", "robbins"}
        assert max(out["degeneration"].values()) <= 1e-9

    def test_zero_side_area_reports_a_failed_degeneration(self, capsys, monkeypatch):
        """Test the exit status covers the degeneration residuals"""
        broken = {"diagonal": ResidualReport("diagonal", 0.5, 1.0)}
        monkeypatch.setattr(CyclicSolverService, "quadrilateral_degeneration", staticmethod(lambda sides: broken))
        code, out, _ = run(capsys, "area", "1", "1", "1", "1", "0")
        assert code == EXIT_MISMATCH
        assert out["degeneration"] == {"diagonal": 0.5}
        assert out["residual"] <= 1e-9

    def test_text_output(self, capsys):
        """Test the text format prints key: value lines"""
        code, out, _ = run(capsys, "radius", "1", "1", "1", "1", "--output", "text")
        assert code == EXIT_OK
        assert "path: quadrilateral" in out.splitlines()


class TestCheckAndDerive:
    """Test the fuzzing and derivation subcommands"""

    def test_check_gauss(self, capsys):
        """Test a passing identity exits 0"""
        code, out, _ = run(capsys, "check", "gauss", "--trials", "50", "--workers", "2")
        assert code == EXIT_OK
        assert out["identity"] == "gauss"
        assert out["failures"] == 0

    def test_check_failure(self, capsys):
        """Test an impossible tolerance exits 4 and names the cases"""
        code, out, err = run(capsys, "check", "monge", "--trials", "5", "--tol", "1e-300")
        assert code == EXIT_CHECK_FAILED
        assert out["failures"] > 0
        assert "FAILED monge seed=42 index=" in err

    def test_check_extended(self, capsys):
        """Test extended precision runs"""
        code, out, _ = run(capsys, "check", "monge", "--trials", "5", "--precision", "extended")
        assert code == EXIT_OK
        assert out["max_relative_residual"] <= 1e-10

    def test_unknown_identity(self):
        """Test argparse rejects an unknown identity"""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["check", "pythagoras"])

    def test_derive_diagonal(self, capsys, golden_dir, tmp_path):
        """Test the diagonal derivation writes its golden files"""
        out_dir = tmp_path / "out"
        code, out, _ = run(capsys, "derive", "diagonal", "--out-dir", str(out_dir))
        assert code == EXIT_OK
        assert out["match_status"] == "match"
        assert (out_dir / "diagonal.poly").exists()


class TestPointCommands:
    """Test residual and classify on point files"""

    def test_residual(self, capsys, tmp_path, regular_pentagon):
        """Test the Gauss identity on the regular pentagon"""
        path = write_points(tmp_path / "p.json", [v.as_tuple() for v in regular_pentagon.vertices])
        code, out, _ = run(capsys, "residual", "gauss", "--points", path)
        assert code == EXIT_OK
        assert out["residuals"][0]["relative"] <= 1e-12

    def test_residual_wrong_count(self, capsys, tmp_path):
        """Test four points for a five-point identity"""
        path = write_points(tmp_path / "p.json", [(0, 0), (1, 0), (1, 1), (0, 1)])
        code, _, _ = run(capsys, "residual", "gauss", "--points", path)
        assert code == EXIT_INVALID

    def test_classify_pentagon_and_star(self, capsys, tmp_path, regular_pentagon):
        """Test convex and star orders"""
        path = write_points(tmp_path / "p.json", [v.as_tuple() for v in regular_pentagon.vertices])
        code, out, _ = run(capsys, "classify", "--points", path)
        assert code == EXIT_OK
        assert out["kind"] == "AffineRegular"
        star = regular_pentagon.reordered((0, 2, 4, 1, 3))
        path = write_points(tmp_path / "s.json", [v.as_tuple() for v in star.vertices])
        code, out, _ = run(capsys, "classify", "--points", path)
        assert out["kind"] == "StarAffineRegular"

    def test_classify_hexagon(self, capsys, tmp_path, regular_hexagon):
        """Test six points go to the hexagon detector"""
        path = write_points(tmp_path / "h.json", [v.as_tuple() for v in regular_hexagon.vertices])
        code, out, _ = run(capsys, "classify", "--points", path)
        assert code == EXIT_OK
        assert out["kind"] == "AffineRegular"

    def test_classify_missing_file(self, capsys, tmp_path):
        """Test an unreadable file exits 1"""
        code, _, _ = run(capsys, "classify", "--points", str(tmp_path / "missing.json"))
        assert code == EXIT_INVALID
