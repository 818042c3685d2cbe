"""
Tests for the sparse polynomial substrate
Arithmetic, exact division, resultants and norms
"""
from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.polynomial import (
    MultiPoly, balanced_residual, bareiss_determinant, even_odd_norm, resultant, solve_exact,
)
from cyclogon.errors import NotDivisible, ZeroPolynomial


XY = ("x", "y")


def _to_sympy(poly: MultiPoly):
    symbols = [sympy.Symbol(v) for v in poly.variables]
    return sum(
        (sympy.Rational(str(c)) * sympy.Mul(*[s ** k for s, k in zip(symbols, e)])
         for e, c in poly.terms.items()),
        sympy.Integer(0),
    )


class TestArithmetic:
    """Test ring operations"""

    def test_binomial_expansion(self):
        """Test (x + y)^3 has the binomial coefficients"""
        x, y = MultiPoly.gens(XY)
        cube = (x + y) ** 3
        assert cube.coefficient(x=3) == 1
        assert cube.coefficient(x=2, y=1) == 3
        assert cube.coefficient(x=1, y=2) == 3
        assert len(cube) == 4

    def test_scalars_on_both_sides(self):
        """Test ints and Fractions mix in from the left and right"""
        x, _ = MultiPoly.gens(XY)
        assert 2 * x - x == x
        assert (1 - x) + x == MultiPoly.constant(1, XY)
        assert (x * Fraction(1, 2)).coefficient(x=1) == Fraction(1, 2)

    def test_cancellation_gives_zero(self):
        """Test x*y - y*x is the zero polynomial"""
        x, y = MultiPoly.gens(XY)
        assert not (x * y - y * x)
        assert (x * y - y * x).is_zero

    def test_mixed_alphabets_align(self):
        """Test polynomials over different alphabets combine"""
        x = MultiPoly.variable("x", ("x",))
        z = MultiPoly.variable("z", ("z",))
        total = x + z
        assert set(total.used_variables()) == {"x", "z"}

    def test_text_form_is_canonical(self):
        """Test to_text/from_text keep every term"""
        x, y = MultiPoly.gens(XY)
        poly = 3 * x ** 2 * y - Fraction(5, 2) * y + 7
        parsed = MultiPoly.from_text(poly.to_text(), XY)
        assert parsed == poly
        assert poly.to_text().splitlines()[0] == "+3 x^2 y^1"


class TestDivision:
    """Test exact division and factor removal"""

    def test_exact_divide(self):
        """Test (x^2 - y^2) / (x - y) = x + y"""
        x, y = MultiPoly.gens(XY)
        assert (x * x - y * y).exact_divide(x - y) == x + y

    def test_remainder_raises(self):
        """Test a remainder raises NotDivisible"""
        x, y = MultiPoly.gens(XY)
        with pytest.raises(NotDivisible):
            (x * x + y).exact_divide(x - y)

    def test_division_by_zero(self):
        """Test division by the zero polynomial"""
        x, _ = MultiPoly.gens(XY)
        with pytest.raises(ZeroPolynomial):
            x.exact_divide(MultiPoly.zero(XY))

    def test_remove_factor_counts_multiplicity(self):
        """Test (x - y)^3 (x + 1) loses three factors of x - y"""
        x, y = MultiPoly.gens(XY)
        quotient, count = ((x - y) ** 3 * (x + 1)).remove_factor(x - y)
        assert count == 3
        assert quotient == x + 1

    def test_content_and_primitive_part(self):
        """Test content is the positive coefficient gcd"""
        x, y = MultiPoly.gens(XY)
        poly = 6 * x - 4 * y
        assert poly.content() == 2
        assert poly.primitive_part() == 3 * x - 2 * y


class TestResultant:
    """Test elimination against sympy"""

    def test_bareiss_integer_determinant(self):
        """Test the fraction-free determinant on an integer matrix"""
        matrix = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
        assert bareiss_determinant(matrix) == 4

    def test_bareiss_pivot_swap(self):
        """Test a zero leading pivot is swapped away"""
        assert bareiss_determinant([[0, 1], [1, 0]]) == -1

    def test_methods_agree_with_sympy(self):
        """Test Bareiss and subresultant resultants match sympy's"""
        x, y = MultiPoly.gens(XY)
        f = x ** 3 - 2 * x * y + y ** 2 - 1
        g = x ** 2 * y + x - 3
        expected = sympy.resultant(_to_sympy(f), _to_sympy(g), sympy.Symbol("x"))
        for method in ("bareiss", "subresultant"):
            value = resultant(f, g, "x", method=method)
            assert sympy.expand(_to_sympy(value) - expected) == 0

    def test_swapped_arguments_sign(self):
        """Test Res(g, f) = (-1)^(mn) Res(f, g)"""
        x, y = MultiPoly.gens(XY)
        f = x ** 2 + y
        g = x ** 3 - y * x + 1
        forward = resultant(f, g, "x", method="subresultant")
        backward = resultant(g, f, "x", method="subresultant")
        assert forward == backward
        assert resultant(f, g, "x") == forward

    def test_common_root_gives_zero(self):
        """Test polynomials sharing a factor have zero resultant"""
        x, y = MultiPoly.gens(XY)
        shared = x - y
        assert not resultant(shared * (x + 1), shared * (x - 2), "x")

    def test_zero_input_raises(self):
        """Test resultant with the zero polynomial"""
        x, _ = MultiPoly.gens(XY)
        with pytest.raises(ZeroPolynomial):
            resultant(MultiPoly.zero(XY), x, "x")


class TestNormAndSolve:
    """Test the even/odd norm and the exact linear solver"""

    def test_norm_vanishes_at_square(self):
        """Test the norm of x - 2 is Z - 4"""
        x, = MultiPoly.gens(("x",))
        norm = even_odd_norm(x - 2, "x", "Z")
        z = MultiPoly.variable("Z", ("Z",))
        assert norm == z - 4

    def test_norm_of_mixed_polynomial(self):
        """Test the norm keeps the degree and vanishes at the square of a root"""
        x, = MultiPoly.gens(("x",))
        poly = x ** 3 - 2 * x + 1
        norm = even_odd_norm(poly, "x", "Z")
        assert norm.degree("Z") == 3
        assert norm.evaluate({"Z": 1}) == 0
        assert norm.evaluate({"Z": 4}) != 0

    def test_solve_exact_overdetermined(self):
        """Test a consistent overdetermined system"""
        matrix = [[1, 1], [1, -1], [2, 3]]
        rhs = [3, 1, 7]
        assert solve_exact(matrix, rhs) == [2, 1]

    def test_solve_exact_inconsistent(self):
        """Test an inconsistent system raises"""
        with pytest.raises(ValueError):
            solve_exact([[1, 0], [0, 1], [1, 1]], [1, 1, 3])

    def test_balanced_residual_cancels(self):
        """Test compensated summation of cancelling terms"""
        x, y = MultiPoly.gens(XY)
        poly = x * x - 2 * x * y + y * y
        value, scale = balanced_residual(poly, {"x": 2.0 ** 26 + 1, "y": 2.0 ** 26})
        assert value == 1.0
        assert scale == 2.0 ** 53 + 2.0 ** 27
