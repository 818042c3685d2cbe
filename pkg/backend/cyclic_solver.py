"""
Cyclic polygon solver
Residuals, roots and closed-form evaluation of the degree-7 relations
"""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import sympy

from cyclogon.errors import ZeroDenominator
from cyclogon.models import (
    ElemSym, ResidualReport, RootEntry, SideLengths5, VertexTriangleAreas,
)
from backend.cyclic_oracle import CyclicOracleService
from backend.elim_engine import TARGET_VARIABLE, EliminationService, area_rational_form, diagonal_septic
from backend.polynomial import MultiPoly, balanced_residual
from backend.printed_forms import (
    printed_area_rational, printed_circumradius, printed_fourAR, printed_robbins,
)
from backend.symfun import elem_values

logger = logging.getLogger(__name__)

VARIANTS = ("derived", "printed")

_PRINTED = {
    "robbins": printed_robbins,
    "fourAR": printed_fourAR,
    "circumradius": printed_circumradius,
}


_printed_rational = lru_cache(maxsize=None)(printed_area_rational)


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"Unknown variant {variant!r}; expected one of {VARIANTS}")


@lru_cache(maxsize=None)
def _printed_table(target: str) -> MultiPoly:
    return _PRINTED[target]()


def _table(target: str, variant: str) -> MultiPoly:
    _check_variant(variant)
    if variant == "printed":
        return _printed_table(target)
    return EliminationService.table(target)


def _difference(name: str, lhs, rhs, scale) -> ResidualReport:
    """lhs - rhs measured against ``scale``, the sum of the magnitudes of their terms."""
    return ResidualReport(name, lhs - rhs, max(abs(lhs), abs(rhs), abs(scale)))


def _poly_residual(name: str, poly: MultiPoly, values: Dict[str, object]) -> ResidualReport:
    value, scale = balanced_residual(poly, values)
    return ResidualReport(name, value, scale)


def _exact(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, mpmath.mpf):
        man, exp = value.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    return Fraction(value)


def real_roots(coefficients: Sequence[Fraction], oracle: Optional[float] = None) -> List[RootEntry]:
    """
    Real roots with multiplicity of a rational polynomial (low to high)

    Roots are isolated exactly and refined to 1e-12 of the root bound;
    the root nearest ``oracle`` is flagged.
    """
    y = sympy.Symbol("y")
    rational = [sympy.Rational(c.numerator, c.denominator) for c in coefficients]
    while rational and rational[-1] == 0:
        rational.pop()
    if len(rational) < 2:
        return []
    poly = sympy.Poly(list(reversed(rational)), y, domain="QQ")
    bound = 1 + max(abs(c / rational[-1]) for c in rational[:-1])
    eps = bound * sympy.Rational(1, 10 ** 12)
    entries = []
    for (low, high), multiplicity in poly.intervals(eps=eps):
        entries.append(RootEntry(float((low + high) / 2), int(multiplicity)))
    if oracle is not None and entries:
        nearest = min(range(len(entries)), key=lambda i: abs(entries[i].root - oracle))
        entries[nearest] = RootEntry(entries[nearest].root, entries[nearest].multiplicity, True)
    return entries


class CyclicSolverService(CyclicOracleService):
    """Numeric oracle plus evaluation of the polynomial relations"""

    @staticmethod
    def diagonal_septic_residual(X, sides: SideLengths5) -> ResidualReport:
        """(X^2-q)^2 (PX^3+SX^2+PQX+P^2) - p^2 (X^3-QX-2P)^2 at X."""
        k = CyclicOracleService.derived_params(sides)
        lhs = (X * X - k.q) ** 2 * (k.P * X ** 3 + k.S * X * X + k.P * k.Q * X + k.P * k.P)
        rhs = k.p * k.p * (X ** 3 - k.Q * X - 2 * k.P) ** 2
        x = abs(X)
        scale = ((x * x + k.q) ** 2 * (k.P * x ** 3 + k.S * x * x + k.P * k.Q * x + k.P * k.P)
                 + k.p * k.p * (x ** 3 + k.Q * x + 2 * k.P) ** 2)
        return _difference("diagonal", lhs, rhs, scale)

    @staticmethod
    def cubic_quadratic_quartic_residuals(X, R, A, sides: SideLengths5) -> Tuple[ResidualReport, ...]:
        """
        Residuals of the four relations linking the diagonal X, R and A

        Returns:
            (cubic for 4AR, quadratic for 4AR, triangle relation in R^2,
            quadrilateral relation in R^2)
        """
        k = CyclicOracleService.derived_params(sides)
        four_ar = 4 * A * R
        cubic = k.P * X ** 3 + k.S * X * X + k.P * k.Q * X + k.P * k.P
        quadrilateral = 4 * (k.S + 2 * k.P * X) - (X * X - k.Q) ** 2
        x, w = abs(X), abs(four_ar)
        cubic_scale = k.P * x ** 3 + k.S * x * x + k.P * k.Q * x + k.P * k.P
        return (
            _difference("cubic", (four_ar - k.p * X) ** 2, cubic, (w + k.p * x) ** 2 + cubic_scale),
            _difference("quadratic", (X * X - k.q) * four_ar, k.p * ((k.Q - k.q) * X + 2 * k.P),
                        (x * x + k.q) * w + k.p * ((k.Q + k.q) * x + 2 * k.P)),
            _difference("triangle", (4 * k.p * k.p - (X * X - k.q) ** 2) * R * R, k.p * k.p * X * X,
                        (4 * k.p * k.p + (x * x + k.q) ** 2) * R * R + k.p * k.p * x * x),
            _difference("quartic", quadrilateral * R * R, cubic,
                        (4 * (k.S + 2 * k.P * x) + (x * x + k.Q) ** 2) * R * R + cubic_scale),
        )

    @staticmethod
    def area_poly_in_X_residual(X, A, sides: SideLengths5) -> ResidualReport:
        """[(4A)^2 - (H^2+B^2)]^2 - 4 H^2 B^2 with H, B four times the two part areas."""
        k = CyclicOracleService.derived_params(sides)
        h2 = 4 * k.p * k.p - (X * X - k.q) ** 2
        b2 = 4 * (k.S + 2 * k.P * X) - (X * X - k.Q) ** 2
        y = (4 * A) ** 2
        scale = (y + abs(h2) + abs(b2)) ** 2 + 4 * abs(h2 * b2)
        return _difference("area_in_X", (y - h2 - b2) ** 2, 4 * h2 * b2, scale)

    @staticmethod
    def robbins_eval(Y, e: ElemSym, variant: str = "derived") -> ResidualReport:
        """Area polynomial at Y = (4A)^2."""
        values = e.as_dict()
        values["Y"] = Y
        return _poly_residual("robbins", _table("robbins", variant), values)

    @staticmethod
    def fourAR_poly_residual(Z, e: ElemSym, variant: str = "derived") -> ResidualReport:
        """4AR polynomial at Z = (4AR)^2."""
        values = e.as_dict()
        values["Z"] = Z
        return _poly_residual("fourAR", _table("fourAR", variant), values)

    @staticmethod
    def circumradius_poly_residual(R2, e: ElemSym, variant: str = "derived") -> ResidualReport:
        """Circumradius polynomial at R^2."""
        values = e.as_dict()
        values["R2"] = R2
        return _poly_residual("circumradius", _table("circumradius", variant), values)

    @staticmethod
    def table_roots(target: str, e: ElemSym, oracle: Optional[float] = None,
                    variant: str = "derived") -> List[RootEntry]:
        """
        Real roots of one degree-7 table specialised at e

        Args:
            target: "robbins" (in Y), "fourAR" (in Z) or "circumradius" (in R2)
            e: elementary symmetric values, taken as exact rationals
            oracle: value whose nearest root is flagged
        """
        if target not in _PRINTED:
            raise ValueError(f"No root table for {target!r}")
        exact = {name: _exact(value) for name, value in e.as_dict().items()}
        table = _table(target, variant)
        variable = TARGET_VARIABLE[target]
        coefficients = table.coefficients_in(variable)
        values = [_exact(coefficients[k].evaluate(exact)) if k in coefficients else Fraction(0)
                  for k in range(max(coefficients) + 1)]
        return real_roots(values, oracle)

    @staticmethod
    def robbins_roots(e: ElemSym, oracle_Y: Optional[float] = None,
                      variant: str = "derived") -> List[RootEntry]:
        """Real roots of the area polynomial in Y; the one nearest ``oracle_Y`` is flagged."""
        return CyclicSolverService.table_roots("robbins", e, oracle_Y, variant)

    @staticmethod
    def diagonal_roots(sides: SideLengths5, index: int = 0,
                       oracle: Optional[float] = None) -> List[RootEntry]:
        """Real roots of the diagonal relation for d[index]."""
        rotated = sides.rotated(index)
        params = CyclicOracleService.derived_params(rotated).as_dict()
        specialized = diagonal_septic().substitute(
            {name: _exact(value) for name, value in params.items()}, ("X",))
        coefficients = [_exact(c) for c in specialized.univariate_coefficients("X")]
        return real_roots(coefficients, oracle)

    @staticmethod
    def area_rational_T68(sides: SideLengths5, t: VertexTriangleAreas, variant: str = "derived",
                          tol: float = 1e-12) -> float:
        """
        Area as a rational function of the vertex triangle areas and squared sides

        The derived form returns A; the printed form returns its own N/D
        as displayed, which equals 4A. C1..C7, N and D are evaluated in exact
        rationals from the given floats; only the final quotient is rounded.

        Raises:
            ZeroDenominator: if |D| < tol |N|
        """
        _check_variant(variant)
        e = dict(zip(("e1", "e2", "e3", "e4", "e5"), elem_values([_exact(a) ** 2 for a in sides.a])))
        exact_t = VertexTriangleAreas(tuple(_exact(x) for x in t.t))
        values = {"c1p": 4 * exact_t.c1, "c2p": 16 * exact_t.c2}
        for k, coefficient in enumerate(EliminationService.robbins_coefficients()[1:], start=1):
            values[f"C{k}"] = _exact(coefficient.evaluate(e))
        if variant == "derived":
            numerator, denominator = area_rational_form()
        else:
            numerator, denominator = _printed_rational()
        n_value = _exact(numerator.evaluate(values))
        d_value = _exact(denominator.evaluate(values))
        if d_value == 0 or abs(d_value) < tol * abs(n_value):
            raise ZeroDenominator(float(n_value), float(d_value))
        if variant == "derived":
            return float(n_value / (4 * d_value))
        return float(n_value / d_value)

    @staticmethod
    def quadrilateral_degeneration(sides: SideLengths5) -> Dict[str, ResidualReport]:
        """
        Pentagon with one zero side seen as a cyclic quadrilateral

        The zero side is rotated to index 4; the diagonal d0 then separates
        (a2, a3) from (a0, a1).

        Raises:
            ValueError: unless exactly one side is zero
        """
        zeros = [i for i, x in enumerate(sides.a) if x == 0]
        if len(zeros) != 1:
            raise ValueError(f"Expected exactly one zero side, got {sides.a}")
        sides = sides.rotated(zeros[0] + 1)
        a0, a1, a2, a3, _ = sides.a
        metrics = CyclicOracleService.quad_metrics(a2, a3, a0, a1)
        e = CyclicOracleService.elem_sym(sides)
        y = (4 * metrics.A) ** 2
        z = (4 * metrics.A * metrics.R) ** 2
        e1, e2, e3, e4, _ = e.as_tuple()
        return {
            "diagonal": CyclicSolverService.diagonal_septic_residual(metrics.e, sides),
            "brahmagupta": _difference("brahmagupta", (y - 4 * e2 + e1 * e1) ** 2, 64 * e4,
                                       (y + 4 * e2 + e1 * e1) ** 2 + 64 * e4),
            "quadrilateral_4AR": _difference("quadrilateral_4AR", (z - e3) ** 2, e1 * e1 * e4,
                                             (z + e3) ** 2 + e1 * e1 * e4),
            "robbins": CyclicSolverService.robbins_eval(y, e),
            "fourAR": CyclicSolverService.fourAR_poly_residual(z, e),
        }
