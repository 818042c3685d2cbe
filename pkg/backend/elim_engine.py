"""
Elimination engine
Re-derives the degree-7 relations of the cyclic pentagon by exact resultant
elimination, rewrites them in elementary symmetric functions of the squared
sides and certifies them against the numeric oracle
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cyclogon.errors import (
    DegreeMismatch, DerivationError, ExtraneousFactorUnremovable, NotSymmetric,
    PrintedFormMismatch,
)
from cyclogon.models import DerivedParams, SideLengths5
from cyclogon.settings import get_settings
from backend.cyclic_oracle import CyclicOracleService, params_to_elem
from backend.polynomial import (
    MultiPoly, balanced_residual, even_odd_norm, grevlex_key, resultant, solve_exact,
)
from backend.printed_forms import (
    AREA_RATIONAL_VARIABLES, CIRCUMRADIUS_VARIABLES, FOURAR_VARIABLES, ROBBINS_READINGS,
    ROBBINS_VARIABLES, brahmagupta_factor, printed_area_rational, printed_circumradius,
    printed_fourAR, printed_robbins, quadrilateral_fourAR,
)
from backend.symfun import (
    E_VARIABLES, PARAM_VARIABLES, SymmetricFunctionService, e_lambda, partitions_of_weight,
)

logger = logging.getLogger(__name__)

DIAGONAL_VARIABLES = ("X",) + PARAM_VARIABLES
QUAD_SIDE_VARIABLES = ("X", "a0", "a1", "a2", "a3")

DERIVATION_TARGETS = ("diagonal", "fourAR", "circumradius", "robbins")
TARGET_VARIABLE = {"diagonal": "X", "fourAR": "Z", "circumradius": "R2", "robbins": "Y"}
TARGET_ALPHABET = {
    "diagonal": DIAGONAL_VARIABLES,
    "fourAR": FOURAR_VARIABLES,
    "circumradius": CIRCUMRADIUS_VARIABLES,
    "robbins": ROBBINS_VARIABLES,
}

EXPECTED_DEGREE = 7
VALIDATION_TOL = 1e-6
ROBBINS_POINTS = 120
# fresh points for the second route, with entries below ROUTE_RANGE
ROUTE_POINTS = 8
ROUTE_RANGE = 10_000
# parameter degree bound of the second route remainder modulo a monic area polynomial
ROUTE_DEGREE_BOUND = 180
DIFF_SHOWN = 40


@dataclass
class DerivationReport:
    """Outcome of one symbolic derivation"""
    target: str
    polynomial: MultiPoly
    variable: str
    degree: int
    monic: bool
    content: int
    primitive_per_coefficient: Dict[int, bool]
    extraneous_factors: List[Tuple[str, int]] = field(default_factory=list)
    match_status: str = "not_compared"
    diff: List[str] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    validation: Dict[str, object] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json_dict(self) -> dict:
        # elapsed is left out so reports are byte-identical across runs
        return {
            "target": self.target,
            "variable": self.variable,
            "degree": self.degree,
            "monic": self.monic,
            "content": self.content,
            "primitive_per_coefficient": {str(k): v for k, v in sorted(self.primitive_per_coefficient.items())},
            "extraneous_factors": [{"factor": f, "multiplicity": m} for f, m in self.extraneous_factors],
            "match_status": self.match_status,
            "diff_terms": len(self.diff),
            "diff": shown_diff(self.diff),
            "checks": dict(sorted(self.checks.items())),
            "validation": dict(sorted(self.validation.items())),
        }


@dataclass
class RationalAreaReport:
    """Numerator and denominator of 4A as a rational function of c1', c2', C1..C7"""
    numerator: MultiPoly
    denominator: MultiPoly
    match_status: str
    diff: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "target": "area_rational",
            "numerator_terms": len(self.numerator),
            "denominator_terms": len(self.denominator),
            "match_status": self.match_status,
            "diff_terms": len(self.diff),
            "diff": shown_diff(self.diff),
        }


# ----------------------------------------------------------------------
# building blocks
# ----------------------------------------------------------------------

def diagonal_septic() -> MultiPoly:
    """(X^2-q)^2 (PX^3+SX^2+PQX+P^2) - p^2 (X^3-QX-2P)^2, the diagonal relation."""
    X, p, q, P, Q, S = MultiPoly.gens(DIAGONAL_VARIABLES)
    cubic = P * X ** 3 + S * X * X + P * Q * X + P * P
    return (X * X - q) ** 2 * cubic - p * p * (X ** 3 - Q * X - 2 * P) ** 2


def circumradius_relations() -> Tuple[Tuple[MultiPoly, MultiPoly], Tuple[MultiPoly, MultiPoly]]:
    """
    The two relations linear in T = R^2, as (coefficient of T, free term)

    From the triangle on the diagonal and the quadrilateral on the other side.
    """
    X, p, q, P, Q, S = MultiPoly.gens(DIAGONAL_VARIABLES)
    triangle = (4 * p * p - (X * X - q) ** 2, p * p * X * X)
    quadrilateral = (4 * (S + 2 * P * X) - (X * X - Q) ** 2,
                     P * X ** 3 + S * X * X + P * Q * X + P * P)
    return triangle, quadrilateral


def fourAR_relations() -> Tuple[MultiPoly, MultiPoly]:
    """Cubic and quadratic in X with W = 4AR."""
    variables = ("X", "W") + PARAM_VARIABLES
    X, W, p, q, P, Q, S = MultiPoly.gens(variables)
    cubic = P * X ** 3 + (S - p * p) * X * X + (P * Q + 2 * p * W) * X + (P * P - W * W)
    quadratic = W * X * X - p * (Q - q) * X - (q * W + 2 * p * P)
    return cubic, quadratic


def _parameter_candidates() -> List[Tuple[str, MultiPoly]]:
    """Parameter factors resultants are known to introduce."""
    p, q, P, Q, _ = MultiPoly.gens(PARAM_VARIABLES)
    return [
        ("p", p),
        ("P", P),
        ("q", q),
        ("q^2-4p^2", q * q - 4 * p * p),
        ("4P^2-q(q-Q)^2", 4 * P * P - q * (q - Q) ** 2),
    ]


def strip_factors(poly: MultiPoly, candidates: Sequence[Tuple[str, MultiPoly]],
                  target: Optional[str] = None,
                  samples: Optional[int] = None) -> Tuple[MultiPoly, List[Tuple[str, int]]]:
    """
    Divide out every candidate as often as it divides

    With ``target`` set, a candidate is only removed if it stays away from
    zero on the oracle samples; a factor that vanishes there carries the
    relation itself.

    Raises:
        ExtraneousFactorUnremovable: if a dividing candidate vanishes on every oracle sample
    """
    removed = []
    sample_values: Optional[List[Dict[str, float]]] = None
    for name, factor in candidates:
        quotient, count = poly.remove_factor(factor)
        if not count:
            logger.debug("Candidate factor (%s) does not divide", name)
            continue
        if target is not None:
            if sample_values is None:
                sample_values = _factor_samples(target, samples)
            size = factor_size(factor, sample_values)
            if size <= VALIDATION_TOL:
                raise ExtraneousFactorUnremovable(
                    f"{target}: candidate factor ({name}) vanishes on the oracle samples "
                    f"(largest relative value {size:.3g})"
                )
            logger.debug("Candidate factor (%s) reaches relative size %.3g on the oracle", name, size)
        logger.info("Removed extraneous factor (%s)^%d", name, count)
        poly = quotient
        removed.append((name, count))
    return poly, removed


def _factor_samples(target: str, samples: Optional[int] = None) -> List[Dict[str, float]]:
    count = samples if samples is not None else get_settings().oracle_samples
    values = []
    for sides in oracle_sides(count):
        point = CyclicOracleService.derived_params(sides).as_dict()
        point.update(oracle_values(target, sides))
        values.append(point)
    return values


def factor_size(factor: MultiPoly, sample_values: Sequence[Dict[str, float]]) -> float:
    """Largest relative value of ``factor`` over the samples; near zero means it vanishes there."""
    largest = 0.0
    for values in sample_values:
        value, scale = balanced_residual(factor, values)
        largest = max(largest, abs(value) / scale if scale else abs(value))
    return largest


def _to_elementary(poly: MultiPoly, keep: str) -> MultiPoly:
    try:
        return SymmetricFunctionService.params_to_elementary(poly, keep=keep)
    except NotSymmetric as exc:
        raise ExtraneousFactorUnremovable(
            f"Cleaned polynomial has no expression in the squared sides: {exc}"
        ) from exc


def _normalize(poly: MultiPoly, var: str) -> Tuple[MultiPoly, int]:
    """Content removal and a positive leading coefficient in ``var``."""
    content = poly.content()
    poly, _ = poly.primitive_part().normalized_sign(var)
    return poly, int(content)


def coefficient_profile(poly: MultiPoly, var: str) -> Tuple[int, bool, Dict[int, bool]]:
    """(degree, monic, primitivity per power of ``var``)"""
    coefficients = poly.coefficients_in(var)
    degree = max(coefficients)
    lead = coefficients[degree]
    monic = lead.is_constant and lead.constant_value == 1
    primitive = {k: c.content() == 1 for k, c in coefficients.items()}
    return degree, monic, primitive


def _monomial(variables: Sequence[str], exponent: Sequence[int]) -> str:
    factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(variables, exponent) if k]
    return "*".join(factors) or "1"


def term_diff(derived: MultiPoly, printed: MultiPoly) -> List[str]:
    """Every term whose coefficients differ, largest monomials first."""
    union = derived.variables + tuple(v for v in printed.variables if v not in derived.variables)
    derived, printed = derived.extend(union), printed.extend(union)
    exponents = sorted(set(derived.terms) | set(printed.terms), key=grevlex_key, reverse=True)
    lines = []
    for exponent in exponents:
        a, b = derived.terms.get(exponent, 0), printed.terms.get(exponent, 0)
        if a != b:
            lines.append(f"{_monomial(union, exponent)}: derived {a}, printed {b}")
    return lines


def shown_diff(diff: Sequence[str], limit: int = DIFF_SHOWN) -> List[str]:
    """At most ``limit`` diff lines, with a closing line counting the rest."""
    if len(diff) <= limit:
        return list(diff)
    return list(diff[:limit]) + [f"... {len(diff) - limit} more"]


# ----------------------------------------------------------------------
# oracle validation
# ----------------------------------------------------------------------

def oracle_sides(count: int, seed: int = 0) -> List[SideLengths5]:
    """Random side sets that always close up (every side below 1.4, above 0.6)."""
    rng = np.random.default_rng(seed)
    return [SideLengths5(tuple(float(x) for x in rng.uniform(0.6, 1.4, 5))) for _ in range(count)]


def oracle_values(target: str, sides: SideLengths5) -> Dict[str, float]:
    """Values of every variable of ``target``'s polynomial at the convex cyclic pentagon."""
    solution = CyclicOracleService.construct_cyclic_pentagon(sides)
    if target == "diagonal":
        values = CyclicOracleService.derived_params(sides).as_dict()
        values["X"] = solution.d[0]
        return values
    values = CyclicOracleService.elem_sym(sides).as_dict()
    four_a = 4 * solution.A
    if target == "robbins":
        values["Y"] = four_a * four_a
    elif target == "fourAR":
        values["Z"] = (four_a * solution.R) ** 2
    elif target == "circumradius":
        values["R2"] = solution.R * solution.R
    else:
        raise ValueError(f"Unknown derivation target {target!r}")
    return values


def validate(target: str, poly: MultiPoly, samples: Optional[int] = None,
             tol: float = VALIDATION_TOL, seed: int = 0) -> Dict[str, object]:
    """Worst relative residual of ``poly`` over oracle samples."""
    count = samples if samples is not None else get_settings().oracle_samples
    worst = 0.0
    for sides in oracle_sides(count, seed):
        value, scale = balanced_residual(poly, oracle_values(target, sides))
        worst = max(worst, abs(value) / scale if scale else abs(value))
    return {"samples": count, "max_relative_residual": worst, "tolerance": tol,
            "passed": worst <= tol}


def _require_valid(target: str, validation: Dict[str, object]) -> None:
    if not validation["passed"]:
        raise ExtraneousFactorUnremovable(
            f"{target}: cleaned polynomial misses the oracle values "
            f"(max relative residual {validation['max_relative_residual']:.3g})"
        )


def _require_degree(target: str, degree: int) -> None:
    if degree != EXPECTED_DEGREE:
        raise DegreeMismatch(f"{target}: expected degree {EXPECTED_DEGREE}, got {degree}")


def _compare_printed(derived: MultiPoly, printed: MultiPoly) -> Tuple[str, List[str]]:
    diff = term_diff(derived, printed)
    return ("match" if not diff else "mismatch"), diff


# ----------------------------------------------------------------------
# degenerations
# ----------------------------------------------------------------------

def quadrilateral_diagonal_check(septic: MultiPoly) -> bool:
    """
    With a4 = 0 the diagonal relation must contain
    (a0a1 + a2a3) X^2 - (a0a3 + a1a2)(a0a2 + a1a3)
    """
    X, a0, a1, a2, a3 = MultiPoly.gens(QUAD_SIDE_VARIABLES)
    specialized = septic.substitute({
        "p": a2 * a3, "q": a2 * a2 + a3 * a3, "P": 0,
        "Q": a0 * a0 + a1 * a1, "S": a0 * a0 * a1 * a1,
    }, QUAD_SIDE_VARIABLES)
    factor = (a0 * a1 + a2 * a3) * X * X - (a0 * a3 + a1 * a2) * (a0 * a2 + a1 * a3)
    return factor.divides(specialized)


def golden_root_check(septic: MultiPoly) -> bool:
    """Unit sides: X^2 - X - 1 divides the septic, so the golden ratio is a root."""
    specialized = septic.substitute({"p": 1, "q": 2, "P": 1, "Q": 3, "S": 3}, ("X",))
    X = MultiPoly.variable("X", ("X",))
    return (X * X - X - 1).divides(specialized)


def e5_degeneration_check(target: str, poly: MultiPoly) -> bool:
    """The e5 = 0 specialization contains the cyclic quadrilateral relation."""
    specialized = poly.substitute({"e5": 0})
    if target == "fourAR":
        return quadrilateral_fourAR().divides(specialized)
    if target == "robbins":
        return brahmagupta_factor().divides(specialized)
    raise ValueError(f"No e5 = 0 reduction is known for {target!r}")


# ----------------------------------------------------------------------
# derivations
# ----------------------------------------------------------------------

def derive_diagonal(method: str = "bareiss") -> DerivationReport:
    """
    Eliminate T = R^2 from the two relations linear in it

    Raises:
        PrintedFormMismatch: if the result differs from the expanded septic
    """
    start = time.perf_counter()
    (a1, b1), (a2, b2) = circumradius_relations()
    alphabet = DIAGONAL_VARIABLES + ("T",)
    T = MultiPoly.variable("T", alphabet)
    first = a1.extend(alphabet) * T - b1
    second = a2.extend(alphabet) * T - b2
    eliminated = resultant(first, second, "T", method=method).extend(DIAGONAL_VARIABLES)
    poly, content = _normalize(eliminated, "X")
    degree, monic, primitive = coefficient_profile(poly, "X")
    _require_degree("diagonal", degree)

    diff = term_diff(poly, diagonal_septic())
    if diff:
        raise PrintedFormMismatch("Eliminated relation differs from the expanded septic", diff)
    validation = validate("diagonal", poly)
    _require_valid("diagonal", validation)
    checks = {
        "degree": True,
        "printed_form": True,
        "golden_root": golden_root_check(poly),
        "quadrilateral_degeneration": quadrilateral_diagonal_check(poly),
        "validation": True,
    }
    elapsed = time.perf_counter() - start
    logger.info("Derived diagonal relation: %d terms in %.2fs", len(poly), elapsed)
    return DerivationReport("diagonal", poly, "X", degree, monic, content, primitive,
                            match_status="match", checks=checks, validation=validation,
                            elapsed=elapsed)


def derive_fourAR(method: str = "bareiss") -> DerivationReport:
    """
    Eliminate X from the cubic and quadratic in W = 4AR, pass to Z = W^2
    and rewrite in the elementary basis
    """
    start = time.perf_counter()
    cubic, quadratic = fourAR_relations()
    in_w = resultant(cubic, quadratic, "X", method=method)
    logger.info("Resultant in W: degree %d, %d terms", in_w.degree("W"), len(in_w))
    in_z = even_odd_norm(in_w, "W", "Z")
    in_z, removed = strip_factors(in_z, _parameter_candidates(), target="fourAR")
    poly, content = _normalize(_to_elementary(in_z, "Z"), "Z")
    poly = poly.extend(FOURAR_VARIABLES)
    degree, monic, primitive = coefficient_profile(poly, "Z")
    _require_degree("fourAR", degree)
    validation = validate("fourAR", poly)
    _require_valid("fourAR", validation)
    status, diff = _compare_printed(poly, printed_fourAR())
    if diff:
        logger.warning("4AR polynomial differs from the printed form in %d terms", len(diff))
    checks = {
        "degree": True,
        "monic": monic,
        "e5_degeneration": e5_degeneration_check("fourAR", poly),
        "validation": True,
    }
    elapsed = time.perf_counter() - start
    logger.info("Derived 4AR polynomial: %d terms in %.2fs", len(poly), elapsed)
    return DerivationReport("fourAR", poly, "Z", degree, monic, content, primitive, removed,
                            status, diff, checks, validation, elapsed)


def derive_circumradius() -> DerivationReport:
    """
    Eliminate U = X^2 between the norm of the septic and the triangle relation
    -T U^2 + (2qT - p^2) U + (4p^2 - q^2) T with T = R^2
    """
    start = time.perf_counter()
    alphabet = ("U", "R2") + PARAM_VARIABLES
    U, T, p, q, _, _, _ = MultiPoly.gens(alphabet)
    norm = even_odd_norm(diagonal_septic(), "X", "U").extend(alphabet)
    triangle = -T * U * U + (2 * q * T - p * p) * U + (4 * p * p - q * q) * T
    eliminated = resultant(norm, triangle, "U", method="subresultant")
    logger.info("Resultant in R^2: degree %d, %d terms", eliminated.degree("R2"), len(eliminated))
    eliminated, removed = strip_factors(eliminated, _parameter_candidates(), target="circumradius")
    poly, content = _normalize(_to_elementary(eliminated, "R2"), "R2")
    poly = poly.extend(CIRCUMRADIUS_VARIABLES)
    degree, monic, primitive = coefficient_profile(poly, "R2")
    _require_degree("circumradius", degree)
    validation = validate("circumradius", poly)
    _require_valid("circumradius", validation)
    status, diff = _compare_printed(poly, printed_circumradius())
    if diff:
        logger.warning("Circumradius polynomial differs from the printed form in %d terms", len(diff))
    checks = {"degree": True, "validation": True}
    elapsed = time.perf_counter() - start
    logger.info("Derived circumradius polynomial: %d terms in %.2fs", len(poly), elapsed)
    return DerivationReport("circumradius", poly, "R2", degree, monic, content, primitive, removed,
                            status, diff, checks, validation, elapsed)


def robbins_points(count: int, seed: int = 7, high: Tuple[int, int] = (7, 13),
                   exclude: Sequence[Tuple[int, int, int, int, int]] = ()) -> List[Tuple[int, int, int, int, int]]:
    """Distinct integer (p, q, P, Q, S) avoiding the degenerate loci; p, P below high[0], the rest below high[1]."""
    rng = np.random.default_rng(seed)
    points: List[Tuple[int, int, int, int, int]] = []
    seen = set(exclude)
    while len(points) < count:
        p, P = (int(v) for v in rng.integers(1, high[0], 2))
        q, Q, S = (int(v) for v in rng.integers(1, high[1], 3))
        if q * q == 4 * p * p or 4 * P * P == q * (q - Q) ** 2:
            continue
        if (p, q, P, Q, S) in seen:
            continue
        seen.add((p, q, P, Q, S))
        points.append((p, q, P, Q, S))
    return points


def _septic_at(p: int, q: int, P: int, Q: int, S: int) -> MultiPoly:
    return diagonal_septic().substitute({"p": p, "q": q, "P": P, "Q": Q, "S": S}, ("X", "Y"))


def robbins_at_point(p: int, q: int, P: int, Q: int, S: int) -> Optional[List[int]]:
    """
    Monic area polynomial in Y at one parameter point, low to high

    Y = [(Q-q)X + 2P]^2 [4p^2 - (X^2-q)^2] / (X^2 (X^2-q)^2) is cleared of
    denominators and X is eliminated against the septic. Returns None where
    the degree drops.

    Raises:
        DerivationError: if the monic quotient is not integral
    """
    X, Y = MultiPoly.gens(("X", "Y"))
    closed = (Y * X * X * (X * X - q) ** 2
              - ((Q - q) * X + 2 * P) ** 2 * (4 * p * p - (X * X - q) ** 2))
    in_y = resultant(_septic_at(p, q, P, Q, S), closed, "X", method="subresultant")
    coefficients = in_y.extend(("Y",)).univariate_coefficients("Y")
    if len(coefficients) != EXPECTED_DEGREE + 1 or not coefficients[-1]:
        return None
    lead = coefficients[-1]
    monic = [Fraction(c, lead) for c in coefficients]
    if any(c.denominator != 1 for c in monic):
        raise DerivationError(f"Area polynomial at {(p, q, P, Q, S)} is not integral after division")
    return [int(c) for c in monic]


def area_in_x(p: int, q: int, P: int, Q: int, S: int) -> MultiPoly:
    """[Y - (H^2 + B^2)]^2 - 4 H^2 B^2 at one parameter point."""
    X, Y = MultiPoly.gens(("X", "Y"))
    triangle = 4 * p * p - (X * X - q) ** 2
    quadrilateral = 4 * (S + 2 * P * X) - (X * X - Q) ** 2
    return (Y - triangle - quadrilateral) ** 2 - 4 * triangle * quadrilateral


def _interpolate_robbins(points: Sequence[Tuple[int, int, int, int, int]]) -> MultiPoly:
    """Solve for every coefficient in the basis of e-monomials of the right weight."""
    samples = []
    for point in points:
        monic = robbins_at_point(*point)
        if monic is None:
            logger.debug("Skipping %s: degree drops", point)
            continue
        e = params_to_elem(DerivedParams(p=point[0], q=point[1], P=point[2], Q=point[3], S=point[4]))
        samples.append((e, monic))
    logger.info("Interpolating the area polynomial from %d points", len(samples))
    Y = MultiPoly.variable("Y", ROBBINS_VARIABLES)
    poly = Y ** EXPECTED_DEGREE
    for t in range(1, EXPECTED_DEGREE + 1):
        basis = partitions_of_weight(2 * t)
        if len(samples) < len(basis):
            raise DerivationError(f"Need {len(basis)} points for weight {2 * t}, have {len(samples)}")
        matrix = [[e_lambda(partition, e) for partition in basis] for e, _ in samples]
        rhs = [monic[EXPECTED_DEGREE - t] for _, monic in samples]
        try:
            solution = solve_exact(matrix, rhs)
        except ValueError as exc:
            raise DerivationError(f"Coefficient of weight {2 * t} could not be interpolated: {exc}") from exc
        if any(c.denominator != 1 for c in solution):
            raise DerivationError(f"Coefficient of weight {2 * t} is not integral")
        terms = {partition.multiplicities() + (EXPECTED_DEGREE - t,): int(c)
                 for partition, c in zip(basis, solution) if c}
        poly = poly + MultiPoly(terms, ROBBINS_VARIABLES)
    return poly


def route_points(count: int, seed: int,
                 exclude: Sequence[Tuple[int, int, int, int, int]] = ()) -> List[Tuple[int, int, int, int, int]]:
    """Fresh points for the second route, drawn from the wide range."""
    return robbins_points(count, seed, high=(ROUTE_RANGE, ROUTE_RANGE), exclude=exclude)


def routes_agree(poly: MultiPoly, points: Sequence[Tuple[int, int, int, int, int]],
                 required: int = 1) -> bool:
    """
    The squared area-in-X relation eliminated against the septic contains ``poly``

    Points where the second route drops degree are skipped; agreement needs
    ``required`` checked points. For a monic ``poly`` the division remainder
    has parameter degree below ROUTE_DEGREE_BOUND, so a wrong polynomial
    passes a random point of the wide range with probability at most
    ROUTE_DEGREE_BOUND / ROUTE_RANGE.
    """
    checked = 0
    for point in points:
        in_y = resultant(area_in_x(*point), _septic_at(*point), "X", method="subresultant")
        in_y = in_y.extend(("Y",))
        if in_y.degree("Y") != 2 * EXPECTED_DEGREE:
            logger.debug("Second route has degree %d at %s; skipped", in_y.degree("Y"), point)
            continue
        e = params_to_elem(DerivedParams(p=point[0], q=point[1], P=point[2], Q=point[3], S=point[4]))
        specialized = poly.substitute(dict(zip(E_VARIABLES, e)), ("Y",))
        if not specialized.divides(in_y):
            logger.warning("Second route does not contain the area polynomial at %s", point)
            return False
        checked += 1
        if checked >= required:
            return True
    logger.warning("Second route checked at %d points, %d needed", checked, required)
    return False


def derive_robbins(points: int = ROBBINS_POINTS, seed: int = 7) -> DerivationReport:
    """
    Monic degree-7 polynomial in Y = (4A)^2

    Exact specializations of the eliminated relation are interpolated in the
    e-monomial basis; a second elimination route is checked for divisibility
    at fresh points from a wide range.
    """
    start = time.perf_counter()
    grid = robbins_points(points, seed)
    poly = _interpolate_robbins(grid)
    degree, monic, primitive = coefficient_profile(poly, "Y")
    _require_degree("robbins", degree)
    validation = validate("robbins", poly)
    _require_valid("robbins", validation)
    logger.info("Second route at %d fresh points; a wrong polynomial passes with probability below %.1e",
                ROUTE_POINTS, (ROUTE_DEGREE_BOUND / ROUTE_RANGE) ** ROUTE_POINTS)
    status, diff = _compare_printed(poly, printed_robbins("product"))
    for reading in ROBBINS_READINGS[1:]:
        other = term_diff(poly, printed_robbins(reading))
        logger.info("Printed area polynomial, %s reading: %d differing terms", reading, len(other))
    checks = {
        "degree": True,
        "monic": monic,
        "primitive": all(primitive.values()),
        "e5_degeneration": e5_degeneration_check("robbins", poly),
        "route_agreement": routes_agree(poly, route_points(2 * ROUTE_POINTS, seed + 1, exclude=grid),
                                        required=ROUTE_POINTS),
        "validation": True,
    }
    elapsed = time.perf_counter() - start
    logger.info("Derived area polynomial: %d terms in %.2fs", len(poly), elapsed)
    return DerivationReport("robbins", poly, "Y", degree, monic, int(poly.content()), primitive,
                            [], status, diff, checks, validation, elapsed)


def derive_area_rational() -> RationalAreaReport:
    """
    4A = N / D from the side relation s^2 = c1' s - c2' (s = 4A) and the area
    polynomial sum C_t s^(14-2t) with C0 = 1

    Powers reduce as s^m = alpha_m s + beta_m with alpha_(m+1) = c1' alpha_m + beta_m
    and beta_(m+1) = -c2' alpha_m, so N = -sum C_t beta_(14-2t) and
    D = sum C_t alpha_(14-2t).
    """
    start = time.perf_counter()
    gens = MultiPoly.gens(AREA_RATIONAL_VARIABLES)
    c1, c2, coefficients = gens[0], gens[1], (MultiPoly.constant(1, AREA_RATIONAL_VARIABLES),) + gens[2:]
    top = 2 * EXPECTED_DEGREE
    alpha = [MultiPoly.zero(AREA_RATIONAL_VARIABLES), MultiPoly.constant(1, AREA_RATIONAL_VARIABLES)]
    beta = [MultiPoly.constant(1, AREA_RATIONAL_VARIABLES), MultiPoly.zero(AREA_RATIONAL_VARIABLES)]
    for m in range(1, top):
        alpha.append(c1 * alpha[m] + beta[m])
        beta.append(-(c2 * alpha[m]))
    numerator = MultiPoly.zero(AREA_RATIONAL_VARIABLES)
    denominator = MultiPoly.zero(AREA_RATIONAL_VARIABLES)
    for t, coefficient in enumerate(coefficients):
        numerator = numerator - coefficient * beta[top - 2 * t]
        denominator = denominator + coefficient * alpha[top - 2 * t]

    printed_n, printed_d = printed_area_rational()
    cross = numerator * printed_d - printed_n * denominator
    if not cross:
        status, diff = "match", []
    else:
        status = "mismatch"
        diff = term_diff(numerator * printed_d, printed_n * denominator)
        logger.warning("Printed rational area form differs from the derivation in %d terms", len(diff))
    elapsed = time.perf_counter() - start
    return RationalAreaReport(numerator, denominator, status, diff, elapsed)


DERIVATIONS: Dict[str, Callable[[], DerivationReport]] = {
    "diagonal": derive_diagonal,
    "fourAR": derive_fourAR,
    "circumradius": derive_circumradius,
    "robbins": derive_robbins,
}


def derive(target: str) -> DerivationReport:
    if target not in DERIVATIONS:
        raise ValueError(f"Unknown derivation target {target!r}; expected one of {DERIVATION_TARGETS}")
    return DERIVATIONS[target]()


# ----------------------------------------------------------------------
# golden files and cached tables
# ----------------------------------------------------------------------

def write_golden(report: DerivationReport, directory: Optional[Path] = None) -> List[Path]:
    """Write ``<target>.poly`` and ``<target>.json``; returns the paths."""
    directory = Path(directory or get_settings().golden_dir)
    directory.mkdir(parents=True, exist_ok=True)
    poly_path = directory / f"{report.target}.poly"
    json_path = directory / f"{report.target}.json"
    poly_path.write_text(report.polynomial.to_text())
    json_path.write_text(json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n")
    logger.info("Wrote %s and %s", poly_path, json_path)
    return [poly_path, json_path]


def load_golden(target: str, directory: Optional[Path] = None) -> Optional[MultiPoly]:
    """Golden polynomial of ``target``, or None if no file exists."""
    if target not in TARGET_ALPHABET:
        raise ValueError(f"Unknown derivation target {target!r}")
    path = Path(directory or get_settings().golden_dir) / f"{target}.poly"
    if not path.exists():
        return None
    return MultiPoly.from_text(path.read_text(), TARGET_ALPHABET[target])


@lru_cache(maxsize=None)
def derived_table(target: str) -> MultiPoly:
    """Authoritative polynomial of ``target``: golden file if present, else derived."""
    golden = load_golden(target)
    if golden is not None:
        return golden
    logger.info("No golden file for %s; deriving", target)
    return derive(target).polynomial


@lru_cache(maxsize=None)
def area_rational_form() -> Tuple[MultiPoly, MultiPoly]:
    report = derive_area_rational()
    return report.numerator, report.denominator


def clear_tables() -> None:
    """Forget cached tables (after the golden directory changes)."""
    derived_table.cache_clear()
    area_rational_form.cache_clear()


class EliminationService:
    """Entry points for symbolic derivations"""

    @staticmethod
    def derive(target: str) -> DerivationReport:
        return derive(target)

    @staticmethod
    def derive_and_write(target: str, directory: Optional[Path] = None) -> Tuple[DerivationReport, List[Path]]:
        """
        Derive ``target`` and write its golden files

        Raises:
            DerivationError: on any derivation failure (the diff is attached)
        """
        report = derive(target)
        paths = write_golden(report, directory)
        return report, paths

    @staticmethod
    def table(target: str) -> MultiPoly:
        return derived_table(target)

    @staticmethod
    def robbins_coefficients() -> List[MultiPoly]:
        """C0 = 1, C1..C7 as polynomials in e1..e5 (C_t multiplies Y^(7-t))."""
        coefficients = derived_table("robbins").coefficients_in("Y")
        zero = MultiPoly.zero(ROBBINS_VARIABLES)
        return [coefficients.get(EXPECTED_DEGREE - t, zero) for t in range(EXPECTED_DEGREE + 1)]
