"""
Published closed forms, transcribed as displayed

These are kept side by side with the derived tables and diffed against
them; they are never corrected here. Partition notation: ``52^21^4`` is
e5 * e2^2 * e1^4.
"""
from typing import Dict, List, Sequence, Tuple

from backend.polynomial import MultiPoly
from backend.symfun import E_VARIABLES, Partition

ROBBINS_VARIABLES = E_VARIABLES + ("Y",)
FOURAR_VARIABLES = E_VARIABLES + ("Z",)
CIRCUMRADIUS_VARIABLES = E_VARIABLES + ("R2",)
AREA_RATIONAL_VARIABLES = ("c1p", "c2p", "C1", "C2", "C3", "C4", "C5", "C6", "C7")

# grouping of the middle term in the e5 bracket of the area polynomial
ROBBINS_READINGS = ("product", "sum")

# e5 bracket of the 4AR polynomial: power of Z -> [(coefficient, partition)]
_FOURAR_BRACKET: Dict[int, List[Tuple[int, str]]] = {
    0: [(-1, "51^3"), (5, "521"), (-8, "53")],
    1: [(-1, "52^21^4"), (-4, "5321^3"), (8, "52^31^2"), (-32, "5421^2"), (-4, "53^21^2"),
        (16, "532^21"), (-16, "52^4"), (-64, "5431"), (128, "542^2"), (-256, "54^2"),
        (-1, "31^2"), (-8, "41"), (4, "32"), (-24, "5")],
    2: [(2, "421^4"), (28, "521^3"), (4, "31^3"), (-8, "42^21^2"), (-2, "3^221^2"),
        (56, "531^2"), (-112, "52^21"), (32, "4^21^2"), (-4, "3^31"), (8, "3^22^2"),
        (448, "541"), (-32, "43^2"), (1, "1^2"), (4, "2")],
    3: [(-28, "41^3"), (4, "321^2"), (-196, "51^2"), (36, "3^21"), (-16, "32^2"), (64, "43")],
    4: [(-2, "21^2"), (-60, "31"), (8, "2^2"), (-32, "4")],
    5: [(28, "1")],
}

# squared part of the circumradius polynomial: power of R^2 -> terms
_CIRCUMRADIUS_SQUARED: Dict[int, List[Tuple[int, str]]] = {
    2: [(1, "1^4"), (-8, "21^2"), (16, "2^2"), (-64, "4")],
    1: [(2, "31^2"), (16, "41"), (-8, "32")],
    0: [(-1, "41^2"), (1, "3^2")],
}

# W of the circumradius polynomial: power of R^2 -> (scalar, terms); lines
# printed without a leading sign are read as added; the R^2 line gets its
# e5 factor in printed_circumradius, so its partitions leave it out
_CIRCUMRADIUS_W: Dict[int, Tuple[int, List[Tuple[int, str]]]] = {
    7: (2048, [(-1, "1^3"), (4, "21"), (-8, "3")]),
    6: (32, [(23, "1^4"), (-88, "21^2"), (192, "31"), (-16, "2^2"), (64, "4")]),
    5: (64, [(-1, "1^5"), (2, "21^3"), (-9, "31^2"), (8, "2^21"), (-8, "41"), (-12, "32"), (-12, "5")]),
    4: (1, [(1, "1^6"), (6, "21^4"), (32, "31^3"), (-32, "2^21^2"), (-32, "41^2"), (-32, "2^3"),
            (256, "51"), (128, "42"), (224, "3^2")]),
    3: (2, [(-1, "31^4"), (4, "41^3"), (2, "321^2"), (-8, "51^2"), (-16, "3^21"), (8, "32^2"),
            (-16, "52"), (-32, "43")]),
    2: (1, [(2, "51^3"), (-2, "421^2"), (1, "3^21^2"), (16, "531"), (-8, "52^2"), (8, "431"),
            (-2, "3^22"), (-16, "54"), (8, "53")]),
    1: (1, [(-2, "31"), (1, "2^2"), (-4, "4")]),
    0: (1, [(1, "5^2")]),
}


def e_monomial(notation: str, variables: Sequence[str] = E_VARIABLES) -> MultiPoly:
    """e_lambda for a partition in exponent notation."""
    exponent = Partition.from_notation(notation).multiplicities(len(E_VARIABLES))
    return MultiPoly({exponent: 1}, E_VARIABLES).extend(variables)


def _combination(terms: Sequence[Tuple[int, str]], variables: Sequence[str]) -> MultiPoly:
    result = MultiPoly.zero(variables)
    for coefficient, notation in terms:
        result = result + e_monomial(notation, variables) * coefficient
    return result


def printed_robbins(reading: str = "product") -> MultiPoly:
    """
    Degree-7 area polynomial in Y = (4A)^2

    Args:
        reading: "product" reads the middle term of the e5 bracket as
            18 Y C B; "sum" reads it literally as 18 Y C + B
    """
    if reading not in ROBBINS_READINGS:
        raise ValueError(f"Unknown reading {reading!r}")
    e1, e2, e3, e4, e5, Y = MultiPoly.gens(ROBBINS_VARIABLES)
    w = Y - e2 * 4 + e1 * e1
    brahmagupta = w * w - e4 * 64
    cubic = e1 * w + e3 * 8
    if reading == "product":
        middle = Y * cubic * brahmagupta * 18
    else:
        middle = Y * cubic * 18 + brahmagupta
    bracket = cubic ** 3 * 16 + middle + Y * Y * e5 * 3456
    return brahmagupta * brahmagupta * (Y * brahmagupta + cubic * cubic) - e5 * bracket * 128


def printed_fourAR() -> MultiPoly:
    """Degree-7 polynomial in Z = (4AR)^2."""
    e1, e2, e3, e4, e5, Z = MultiPoly.gens(FOURAR_VARIABLES)
    quadrilateral = (Z - e3) ** 2 - e4 * e1 * e1
    bracket = MultiPoly.zero(FOURAR_VARIABLES)
    for power, terms in _FOURAR_BRACKET.items():
        bracket = bracket + _combination(terms, FOURAR_VARIABLES) * Z ** power
    return Z ** 3 * quadrilateral * quadrilateral + e5 * bracket


def printed_circumradius() -> MultiPoly:
    """Degree-7 polynomial in R2 = R^2."""
    T = MultiPoly.variable("R2", CIRCUMRADIUS_VARIABLES)
    e5 = MultiPoly.variable("e5", CIRCUMRADIUS_VARIABLES)
    squared = MultiPoly.zero(CIRCUMRADIUS_VARIABLES)
    for power, terms in _CIRCUMRADIUS_SQUARED.items():
        squared = squared + _combination(terms, CIRCUMRADIUS_VARIABLES) * T ** power
    w = MultiPoly.zero(CIRCUMRADIUS_VARIABLES)
    for power, (scalar, terms) in _CIRCUMRADIUS_W.items():
        line = _combination(terms, CIRCUMRADIUS_VARIABLES) * scalar * T ** power
        if power == 1:
            line = line * e5
        w = w + line
    return T ** 3 * squared * squared + e5 * w


def printed_area_rational() -> Tuple[MultiPoly, MultiPoly]:
    """
    Numerator and denominator of the rational area formula as displayed,
    with v = c1'^2 - c2' and u = c1'^2 - 2 c2'
    """
    c1, c2, C1, C2, C3, C4, C5, C6, C7 = MultiPoly.gens(AREA_RATIONAL_VARIABLES)
    v = c1 * c1 - c2
    u = c1 * c1 - c2 * 2
    numerator = c2 * (
        (v ** 5 - v ** 4 * c2 * 4 + v ** 3 * c2 ** 2 * 2 + v ** 2 * c2 ** 3 * 5
         - v * c2 ** 4 * 2 - c2 ** 5) * C1
        + v * (v ** 3 - v ** 2 * c2 * 3 + c2 ** 3 * 3) * C2
        + (v ** 3 - v ** 2 * c2 * 2 - v * c2 ** 2 + c2 ** 3) * C3
        + (v ** 2 - v * c2 - c2 ** 2) * C4
        + v * C5
        + v ** 6 - v ** 5 * c2 * 5 + v ** 4 * c2 ** 2 * 5 + v ** 3 * c2 ** 3 * 6
        - v ** 2 * c2 ** 4 * 7 - v * c2 ** 5 * 2 + c2 ** 6
        + C6
    ) - C7
    u2 = u * u
    c22 = c2 * c2
    denominator = c1 * (
        u * (u2 - c22) * (u2 - c22 * 3) * C1
        + ((u2 - c22) ** 2 - u2 * c22) * C2
        + u * (u2 - c22 * 2) * C3
        + (u2 - c22) * C4
        + u * C5
        + C6
        + u2 * (u2 - c22 * 2) ** 2 - c22 * (u2 - c22) ** 2
    )
    return numerator, denominator


def quadrilateral_fourAR() -> MultiPoly:
    """(Z - e3)^2 - e1^2 e4, the e5 = 0 limit of the 4AR polynomial."""
    e1, _, e3, e4, _, Z = MultiPoly.gens(FOURAR_VARIABLES)
    return (Z - e3) ** 2 - e1 * e1 * e4


def brahmagupta_factor() -> MultiPoly:
    """(Y - 4 e2 + e1^2)^2 - 64 e4, Brahmagupta's formula for Y = (4A)^2."""
    e1, e2, _, e4, _, Y = MultiPoly.gens(ROBBINS_VARIABLES)
    w = Y - e2 * 4 + e1 * e1
    return w * w - e4 * 64
