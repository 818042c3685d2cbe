"""
Exception hierarchy for cyclogon
All domain failures derive from CyclogonError, itself a ValueError
"""
from typing import Optional, Sequence


class CyclogonError(ValueError):
    """Base class for every domain error raised by the library"""


# Geometry kernel

class ComplexRoots(CyclogonError):
    """Gauss quadratic has a negative discriminant beyond tolerance"""

    def __init__(self, discriminant: float):
        super().__init__(f"Gauss quadratic has complex roots (discriminant {discriminant:.6g})")
        self.discriminant = discriminant


class DegenerateTriangle(CyclogonError):
    """A triangle needed for a circumradius has zero area"""


class SingularLambda(CyclogonError):
    """Leading coefficient of the hexagon area quadratic vanishes (lambda = 1)"""


# Affine regularity

class SingularMap(CyclogonError):
    """Affine map with a (numerically) zero determinant"""


class NonConvex(CyclogonError):
    """Vertex triangle areas have mixed orientation signs"""


class DegenerateInput(CyclogonError):
    """Repeated or all-collinear points"""


# Cyclic polygons

class NotATriangle(CyclogonError):
    """Side lengths violate the triangle inequality"""


class NoCyclicQuad(CyclogonError):
    """No cyclic quadrilateral exists with the given sides"""


class NoConvexCyclicPolygon(CyclogonError):
    """No convex cyclic polygon exists with the given sides"""


class ZeroDenominator(CyclogonError):
    """Rational area formula evaluated at a (numerically) zero denominator"""

    def __init__(self, numerator: float, denominator: float):
        super().__init__(f"Denominator {denominator:.6g} vanishes against numerator {numerator:.6g}")
        self.numerator = numerator
        self.denominator = denominator


class FormMismatch(CyclogonError):
    """Two closed forms of the same quantity disagree"""


# Symmetric functions

class PartTooLarge(CyclogonError):
    """Partition part exceeds the number of variables"""


class NotSymmetric(CyclogonError):
    """Polynomial is not symmetric in the requested variables"""


# Elimination engine

class NotDivisible(CyclogonError):
    """Exact polynomial division left a remainder"""


class ZeroPolynomial(CyclogonError):
    """Operation is undefined for the zero polynomial"""


class DerivationError(CyclogonError):
    """Base class for failures of a symbolic derivation"""

    def __init__(self, message: str, diff: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.diff = list(diff or [])


class PrintedFormMismatch(DerivationError):
    """Derived polynomial differs from the expanded printed form"""


class DegreeMismatch(DerivationError):
    """Cleaned polynomial does not have the expected degree"""


class ExtraneousFactorUnremovable(DerivationError):
    """No factor removal makes the polynomial vanish on the oracle samples"""
