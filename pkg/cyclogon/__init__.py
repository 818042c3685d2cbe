"""cyclogon base package: models, errors and settings"""
from .models import (
    Point, PolygonPath, VertexTriangleAreas, CyclicSymmetricSums, AffineMap,
    RegularityVerdict, VerdictKind, SideLengths5, DerivedParams, ElemSym,
    CyclicPentagonSolution, QuadMetrics, ResidualReport, RootEntry, RunConfig,
    CheckReport, Precision, OutputFormat,
)
from .errors import (
    CyclogonError, ComplexRoots, DegenerateTriangle, SingularLambda, SingularMap,
    NonConvex, DegenerateInput, NotATriangle, NoCyclicQuad, NoConvexCyclicPolygon,
    ZeroDenominator, FormMismatch, PartTooLarge, NotSymmetric, NotDivisible,
    ZeroPolynomial, DerivationError, PrintedFormMismatch, DegreeMismatch,
    ExtraneousFactorUnremovable,
)
from .settings import Settings, get_settings, set_settings

__all__ = [
    'Point', 'PolygonPath', 'VertexTriangleAreas', 'CyclicSymmetricSums', 'AffineMap',
    'RegularityVerdict', 'VerdictKind', 'SideLengths5', 'DerivedParams', 'ElemSym',
    'CyclicPentagonSolution', 'QuadMetrics', 'ResidualReport', 'RootEntry', 'RunConfig',
    'CheckReport', 'Precision', 'OutputFormat',
    'CyclogonError', 'ComplexRoots', 'DegenerateTriangle', 'SingularLambda', 'SingularMap',
    'NonConvex', 'DegenerateInput', 'NotATriangle', 'NoCyclicQuad', 'NoConvexCyclicPolygon',
    'ZeroDenominator', 'FormMismatch', 'PartTooLarge', 'NotSymmetric', 'NotDivisible',
    'ZeroPolynomial', 'DerivationError', 'PrintedFormMismatch', 'DegreeMismatch',
    'ExtraneousFactorUnremovable',
    'Settings', 'get_settings', 'set_settings',
]
