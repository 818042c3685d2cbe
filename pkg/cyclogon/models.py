"""
Domain models for cyclogon
Plain dataclasses and enums shared by the service layer
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import enum
import math

import numpy as np


class VerdictKind(enum.Enum):
    """Affine regularity classification"""
    AFFINE_REGULAR = "AffineRegular"
    STAR_AFFINE_REGULAR = "StarAffineRegular"
    NOT_REGULAR = "NotRegular"


class Precision(enum.Enum):
    """Arithmetic used by the fuzzing harness"""
    DOUBLE = "double"
    EXTENDED = "extended"


class OutputFormat(enum.Enum):
    """CLI output encodings"""
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


@dataclass(frozen=True)
class Point:
    """Plane point with finite coordinates"""
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Point coordinates must be finite, got ({self.x}, {self.y})")

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, factor) -> "Point":
        return Point(self.x * factor, self.y * factor)

    def distance(self, other: "Point"):
        dx = self.x - other.x
        dy = self.y - other.y
        return (dx * dx + dy * dy) ** 0.5

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class PolygonPath:
    """Ordered vertex sequence; indices are taken mod n"""
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise ValueError(f"A polygon path needs at least 3 vertices, got {len(self.vertices)}")

    @classmethod
    def from_coords(cls, coords: Sequence[Sequence[float]]) -> "PolygonPath":
        return cls(tuple(Point(c[0], c[1]) for c in coords))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, index: int) -> Point:
        return self.vertices[index % len(self.vertices)]

    def reordered(self, order: Sequence[int]) -> "PolygonPath":
        return PolygonPath(tuple(self[i] for i in order))

    def orientation(self) -> int:
        """Sign of the shoelace sum: +1 counterclockwise, -1 clockwise, 0 flat"""
        total = 0.0
        for i in range(self.n):
            p, q = self[i], self[i + 1]
            total += p.x * q.y - q.x * p.y
        return (total > 0) - (total < 0)

    def diameter(self):
        return max(p.distance(q) for p in self.vertices for q in self.vertices)


@dataclass(frozen=True)
class VertexTriangleAreas:
    """t[i] = oriented area of (i-1, i, i+1)"""
    t: Tuple[float, ...]

    @property
    def c1(self):
        return sum(self.t)

    @property
    def c2(self):
        n = len(self.t)
        return sum(self.t[i] * self.t[(i + 1) % n] for i in range(n))

    def sums(self) -> "CyclicSymmetricSums":
        return CyclicSymmetricSums(c1=self.c1, c2=self.c2)


@dataclass(frozen=True)
class CyclicSymmetricSums:
    """Cyclic symmetric functions of the vertex triangle areas"""
    c1: float
    c2: float


@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + translation"""
    linear: np.ndarray
    translation: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        object.__setattr__(self, "linear", np.asarray(self.linear, dtype=float).reshape(2, 2))
        object.__setattr__(self, "translation", np.asarray(self.translation, dtype=float).reshape(2))

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.linear))

    def apply(self, point: Point) -> Point:
        x, y = self.linear @ np.array([point.x, point.y]) + self.translation
        return Point(float(x), float(y))

    def apply_path(self, path: PolygonPath) -> PolygonPath:
        return PolygonPath(tuple(self.apply(v) for v in path.vertices))


@dataclass
class RegularityVerdict:
    """Outcome of an affine regularity test"""
    kind: VerdictKind
    diagonal_side_ratio: Optional[float] = None
    residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def is_regular(self) -> bool:
        return self.kind is not VerdictKind.NOT_REGULAR

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "ratio": self.diagonal_side_ratio,
            "residuals": dict(sorted(self.residuals.items())),
        }


@dataclass(frozen=True)
class SideLengths5:
    """Cyclic pentagon sides; a[i] is the side opposite vertex i"""
    a: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if len(self.a) != 5:
            raise ValueError(f"Expected 5 side lengths, got {len(self.a)}")
        for value in self.a:
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"Side lengths must be finite and nonnegative, got {value}")

    def __getitem__(self, index: int) -> float:
        return self.a[index % 5]

    @property
    def squares(self) -> Tuple[float, ...]:
        return tuple(x * x for x in self.a)

    @property
    def is_degenerate(self) -> bool:
        return any(x == 0 for x in self.a)

    def rotated(self, shift: int) -> "SideLengths5":
        """Relabel so that index 0 refers to the old index ``shift``"""
        return SideLengths5(tuple(self[i + shift] for i in range(5)))

    def scaled(self, factor: float) -> "SideLengths5":
        return SideLengths5(tuple(x * factor for x in self.a))


@dataclass(frozen=True)
class DerivedParams:
    """Invariants p, P, q, Q, S of a side assignment"""
    p: float
    P: float
    q: float
    Q: float
    S: float

    def as_dict(self) -> Dict[str, float]:
        return {"p": self.p, "q": self.q, "P": self.P, "Q": self.Q, "S": self.S}


@dataclass(frozen=True)
class ElemSym:
    """Elementary symmetric functions of the squared sides"""
    e1: float
    e2: float
    e3: float
    e4: float
    e5: float

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.e1, self.e2, self.e3, self.e4, self.e5)

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(("e1", "e2", "e3", "e4", "e5"), self.as_tuple()))


@dataclass
class CyclicPentagonSolution:
    """Numeric oracle output for a cyclic pentagon"""
    R: float
    A: float
    d: Tuple[float, ...]
    theta: Tuple[float, ...]
    center_inside: bool
    vertices: Optional[PolygonPath] = None

    def to_json_dict(self) -> dict:
        return {
            "R": self.R,
            "A": self.A,
            "d": list(self.d),
            "theta": list(self.theta),
            "center_inside": self.center_inside,
        }


@dataclass(frozen=True)
class QuadMetrics:
    """Diagonals, area, circumradius and semiperimeter of a cyclic quadrilateral"""
    e: float
    f: float
    g: float
    A: float
    R: float
    s: float


@dataclass(frozen=True)
class ResidualReport:
    """A polynomial or identity residual together with its scale"""
    name: str
    value: float
    scale: float

    @property
    def relative(self) -> float:
        if self.scale == 0:
            return abs(self.value)
        return abs(self.value) / self.scale

    def to_json_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "scale": self.scale, "relative": self.relative}


@dataclass(frozen=True)
class RootEntry:
    """Real root of a univariate polynomial"""
    root: float
    multiplicity: int
    flagged: bool = False


@dataclass(frozen=True)
class RunConfig:
    """Options shared by the CLI subcommands"""
    seed: int = 42
    trials: int = 1000
    tolerance: Optional[float] = None
    precision: Precision = Precision.DOUBLE
    output: OutputFormat = OutputFormat.JSON

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass
class CheckReport:
    """Result of fuzzing one identity"""
    identity: str
    trials: int
    seed: int
    tolerance: float
    max_relative_residual: float
    failures: int
    failing_cases: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "max_relative_residual": self.max_relative_residual,
            "failures": self.failures,
            "failing_cases": list(self.failing_cases),
        }
