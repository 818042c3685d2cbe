"""
Seeded random configurations for identity fuzzing and tests
Every generator is keyed by (seed, index) so trials can run in any order
"""
import argparse
import json
import math
import os
import sys
from typing import List, Optional

import numpy as np

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cyclogon.models import AffineMap, Point, PolygonPath, SideLengths5


class ConfigurationGenerator:
    """Random point sets, convex and cyclic polygons"""

    def __init__(self, seed: int = 42, index: Optional[int] = None):
        """
        Args:
            seed: base seed
            index: trial index; (seed, index) gives an independent stream
        """
        self.seed = seed
        self.index = index
        entropy = [seed] if index is None else [seed, index]
        self.rng = np.random.default_rng(entropy)

    def random_points(self, n: int, scale: float = 1.0) -> List[Point]:
        """Uniform in the square [-scale, scale]^2."""
        coords = self.rng.uniform(-scale, scale, size=(n, 2))
        return [Point(float(x), float(y)) for x, y in coords]

    def _sorted_angles(self, n: int, min_gap: float = 0.05) -> np.ndarray:
        """n increasing angles in [0, 2pi) with gaps of at least ``min_gap`` of the mean gap."""
        gaps = self.rng.dirichlet(np.full(n, 2.0))
        gaps = np.maximum(gaps, min_gap / n)
        gaps = gaps / gaps.sum()
        start = self.rng.uniform(0, 2 * math.pi)
        return start + 2 * math.pi * np.concatenate(([0.0], np.cumsum(gaps[:-1])))

    def convex_polygon(self, n: int) -> PolygonPath:
        """Counterclockwise points on a random ellipse."""
        angles = self._sorted_angles(n)
        a, b = self.rng.uniform(0.5, 2.0, size=2)
        tilt = self.rng.uniform(0, math.pi)
        shift = self.rng.uniform(-1, 1, size=2)
        c, s = math.cos(tilt), math.sin(tilt)
        vertices = []
        for angle in angles:
            x, y = a * math.cos(angle), b * math.sin(angle)
            vertices.append(Point(float(c * x - s * y + shift[0]), float(s * x + c * y + shift[1])))
        return PolygonPath(tuple(vertices))

    def concyclic_polygon(self, n: int, radius: Optional[float] = None) -> PolygonPath:
        """Counterclockwise points on a circle about the origin."""
        radius = radius if radius is not None else float(self.rng.uniform(0.5, 2.0))
        return PolygonPath(tuple(
            Point(float(radius * math.cos(t)), float(radius * math.sin(t))) for t in self._sorted_angles(n)
        ))

    def cyclic_sides(self, n: int = 5) -> List[float]:
        """Side lengths of a convex cyclic polygon in path order."""
        path = self.concyclic_polygon(n)
        return [float(path[i].distance(path[i + 1])) for i in range(n)]

    def pentagon_sides(self) -> SideLengths5:
        return SideLengths5(tuple(self.cyclic_sides(5)))

    def affine_map(self, min_det: float = 0.1) -> AffineMap:
        """Random nonsingular affine map."""
        while True:
            linear = self.rng.uniform(-2, 2, size=(2, 2))
            if abs(np.linalg.det(linear)) >= min_det:
                return AffineMap(linear, self.rng.uniform(-1, 1, size=2))

    def perturbed(self, path: PolygonPath, fraction: float = 1e-3) -> PolygonPath:
        """Move one random vertex by ``fraction`` of the diameter."""
        k = int(self.rng.integers(path.n))
        angle = self.rng.uniform(0, 2 * math.pi)
        step = fraction * float(path.diameter())
        vertices = list(path.vertices)
        vertices[k] = vertices[k] + Point(step * math.cos(angle), step * math.sin(angle))
        return PolygonPath(tuple(vertices))


def main() -> None:
    parser = argparse.ArgumentParser(description="Print seeded configurations for reproducing a fuzz case")
    parser.add_argument("kind", choices=["points", "convex", "concyclic", "sides"])
    parser.add_argument("--n", type=int, default=5, help="Number of points or sides")
    parser.add_argument("--seed", type=int, default=42, help="Base seed")
    parser.add_argument("--index", type=int, action="append",
                        help="Trial index (repeatable); defaults to 0")

    args = parser.parse_args()

    for index in args.index or [0]:
        generator = ConfigurationGenerator(args.seed, index)
        if args.kind == "points":
            payload = [p.as_tuple() for p in generator.random_points(args.n)]
        elif args.kind == "convex":
            payload = [p.as_tuple() for p in generator.convex_polygon(args.n).vertices]
        elif args.kind == "concyclic":
            payload = [p.as_tuple() for p in generator.concyclic_polygon(args.n).vertices]
        else:
            payload = generator.cyclic_sides(args.n)
        print(json.dumps({"seed": args.seed, "index": index, args.kind: payload}))


if __name__ == "__main__":
    main()
