"""
Symmetric function service
Elementary symmetric functions, partition-indexed products and
conversion of symmetric polynomials into the elementary basis
"""
from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from cyclogon.errors import NotSymmetric, PartTooLarge
from backend.polynomial import Coefficient, Exponent, MultiPoly

logger = logging.getLogger(__name__)

X_VARIABLES = ("x0", "x1", "x2", "x3", "x4")
E_VARIABLES = ("e1", "e2", "e3", "e4", "e5")
PARAM_VARIABLES = ("p", "q", "P", "Q", "S")

# u = p^2 and U = P^2; lex priority U > S > Q > u > q makes the leading
# monomials of e1..e5 equal to Q, S, U, U*q, u*U
BRIDGE_VARIABLES = ("q", "u", "Q", "S", "U")
BRIDGE_PRIORITY = ("U", "S", "Q", "u", "q")


@dataclass(frozen=True, order=True)
class Partition:
    """Integer partition kept in weakly decreasing order"""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError(f"Partition parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_multiplicities(cls, multiplicities: Sequence[int]) -> "Partition":
        """(m_1, m_2, ...) -> partition with m_k parts equal to k"""
        parts: List[int] = []
        for size, count in enumerate(multiplicities, start=1):
            parts.extend([size] * count)
        return cls(tuple(parts))

    @classmethod
    def from_notation(cls, text: str) -> "Partition":
        """
        Parse exponent notation such as ``52^21^4`` (parts 5, 2, 2, 1, 1, 1, 1)

        A part is one digit or ``{digits}``; an exponent follows ``^`` as one
        digit or ``{digits}``.
        """
        text = text.strip()
        parts: List[int] = []
        i = 0

        def read_number(start: int) -> Tuple[int, int]:
            if text[start] == "{":
                end = text.index("}", start)
                return int(text[start + 1:end]), end + 1
            if not text[start].isdigit():
                raise ValueError(f"Unexpected {text[start]!r} in partition notation {text!r}")
            return int(text[start]), start + 1

        while i < len(text):
            part, i = read_number(i)
            count = 1
            if i < len(text) and text[i] == "^":
                count, i = read_number(i + 1)
            parts.extend([part] * count)
        return cls(tuple(parts))

    @property
    def notation(self) -> str:
        pieces = []
        for part, group in itertools.groupby(self.parts):
            count = len(list(group))
            body = str(part) if part < 10 else f"{{{part}}}"
            if count > 1:
                body += f"^{count}" if count < 10 else f"^{{{count}}}"
            pieces.append(body)
        return "".join(pieces)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def multiplicities(self, size: int = 5) -> Tuple[int, ...]:
        """(m_1, ..., m_size); the exponent vector of e_lambda over e1..e_size"""
        if self.parts and self.parts[0] > size:
            raise PartTooLarge(f"Partition {self.notation} has a part larger than {size}")
        return tuple(self.parts.count(k) for k in range(1, size + 1))

    def __str__(self) -> str:
        return self.notation or "()"


def partitions_of_weight(weight: int, max_part: int = 5) -> List[Partition]:
    """All partitions of ``weight`` with parts at most ``max_part``, in decreasing lex order."""
    out: List[Partition] = []

    def extend(remaining: int, cap: int, prefix: Tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            extend(remaining - part, part, prefix + (part,))

    extend(weight, max_part, ())
    return out


def elem_values(x: Sequence) -> Tuple:
    """
    Elementary symmetric functions of ``x``

    Coefficients of prod(t + x_i); exact for ints and Fractions, and works
    with floats or mpmath numbers unchanged.
    """
    e = [1] + [0] * len(x)
    for value in x:
        for k in range(len(x), 0, -1):
            e[k] = e[k] + e[k - 1] * value
    return tuple(e[1:])


def e_lambda(partition: Partition, e: Sequence) -> object:
    """Product e_{lambda_1} e_{lambda_2} ... for e = (e1, ..., e5)."""
    if partition.parts and partition.parts[0] > len(e):
        raise PartTooLarge(f"Part {partition.parts[0]} exceeds the {len(e)} available functions")
    return prod((e[part - 1] for part in partition.parts), start=1)


def elementary_polynomials(variables: Sequence[str] = X_VARIABLES) -> List[MultiPoly]:
    """e_1..e_n as polynomials in ``variables``."""
    variables = tuple(variables)
    n = len(variables)
    polys = []
    for k in range(1, n + 1):
        terms = {}
        for subset in itertools.combinations(range(n), k):
            exponent = tuple(1 if i in subset else 0 for i in range(n))
            terms[exponent] = 1
        polys.append(MultiPoly(terms, variables))
    return polys


def _distinct_permutations(exponent: Sequence[int]) -> List[Tuple[int, ...]]:
    return sorted(set(itertools.permutations(exponent)))


def monomial_symmetric(partition: Partition, variables: Sequence[str] = X_VARIABLES) -> MultiPoly:
    """m_lambda: sum of the distinct monomials whose exponent multiset is lambda."""
    variables = tuple(variables)
    if partition.length > len(variables):
        return MultiPoly.zero(variables)
    padded = partition.parts + (0,) * (len(variables) - partition.length)
    return MultiPoly({e: 1 for e in _distinct_permutations(padded)}, variables)


def _invert(matrix: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    size = len(matrix)
    work = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(matrix)]
    for column in range(size):
        pivot = next((r for r in range(column, size) if work[r][column]), None)
        if pivot is None:
            return None
        work[column], work[pivot] = work[pivot], work[column]
        scale = work[column][column]
        work[column] = [v / scale for v in work[column]]
        for r in range(size):
            if r != column and work[r][column]:
                factor = work[r][column]
                work[r] = [a - factor * b for a, b in zip(work[r], work[column])]
    return [row[size:] for row in work]


class ElementaryReducer:
    """
    Leading-term elimination against products of generators

    The generators must have distinct, coefficient-1 leading monomials (in the
    lex order given by ``priority``) whose products are injective; every
    polynomial in the subalgebra they generate is then rewritten uniquely.
    """

    def __init__(self, generators: Sequence[MultiPoly], priority: Sequence[str]):
        self.variables = generators[0].variables
        self._generators = [g.extend(self.variables) for g in generators]
        self._order = [self.variables.index(v) for v in priority]
        self._leads: List[Exponent] = []
        for generator in self._generators:
            lead = max(generator.terms, key=self._key)
            if generator.terms[lead] != 1:
                raise ValueError("Generator leading coefficients must be 1")
            self._leads.append(lead)
        self._rows, self._inverse = self._decoder()
        self._cache: Dict[Tuple[int, ...], MultiPoly] = {
            (0,) * len(self._generators): MultiPoly.constant(1, self.variables),
        }

    def _key(self, exponent: Exponent) -> Tuple[int, ...]:
        return tuple(exponent[i] for i in self._order)

    def _decoder(self):
        count = len(self._leads)
        for rows in itertools.combinations(range(len(self.variables)), count):
            square = [[Fraction(self._leads[k][r]) for k in range(count)] for r in rows]
            inverse = _invert(square)
            if inverse is not None:
                return rows, inverse
        raise ValueError("Generator leading monomials are linearly dependent")

    def decode(self, exponent: Exponent) -> Optional[Tuple[int, ...]]:
        """Generator exponents whose product has this leading monomial, if any."""
        target = [exponent[r] for r in self._rows]
        powers = []
        for row in self._inverse:
            value = sum(a * b for a, b in zip(row, target))
            if value.denominator != 1 or value < 0:
                return None
            powers.append(int(value))
        rebuilt = tuple(sum(k * lead[i] for k, lead in zip(powers, self._leads))
                        for i in range(len(self.variables)))
        return tuple(powers) if rebuilt == tuple(exponent) else None

    def power_product(self, powers: Tuple[int, ...]) -> MultiPoly:
        """Expansion of prod g_k^powers[k], memoized."""
        cached = self._cache.get(powers)
        if cached is not None:
            return cached
        k = next(i for i, v in enumerate(powers) if v)
        smaller = powers[:k] + (powers[k] - 1,) + powers[k + 1:]
        value = self.power_product(smaller) * self._generators[k]
        self._cache[powers] = value
        return value

    def reduce(self, poly: MultiPoly) -> Dict[Tuple[int, ...], Coefficient]:
        """
        Rewrite ``poly`` as a combination of generator products

        Returns:
            {generator exponent vector: coefficient}

        Raises:
            NotSymmetric: if a leading monomial is not reachable
        """
        remainder = dict(poly.extend(self.variables).terms)
        result: Dict[Tuple[int, ...], Coefficient] = {}
        while remainder:
            lead = max(remainder, key=self._key)
            coefficient = remainder[lead]
            powers = self.decode(lead)
            if powers is None:
                monomial = "*".join(f"{v}^{k}" for v, k in zip(self.variables, lead) if k)
                raise NotSymmetric(f"Leading monomial {monomial or '1'} is not a product of generator leads")
            result[powers] = result.get(powers, 0) + coefficient
            for exponent, c in self.power_product(powers).terms.items():
                value = remainder.get(exponent, 0) - coefficient * c
                if value:
                    remainder[exponent] = value
                else:
                    remainder.pop(exponent, None)
        return {k: v for k, v in result.items() if v}


class SymBasis(enum.Enum):
    """Basis a SymPoly is written in"""
    MONOMIAL = "monomial"
    ELEMENTARY = "elementary"


@dataclass
class SymPoly:
    """Symmetric polynomial in x0..x4 as a combination of m_lambda or e_lambda"""
    basis: SymBasis
    terms: Dict[Partition, Coefficient] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: v for k, v in self.terms.items() if v}
        if self.basis is SymBasis.ELEMENTARY:
            for partition in self.terms:
                partition.multiplicities(len(X_VARIABLES))

    @classmethod
    def from_notation(cls, basis: SymBasis, terms: Mapping[str, Coefficient]) -> "SymPoly":
        return cls(basis, {Partition.from_notation(k): v for k, v in terms.items()})

    @classmethod
    def from_multipoly(cls, poly: MultiPoly) -> "SymPoly":
        """Monomial-basis form of a symmetric polynomial in x0..x4."""
        _check_symmetric(poly)
        terms: Dict[Partition, Coefficient] = {}
        for exponent, coefficient in poly.extend(X_VARIABLES).terms.items():
            if list(exponent) == sorted(exponent, reverse=True):
                terms[Partition(tuple(k for k in exponent if k))] = coefficient
        return cls(SymBasis.MONOMIAL, terms)

    def expand(self, variables: Sequence[str] = X_VARIABLES) -> MultiPoly:
        variables = tuple(variables)
        result = MultiPoly.zero(variables)
        if self.basis is SymBasis.MONOMIAL:
            for partition, coefficient in self.terms.items():
                result = result + monomial_symmetric(partition, variables) * coefficient
            return result
        elementary = elementary_polynomials(variables)
        for partition, coefficient in self.terms.items():
            term = MultiPoly.constant(coefficient, variables)
            for part in partition.parts:
                term = term * elementary[part - 1]
            result = result + term
        return result

    def to_e_multipoly(self) -> MultiPoly:
        """Elementary-basis form as a polynomial in e1..e5."""
        if self.basis is not SymBasis.ELEMENTARY:
            raise ValueError("Only elementary-basis SymPolys map to e-variables")
        return MultiPoly({p.multiplicities(): c for p, c in self.terms.items()}, E_VARIABLES)

    def evaluate(self, x: Sequence):
        if self.basis is SymBasis.ELEMENTARY:
            e = elem_values(x)
            return sum((c * e_lambda(p, e) for p, c in self.terms.items()), 0)
        return self.expand().evaluate(dict(zip(X_VARIABLES, x)))

    def is_symmetric(self, seed: int = 0, trials: int = 5) -> bool:
        """Random rational point evaluated against random permutations of itself."""
        rng = np.random.default_rng(seed)
        expanded = self.expand()
        for _ in range(trials):
            numerators = rng.integers(-50, 51, len(X_VARIABLES))
            denominators = rng.integers(1, 21, len(X_VARIABLES))
            point = [Fraction(int(n), int(d)) for n, d in zip(numerators, denominators)]
            shuffled = [point[int(i)] for i in rng.permutation(len(point))]
            if expanded.evaluate(dict(zip(X_VARIABLES, point))) != expanded.evaluate(dict(zip(X_VARIABLES, shuffled))):
                return False
        return True

    def __str__(self) -> str:
        symbol = "e" if self.basis is SymBasis.ELEMENTARY else "m"
        pieces = []
        for partition, coefficient in sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True):
            sign = "-" if coefficient < 0 else "+"
            pieces.append(f"{sign} {abs(coefficient)}*{symbol}_{{{partition.notation}}}")
        text = " ".join(pieces) or "0"
        return text[2:] if text.startswith("+ ") else text


def _check_symmetric(poly: MultiPoly) -> None:
    poly = poly.extend(X_VARIABLES)
    groups: Dict[Tuple[int, ...], int] = {}
    for exponent, coefficient in poly.terms.items():
        canonical = tuple(sorted(exponent, reverse=True))
        if poly.terms.get(canonical) != coefficient:
            raise NotSymmetric(f"Coefficient of exponent {exponent} differs from its sorted permutation")
        groups[canonical] = groups.get(canonical, 0) + 1
    for canonical, count in groups.items():
        expected = factorial(len(canonical)) // prod(
            factorial(len(list(g))) for _, g in itertools.groupby(canonical)
        )
        if count != expected:
            raise NotSymmetric(f"Exponent class {canonical} has {count} of {expected} permutations")


_X_REDUCER: Optional[ElementaryReducer] = None
_BRIDGE_REDUCER: Optional[ElementaryReducer] = None


def _x_reducer() -> ElementaryReducer:
    global _X_REDUCER
    if _X_REDUCER is None:
        _X_REDUCER = ElementaryReducer(elementary_polynomials(X_VARIABLES), X_VARIABLES)
    return _X_REDUCER


def bridge_generators() -> List[MultiPoly]:
    """e1..e5 written in q, u = p^2, Q, S, U = P^2."""
    q, u, Q, S, U = MultiPoly.gens(BRIDGE_VARIABLES)
    return [q + Q, S + u + q * Q, q * S + u * Q + U, u * S + U * q, u * U]


def _bridge_reducer() -> ElementaryReducer:
    global _BRIDGE_REDUCER
    if _BRIDGE_REDUCER is None:
        _BRIDGE_REDUCER = ElementaryReducer(bridge_generators(), BRIDGE_PRIORITY)
    return _BRIDGE_REDUCER


class SymmetricFunctionService:
    """Conversions into the elementary basis"""

    @staticmethod
    def to_elementary(poly: Union[SymPoly, MultiPoly]) -> SymPoly:
        """
        Express a symmetric polynomial in x0..x4 in the elementary basis

        Args:
            poly: SymPoly (any basis) or MultiPoly over x0..x4

        Returns:
            SymPoly in the elementary basis with exact coefficients

        Raises:
            NotSymmetric: if the input is not symmetric
        """
        if isinstance(poly, SymPoly):
            if poly.basis is SymBasis.ELEMENTARY:
                return poly
            poly = poly.expand()
        _check_symmetric(poly)
        reduced = _x_reducer().reduce(poly.extend(X_VARIABLES))
        return SymPoly(SymBasis.ELEMENTARY,
                       {Partition.from_multiplicities(k): v for k, v in reduced.items()})

    @staticmethod
    def params_to_elementary(poly: MultiPoly, keep: Optional[str] = None) -> MultiPoly:
        """
        Rewrite a polynomial in p, q, P, Q, S (and optionally one extra
        variable ``keep``) in e1..e5 through the side-length relations
        q+Q=e1, S+p^2+qQ=e2, qS+p^2Q+P^2=e3, p^2S+P^2q=e4, (pP)^2=e5

        Raises:
            NotSymmetric: if p or P occur to odd powers, or the polynomial
                is not symmetric in the squared sides
        """
        extra = (keep,) if keep else ()
        unknown = set(poly.used_variables()) - set(PARAM_VARIABLES) - set(extra)
        if unknown:
            raise ValueError(f"Unexpected variables {sorted(unknown)}")
        poly = poly.extend(PARAM_VARIABLES + extra)
        pieces = poly.coefficients_in(keep) if keep else {0: poly}
        reducer = _bridge_reducer()
        variables = E_VARIABLES + extra
        terms: Dict[Exponent, Coefficient] = {}
        for power, coefficient in pieces.items():
            bridged: Dict[Exponent, Coefficient] = {}
            for (p, q, P, Q, S, *_), c in coefficient.terms.items():
                if p % 2 or P % 2:
                    raise NotSymmetric("Odd power of p or P has no expression in squared sides")
                bridged[(q, p // 2, Q, S, P // 2)] = c
            for powers, c in reducer.reduce(MultiPoly._raw(bridged, BRIDGE_VARIABLES)).items():
                terms[powers + ((power,) if keep else ())] = c
        return MultiPoly(terms, variables)

    @staticmethod
    def elementary_from_sides(squares: Sequence) -> Dict[str, object]:
        """{e1..e5} values for given squared sides."""
        return dict(zip(E_VARIABLES, elem_values(squares)))
