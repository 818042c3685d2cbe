"""
Sparse multivariate polynomials with exact integer (or rational) coefficients
Provides the arithmetic and resultant elimination the derivations run on
"""
from __future__ import annotations

import logging
import math
import operator
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import mpmath

from cyclogon.errors import NotDivisible, ZeroPolynomial

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]

_SCALARS = (int, Fraction)


def grevlex_key(exponent: Exponent):
    """Sort key for graded reverse-lexicographic order (larger key = larger monomial)."""
    return (sum(exponent), tuple(-k for k in reversed(exponent)))


def _normalize(value: Coefficient) -> Coefficient:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _divide_coefficient(a: Coefficient, b: Coefficient) -> Coefficient:
    if isinstance(a, int) and isinstance(b, int):
        quotient, remainder = divmod(a, b)
        if remainder:
            raise NotDivisible(f"{a} is not divisible by {b}")
        return quotient
    return _normalize(Fraction(a) / b)


class MultiPoly:
    """
    Sparse polynomial over a declared variable alphabet

    Terms map exponent tuples (aligned with ``variables``) to nonzero
    coefficients. Instances are treated as immutable.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, terms: Optional[Mapping[Sequence[int], Coefficient]] = None,
                 variables: Sequence[str] = ()):
        self.variables = tuple(variables)
        width = len(self.variables)
        clean: Dict[Exponent, Coefficient] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(k) for k in exponent)
            if len(exponent) != width:
                raise ValueError(f"Exponent {exponent} does not match variables {self.variables}")
            if any(k < 0 for k in exponent):
                raise ValueError(f"Negative exponent in {exponent}")
            if coefficient:
                clean[exponent] = clean.get(exponent, 0) + _normalize(coefficient)
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Coefficient], variables: Tuple[str, ...]) -> "MultiPoly":
        poly = object.__new__(cls)
        poly.variables = variables
        poly.terms = terms
        return poly

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls._raw({}, tuple(variables))

    @classmethod
    def constant(cls, value: Coefficient, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if not value:
            return cls._raw({}, variables)
        return cls._raw({(0,) * len(variables): _normalize(value)}, variables)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        exponent = tuple(1 if v == name else 0 for v in variables)
        if sum(exponent) != 1:
            raise ValueError(f"Variable {name!r} not in alphabet {variables}")
        return cls._raw({exponent: 1}, variables)

    @classmethod
    def gens(cls, variables: Sequence[str]) -> Tuple["MultiPoly", ...]:
        """All variables of an alphabet as polynomials, in alphabet order."""
        return tuple(cls.variable(name, variables) for name in variables)

    @classmethod
    def from_coefficients(cls, var: str, coefficients: Mapping[int, "MultiPoly"],
                          variables: Sequence[str]) -> "MultiPoly":
        """Inverse of :meth:`coefficients_in`."""
        variables = tuple(variables)
        index = variables.index(var)
        terms: Dict[Exponent, Coefficient] = {}
        for power, coefficient in coefficients.items():
            coefficient = coefficient.extend(variables)
            for exponent, c in coefficient.terms.items():
                shifted = exponent[:index] + (exponent[index] + power,) + exponent[index + 1:]
                terms[shifted] = terms.get(shifted, 0) + c
        return cls._raw({e: c for e, c in terms.items() if c}, variables)

    @classmethod
    def from_univariate(cls, coefficients: Sequence[Coefficient], var: str,
                        variables: Optional[Sequence[str]] = None) -> "MultiPoly":
        """Build from a low-to-high coefficient list."""
        variables = tuple(variables or (var,))
        return cls.from_coefficients(
            var,
            {k: cls.constant(c, variables) for k, c in enumerate(coefficients) if c},
            variables,
        )

    # ------------------------------------------------------------------
    # alphabet handling
    # ------------------------------------------------------------------

    def extend(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over another alphabet containing every variable in use."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        positions = []
        for i, name in enumerate(self.variables):
            if name in variables:
                positions.append((i, variables.index(name)))
            elif any(exponent[i] for exponent in self.terms):
                raise ValueError(f"Variable {name!r} in use but missing from {variables}")
        width = len(variables)
        terms = {}
        for exponent, coefficient in self.terms.items():
            target = [0] * width
            for source, dest in positions:
                target[dest] = exponent[source]
            terms[tuple(target)] = coefficient
        return MultiPoly._raw(terms, variables)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return MultiPoly._raw(dict(self.terms), tuple(mapping.get(v, v) for v in self.variables))

    def used_variables(self) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def compact(self) -> "MultiPoly":
        """Drop variables that do not occur."""
        return self.extend(self.used_variables())

    def _aligned(self, other: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        if other.variables == self.variables:
            return self, other
        union = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.extend(union), other.extend(union)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            if not other:
                return self
            other = MultiPoly.constant(other, self.variables)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for exponent, coefficient in b.terms.items():
            total = terms.get(exponent, 0) + coefficient
            if total:
                terms[exponent] = total
            else:
                terms.pop(exponent, None)
        return MultiPoly._raw(terms, a.variables)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            return self + (-other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if not other:
                return MultiPoly.zero(self.variables)
            return MultiPoly._raw({e: _normalize(c * other) for e, c in self.terms.items()}, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        add = operator.add
        out: Dict[Exponent, Coefficient] = {}
        get = out.get
        for e2, c2 in b.terms.items():
            for e1, c1 in a.terms.items():
                exponent = tuple(map(add, e1, e2))
                out[exponent] = get(exponent, 0) + c1 * c2
        return MultiPoly._raw({e: c for e, c in out.items() if c}, a.variables)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "MultiPoly":
        if not isinstance(power, int) or power < 0:
            raise ValueError(f"Power must be a nonnegative integer, got {power!r}")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, _SCALARS):
            other = MultiPoly.constant(other, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        return hash(frozenset(
            (tuple((v, k) for v, k in zip(self.variables, e) if k), c)
            for e, c in self.terms.items()
        ))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    @property
    def constant_value(self) -> Coefficient:
        return self.terms.get((0,) * len(self.variables), 0)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        if not self.terms:
            return -1
        if var not in self.variables:
            return 0
        index = self.variables.index(var)
        return max(e[index] for e in self.terms)

    def coefficients_in(self, var: str) -> Dict[int, "MultiPoly"]:
        """Split into {power of var: coefficient}, coefficients free of var."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        index = self.variables.index(var)
        grouped: Dict[int, Dict[Exponent, Coefficient]] = {}
        for exponent, coefficient in self.terms.items():
            power = exponent[index]
            stripped = exponent[:index] + (0,) + exponent[index + 1:]
            grouped.setdefault(power, {})[stripped] = coefficient
        return {k: MultiPoly._raw(t, self.variables) for k, t in grouped.items()}

    def leading_coefficient(self, var: str) -> "MultiPoly":
        if not self.terms:
            return self
        coefficients = self.coefficients_in(var)
        return coefficients[max(coefficients)]

    def coefficient(self, **powers: int) -> Coefficient:
        exponent = tuple(powers.get(v, 0) for v in self.variables)
        return self.terms.get(exponent, 0)

    def terms_sorted(self) -> List[Tuple[Exponent, Coefficient]]:
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda item: grevlex_key(item[0]), reverse=True)

    def leading_term(self) -> Tuple[Exponent, Coefficient]:
        if not self.terms:
            raise ZeroPolynomial("The zero polynomial has no leading term")
        exponent = max(self.terms, key=grevlex_key)
        return exponent, self.terms[exponent]

    # ------------------------------------------------------------------
    # content and division
    # ------------------------------------------------------------------

    def content(self) -> Coefficient:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        coefficients = list(self.terms.values())
        if all(isinstance(c, int) for c in coefficients):
            return reduce(gcd, (abs(c) for c in coefficients))
        fractions = [Fraction(c) for c in coefficients]
        numerator = reduce(gcd, (abs(c.numerator) for c in fractions))
        denominator = reduce(lambda x, y: x * y // gcd(x, y), (c.denominator for c in fractions))
        return _normalize(Fraction(numerator, denominator))

    def primitive_part(self) -> "MultiPoly":
        content = self.content()
        if not content:
            return self
        return MultiPoly._raw({e: _divide_coefficient(c, content) for e, c in self.terms.items()},
                              self.variables)

    def normalized_sign(self, var: Optional[str] = None) -> Tuple["MultiPoly", int]:
        """
        Flip the sign so the leading coefficient is positive

        With ``var`` the leading coefficient in that variable is used (its own
        grevlex leading term decides); otherwise the grevlex leading term.

        Returns:
            (normalized polynomial, applied sign)
        """
        if not self.terms:
            return self, 1
        reference = self.leading_coefficient(var) if var else self
        _, coefficient = reference.leading_term()
        if coefficient < 0:
            return -self, -1
        return self, 1

    def exact_divide(self, divisor: Union["MultiPoly", Coefficient]) -> "MultiPoly":
        """
        Exact division

        Raises:
            NotDivisible: if a remainder is left
            ZeroPolynomial: on division by zero
        """
        if isinstance(divisor, _SCALARS):
            divisor = MultiPoly.constant(divisor, self.variables)
        if not divisor.terms:
            raise ZeroPolynomial("Division by the zero polynomial")
        a, b = self._aligned(divisor)
        return a._divide(b)

    def _divide(self, divisor: "MultiPoly") -> "MultiPoly":
        if not self.terms:
            return self
        if len(divisor.terms) == 1:
            ((d_exp, d_coef),) = divisor.terms.items()
            terms = {}
            for exponent, coefficient in self.terms.items():
                shifted = tuple(x - y for x, y in zip(exponent, d_exp))
                if min(shifted) < 0:
                    raise NotDivisible("Monomial divisor does not divide every term")
                terms[shifted] = _divide_coefficient(coefficient, d_coef)
            return MultiPoly._raw(terms, self.variables)

        var = next(v for i, v in enumerate(self.variables) if any(e[i] for e in divisor.terms))
        divisor_coeffs = divisor.coefficients_in(var)
        top = max(divisor_coeffs)
        lead = divisor_coeffs[top]
        remainder = self.coefficients_in(var)
        quotient: Dict[int, MultiPoly] = {}
        while remainder and max(remainder) >= top:
            power = max(remainder)
            factor = remainder[power]._divide(lead)
            shift = power - top
            quotient[shift] = factor
            for k, coefficient in divisor_coeffs.items():
                updated = remainder.get(k + shift)
                product = factor * coefficient
                updated = -product if updated is None else updated - product
                if updated.terms:
                    remainder[k + shift] = updated
                else:
                    remainder.pop(k + shift, None)
        if remainder:
            raise NotDivisible(f"Division in {var} leaves a remainder")
        return MultiPoly.from_coefficients(var, quotient, self.variables)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_divide(self)
        except NotDivisible:
            return False
        return True

    def remove_factor(self, factor: "MultiPoly") -> Tuple["MultiPoly", int]:
        """Divide out ``factor`` as often as possible; returns (quotient, multiplicity)."""
        count = 0
        current = self
        while current.terms and not factor.is_constant:
            try:
                current = current.exact_divide(factor)
            except NotDivisible:
                break
            count += 1
        return current, count

    # ------------------------------------------------------------------
    # substitution and evaluation
    # ------------------------------------------------------------------

    def substitute(self, mapping: Mapping[str, Union["MultiPoly", Coefficient]],
                   variables: Optional[Sequence[str]] = None) -> "MultiPoly":
        """
        Replace variables by polynomials or numbers

        Args:
            mapping: variable name -> replacement
            variables: alphabet of the result (default: unchanged variables
                followed by the replacements' variables)
        """
        keep = [v for v in self.variables if v not in mapping]
        if variables is None:
            variables = list(keep)
            for value in mapping.values():
                if isinstance(value, MultiPoly):
                    variables.extend(v for v in value.variables if v not in variables)
        variables = tuple(variables)
        replacements = {}
        for name, value in mapping.items():
            if isinstance(value, MultiPoly):
                replacements[name] = value.extend(variables)
            else:
                replacements[name] = MultiPoly.constant(value, variables)
        power_cache: Dict[Tuple[str, int], MultiPoly] = {}

        def power(name: str, k: int) -> MultiPoly:
            key = (name, k)
            if key not in power_cache:
                power_cache[key] = replacements[name] ** k
            return power_cache[key]

        grouped: Dict[Tuple[int, ...], MultiPoly] = {}
        substituted = [i for i, v in enumerate(self.variables) if v in mapping]
        kept = [(i, variables.index(v)) for i, v in enumerate(self.variables) if v not in mapping]
        result = MultiPoly.zero(variables)
        for exponent, coefficient in self.terms.items():
            target = [0] * len(variables)
            for source, dest in kept:
                target[dest] = exponent[source]
            term = MultiPoly._raw({tuple(target): coefficient}, variables)
            key = tuple(exponent[i] for i in substituted)
            grouped[key] = grouped.get(key, MultiPoly.zero(variables)) + term
        for key, partial in grouped.items():
            factor = partial
            for i, k in zip(substituted, key):
                if k:
                    factor = factor * power(self.variables[i], k)
            result = result + factor
        return result

    def term_values(self, values: Mapping[str, object]) -> List[object]:
        """Numeric value of every term at a point (for compensated summation)."""
        cache: Dict[Tuple[int, int], object] = {}
        out = []
        for exponent, coefficient in self.terms.items():
            value = coefficient if isinstance(coefficient, int) else float(coefficient)
            for i, k in enumerate(exponent):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[self.variables[i]] ** k
                    value = value * cache[key]
            out.append(value)
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Plain evaluation; exact when the values are ints or Fractions."""
        if all(isinstance(values.get(v, 0), _SCALARS) for v in self.used_variables()):
            total: Coefficient = 0
            for exponent, coefficient in self.terms.items():
                term = coefficient
                for name, k in zip(self.variables, exponent):
                    if k:
                        term = term * values[name] ** k
                total += term
            return _normalize(total) if isinstance(total, Fraction) else total
        return sum(self.term_values(values))

    def univariate_coefficients(self, var: str) -> List[Coefficient]:
        """Low-to-high numeric coefficients of a polynomial in ``var`` only."""
        coefficients = self.coefficients_in(var)
        if not coefficients:
            return [0]
        out = [0] * (max(coefficients) + 1)
        for k, c in coefficients.items():
            if not c.is_constant:
                raise ValueError(f"Coefficient of {var}^{k} is not constant")
            out[k] = c.constant_value
        return out

    # ------------------------------------------------------------------
    # text forms
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical form: one term per line, "+c v1^k1 ... vn^kn", grevlex descending."""
        if not self.terms:
            return "0\n"
        lines = []
        for exponent, coefficient in self.terms_sorted():
            sign = "-" if coefficient < 0 else "+"
            powers = " ".join(f"{v}^{k}" for v, k in zip(self.variables, exponent))
            lines.append(f"{sign}{abs(coefficient)} {powers}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, variables: Optional[Sequence[str]] = None) -> "MultiPoly":
        rows = [line.split() for line in text.splitlines() if line.strip() and line.strip() != "0"]
        if variables is None:
            variables = tuple(token.split("^")[0] for token in rows[0][1:]) if rows else ()
        variables = tuple(variables)
        terms: Dict[Exponent, Coefficient] = {}
        for row in rows:
            coefficient = _normalize(Fraction(row[0]))
            exponent = [0] * len(variables)
            for token in row[1:]:
                name, _, power = token.partition("^")
                exponent[variables.index(name)] += int(power or 1)
            terms[tuple(exponent)] = terms.get(tuple(exponent), 0) + coefficient
        return cls(terms, variables)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exponent, coefficient in self.terms_sorted():
            monomial = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(self.variables, exponent) if k
            )
            magnitude = abs(coefficient)
            if monomial:
                body = monomial if magnitude == 1 else f"{magnitude}*{monomial}"
            else:
                body = str(magnitude)
            sign = "-" if coefficient < 0 else "+"
            pieces.append(f"{sign} {body}")
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"MultiPoly({self}, variables={self.variables})"


# ----------------------------------------------------------------------
# elimination
# ----------------------------------------------------------------------

def _exact(a, b):
    if isinstance(a, MultiPoly):
        return a.exact_divide(b)
    return _divide_coefficient(a, b)


def bareiss_determinant(matrix: Sequence[Sequence[object]],
                        divide: Callable[[object, object], object] = _exact):
    """
    Fraction-free determinant (Bareiss) over an exact ring

    Works for int entries and for MultiPoly entries alike; every division
    performed is exact.
    """
    rows = [list(row) for row in matrix]
    size = len(rows)
    if size == 0:
        return 1
    sign = 1
    previous = None
    for k in range(size - 1):
        if not rows[k][k]:
            swap = next((i for i in range(k + 1, size) if rows[i][k]), None)
            if swap is None:
                return rows[0][0] * 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        pivot_row = rows[k]
        for i in range(k + 1, size):
            row = rows[i]
            factor = row[k]
            for j in range(k + 1, size):
                value = row[j] * pivot
                if factor:
                    value = value - factor * pivot_row[j]
                row[j] = value if previous is None else divide(value, previous)
            row[k] = row[k] * 0
        previous = pivot
    determinant = rows[size - 1][size - 1]
    return determinant if sign > 0 else -determinant


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str) -> List[List[MultiPoly]]:
    """Sylvester matrix of f, g in ``var`` (rows of f first)."""
    f_coeffs = _dense(f, var)
    g_coeffs = _dense(g, var)
    m, n = len(f_coeffs) - 1, len(g_coeffs) - 1
    size = m + n
    zero = MultiPoly.zero(f.variables)
    matrix = []
    for r in range(n):
        row = [zero] * size
        for j, coefficient in enumerate(reversed(f_coeffs)):
            row[r + j] = coefficient
        matrix.append(row)
    for r in range(m):
        row = [zero] * size
        for j, coefficient in enumerate(reversed(g_coeffs)):
            row[r + j] = coefficient
        matrix.append(row)
    return matrix


def _dense(poly: MultiPoly, var: str) -> List[MultiPoly]:
    coefficients = poly.coefficients_in(var)
    zero = MultiPoly.zero(poly.variables)
    return [coefficients.get(k, zero) for k in range(max(coefficients) + 1)]


def _trim(coefficients: List[MultiPoly]) -> List[MultiPoly]:
    while coefficients and not coefficients[-1]:
        coefficients.pop()
    return coefficients


def _prem(f: List[MultiPoly], g: List[MultiPoly]) -> List[MultiPoly]:
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g on dense lists."""
    df, dg = len(f) - 1, len(g) - 1
    lead = g[-1]
    remainder = list(f)
    count = df - dg + 1
    while True:
        _trim(remainder)
        dr = len(remainder) - 1
        if dr < dg:
            break
        top = remainder[-1]
        shift = dr - dg
        remainder = [c * lead for c in remainder]
        for j, coefficient in enumerate(g):
            remainder[j + shift] = remainder[j + shift] - top * coefficient
        count -= 1
    if count > 0 and remainder:
        scale = lead ** count
        remainder = [c * scale for c in remainder]
    return _trim(remainder)


def _subresultant(f: List[MultiPoly], g: List[MultiPoly]) -> MultiPoly:
    """Resultant through the subresultant PRS; requires deg f >= deg g >= 1."""
    n, m = len(f) - 1, len(g) - 1
    degree_gap = n - m
    beta = (-1) ** (degree_gap + 1)
    h = [c * beta for c in _prem(f, g)]
    lead = g[-1]
    psi = lead ** degree_gap
    scalars = [psi]
    psi = -psi
    last = g
    while h:
        k = len(h) - 1
        last = h
        f, g, m, degree_gap = g, h, k, m - k
        beta = -lead * psi ** degree_gap
        h = [c.exact_divide(beta) for c in _prem(f, g)]
        lead = g[-1]
        if degree_gap > 1:
            psi = ((-lead) ** degree_gap).exact_divide(psi ** (degree_gap - 1))
        else:
            psi = -lead
        scalars.append(-psi)
    if len(last) - 1 > 0:
        return MultiPoly.zero(lead.variables)
    return scalars[-1]


def resultant(f: MultiPoly, g: MultiPoly, var: str, method: str = "bareiss") -> MultiPoly:
    """
    Resultant of f and g with respect to ``var``

    Args:
        f, g: polynomials over a common alphabet
        var: variable to eliminate
        method: "bareiss" (Sylvester determinant) or "subresultant" (PRS)

    Returns:
        Res_var(f, g) = lc(f)^deg(g) * prod g(roots of f), free of ``var``

    Raises:
        ZeroPolynomial: if either input is zero
    """
    if not f or not g:
        raise ZeroPolynomial("Resultant of the zero polynomial is undefined")
    f, g = f._aligned(g)
    if var not in f.variables:
        f = f.extend(f.variables + (var,))
        g = g.extend(f.variables)
    m, n = f.degree(var), g.degree(var)
    if m == 0 or n == 0:
        return g.leading_coefficient(var) ** m if n == 0 else f.leading_coefficient(var) ** n
    if method == "bareiss":
        return bareiss_determinant(sylvester_matrix(f, g, var))
    if method == "subresultant":
        if m >= n:
            return _subresultant(_dense(f, var), _dense(g, var))
        value = _subresultant(_dense(g, var), _dense(f, var))
        return -value if (m * n) % 2 else value
    raise ValueError(f"Unknown resultant method {method!r}")


def even_odd_norm(f: MultiPoly, var: str, new_var: str) -> MultiPoly:
    """
    Norm of f under var -> -var, written in new_var = var^2

    With f = E(var^2) + var * O(var^2) returns E(Z)^2 - Z * O(Z)^2 (Z = new_var),
    sign-normalized so the leading coefficient in Z is positive. The result
    vanishes at Z = w^2 whenever f vanishes at var = w.
    """
    if not f:
        raise ZeroPolynomial("Norm of the zero polynomial is undefined")
    if new_var != var and new_var in f.used_variables():
        raise ValueError(f"{new_var!r} already occurs in the polynomial")
    if new_var != var and new_var in f.variables:
        f = f.extend(tuple(v for v in f.variables if v != new_var))
    variables = tuple(new_var if v == var else v for v in f.variables)
    if new_var not in variables:
        variables = variables + (new_var,)
    even: Dict[int, MultiPoly] = {}
    odd: Dict[int, MultiPoly] = {}
    for power, coefficient in f.coefficients_in(var).items():
        coefficient = coefficient.rename({var: new_var}).extend(variables)
        if power % 2:
            odd[(power - 1) // 2] = coefficient
        else:
            even[power // 2] = coefficient
    E = MultiPoly.from_coefficients(new_var, even, variables)
    O = MultiPoly.from_coefficients(new_var, odd, variables)
    z = MultiPoly.variable(new_var, variables)
    norm, _ = (E * E - z * O * O).normalized_sign(new_var)
    return norm


def solve_exact(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> List[Fraction]:
    """
    Exact least-rows solution of an overdetermined consistent integer system

    Fraction-free forward elimination with row pivoting, then back
    substitution over the rationals. Rows beyond the rank must reduce to
    zero (consistency); otherwise ValueError.
    """
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    if not rows:
        return []
    width = len(rows[0]) - 1
    pivot_rows: List[List[int]] = []
    previous = 1
    remaining = rows
    for column in range(width):
        index = next((i for i, row in enumerate(remaining) if row[column]), None)
        if index is None:
            raise ValueError(f"System is rank deficient at column {column}")
        pivot = remaining.pop(index)
        pivot_rows.append(pivot)
        p = pivot[column]
        updated = []
        for row in remaining:
            factor = row[column]
            new_row = [0] * (width + 1)
            for j in range(column + 1, width + 1):
                value = row[j] * p - factor * pivot[j]
                new_row[j] = _divide_coefficient(value, previous)
            updated.append(new_row)
        remaining = updated
        previous = p
    for row in remaining:
        if any(row):
            raise ValueError("Inconsistent system: residual rows do not vanish")
    solution: List[Fraction] = [Fraction(0)] * width
    for column in range(width - 1, -1, -1):
        row = pivot_rows[column]
        total = Fraction(row[width])
        for j in range(column + 1, width):
            total -= row[j] * solution[j]
        solution[column] = total / row[column]
    return solution


def balanced_residual(poly: MultiPoly, values: Mapping[str, object]) -> Tuple[object, object]:
    """
    Compensated evaluation of a polynomial with integer coefficients

    Returns:
        (value, scale) where value is the correctly rounded sum of the
        term values and scale is the largest term magnitude
    """
    terms = poly.term_values(values)
    if not terms:
        return 0.0, 0.0
    if any(isinstance(t, mpmath.mpf) for t in terms):
        terms = [mpmath.mpf(t) for t in terms]
        return mpmath.fsum(terms), max(abs(t) for t in terms)
    terms = [float(t) for t in terms]
    return math.fsum(terms), max(abs(t) for t in terms)
