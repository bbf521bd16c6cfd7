"""Sparse multivariate polynomials with integer coefficients.

A polynomial is a map from exponent vectors to nonzero ints over a fixed,
ordered tuple of variable names. Python ints never wrap, so the 64-bit
coefficient bound is enforced explicitly and breaches raise
:class:`~qsl.errors.CoefficientOverflow`.
"""
from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from ..errors import CoefficientOverflow, ShapeError

COEFF_BOUND = 2**63


def _normalize(terms: Mapping[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
    out = {}
    for mono, c in terms.items():
        if c:
            if not -COEFF_BOUND < c < COEFF_BOUND:
                raise CoefficientOverflow(f"coefficient {c} exceeds the 64-bit bound")
            out[mono] = c
    return out


class MultiPoly:
    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], int] | None = None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        terms = dict(terms or {})
        for mono in terms:
            if len(mono) != nv:
                raise ShapeError(f"exponent vector {mono} does not match {nv} variables")
        self._terms = _normalize(terms)
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], c: int) -> MultiPoly:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> MultiPoly:
        variables = tuple(variables)
        k = variables.index(name)
        mono = tuple(int(i == k) for i in range(len(variables)))
        return cls(variables, {mono: 1})

    @property
    def terms(self) -> Mapping[tuple[int, ...], int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    # -- arithmetic -----------------------------------------------------
    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ShapeError("polynomials live in different variable lists")
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        """Lex-largest monomial and its coefficient."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms)
        return m, self._terms[m]

    def exact_div(self, divisor: MultiPoly) -> MultiPoly:
        """Quotient of an exact division; raises ``ArithmeticError`` on a remainder."""
        divisor = self._lift(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        dm, dc = divisor.leading_term()
        rem = self
        quot: dict[tuple[int, ...], int] = {}
        while not rem.is_zero():
            rm, rc = rem.leading_term()
            em = tuple(a - b for a, b in zip(rm, dm))
            if any(e < 0 for e in em) or rc % dc:
                raise ArithmeticError("division is not exact")
            q = MultiPoly(self.variables, {em: rc // dc})
            quot[em] = rc // dc
            rem = rem - q * divisor
        return MultiPoly(self.variables, quot)

    # -- evaluation -----------------------------------------------------
    def evaluate(self, point: Mapping[str, int] | Sequence[int], modulus: int | None = None) -> int:
        if isinstance(point, Mapping):
            values = [point[v] for v in self.variables]
        else:
            values = list(point)
            if len(values) != len(self.variables):
                raise ShapeError("point has the wrong number of coordinates")
        total = 0
        for mono, c in self._terms.items():
            t = c
            for x, e in zip(values, mono):
                if e:
                    t *= pow(x, e, modulus) if modulus else x**e
            total += t
            if modulus:
                total %= modulus
        return total % modulus if modulus else total

    def substitute(self, images: Mapping[str, MultiPoly], target_vars: Sequence[str]) -> MultiPoly:
        """Ring map sending each variable to a polynomial over ``target_vars``."""
        target_vars = tuple(target_vars)
        gens = [images[v] for v in self.variables]
        total = MultiPoly(target_vars)
        for mono, c in self._terms.items():
            t = MultiPoly.constant(target_vars, c)
            for g, e in zip(gens, mono):
                if e:
                    t = t * g**e
            total = total + t
        return total

    # -- comparison / display -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, reverse=True):
            c = self._terms[mono]
            factors = []
            for name, e in zip(self.variables, mono):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


class PolyRing:
    """Convenience factory for polynomials over one variable list."""

    def __init__(self, names: Iterable[str]):
        self.variables = tuple(names)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")

    def __call__(self, c: int) -> MultiPoly:
        return MultiPoly.constant(self.variables, c)

    @property
    def zero(self) -> MultiPoly:
        return MultiPoly(self.variables)

    @property
    def one(self) -> MultiPoly:
        return self(1)

    def gen(self, name: str) -> MultiPoly:
        return MultiPoly.var(self.variables, name)

    def gens(self) -> tuple[MultiPoly, ...]:
        return tuple(self.gen(n) for n in self.variables)

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)})"


# Cofactor expansion above this size is replaced by Bareiss elimination.
COFACTOR_LIMIT = 4


def _cofactor(data, rows: list[int], cols: list[int], variables) -> MultiPoly:
    # expansion along the first remaining row
    if len(rows) == 1:
        return data[rows[0]][cols[0]]
    total = MultiPoly(variables)
    r0, rest = rows[0], rows[1:]
    for k, c in enumerate(cols):
        e = data[r0][c]
        if e.is_zero():
            continue
        sub = _cofactor(data, rest, cols[:k] + cols[k + 1:], variables)
        total = total + e * sub if k % 2 == 0 else total - e * sub
    return total


class PolyMatrix:
    """Dense matrix of :class:`MultiPoly` entries over one variable list."""

    __slots__ = ("rows", "cols", "variables", "data")

    def __init__(self, rows: int, cols: int, variables: Sequence[str], data: Sequence[Sequence[MultiPoly]]):
        self.rows, self.cols = rows, cols
        self.variables = tuple(variables)
        data = tuple(tuple(r) for r in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeError(f"data does not have shape {rows}x{cols}")
        for r in data:
            for x in r:
                if x.variables != self.variables:
                    raise ShapeError("entry has a different variable list")
        self.data = data

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence[MultiPoly | int]], cols: int | None = None) -> PolyMatrix:
        data = [[x if isinstance(x, MultiPoly) else ring(x) for x in r] for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, ring.variables, data)

    @classmethod
    def generic(cls, ring: PolyRing, rows: int, cols: int, name: str) -> PolyMatrix:
        """Matrix whose (i, j) entry is the ring generator ``{name}_{i}_{j}`` (1-based)."""
        return cls(rows, cols, ring.variables,
                   [[ring.gen(f"{name}_{i + 1}_{j + 1}") for j in range(cols)] for i in range(rows)])

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> PolyMatrix:
        return cls(n, n, ring.variables, [[ring(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> PolyMatrix:
        return cls(rows, cols, ring.variables, [[ring.zero] * cols for _ in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> MultiPoly:
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.variables == other.variables and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.variables != other.variables:
            raise ShapeError("matrices live over different variable lists")
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = MultiPoly(self.variables)
        data = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.data[i][k] * other.data[k][j]
                row.append(acc)
            data.append(row)
        return PolyMatrix(self.rows, other.cols, self.variables, data)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> PolyMatrix:
        """0-based row and column selections."""
        rows, cols = list(rows), list(cols)
        return PolyMatrix(len(rows), len(cols), self.variables,
                          [[self.data[r][c] for c in cols] for r in rows])

    def hstack(self, other: PolyMatrix) -> PolyMatrix:
        if self.rows != other.rows:
            raise ShapeError("row counts differ in hstack")
        return PolyMatrix(self.rows, self.cols + other.cols, self.variables,
                          [a + b for a, b in zip(self.data, other.data)])

    def vstack(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.cols:
            raise ShapeError("column counts differ in vstack")
        return PolyMatrix(self.rows + other.rows, self.cols, self.variables, self.data + other.data)

    def det(self) -> MultiPoly:
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return MultiPoly.constant(self.variables, 1)
        if n <= COFACTOR_LIMIT:
            return self._det_cofactor()
        return self._det_bareiss()

    def _det_cofactor(self) -> MultiPoly:
        return _cofactor(self.data, list(range(self.rows)), list(range(self.cols)), self.variables)

    def _det_bareiss(self) -> MultiPoly:
        n = self.rows
        m = [list(r) for r in self.data]
        sign = 1
        prev = MultiPoly.constant(self.variables, 1)
        for k in range(n - 1):
            if m[k][k].is_zero():
                swap = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
                if swap is None:
                    return MultiPoly(self.variables)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            prev = m[k][k]
        return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]

    def evaluate(self, point: Mapping[str, int] | Sequence[int], p: int):
        from .field import FieldMatrix

        return FieldMatrix.from_rows([[x.evaluate(point, p) for x in r] for r in self.data], p, cols=self.cols)

    def __repr__(self):
        return "PolyMatrix(" + "; ".join(", ".join(map(repr, r)) for r in self.data) + ")"
