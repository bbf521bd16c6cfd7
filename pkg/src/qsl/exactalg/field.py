"""Prime fields and dense matrices over them.

Matrices store residues as plain ``int`` in ``[0, p)``; ``FieldElement`` is the
boxed scalar for callers that want operator arithmetic on single values.
Index sets handed to :func:`minor` are 1-based, matching the usual
mathematical convention; everything else indexes from 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ..errors import ShapeError

MAX_MODULUS = 2**31 - 1


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    # deterministic Miller-Rabin, exact for p < 3.4e14
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        if a % p == 0:
            continue
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def check_modulus(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p) or p > MAX_MODULUS:
        raise ValueError(f"modulus must be a prime <= 2^31 - 1, got {p!r}")
    return p


@dataclass(frozen=True)
class FieldElement:
    residue: int
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "residue", self.residue % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("field elements have different moduli")
            return other.residue
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else FieldElement(self.residue + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else FieldElement(self.residue - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else FieldElement(o - self.residue, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else FieldElement(self.residue * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.residue, self.p)

    def inverse(self) -> FieldElement:
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(o, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.p
        if isinstance(other, FieldElement):
            return (self.residue, self.p) == (other.residue, other.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.p})"


def _rank_in_place(rows: list[list[int]], ncols: int, p: int) -> int:
    rank = 0
    nrows = len(rows)
    for c in range(ncols):
        if rank == nrows:
            break
        pivot = next((r for r in range(rank, nrows) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = pow(prow[c], -1, p)
        for r in range(rank + 1, nrows):
            row = rows[r]
            f = row[c]
            if f:
                f = f * inv % p
                for k in range(c, ncols):
                    row[k] = (row[k] - f * prow[k]) % p
        rank += 1
    return rank


def _det_in_place(rows: list[list[int]], p: int) -> int:
    n = len(rows)
    det = 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if rows[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        prow = rows[c]
        det = det * prow[c] % p
        inv = pow(prow[c], -1, p)
        for r in range(c + 1, n):
            row = rows[r]
            f = row[c]
            if f:
                f = f * inv % p
                for k in range(c, n):
                    row[k] = (row[k] - f * prow[k]) % p
    return det % p


@dataclass(frozen=True)
class FieldMatrix:
    """Dense ``rows x cols`` matrix over the prime field of order ``p``."""

    rows: int
    cols: int
    p: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeError(f"data does not have shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> FieldMatrix:
        check_modulus(p)
        data = tuple(tuple(int(x) % p for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, p, data)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> FieldMatrix:
        return cls(rows, cols, check_modulus(p), tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, p: int) -> FieldMatrix:
        check_modulus(p)
        return cls(n, n, p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_flat(cls, rows: int, cols: int, values: Sequence[int], p: int) -> FieldMatrix:
        if len(values) != rows * cols:
            raise ShapeError("flat value list has the wrong length")
        return cls(rows, cols, p, tuple(tuple(values[r * cols:(r + 1) * cols]) for r in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.data[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.data for x in r)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def transpose(self) -> FieldMatrix:
        data = tuple(tuple(self.data[r][c] for r in range(self.rows)) for c in range(self.cols))
        return FieldMatrix(self.cols, self.rows, self.p, data)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> FieldMatrix:
        """0-based row and column selections."""
        rows, cols = list(rows), list(cols)
        return FieldMatrix(len(rows), len(cols), self.p, tuple(tuple(self.data[r][c] for c in cols) for r in rows))

    def _same_field(self, other: FieldMatrix):
        if self.p != other.p:
            raise ShapeError(f"moduli differ: {self.p} vs {other.p}")

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        self._same_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        p = self.p
        cols_t = list(zip(*other.data)) if other.rows else [()] * other.cols
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols_t) for row in self.data
        )
        return FieldMatrix(self.rows, other.cols, p, data)

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in addition")
        p = self.p
        return FieldMatrix(self.rows, self.cols, p, tuple(
            tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in subtraction")
        p = self.p
        return FieldMatrix(self.rows, self.cols, p, tuple(
            tuple((a - b) % p for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def scale(self, c: int) -> FieldMatrix:
        p = self.p
        return FieldMatrix(self.rows, self.cols, p, tuple(tuple(c * a % p for a in r) for r in self.data))

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return _rank_in_place([list(r) for r in self.data], self.cols, self.p)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return _det_in_place([list(r) for r in self.data], self.p)

    def inverse(self) -> FieldMatrix:
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        n, p = self.rows, self.p
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.data)]
        for c in range(n):
            pivot = next((r for r in range(c, n) if aug[r][c]), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[pivot] = aug[pivot], aug[c]
            inv = pow(aug[c][c], -1, p)
            aug[c] = [x * inv % p for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
        return FieldMatrix(n, n, p, tuple(tuple(r[n:]) for r in aug))

    def hstack(self, other: FieldMatrix) -> FieldMatrix:
        self._same_field(other)
        if self.rows != other.rows:
            raise ShapeError("row counts differ in hstack")
        return FieldMatrix(self.rows, self.cols + other.cols, self.p,
                           tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: FieldMatrix) -> FieldMatrix:
        self._same_field(other)
        if self.cols != other.cols:
            raise ShapeError("column counts differ in vstack")
        return FieldMatrix(self.rows + other.rows, self.cols, self.p, self.data + other.data)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"FieldMatrix[{self.rows}x{self.cols} mod {self.p}]({body})"


def _check_index_set(idx: Sequence[int], bound: int, what: str) -> list[int]:
    out = sorted(idx)
    if len(set(out)) != len(out):
        raise ShapeError(f"{what} index set has repeats: {list(idx)}")
    if out and (out[0] < 1 or out[-1] > bound):
        raise ShapeError(f"{what} index set {out} not inside [1, {bound}]")
    return out
