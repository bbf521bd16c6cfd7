"""Points of the opposite big cell, flags, and the Zelevinsky embedding."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from ..errors import NotInBigCell, NotInImage, ShapeError
from ..exactalg import FieldMatrix, check_modulus, minor, subspace_intersection_dim
from ..flagcomb import SubsetFlag
from ..quivercomb import DimVector, QuiverRep, RankArray

Block = tuple[int, int]


def lower_blocks(dim: DimVector) -> list[Block]:
    """Below-diagonal block positions (i, j), i > j, in lexicographic order."""
    return [(i, j) for i in range(2, dim.h + 1) for j in range(1, i)]


def big_cell_dim(dim: DimVector) -> int:
    return sum(dim.dim(i) * dim.dim(j) for i, j in lower_blocks(dim))


@dataclass(frozen=True)
class BigCellPoint:
    """Lower block-unitriangular representative of a flag in the opposite cell.

    Only the blocks A_{ij}, i > j (shape n_i x n_j) are stored; the diagonal
    is the identity and everything above it is zero.
    """

    dim: DimVector
    p: int
    blocks: tuple[tuple[Block, FieldMatrix], ...] = field(default=())

    def __post_init__(self):
        check_modulus(self.p)
        given = dict(self.blocks)
        wanted = lower_blocks(self.dim)
        if set(given) - set(wanted):
            raise ShapeError(f"unexpected block positions {sorted(set(given) - set(wanted))}")
        out = []
        for i, j in wanted:
            b = given.get((i, j)) or FieldMatrix.zeros(self.dim.dim(i), self.dim.dim(j), self.p)
            if b.shape != (self.dim.dim(i), self.dim.dim(j)) or b.p != self.p:
                raise ShapeError(f"block ({i},{j}) has shape {b.shape} mod {b.p}")
            out.append(((i, j), b))
        object.__setattr__(self, "blocks", tuple(out))

    @classmethod
    def identity(cls, dim: DimVector, p: int) -> BigCellPoint:
        return cls(dim, p)

    @classmethod
    def from_flat(cls, dim: DimVector, values: Sequence[int], p: int) -> BigCellPoint:
        blocks, pos = [], 0
        for i, j in lower_blocks(dim):
            r, c = dim.dim(i), dim.dim(j)
            blocks.append(((i, j), FieldMatrix.from_flat(r, c, tuple(values[pos:pos + r * c]), p)))
            pos += r * c
        if pos != len(values):
            raise ShapeError(f"expected {pos} coordinates, got {len(values)}")
        return cls(dim, p, tuple(blocks))

    @classmethod
    def from_matrix(cls, dim: DimVector, m: FieldMatrix) -> BigCellPoint:
        """Read the free blocks of an n x n lower block-unitriangular matrix."""
        n = dim.total
        if m.shape != (n, n):
            raise ShapeError(f"expected a {n}x{n} matrix")
        point = cls(dim, m.p, tuple(((i, j), m.submatrix(dim.block(i), dim.block(j)))
                                    for i, j in lower_blocks(dim)))
        if point.matrix != m:
            raise ValueError("matrix is not lower block-unitriangular")
        return point

    def block(self, i: int, j: int) -> FieldMatrix:
        if i == j:
            return FieldMatrix.identity(self.dim.dim(i), self.p)
        if i < j:
            return FieldMatrix.zeros(self.dim.dim(i), self.dim.dim(j), self.p)
        return self._block_map[(i, j)]

    @cached_property
    def _block_map(self) -> dict[Block, FieldMatrix]:
        return dict(self.blocks)

    @cached_property
    def matrix(self) -> FieldMatrix:
        n = self.dim.total
        rows = [[0] * n for _ in range(n)]
        for k in range(n):
            rows[k][k] = 1
        for (i, j), b in self.blocks:
            r0, c0 = self.dim.a(i - 1), self.dim.a(j - 1)
            for r in range(b.rows):
                for c in range(b.cols):
                    rows[r0 + r][c0 + c] = b.data[r][c]
        return FieldMatrix.from_rows(rows, self.p, cols=n)

    def flat(self) -> tuple[int, ...]:
        return tuple(x for _, b in self.blocks for x in b.flat())

    def as_flag(self) -> FlagPoint:
        return FlagPoint(self.dim, self.matrix)


def enumerate_big_cell(dim: DimVector, p: int) -> Iterator[BigCellPoint]:
    for values in itertools.product(range(p), repeat=big_cell_dim(dim)):
        yield BigCellPoint.from_flat(dim, values, p)


@dataclass(frozen=True)
class FlagPoint:
    """Partial flag U_1 ⊂ ... ⊂ U_h; U_i is spanned by the first a_i basis columns."""

    dim: DimVector
    basis: FieldMatrix

    def __post_init__(self):
        n = self.dim.total
        if self.basis.shape != (n, n):
            raise ShapeError(f"basis must be {n}x{n}")
        if self.basis.rank() != n:
            raise ValueError("basis matrix is singular")

    @property
    def p(self) -> int:
        return self.basis.p

    def U(self, i: int) -> FieldMatrix:
        return self.basis.submatrix(range(self.basis.rows), range(self.dim.a(i)))


def _coordinate_span(n: int, idx: Sequence[int], p: int) -> FieldMatrix:
    """Columns e_k for the 1-based indices in ``idx``."""
    idx = list(idx)
    return FieldMatrix.from_rows([[int(r + 1 == k) for k in idx] for r in range(n)], p, cols=len(idx))


def standard_span(dim: DimVector, i: int, p: int) -> FieldMatrix:
    """E_i = <e_1, ..., e_{a_i}>."""
    return _coordinate_span(dim.total, range(1, dim.a(i) + 1), p)


def complement_span(dim: DimVector, i: int, p: int) -> FieldMatrix:
    """E'_i = <e_{a_i + 1}, ..., e_n>."""
    return _coordinate_span(dim.total, range(dim.a(i) + 1, dim.total + 1), p)


def zeta(rep: QuiverRep) -> BigCellPoint:
    """Block (i, j) of the image is A_{i-1} ... A_j."""
    dim = rep.dim
    blocks = []
    for j in range(1, dim.h):
        prod = FieldMatrix.identity(dim.dim(j), rep.p)
        for i in range(j + 1, dim.h + 1):
            prod = rep.mats[i - 2] @ prod
            blocks.append(((i, j), prod))
    return BigCellPoint(dim, rep.p, tuple(blocks))


def zeta_inverse(point: BigCellPoint) -> QuiverRep:
    """Recover the representation, or raise :class:`NotInImage` at the first inconsistent block."""
    dim = point.dim
    mats = tuple(point.block(j + 1, j) for j in range(1, dim.h))
    for i, j in lower_blocks(dim):
        if i > j + 1 and point.block(i, j) != mats[i - 2] @ point.block(i - 1, j):
            raise NotInImage((i, j))
    return QuiverRep(dim, mats, point.p)


def canonicalize_to_big_cell(flag: FlagPoint) -> BigCellPoint:
    dim, p = flag.dim, flag.p
    n = dim.total
    cols = []
    for i in range(1, dim.h + 1):
        ai = dim.a(i)
        u = flag.U(i)
        top = u.submatrix(range(ai), range(ai))
        if top.det() == 0:
            raise NotInBigCell(i)
        normal = u @ top.inverse()
        cols.append(normal.submatrix(range(n), dim.block(i)))
    full = cols[0]
    for c in cols[1:]:
        full = full.hstack(c)
    return BigCellPoint.from_matrix(dim, full)


def image_condition_failure(flag: FlagPoint | BigCellPoint) -> str | None:
    """First failing condition among E_{i-1} ⊂ U_i and U_i ∩ E'_i = 0, or None."""
    if isinstance(flag, BigCellPoint):
        flag = flag.as_flag()
    dim, p = flag.dim, flag.p
    for i in range(1, dim.h + 1):
        u = flag.U(i)
        if dim.a(i) < dim.total and subspace_intersection_dim(u, complement_span(dim, i, p)) != 0:
            return f"U_{i} ∩ E'_{i} != 0"
        if i > 1 and subspace_intersection_dim(u, standard_span(dim, i - 1, p)) != dim.a(i - 1):
            return f"E_{i - 1} not in U_{i}"
    return None


def rank_condition_failure(flag: FlagPoint | BigCellPoint, r: RankArray) -> str | None:
    """First failing condition of the rank-array description of Y(tau_r), or None."""
    bad = image_condition_failure(flag)
    if bad is not None:
        return bad
    if isinstance(flag, BigCellPoint):
        flag = flag.as_flag()
    dim, p = flag.dim, flag.p
    for i in range(1, dim.h + 1):
        u = flag.U(i)
        for j in range(i, dim.h + 1):
            need = dim.a(i) - r[(i, j + 1)]
            if subspace_intersection_dim(standard_span(dim, j, p), u) < need:
                return f"dim E_{j} ∩ U_{i} < {need}"
    return None


def in_schubert(flag: FlagPoint | BigCellPoint, tau: SubsetFlag) -> bool:
    """dim(U_i ∩ k^j) >= #(tau_i ∩ [j]) for every level i and every j."""
    if isinstance(flag, BigCellPoint):
        flag = flag.as_flag()
    if flag.dim != tau.dim:
        raise ShapeError("flag and subset-flag have different dimension vectors")
    n, p = flag.dim.total, flag.p
    for i in range(1, flag.dim.h + 1):
        u = flag.U(i)
        ti = set(tau[i])
        for j in range(1, n + 1):
            need = sum(1 for x in ti if x <= j)
            if need and subspace_intersection_dim(u, _coordinate_span(n, range(1, j + 1), p)) < need:
                return False
    return True


def plucker(point: BigCellPoint, sigma: Sequence[int]) -> int:
    """p_sigma = det A_{sigma x [a_i]} where #sigma = a_i."""
    k = len(sigma)
    if k not in {point.dim.a(i) for i in range(1, point.dim.h + 1)}:
        raise ShapeError(f"#sigma = {k} is not one of the partial sums a_i")
    return minor(point.matrix, sigma, range(1, k + 1))
