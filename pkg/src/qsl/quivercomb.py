"""Representations of the equioriented type-A quiver V_1 -> V_2 -> ... -> V_h.

Rank arrays, multiplicity arrays of the interval indecomposables, orbit
representatives and the orbit-closure dimension formula. All vertex indices
are 1-based.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping

from .errors import InvalidRankArray, ShapeError
from .exactalg import FieldMatrix, check_modulus

Pair = tuple[int, int]


@dataclass(frozen=True)
class DimVector:
    n: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        if not self.n:
            raise ValueError("a dimension vector needs h >= 1 entries")
        if any(x < 0 for x in self.n):
            raise ValueError(f"dimensions must be non-negative: {self.n}")

    @classmethod
    def of(cls, *n: int) -> DimVector:
        return cls(tuple(n))

    @property
    def h(self) -> int:
        return len(self.n)

    @property
    def total(self) -> int:
        return sum(self.n)

    def dim(self, i: int) -> int:
        """n_i, or 0 outside 1..h."""
        return self.n[i - 1] if 1 <= i <= self.h else 0

    def a(self, i: int) -> int:
        """Partial sum n_1 + ... + n_i; a(0) = 0."""
        return sum(self.n[:max(i, 0)])

    def block(self, i: int) -> range:
        """0-based coordinate range of V_i inside k^n."""
        return range(self.a(i - 1), self.a(i))

    def group_dim(self) -> int:
        return sum(x * x for x in self.n)

    def space_dim(self) -> int:
        return sum(self.n[i] * self.n[i + 1] for i in range(self.h - 1))

    def __str__(self):
        return ",".join(map(str, self.n))


def upper_pairs(h: int) -> list[Pair]:
    """Strictly upper index pairs ordered by span, then by i."""
    return [(i, i + d) for d in range(1, h) for i in range(1, h - d + 1)]


@dataclass(frozen=True)
class RankArray:
    """r_{ij} for 1 <= i <= j <= h; the accessor returns 0 elsewhere."""

    dim: DimVector
    upper: tuple[tuple[Pair, int], ...] = field(default=())

    def __post_init__(self):
        h = self.dim.h
        values = dict(self.upper)
        expected = set(upper_pairs(h))
        if set(values) != expected:
            missing = sorted(expected - set(values))
            extra = sorted(set(values) - expected)
            raise ValueError(f"rank array entries wrong: missing {missing}, unexpected {extra}")
        if any(v < 0 for v in values.values()):
            raise ValueError("ranks must be non-negative")
        object.__setattr__(self, "upper", tuple((k, int(values[k])) for k in upper_pairs(h)))

    @classmethod
    def from_dict(cls, dim: DimVector, values: Mapping[Pair, int]) -> RankArray:
        return cls(dim, tuple(values.items()))

    @classmethod
    def zero(cls, dim: DimVector) -> RankArray:
        return cls(dim, tuple((k, 0) for k in upper_pairs(dim.h)))

    @cached_property
    def _lookup(self) -> dict[Pair, int]:
        d = dict(self.upper)
        for i in range(1, self.dim.h + 1):
            d[(i, i)] = self.dim.dim(i)
        return d

    def __getitem__(self, ij: Pair) -> int:
        return self._lookup.get(ij, 0)

    def values(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.upper)

    def __le__(self, other: RankArray) -> bool:
        if self.dim != other.dim:
            raise ShapeError("rank arrays over different dimension vectors")
        return all(a <= b for a, b in zip(self.values(), other.values()))

    def __lt__(self, other: RankArray) -> bool:
        return self <= other and self != other

    def to_json(self) -> dict:
        return {"n": list(self.dim.n), "r": {f"{i},{j}": v for (i, j), v in self.upper}}

    @classmethod
    def from_json(cls, obj: Mapping | str, dim: DimVector | None = None) -> RankArray:
        if isinstance(obj, str):
            obj = json.loads(obj)
        if "r" in obj:
            dim = DimVector(tuple(obj["n"])) if "n" in obj else dim
            entries = obj["r"]
        else:
            entries = obj
        if dim is None:
            raise ValueError("rank array JSON lacks 'n' and no dimension vector was supplied")
        values = {}
        for key, v in entries.items():
            i, j = (int(t) for t in key.split(","))
            if i == j:
                if v != dim.dim(i):
                    raise ValueError(f"diagonal entry r[{i},{i}] must equal n_{i} = {dim.dim(i)}")
                continue
            values[(i, j)] = int(v)
        return cls.from_dict(dim, values)

    def __str__(self):
        return "(" + ",".join(f"r{i}{j}={v}" for (i, j), v in self.upper) + ")"


@dataclass(frozen=True)
class MultArray:
    """Multiplicities m_{ij}, 1 <= i < j <= h+1, of the interval modules R_{ij}."""

    dim: DimVector
    entries: tuple[tuple[Pair, int], ...]

    def __post_init__(self):
        h = self.dim.h
        keys = [(i, j) for i in range(1, h + 1) for j in range(i + 1, h + 2)]
        values = dict(self.entries)
        if set(values) - set(keys):
            raise ValueError(f"multiplicity indices out of range: {sorted(set(values) - set(keys))}")
        if any(v < 0 for v in values.values()):
            raise ValueError("multiplicities must be non-negative")
        object.__setattr__(self, "entries", tuple((k, int(values.get(k, 0))) for k in keys))
        for i in range(1, h + 1):
            s = sum(v for (k, l), v in self.entries if k <= i < l)
            if s != self.dim.dim(i):
                raise ValueError(f"multiplicities give dim V_{i} = {s}, expected {self.dim.dim(i)}")

    def __getitem__(self, ij: Pair) -> int:
        return dict(self.entries).get(ij, 0)

    def to_json(self) -> dict:
        return {"n": list(self.dim.n), "m": {f"{i},{j}": v for (i, j), v in self.entries}}

    @classmethod
    def from_json(cls, obj: Mapping | str, dim: DimVector | None = None) -> MultArray:
        if isinstance(obj, str):
            obj = json.loads(obj)
        if "m" in obj:
            dim = DimVector(tuple(obj["n"])) if "n" in obj else dim
            obj = obj["m"]
        if dim is None:
            raise ValueError("multiplicity JSON lacks 'n' and no dimension vector was supplied")
        return cls(dim, tuple(((int(a), int(b)), int(v)) for a, b, v in
                              ((*k.split(","), v) for k, v in obj.items())))


def _mult(r, i: int, j: int) -> int:
    return r[(i, j - 1)] - r[(i, j)] - r[(i - 1, j - 1)] + r[(i - 1, j)]


def first_violation(r: RankArray) -> tuple[Pair, int] | None:
    """First (i, j) in lexicographic order with a negative multiplicity."""
    h = r.dim.h
    for i in range(1, h + 1):
        for j in range(i + 1, h + 2):
            m = _mult(r, i, j)
            if m < 0:
                return (i, j), m
    return None


def is_valid(r: RankArray) -> bool:
    return first_violation(r) is None


def ranks_to_mults(r: RankArray) -> MultArray:
    bad = first_violation(r)
    if bad is not None:
        raise InvalidRankArray(*bad)
    h = r.dim.h
    return MultArray(r.dim, tuple(((i, j), _mult(r, i, j))
                                  for i in range(1, h + 1) for j in range(i + 1, h + 2)))


def mults_to_ranks(m: MultArray) -> RankArray:
    h = m.dim.h
    values = {}
    for i, j in upper_pairs(h):
        values[(i, j)] = sum(v for (k, l), v in m.entries if k <= i and j < l)
    return RankArray.from_dict(m.dim, values)


def check_valid(r: RankArray) -> RankArray:
    bad = first_violation(r)
    if bad is not None:
        raise InvalidRankArray(*bad)
    return r


def enumerate_rank_arrays(dim: DimVector) -> list[RankArray]:
    """All valid rank arrays, in lexicographic order of their entries by (span, i)."""
    h = dim.h
    pairs = upper_pairs(h)
    out: list[RankArray] = []
    vals: dict[Pair, int] = {(i, i): dim.dim(i) for i in range(1, h + 1)}

    class _Partial:
        def __getitem__(self, ij):
            i, j = ij
            if 1 <= i <= j <= h:
                return vals[ij]
            return 0

    partial = _Partial()

    def span_needed(i: int, j: int) -> int:
        # largest span among the in-range entries that m_{ij} reads
        s = j - 1 - i
        if j <= h or i > 1:
            s = j - i
        if i > 1 and j <= h:
            s = j - i + 1
        return s

    by_span: dict[int, list[Pair]] = {}
    for i in range(1, h + 1):
        for j in range(i + 1, h + 2):
            by_span.setdefault(span_needed(i, j), []).append((i, j))

    def rec(k: int):
        if k == len(pairs):
            if all(m >= 0 for m in (_mult(partial, i, j) for i in range(1, h + 1) for j in range(i + 1, h + 2))):
                out.append(RankArray.from_dict(dim, {p: vals[p] for p in pairs}))
            return
        i, j = pairs[k]
        bound = min(vals[(i, j - 1)], vals[(i + 1, j)])
        for v in range(bound + 1):
            vals[(i, j)] = v
            nxt = pairs[k + 1] if k + 1 < len(pairs) else None
            if nxt is None or nxt[1] - nxt[0] != j - i:
                # a full diagonal is set: prune on multiplicities now determined
                if any(_mult(partial, a, b) < 0 for a, b in by_span.get(j - i, ())):
                    continue
            rec(k + 1)
        vals.pop((i, j), None)

    if not pairs:
        return [RankArray(dim, ())]
    rec(0)
    return out


@dataclass(frozen=True)
class QuiverRep:
    """Matrices (A_1, ..., A_{h-1}) with A_i of shape n_{i+1} x n_i."""

    dim: DimVector
    mats: tuple[FieldMatrix, ...]
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        if len(self.mats) != self.dim.h - 1:
            raise ShapeError(f"need {self.dim.h - 1} matrices, got {len(self.mats)}")
        for i, a in enumerate(self.mats, start=1):
            if a.shape != (self.dim.dim(i + 1), self.dim.dim(i)) or a.p != self.p:
                raise ShapeError(f"A_{i} has shape {a.shape} mod {a.p}, expected "
                                 f"{(self.dim.dim(i + 1), self.dim.dim(i))} mod {self.p}")

    @classmethod
    def zero(cls, dim: DimVector, p: int) -> QuiverRep:
        return cls(dim, tuple(FieldMatrix.zeros(dim.dim(i + 1), dim.dim(i), p) for i in range(1, dim.h)), p)

    @classmethod
    def from_lists(cls, dim: DimVector, mats, p: int) -> QuiverRep:
        return cls(dim, tuple(FieldMatrix.from_rows(m, p, cols=dim.dim(i))
                              for i, m in enumerate(mats, start=1)), p)

    @classmethod
    def from_flat(cls, dim: DimVector, values, p: int) -> QuiverRep:
        """Inverse of :meth:`flat`: entries of A_1, A_2, ... in row-major order."""
        mats, pos = [], 0
        for i in range(1, dim.h):
            r, c = dim.dim(i + 1), dim.dim(i)
            mats.append(FieldMatrix.from_flat(r, c, tuple(values[pos:pos + r * c]), p))
            pos += r * c
        return cls(dim, tuple(mats), p)

    def flat(self) -> tuple[int, ...]:
        return tuple(x for a in self.mats for x in a.flat())

    def A(self, i: int) -> FieldMatrix:
        return self.mats[i - 1]

    def product(self, i: int, j: int) -> FieldMatrix:
        """A_{j-1} ... A_i : V_i -> V_j (identity when i = j)."""
        out = FieldMatrix.identity(self.dim.dim(i), self.p)
        for k in range(i, j):
            out = self.mats[k - 1] @ out
        return out


def rank_array_of(rep: QuiverRep) -> RankArray:
    values = {}
    h = rep.dim.h
    for i in range(1, h):
        prod = rep.mats[i - 1]
        values[(i, i + 1)] = prod.rank()
        for j in range(i + 2, h + 1):
            prod = rep.mats[j - 2] @ prod
            values[(i, j)] = prod.rank()
    return RankArray.from_dict(rep.dim, values)


def _summand_order(m: MultArray) -> list[Pair]:
    # Longer strings first within each start vertex, so that the run of
    # identity maps sits in the leading coordinates of every V_t.
    return sorted((k for k, v in m.entries if v), key=lambda ij: (ij[0], -ij[1]))


def generic_rep(r: RankArray, p: int) -> QuiverRep:
    """Direct sum of m_{ij} copies of each interval module R_{ij}."""
    m = ranks_to_mults(r)
    dim = r.dim
    h = dim.h
    # coordinate of each summand copy at each vertex it touches
    coord: dict[tuple[Pair, int, int], int] = {}
    nxt = [0] * (h + 2)
    for ij in _summand_order(m):
        i, j = ij
        for copy in range(m[ij]):
            for t in range(i, j):
                coord[(ij, copy, t)] = nxt[t]
                nxt[t] += 1
    mats = []
    for t in range(1, h):
        rows = [[0] * dim.dim(t) for _ in range(dim.dim(t + 1))]
        for (ij, copy, tt), c in coord.items():
            if tt == t and (ij, copy, t + 1) in coord:
                rows[coord[(ij, copy, t + 1)]][c] = 1
        mats.append(FieldMatrix.from_rows(rows, p, cols=dim.dim(t)))
    return QuiverRep(dim, tuple(mats), p)


@dataclass(frozen=True)
class GroupElement:
    """(g_1, ..., g_h) in GL(n_1) x ... x GL(n_h)."""

    dim: DimVector
    blocks: tuple[FieldMatrix, ...]
    p: int

    def __post_init__(self):
        if len(self.blocks) != self.dim.h:
            raise ShapeError(f"need {self.dim.h} blocks")
        for i, g in enumerate(self.blocks, start=1):
            if g.shape != (self.dim.dim(i),) * 2 or g.p != self.p:
                raise ShapeError(f"g_{i} has the wrong shape or field")
            if g.rank() != g.rows:
                raise ValueError(f"g_{i} is singular")

    @classmethod
    def identity(cls, dim: DimVector, p: int) -> GroupElement:
        return cls(dim, tuple(FieldMatrix.identity(x, p) for x in dim.n), p)


def act(g: GroupElement, rep: QuiverRep) -> QuiverRep:
    """(g_2 A_1 g_1^{-1}, g_3 A_2 g_2^{-1}, ...)."""
    if g.dim != rep.dim or g.p != rep.p:
        raise ShapeError("group element and representation do not match")
    invs = [b.inverse() for b in g.blocks]
    mats = tuple(g.blocks[i] @ a @ invs[i - 1] for i, a in enumerate(rep.mats, start=1))
    return QuiverRep(rep.dim, mats, rep.p)


def in_quiver_variety(rep: QuiverRep, r: RankArray) -> bool:
    if rep.dim != r.dim:
        raise ShapeError("representation and rank array have different dimension vectors")
    return rank_array_of(rep) <= r


def quiver_dim(r: RankArray) -> int:
    """Dimension of the orbit closure Z(r) (Abeasis-Del Fra)."""
    check_valid(r)
    h = r.dim.h
    defect = sum((r[(i, j)] - r[(i, j + 1)]) * (r[(i, j)] - r[(i - 1, j)])
                 for i in range(1, h + 1) for j in range(i, h + 1))
    return r.dim.group_dim() - defect


def gl_order(n: int, q: int) -> int:
    out = 1
    for k in range(n):
        out *= q**n - q**k
    return out


def group_order(dim: DimVector, q: int) -> int:
    out = 1
    for x in dim.n:
        out *= gl_order(x, q)
    return out


def enumerate_gl(n: int, p: int) -> Iterator[FieldMatrix]:
    for values in itertools.product(range(p), repeat=n * n):
        g = FieldMatrix.from_flat(n, n, values, p)
        if g.rank() == n:
            yield g
