"""Subset-flags, permutations and block permutation matrices.

Subsets are sorted tuples of 1-based integers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .errors import ShapeError
from .quivercomb import DimVector, RankArray, check_valid, ranks_to_mults

Subset = tuple[int, ...]


@dataclass(frozen=True)
class SubsetFlag:
    """tau_1 ⊂ tau_2 ⊂ ... ⊂ tau_h = [n] with #tau_i = a_i."""

    dim: DimVector
    tau: tuple[Subset, ...]

    def __post_init__(self):
        tau = tuple(tuple(sorted(t)) for t in self.tau)
        object.__setattr__(self, "tau", tau)
        d = self.dim
        if len(tau) != d.h:
            raise ShapeError(f"flag has {len(tau)} levels, expected {d.h}")
        for i, t in enumerate(tau, start=1):
            if len(t) != d.a(i) or len(set(t)) != len(t):
                raise ValueError(f"tau_{i} = {t} must have {d.a(i)} distinct elements")
            if t and (t[0] < 1 or t[-1] > d.total):
                raise ValueError(f"tau_{i} = {t} not inside [1, {d.total}]")
            if i > 1 and not set(tau[i - 2]) <= set(t):
                raise ValueError(f"tau_{i - 1} is not contained in tau_{i}")
        if tau[-1] != tuple(range(1, d.total + 1)):
            raise ValueError("last level must be [n]")

    def __getitem__(self, i: int) -> Subset:
        """1-based level access."""
        return self.tau[i - 1]

    def to_json(self) -> dict:
        return {"n": list(self.dim.n), "tau": [list(t) for t in self.tau]}

    @classmethod
    def from_json(cls, obj: Mapping | str) -> SubsetFlag:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(DimVector(tuple(obj["n"])), tuple(tuple(t) for t in obj["tau"]))

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, t)) + "}" for t in self.tau) + ")"


@dataclass(frozen=True)
class Permutation:
    """One-line notation: ``w[k-1] = w(k)``."""

    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if sorted(self.w) != list(range(1, len(self.w) + 1)):
            raise ValueError(f"{self.w} is not a permutation of 1..{len(self.w)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    def __len__(self):
        return len(self.w)

    def __call__(self, k: int) -> int:
        return self.w[k - 1]

    def image(self, ks: Sequence[int]) -> set[int]:
        return {self.w[k - 1] for k in ks}

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition: (self * other)(k) = self(other(k))."""
        if len(other) != len(self):
            raise ShapeError("permutations of different degree")
        return Permutation(tuple(self.w[k - 1] for k in other.w))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.w)
        for k, v in enumerate(self.w, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def embed(self, n: int) -> Permutation:
        """Extend to S_n by fixing n_old+1, ..., n."""
        return Permutation(self.w + tuple(range(len(self.w) + 1, n + 1)))

    def __str__(self):
        return "[" + ",".join(map(str, self.w)) + "]"


def all_permutations(n: int) -> Iterator[Permutation]:
    from itertools import permutations

    for w in permutations(range(1, n + 1)):
        yield Permutation(w)


def tau_max(dim: DimVector) -> SubsetFlag:
    h = dim.h
    levels: list[Subset] = [tuple(range(1, dim.total + 1))]
    for i in range(h - 1, 0, -1):
        above = levels[0]
        top = above[len(above) - dim.dim(i):] if dim.dim(i) else ()
        levels.insert(0, tuple(sorted(set(range(1, dim.a(i - 1) + 1)) | set(top))))
    return SubsetFlag(dim, tuple(levels))


def _interval_ending(end: int, length: int) -> range:
    return range(end - length + 1, end + 1)


def tau_r(r: RankArray) -> SubsetFlag:
    """The Bruhat-largest subset-flag with #([a_j] ∩ tau_i) = a_i - r_{i,j+1}."""
    check_valid(r)
    d = r.dim
    levels = []
    for i in range(1, d.h + 1):
        level = set(range(1, d.a(i - 1) + 1))
        for j in range(i, d.h + 1):
            level.update(_interval_ending(d.a(j), r[(i, j)] - r[(i, j + 1)]))
        levels.append(tuple(sorted(level)))
    return SubsetFlag(d, tuple(levels))


def tau_cardinality_defects(tau: SubsetFlag, r: RankArray) -> list[tuple[int, int]]:
    """Pairs (i, j) where #([a_j] ∩ tau_i) differs from its prescribed value."""
    d = r.dim
    bad = []
    for i in range(1, d.h + 1):
        for j in range(1, d.h + 1):
            want = d.a(i) - r[(i, j + 1)] if i <= j else d.a(j)
            got = sum(1 for x in tau[i] if x <= d.a(j))
            if got != want:
                bad.append((i, j))
    return bad


def ranks_from_tau(tau: SubsetFlag) -> RankArray:
    """Inverse of :func:`tau_r`; raises ValueError if ``tau`` is not of that form."""
    d = tau.dim
    values = {}
    for i in range(1, d.h + 1):
        for j in range(i, d.h):
            values[(i, j + 1)] = d.a(i) - sum(1 for x in tau[i] if x <= d.a(j))
    r = RankArray.from_dict(d, values)
    check_valid(r)
    if tau_r(r) != tau:
        raise ValueError(f"{tau} is not the flag attached to any rank array")
    return r


def bruhat_leq_subsets(s: Sequence[int], t: Sequence[int]) -> bool:
    if len(s) != len(t):
        raise ShapeError(f"subsets of different sizes: {len(s)} and {len(t)}")
    return all(a <= b for a, b in zip(sorted(s), sorted(t)))


def flag_leq(tau: SubsetFlag, other: SubsetFlag) -> bool:
    """Levelwise Bruhat comparison of two subset-flags."""
    if tau.dim != other.dim:
        raise ShapeError("flags over different dimension vectors")
    return all(bruhat_leq_subsets(a, b) for a, b in zip(tau.tau, other.tau))


def perm_to_subset_flag(w: Permutation, dim: DimVector) -> SubsetFlag:
    if len(w) != dim.total:
        raise ShapeError(f"permutation of degree {len(w)} for n = {dim.total}")
    return SubsetFlag(dim, tuple(tuple(sorted(w.w[:dim.a(i)])) for i in range(1, dim.h + 1)))


def min_coset_rep(tau: SubsetFlag) -> Permutation:
    """tau_1 ascending, then tau_2 \\ tau_1 ascending, and so on."""
    out: list[int] = []
    prev: set[int] = set()
    for t in tau.tau:
        out.extend(sorted(set(t) - prev))
        prev = set(t)
    return Permutation(tuple(out))


def bruhat_length(w: Permutation) -> int:
    ws = w.w
    return sum(1 for a in range(len(ws)) for b in range(a + 1, len(ws)) if ws[a] > ws[b])


def schubert_dim(tau: SubsetFlag) -> int:
    return bruhat_length(min_coset_rep(tau))


@dataclass(frozen=True)
class BlockPermMatrix:
    dim: DimVector
    t: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        h = self.dim.h
        t = tuple(tuple(int(x) for x in row) for row in self.t)
        object.__setattr__(self, "t", t)
        if len(t) != h or any(len(row) != h for row in t):
            raise ShapeError(f"block matrix must be {h}x{h}")
        if any(x < 0 for row in t for x in row):
            raise ValueError("block matrix entries must be non-negative")
        for i in range(h):
            if sum(t[i]) != self.dim.n[i]:
                raise ValueError(f"row {i + 1} sums to {sum(t[i])}, expected {self.dim.n[i]}")
            if sum(row[i] for row in t) != self.dim.n[i]:
                raise ValueError(f"column {i + 1} does not sum to {self.dim.n[i]}")

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.t]


def block_matrix(w: Permutation, dim: DimVector) -> BlockPermMatrix:
    if len(w) != dim.total:
        raise ShapeError(f"permutation of degree {len(w)} for n = {dim.total}")
    h = dim.h
    t = [[0] * h for _ in range(h)]
    for j in range(1, h + 1):
        for k in range(dim.a(j - 1) + 1, dim.a(j) + 1):
            v = w(k)
            i = next(i for i in range(1, h + 1) if v <= dim.a(i))
            t[i - 1][j - 1] += 1
    return BlockPermMatrix(dim, tuple(map(tuple, t)))


def block_of_tau_r(r: RankArray) -> BlockPermMatrix:
    """Block matrix of tau_r read directly off the multiplicities."""
    m = ranks_to_mults(r)
    h = r.dim.h
    t = [[0] * h for _ in range(h)]
    for i in range(1, h + 1):
        for j in range(1, i + 1):
            t[i - 1][j - 1] = m[(j, i + 1)]
        if i < h:
            t[i - 1][i] = sum(v for (k, l), v in m.entries if k < i + 1 < l)
    return BlockPermMatrix(r.dim, tuple(map(tuple, t)))


def mults_from_block(b: BlockPermMatrix):
    """Read multiplicities back from a block matrix in the shape produced by :func:`block_of_tau_r`."""
    from .quivercomb import MultArray, mults_to_ranks

    h = b.dim.h
    m = MultArray(b.dim, tuple(((j, i + 1), b.t[i - 1][j - 1]) for i in range(1, h + 1) for j in range(1, i + 1)))
    if block_of_tau_r(mults_to_ranks(m)) != b:
        raise ValueError("block matrix is not of the form attached to a rank array")
    return m


def subsets_of_size(n: int, k: int) -> Iterator[Subset]:
    return combinations(range(1, n + 1), k)
