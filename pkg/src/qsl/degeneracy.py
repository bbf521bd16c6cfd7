"""Universal degeneracy loci as quiver loci.

The maps F_1 -> F_2 -> ... -> F_m -> E_m -> ... -> E_1 with dim F_i = dim E_i = i
form an equioriented type-A quiver with dimension vector (1, ..., m, m, ..., 1).
For w in S_{m+1} the locus Omega_w asks rank(F_i -> E_j) <= #([i] ∩ w[j]).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import NotInOpenSet, ShapeError
from .exactalg import FieldMatrix, rng, subspace_intersection_dim
from .flagcomb import Permutation, bruhat_length, schubert_dim, tau_r
from .oracle import VerificationReport, _timed, enumerate_Z
from .quivercomb import DimVector, QuiverRep, RankArray, check_valid, in_quiver_variety, quiver_dim, rank_array_of


@dataclass(frozen=True)
class DegeneracyShape:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")

    @cached_property
    def dim(self) -> DimVector:
        up = tuple(range(1, self.m + 1))
        return DimVector(up + up[::-1])

    def F(self, i: int) -> int:
        """Vertex of F_i."""
        if not 1 <= i <= self.m:
            raise IndexError(f"F_{i} outside 1..{self.m}")
        return i

    def E(self, j: int) -> int:
        """Vertex of E_j."""
        if not 1 <= j <= self.m:
            raise IndexError(f"E_{j} outside 1..{self.m}")
        return 2 * self.m + 1 - j

    def map(self, rep: QuiverRep, src: int, dst: int) -> FieldMatrix:
        return rep.product(src, dst)


def _check_perm(w: Permutation, m: int) -> None:
    if len(w) != m + 1:
        raise ShapeError(f"w has degree {len(w)}, expected {m + 1}")


def omega_rank_array(w: Permutation, m: int) -> RankArray:
    _check_perm(w, m)
    shape = DegeneracyShape(m)
    values = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            values[(shape.F(i), shape.F(j))] = i
            values[(shape.E(j), shape.E(i))] = i
        for j in range(1, m + 1):
            values[(shape.F(i), shape.E(j))] = len(set(range(1, i + 1)) & w.image(range(1, j + 1)))
    return RankArray.from_dict(shape.dim, values)


def space_dim(m: int) -> int:
    return DegeneracyShape(m).dim.space_dim()


@dataclass(frozen=True)
class Codimension:
    codim: int
    length: int

    @property
    def equal(self) -> bool:
        return self.codim == self.length


def codim_omega(w: Permutation, m: int) -> Codimension:
    r = check_valid(omega_rank_array(w, m))
    return Codimension(space_dim(m) - quiver_dim(r), bruhat_length(w))


def in_omega(rep: QuiverRep, w: Permutation, m: int, only_cross: bool = False) -> bool:
    """Membership in Omega_w; ``only_cross`` keeps just the F_i -> E_j conditions."""
    shape = DegeneracyShape(m)
    if rep.dim != shape.dim:
        raise ShapeError(f"representation of shape ({rep.dim}), expected ({shape.dim})")
    r = omega_rank_array(w, m)
    if not only_cross:
        return in_quiver_variety(rep, r)
    return all(shape.map(rep, shape.F(i), shape.E(j)).rank() <= r[(shape.F(i), shape.E(j))]
               for i in range(1, m + 1) for j in range(1, m + 1))


def project(rep: QuiverRep, m: int) -> QuiverRep:
    """Forget F_{m+1} and E_{m+1}; F_m -> E_m becomes the composite through them."""
    big = DegeneracyShape(m + 1)
    if rep.dim != big.dim:
        raise ShapeError(f"representation of shape ({rep.dim}), expected ({big.dim})")
    mats = rep.mats
    k = m  # index of F_m -> F_{m+1} among the arrows
    middle = mats[k + 1] @ mats[k] @ mats[k - 1]
    return QuiverRep(DegeneracyShape(m).dim, mats[:k - 1] + (middle,) + mats[k + 2:], rep.p)


@_timed
def stability_check(w: Permutation, m: int, q: int) -> VerificationReport:
    """Omega_w(m+1) = pi^{-1} Omega_w(m), with w fixing m + 2 in S_{m+2}."""
    _check_perm(w, m)
    report = VerificationReport("stability", {"w": list(w.w), "m": m, "q": q})
    upstairs = omega_rank_array(w.embed(m + 2), m + 1)
    downstairs = omega_rank_array(w, m)
    inside = 0
    for rep in enumerate_Z(DegeneracyShape(m + 1).dim, q):
        a = rank_array_of(rep) <= upstairs
        b = rank_array_of(project(rep, m)) <= downstairs
        inside += a
        report.record(a == b, {"point": list(rep.flat()), "upstairs": a, "downstairs": b})
    report.details = {"points_in_omega": inside}
    return report


def _points(m: int, q: int, samples: int | None, seed: int | None) -> Iterable[QuiverRep]:
    dim = DegeneracyShape(m).dim
    if samples is None:
        yield from enumerate_Z(dim, q)
        return
    rand: random.Random = rng(seed)
    for _ in range(samples):
        yield QuiverRep.from_flat(dim, [rand.randrange(q) for _ in range(dim.space_dim())], q)


@_timed
def superfluous_check(m: int, q: int, samples: int | None = None, seed: int | None = None) -> VerificationReport:
    """Dropping the F_i -> F_j and E_j -> E_i conditions does not change Omega_w.

    Exhaustive when ``samples`` is None, otherwise on that many random points.
    Every w in S_{m+1} is tested at every point.
    """
    report = VerificationReport("superfluous", {"m": m, "q": q, "samples": samples})
    shape = DegeneracyShape(m)
    perms = [Permutation(p) for p in itertools.permutations(range(1, m + 2))]
    arrays = {w: omega_rank_array(w, m) for w in perms}
    cross = [(shape.F(i), shape.E(j)) for i in range(1, m + 1) for j in range(1, m + 1)]
    for rep in _points(m, q, samples, seed):
        ranks = rank_array_of(rep)
        for w in perms:
            r = arrays[w]
            full = ranks <= r
            partial = all(ranks[ij] <= r[ij] for ij in cross)
            report.record(full == partial, {"w": list(w.w), "point": list(rep.flat())})
    return report


# -- flag pairs on the open set ---------------------------------------------

def open_set_failure(rep: QuiverRep, m: int) -> str | None:
    """Why ``rep`` (on the shape for m + 1) is outside Z°, or None."""
    shape = DegeneracyShape(m + 1)
    if rep.dim != shape.dim:
        raise ShapeError(f"representation of shape ({rep.dim}), expected ({shape.dim})")
    for i in range(1, m + 1):
        if shape.map(rep, shape.F(i), shape.F(i + 1)).rank() != i:
            return f"F_{i} -> F_{i + 1} is not injective"
        if shape.map(rep, shape.E(i + 1), shape.E(i)).rank() != i:
            return f"E_{i + 1} -> E_{i} is not surjective"
    if shape.map(rep, shape.F(m + 1), shape.E(m + 1)).rank() != m + 1:
        return f"F_{m + 1} -> E_{m + 1} is not bijective"
    return None


def _kernel(mat: FieldMatrix) -> FieldMatrix:
    """Basis of the null space as columns."""
    rows, cols, p = mat.rows, mat.cols, mat.p
    a = [list(r) for r in mat.data]
    pivots = []
    row = 0
    for c in range(cols):
        piv = next((k for k in range(row, rows) if a[k][c]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = pow(a[row][c], p - 2, p)
        a[row] = [x * inv % p for x in a[row]]
        for k in range(rows):
            if k != row and a[k][c]:
                f = a[k][c]
                a[k] = [(x - f * y) % p for x, y in zip(a[k], a[row])]
        pivots.append(c)
        row += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for k, pc in enumerate(pivots):
            v[pc] = -a[k][fc] % p
        basis.append(v)
    return FieldMatrix.from_rows([[v[r] for v in basis] for r in range(cols)], p, cols=len(basis))


@dataclass(frozen=True)
class FlagPairResult:
    condition: bool
    in_omega: bool
    intersections: tuple[tuple[int, ...], ...]  # dim(V_i ∩ U_j), i = 1..m+1, j = 1..m

    @property
    def agree(self) -> bool:
        return self.condition == self.in_omega


CONVENTIONS = ("literal", "derived")


def flag_pair_condition(rep: QuiverRep, w: Permutation, m: int, convention: str = "literal") -> FlagPairResult:
    """The flag-pair test on Z°, reported next to direct membership in Omega_w.

    V_i = Im(F_i -> E_{m+1}) and U_j = Ker(E_{m+1} -> E_{m+1-j}).

    ``literal``: dim(V_i ∩ U_j) <= #(w w0 [i] ∩ [j]).
    ``derived``: dim(V_i ∩ U_j) >= #(w w0 [j] ∩ [i]), which is what
    rank(F_i -> E_k) = i - dim(V_i ∩ U_{m+1-k}) turns the rank conditions into.
    """
    _check_perm(w, m)
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    bad = open_set_failure(rep, m)
    if bad is not None:
        raise NotInOpenSet(bad)
    shape = DegeneracyShape(m + 1)
    top = shape.E(m + 1)
    ww0 = w * Permutation.longest(m + 1)
    inter = []
    for i in range(1, m + 2):
        v = shape.map(rep, shape.F(i), top)
        row = []
        for j in range(1, m + 1):
            u = _kernel(shape.map(rep, top, shape.E(m + 1 - j)))
            row.append(subspace_intersection_dim(v, u))
        inter.append(tuple(row))
    ok = True
    for i in range(1, m + 2):
        for j in range(1, m + 1):
            d = inter[i - 1][j - 1]
            if convention == "literal":
                bound = len(ww0.image(range(1, i + 1)) & set(range(1, j + 1)))
                ok &= d <= bound
            else:
                bound = len(ww0.image(range(1, j + 1)) & set(range(1, i + 1)))
                ok &= d >= bound
    member = in_omega(rep, w.embed(m + 2), m + 1)
    return FlagPairResult(bool(ok), member, tuple(inter))


@_timed
def flag_pair_agreement(w: Permutation, m: int, q: int, convention: str = "literal") -> VerificationReport:
    """Count agreements between the flag-pair test and Omega_w over Z°(F_q).

    This measures the relationship; a disagreement is data, so the report's
    ``failures`` field counts disagreements without judging them.
    """
    report = VerificationReport("flag_pair", {"w": list(w.w), "m": m, "q": q, "convention": convention})
    open_points = 0
    for rep in enumerate_Z(DegeneracyShape(m + 1).dim, q):
        if open_set_failure(rep, m) is not None:
            continue
        open_points += 1
        res = flag_pair_condition(rep, w, m, convention)
        report.record(res.agree, {"point": list(rep.flat()), "condition": res.condition, "in_omega": res.in_omega})
    report.details = {"open_points": open_points}
    return report


@_timed
def verify_codimension(m: int) -> VerificationReport:
    report = VerificationReport("codimension", {"m": m})
    rows = []
    for p in itertools.permutations(range(1, m + 2)):
        w = Permutation(p)
        c = codim_omega(w, m)
        report.record(c.equal, {"w": list(p), "codim": c.codim, "length": c.length})
        rows.append({"w": list(p), "codim": c.codim, "length": c.length})
    report.details = {"permutations": rows}
    return report


def schubert_crosscheck(w: Permutation, m: int) -> tuple[int, int]:
    r = omega_rank_array(w, m)
    return quiver_dim(r), schubert_dim(tau_r(r))
