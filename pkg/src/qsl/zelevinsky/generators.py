"""Generator families of the determinantal and Plücker ideals.

Families
--------
``I_tau``  Plücker coordinates p_sigma with sigma not below tau_i.
``J_r``    (r_ij + 1)-minors of A_{j-1} ... A_i on the quiver space.
``I0``     I(tau_max) plus the J_r minors pulled back along zeta, i.e. minors
           of the products of consecutive subdiagonal blocks.
``I1``     I(tau_max) plus (r_ij + 1)-minors of the big-cell matrix with rows
           in [a_{j-1} + 1, n] and columns in [a_i].
``I2``     I(tau_r).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import ShapeError
from ..exactalg import FieldMatrix, MultiPoly, PolyMatrix, PolyRing, minor
from ..flagcomb import SubsetFlag, bruhat_leq_subsets, tau_max, tau_r
from ..quivercomb import DimVector, QuiverRep, RankArray, check_valid
from .bigcell import BigCellPoint, lower_blocks, plucker

FAMILIES = ("I_tau", "J_r", "I0", "I1", "I2")


@dataclass(frozen=True)
class GeneratorDescriptor:
    family: str
    kind: str  # "plucker" or "minor"
    level: int = 0
    sigma: tuple[int, ...] = ()
    i: int = 0
    j: int = 0
    lam: tuple[int, ...] = ()
    mu: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.kind not in ("plucker", "minor"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "minor" and len(self.lam) != len(self.mu):
            raise ShapeError("row and column sets differ in size")

    def to_json(self) -> dict:
        if self.kind == "plucker":
            return {"family": self.family, "level": self.level, "sigma": list(self.sigma)}
        return {"family": self.family, "i": self.i, "j": self.j, "lambda": list(self.lam), "mu": list(self.mu)}

    @classmethod
    def from_json(cls, obj: dict) -> GeneratorDescriptor:
        if "sigma" in obj:
            return cls(obj["family"], "plucker", level=obj["level"], sigma=tuple(obj["sigma"]))
        return cls(obj["family"], "minor", i=obj["i"], j=obj["j"], lam=tuple(obj["lambda"]), mu=tuple(obj["mu"]))


def plucker_generators(tau: SubsetFlag, family: str = "I_tau") -> list[GeneratorDescriptor]:
    dim = tau.dim
    seen: set[tuple[int, ...]] = set()
    out = []
    for i in range(1, dim.h + 1):
        for sigma in combinations(range(1, dim.total + 1), dim.a(i)):
            if sigma not in seen and not bruhat_leq_subsets(sigma, tau[i]):
                seen.add(sigma)
                out.append(GeneratorDescriptor(family, "plucker", level=i, sigma=sigma))
    return out


def _minor_generators(family: str, r: RankArray, rows_for, cols_for) -> list[GeneratorDescriptor]:
    out = []
    h = r.dim.h
    for i in range(1, h + 1):
        for j in range(i + 1, h + 1):
            size = r[(i, j)] + 1
            for lam in combinations(rows_for(i, j), size):
                for mu in combinations(cols_for(i, j), size):
                    out.append(GeneratorDescriptor(family, "minor", i=i, j=j, lam=lam, mu=mu))
    return out


def generators(family: str, dim: DimVector, r: RankArray | None = None,
               tau: SubsetFlag | None = None) -> list[GeneratorDescriptor]:
    if family == "I_tau":
        if tau is None:
            raise ValueError("I_tau needs a subset-flag")
        return plucker_generators(tau)
    if r is None:
        raise ValueError(f"{family} needs a rank array")
    if r.dim != dim:
        raise ShapeError("rank array does not match the dimension vector")
    check_valid(r)
    if family == "J_r":
        return _minor_generators("J_r", r, lambda i, j: range(1, dim.dim(j) + 1),
                                 lambda i, j: range(1, dim.dim(i) + 1))
    if family == "I0":
        return plucker_generators(tau_max(dim), "I0") + _minor_generators(
            "I0", r, lambda i, j: range(1, dim.dim(j) + 1), lambda i, j: range(1, dim.dim(i) + 1))
    if family == "I1":
        return plucker_generators(tau_max(dim), "I1") + _minor_generators(
            "I1", r, lambda i, j: range(dim.a(j - 1) + 1, dim.total + 1), lambda i, j: range(1, dim.a(i) + 1))
    if family == "I2":
        return [g for g in plucker_generators(tau_r(r), "I2") if g.level < dim.h]
    raise ValueError(f"unknown family {family!r}")


def block_chain(point: BigCellPoint, i: int, j: int) -> FieldMatrix:
    """A_{j,j-1} A_{j-1,j-2} ... A_{i+1,i} built from subdiagonal blocks."""
    out = FieldMatrix.identity(point.dim.dim(i), point.p)
    for k in range(i, j):
        out = point.block(k + 1, k) @ out
    return out


def eval_generator(g: GeneratorDescriptor, point: BigCellPoint | QuiverRep) -> int:
    if g.family == "J_r":
        if not isinstance(point, QuiverRep):
            raise TypeError("J_r generators are evaluated on quiver representations")
        return minor(point.product(g.i, g.j), g.lam, g.mu)
    if not isinstance(point, BigCellPoint):
        raise TypeError(f"{g.family} generators are evaluated on big-cell points")
    if g.kind == "plucker":
        return plucker(point, g.sigma)
    if g.family == "I0":
        return minor(block_chain(point, g.i, g.j), g.lam, g.mu)
    return minor(point.matrix, g.lam, g.mu)


def first_nonvanishing(gens: Iterable[GeneratorDescriptor], point) -> GeneratorDescriptor | None:
    for g in gens:
        if eval_generator(g, point):
            return g
    return None


def vanishes(gens: Iterable[GeneratorDescriptor], point) -> bool:
    return first_nonvanishing(gens, point) is None


def in_Y_via_plucker(point: BigCellPoint, tau: SubsetFlag) -> bool:
    if point.dim != tau.dim:
        raise ShapeError("point and flag have different dimension vectors")
    return vanishes(plucker_generators(tau), point)


# -- generic (symbolic) points ------------------------------------------

def big_cell_ring(dim: DimVector) -> PolyRing:
    names = []
    for i, j in lower_blocks(dim):
        for k in range(dim.a(i - 1) + 1, dim.a(i) + 1):
            for l in range(dim.a(j - 1) + 1, dim.a(j) + 1):
                names.append(f"a_{k}_{l}")
    return PolyRing(sorted(names, key=lambda s: tuple(int(t) for t in s.split("_")[1:])))


def generic_big_cell(dim: DimVector) -> PolyMatrix:
    ring = big_cell_ring(dim)
    n = dim.total
    names = set(ring.variables)
    rows = []
    for k in range(1, n + 1):
        row = []
        for l in range(1, n + 1):
            name = f"a_{k}_{l}"
            row.append(ring.gen(name) if name in names else ring(int(k == l)))
        rows.append(row)
    return PolyMatrix.from_rows(ring, rows, cols=n)


def quiver_ring(dim: DimVector) -> PolyRing:
    return PolyRing(f"A{t}_{r}_{c}" for t in range(1, dim.h)
                    for r in range(1, dim.dim(t + 1) + 1) for c in range(1, dim.dim(t) + 1))


def generic_quiver(dim: DimVector) -> list[PolyMatrix]:
    ring = quiver_ring(dim)
    return [PolyMatrix.from_rows(ring, [[ring.gen(f"A{t}_{r}_{c}") for c in range(1, dim.dim(t) + 1)]
                                        for r in range(1, dim.dim(t + 1) + 1)], cols=dim.dim(t))
            for t in range(1, dim.h)]


def generic_product(mats: Sequence[PolyMatrix], dim: DimVector, i: int, j: int) -> PolyMatrix:
    """A_{j-1} ... A_i over the quiver ring (identity when i = j)."""
    ring = PolyRing(mats[0].variables) if mats else quiver_ring(dim)
    out = PolyMatrix.identity(ring, dim.dim(i))
    for k in range(i, j):
        out = mats[k - 1] @ out
    return out


def generic_zeta(dim: DimVector) -> PolyMatrix:
    """zeta of the generic representation, as an n x n matrix over the quiver ring."""
    ring = quiver_ring(dim)
    mats = generic_quiver(dim)
    n = dim.total
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(1, dim.h + 1):
        for j in range(1, i + 1):
            blk = generic_product(mats, dim, j, i)
            for a, k in enumerate(dim.block(i)):
                for b, l in enumerate(dim.block(j)):
                    rows[k][l] = blk[a, b]
    return PolyMatrix.from_rows(ring, rows, cols=n)


def zeta_pullback(f: MultiPoly, dim: DimVector) -> MultiPoly:
    """zeta^*: k[O] -> k[Z]."""
    z = generic_zeta(dim)
    images = {}
    for name in f.variables:
        _, k, l = name.split("_")
        images[name] = z[int(k) - 1, int(l) - 1]
    return f.substitute(images, quiver_ring(dim).variables)


def generator_polynomial(g: GeneratorDescriptor, dim: DimVector) -> MultiPoly:
    """The generator as a polynomial: on k[Z] for J_r, on k[O] otherwise."""
    if g.family == "J_r":
        return minor(generic_product(generic_quiver(dim), dim, g.i, g.j), g.lam, g.mu)
    a = generic_big_cell(dim)
    if g.kind == "plucker":
        return minor(a, g.sigma, range(1, len(g.sigma) + 1))
    if g.family == "I0":
        ring = PolyRing(a.variables)
        chain = PolyMatrix.identity(ring, dim.dim(g.i))
        for k in range(g.i, g.j):
            chain = a.submatrix(dim.block(k + 1), dim.block(k)) @ chain
        return minor(chain, g.lam, g.mu)
    return minor(a, g.lam, g.mu)
