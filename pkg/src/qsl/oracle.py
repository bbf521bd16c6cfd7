"""Exhaustive checks over F_q.

Everything here enumerates points of affine spaces or elements of finite
groups outright. Sizes are capped and going over a cap raises
:class:`CapExceeded` instead of sampling.
"""
from __future__ import annotations

import itertools
import json
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .errors import CapExceeded
from .exactalg import FieldMatrix, check_modulus
from .flagcomb import flag_leq, schubert_dim, tau_max, tau_r
from .quivercomb import (DimVector, GroupElement, QuiverRep, RankArray, act, enumerate_gl, enumerate_rank_arrays,
                         group_order, in_quiver_variety, quiver_dim, rank_array_of)
from .zelevinsky import (BigCellPoint, big_cell_dim, rank_condition_failure, enumerate_big_cell, generators,
                         in_schubert, in_Y_via_plucker, vanishes, zeta, zeta_inverse)

CAP_POINTS = 10**7
CAP_GROUP = 10**6
DEFAULT_FIELDS = (2, 3)


@dataclass
class VerificationReport:
    scenario: str
    params: dict[str, Any]
    tested: int = 0
    agreements: int = 0
    failures: int = 0
    counterexample: Any = None
    details: dict[str, Any] = field(default_factory=dict)
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: Any = None) -> None:
        self.tested += 1
        if ok:
            self.agreements += 1
        else:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = witness

    def to_json(self, timings: bool = False) -> dict:
        out = {"scenario": self.scenario, "params": self.params, "passed": self.passed, "tested": self.tested,
               "agreements": self.agreements, "failures": self.failures,
               "counterexample": self.counterexample, "details": self.details}
        if timings:
            out["wall_time"] = self.wall_time
        return out

    def tsv_row(self, timings: bool = False) -> list[str]:
        params = ";".join(f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in self.params.items())
        row = [self.scenario, params, "PASS" if self.passed else "FAIL", str(self.tested),
               str(self.agreements), str(self.failures)]
        if timings:
            row.append(f"{self.wall_time:.3f}" if self.wall_time is not None else "")
        return row

    def to_tsv(self, timings: bool = False) -> str:
        return reports_to_tsv([self], timings)


TSV_HEADER = ["scenario", "params", "status", "tested", "agreements", "failures"]


def reports_to_tsv(reports: list[VerificationReport], timings: bool = False) -> str:
    rows = [TSV_HEADER + (["wall_time"] if timings else [])] + [rep.tsv_row(timings) for rep in reports]
    return "".join("\t".join(row) + "\n" for row in rows)


def _timed(fn: Callable[..., VerificationReport]) -> Callable[..., VerificationReport]:
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_time = time.perf_counter() - start
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceeded(f"{what} has {size} elements, over the cap of {cap}")


# -- enumeration -----------------------------------------------------------

def enumerate_Z(dim: DimVector, q: int, cap: int = CAP_POINTS) -> Iterator[QuiverRep]:
    """All representations over F_q, lexicographic in the flattened entries."""
    check_modulus(q)
    _check_cap(q ** dim.space_dim(), cap, f"Z({dim}) over F_{q}")
    for values in itertools.product(range(q), repeat=dim.space_dim()):
        yield QuiverRep.from_flat(dim, values, q)


def enumerate_O(dim: DimVector, q: int, cap: int = CAP_POINTS) -> Iterator[BigCellPoint]:
    check_modulus(q)
    _check_cap(q ** big_cell_dim(dim), cap, f"big cell for ({dim}) over F_{q}")
    return enumerate_big_cell(dim, q)


def enumerate_group(dim: DimVector, q: int, cap: int = CAP_GROUP) -> Iterator[GroupElement]:
    _check_cap(group_order(dim, q), cap, f"G({dim}) over F_{q}")
    per_vertex = [list(enumerate_gl(x, q)) for x in dim.n]
    for blocks in itertools.product(*per_vertex):
        yield GroupElement(dim, tuple(blocks), q)


def group_generators(dim: DimVector, q: int) -> list[GroupElement]:
    """Transvections 1 + E_ab and diag(c, 1, ..., 1) at each vertex; together they generate G."""
    gens = []
    for v, size in enumerate(dim.n):
        mats = []
        for a in range(size):
            for b in range(size):
                if a != b:
                    rows = [[int(x == y) for y in range(size)] for x in range(size)]
                    rows[a][b] = 1
                    mats.append(rows)
        if size:
            for c in range(2, q):
                rows = [[int(x == y) for y in range(size)] for x in range(size)]
                rows[0][0] = c
                mats.append(rows)
        for rows in mats:
            blocks = [FieldMatrix.identity(x, q) for x in dim.n]
            blocks[v] = FieldMatrix.from_rows(rows, q, cols=size)
            gens.append(GroupElement(dim, tuple(blocks), q))
    return gens


def orbits(dim: DimVector, q: int, cap_points: int = CAP_POINTS,
           cap_group: int = CAP_GROUP) -> tuple[list[list[tuple[int, ...]]], str]:
    """G(F_q)-orbits on Z(F_q) as lists of flattened points, plus the method used."""
    points = [rep.flat() for rep in enumerate_Z(dim, q, cap_points)]
    seen: set[tuple[int, ...]] = set()
    out = []
    if group_order(dim, q) <= cap_group:
        group = list(enumerate_group(dim, q, cap_group))
        method = "group"
        for pt in points:
            if pt in seen:
                continue
            rep = QuiverRep.from_flat(dim, pt, q)
            orbit = {act(g, rep).flat() for g in group}
            seen |= orbit
            out.append(sorted(orbit))
        return out, method
    gens = group_generators(dim, q)
    method = "generators"
    for pt in points:
        if pt in seen:
            continue
        orbit = {pt}
        queue = deque([pt])
        while queue:
            rep = QuiverRep.from_flat(dim, queue.popleft(), q)
            for g in gens:
                img = act(g, rep).flat()
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
        seen |= orbit
        out.append(sorted(orbit))
    return out, method


# -- verifications -----------------------------------------------------------

@_timed
def verify_orbits(dim: DimVector, q: int, cap_points: int = CAP_POINTS,
                  cap_group: int = CAP_GROUP) -> VerificationReport:
    """Orbits coincide with the fibers of the rank-array map."""
    report = VerificationReport("orbits", {"n": list(dim.n), "q": q})
    orbs, method = orbits(dim, q, cap_points, cap_group)
    valid = enumerate_rank_arrays(dim)
    labels = []
    for orb in orbs:
        ranks = {rank_array_of(QuiverRep.from_flat(dim, pt, q)) for pt in orb}
        report.record(len(ranks) == 1, {"orbit_point": list(orb[0]), "rank_arrays": len(ranks)})
        labels.append(next(iter(ranks)))
    distinct = set(labels)
    report.record(len(distinct) == len(labels), "two orbits share a rank array")
    report.record(distinct == set(valid), "orbit rank arrays differ from the valid rank arrays")
    report.details = {
        "method": method,
        "orbit_count": len(orbs),
        "rank_array_count": len(valid),
        "orbits": [{"r": r.to_json()["r"], "size": len(o)} for r, o in sorted(zip(labels, orbs),
                                                                             key=lambda x: x[0].values())],
    }
    return report


@_timed
def verify_zelevinsky(dim: DimVector, r: RankArray, q: int, cap_points: int = CAP_POINTS) -> VerificationReport:
    """zeta is injective and carries Z(r) onto Y(tau_r) ∩ O, computed three ways."""
    report = VerificationReport("zelevinsky", {"n": list(dim.n), "r": r.to_json()["r"], "q": q})
    reps = list(enumerate_Z(dim, q, cap_points))
    images = {}
    for rep in reps:
        pt = zeta(rep)
        report.record(zeta_inverse(pt) == rep, {"roundtrip": list(rep.flat())})
        images[pt.flat()] = rep
    report.record(len(images) == len(reps), "zeta is not injective")

    image_r = {k for k, rep in images.items() if in_quiver_variety(rep, r)}
    tau = tau_r(r)
    plucker_set, rank_set, schubert_set, tau_max_set = set(), set(), set(), set()
    tmax = tau_max(dim)
    for pt in enumerate_O(dim, q, cap_points):
        key = pt.flat()
        if in_Y_via_plucker(pt, tau):
            plucker_set.add(key)
        if rank_condition_failure(pt, r) is None:
            rank_set.add(key)
        if in_schubert(pt, tau):
            schubert_set.add(key)
        if in_Y_via_plucker(pt, tmax):
            tau_max_set.add(key)
    for name, other in (("plucker", plucker_set), ("rank_condition", rank_set), ("schubert", schubert_set)):
        diff = sorted(image_r ^ other)
        report.record(not diff, {"set": name, "point": list(diff[0]) if diff else None})
    diff = sorted(set(images) ^ tau_max_set)
    report.record(not diff, {"set": "tau_max", "point": list(diff[0]) if diff else None})
    report.details = {"image_size": len(image_r), "plucker_size": len(plucker_set), "rank_condition_size": len(rank_set),
                      "schubert_size": len(schubert_set), "big_cell_size": q ** big_cell_dim(dim)}
    return report


@_timed
def verify_ideal_chain(dim: DimVector, r: RankArray, q: int, cap_points: int = CAP_POINTS) -> VerificationReport:
    """V(I0) ⊆ V(I1) ⊆ V(I2), each checked on its own, then three-way equality."""
    report = VerificationReport("ideals", {"n": list(dim.n), "r": r.to_json()["r"], "q": q})
    fams = {name: generators(name, dim, r) for name in ("I0", "I1", "I2")}
    loci: dict[str, set] = {name: set() for name in fams}
    for pt in enumerate_O(dim, q, cap_points):
        for name, gens in fams.items():
            if vanishes(gens, pt):
                loci[name].add(pt.flat())
    v0, v1, v2 = loci["I0"], loci["I1"], loci["I2"]
    for label, small, big in (("V(I0) ⊆ V(I1)", v0, v1), ("V(I1) ⊆ V(I2)", v1, v2)):
        extra = sorted(small - big)
        report.record(not extra, {"check": label, "point": list(extra[0]) if extra else None})
    for label, a, b in (("V(I0) = V(I1)", v0, v1), ("V(I1) = V(I2)", v1, v2)):
        diff = sorted(a ^ b)
        report.record(not diff, {"check": label, "point": list(diff[0]) if diff else None})
    report.details = {"locus_sizes": {k: len(v) for k, v in loci.items()},
                      "generator_counts": {k: len(v) for k, v in fams.items()}}
    return report


@_timed
def verify_dim_crosscheck(dim: DimVector) -> VerificationReport:
    report = VerificationReport("dim", {"n": list(dim.n)})
    rows = []
    for r in enumerate_rank_arrays(dim):
        a, b = quiver_dim(r), schubert_dim(tau_r(r))
        report.record(a == b, {"r": r.to_json()["r"], "quiver_dim": a, "schubert_dim": b})
        rows.append({"r": r.to_json()["r"], "quiver_dim": a, "schubert_dim": b, "tau": str(tau_r(r))})
    report.details = {"arrays": rows}
    return report


# -- degeneration order ------------------------------------------------------

@dataclass
class Poset:
    dim: DimVector
    nodes: list[RankArray]
    edges: list[tuple[int, int]]  # (upper, lower) covering pairs, node indices

    def label(self, k: int) -> str:
        r = self.nodes[k]
        ranks = ",".join(str(v) for v in r.values())
        return f"r=({ranks}) dim={quiver_dim(r)} tau={tau_r(r)}"

    def to_dot(self) -> str:
        lines = [f'digraph "degenerations n=({self.dim})" {{', "  rankdir=BT;"]
        for k in range(len(self.nodes)):
            lines.append(f'  n{k} [label="{self.label(k)}"];')
        for hi, lo in self.edges:
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"n": list(self.dim.n),
                "nodes": [{"id": k, "r": r.to_json()["r"], "dim": quiver_dim(r), "tau": tau_r(r).to_json()["tau"]}
                          for k, r in enumerate(self.nodes)],
                "covers": [{"upper": hi, "lower": lo} for hi, lo in self.edges]}


def degeneration_poset(dim: DimVector) -> Poset:
    """Valid rank arrays under componentwise order, with covering relations."""
    nodes = sorted(enumerate_rank_arrays(dim), key=lambda r: (sum(r.values()), r.values()))
    below = {(a, b) for a in range(len(nodes)) for b in range(len(nodes)) if nodes[b] < nodes[a]}
    edges = []
    for a, b in sorted(below):
        if not any((a, c) in below and (c, b) in below for c in range(len(nodes))):
            edges.append((a, b))
    return Poset(dim, nodes, edges)


def poset_bruhat_agreement(dim: DimVector) -> list[tuple[RankArray, RankArray]]:
    """Pairs where componentwise order and Bruhat order on tau_r disagree."""
    arrays = enumerate_rank_arrays(dim)
    flags = [tau_r(r) for r in arrays]
    return [(r, s) for (r, f), (s, g) in itertools.product(zip(arrays, flags), repeat=2)
            if (r <= s) != flag_leq(f, g)]
