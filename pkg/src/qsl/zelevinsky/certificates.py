"""Polynomial-identity certificates for the containments I0 ⊃ I1 ⊃ I2.

Each routine proves its identity symbolically when the matrices involved are
small (side <= ``SYMBOLIC_CAP``) and otherwise falls back to evaluation at
random points of F_p, p = 2^31 - 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable

from ..errors import ShapeError
from ..exactalg import (DEFAULT_TRIALS, LARGE_PRIME, SYMBOLIC_CAP, FieldMatrix, PolyMatrix, PolyRing,
                        minor, rng)
from ..flagcomb import bruhat_leq_subsets, tau_r
from ..quivercomb import DimVector, RankArray, check_valid
from .generators import (GeneratorDescriptor, generators, generic_big_cell, generic_product, generic_quiver,
                         generic_zeta, quiver_ring)


@dataclass
class IdentityReport:
    name: str
    method: str  # "symbolic" or "randomized"
    checked: list[Any] = field(default_factory=list)
    failures: list[Any] = field(default_factory=list)
    trials: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "method": self.method, "checked": len(self.checked),
                "trials": self.trials, "failures": [str(f) for f in self.failures], "passed": self.passed}


def _random_matrix(rows: int, cols: int, rand) -> FieldMatrix:
    return FieldMatrix.from_rows([[rand.randrange(LARGE_PRIME) for _ in range(cols)] for _ in range(rows)],
                                 LARGE_PRIME, cols=cols)


def cauchy_binet_certificate(k: int, m: int, l: int, size: int, *, trials: int = DEFAULT_TRIALS,
                             seed: int | None = None) -> IdentityReport:
    """det(XY)_{λ×μ} = Σ_ν det X_{λ×ν} det Y_{ν×μ} for generic X (k×m), Y (m×l), all λ, μ of ``size``."""
    if not 1 <= size <= min(k, l):
        raise ValueError(f"minor size {size} must lie in [1, min(k, l) = {min(k, l)}]")
    name = f"cauchy-binet k={k} m={m} l={l} size={size}"
    pairs = [(lam, mu) for lam in combinations(range(1, k + 1), size) for mu in combinations(range(1, l + 1), size)]
    nus = list(combinations(range(1, m + 1), size))

    if max(k, m, l) <= SYMBOLIC_CAP:
        ring = PolyRing([f"x_{i}_{j}" for i in range(1, k + 1) for j in range(1, m + 1)]
                        + [f"y_{i}_{j}" for i in range(1, m + 1) for j in range(1, l + 1)])
        x = PolyMatrix.generic(ring, k, m, "x")
        y = PolyMatrix.generic(ring, m, l, "y")
        report = IdentityReport(name, "symbolic")
        xy = x @ y
        xminors = {(lam, nu): minor(x, lam, nu) for lam in combinations(range(1, k + 1), size) for nu in nus}
        yminors = {(nu, mu): minor(y, nu, mu) for nu in nus for mu in combinations(range(1, l + 1), size)}
        for lam, mu in pairs:
            rhs = ring.zero
            for nu in nus:
                rhs = rhs + xminors[(lam, nu)] * yminors[(nu, mu)]
            (report.checked if minor(xy, lam, mu) == rhs else report.failures).append((lam, mu))
        return report

    report = IdentityReport(name, "randomized", trials=trials)
    rand = rng(seed)
    for t in range(trials):
        x = _random_matrix(k, m, rand)
        y = _random_matrix(m, l, rand)
        xy = x @ y
        for lam, mu in pairs:
            rhs = sum(minor(x, lam, nu) * minor(y, nu, mu) for nu in nus) % LARGE_PRIME
            (report.checked if minor(xy, lam, mu) == rhs else report.failures).append((t, lam, mu))
    return report


def _stack(parts: list, vertical: bool):
    out = parts[0]
    for p in parts[1:]:
        out = out.vstack(p) if vertical else out.hstack(p)
    return out


def factorization_blocks(mats: list, dim: DimVector, i: int, j: int, identity: Callable[[int], Any]):
    """(Ã, tail, middle, head) for the product A_j ... A_i, 1 <= i <= j < h.

    Ã is the part of the zeta matrix in block rows j+1..h and block columns
    1..i; the claim is Ã = tail · middle · head.
    """
    h = dim.h

    def prod(lo: int, hi: int):
        # A_{hi-1} ... A_lo, identity when lo == hi
        out = identity(dim.dim(lo))
        for k in range(lo, hi):
            out = mats[k - 1] @ out
        return out

    a_tilde = _stack([_stack([prod(c, row) for c in range(1, i + 1)], vertical=False)
                      for row in range(j + 1, h + 1)], vertical=True)
    tail = _stack([prod(j + 1, row) for row in range(j + 1, h + 1)], vertical=True)
    middle = prod(i, j + 1)
    head = _stack([prod(c, i) for c in range(1, i + 1)], vertical=False)
    return a_tilde, tail, middle, head


def factorization_check(dim: DimVector, i: int, j: int, *, trials: int = DEFAULT_TRIALS,
                               seed: int | None = None) -> IdentityReport:
    h = dim.h
    if not 1 <= i <= j < h:
        raise ValueError(f"need 1 <= i <= j < h, got i={i}, j={j}, h={h}")
    name = f"factorization n=({dim}) i={i} j={j}"
    if max(dim.n) <= SYMBOLIC_CAP:
        ring = quiver_ring(dim)
        mats = generic_quiver(dim)
        a_tilde, tail, middle, head = factorization_blocks(mats, dim, i, j, lambda s: PolyMatrix.identity(ring, s))
        report = IdentityReport(name, "symbolic")
        (report.checked if a_tilde == tail @ middle @ head else report.failures).append((i, j))
        return report
    report = IdentityReport(name, "randomized", trials=trials)
    rand = rng(seed)
    for t in range(trials):
        mats = [_random_matrix(dim.dim(s + 1), dim.dim(s), rand) for s in range(1, h)]
        a_tilde, tail, middle, head = factorization_blocks(mats, dim, i, j,
                                                    lambda s: FieldMatrix.identity(s, LARGE_PRIME))
        (report.checked if a_tilde == tail @ middle @ head else report.failures).append(t)
    return report


@dataclass
class LaplaceCertificate:
    sigma: tuple[int, ...]
    level: int
    t: int
    s: int
    rows_first: tuple[int, ...]
    terms: list[tuple[int, tuple[int, ...], tuple[int, ...]]]  # (sign, λ', λ'')
    identity_holds: bool
    factors_ok: bool

    @property
    def passed(self) -> bool:
        return self.identity_holds and self.factors_ok

    def first_factors(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(self.rows_first, lam1) for _, lam1, _ in self.terms]


def laplace_certificate(dim: DimVector, sigma, t: int, s: int, i: int,
                       matrix: PolyMatrix | None = None) -> LaplaceCertificate:
    """Laplace expansion of p_sigma along the rows sigma' ⊂ [s, n] ∩ sigma, #sigma' = t.

    sigma' is the lexicographically smallest admissible choice. Every first
    factor is a t-minor with rows >= s and columns <= a_i.
    """
    sigma = tuple(sorted(sigma))
    ai = dim.a(i)
    if len(sigma) != ai:
        raise ShapeError(f"#sigma = {len(sigma)} but a_{i} = {ai}")
    if not 1 <= t <= ai or sigma[ai - t] < s:
        raise ValueError(f"precondition sigma(a_i - t + 1) >= s fails for sigma={sigma}, t={t}, s={s}")
    candidates = [x for x in sigma if x >= s]
    first = tuple(candidates[:t])
    rest = tuple(x for x in sigma if x not in first)
    a = matrix if matrix is not None else generic_big_cell(dim)
    ring = PolyRing(a.variables)
    row_pos = sum(sigma.index(x) + 1 for x in first)
    cols = range(1, ai + 1)
    total = ring.zero
    terms = []
    for lam1 in combinations(cols, t):
        lam2 = tuple(c for c in cols if c not in lam1)
        sign = -1 if (row_pos + sum(lam1)) % 2 else 1
        terms.append((sign, lam1, lam2))
        total = total + sign * (minor(a, first, lam1) * minor(a, rest, lam2))
    identity_holds = total == minor(a, sigma, cols)
    factors_ok = all(x >= s for x in first) and all(max(l1) <= ai for _, l1, _ in terms)
    return LaplaceCertificate(sigma, i, t, s, first, terms, identity_holds, factors_ok)


@dataclass(frozen=True)
class GeneratorRoute:
    """How an I2 generator p_sigma at ``level`` lands in I1.

    ``kind == "minor"``: sigma(a_i - r_{i,j+1}) >= a_j + 1 for the returned
    j >= i, and the Laplace expansion along rows >= a_j + 1 writes p_sigma
    through (r_{i,j+1} + 1)-minors of I1.
    ``kind == "plucker"``: sigma(a_j) >= a_j + 1 for some j < i, so sigma is
    not below tau_max at this level and p_sigma is itself an I1 generator.
    """

    kind: str
    j: int


def generator_route(r: RankArray, sigma, i: int) -> GeneratorRoute:
    dim = r.dim
    sigma = tuple(sorted(sigma))
    if len(sigma) != dim.a(i):
        raise ShapeError(f"#sigma = {len(sigma)} but a_{i} = {dim.a(i)}")
    tau = tau_r(r)
    if bruhat_leq_subsets(sigma, tau[i]):
        raise ValueError(f"sigma = {sigma} lies below tau_r level {i}; it is not a generator")
    for j in range(i, dim.h + 1):
        pos = dim.a(i) - r[(i, j + 1)]
        if pos >= 1 and sigma[pos - 1] >= dim.a(j) + 1:
            return GeneratorRoute("minor", j)
    for j in range(1, i):
        if dim.a(j) >= 1 and sigma[dim.a(j) - 1] >= dim.a(j) + 1:
            return GeneratorRoute("plucker", j)
    raise AssertionError(f"no witness for sigma = {sigma}, level {i}: tau_r is not maximal")


def i2_in_i1_certificate(r: RankArray) -> IdentityReport:
    """Every I2 generator is a combination of I1 generators (Laplace via the level witness)."""
    check_valid(r)
    dim = r.dim
    report = IdentityReport(f"I2 in I1 n=({dim}) r={r}", "symbolic")
    a = generic_big_cell(dim)
    i1 = set(generators("I1", dim, r))
    for g in generators("I2", dim, r):
        i = g.level
        route = generator_route(r, g.sigma, i)
        if route.kind == "plucker":
            ok = GeneratorDescriptor("I1", "plucker", level=i, sigma=g.sigma) in i1
        else:
            j = route.j
            cert = laplace_certificate(dim, g.sigma, r[(i, j + 1)] + 1, dim.a(j) + 1, i, matrix=a)
            ok = cert.passed and all(GeneratorDescriptor("I1", "minor", i=i, j=j + 1, lam=rows, mu=cols) in i1
                                     for rows, cols in cert.first_factors())
        (report.checked if ok else report.failures).append((g.sigma, i, route))
    return report


def i1_in_i0_certificate(r: RankArray) -> IdentityReport:
    """Pull each I1 minor back along zeta and expand it through J(r) minors.

    With Ã = tail · middle · head, two Cauchy-Binet expansions give
    det Ã_{λ×μ} = Σ det tail_{λ×ν} det middle_{ν×ν'} det head_{ν'×μ}, and
    each middle minor is a J(r) generator. Plücker members of I1 are shared
    with I0 verbatim.
    """
    check_valid(r)
    dim = r.dim
    report = IdentityReport(f"I1 in I0 n=({dim}) r={r}", "symbolic")
    ring = quiver_ring(dim)
    mats = generic_quiver(dim)
    z = generic_zeta(dim)
    j_gens = set(generators("J_r", dim, r))
    i0 = set(generators("I0", dim, r))
    for g in generators("I1", dim, r):
        if g.kind == "plucker":
            mirrored = GeneratorDescriptor("I0", "plucker", level=g.level, sigma=g.sigma)
            (report.checked if mirrored in i0 else report.failures).append(g)
            continue
        i, jj = g.i, g.j
        _, tail, middle, head = factorization_blocks(mats, dim, i, jj - 1, lambda s: PolyMatrix.identity(ring, s))
        offset = dim.a(jj - 1)
        lam_local = tuple(x - offset for x in g.lam)
        size = len(g.lam)
        rhs = ring.zero
        ok = True
        for nu in combinations(range(1, dim.dim(jj) + 1), size):
            for nu2 in combinations(range(1, dim.dim(i) + 1), size):
                if GeneratorDescriptor("J_r", "minor", i=i, j=jj, lam=nu, mu=nu2) not in j_gens:
                    ok = False
                rhs = rhs + minor(tail, lam_local, nu) * minor(middle, nu, nu2) * minor(head, nu2, g.mu)
        lhs = minor(z, g.lam, g.mu)
        (report.checked if ok and lhs == rhs else report.failures).append(g)
    return report
