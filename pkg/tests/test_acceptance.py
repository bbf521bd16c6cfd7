"""Acceptance criteria, one test each, with their time bounds.

``pytest`` prints a per-criterion PASS/FAIL block at the end of the run.
"""
import itertools
import time

import pytest

from qsl.degeneracy import codim_omega, stability_check, superfluous_check
from qsl.exactalg import LARGE_PRIME
from qsl.flagcomb import Permutation, schubert_dim, tau_r
from qsl.oracle import verify_ideal_chain, verify_orbits, verify_zelevinsky
from qsl.quivercomb import DimVector, RankArray, enumerate_rank_arrays, quiver_dim
from qsl.zelevinsky import (cauchy_binet_certificate, generators, i2_in_i1_certificate,
                            factorization_check, laplace_certificate, generator_route)

GRID = [(1, 1, 1), (2, 1), (1, 2, 1)]
FIELDS = (2, 3)


class Clock:
    def __init__(self, bound):
        self.bound = bound

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.bound, f"took {self.elapsed:.2f}s, bound {self.bound}s"


@pytest.mark.criterion(1, "orbits are rank-array fibers over F_2, F_3")
def test_orbit_classification():
    with Clock(1.0):
        for n, expected in (((1, 1), 2), ((1, 1, 1), 4)):
            for q in FIELDS:
                rep = verify_orbits(DimVector(n), q)
                assert rep.passed, rep.counterexample
                assert rep.details["orbit_count"] == expected == rep.details["rank_array_count"]


@pytest.mark.criterion(2, "zeta(Z(r)) = Plücker locus = rank-condition locus")
def test_zelevinsky_bijection():
    with Clock(30.0):
        scenarios = 0
        for n in GRID:
            dim = DimVector(n)
            for r in enumerate_rank_arrays(dim):
                for q in FIELDS:
                    rep = verify_zelevinsky(dim, r, q)
                    assert rep.passed, (n, str(r), q, rep.counterexample)
                    assert rep.details["image_size"] == rep.details["plucker_size"] == rep.details["rank_condition_size"]
                    scenarios += 1
        assert scenarios > 0


@pytest.mark.criterion(3, "V(I0) = V(I1) = V(I2) with separate containments")
def test_ideal_chain():
    with Clock(30.0):
        for n in GRID:
            dim = DimVector(n)
            for r in enumerate_rank_arrays(dim):
                for q in FIELDS:
                    rep = verify_ideal_chain(dim, r, q)
                    assert rep.tested == 4  # two containments, then two equalities
                    assert rep.passed, (n, str(r), q, rep.counterexample)


@pytest.mark.criterion(4, "Cauchy-Binet, factorization and Laplace certificates")
def test_identity_certificates():
    with Clock(10.0):
        for k, m, l in itertools.product(range(1, 4), repeat=3):
            for size in range(1, min(k, l) + 1):
                rep = cauchy_binet_certificate(k, m, l, size)
                assert rep.method == "symbolic" and rep.passed, rep.name
        for n in ((1, 1, 1), (1, 2, 1)):
            dim = DimVector(n)
            for i in range(1, dim.h):
                for j in range(i, dim.h):
                    rep = factorization_check(dim, i, j)
                    assert rep.method == "symbolic" and rep.passed, rep.name
        dim = DimVector.of(1, 1, 1)
        for r in enumerate_rank_arrays(dim):
            for g in generators("I2", dim, r):
                route = generator_route(r, g.sigma, g.level)
                if route.kind == "minor":
                    j = route.j
                    cert = laplace_certificate(dim, g.sigma, r[(g.level, j + 1)] + 1, dim.a(j) + 1, g.level)
                    assert cert.passed
            assert i2_in_i1_certificate(r).passed
        smoke = cauchy_binet_certificate(5, 5, 5, 3, trials=20)
        assert smoke.method == "randomized" and smoke.trials >= 20 and smoke.passed
        assert LARGE_PRIME == 2147483647


def dims(max_h, max_n):
    for h in range(1, max_h + 1):
        yield from (DimVector(n) for n in itertools.product(range(max_n + 1), repeat=h))


@pytest.mark.criterion(5, "quiver_dim = schubert_dim(tau_r)")
def test_dimension_crosscheck():
    with Clock(60.0):
        checked = 0
        for dim in itertools.chain(dims(4, 2), dims(3, 3)):
            for r in enumerate_rank_arrays(dim):
                assert quiver_dim(r) == schubert_dim(tau_r(r)), (dim, str(r))
                checked += 1
        assert checked > 500


@pytest.mark.criterion(6, "codim Omega_w = length(w), m = 1, 2, 3")
def test_degeneracy_codimension():
    with Clock(1.0):
        count = 0
        for m in (1, 2, 3):
            for w in itertools.permutations(range(1, m + 2)):
                c = codim_omega(Permutation(w), m)
                assert c.equal, (m, w, c)
                count += 1
        assert count == 32


@pytest.mark.criterion(7, "Omega_w(2) = pi^-1 Omega_w(1) over F_2, F_3")
def test_stability():
    with Clock(5.0):
        for q in FIELDS:
            for w in ("1,2", "2,1"):
                rep = stability_check(Permutation.parse(w), 1, q)
                assert rep.passed and rep.tested == q**8, rep.counterexample


@pytest.mark.criterion(8, "F_i -> F_j and E_j -> E_i conditions are superfluous")
def test_superfluous_conditions():
    with Clock(10.0):
        for q in FIELDS:
            assert superfluous_check(1, q).passed
        rep = superfluous_check(2, 2, samples=10**4, seed=0)
        assert rep.passed and rep.tested == 10**4 * 6


@pytest.mark.criterion(9, "worked example n=(1,1,1), r=(1,0,0)")
def test_worked_example():
    from qsl.exactalg import PolyRing
    from qsl.zelevinsky import generator_polynomial, zeta_pullback

    dim = DimVector.of(1, 1, 1)
    r = RankArray.from_json({"1,2": 1, "2,3": 0, "1,3": 0}, dim)
    assert str(tau_r(r)) == "({2},{1,2},{1,2,3})"
    pulled = [zeta_pullback(generator_polynomial(g, dim), dim) for g in generators("I2", dim, r)]
    ring = PolyRing(pulled[0].variables)
    a, b = ring.gen("A1_1_1"), ring.gen("A2_1_1")
    assert pulled == [b * a, b, a * b - b * a]
    z = verify_zelevinsky(dim, r, 2)
    assert z.passed and z.details["image_size"] == 2
