import itertools
import json

import pytest

from qsl.errors import CapExceeded
from qsl.quivercomb import DimVector, RankArray, enumerate_rank_arrays, group_order, rank_array_of
from qsl.oracle import (VerificationReport, degeneration_poset, enumerate_group, enumerate_Z, orbits,
                        poset_bruhat_agreement, reports_to_tsv, verify_dim_crosscheck, verify_ideal_chain,
                        verify_orbits, verify_zelevinsky)

D111 = DimVector.of(1, 1, 1)


def r111(r12, r23, r13):
    return RankArray.from_dict(D111, {(1, 2): r12, (2, 3): r23, (1, 3): r13})


def test_enumerate_Z_examples():
    assert len(list(enumerate_Z(DimVector.of(1, 1), 2))) == 2
    pts = [rep.flat() for rep in enumerate_Z(D111, 2)]
    assert pts == sorted(pts) and len(pts) == 4
    assert len(list(enumerate_Z(DimVector.of(2, 1), 3))) == 9
    with pytest.raises(CapExceeded):
        list(enumerate_Z(DimVector.of(3, 3), 3, cap=1000))


def test_group_enumeration_counts():
    dim = DimVector.of(2, 1)
    assert len(list(enumerate_group(dim, 3))) == group_order(dim, 3) == 48 * 2
    with pytest.raises(CapExceeded):
        next(enumerate_group(DimVector.of(3, 3), 3, cap=10))


def test_orbit_examples():
    rep = verify_orbits(D111, 2)
    assert rep.passed and rep.details["orbit_count"] == 4
    assert all(o["size"] == 1 for o in rep.details["orbits"])
    rep = verify_orbits(DimVector.of(1, 1), 3)
    assert rep.passed and sorted(o["size"] for o in rep.details["orbits"]) == [1, 2]
    assert verify_orbits(DimVector.of(1), 2).details["orbit_count"] == 1


@pytest.mark.parametrize("n,q", [((1, 1, 1), 3), ((2, 1), 3), ((2, 2), 2)])
def test_generator_closure_matches_group_enumeration(n, q):
    dim = DimVector(n)
    by_group, m1 = orbits(dim, q)
    by_gens, m2 = orbits(dim, q, cap_group=0)
    assert (m1, m2) == ("group", "generators")
    assert sorted(map(tuple, by_group)) == sorted(map(tuple, by_gens))


def test_zelevinsky_examples():
    rep = verify_zelevinsky(D111, r111(1, 1, 1), 2)
    assert rep.passed and rep.details["image_size"] == 4 == rep.details["plucker_size"]
    rep = verify_zelevinsky(D111, r111(1, 0, 0), 2)
    assert rep.passed and rep.details["image_size"] == 2
    for q in (2, 3):
        rep = verify_zelevinsky(D111, r111(0, 0, 0), q)
        assert rep.passed and rep.details["image_size"] == 1


def test_ideal_chain_examples():
    rep = verify_ideal_chain(D111, r111(1, 0, 0), 2)
    assert rep.passed and rep.details["locus_sizes"] == {"I0": 2, "I1": 2, "I2": 2}
    rep = verify_ideal_chain(D111, r111(1, 1, 1), 3)
    assert rep.passed and rep.details["locus_sizes"]["I0"] == 9
    rep = verify_ideal_chain(D111, r111(0, 1, 0), 3)
    assert rep.passed and rep.details["locus_sizes"]["I2"] == 3


def test_dim_crosscheck_examples():
    rep = verify_dim_crosscheck(D111)
    assert rep.passed and rep.tested == 4
    assert sorted(row["quiver_dim"] for row in rep.details["arrays"]) == [0, 1, 1, 2]
    assert verify_dim_crosscheck(DimVector.of(1, 1)).tested == 2
    rep = verify_dim_crosscheck(DimVector.of(2))
    assert rep.tested == 1 and rep.details["arrays"][0]["quiver_dim"] == 0


def test_poset_examples():
    p = degeneration_poset(D111)
    labels = [n.values() for n in p.nodes]
    edges = {(labels[a], labels[b]) for a, b in p.edges}
    assert edges == {((1, 1, 1), (1, 0, 0)), ((1, 1, 1), (0, 1, 0)), ((1, 0, 0), (0, 0, 0)),
                     ((0, 1, 0), (0, 0, 0))}
    dot = p.to_dot()
    assert dot.startswith("digraph") and dot.count("label=") == 4
    assert len(degeneration_poset(DimVector.of(1, 1)).edges) == 1
    single = degeneration_poset(DimVector.of(1))
    assert len(single.nodes) == 1 and single.edges == []
    assert json.loads(json.dumps(p.to_json()))["n"] == [1, 1, 1]


def test_poset_matches_bruhat_order():
    for h in range(1, 5):
        for n in itertools.product(range(3), repeat=h):
            assert poset_bruhat_agreement(DimVector(n)) == []


@pytest.mark.parametrize("n,q", [((1, 1, 1), 3), ((2, 1), 2), ((1, 2, 1), 2)])
def test_point_count_additivity(n, q):
    dim = DimVector(n)
    arrays = enumerate_rank_arrays(dim)
    open_counts = {r: 0 for r in arrays}
    for rep in enumerate_Z(dim, q):
        open_counts[rank_array_of(rep)] += 1
    for r in arrays:
        closed = sum(1 for rep in enumerate_Z(dim, q) if rank_array_of(rep) <= r)
        assert closed == sum(c for s, c in open_counts.items() if s <= r)


def test_report_plumbing():
    rep = VerificationReport("demo", {"q": 2})
    rep.record(True)
    rep.record(False, "first")
    rep.record(False, "second")
    assert not rep.passed and rep.failures == 2 and rep.counterexample == "first"
    assert "wall_time" not in rep.to_json() and "wall_time" in rep.to_json(timings=True)
    tsv = reports_to_tsv([rep])
    assert tsv.splitlines()[1].split("\t")[:3] == ["demo", "q=2", "FAIL"]
    assert verify_dim_crosscheck(D111).wall_time is not None
