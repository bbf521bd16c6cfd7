import itertools

import pytest

from qsl.errors import ShapeError
from qsl.flagcomb import (BlockPermMatrix, Permutation, SubsetFlag, block_matrix, block_of_tau_r,
                          bruhat_leq_subsets, bruhat_length, flag_leq, min_coset_rep, mults_from_block,
                          perm_to_subset_flag, ranks_from_tau, schubert_dim, subsets_of_size,
                          tau_cardinality_defects, tau_max, tau_r)
from qsl.quivercomb import DimVector, RankArray, enumerate_rank_arrays, quiver_dim, ranks_to_mults

D111 = DimVector.of(1, 1, 1)


def r111(r12, r23, r13):
    return RankArray.from_dict(D111, {(1, 2): r12, (2, 3): r23, (1, 3): r13})


def flag(dim, *levels):
    return SubsetFlag(dim, tuple(tuple(t) for t in levels))


def all_dims(max_h, max_n, min_n=0):
    for h in range(1, max_h + 1):
        for n in itertools.product(range(min_n, max_n + 1), repeat=h):
            yield DimVector(n)


def test_subset_flag_validation():
    with pytest.raises(ValueError):
        flag(D111, [2], [1, 3], [1, 2, 3])
    with pytest.raises(ValueError):
        flag(D111, [1], [1, 2], [1, 2, 4])
    with pytest.raises(ShapeError):
        flag(D111, [1], [1, 2, 3])
    f = flag(D111, [3], [1, 3], [1, 2, 3])
    assert str(f) == "({3},{1,3},{1,2,3})"
    assert SubsetFlag.from_json(f.to_json()) == f


def test_tau_max_examples():
    assert tau_max(D111) == flag(D111, [3], [1, 3], [1, 2, 3])
    assert tau_max(DimVector.of(3)) == flag(DimVector.of(3), [1, 2, 3])
    d = DimVector.of(1, 2)
    assert tau_max(d) == flag(d, [3], [1, 2, 3])


def test_tau_r_examples():
    assert tau_r(r111(1, 1, 1)) == tau_max(D111)
    assert tau_r(r111(0, 0, 0)) == flag(D111, [1], [1, 2], [1, 2, 3])
    assert tau_r(r111(1, 0, 0)) == flag(D111, [2], [1, 2], [1, 2, 3])


def test_tau_r_cardinalities_and_inverse():
    for dim in all_dims(4, 3):
        for r in enumerate_rank_arrays(dim):
            t = tau_r(r)
            assert tau_cardinality_defects(t, r) == []
            assert ranks_from_tau(t) == r


@pytest.mark.parametrize("n", [(1, 1, 1), (2, 1), (1, 2, 1)])
def test_tau_r_is_maximal(n):
    dim = DimVector(n)
    for r in enumerate_rank_arrays(dim):
        t = tau_r(r)
        for i in range(1, dim.h):
            for sigma in subsets_of_size(dim.total, dim.a(i)):
                if sigma == t[i] or not bruhat_leq_subsets(t[i], sigma):
                    continue
                counts = [sum(1 for x in sigma if x <= dim.a(j)) for j in range(1, dim.h + 1)]
                wanted = [dim.a(i) - r[(i, j + 1)] if j >= i else dim.a(j) for j in range(1, dim.h + 1)]
                assert counts != wanted


def test_tau_max_is_tau_r_of_maximal_ranks():
    for dim in all_dims(3, 2):
        top = max(enumerate_rank_arrays(dim), key=lambda r: sum(r.values()))
        assert tau_r(top) == tau_max(dim)


def test_bruhat_subset_examples():
    assert bruhat_leq_subsets((1, 3), (1, 3))
    assert bruhat_leq_subsets((1, 3), (2, 3))
    assert not bruhat_leq_subsets((2, 3), (1, 4)) and not bruhat_leq_subsets((1, 4), (2, 3))
    with pytest.raises(ShapeError):
        bruhat_leq_subsets((1,), (1, 2))


def test_bruhat_is_partial_order():
    subs = list(subsets_of_size(4, 2))
    for a in subs:
        assert bruhat_leq_subsets(a, a)
        for b in subs:
            if bruhat_leq_subsets(a, b) and bruhat_leq_subsets(b, a):
                assert a == b
            for c in subs:
                if bruhat_leq_subsets(a, b) and bruhat_leq_subsets(b, c):
                    assert bruhat_leq_subsets(a, c)


def test_flag_leq_examples():
    t = tau_max(D111)
    assert flag_leq(t, t)
    assert flag_leq(tau_r(r111(0, 0, 0)), tau_r(r111(1, 1, 1)))
    arrays = enumerate_rank_arrays(D111)
    for r in arrays:
        for s in arrays:
            if r <= s:
                assert flag_leq(tau_r(r), tau_r(s))
    with pytest.raises(ShapeError):
        flag_leq(t, tau_max(DimVector.of(1, 2)))


def test_permutation_basics():
    w = Permutation.parse("3,1,2")
    assert w(1) == 3 and w.inverse() * w == Permutation.identity(3)
    assert (w * Permutation.parse("2,1,3")).w == (1, 3, 2)
    assert w.embed(4).w == (3, 1, 2, 4)
    assert str(Permutation.longest(3)) == "[3,2,1]"
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_perm_to_subset_flag_examples():
    assert perm_to_subset_flag(Permutation.identity(3), D111) == flag(D111, [1], [1, 2], [1, 2, 3])
    assert perm_to_subset_flag(Permutation.parse("3,1,2"), D111) == tau_max(D111)
    d = DimVector.of(1, 2)
    assert perm_to_subset_flag(Permutation.parse("2,1,3"), d) == flag(d, [2], [1, 2, 3])


def test_min_coset_rep_examples():
    assert min_coset_rep(flag(D111, [1], [1, 2], [1, 2, 3])) == Permutation.identity(3)
    assert min_coset_rep(tau_max(D111)).w == (3, 1, 2)
    assert min_coset_rep(flag(D111, [2], [1, 2], [1, 2, 3])).w == (2, 1, 3)


def test_min_coset_rep_is_shortest_in_coset():
    for dim in all_dims(3, 2, 1):
        for w in itertools.permutations(range(1, dim.total + 1)):
            t = perm_to_subset_flag(Permutation(w), dim)
            rep = min_coset_rep(t)
            assert perm_to_subset_flag(rep, dim) == t
            assert bruhat_length(rep) <= bruhat_length(Permutation(w))


def test_lengths():
    assert bruhat_length(Permutation.identity(4)) == 0
    assert bruhat_length(Permutation.parse("2,1,3")) == 1
    assert bruhat_length(Permutation.parse("3,1,2")) == 2
    assert schubert_dim(flag(D111, [1], [1, 2], [1, 2, 3])) == 0
    assert schubert_dim(tau_max(D111)) == 2
    assert schubert_dim(tau_r(r111(1, 0, 0))) == 1 == quiver_dim(r111(1, 0, 0))


def test_block_matrix_examples():
    w = Permutation.parse("3,1,2")
    assert block_matrix(w, D111).t == ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    d = DimVector.of(2, 1, 3)
    assert block_matrix(Permutation.identity(6), d).t == ((2, 0, 0), (0, 1, 0), (0, 0, 3))
    with pytest.raises(ValueError):
        BlockPermMatrix(D111, ((1, 1, 0), (0, 0, 1), (0, 0, 0)))


def test_block_of_tau_r_examples():
    assert block_of_tau_r(r111(1, 1, 1)).t == ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    for r in enumerate_rank_arrays(D111):
        assert block_of_tau_r(r) == block_matrix(min_coset_rep(tau_r(r)), D111)
    d = DimVector.of(2, 1, 3)
    zero = block_of_tau_r(RankArray.zero(d))
    assert [sum(row) for row in zero.t] == [2, 1, 3]
    assert zero.t == ((2, 0, 0), (0, 1, 0), (0, 0, 3))


def test_block_of_tau_r_matches_permutation_route():
    for dim in all_dims(4, 2):
        for r in enumerate_rank_arrays(dim):
            b = block_of_tau_r(r)
            assert b == block_matrix(min_coset_rep(tau_r(r)), dim)
            assert mults_from_block(b) == ranks_to_mults(r)


def young_subgroup(dim):
    blocks = [list(dim.block(i)) for i in range(1, dim.h + 1)]
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        w = [0] * dim.total
        for b, perm in zip(blocks, parts):
            for src, dst in zip(b, perm):
                w[src] = dst + 1
        yield Permutation(tuple(w))


def test_block_matrix_classifies_double_cosets():
    for dim in all_dims(4, 4, 1):
        if dim.total > 4:
            continue
        young = list(young_subgroup(dim))
        seen = {}
        for w in itertools.permutations(range(1, dim.total + 1)):
            w = Permutation(w)
            coset = frozenset(u * w * v for u in young for v in young)
            seen.setdefault(block_matrix(w, dim), set()).add(coset)
        assert all(len(c) == 1 for c in seen.values())
        cosets = set().union(*seen.values())
        assert len(cosets) == len(seen)


def test_tau_max_is_maximal_in_its_double_coset():
    for dim in all_dims(4, 4, 0):
        if dim.total > 4 or dim.total == 0:
            continue
        young = list(young_subgroup(dim))
        top = tau_max(dim)
        w = min_coset_rep(top)
        for u in young:
            for v in young:
                f = perm_to_subset_flag(u * w * v, dim)
                assert not (flag_leq(top, f) and f != top)
