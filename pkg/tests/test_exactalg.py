import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsl.errors import CoefficientOverflow, ShapeError
from qsl.exactalg import (LARGE_PRIME, FieldElement, FieldMatrix, MultiPoly, PolyMatrix, PolyRing, check_modulus,
                          is_prime, mat_mul, mat_rank, minor, rng, subspace_intersection_dim)


def fm(rows, p, cols=None):
    return FieldMatrix.from_rows(rows, p, cols=cols)


def matrices(p, max_side=4):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
                lambda v: FieldMatrix.from_flat(r, c, v, p))))


def test_modulus_checks():
    assert is_prime(2) and is_prime(LARGE_PRIME) and not is_prime(1) and not is_prime(561)
    with pytest.raises(ValueError):
        check_modulus(4)
    with pytest.raises(ValueError):
        check_modulus(2**61 - 1)


def test_field_element_arithmetic():
    a = FieldElement(2, 3)
    assert a + 2 == FieldElement(1, 3)
    assert a * a == 1
    assert a.inverse() == a
    assert -a == 1
    with pytest.raises(ZeroDivisionError):
        FieldElement(0, 5).inverse()


def test_mat_mul_examples():
    m = fm([[1, 1], [0, 1]], 2)
    assert mat_mul(FieldMatrix.identity(2, 2), m) == m
    assert mat_mul(m, fm([[1, 0], [1, 1]], 2)) == fm([[0, 1], [1, 1]], 2)
    ring = PolyRing(["x", "y"])
    x = PolyMatrix.from_rows(ring, [[ring.gen("x")]])
    y = PolyMatrix.from_rows(ring, [[ring.gen("y")]])
    assert mat_mul(x, y)[0, 0] == ring.gen("x") * ring.gen("y")


def test_mat_mul_shape_and_kind_errors():
    with pytest.raises(ShapeError):
        mat_mul(FieldMatrix.zeros(2, 3, 2), FieldMatrix.zeros(2, 3, 2))
    with pytest.raises(ShapeError):
        mat_mul(FieldMatrix.zeros(2, 2, 2), FieldMatrix.zeros(2, 2, 3))
    with pytest.raises(TypeError):
        mat_mul(FieldMatrix.zeros(1, 1, 2), PolyMatrix.identity(PolyRing(["x"]), 1))


def test_rank_examples():
    assert mat_rank(FieldMatrix.zeros(3, 2, 5)) == 0
    assert mat_rank(FieldMatrix.identity(4, 3)) == 4
    assert mat_rank(fm([[1, 1], [1, 1]], 2)) == 1
    assert mat_rank(FieldMatrix.zeros(0, 3, 2)) == 0


def test_minor_examples():
    m = fm([[1, 2], [2, 1]], 3)
    assert minor(m, [], []) == 1
    assert minor(m, [1, 2], [1, 2]) == 0
    ring = PolyRing(["x"])
    assert minor(PolyMatrix.from_rows(ring, [[ring.gen("x")]]), [1], [1]) == ring.gen("x")
    with pytest.raises(ShapeError):
        minor(m, [1], [1, 2])
    with pytest.raises(ShapeError):
        minor(m, [3], [1])


def test_subspace_intersection_examples():
    e = FieldMatrix.identity(3, 2)
    assert subspace_intersection_dim(e, e) == 3
    e1 = e.submatrix(range(3), [0])
    e23 = e.submatrix(range(3), [1, 2])
    assert subspace_intersection_dim(e1, e23) == 0
    u = fm([[1], [1], [0]], 2)
    assert subspace_intersection_dim(u, e.submatrix(range(3), [0, 1])) == 1
    with pytest.raises(ShapeError):
        subspace_intersection_dim(e1, FieldMatrix.identity(2, 2))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_rank_of_product_is_bounded(data):
    x = data.draw(matrices(5))
    cols = data.draw(st.integers(1, 4))
    y = FieldMatrix.from_flat(x.cols, cols, data.draw(
        st.lists(st.integers(0, 4), min_size=x.cols * cols, max_size=x.cols * cols)), 5)
    assert mat_rank(x @ y) <= min(mat_rank(x), mat_rank(y))


def test_rank_agrees_with_minors_exhaustively():
    for r, c in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        for values in itertools.product(range(2), repeat=r * c):
            m = FieldMatrix.from_flat(r, c, values, 2)
            rank = m.rank()
            for t in range(1, min(r, c) + 1):
                some = any(minor(m, lam, mu) for lam in itertools.combinations(range(1, r + 1), t)
                           for mu in itertools.combinations(range(1, c + 1), t))
                assert some == (rank >= t)


@settings(max_examples=40, deadline=None)
@given(matrices(7, 3))
def test_inverse_and_det(m):
    if m.rows != m.cols:
        return
    if m.det() == 0:
        assert m.rank() < m.rows
        with pytest.raises(ZeroDivisionError):
            m.inverse()
    else:
        assert m @ m.inverse() == FieldMatrix.identity(m.rows, 7)


def small_polys():
    names = ["x", "y", "z"]
    term = st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.integers(-3, 3))
    return st.lists(term, max_size=4).map(lambda ts: MultiPoly(names, dict(ts)))


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert f + g == g + f
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == 0


def test_poly_basics():
    ring = PolyRing(["a", "b"])
    a, b = ring.gens()
    f = (a + b) ** 2
    assert f == a * a + 2 * a * b + b * b
    assert f.degree() == 2
    assert f.exact_div(a + b) == a + b
    with pytest.raises(ArithmeticError):
        f.exact_div(a + 2)
    assert f.evaluate({"a": 1, "b": 2}) == 9
    assert f.evaluate({"a": 1, "b": 2}, 5) == 4


def test_coefficient_overflow_is_loud():
    x = MultiPoly.var(["x"], "x")
    big = x * (2**62)
    with pytest.raises(CoefficientOverflow):
        big * 4


def test_generic_determinants():
    ring = PolyRing([f"m_{i}_{j}" for i in range(1, 6) for j in range(1, 6)])
    m = PolyMatrix.generic(ring, 5, 5, "m")
    d = m.det()  # Bareiss route
    assert len(d.terms) == 120
    assert all(abs(c) == 1 for c in d.terms.values())
    small = PolyMatrix.generic(ring, 2, 2, "m")
    g = ring.gen
    assert small.det() == g("m_1_1") * g("m_2_2") - g("m_1_2") * g("m_2_1")


def test_evaluation_commutes_with_det():
    rand = rng(7)
    for side in (2, 3):
        ring = PolyRing([f"x_{i}_{j}" for i in range(1, side + 1) for j in range(1, side + 1)]
                        + [f"y_{i}_{j}" for i in range(1, side + 1) for j in range(1, side + 1)])
        x = PolyMatrix.generic(ring, side, side, "x")
        y = PolyMatrix.generic(ring, side, side, "y")
        det_sum = (x @ y).det()
        for _ in range(50):
            point = {v: rand.randrange(LARGE_PRIME) for v in ring.variables}
            xe, ye = x.evaluate(point, LARGE_PRIME), y.evaluate(point, LARGE_PRIME)
            assert det_sum.evaluate(point, LARGE_PRIME) == (xe @ ye).det()
            assert (x.det() * y.det()).evaluate(point, LARGE_PRIME) == xe.det() * ye.det() % LARGE_PRIME
