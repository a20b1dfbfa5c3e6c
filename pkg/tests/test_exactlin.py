import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sdchains import exactlin as el

P = 5


def matrices(max_rows=6, max_cols=6):
    shape = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return shape.flatmap(lambda s: arrays(np.int64, s, elements=st.integers(0, P - 1)))


def test_rref_rank_one():
    red, rk, piv = el.rref(np.array([[1, 2], [2, 4]]), P)
    assert red.tolist() == [[1, 2], [0, 0]]
    assert rk == 1 and piv == [0]


def test_kernel_of_rank_one():
    ker = el.kernel_basis(np.array([[1, 2], [2, 4]]), P)
    assert ker.tolist() == [[3, 1]]


def test_solve_consistent_and_inconsistent():
    m = np.array([[1, 2], [2, 4]])
    assert el.solve(m, [1, 2], P).tolist() == [1, 0]
    assert el.solve(m, [1, 0], P) is None


def test_solve_wrong_length():
    with pytest.raises(ValueError):
        el.solve(np.eye(2, dtype=np.int64), [1, 2, 3], P)


def test_inverse_and_singular():
    m = np.array([[2, 1], [1, 1]])
    assert np.array_equal(el.matmul(m, el.inverse(m, P), P), el.identity(2))
    with pytest.raises(ValueError):
        el.inverse(np.array([[1, 2], [2, 4]]), P)


def test_empty_shapes():
    assert el.rank(np.zeros((0, 3), dtype=np.int64), P) == 0
    assert el.kernel_basis(np.zeros((0, 3), dtype=np.int64), P).shape == (3, 3)


def test_is_prime():
    assert [q for q in range(20) if el.is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_flint_path_matches_numpy():
    rng = np.random.default_rng(3)
    m = rng.integers(0, P, size=(200, 190))
    m[:, 5] = (2 * m[:, 1] + m[:, 7]) % P
    big = el.rref(m, P)
    small = el._rref_numpy(m, P)
    assert np.array_equal(big[0], small[0])
    assert big[1] == small[1] and big[2] == small[2]


def test_subspace_operations():
    a = el.Subspace.span([[1, 0, 0], [0, 1, 0]], 3, P)
    b = el.Subspace.span([[0, 1, 0], [0, 0, 1]], 3, P)
    assert (a + b).dim == 3
    meet = a.intersect(b)
    assert meet.dim == 1 and meet.contains([[0, 3, 0]])
    assert not a.contains([[0, 0, 1]])
    assert a.complement_coordinates() == [2]
    assert np.array_equal(a.reduce([[1, 1, 1]]), [[0, 0, 1]])


@given(matrices())
def test_rref_idempotent(m):
    red, rk, piv = el.rref(m, P)
    again, rk2, piv2 = el.rref(red, P)
    assert np.array_equal(red, again) and rk == rk2 and piv == piv2


@given(matrices())
def test_rank_plus_nullity(m):
    ker = el.kernel_basis(m, P)
    assert el.rank(m, P) + ker.shape[0] == m.shape[1]
    assert not el.matmul(m, ker.T, P).any()


@given(matrices(), st.data())
def test_solve_recovers_image(m, data):
    x = data.draw(arrays(np.int64, m.shape[1], elements=st.integers(0, P - 1)))
    b = el.matmul(m, x, P)
    y = el.solve(m, b, P)
    assert y is not None and np.array_equal(el.matmul(m, y, P), b)


@settings(max_examples=50)
@given(matrices(5, 4), matrices(5, 4))
def test_intersection_dimension_formula(a, b):
    n = a.shape[1]
    b = b[:, :n] if b.shape[1] >= n else np.pad(b, ((0, 0), (0, n - b.shape[1])))
    u, v = el.Subspace.span(a, n, P), el.Subspace.span(b, n, P)
    assert u.dim + v.dim == (u + v).dim + u.intersect(v).dim
