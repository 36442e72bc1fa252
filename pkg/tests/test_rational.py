from fractions import Fraction as F
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import int_matrices, permutation_matrix
from lcplab.errors import InputError, NumericalBreakdown
from lcplab.rational import (
    determinant, fmt, index_set, inverse, is_exact, linear_solve, principal_submatrix, rmat,
    rvec, spd_solve, subsets, to_fraction,
)


def test_float_entries_convert_exactly():
    assert to_fraction(0.5) == F(1, 2)
    assert to_fraction(np.int64(-3)) == -3
    assert rmat([[0.25, 1], [2, "1/3"]])[1, 1] == F(1, 3)


def test_non_square_rejected():
    with pytest.raises(InputError):
        rmat([[1, 2, 3], [4, 5, 6]])


def test_is_exact():
    assert is_exact([1, F(1, 2), np.int64(3)])
    assert not is_exact([1.0, 2])
    assert not is_exact([True])


@pytest.mark.parametrize("a, det", [
    ([[0, 1, 1], [2, 0, 1], [-1, -1, 0]], -3),
    ([[1, 2], [3, 4]], -2),
    ([[2, 0, 0], [0, 5, 0], [0, 0, 1]], 10),
    ([[F(1, 2), 1], [1, 4]], 1),
    ([[1, 2], [2, 4]], 0),
])
def test_determinant(a, det):
    assert determinant(rmat(a)) == det


def test_empty_determinant_is_one():
    assert determinant(np.empty((0, 0), dtype=object)) == 1


def test_linear_solve_exact():
    a = rmat([[0, 1, 1], [2, 0, 2], [-2, -5, 0]])
    x = linear_solve(a, rvec([4, 7, -10]))
    assert list(x) == [F(15, 14), F(11, 7), F(17, 7)]


def test_linear_solve_singular_returns_none():
    assert linear_solve(rmat([[1, 2], [2, 4]]), rvec([1, 1])) is None


def test_inverse_of_pivot_example():
    a = rmat([[0, 1, 1], [2, 0, 1], [-1, -1, 0]])
    assert (inverse(a) == rmat([[-1, 1, -1], [1, -1, -2], [2, 1, 2]]) / 3).all()


@given(int_matrices(1, 4), st.data())
def test_solve_round_trip(a, data):
    n = a.shape[0]
    b = rvec(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)))
    x = linear_solve(a, b)
    if determinant(a) == 0:
        assert x is None
    else:
        assert (a @ x == b).all()


@given(int_matrices(1, 4), st.data())
def test_determinant_permutation_invariant(a, data):
    perm = data.draw(st.permutations(range(a.shape[0])))
    p = permutation_matrix(perm)
    assert determinant(p @ a @ p.T) == determinant(a)


def test_determinant_matches_numpy_on_random():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        a = rng.integers(-4, 5, size=(n, n))
        assert abs(float(determinant(rmat(a))) - np.linalg.det(a)) < 1e-6 * max(1, abs(np.linalg.det(a)))


def test_subsets_lexicographic():
    assert subsets(3) == [(0,), (0, 1), (0, 1, 2), (0, 2), (1,), (1, 2), (2,)]
    assert subsets(2, include_empty=True)[0] == ()


@pytest.mark.parametrize("bad", [[0, 0], [3], [-1]])
def test_index_set_rejects(bad):
    with pytest.raises(InputError):
        index_set(bad, 3)


def test_principal_submatrix():
    a = rmat([[0, 1, 1], [2, 0, 1], [-4, -5, 0]])
    assert (principal_submatrix(a, (0, 1)) == rmat([[0, 1], [2, 0]])).all()


def test_spd_solve_backward_error():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        n = int(rng.integers(1, 8))
        g = rng.normal(size=(n, n))
        h = g @ g.T + n * np.eye(n)
        r = rng.normal(size=n)
        x = spd_solve(h, r)
        assert np.linalg.norm(h @ x - r) <= 1e-10 * np.linalg.norm(h) * np.linalg.norm(x) + 1e-12


def test_spd_solve_reports_failing_pivot():
    with pytest.raises(NumericalBreakdown) as exc:
        spd_solve(np.array([[1.0, 2.0], [2.0, 1.0]]), np.ones(2))
    assert exc.value.pivot == 2


@pytest.mark.parametrize("x, text", [(F(3), "3"), (F(-7, 2), "-7/2"), (0.5, "1/2")])
def test_fmt(x, text):
    assert fmt(x) == text


def test_permutations_helper_is_orthogonal():
    for perm in permutations(range(3)):
        p = permutation_matrix(perm)
        assert (p @ p.T == rmat(np.eye(3, dtype=int))).all()
