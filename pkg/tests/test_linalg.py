from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_rank, naive_rref
from quotcheck.linalg import Field, FieldError, Matrix, kernel_basis, projective_points, rref, solve_affine

Q = Field(0)
F2 = Field(2)
F5 = Field(5)


def mat(F, rows, cols=None):
    return Matrix.from_rows(F, rows, cols=cols)


def test_field_rejects_bad_characteristic():
    for p in (1, 4, 9, 65537 * 2, 70001):
        with pytest.raises(FieldError):
            Field(p)
    assert Field(65521).characteristic == 65521


def test_entries_are_canonical():
    m = mat(F5, [[7, -1], [10, 4]])
    assert m.to_strings() == [["2", "4"], ["0", "4"]]
    q = mat(Q, [[Fraction(6, 4), 2]])
    assert q.to_strings() == [["3/2", "2"]]


def test_rref_empty_and_identity():
    m, piv = rref(Matrix.zeros(Q, 0, 0))
    assert m.shape == (0, 0) and piv == []
    m, piv = rref(Matrix.identity(Q, 3))
    assert m == Matrix.identity(Q, 3) and piv == [0, 1, 2]


def test_rref_example_matches_naive_eliminator():
    m, piv = rref(mat(Q, [[2, 4], [1, 2]]))
    assert m.to_strings() == [["1", "2"], ["0", "0"]] and piv == [0]
    ref, rpiv = naive_rref([[2, 4], [1, 2]])
    assert rpiv == piv and [[str(x) for x in r] for r in ref] == m.to_strings()


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(Q, 4)) == []
    assert len(kernel_basis(Matrix.zeros(Q, 2, 3))) == 3
    (v,) = kernel_basis(mat(F2, [[1, 1]]))
    assert v.to_strings() == [["1"], ["1"]]


def test_solve_affine_examples():
    b = Matrix.column(Q, [3, -1, 2])
    x0, kern = solve_affine(Matrix.identity(Q, 3), b)
    assert x0 == b and kern.cols == 0
    assert solve_affine(Matrix.zeros(Q, 2, 2), Matrix.column(Q, [1, 0])) is None
    x0, kern = solve_affine(mat(Q, [[1, 2], [2, 4]]), Matrix.column(Q, [1, 2]))
    assert x0.to_strings() == [["1"], ["0"]]
    assert kern.cols == 1
    k = [Fraction(s) for (s,) in kern.to_strings()]
    assert k[0] == -2 * k[1] and k[1] != 0
    with pytest.raises(ValueError):
        solve_affine(Matrix.identity(Q, 2), Matrix.column(Q, [1, 2, 3]))


def test_projective_points_count():
    # (p^n - 1) / (p - 1) lines
    assert len(list(projective_points(F5, 1))) == 1
    assert len(list(projective_points(F5, 3))) == 31
    assert len(list(projective_points(F2, 4))) == 15


small_ints = st.integers(min_value=-6, max_value=6)


def matrices(rows=st.integers(0, 5), cols=st.integers(0, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small_ints, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
        .map(lambda rs: (rs, rc[1])))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([0, 2, 5, 7]))
def test_rank_nullity(data, p):
    rows, cols = data
    F = Field(p)
    m = mat(F, rows, cols)
    assert m.rank() + len(kernel_basis(m)) == cols
    for v in kernel_basis(m):
        assert (m @ v).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([0, 3, 5]))
def test_rref_idempotent_and_matches_oracle(data, p):
    rows, cols = data
    F = Field(p)
    m = mat(F, rows, cols)
    r1, piv1 = rref(m)
    r2, piv2 = rref(r1)
    assert r1 == r2 and piv1 == piv2
    if rows:
        ref, rpiv = naive_rref(rows, p)
        assert rpiv == piv1
        assert [[str(x) for x in r] for r in ref] == r1.to_strings()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 12), st.randoms(use_true_random=False))
def test_kernel_exhaustive_over_f2(nrows, ncols, rnd):
    rows = [[rnd.randint(0, 1) for _ in range(ncols)] for _ in range(nrows)]
    m = mat(F2, rows)
    found = {v for v in product((0, 1), repeat=ncols)
             if all(sum(a * b for a, b in zip(r, v)) % 2 == 0 for r in rows)}
    basis = [tuple(int(s) for (s,) in v.to_strings()) for v in kernel_basis(m)]
    span = {tuple(sum(c * b[i] for c, b in zip(cs, basis)) % 2 for i in range(ncols))
            for cs in product((0, 1), repeat=len(basis))}
    assert span == found
    assert m.rank() == naive_rank(rows, 2)


@settings(max_examples=40, deadline=None)
@given(matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)), st.sampled_from([0, 5]))
def test_solve_affine_solution_set(data, p):
    rows, cols = data
    F = Field(p)
    a = mat(F, rows, cols)
    rng = np.random.default_rng(len(rows) * 10 + cols)
    x = Matrix.column(F, [int(v) for v in rng.integers(-3, 4, cols)])
    b = a @ x
    x0, kern = solve_affine(a, b)
    assert a @ x0 == b
    assert kern.cols == cols - a.rank()
    assert (a @ kern).is_zero()
