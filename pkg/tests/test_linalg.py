from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ceqss.errors import DomainError
from ceqss.gf import FieldSpec
from ceqss.linalg import (
    FqMatrix,
    column_submatrix,
    complement_basis,
    hstack,
    null_space,
    rank,
    rref,
    solve_affine,
    vstack,
)
from helpers import matrices
from oracles import dim_of, span

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


def test_rref_identity():
    R, r, piv = rref(FqMatrix.identity(3, F2))
    assert r == 3 and piv == (1, 2, 3)
    assert R == FqMatrix.identity(3, F2)


def test_rank_examples():
    assert rank(FqMatrix([[1, 1, 1], [2, 2, 2]], F5)) == 1
    assert rank(FqMatrix([[1, 1, 1], [0, 1, 2]], F3)) == 2


def test_matrix_validation():
    with pytest.raises(DomainError):
        FqMatrix([[0, 5]], F5)
    with pytest.raises(DomainError):
        FqMatrix([[-1]], F5)
    assert FqMatrix.from_array([[7, -1]], F5).tolist() == [[2, 4]]
    M = FqMatrix([[1, 2]], F5)
    with pytest.raises(ValueError):
        M.data[0, 0] = 3


def test_column_submatrix_examples():
    I3 = FqMatrix.identity(3, F2)
    assert column_submatrix(I3, {2}).tolist() == [[0], [1], [0]]
    M = FqMatrix([[1, 2, 3], [4, 0, 1]], F5)
    assert column_submatrix(M, [1, 2, 3]) == M
    empty = column_submatrix(M, [])
    assert empty.shape == (2, 0) and rank(empty) == 0
    assert column_submatrix(M, [3, 1]).tolist() == [[1, 3], [4, 1]]
    with pytest.raises(DomainError):
        column_submatrix(M, [4])
    with pytest.raises(DomainError):
        column_submatrix(M, [0])


def test_null_space_examples():
    N = null_space(FqMatrix([[1, 1, 1], [0, 1, 2]], F3))
    assert N.rows == 1 and rank(vstack([N, FqMatrix([[1, 1, 1]], F3)])) == 1
    assert null_space(FqMatrix.identity(4, F5)).shape == (0, 4)
    N = null_space(FqMatrix([[1, 4, 4]], F5))
    assert N.rows == 2
    assert rank(vstack([N, FqMatrix([[1, 0, 1]], F5)])) == 2


def test_complement_basis_examples():
    H = complement_basis(FqMatrix.identity(2, F2), FqMatrix([[1, 0]], F2))
    assert H.tolist() == [[0, 1]]
    G0, G1 = FqMatrix([[1, 1, 1], [0, 1, 2]], F3), FqMatrix([[1, 1, 1]], F3)
    H = complement_basis(G0, G1)
    assert H.rows == 1 and rank(vstack([H, G1])) == 2
    assert complement_basis(G0, G0).rows == 0
    with pytest.raises(DomainError):
        complement_basis(G1, FqMatrix([[0, 1, 0]], F3))


def test_solve_affine_examples():
    x, K = solve_affine(FqMatrix.identity(2, F5), [3, 4])
    assert x.tolist() == [3, 4] and K.rows == 0
    x, K = solve_affine(FqMatrix([[1, 1]], F2), [0])
    assert x.tolist() == [0, 0] and K.tolist() == [[1, 1]]
    assert solve_affine(FqMatrix([[1, 1], [1, 1]], F5), [1, 2]) is None


def test_stacking_empty_blocks():
    E = FqMatrix.zeros(0, 3, F5)
    assert vstack([E, E]).shape == (0, 3)
    M = vstack([E, FqMatrix([[1, 2, 3]], F5)])
    assert M.tolist() == [[1, 2, 3]]
    assert hstack([FqMatrix([[1]], F5), FqMatrix([[2, 3]], F5)]).tolist() == [[1, 2, 3]]


@given(matrices())
def test_rank_matches_span_size(M):
    q = M.field.q
    assert rank(M) == dim_of(span(M.tolist(), q, M.cols), q)


@given(matrices())
def test_rref_shape(M):
    R, r, piv = rref(M)
    data = R.data
    assert len(piv) == r
    assert list(piv) == sorted(piv)
    for i, p in enumerate(piv):
        col = data[:, p - 1]
        assert col[i] == 1 and np.count_nonzero(col) == 1
        assert not data[i, : p - 1].any()
    assert not data[r:].any()
    assert rank(R) == r


@given(matrices())
def test_full_column_set_preserves_rank(M):
    assert rank(column_submatrix(M, range(1, M.cols + 1))) == rank(M)


@given(matrices())
def test_null_space_properties(M):
    N = null_space(M)
    q = M.field.q
    assert N.rows == M.cols - rank(M)
    assert rank(N) == N.rows
    if M.rows and N.rows:
        assert not (M.data @ N.data.T % q).any()


@given(matrices(), st.data())
def test_solve_affine_consistent_systems(M, data):
    q = M.field.q
    x_true = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=M.cols, max_size=M.cols)))
    b = M.data @ x_true % q
    sol = solve_affine(M, b)
    assert sol is not None
    x, K = sol
    assert np.array_equal(M.data @ x % q, b)
    assert K.rows == M.cols - rank(M)


@given(matrices(max_rows=4, max_cols=4))
def test_solve_affine_reports_inconsistency_exactly(M):
    q = M.field.q
    reachable = span(M.T.tolist(), q, M.rows) if M.rows else {()}
    for b in np.ndindex(*(q,) * M.rows):
        assert (solve_affine(M, list(b)) is not None) == (tuple(b) in reachable)
