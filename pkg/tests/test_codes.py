from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ceqss.codes import (
    LinearCode,
    NestedPair,
    dual,
    infinity,
    nested_weight,
    puncture,
    shorten,
    shortened_dim,
    sum_code,
    weight,
)
from ceqss.errors import DomainError, FieldMismatchError, ResourceError
from ceqss.gf import FieldSpec
from ceqss.linalg import FqMatrix, column_submatrix, rank
from helpers import codes, nested_pairs
from oracles import dim_of, dual_space, min_weight_outside, restrict, shortened, span

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)
REP3 = LinearCode.span([[1, 1, 1]], F3)
RS32 = LinearCode.span([[1, 1, 1], [0, 1, 2]], F3)


def words(C: LinearCode) -> set:
    return span(C.gen.tolist(), C.q, C.n)


def test_generator_must_be_full_rank():
    with pytest.raises(DomainError):
        LinearCode(FqMatrix([[1, 1], [2, 2]], F3))
    assert LinearCode.span([[1, 1], [2, 2]], F3).k == 1


def test_equality_is_row_space_equality():
    assert LinearCode(FqMatrix([[1, 1, 1], [0, 1, 2]], F3)) == LinearCode(FqMatrix([[0, 1, 2], [1, 2, 0]], F3))
    assert RS32 != REP3
    assert hash(RS32) == hash(LinearCode(FqMatrix([[1, 2, 0], [1, 1, 1]], F3)))


def test_dual_examples():
    assert dual(LinearCode.full(3, F2)).k == 0
    assert dual(REP3) == RS32
    assert dual(LinearCode.zero(4, F5)) == LinearCode.full(4, F5)


def test_puncture_examples():
    assert puncture(RS32, [1, 2, 3]) == RS32
    P = puncture(REP3, [1, 2])
    assert P.k == 1 and P == LinearCode.span([[1, 1]], F3)


def test_shorten_examples():
    assert shorten(RS32, [1, 2, 3]) == RS32
    assert shorten(LinearCode.full(3, F5), [1, 3]) == LinearCode.full(2, F5)
    assert shorten(REP3, [1, 2]).k == 0


def test_sum_examples():
    Z = LinearCode.zero(3, F3)
    assert sum_code(RS32, Z) == RS32
    assert sum_code(RS32, RS32) == RS32
    assert sum_code(REP3, LinearCode.span([[0, 1, 2]], F3)) == RS32


def test_weight_examples():
    assert weight(LinearCode.full(4, F5)) == 1
    assert weight(REP3) == 3
    assert weight(RS32) == 2
    assert weight(LinearCode.zero(5, F2)) == infinity(5) == 6


def test_nested_weight_examples():
    full = LinearCode.full(3, F5)
    C1 = LinearCode.span([[1, 4, 4]], F5)
    assert nested_weight(NestedPair(full, C1)) == 1
    assert nested_weight(NestedPair(RS32, REP3)) == 2
    assert nested_weight(NestedPair(RS32, RS32)) == infinity(3)


def test_nested_pair_validation():
    with pytest.raises(DomainError):
        NestedPair(REP3, RS32)
    with pytest.raises(FieldMismatchError):
        NestedPair(LinearCode.full(3, F5), REP3)
    with pytest.raises(DomainError):
        NestedPair(RS32, REP3, quotient_gen=FqMatrix([[2, 2, 2]], F3))
    pair = NestedPair(RS32, REP3)
    assert rank(pair.stacked_gen()) == 2 and pair.strict


def test_enumeration_budget():
    C = LinearCode.full(10, F3)
    with pytest.raises(ResourceError):
        weight(C, method="enumerate", budget=1000)
    assert weight(C, method="support", budget=2**12) == 1
    with pytest.raises(ResourceError):
        weight(C, method="support", budget=100)
    with pytest.raises(DomainError):
        weight(C, method="guess")


def test_codewords_enumeration_order():
    C = LinearCode(FqMatrix([[1, 0], [0, 1]], F3))
    rows = np.vstack(list(C.codewords()))
    assert rows.tolist()[:4] == [[0, 0], [0, 1], [0, 2], [1, 0]]
    assert len({tuple(r) for r in rows.tolist()}) == 9


def test_membership():
    assert (1, 2, 0) in RS32
    assert (1, 0, 0) not in RS32
    assert (0, 0, 0) in LinearCode.zero(3, F3)


@given(codes())
def test_dual_against_brute_force(C):
    D = dual(C)
    assert words(D) == dual_space(words(C), C.q, C.n)
    assert dual(D) == C


@given(codes(), st.data())
def test_puncture_and_shorten_against_brute_force(C, data):
    A = data.draw(st.sets(st.integers(1, C.n)))
    W = words(C)
    assert words(puncture(C, A)) == restrict(W, A) if A else True
    assert words(shorten(C, A)) == shortened(W, A, C.n) if A else True
    assert shortened_dim(C, A) == (dim_of(shortened(W, A, C.n), C.q) if A else 0)


@given(nested_pairs())
def test_nested_weight_routes_agree(pair):
    C0, C1 = pair
    oracle = min_weight_outside(words(C0), words(C1), C0.n)
    P = NestedPair(C0, C1)
    assert nested_weight(P, "enumerate") == oracle
    assert nested_weight(P, "support") == oracle


@given(codes())
def test_weight_routes_agree(C):
    oracle = min_weight_outside(words(C), {tuple([0] * C.n)}, C.n)
    assert weight(C, "enumerate") == oracle == weight(C, "support")


@given(codes(), st.data())
def test_puncture_shorten_dimension_identities(C, data):
    n = C.n
    A = sorted(data.draw(st.sets(st.integers(1, n), min_size=1)))
    rest = [i for i in range(1, n + 1) if i not in A]
    punct = puncture(C, A).k
    short_rest = shorten(C, rest).k if rest else 0
    assert punct + short_rest == C.k
    assert punct + shorten(dual(C), A).k == len(A)
    assert punct == rank(column_submatrix(C.gen, A))


@given(nested_pairs(max_n=5))
def test_weight_matches_shortened_dimension_gap(pair):
    C0, C1 = pair
    W0, W1 = words(C0), words(C1)
    n = C0.n
    for size in range(1, n + 1):
        for W in itertools.combinations(range(1, n + 1), size):
            grows = shortened_dim(C0, W) > shortened_dim(C1, W)
            witness = any(all(c[i - 1] == 0 for i in range(1, n + 1) if i not in W) for c in W0 - W1)
            assert grows == witness
