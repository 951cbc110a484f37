from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ceqss.codes import LinearCode
from ceqss.ecss import (
    ecss_new,
    omega_member,
    random_spec,
    split,
    tau,
    tau_full,
    tau_none,
    tau_oracle,
)
from ceqss.errors import ConditionError, DomainError
from ceqss.gf import FieldSpec
from ceqss.linalg import FqMatrix, vstack

F5 = FieldSpec(5)


def example():
    F0 = LinearCode.span([[1, 1, 1], [1, 2, 3]], F5)
    return ecss_new(F0, LinearCode.zero(3, F5), FqMatrix([[1, 4, 4]], F5))


def test_example_structure():
    spec = example()
    assert spec.n == 3 and spec.e == 1 and spec.big.n == 4
    assert spec.big.pair.C0.gen.tolist()[-1] == [1, 4, 4, 1]


def test_example_thresholds():
    spec = example()
    assert tau(spec, split(spec, 1)) == 2
    assert tau(spec, split(spec, 0)) == 3
    assert tau_full(spec) == 2 and tau_none(spec) == 3
    assert tau_oracle(spec, split(spec, 1)) == 2
    assert tau_oracle(spec, split(spec, 0)) == 3


def test_omega_membership():
    spec = example()
    full, none = split(spec, 1), split(spec, 0)
    assert omega_member(spec, full, [1, 2])
    assert not omega_member(spec, none, [1, 2])
    assert omega_member(spec, none, [1, 2, 3])


def test_condition_errors():
    F0 = LinearCode.span([[1, 1, 1], [1, 2, 3]], F5)
    with pytest.raises(ConditionError) as err:
        ecss_new(F0, LinearCode.zero(3, F5), FqMatrix([[2, 3, 4]], F5))
    assert err.value.condition == "N2"
    with pytest.raises(ConditionError) as err:
        ecss_new(F0, F0, FqMatrix([[1, 4, 4]], F5))
    assert err.value.condition == "N1"


def test_empty_extension_is_plain_css():
    F0 = LinearCode.span([[1, 1, 1], [1, 2, 3]], F5)
    F1 = LinearCode.span([[1, 1, 1]], F5)
    spec = ecss_new(F0, F1, FqMatrix.zeros(0, 3, F5))
    assert spec.big.n == 3
    assert tau_full(spec) == tau_none(spec)


def test_split_partitions_rows():
    rng = np.random.default_rng(3)
    spec = random_spec(rng, 5, 5, 2)
    sp = split(spec, 1, accessible=[1])
    assert sp.accessible == (1,)
    assert vstack([sp.GV, sp.GU]) == spec.GE
    with pytest.raises(DomainError):
        split(spec, 3)
    with pytest.raises(DomainError):
        split(spec, 1, accessible=[2])


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5]), st.integers(2, 5), st.integers(0, 2))
def test_closed_form_matches_oracle(seed, q, n, e):
    spec = random_spec(np.random.default_rng(seed), q, n, e)
    previous = None
    for u in range(spec.e + 1):
        sp = split(spec, u)
        oracle = tau_oracle(spec, sp)
        assert tau(spec, sp, "enumerate") == oracle
        assert tau(spec, sp, "support") == oracle
        if previous is not None:
            assert oracle <= previous
        previous = oracle
    assert tau_full(spec) <= tau_none(spec)


@given(st.integers(0, 2**32 - 1))
def test_any_accessible_subset_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    spec = random_spec(rng, 3, 4, 2)
    for rows in ([], [0], [1], [0, 1]):
        sp = split(spec, len(rows), accessible=rows)
        assert tau(spec, sp) == tau_oracle(spec, sp)
