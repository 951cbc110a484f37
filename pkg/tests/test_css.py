from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given

from ceqss.codes import LinearCode
from ceqss.css import classify_subsets, css_costs, css_new, is_authorized, qss_thresholds
from ceqss.errors import DomainError, ResourceError
from ceqss.gf import FieldSpec
from helpers import nested_pairs
from oracles import authorized, span, subsets

F2, F3 = FieldSpec(2), FieldSpec(3)


def qutrit_code():
    return css_new(LinearCode.span([[1, 1, 1], [0, 1, 2]], F3), LinearCode.span([[1, 1, 1]], F3))


def test_three_qutrit_code_parameters():
    css = qutrit_code()
    assert (css.n, css.k, css.delta) == (3, 1, 2)
    assert qss_thresholds(css) == (2, 1)
    assert css_costs(css) == {"m": 1, "w": 1, "cc_t": 2}


def test_two_qubit_full_space_code():
    css = css_new(LinearCode.full(2, F2), LinearCode.zero(2, F2))
    assert (css.n, css.k, css.delta) == (2, 2, 1)
    assert qss_thresholds(css) == (2, 0)


def test_equal_codes_rejected():
    C = LinearCode.full(2, F2)
    with pytest.raises(DomainError):
        css_new(C, C)


def test_authorized_examples():
    css = qutrit_code()
    assert is_authorized(css, {1, 2})
    assert is_authorized(css, {1, 2, 3})
    assert not is_authorized(css, set())
    assert not is_authorized(css, {3})
    with pytest.raises(DomainError):
        is_authorized(css, {4})


def test_classification_of_three_qutrit_code():
    rep = classify_subsets(qutrit_code())
    assert rep.t_min == 2 and rep.z_max == 1
    assert rep.gamma == [(1, 2), (1, 3), (2, 3), (1, 2, 3)]
    assert rep.adversary == [(), (1,), (2,), (3,)]
    assert rep.intermediate == []
    assert rep.status((2, 1)) == "authorized"
    d = rep.to_dict()
    assert d["t_min"] == 2 and d["authorized"][0] == [1, 2]


def test_sweep_guard():
    css = css_new(LinearCode.full(21, F2), LinearCode.zero(21, F2))
    with pytest.raises(ResourceError):
        classify_subsets(css)


def test_grouped_classification():
    # two coordinates per party: the [[6,2,...]] code behaves like the [[3,1,2]] code doubled
    base = qutrit_code()
    G0 = np.kron(base.pair.C0.gen.data, np.eye(2, dtype=np.int64))
    G1 = np.kron(base.pair.C1.gen.data, np.eye(2, dtype=np.int64))
    css = css_new(LinearCode.span(G0, F3), LinearCode.span(G1, F3))
    groups = [(1, 2), (3, 4), (5, 6)]
    rep = classify_subsets(css, groups)
    assert rep.t_min == 2 and rep.z_max == 1


@given(nested_pairs(max_n=5))
def test_rank_test_matches_counting_oracle(pair):
    C0, C1 = pair
    css = css_new(C0, C1)
    q, n = C0.q, C0.n
    w0, w1 = span(C0.gen.tolist(), q, n), span(C1.gen.tolist(), q, n)
    for J in subsets(n):
        assert is_authorized(css, J) == authorized(w0, w1, J, n, q)


@given(nested_pairs(max_n=6))
def test_structural_laws(pair):
    css = css_new(*pair)
    rep = classify_subsets(css)
    n = css.n
    gamma = set(rep.gamma)
    adversary = set(rep.adversary)
    assert len(gamma) + len(adversary) + len(rep.intermediate) == 2**n
    everyone = set(range(1, n + 1))
    for J in gamma:
        assert tuple(sorted(everyone - set(J))) in adversary
        for extra in everyone - set(J):
            assert tuple(sorted(set(J) | {extra})) in gamma
    for A, B in itertools.combinations(gamma, 2):
        assert set(A) & set(B)
    assert rep.t_min + rep.z_max == n
    t, z = qss_thresholds(css)
    assert rep.t_min <= t and rep.z_max >= z
