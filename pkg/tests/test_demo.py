from __future__ import annotations

import itertools
from collections import Counter

import pytest

from ceqss.demo import (
    COST_THREE,
    COST_TWO,
    GOLDEN,
    demo_encode,
    demo_recover_three,
    demo_recover_two,
    demo_secrecy_check,
    exhaustive_check,
    render,
)


@pytest.mark.parametrize("values, expected", sorted(GOLDEN.items()))
def test_golden_table(values, expected):
    sh = demo_encode(*values)
    assert (sh.layer1, sh.layer2) == expected


def test_golden_entries_by_hand():
    # (1,0,0,0): only s contributes; (0,1,1,1): x + x^2 and 1 + x mod 5
    assert GOLDEN[(1, 0, 0, 0)] == ((1, 1, 1), (0, 0, 0))
    assert GOLDEN[(0, 1, 1, 1)] == ((2, 1, 2), (2, 3, 4))


def test_two_party_example():
    sh = demo_encode(3, 1, 4, 2)
    rec = demo_recover_two((sh.party(1), sh.party(2)), (1, 2))
    assert rec.secret == 3 and rec.cost == 4
    assert [title for title, _ in rec.steps] == ["received", "decode layer 2", "cancel r2 from layer 1", "solve for s"]


def test_zero_tuple_recovers_zero():
    sh = demo_encode(0, 0, 0, 0)
    assert demo_recover_two((sh.party(2), sh.party(3)), (2, 3)).secret == 0
    assert demo_recover_three(sh.layer1).secret == 0


def test_three_party_recovery_for_fixed_secret():
    for r in itertools.product(range(5), repeat=3):
        assert demo_recover_three(demo_encode(2, *r).layer1).secret == 2


def test_invalid_pair():
    with pytest.raises(ValueError):
        demo_recover_two(((0, 0), (0, 0)), (1, 1))


def test_costs():
    assert COST_TWO == 4 and COST_THREE == 3 and COST_THREE < COST_TWO


def test_single_parties_learn_nothing():
    assert demo_secrecy_check()


def test_two_parties_are_not_secret():
    for i, j in itertools.combinations((1, 2, 3), 2):
        dists = []
        for s in range(5):
            dists.append(
                Counter(
                    demo_encode(s, *r).party(i) + demo_encode(s, *r).party(j)
                    for r in itertools.product(range(5), repeat=3)
                )
            )
        assert any(d != dists[0] for d in dists[1:])


def test_exhaustive_check_passes():
    assert all(exhaustive_check().values())


def test_render_is_deterministic():
    assert render(3, 1, 4, 2) == render(3, 1, 4, 2)
    assert "s = 3" in render(3, 1, 4, 2)
