from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inscribe.counting import (
    CountReport,
    census_records,
    conowheel_count,
    enumerate_order_types_two_interior,
    enumerate_staircase_pairs,
    hyperfactorial,
    lozenge_count,
    two_interior_pair_total,
)
from inscribe.order_type import REFLECTION, canonical_form, find_isomorphism
from inscribe.staircase import validate_staircase

# census values (oriented convention), frozen from the first exact run and
# cross-checked against the backtracking isomorphism oracle for n <= 3
CENSUS = {
    0: ((1, 0, 0), (1, 0, 0)),
    1: ((1, 0, 0), (2, 0, 0)),
    2: ((1, 1, 0), (3, 2, 0)),
    3: ((1, 1, 1), (4, 8, 2)),
    4: ((1, 3, 8), (5, 22, 15)),
    5: ((1, 5, 37), (6, 52, 74)),
}


def test_hyperfactorial_examples():
    assert [hyperfactorial(k) for k in (0, 1, 4, 6)] == [1, 1, 12, 34560]
    with pytest.raises(ValueError):
        hyperfactorial(-1)


def test_lozenge_examples():
    assert lozenge_count(2, 1, 1) == 3
    assert lozenge_count(2, 2, 2) == 20
    assert all(lozenge_count(a, b, 0) == 1 for a in range(5) for b in range(5))


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_lozenge_symmetric(a, b, c):
    v = lozenge_count(a, b, c)
    assert v == lozenge_count(b, c, a) == lozenge_count(b, a, c)


def test_pair_enumeration_examples():
    assert len(list(enumerate_staircase_pairs(1, 1))) == 3
    assert len(list(enumerate_staircase_pairs(0, 5))) == 1
    got = list(enumerate_staircase_pairs(2, 2))
    assert len(got) == 20 and all(validate_staircase(p) for p in got)
    keys = [(p.psi_L, p.psi_R) for p in got]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_pair_total_examples():
    assert two_interior_pair_total(0) == 1
    assert two_interior_pair_total(2) == 5 == comb(6, 2) // 3
    assert two_interior_pair_total(10) == 58786


def test_conowheel_examples():
    assert [conowheel_count(n) for n in (3, 4, 5)] == [2, 2, 4]
    with pytest.raises(ValueError):
        conowheel_count(2)


@pytest.mark.parametrize("n", sorted(CENSUS))
def test_census_frozen(n):
    rep = enumerate_order_types_two_interior(n)
    assert (rep.by_interior, rep.pairs_by_interior) == CENSUS[n]
    assert rep.staircase_pair_total == two_interior_pair_total(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_census_matches_isomorphism_oracle(n):
    reps = []
    for _, _, chi in census_records(n):
        if not any(find_isomorphism(chi, r) is not None for r in reps if r.n == chi.n):
            reps.append(chi)
    assert len(reps) == sum(CENSUS[n][0])
    mirror_reps = []
    for chi in reps:
        if not any(find_isomorphism(chi, r, allow_mirror=True) is not None for r in mirror_reps):
            mirror_reps.append(chi)
    rep = enumerate_order_types_two_interior(n)
    assert rep.other_convention[REFLECTION] == len(mirror_reps)
    assert len({canonical_form(c) for c in reps}) == len(reps)


def test_report_text_is_flat_key_value():
    rep = enumerate_order_types_two_interior(3)
    lines = rep.to_text().splitlines()
    kv = dict(line.split("=", 1) for line in lines)
    assert kv["N"] == "3" and kv["N0"] == "1" and kv["convention"] == "oriented"
    assert kv["N[reflection]"] == "3"
    assert isinstance(rep, CountReport) and rep.N == 3
