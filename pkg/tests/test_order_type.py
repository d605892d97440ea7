import random
from collections import defaultdict
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inscribe.counting import census_records
from inscribe.families import PnParams, make_pn
from inscribe.geometry import Configuration, Point, in_general_position
from inscribe.order_type import (
    REFLECTION,
    Chirotope,
    NotSimple,
    canonical_form,
    chirotope,
    contains_suborder,
    find_isomorphism,
    same_order_type,
)

# canonical code of P_3, frozen from the first exact run
P3_CODE = "000c000000000000000000000003000fe00030fe050300001850300c3000"


def P(x, y):
    return Point.of(x, y)


def cfg_of(pts):
    return Configuration({f"v{i}": p for i, p in enumerate(pts)})


coords = st.integers(min_value=-40, max_value=40)
point_sets = st.lists(st.builds(Point.of, coords, coords), min_size=3, max_size=8, unique=True).map(cfg_of).filter(
    in_general_position
)


def test_chirotope_examples():
    assert chirotope(cfg_of([P(0, 0), P(1, 0), P(0, 1)])).signs == (1,)
    assert chirotope(cfg_of([P(0, 0), P(0, 1), P(1, 0)])).signs == (-1,)


def test_chirotope_sign_lookup_expands_antisymmetrically():
    chi = chirotope(cfg_of([P(0, 0), P(4, 0), P(0, 4), P(1, 1)]))
    for a, b, c in combinations(chi.labels, 3):
        s = chi.sign(a, b, c)
        assert chi.sign(b, c, a) == s and chi.sign(b, a, c) == -s


def test_canonical_examples():
    q1 = cfg_of([P(0, 0), P(3, 0), P(3, 2), P(0, 2)])
    q2 = cfg_of([P(1, 1), P(9, 0), P(8, 8), P(-2, 5)])
    assert canonical_form(chirotope(q1)) == canonical_form(chirotope(q2))
    pent = cfg_of([P(0, 0), P(4, 0), P(5, 3), P(2, 5), P(-1, 3)])
    quad_pt = cfg_of([P(0, 0), P(4, 0), P(4, 4), P(0, 4), P(1, 2)])
    assert canonical_form(chirotope(pent)) != canonical_form(chirotope(quad_pt))


def test_p3_code_frozen_and_stable_under_epsilon():
    assert canonical_form(chirotope(make_pn(3))).hex() == P3_CODE
    assert same_order_type(make_pn(PnParams(3, Fraction(1, 50))), make_pn(3))


def test_p3_rotation_has_same_code():
    cfg = make_pn(3)
    # rotating the labels a_i -> a_{i+1} etc. is the symmetry of the construction
    rot = {f"{k}{i}": f"{k}{i % 3 + 1}" for k in "abcd" for i in (1, 2, 3)}
    assert same_order_type(cfg, cfg.relabel(rot))


def test_not_simple():
    with pytest.raises(NotSimple):
        canonical_form(chirotope(cfg_of([P(0, 0), P(1, 1), P(2, 2), P(0, 5)])))


@given(point_sets, st.randoms(use_true_random=False))
def test_canonical_relabeling_invariance(cfg, rnd):
    chi = chirotope(cfg)
    order = list(chi.labels)
    rnd.shuffle(order)
    assert canonical_form(chi.relabeled(order)) == canonical_form(chi)


@given(point_sets)
def test_mirror_code_agrees_with_isomorphism_oracle(cfg):
    chi = chirotope(cfg)
    mirror = chi.mirrored()
    same = canonical_form(chi) == canonical_form(mirror)
    assert same == (find_isomorphism(chi, mirror) is not None)
    assert canonical_form(chi, REFLECTION) == canonical_form(mirror, REFLECTION)


@given(point_sets, st.randoms(use_true_random=False))
def test_contains_induced_subset(cfg, rnd):
    chi = chirotope(cfg)
    k = rnd.randint(3, chi.n)
    sub = rnd.sample(list(chi.labels), k)
    hit = contains_suborder(chi, chi.restrict(sub))
    assert hit is not None
    pat = chi.restrict(sub)
    for a, b, c in combinations(sub, 3):
        assert pat.sign(a, b, c) == chi.sign(hit[a], hit[b], hit[c])


def test_contains_examples():
    pent = chirotope(cfg_of([P(0, 0), P(4, 0), P(5, 3), P(2, 5), P(-1, 3)]))
    tri = chirotope(cfg_of([P(0, 0), P(1, 0), P(0, 1)]))
    tri_pt = chirotope(cfg_of([P(0, 0), P(6, 0), P(0, 6), P(1, 1)]))
    assert contains_suborder(pent, tri) is not None
    assert contains_suborder(pent, tri_pt) is None


def test_canonical_codes_match_isomorphism_on_census_sample():
    rng = random.Random(11)
    groups = defaultdict(list)
    for _, _, chi in census_records(4):
        groups[canonical_form(chi)].append(chi)
    multi = [g for g in groups.values() if len(g) > 1]
    codes = list(groups)
    for i in range(100):
        if i % 2 == 0:
            a, b = rng.sample(rng.choice(multi), 2)
        else:
            ca, cb = rng.sample(codes, 2)
            a, b = rng.choice(groups[ca]), rng.choice(groups[cb])
        b = b.relabeled(rng.sample(list(b.labels), b.n))
        equal = canonical_form(a) == canonical_form(b)
        assert equal == (i % 2 == 0)
        assert equal == (find_isomorphism(a, b) is not None)


def test_chirotope_validation():
    with pytest.raises(ValueError):
        Chirotope(("a", "b", "c"), (1, 1))
    with pytest.raises(ValueError):
        Chirotope(("a", "a", "c"), (1,))
