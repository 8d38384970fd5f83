import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfly.ensemble import (
    EnsembleSpec,
    enumerate_ensemble,
    read_catalog,
    realization_exists,
    write_catalog,
)
from bfly.errors import InfeasibleDegrees, LimitExceeded
from bfly.graph import DegreePair, butterfly_count, degree_sequences

from oracles import count_realizations, realizations_by_subsets


def test_examples():
    assert len(enumerate_ensemble(EnsembleSpec.of((1, 1), (1, 1)))) == 2
    assert len(enumerate_ensemble(EnsembleSpec.of((2, 1), (2, 1)))) == 1
    cat = enumerate_ensemble(EnsembleSpec.of((2, 2), (2, 2), 1))
    assert len(cat) == 1 and cat.members[0].edges == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert len(enumerate_ensemble(EnsembleSpec.of((2, 2), (2, 2), 0))) == 0


def test_realization_exists():
    assert realization_exists(DegreePair((2, 2), (2, 2)))
    assert not realization_exists(DegreePair((3,), (1, 1)))
    assert not realization_exists(DegreePair((2, 2), (4,)))


def test_unbalanced_spec_rejected():
    with pytest.raises(InfeasibleDegrees):
        EnsembleSpec.of((3,), (1, 1))
    with pytest.raises(InfeasibleDegrees):
        enumerate_ensemble(EnsembleSpec.of((2, 2), (4, 0)))


def test_limit_carries_partial():
    with pytest.raises(LimitExceeded) as info:
        enumerate_ensemble(EnsembleSpec.of((2, 2, 1, 1), (2, 2, 1, 1)), limit=10)
    assert info.value.partial_count == 10
    assert len(info.value.partial) == 10


def test_streaming_callback():
    seen = []
    cat = enumerate_ensemble(EnsembleSpec.of((2, 1, 1), (2, 1, 1)), callback=lambda g, b: seen.append(g))
    assert len(cat) == 0 and len(seen) == 5


def test_members_sorted_and_valid():
    spec = EnsembleSpec.of((2, 2, 1, 1), (2, 2, 1, 1))
    cat = enumerate_ensemble(spec)
    assert len(cat) == 34
    keys = [g.sorted_edges() for g in cat.members]
    assert keys == sorted(keys) and len({g.edges for g in cat.members}) == len(cat)
    assert all(degree_sequences(g) == spec.degrees for g in cat.members)
    assert cat.butterflies == [butterfly_count(g) for g in cat.members]
    assert sum(cat.butterfly_histogram().values()) == 34


def test_catalog_roundtrip(tmp_path):
    cat = enumerate_ensemble(EnsembleSpec.of((2, 2, 1), (2, 2, 1), 0))
    write_catalog(cat, tmp_path)
    back = read_catalog(tmp_path)
    assert back.members == cat.members and back.spec == cat.spec
    assert back.butterflies == cat.butterflies


@st.composite
def degree_pairs(draw, max_side=4, max_deg=3):
    nl = draw(st.integers(1, max_side))
    nr = draw(st.integers(1, max_side))
    left = draw(st.lists(st.integers(0, min(max_deg, nr)), min_size=nl, max_size=nl))
    right = [0] * nr
    # spread the left total over right nodes so the sums always match
    for _ in range(sum(left)):
        right[draw(st.integers(0, nr - 1))] += 1
    return tuple(left), tuple(right)


@settings(max_examples=80)
@given(degree_pairs())
def test_count_matches_oracles(pair):
    left, right = pair
    want = count_realizations(left, right)
    assert realization_exists(DegreePair(left, right)) == (want > 0)
    if want == 0:
        return
    cat = enumerate_ensemble(EnsembleSpec.of(left, right))
    assert len(cat) == want
    if len(left) * len(right) <= 12:
        assert {g.edges for g in cat.members} == set(realizations_by_subsets(left, right))


@settings(max_examples=40)
@given(degree_pairs(), st.randoms(use_true_random=False))
def test_count_invariant_under_permuting_degrees(pair, rng):
    left, right = pair
    if not realization_exists(DegreePair(left, right)):
        return
    pl, pr = list(left), list(right)
    rng.shuffle(pl)
    rng.shuffle(pr)
    a = enumerate_ensemble(EnsembleSpec.of(left, right))
    b = enumerate_ensemble(EnsembleSpec.of(pl, pr))
    assert len(a) == len(b)


def test_butterfly_filter_partitions():
    left = right = (2, 2, 2, 1)
    total = enumerate_ensemble(EnsembleSpec.of(left, right))
    parts = sum(len(enumerate_ensemble(EnsembleSpec.of(left, right, b)))
                for b in total.butterfly_histogram())
    assert parts == len(total) == count_realizations(left, right)


def test_random_6x6_against_row_recursion():
    rng = random.Random(5)
    for _ in range(3):
        left = [rng.randint(1, 2) for _ in range(6)]
        right = [0] * 6
        for _ in range(sum(left)):
            right[rng.randrange(6)] += 1
        if not realization_exists(DegreePair(tuple(left), tuple(right))):
            continue
        assert len(enumerate_ensemble(EnsembleSpec.of(left, right))) == count_realizations(left, right)
