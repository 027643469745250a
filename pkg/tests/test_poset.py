import itertools

import pytest
from hypothesis import given, settings

from conftest import chain_poset
from lexshell.errors import CycleDetected, DuplicateElement, NotBounded, NotComparable, UnknownElement
from lexshell.poset import (
    augment,
    bounded,
    build_poset,
    closed_interval,
    interval_poset,
    is_graded,
    maximal_chains,
)
from strategies import bounded_posets, closure


def test_three_chain_has_six_comparable_pairs():
    p = build_poset([0, 1, 2], [(0, 1), (1, 2)])
    assert len(p.leq_pairs) == 6
    assert p.bottom == 0 and p.top == 2


def test_fig1_bounds_and_covers(fig1):
    p, lab = fig1
    assert (p.bottom, p.top) == ("a", "g")
    assert len(p.covers) == 9
    assert sorted(lab.values()) == list(range(1, 10))


def test_two_cycle_rejected():
    with pytest.raises(CycleDetected):
        build_poset([0, 1], [(0, 1), (1, 0)])


def test_validation_errors():
    with pytest.raises(DuplicateElement):
        build_poset(["a", "a"], [])
    with pytest.raises(UnknownElement):
        build_poset(["a"], [("a", "b")])


def test_non_cover_pairs_are_dropped():
    p = build_poset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert set(p.covers) == {("a", "b"), ("b", "c")}


def test_augment_antichain_gives_diamond():
    p = augment(build_poset(["x", "y"], []))
    assert len(p.elements) == 4
    assert p.is_bounded
    assert len(p.covers) == 4


def test_augment_chain_and_fig1(fig1):
    assert len(augment(chain_poset(3)).elements) == 5
    p, _ = fig1
    q = augment(p)
    assert len(q.elements) == 9
    assert ("0^", "a") in q.covers and ("g", "1^") in q.covers
    assert bounded(p) is p


def test_augment_avoids_name_clash():
    p = augment(build_poset(["0^", "x"], []))
    assert len(set(p.elements)) == 4


def test_unbounded_poset_has_no_bottom():
    with pytest.raises(NotBounded):
        build_poset(["x", "y"], []).bottom


def test_closed_interval(fig1):
    p, _ = fig1
    assert closed_interval(p, "a", "f").members == frozenset("abcf")
    with pytest.raises(NotComparable):
        closed_interval(p, "d", "e")
    chains = {str(c) for c in maximal_chains(closed_interval(p, "a", "f"))}
    assert chains == {"a-b-f", "a-c-f"}


def test_fig1_interval_count_matches_brute_force(fig1):
    p, _ = fig1
    rel = closure(p.elements, p.covers)
    assert len(p.intervals()) == len(rel) == 21


def test_graded():
    assert is_graded(chain_poset(4))
    diamond = augment(build_poset(["x", "y"], []))
    assert is_graded(diamond)


def test_fig1_is_not_graded(fig1):
    assert not is_graded(fig1[0])


def test_interval_poset(fig1):
    p, _ = fig1
    sub = interval_poset(closed_interval(p, "b", "g"))
    assert set(sub.elements) == set("befg")
    assert (sub.bottom, sub.top) == ("b", "g")


@settings(max_examples=60, deadline=None)
@given(bounded_posets())
def test_order_matches_closure_oracle(p):
    rel = closure(p.elements, p.covers)
    assert p.leq_pairs == frozenset(rel)
    for x, y in itertools.product(p.elements, repeat=2):
        assert p.leq(x, y) == ((x, y) in rel)


@settings(max_examples=60, deadline=None)
@given(bounded_posets())
def test_covers_are_transitive_reduction(p):
    rel = closure(p.elements, p.covers)
    strict = {(x, y) for x, y in rel if x != y}
    reduced = {
        (x, y) for x, y in strict
        if not any((x, z) in strict and (z, y) in strict for z in p.elements)
    }
    assert set(p.covers) == reduced
