"""Interactions: the step-wise operators, slicing, and the file format."""

import pytest
from hypothesis import given, strategies as st

from cdl.errors import CdlError, ParseError
from cdl.formula import LabeledAction
from cdl.traces import (Interaction, dump_interaction, labeled_union,
                        load_interaction, split_labeled, stepwise_meet)

ALPHA = frozenset({"a", "b", "c", "d", "e", "detectProd"})


def la(name, party):
    return LabeledAction(name, party)


def test_labeled_union_example():
    assert labeled_union({"c", "d"}, {"d", "e"}) == frozenset(
        {la("c", 0), la("d", 0), la("d", 1), la("e", 1)})


def test_labeled_union_empty_and_shared():
    assert labeled_union(set(), set()) == frozenset()
    assert labeled_union({"a"}, {"a"}) == frozenset({la("a", 0), la("a", 1)})


def test_stepwise_meet():
    assert stepwise_meet({"c", "d"}, {"d", "e"}) == frozenset({"d"})
    assert stepwise_meet(set(), {"a"}) == frozenset()
    assert stepwise_meet({"a", "b"}, {"a", "b"}) == frozenset({"a", "b"})


def mk(events0, events1):
    return Interaction.from_lists(ALPHA, events0, events1)


def test_slice_lengths_and_bounds():
    x = mk([["a"], ["b"], ["c"], []], [[], [], [], ["d"]])
    assert len(x.slice(1, 3)) == 3
    assert len(x.slice(2, 1)) == 0
    single = x.slice(2, 2)
    assert single.trace0 == (frozenset({"c"}),)
    with pytest.raises(IndexError):
        x.slice(1, 4)


def test_slice_tracks_origin():
    x = mk([["a"], ["b"], ["c"]], [[], [], []])
    assert x.slice(1, 2).origin == 1
    assert x.slice(1, 2).slice(0, 0).origin == 1


def test_unequal_lengths_rejected():
    with pytest.raises(CdlError):
        mk([["a"]], [])


def test_undeclared_event_action_rejected():
    with pytest.raises(CdlError):
        Interaction.from_lists({"a"}, [["z"]], [["a"]])


def test_to_labeled_examples():
    x = mk([["detectProd"]], [[]])
    assert x.to_labeled() == (frozenset({la("detectProd", 0)}),)
    assert mk([], []).to_labeled() == ()
    fig4c = mk([["a"]], [["c"]])
    assert fig4c.labeled(0) == frozenset({la("a", 0), la("c", 1)})


def test_split_labeled_recovers_components():
    e = labeled_union({"a", "b"}, {"b"})
    assert split_labeled(e) == (frozenset({"a", "b"}), frozenset({"b"}))


events = st.lists(
    st.sets(st.sampled_from(sorted(ALPHA)), max_size=3), max_size=5)


@given(events, events)
def test_labeled_union_is_injective(e0s, e1s):
    n = min(len(e0s), len(e1s))
    x = mk(e0s[:n], e1s[:n])
    for i in range(n):
        assert split_labeled(x.labeled(i)) == x.event_pair(i)
    assert len(x.to_labeled()) == len(x)


@given(events, st.data())
def test_slice_composition(e0s, data):
    x = mk(e0s, e0s)
    if not len(x):
        return
    i = data.draw(st.integers(0, len(x) - 1))
    j = data.draw(st.integers(i, len(x) - 1))
    k = data.draw(st.integers(0, j - i))
    inner = x.slice(i, j).slice(0, k)
    assert (inner.trace0, inner.trace1, inner.origin) == (
        x.slice(i, i + k).trace0, x.slice(i, i + k).trace1, i)


def test_file_roundtrip():
    x = mk([["a", "b"], []], [["c"], ["d"]])
    again = load_interaction(dump_interaction(x))
    assert again.trace0 == x.trace0 and again.trace1 == x.trace1
    assert again.alphabet == x.alphabet


def test_file_errors():
    with pytest.raises(ParseError):
        load_interaction("not json")
    with pytest.raises(ParseError):
        load_interaction('{"alphabet": ["a"], "party0": [["a"]]}')
    with pytest.raises(ParseError):
        load_interaction(
            '{"alphabet": ["a"], "party0": [["a"]], "party1": []}')
    with pytest.raises(ParseError):
        load_interaction(
            '{"alphabet": ["a"], "party0": [["z"]], "party1": [[]]}')
