"""Mistake scores: worked examples and agreement with the verdicts."""

import random

import pytest

from cdl.contracts import Obl, Rep
from cdl.parser import load_contract_document
from cdl.quant import ScoreResult, score
from cdl.semantics import VerdictKind, evaluate
from cdl.traces import Interaction
from helpers import rand_contract, rand_interaction
from test_semantics import COLLAB, ROBOT_ALPHA


@pytest.fixture(scope="module")
def collab():
    return load_contract_document(COLLAB)[1]


@pytest.fixture(scope="module")
def repaired_lift():
    return Interaction.from_lists(
        ROBOT_ALPHA,
        [["charge0"], ["detectProd"], [], ["lift"]],
        [["charge0"], [], ["lift"], ["lift"]])


def test_robot_zero_scores_one(collab, repaired_lift):
    result = score(collab, repaired_lift, 0)
    assert result == ScoreResult(VerdictKind.UNKNOWN, 1, 0)


def test_robot_one_scores_zero(collab, repaired_lift):
    assert score(collab, repaired_lift, 1).score == 0


def test_clean_satisfaction_scores_zero(collab):
    x = Interaction.from_lists(
        ROBOT_ALPHA,
        [["charge0"], ["detectProd"], ["lift"], ["putOnShelf"]],
        [["charge0"], [], ["lift"], ["putOnShelf"]])
    for party in (0, 1):
        result = score(collab, x, party)
        assert result.score == 0


def test_repaired_obligation_scores_the_blamed_party():
    alpha = frozenset({"a"})
    c = Rep(Obl(0, "a"), Obl(0, "a"))
    x = Interaction.from_lists(alpha, [[], ["a"]], [["a"], ["a"]])
    zero = score(c, x, 0)
    assert zero.status is VerdictKind.SATISFIED and zero.score == 1
    assert score(c, x, 1).score == 0


def test_empty_interaction_scores_zero():
    alpha = frozenset({"a"})
    c = Obl(0, "a")
    x = Interaction.from_lists(alpha, [], [])
    result = score(c, x, 0)
    assert result.status is VerdictKind.UNKNOWN and result.score == 0


def test_party_validation():
    alpha = frozenset({"a"})
    x = Interaction.from_lists(alpha, [], [])
    with pytest.raises(ValueError):
        score(Obl(0, "a"), x, 2)


def test_status_always_matches_the_verdict():
    rng = random.Random(41)
    for _ in range(250):
        c = rand_contract(rng, ("a", "b"), budget=rng.randint(1, 7))
        x = rand_interaction(rng, ("a", "b"), 4)
        verdict = evaluate(c, x)
        for party in (0, 1):
            assert score(c, x, party).status is verdict.kind


def test_reparation_chain_accumulates_unit_increments():
    alpha = frozenset({"a"})
    c = Rep(Obl(0, "a"), Rep(Obl(0, "a"), Obl(0, "a")))
    x = Interaction.from_lists(alpha, [[], [], ["a"]],
                               [["a"], ["a"], ["a"]])
    result = score(c, x, 0)
    assert result.status is VerdictKind.SATISFIED and result.score == 2
