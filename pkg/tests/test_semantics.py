"""Informative semantics: worked examples and structural properties."""

import random

import pytest

from cdl import contracts as ct
from cdl.contracts import And, Bot, Frb, Obl, Perm, Seq, Top, Var
from cdl.errors import IllFormedContractError
from cdl.parser import load_contract_document, parse_contract
from cdl.semantics import (Evaluator, Verdict, VerdictKind, evaluate,
                           evaluate_norm, satisfies_at, violates_at)
from cdl.traces import Interaction
from helpers import rand_contract, rand_interaction

ROBOT_ALPHA = frozenset(
    {"detectProd", "lift", "putOnShelf", "charge0", "charge1"})

COLLAB = """
alphabet: detectProd, lift, putOnShelf, charge0, charge1
rec X. (P_0(charge0) /\\ P_1(charge1)) ;
      (((<detectProd_0> (O_0(lift) |> O_0(lift)) /\\ <detectProd_1> (O_1(lift) |> O_1(lift))) ;
        (O_0(putOnShelf) /\\ O_1(putOnShelf))) ; X)
"""


@pytest.fixture(scope="module")
def collab():
    return load_contract_document(COLLAB)[1]


@pytest.fixture(scope="module")
def example2():
    return Interaction.from_lists(
        ROBOT_ALPHA,
        [["charge0", "charge1"], ["detectProd"], ["lift"], ["lift"]],
        [["charge0", "charge1"], [], [], []])


def test_permit_charge_satisfied_at_zero(example2):
    pc = parse_contract("P_0(charge0) /\\ P_1(charge1)", ROBOT_ALPHA)
    assert evaluate(pc, example2) == Verdict.satisfied(0)


def test_collab_robot_violated_at_three(collab, example2):
    assert evaluate(collab, example2) == Verdict.violated(3)


def test_constants_decide_on_their_first_step():
    x = Interaction.from_lists({"a"}, [["a"], []], [[], []])
    for i in (0, 1):
        assert evaluate(Top(), x, i) == Verdict.satisfied(i)
        assert evaluate(Bot(), x, i) == Verdict.violated(i)


def test_start_past_the_end_is_unknown():
    x = Interaction.from_lists({"a"}, [["a"]], [["a"]])
    assert evaluate(Top(), x, 1).is_unknown
    empty = Interaction.from_lists({"a"}, [], [])
    assert evaluate(Obl(0, "a"), empty).is_unknown
    with pytest.raises(IndexError):
        evaluate(Top(), x, 2)


def test_ill_formed_contract_rejected():
    x = Interaction.from_lists({"a"}, [["a"]], [["a"]])
    with pytest.raises(IllFormedContractError):
        evaluate(ct.Rec("X", Var("X")), x)


class TestNorms:
    def test_obligation_needs_both_parties(self):
        assert evaluate_norm(Obl(0, "lift"), {"lift"}, set()) \
            is VerdictKind.VIOLATED
        assert evaluate_norm(Obl(0, "lift"), {"lift"}, {"lift"}) \
            is VerdictKind.SATISFIED

    def test_prohibition_one_withholder_suffices(self):
        assert evaluate_norm(Frb(0, "a"), {"a"}, set()) is VerdictKind.SATISFIED
        assert evaluate_norm(Frb(0, "a"), {"a"}, {"a"}) is VerdictKind.VIOLATED

    def test_permission_truth_table(self):
        # The rule: the subject's attempt implies the other party enables it.
        for subject_has in (False, True):
            for other_has in (False, True):
                e1 = {"b"} if subject_has else set()
                e0 = {"b"} if other_has else set()
                expected = (VerdictKind.SATISFIED
                            if (not subject_has or other_has)
                            else VerdictKind.VIOLATED)
                assert evaluate_norm(Perm(1, "b"), e0, e1) is expected

    def test_non_atomic_rejected(self):
        with pytest.raises(Exception):
            evaluate_norm(Seq(Top(), Top()), set(), set())


def test_conjunction_satisfaction_index_is_the_max():
    alpha = frozenset({"a", "b"})
    c = And(Obl(0, "a"), Seq(Obl(0, "a"), Obl(0, "b")))
    x = Interaction.from_lists(alpha, [["a"], ["b"]], [["a"], ["b"]])
    assert evaluate(c, x) == Verdict.satisfied(1)


def test_raw_relations_are_position_exact(collab, example2):
    assert violates_at(collab, example2, 0, 3)
    assert not violates_at(collab, example2, 0, 2)
    pc = parse_contract("P_0(charge0) /\\ P_1(charge1)", ROBOT_ALPHA)
    assert satisfies_at(pc, example2, 0, 0)
    assert not satisfies_at(pc, example2, 0, 1)


def test_prefix_stability_randomized():
    """A decided verdict never changes on extensions of the interaction."""
    rng = random.Random(21)
    alpha = ("a", "b")
    events = [frozenset(), frozenset({"a"}), frozenset({"b"}),
              frozenset({"a", "b"})]
    for _ in range(150):
        c = rand_contract(rng, alpha, budget=rng.randint(1, 7))
        x = rand_interaction(rng, alpha, 3)
        v = evaluate(c, x)
        extended = x.extended(rng.choice(events), rng.choice(events))
        if not v.is_unknown:
            assert evaluate(c, extended) == v


def test_lemma1_unfolding_equivalence():
    """A window-length unfolding is verdict-equivalent to the recursion."""
    rng = random.Random(22)
    alpha = ("a", "b")
    for _ in range(120):
        c = rand_contract(rng, alpha, budget=rng.randint(3, 8))
        x = rand_interaction(rng, alpha, 4)
        unfolded = ct.unfold_recursion(c, len(x))
        assert evaluate(c, x) == evaluate(unfolded, x)


def test_memoized_indices_match_scan():
    rng = random.Random(23)
    alpha = ("a", "b")
    for _ in range(80):
        c = rand_contract(rng, alpha, budget=rng.randint(1, 6))
        x = rand_interaction(rng, alpha, 4)
        ev = Evaluator(x)
        sats = [j for j in range(len(x)) if ev.sat(c, 0, j)]
        assert ev.sat_index(c, 0) == (sats[0] if sats else None)
