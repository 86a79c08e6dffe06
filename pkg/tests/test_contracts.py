"""Contract syntax: well-formedness restrictions and recursion unfolding."""

import pytest

from cdl import contracts as ct
from cdl import formula as fm
from cdl.contracts import (And, Bot, Frb, Guard, Obl, Perm, ReAtom, Rec, Rep,
                           Seq, Top, Trigger, Var, check_wellformed, size,
                           substitute, unfold_recursion)

A = ReAtom(fm.atom("a", 0))
C = Obl(0, "a")
C2 = Obl(1, "b")


def wf(contract):
    return not check_wellformed(contract)


class TestWellformedness:
    def test_valid_trigger_reparation_loop(self):
        # rec X. <re>((C |> C') ; X)
        c = Rec("X", Trigger(A, Seq(Rep(C, C2), Var("X"))))
        assert wf(c)

    def test_valid_guarded_reparation_tail(self):
        # re ~> (rec X. C |> X)
        c = Guard(A, Rec("X", Rep(C, Var("X"))))
        assert wf(c)

    def test_invalid_bare_variable(self):
        assert not wf(Rec("X", Var("X")))

    def test_invalid_variable_under_conjunction(self):
        c = Rec("X", Seq(C, And(C2, Var("X"))))
        assert not wf(c)

    def test_invalid_variable_left_of_sequence(self):
        c = Rec("X", Trigger(A, Seq(Seq(C, Var("X")), C2)))
        assert not wf(c)

    def test_invalid_unguarded_reparation_tail(self):
        assert not wf(Rec("X", Rep(C, Var("X"))))

    def test_unbound_variable(self):
        violations = check_wellformed(Seq(C, Var("Y")))
        assert violations and "unbound" in violations[0].message

    def test_duplicate_recursion_variable(self):
        inner = Rec("X", Seq(C, Var("X")))
        outer = Rec("X", Seq(inner, Var("X")))
        messages = " ".join(v.message for v in check_wellformed(outer))
        assert "reused" in messages

    def test_variable_must_occur_exactly_once(self):
        c = Rec("X", Seq(Var("X"), Var("X")))
        messages = " ".join(v.message for v in check_wellformed(c))
        assert "occurs 2 times" in messages

    def test_violation_reports_path(self):
        c = Seq(C, Rec("X", Var("X")))
        violations = check_wellformed(c)
        assert violations[0].path == "/right"


class TestUnfold:
    def test_two_unrollings(self):
        c = Rec("X", Seq(C, Var("X")))
        assert unfold_recursion(c, 2) == Seq(C, Seq(C, Top()))

    def test_zero_unrollings_is_top(self):
        c = Rec("X", Seq(C, Var("X")))
        assert unfold_recursion(c, 0) == Top()

    def test_recursion_free_fixpoint(self):
        c = Seq(Rep(C, C2), And(Top(), Bot()))
        assert unfold_recursion(c, 3) == c

    def test_nested_operators_are_preserved(self):
        c = Trigger(A, Rec("X", Seq(C, Var("X"))))
        out = unfold_recursion(c, 1)
        assert out == Trigger(A, Seq(C, Top()))

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            unfold_recursion(C, -1)


def test_substitute_respects_shadowing():
    inner = Rec("X", Seq(C, Var("X")))
    assert substitute(inner, "X", Top()) == inner


def test_size_counts_contract_nodes_only():
    # rec X. TOP ; ((O_0(a) /\ P_1(b)) ; X) has size 8; actions do not count.
    c = Rec("X", Seq(Top(), Seq(And(Obl(0, "a"), Perm(1, "b")), Var("X"))))
    assert size(c) == 8


def test_actions_of_collects_norms_and_regex_atoms():
    c = Trigger(ReAtom(fm.atom("go", 1)), Frb(0, "stop"))
    assert ct.actions_of(c) == frozenset({"go", "stop"})
