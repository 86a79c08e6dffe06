"""Concrete syntax: parsing, precedence, round-tripping, and errors."""

import random

import pytest

from cdl import formula as fm
from cdl.contracts import (And, Bot, Guard, Obl, Perm, ReAtom, Rec, Rep,
                           ReSeq, Seq, Top, Trigger, Var, contract_to_str)
from cdl.errors import ParseError, UndeclaredActionError
from cdl.parser import (load_contract_document, parse_contract, parse_formula,
                        parse_regex)
from helpers import rand_contract

ALPHA = frozenset({"lift", "detectProd", "a", "b", "c"})


def test_reparation_example():
    c = parse_contract("O_0(lift) |> O_0(lift)", ALPHA)
    assert c == Rep(Obl(0, "lift"), Obl(0, "lift"))


def test_atomic_constants():
    assert parse_contract("TOP", ALPHA) == Top()
    assert parse_contract("BOT", ALPHA) == Bot()


def test_trigger_recursion_shape():
    c = parse_contract("rec X. <detectProd_0> (O_0(lift) |> O_0(lift)) ; X",
                       ALPHA)
    assert isinstance(c, Rec)
    assert isinstance(c.body, Seq)
    assert isinstance(c.body.left, Trigger)
    assert c.body.right == Var("X")


def test_roundtrip_of_trigger_recursion():
    text = "rec X. <detectProd_0> (O_0(lift) |> O_0(lift)) ; X"
    c = parse_contract(text, ALPHA)
    assert parse_contract(contract_to_str(c), ALPHA) == c


def test_precedence_sequence_binds_loosest():
    c = parse_contract("O_0(a) /\\ O_1(b) ; P_0(c)", ALPHA)
    assert c == Seq(And(Obl(0, "a"), Obl(1, "b")), Perm(0, "c"))


def test_precedence_reparation_binds_tighter_than_sequence():
    c = parse_contract("O_0(a) |> O_1(b) ; P_0(c)", ALPHA)
    assert c == Seq(Rep(Obl(0, "a"), Obl(1, "b")), Perm(0, "c"))


def test_sequence_is_right_associative():
    c = parse_contract("TOP ; TOP ; BOT", ALPHA)
    assert c == Seq(Top(), Seq(Top(), Bot()))


def test_guard_syntax_and_scope():
    c = parse_contract("a_0 ; b_1 ~> O_0(a) /\\ TOP", ALPHA)
    assert isinstance(c, And)
    assert isinstance(c.left, Guard)
    assert c.left.regex == ReSeq(ReAtom(fm.atom("a", 0)),
                                 ReAtom(fm.atom("b", 1)))


def test_regex_operators():
    re = parse_regex("(a_0 | !b_1)+ ; [a_0 & a_1]", ALPHA)
    assert isinstance(re, ReSeq)


def test_formula_party_restriction():
    f = parse_formula("a_1 -> b_1", ALPHA, party=1)
    assert f == fm.Implies(fm.atom("a", 1), fm.atom("b", 1))
    with pytest.raises(ParseError):
        parse_formula("a_0", ALPHA, party=1)


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_contract("TOP ;\n ; TOP", ALPHA)
    assert err.value.line == 2


def test_undeclared_action_rejected():
    with pytest.raises(UndeclaredActionError):
        parse_contract("O_0(warp)", ALPHA)
    with pytest.raises(UndeclaredActionError):
        parse_contract("<warp_0> TOP", ALPHA)


def test_empty_alphabet_rejected():
    with pytest.raises(ParseError):
        parse_contract("TOP", frozenset())


def test_document_header_and_positions():
    alphabet, c = load_contract_document(
        "# a comment\nalphabet: a, b\nO_0(a) ; O_1(b)\n")
    assert alphabet == frozenset({"a", "b"})
    assert c == Seq(Obl(0, "a"), Obl(1, "b"))
    with pytest.raises(ParseError) as err:
        load_contract_document("alphabet: a\n\nO_0(\n")
    assert err.value.line == 3


def test_document_missing_header():
    with pytest.raises(ParseError):
        load_contract_document("O_0(a)\n")


def test_roundtrip_randomized():
    """parse . pretty-print is the identity on generated contracts."""
    rng = random.Random(7)
    alpha = ("a", "b")
    for _ in range(300):
        c = rand_contract(rng, alpha, budget=rng.randint(1, 10))
        assert parse_contract(contract_to_str(c), frozenset(alpha)) == c
