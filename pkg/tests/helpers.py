"""Shared test machinery: random generators and brute-force oracles.

The oracles here deliberately avoid the production code paths: regex
classification is decided from the language definitions via a structural
matcher, and interactions are enumerated or sampled directly.
"""

from __future__ import annotations

import random
from itertools import chain, combinations

from cdl import contracts as ct
from cdl import formula as fm
from cdl.contracts import (And, Bot, Frb, Guard, Obl, Perm, Rec, Rep, ReAtom,
                           ReChoice, RePlus, ReSeq, Seq, Top, Trigger, Var)
from cdl.traces import Interaction

ALPHABET2 = ("a", "b")


def powerset(items):
    items = sorted(items)
    return [frozenset(c) for r in range(len(items) + 1)
            for c in combinations(items, r)]


def all_events(alphabet):
    return powerset(alphabet)


def all_labeled_events(alphabet):
    atoms = [fm.LabeledAction(a, p) for a in sorted(alphabet) for p in (0, 1)]
    return powerset(atoms)


# ---------------------------------------------------------------------------
# Random generators.
# ---------------------------------------------------------------------------


def rand_interaction(rng: random.Random, alphabet, max_len: int) -> Interaction:
    events = all_events(alphabet)
    n = rng.randint(1, max_len)
    return Interaction.from_lists(
        alphabet,
        [sorted(rng.choice(events)) for _ in range(n)],
        [sorted(rng.choice(events)) for _ in range(n)])


def rand_regex(rng: random.Random, alphabet, depth: int,
               max_atoms: int = 3) -> ct.Regex:
    """A random regex whose atoms are satisfiable literals (or small
    conjunctions/disjunctions), keeping the distinct-atom count small."""
    pool = [fm.LabeledAction(a, p) for a in sorted(alphabet) for p in (0, 1)]
    rng.shuffle(pool)
    pool = pool[:max_atoms]

    def literal():
        base = fm.Atom(rng.choice(pool))
        return fm.Not(base) if rng.random() < 0.35 else base

    def atom_formula():
        roll = rng.random()
        if roll < 0.6:
            return literal()
        op = fm.Or if roll < 0.8 else fm.And
        f = op(literal(), literal())
        return f if fm.satisfiable(f) else literal()

    def build(d):
        if d <= 0 or rng.random() < 0.3:
            return ReAtom(atom_formula())
        roll = rng.random()
        if roll < 0.35:
            return ReChoice(build(d - 1), build(d - 1))
        if roll < 0.75:
            return ReSeq(build(d - 1), build(d - 1))
        return RePlus(build(d - 1))

    return build(depth)


def rand_contract(rng: random.Random, alphabet, budget: int,
                  allow_bot: bool = True, allow_regex: bool = True,
                  _depth: int = 0) -> ct.Contract:
    """A random well-formed contract of at most `budget` nodes."""
    alphabet = sorted(alphabet)

    def norm():
        kind = rng.choice((Obl, Obl, Frb, Perm))
        return kind(rng.randint(0, 1), rng.choice(alphabet))

    def leaf():
        roll = rng.random()
        if roll < 0.08:
            return Top()
        if allow_bot and roll < 0.12:
            return Bot()
        return norm()

    if budget <= 1:
        return leaf()
    roll = rng.random()
    if roll < 0.22:
        return leaf()
    left_budget = rng.randint(1, max(1, budget - 2))
    if roll < 0.40:
        return Seq(rand_contract(rng, alphabet, left_budget, allow_bot,
                                 allow_regex, _depth + 1),
                   rand_contract(rng, alphabet, budget - 1 - left_budget,
                                 allow_bot, allow_regex, _depth + 1))
    if roll < 0.56:
        return And(rand_contract(rng, alphabet, left_budget, allow_bot,
                                 allow_regex, _depth + 1),
                   rand_contract(rng, alphabet, budget - 1 - left_budget,
                                 allow_bot, allow_regex, _depth + 1))
    if roll < 0.72:
        return Rep(rand_contract(rng, alphabet, left_budget, allow_bot,
                                 allow_regex, _depth + 1),
                   rand_contract(rng, alphabet, budget - 1 - left_budget,
                                 allow_bot, allow_regex, _depth + 1))
    if allow_regex and roll < 0.82:
        body = rand_contract(rng, alphabet, budget - 1, allow_bot,
                             allow_regex, _depth + 1)
        regex = rand_regex(rng, alphabet, depth=rng.randint(0, 2))
        return Trigger(regex, body) if rng.random() < 0.6 else Guard(regex, body)
    if _depth == 0 and budget >= 3:
        # Tail-recursive loop: rec X. C ; X  (possibly behind a trigger).
        name = f"X{rng.randrange(1000)}"
        inner = rand_contract(rng, alphabet, budget - 3, allow_bot,
                              allow_regex, _depth + 1)
        body = Seq(inner, Var(name))
        if allow_regex and rng.random() < 0.3:
            body = Trigger(rand_regex(rng, alphabet, depth=1), body)
        return Rec(name, body)
    return leaf()


# ---------------------------------------------------------------------------
# Regex oracle: language membership by structural recursion, then the
# tight-language / closure / complement definitions applied verbatim.
# ---------------------------------------------------------------------------


class RegexOracle:
    def __init__(self, regex: ct.Regex):
        self.regex = regex
        self._match = {}
        self._ext = {}

    # -- language membership ------------------------------------------------

    def matches(self, node, trace) -> bool:
        key = (id(node), trace)
        if key in self._match:
            return self._match[key]
        if isinstance(node, ReAtom):
            out = len(trace) == 1 and node.formula.holds(trace[0])
        elif isinstance(node, ReChoice):
            out = self.matches(node.left, trace) or self.matches(node.right, trace)
        elif isinstance(node, ReSeq):
            out = any(self.matches(node.left, trace[:k])
                      and self.matches(node.right, trace[k:])
                      for k in range(1, len(trace)))
        else:  # plus: one or more chunks from the sub-language
            out = any(self.matches(node.sub, trace[:k])
                      and (k == len(trace) or self.matches(node, trace[k:]))
                      for k in range(1, len(trace) + 1))
        self._match[key] = out
        return out

    def nonempty(self, node) -> bool:
        if isinstance(node, ReAtom):
            return fm.satisfiable(node.formula)
        if isinstance(node, ReChoice):
            return self.nonempty(node.left) or self.nonempty(node.right)
        if isinstance(node, ReSeq):
            return self.nonempty(node.left) and self.nonempty(node.right)
        return self.nonempty(node.sub)

    def extendable(self, node, trace) -> bool:
        """Whether some strict extension of the trace is in the language."""
        key = (id(node), trace)
        if key in self._ext:
            return self._ext[key]
        if isinstance(node, ReAtom):
            out = len(trace) == 0 and fm.satisfiable(node.formula)
        elif isinstance(node, ReChoice):
            out = (self.extendable(node.left, trace)
                   or self.extendable(node.right, trace))
        elif isinstance(node, ReSeq):
            out = any(self.matches(node.left, trace[:k])
                      and self.extendable(node.right, trace[k:])
                      for k in range(1, len(trace) + 1))
            out = out or (len(trace) == 0 and self.nonempty(node.left)
                          and self.nonempty(node.right))
            out = out or (self.extendable(node.left, trace)
                          and self.nonempty(node.right))
        else:
            sub = node.sub
            out = self.extendable(sub, trace)
            out = out or any(self.matches(node, trace[:k])
                             and self.extendable(sub, trace[k:])
                             for k in range(1, len(trace) + 1))
            out = out or (self.matches(node, trace) and self.nonempty(sub))
        self._ext[key] = out
        return out

    # -- the set definitions -------------------------------------------------

    def in_language(self, trace) -> bool:
        return len(trace) > 0 and self.matches(self.regex, trace)

    def in_tight(self, trace) -> bool:
        if not self.in_language(trace):
            return False
        return not any(self.in_language(trace[:k])
                       for k in range(1, len(trace)))

    def in_closure(self, trace) -> bool:
        """Strict prefixes of tight matches; the empty trace is included
        exactly when the language is non-empty."""
        if any(self.in_language(trace[:k]) for k in range(1, len(trace) + 1)):
            return False
        return self.extendable(self.regex, trace)

    def in_closure_complement(self, trace) -> bool:
        if len(trace) == 0:
            return False
        return (self.in_closure(trace[:-1])
                and not self.in_closure(trace)
                and not self.in_tight(trace))

    def classify(self, trace):
        from cdl.rex import RexClass

        if self.in_tight(trace):
            return RexClass.TIGHT_MATCH
        if self.in_closure(trace):
            return RexClass.PREFIX
        if self.in_closure_complement(trace):
            return RexClass.FELL_OUT
        return RexClass.PAST


# ---------------------------------------------------------------------------
# Norm bookkeeping for the fairness bound.
# ---------------------------------------------------------------------------


def norm_occurrences(c: ct.Contract):
    """All norm occurrences of a contract, as a multiset (list)."""
    out = []
    for t in ct.subterms(c):
        if isinstance(t, ct.NORM_TYPES):
            out.append(t)
    return out
