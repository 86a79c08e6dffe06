"""Boolean guard formulas over party-labelled actions.

Transition guards of symbolic automata, atoms of regular expressions, and
input conditions of Moore machines are all boolean combinations of labelled
actions.  A labelled action ``a_p`` holds on a labelled event ``E`` exactly
when ``a_p`` is a member of ``E``; the connectives evaluate classically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator


@dataclass(frozen=True, order=True)
class LabeledAction:
    """An action tagged with the party (0 or 1) that attempts it."""

    action: str
    party: int

    def __str__(self):
        return f"{self.action}_{self.party}"


# A labelled event is simply a set of labelled actions.
LabeledEvent = FrozenSet[LabeledAction]


class Formula:
    """Base class for guard formulas.  Instances are immutable and hashable."""

    def holds(self, event: LabeledEvent) -> bool:
        raise NotImplementedError

    def atoms(self) -> frozenset:
        raise NotImplementedError

    def __str__(self):
        return to_str(self)


@dataclass(frozen=True)
class TrueF(Formula):
    def holds(self, event):
        return True

    def atoms(self):
        return frozenset()


@dataclass(frozen=True)
class FalseF(Formula):
    def holds(self, event):
        return False

    def atoms(self):
        return frozenset()


@dataclass(frozen=True)
class Atom(Formula):
    atom: LabeledAction

    def holds(self, event):
        return self.atom in event

    def atoms(self):
        return frozenset({self.atom})


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula

    def holds(self, event):
        return not self.sub.holds(event)

    def atoms(self):
        return self.sub.atoms()


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def holds(self, event):
        return self.left.holds(event) and self.right.holds(event)

    def atoms(self):
        return self.left.atoms() | self.right.atoms()


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def holds(self, event):
        return self.left.holds(event) or self.right.holds(event)

    def atoms(self):
        return self.left.atoms() | self.right.atoms()


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def holds(self, event):
        return (not self.left.holds(event)) or self.right.holds(event)

    def atoms(self):
        return self.left.atoms() | self.right.atoms()


TRUE = TrueF()
FALSE = FalseF()


def atom(action: str, party: int) -> Atom:
    return Atom(LabeledAction(action, party))


def neg(f: Formula) -> Formula:
    if f == TRUE:
        return FALSE
    if f == FALSE:
        return TRUE
    if isinstance(f, Not):
        return f.sub
    return Not(f)


def conj(*fs: Formula) -> Formula:
    out = []
    for f in fs:
        if f == FALSE:
            return FALSE
        if f != TRUE:
            out.append(f)
    if not out:
        return TRUE
    result = out[0]
    for f in out[1:]:
        result = And(result, f)
    return result


def disj(*fs: Formula) -> Formula:
    out = []
    for f in fs:
        if f == TRUE:
            return TRUE
        if f != FALSE:
            out.append(f)
    if not out:
        return FALSE
    result = out[0]
    for f in out[1:]:
        result = Or(result, f)
    return result


def implies(left: Formula, right: Formula) -> Formula:
    return Implies(left, right)


def events_over(atoms: Iterable[LabeledAction]) -> Iterator[LabeledEvent]:
    """All labelled events distinguishable by the given atoms.

    Formulas only inspect their own atoms, so one representative per subset
    of the atom universe is exhaustive.
    """
    universe = sorted(set(atoms))
    for r in range(len(universe) + 1):
        for combo in combinations(universe, r):
            yield frozenset(combo)


def satisfiable(f: Formula) -> bool:
    return any(f.holds(e) for e in events_over(f.atoms()))


def valid(f: Formula) -> bool:
    return all(f.holds(e) for e in events_over(f.atoms()))


def equivalent(f: Formula, g: Formula) -> bool:
    universe = f.atoms() | g.atoms()
    return all(f.holds(e) == g.holds(e) for e in events_over(universe))


# Printer levels, loosest to tightest: -> (right assoc), |, &, !, atoms.
_LEVELS = {Implies: 1, Or: 2, And: 3, Not: 4}


def to_str(f: Formula, level: int = 0) -> str:
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    if isinstance(f, Atom):
        return str(f.atom)
    own = _LEVELS[type(f)]
    if isinstance(f, Not):
        text = "!" + to_str(f.sub, 5)
    elif isinstance(f, Implies):
        text = f"{to_str(f.left, 2)} -> {to_str(f.right, 1)}"
    elif isinstance(f, Or):
        text = f"{to_str(f.left, 2)} | {to_str(f.right, 3)}"
    else:
        text = f"{to_str(f.left, 3)} & {to_str(f.right, 4)}"
    return f"({text})" if own < level else text
