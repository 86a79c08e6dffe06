"""Traces, interactions, slicing, and the step-wise set operators.

An interaction is a pair of equal-length traces of attempted-action sets,
one per party.  The semantics needs attempts rather than successes, so both
parties' events are recorded explicitly.  All values are immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from .errors import CdlError, ParseError
from .formula import LabeledAction, LabeledEvent

Event = FrozenSet[str]


def labeled_union(e0: Iterable[str], e1: Iterable[str]) -> LabeledEvent:
    """Union with party labelling: actions of e0 tagged 0, of e1 tagged 1."""
    return frozenset({LabeledAction(a, 0) for a in e0}
                     | {LabeledAction(a, 1) for a in e1})


def stepwise_meet(e0: Iterable[str], e1: Iterable[str]) -> Event:
    """The successful actions of one step: those attempted by both parties."""
    return frozenset(e0) & frozenset(e1)


def split_labeled(event: LabeledEvent) -> Tuple[Event, Event]:
    """Inverse of labeled_union: recover the per-party events."""
    return (frozenset(a.action for a in event if a.party == 0),
            frozenset(a.action for a in event if a.party == 1))


@dataclass(frozen=True)
class Interaction:
    """A pair of equal-length finite traces of events, one per party."""

    alphabet: FrozenSet[str]
    trace0: Tuple[Event, ...]
    trace1: Tuple[Event, ...]
    origin: int = 0

    def __post_init__(self):
        if len(self.trace0) != len(self.trace1):
            raise CdlError("interaction traces must have equal length")
        for trace in (self.trace0, self.trace1):
            for event in trace:
                extra = event - self.alphabet
                if extra:
                    raise CdlError(
                        f"event mentions undeclared actions {sorted(extra)}")

    @classmethod
    def from_lists(cls, alphabet, events0, events1, origin=0) -> "Interaction":
        return cls(frozenset(alphabet),
                   tuple(frozenset(e) for e in events0),
                   tuple(frozenset(e) for e in events1),
                   origin)

    def __len__(self):
        return len(self.trace0)

    def event_pair(self, i: int) -> Tuple[Event, Event]:
        return self.trace0[i], self.trace1[i]

    def labeled(self, i: int) -> LabeledEvent:
        return labeled_union(self.trace0[i], self.trace1[i])

    def to_labeled(self) -> Tuple[LabeledEvent, ...]:
        """The interaction as a single trace over party-labelled actions."""
        return tuple(self.labeled(i) for i in range(len(self)))

    def slice(self, i: int, j: int) -> "Interaction":
        """Inclusive slice between positions i and j; empty when j < i."""
        if j < i:
            return Interaction(self.alphabet, (), (), self.origin + i)
        if i < 0 or j >= len(self):
            raise IndexError(
                f"slice [{i}..{j}] out of range for length {len(self)}")
        return Interaction(self.alphabet,
                           self.trace0[i:j + 1], self.trace1[i:j + 1],
                           self.origin + i)

    def extended(self, e0: Iterable[str], e1: Iterable[str]) -> "Interaction":
        """The interaction with one more step appended."""
        return Interaction(self.alphabet,
                           self.trace0 + (frozenset(e0),),
                           self.trace1 + (frozenset(e1),),
                           self.origin)


def load_interaction(text: str) -> Interaction:
    """Read a trace file: JSON with alphabet, party0, and party1 fields."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"trace file is not valid JSON: {exc}") from exc
    try:
        alphabet = doc["alphabet"]
        party0 = doc["party0"]
        party1 = doc["party1"]
    except (KeyError, TypeError) as exc:
        raise ParseError(
            "trace file needs 'alphabet', 'party0' and 'party1' fields") from exc
    if len(party0) != len(party1):
        raise ParseError("party0 and party1 must have the same length")
    try:
        return Interaction.from_lists(alphabet, party0, party1)
    except CdlError as exc:
        raise ParseError(str(exc)) from exc


def dump_interaction(x: Interaction) -> str:
    doc = {
        "alphabet": sorted(x.alphabet),
        "party0": [sorted(e) for e in x.trace0],
        "party1": [sorted(e) for e in x.trace1],
    }
    return json.dumps(doc, indent=2)
