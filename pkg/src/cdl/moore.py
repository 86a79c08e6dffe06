"""Moore-machine agents, their product, model checking, and blame queries.

Each agent is a Moore machine: states carry the set of actions the agent
attempts there, and transitions are guarded on the other party's labelled
output.  The product of two machines is an automaton over labelled events
whose edge labels are the party-tagged joint outputs; composing it with a
contract automaton turns compliance into a reachability question, and a
breadth-first search extracts a shortest counterexample when one exists.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import autom
from . import formula as fm
from .autom import Edge, StateInfo, SymbolicAutomaton, _adjacency, _Builder
from .errors import AlphabetMismatchError, CdlError, ParseError
from .parser import parse_formula
from .traces import labeled_union


@dataclass(frozen=True)
class MooreMachine:
    party: int
    alphabet: FrozenSet[str]
    outputs: Dict[str, FrozenSet[str]]  # state name -> attempted actions
    initial: str
    transitions: Tuple[Tuple[str, fm.Formula, str], ...]
    deterministic: bool = True

    def __post_init__(self):
        if self.party not in (0, 1):
            raise CdlError("party must be 0 or 1")
        if self.initial not in self.outputs:
            raise CdlError(f"initial state {self.initial!r} is not declared")
        for state, out in self.outputs.items():
            extra = out - self.alphabet
            if extra:
                raise CdlError(
                    f"state {state!r} outputs undeclared actions {sorted(extra)}")
        for src, guard, dst in self.transitions:
            if src not in self.outputs or dst not in self.outputs:
                raise CdlError(f"transition {src!r} -> {dst!r} uses an "
                               f"undeclared state")
            for atom in guard.atoms():
                if atom.party != 1 - self.party:
                    raise CdlError(
                        f"guard atom {atom} must be labelled with the "
                        f"opposing party {1 - self.party}")
                if atom.action not in self.alphabet:
                    raise CdlError(f"guard mentions undeclared action "
                                   f"{atom.action!r}")
        self._check_partition()

    def _check_partition(self):
        by_src: Dict[str, list] = {}
        for src, guard, dst in self.transitions:
            by_src.setdefault(src, []).append(guard)
        for state in self.outputs:
            guards = by_src.get(state, [])
            atoms = set()
            for g in guards:
                atoms.update(g.atoms())
            for event in fm.events_over(atoms):
                n = sum(1 for g in guards if g.holds(event))
                if n == 0:
                    raise CdlError(
                        f"machine state {state!r} has no move on some inputs")
                if n > 1 and self.deterministic:
                    raise CdlError(
                        f"machine is declared deterministic but state "
                        f"{state!r} has overlapping guards")

    def moves(self, state: str, opposing: fm.LabeledEvent) -> List[str]:
        return [dst for src, guard, dst in self.transitions
                if src == state and guard.holds(opposing)]

    def output_event(self, state: str) -> FrozenSet[str]:
        return self.outputs[state]


def load_moore(text: str) -> MooreMachine:
    """Read a machine file: JSON with party, alphabet, states, transitions."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"machine file is not valid JSON: {exc}") from exc
    try:
        party = doc["party"]
        alphabet = frozenset(doc["alphabet"])
        states = {s["name"]: frozenset(s["output"]) for s in doc["states"]}
        initial = doc["initial"]
        deterministic = bool(doc.get("deterministic", True))
        raw_transitions = doc["transitions"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"machine file is missing a field: {exc}") from exc
    transitions = []
    for t in raw_transitions:
        guard = parse_formula(t["guard"], alphabet=alphabet, party=1 - party)
        transitions.append((t["from"], guard, t["to"]))
    try:
        return MooreMachine(party, alphabet, states, initial,
                            tuple(transitions), deterministic)
    except CdlError as exc:
        raise ParseError(str(exc)) from exc


def moore_product(m0: MooreMachine, m1: MooreMachine) -> SymbolicAutomaton:
    """Joint behaviour of two agents as an automaton over labelled events."""
    if m0.party != 0 or m1.party != 1:
        raise CdlError("moore_product expects a party-0 and a party-1 machine")
    if m0.alphabet != m1.alphabet:
        raise AlphabetMismatchError("the machines disagree on the alphabet")
    builder = _Builder()
    ids: Dict[Tuple[str, str], int] = {}
    edges: List[Edge] = []
    worklist: List[Tuple[str, str]] = []

    def resolve(pair):
        if pair not in ids:
            ids[pair] = builder.fresh(f"({pair[0]},{pair[1]})")
            worklist.append(pair)
        return ids[pair]

    initial = resolve((m0.initial, m1.initial))
    while worklist:
        q0, q1 = worklist.pop()
        src = ids[(q0, q1)]
        event = labeled_union(m0.output_event(q0), m1.output_event(q1))
        for d0 in m0.moves(q0, event):
            for d1 in m1.moves(q1, event):
                edges.append(Edge(src, resolve((d0, d1)), event=event))
    return SymbolicAutomaton(m0.alphabet, initial, builder.states, edges,
                             finalized=True)


@dataclass(frozen=True)
class Counterexample:
    """A shortest joint trace reaching a rejecting state.

    states holds the composed state names along the path (one more entry
    than trace); replaying trace on the contract automaton reproduces the
    rejection at violation_index.
    """

    trace: Tuple[fm.LabeledEvent, ...]
    states: Tuple[str, ...]
    violation_index: int
    blamed: Optional[FrozenSet[int]] = None

    def __str__(self):
        steps = " ; ".join(
            "{" + ", ".join(str(a) for a in sorted(e)) + "}" for e in self.trace)
        text = f"violation at step {self.violation_index} via {steps}"
        if self.blamed is not None:
            parties = ", ".join(map(str, sorted(self.blamed))) or "nobody"
            text += f" (blamed: {parties})"
        return text


def _shortest_rejection(composed: SymbolicAutomaton, targets: FrozenSet[int],
                        with_blame: bool = False) -> Optional[Counterexample]:
    adjacency = _adjacency(composed.edges)
    parents: Dict[int, Optional[Tuple[int, Edge]]] = {composed.initial: None}
    queue = deque([composed.initial])
    goal = None
    while queue:
        state = queue.popleft()
        if state in targets:
            goal = state
            break
        ordered = sorted(adjacency.get(state, []),
                         key=lambda e: (sorted(map(str, e.event or ())), e.dst))
        for e in ordered:
            if e.dst not in parents:
                parents[e.dst] = (state, e)
                queue.append(e.dst)
    if goal is None:
        return None
    trace: List[fm.LabeledEvent] = []
    names = [composed.states[goal].name]
    state = goal
    while parents[state] is not None:
        prev, edge = parents[state]
        trace.append(edge.event)
        names.append(composed.states[prev].name)
        state = prev
    trace.reverse()
    names.reverse()
    blamed = composed.states[goal].blame if with_blame else None
    return Counterexample(tuple(trace), tuple(names), len(trace) - 1, blamed)


def _composed(m0, m1, contract_automaton) -> SymbolicAutomaton:
    product = moore_product(m0, m1)
    if product.alphabet != contract_automaton.alphabet:
        raise AlphabetMismatchError(
            "machines and contract disagree on the alphabet")
    return autom.sync_product(product, contract_automaton)


def model_check(m0: MooreMachine, m1: MooreMachine, contract,
                alphabet) -> Optional[Counterexample]:
    """None when every joint behaviour models the contract; otherwise a
    shortest counterexample trace."""
    composed = _composed(m0, m1, autom.aut(contract, alphabet))
    return _shortest_rejection(composed, composed.rejecting_states())


def blame_check(m0: MooreMachine, m1: MooreMachine, contract, alphabet,
                party: int) -> Optional[Counterexample]:
    """None when the party is never to blame; otherwise a shortest witness."""
    if party not in (0, 1):
        raise CdlError("party must be 0 or 1")
    composed = _composed(m0, m1, autom.blaut(contract, alphabet))
    targets = frozenset(s for s in composed.rejecting_states()
                        if party in composed.states[s].blame)
    return _shortest_rejection(composed, targets, with_blame=True)


def simulate_joint(m0: MooreMachine, m1: MooreMachine,
                   steps: int) -> List[Tuple[str, str, FrozenSet]]:
    """Step two deterministic machines together, returning (q0, q1, event)."""
    q0, q1 = m0.initial, m1.initial
    rows = []
    for _ in range(steps):
        event = labeled_union(m0.output_event(q0), m1.output_event(q1))
        rows.append((q0, q1, event))
        moves0 = m0.moves(q0, event)
        moves1 = m1.moves(q1, event)
        if len(moves0) != 1 or len(moves1) != 1:
            raise CdlError("simulate_joint needs deterministic machines")
        q0, q1 = moves0[0], moves1[0]
    return rows
