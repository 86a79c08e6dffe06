"""Tight-match DFAs for regular expressions over labelled events.

The tight language of a regex contains the matching traces with no matching
strict prefix; its prefix closure contains the traces still on the way to a
tight match.  compile_regex builds a deterministic, total automaton with a
match sink and a fail sink such that

  * tight matches enter the match sink exactly at their last event,
  * prefix-closure traces stay in a live state,
  * traces that just fell out of the prefix closure enter the fail sink.

Construction: Glushkov position automaton over the regex's atom formulas,
then a subset construction against the minterms of those atoms, collapsing
every subset that contains an accepting position into the match sink
(first-match semantics) and the empty subset into the fail sink.

The empty trace is treated as lying in the prefix closure whenever the
regex's language is non-empty; consequently a one-event trace that neither
matches nor prefixes the regex is classified as fallen out.  For a regex
with an empty language every trace falls out at its first event.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import formula as fm
from .contracts import Regex, ReAtom, ReChoice, ReSeq, RePlus
from .errors import AutomatonError, CdlError

MAX_REGEX_ATOMS = 16  # minterm construction enumerates 2**n letters


class RexClass(Enum):
    TIGHT_MATCH = "tight-match"
    PREFIX = "prefix"
    FELL_OUT = "fell-out"
    PAST = "past"


@dataclass(frozen=True)
class TightDfa:
    """Deterministic total automaton classifying labelled traces.

    edges maps each live state to guarded successors whose guards partition
    the space of labelled events.  The match and fail states are sinks.
    """

    initial: int
    match: int
    fail: int
    edges: Dict[int, Tuple[Tuple[fm.Formula, int], ...]]
    atoms: Tuple[fm.LabeledAction, ...]

    @property
    def states(self) -> FrozenSet[int]:
        reached = {self.initial, self.match, self.fail}
        reached.update(self.edges.keys())
        for out in self.edges.values():
            reached.update(dst for _, dst in out)
        return frozenset(reached)

    def step(self, state: int, event: fm.LabeledEvent) -> int:
        if state in (self.match, self.fail):
            return state
        matches = [dst for guard, dst in self.edges[state] if guard.holds(event)]
        if len(matches) != 1:
            raise AutomatonError(
                f"DFA is not deterministic/total at state {state}")
        return matches[0]


# ---------------------------------------------------------------------------
# Glushkov position sets.
# ---------------------------------------------------------------------------


def _positions(re: Regex, acc: List[fm.Formula]) -> None:
    if isinstance(re, ReAtom):
        acc.append(re.formula)
    elif isinstance(re, (ReChoice, ReSeq)):
        _positions(re.left, acc)
        _positions(re.right, acc)
    else:
        _positions(re.sub, acc)


def _glushkov(re: Regex):
    """Position automaton: first/last sets and the follow relation.

    No regex operator of this language produces the empty trace, so the
    nullability that usually complicates first/follow is absent everywhere.
    """
    formulas: List[fm.Formula] = []
    _positions(re, formulas)
    follow: Dict[int, set] = {i: set() for i in range(1, len(formulas) + 1)}
    counter = [0]

    def build(node) -> Tuple[set, set]:
        if isinstance(node, ReAtom):
            counter[0] += 1
            p = counter[0]
            return {p}, {p}
        if isinstance(node, ReChoice):
            f1, l1 = build(node.left)
            f2, l2 = build(node.right)
            return f1 | f2, l1 | l2
        if isinstance(node, ReSeq):
            f1, l1 = build(node.left)
            f2, l2 = build(node.right)
            for p in l1:
                follow[p].update(f2)
            return f1, l2
        f1, l1 = build(node.sub)
        for p in l1:
            follow[p].update(f1)
        return f1, l1

    first, last = build(re)
    return formulas, first, last, follow


def language_nonempty(re: Regex) -> bool:
    """Whether the regex matches at least one trace."""
    if isinstance(re, ReAtom):
        return fm.satisfiable(re.formula)
    if isinstance(re, ReChoice):
        return language_nonempty(re.left) or language_nonempty(re.right)
    if isinstance(re, ReSeq):
        return language_nonempty(re.left) and language_nonempty(re.right)
    return language_nonempty(re.sub)


# ---------------------------------------------------------------------------
# Subset construction over minterms.
# ---------------------------------------------------------------------------


def _minterm_events(atoms: Sequence[fm.LabeledAction]):
    """One representative labelled event per truth assignment to the atoms."""
    events = []
    n = len(atoms)
    for mask in range(2 ** n):
        events.append((mask,
                       frozenset(a for k, a in enumerate(atoms)
                                 if mask >> k & 1)))
    return events


def _mask_formula(mask: int, atoms: Sequence[fm.LabeledAction]) -> fm.Formula:
    literals = []
    for k, a in enumerate(atoms):
        lit = fm.Atom(a)
        literals.append(lit if mask >> k & 1 else fm.Not(lit))
    return fm.conj(*literals)


def _masks_formula(masks: Sequence[int], atoms) -> fm.Formula:
    if len(masks) == 2 ** len(atoms):
        return fm.TRUE
    if len(atoms) == 1:
        # Single atom: masks are subsets of {0, 1}.
        if masks == [1]:
            return fm.Atom(atoms[0])
        if masks == [0]:
            return fm.Not(fm.Atom(atoms[0]))
    return fm.disj(*(_mask_formula(m, atoms) for m in masks))


def compile_regex(re: Regex, alphabet=None) -> TightDfa:
    """Build the tight-match DFA for the regex.

    The optional alphabet is only used to reject regexes whose atoms mention
    undeclared actions.
    """
    formulas, first, last, follow = _glushkov(re)
    atom_set = set()
    for f in formulas:
        atom_set.update(f.atoms())
    atoms = tuple(sorted(atom_set))
    if alphabet is not None:
        extra = {a.action for a in atoms} - set(alphabet)
        if extra:
            raise CdlError(f"regex mentions undeclared actions {sorted(extra)}")
    if len(atoms) > MAX_REGEX_ATOMS:
        raise AutomatonError(
            f"regex mentions {len(atoms)} distinct labelled atoms; "
            f"at most {MAX_REGEX_ATOMS} are supported")
    letters = _minterm_events(atoms)

    MATCH, FAIL = 1, 2
    start = frozenset({0})
    subset_ids = {start: 0}
    worklist = [start]
    raw_edges: Dict[int, Dict[int, List[int]]] = {}  # src -> dst -> masks
    while worklist:
        subset = worklist.pop()
        src = subset_ids[subset]
        out: Dict[int, List[int]] = {}
        for mask, event in letters:
            candidates = set()
            for p in subset:
                candidates.update(first if p == 0 else follow[p])
            active = frozenset(q for q in candidates
                               if formulas[q - 1].holds(event))
            if active & last:
                dst = MATCH
            elif not active:
                dst = FAIL
            else:
                if active not in subset_ids:
                    subset_ids[active] = len(subset_ids) + 2
                    worklist.append(active)
                dst = subset_ids[active]
            out.setdefault(dst, []).append(mask)
        raw_edges[src] = out

    edges = {}
    for src, out in raw_edges.items():
        edges[src] = tuple((_masks_formula(sorted(masks), atoms), dst)
                           for dst, masks in sorted(out.items()))
    return TightDfa(initial=0, match=MATCH, fail=FAIL, edges=edges,
                    atoms=atoms)


# ---------------------------------------------------------------------------
# Classification.
# ---------------------------------------------------------------------------


def classify(dfa: TightDfa, trace: Sequence[fm.LabeledEvent]) -> RexClass:
    """Classify a non-empty labelled trace into one of the four classes."""
    if not trace:
        raise CdlError("cannot classify the empty trace")
    state = dfa.initial
    decided_at: Optional[int] = None
    final = None
    for i, event in enumerate(trace):
        state = dfa.step(state, event)
        if decided_at is None and state in (dfa.match, dfa.fail):
            decided_at = i
            final = state
    if decided_at is None:
        return RexClass.PREFIX
    if decided_at < len(trace) - 1:
        return RexClass.PAST
    return RexClass.TIGHT_MATCH if final == dfa.match else RexClass.FELL_OUT


@dataclass(frozen=True)
class RexScan:
    """Run of a tight DFA over the tail of a labelled trace from position i.

    match_index / fail_index are absolute positions of the first entry into
    the match / fail sink, or None.  At most one of them is set.
    """

    start: int
    end: int
    match_index: Optional[int]
    fail_index: Optional[int]

    def in_tight(self, j: int) -> bool:
        return self.match_index == j

    def in_closure(self, j: int) -> bool:
        if self.match_index is not None and j >= self.match_index:
            return False
        if self.fail_index is not None and j >= self.fail_index:
            return False
        return True

    def in_closure_complement(self, j: int) -> bool:
        return self.fail_index == j


def scan(dfa: TightDfa, labeled: Sequence[fm.LabeledEvent], start: int) -> RexScan:
    """Scan labeled[start:] once, recording where the DFA gets decided."""
    state = dfa.initial
    match_index = fail_index = None
    for j in range(start, len(labeled)):
        state = dfa.step(state, labeled[j])
        if state == dfa.match:
            match_index = j
            break
        if state == dfa.fail:
            fail_index = j
            break
    return RexScan(start, len(labeled) - 1, match_index, fail_index)
