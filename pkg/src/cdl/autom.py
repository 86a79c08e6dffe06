"""Symbolic safety automata: contract compilation, products, and runs.

Contracts compile to automata over party-labelled events whose transition
guards are boolean formulas.  The construction is a set of transition rules
per operator: norms branch to a good or bad state in one step, sequence and
reparation chain subautomata through a fresh state, a trigger prepends its
regex's tight-match automaton (falling out of the regex satisfies the
trigger), a guard synchronously composes the regex automaton with the body
(release on tight match or fall-out wins over simultaneous violation),
conjunction takes the relaxed product so the longer conjunct can keep
running after the shorter one is decided, and recursion loops back with an
epsilon transition from the point where the body's tail is reached.

The blame variant refines the bad state into party-tagged bad states via
modified norm rules; its post-processing redirects any state whose every
successor is bad to the blameless bad state, so violations forced by
conflicts accuse nobody.

Finalization strips outgoing edges of terminal states, adds their sink
self-loops, removes epsilon transitions, prunes unreachable states, merges
parallel edges, and checks (or restores, by subset construction) that the
guards out of every state partition the space of labelled events.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import contracts as ct
from . import formula as fm
from . import rex
from .contracts import require_wellformed
from .errors import AutomatonError, CdlError

TAGS = (frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1}))


def _bad_name(tag: FrozenSet[int]) -> str:
    if not tag:
        return "s_B"
    if len(tag) == 1:
        return f"s_B^{next(iter(tag))}"
    return "s_B^{0,1}"


@dataclass(frozen=True)
class StateInfo:
    name: str
    kind: str = "plain"  # 'plain' | 'good' | 'bad'
    blame: FrozenSet[int] = frozenset()

    @property
    def rejecting(self):
        return self.kind == "bad"


@dataclass(frozen=True)
class Edge:
    """A transition: symbolic guard, concrete event label, or epsilon."""

    src: int
    dst: int
    guard: Optional[fm.Formula] = None
    event: Optional[fm.LabeledEvent] = None

    @property
    def is_eps(self):
        return self.guard is None and self.event is None

    def enabled(self, event: fm.LabeledEvent) -> bool:
        if self.guard is not None:
            return self.guard.holds(event)
        if self.event is not None:
            return self.event == event
        return False

    def label(self) -> str:
        if self.guard is not None:
            return fm.to_str(self.guard)
        if self.event is not None:
            inner = ", ".join(str(a) for a in sorted(self.event))
            return "{" + inner + "}"
        return "ε"


@dataclass(frozen=True)
class RunResult:
    path: Tuple[int, ...]
    first_rejecting: Optional[int]  # event index, or None


@dataclass
class SymbolicAutomaton:
    alphabet: FrozenSet[str]
    initial: int
    states: Dict[int, StateInfo]
    edges: List[Edge]
    finalized: bool = False

    def info(self, state: int) -> StateInfo:
        return self.states[state]

    def out(self, state: int) -> List[Edge]:
        return [e for e in self.edges if e.src == state]

    def rejecting_states(self) -> FrozenSet[int]:
        return frozenset(s for s, info in self.states.items() if info.rejecting)

    def run(self, trace: Sequence[fm.LabeledEvent]) -> RunResult:
        """Deterministic run; reports the earliest entry into rejection."""
        if not self.finalized:
            raise AutomatonError("run requires a finalized automaton")
        adjacency = _adjacency(self.edges)
        state = self.initial
        path = [state]
        rejected = None
        for idx, event in enumerate(trace):
            succs = [e.dst for e in adjacency.get(state, ())
                     if e.enabled(event)]
            if len(succs) != 1:
                raise AutomatonError(
                    f"state {self.states[state].name} has {len(succs)} "
                    f"successors on {sorted(map(str, event))}")
            state = succs[0]
            path.append(state)
            if rejected is None and self.states[state].rejecting:
                rejected = idx
        return RunResult(tuple(path), rejected)

    def to_dot(self) -> str:
        lines = ["digraph contract {", "  rankdir=LR;", '  __start [shape=point];']
        for s in sorted(self.states):
            info = self.states[s]
            shape = "doublecircle" if info.rejecting else "circle"
            lines.append(f'  q{s} [label="{info.name}", shape={shape}];')
        lines.append(f"  __start -> q{self.initial};")
        for e in sorted(self.edges, key=lambda e: (e.src, e.dst, e.label())):
            label = e.label().replace('"', r'\"')
            lines.append(f'  q{e.src} -> q{e.dst} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)


def _adjacency(edges: Sequence[Edge]) -> Dict[int, List[Edge]]:
    adjacency: Dict[int, List[Edge]] = defaultdict(list)
    for e in edges:
        adjacency[e.src].append(e)
    return adjacency


class _Builder:
    """Allocates states with reproducible ids (a monotone counter)."""

    def __init__(self):
        self.states: Dict[int, StateInfo] = {}
        self._next = 0

    def fresh(self, name=None, kind="plain", blame=frozenset()) -> int:
        sid = self._next
        self._next += 1
        self.states[sid] = StateInfo(name or f"s{sid}", kind, frozenset(blame))
        return sid

    def good(self) -> int:
        return self.fresh("s_G", "good")

    def bad(self, tag: FrozenSet[int]) -> int:
        return self.fresh(_bad_name(tag), "bad", tag)


# ---------------------------------------------------------------------------
# Norm guards.
# ---------------------------------------------------------------------------


def _norm_good_guard(norm) -> fm.Formula:
    mine = fm.atom(norm.action, norm.party)
    other = fm.atom(norm.action, 1 - norm.party)
    if isinstance(norm, ct.Obl):
        return fm.And(mine, other)
    if isinstance(norm, ct.Frb):
        return fm.Not(fm.And(mine, other))
    return fm.Implies(mine, other)


def _norm_edges(norm, s0, sG, badmap, blame_mode) -> List[Edge]:
    good = _norm_good_guard(norm)
    mine = fm.atom(norm.action, norm.party)
    other = fm.atom(norm.action, 1 - norm.party)
    edges = [Edge(s0, sG, guard=good)]
    if not blame_mode:
        edges.append(Edge(s0, badmap[frozenset()], guard=fm.Not(good)))
        return edges
    p, q = norm.party, 1 - norm.party
    if isinstance(norm, ct.Obl):
        edges.append(Edge(s0, badmap[frozenset({p})], guard=fm.Not(mine)))
        edges.append(Edge(s0, badmap[frozenset({q})],
                          guard=fm.And(mine, fm.Not(other))))
    elif isinstance(norm, ct.Frb):
        edges.append(Edge(s0, badmap[frozenset({p})],
                          guard=fm.And(mine, other)))
    else:  # permission: the interfering counterparty is blamed
        edges.append(Edge(s0, badmap[frozenset({q})],
                          guard=fm.And(mine, fm.Not(other))))
    return edges


# ---------------------------------------------------------------------------
# Epsilon elimination (used locally before products and at finalization).
# ---------------------------------------------------------------------------


def _eliminate_eps(edges: Sequence[Edge]) -> List[Edge]:
    eps_next: Dict[int, set] = defaultdict(set)
    for e in edges:
        if e.is_eps:
            eps_next[e.src].add(e.dst)
    if not eps_next:
        return list(edges)
    real = [e for e in edges if not e.is_eps]
    by_src = _adjacency(real)
    states = {e.src for e in edges} | {e.dst for e in edges}

    def closure(q):
        seen, stack = {q}, [q]
        while stack:
            for r in eps_next.get(stack.pop(), ()):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return seen

    out, seen_keys = [], set()
    for q in sorted(states):
        for r in closure(q):
            for e in by_src.get(r, ()):
                key = (q, e.dst, e.guard, e.event)
                if key not in seen_keys:
                    seen_keys.add(key)
                    out.append(replace(e, src=q))
    return out


# ---------------------------------------------------------------------------
# Product engine over edge lists (inputs must be epsilon-free).
# ---------------------------------------------------------------------------


def _combine_labels(a: Edge, b: Edge) -> Optional[dict]:
    if a.event is not None and b.event is not None:
        return {"event": a.event} if a.event == b.event else None
    if a.event is not None:
        return {"event": a.event} if b.guard.holds(a.event) else None
    if b.event is not None:
        return {"event": b.event} if a.guard.holds(b.event) else None
    g = fm.conj(a.guard, b.guard)
    return {"guard": g} if fm.satisfiable(g) else None


def _uncovered(edge: Edge, others: Sequence[Edge]) -> Optional[dict]:
    """The part of the edge's label on which no other-side move is enabled."""
    if edge.event is not None:
        if any(o.enabled(edge.event) for o in others):
            return None
        return {"event": edge.event}
    cover = fm.disj(*(o.guard for o in others if o.guard is not None))
    residual = fm.conj(edge.guard, fm.neg(cover))
    if any(o.event is not None and residual.holds(o.event) for o in others):
        # Concrete labels on the other side still count as enabled moves.
        residual = fm.conj(residual, *(
            fm.neg(_event_formula(o.event)) for o in others
            if o.event is not None))
    return {"guard": residual} if fm.satisfiable(residual) else None


def _event_formula(event: fm.LabeledEvent) -> fm.Formula:
    return fm.conj(*(fm.Atom(a) for a in sorted(event))) if event else fm.TRUE


def _product_edges(builder: _Builder, edges_a, edges_b, start_a, start_b,
                   start_state: int, relabel: Callable, relaxed: bool):
    """Explore the (relaxed) synchronous product of two transition systems.

    relabel(qa, qb) returns an existing state id for pairs that collapse to
    a terminal of the enclosing construction, or None to keep the pair as a
    fresh state.  Collapsed pairs are not expanded; their behaviour is
    provided by whatever the enclosing construction attaches to the target.
    """
    out_a, out_b = _adjacency(edges_a), _adjacency(edges_b)
    pair_ids = {(start_a, start_b): start_state}
    worklist = [(start_a, start_b)]
    result: List[Edge] = []

    def resolve(qa, qb):
        mapped = relabel(qa, qb)
        if mapped is not None:
            return mapped
        key = (qa, qb)
        if key not in pair_ids:
            name_a = builder.states[qa].name
            name_b = builder.states[qb].name
            pair_ids[key] = builder.fresh(f"({name_a},{name_b})")
            worklist.append(key)
        return pair_ids[key]

    while worklist:
        qa, qb = worklist.pop()
        src = pair_ids[(qa, qb)]
        moves_a = out_a.get(qa, [])
        moves_b = out_b.get(qb, [])
        for ea in moves_a:
            for eb in moves_b:
                label = _combine_labels(ea, eb)
                if label is not None:
                    result.append(Edge(src, resolve(ea.dst, eb.dst), **label))
        if relaxed:
            for ea in moves_a:
                label = _uncovered(ea, moves_b)
                if label is not None:
                    result.append(Edge(src, resolve(ea.dst, qb), **label))
            for eb in moves_b:
                label = _uncovered(eb, moves_a)
                if label is not None:
                    result.append(Edge(src, resolve(qa, eb.dst), **label))
    return result


# ---------------------------------------------------------------------------
# The trans(...) construction.
# ---------------------------------------------------------------------------


def _embed_regex(dfa: rex.TightDfa, builder: _Builder, init: Optional[int],
                 match_target: int, fail_target: int):
    """Copy a tight DFA's live transitions with fresh internal states."""
    mapping = {dfa.match: match_target, dfa.fail: fail_target}
    if init is not None:
        mapping[dfa.initial] = init
    edges = []
    for src in sorted(dfa.edges):
        if src not in mapping:
            mapping[src] = builder.fresh()
        for guard, dst in dfa.edges[src]:
            if dst not in mapping:
                mapping[dst] = builder.fresh()
            edges.append(Edge(mapping[src], mapping[dst], guard=guard))
    return edges, mapping[dfa.initial]


def _trans(c, builder, s0, sG, badmap, V, blame_mode) -> List[Edge]:
    if isinstance(c, ct.Top):
        return [Edge(s0, sG, guard=fm.TRUE)]
    if isinstance(c, ct.Bot):
        return [Edge(s0, badmap[frozenset()], guard=fm.TRUE)]
    if isinstance(c, (ct.Obl, ct.Frb, ct.Perm)):
        return _norm_edges(c, s0, sG, badmap, blame_mode)
    if isinstance(c, ct.Trigger):
        dfa = rex.compile_regex(c.regex)
        entry = builder.fresh()
        re_edges, _ = _embed_regex(dfa, builder, s0, entry, sG)
        return re_edges + _trans(c.body, builder, entry, sG, badmap, V,
                                 blame_mode)
    if isinstance(c, ct.Guard):
        dfa = rex.compile_regex(c.regex)
        re_edges, re_init = _embed_regex(dfa, builder, None, sG, sG)
        body_edges = _eliminate_eps(
            _trans(c.body, builder, s0, sG, badmap, V, blame_mode))
        bad_values = set(badmap.values())

        def relabel(qa, qb):
            if qa == sG:          # regex released: tight match or fall-out
                return sG
            if qb in bad_values:  # body violated while still inside the regex
                return qb
            if qb == sG:          # body satisfied while still inside
                return sG
            return None

        return _product_edges(builder, re_edges, body_edges, re_init, s0,
                              s0, relabel, relaxed=False)
    if isinstance(c, ct.And):
        left = _eliminate_eps(
            _trans(c.left, builder, s0, sG, badmap, V, blame_mode))
        right = _eliminate_eps(
            _trans(c.right, builder, s0, sG, badmap, V, blame_mode))
        bad_tags = {}
        for tag, state in badmap.items():
            bad_tags.setdefault(state, tag)

        def relabel(qa, qb):
            ta, tb = bad_tags.get(qa), bad_tags.get(qb)
            if ta is not None or tb is not None:
                union = (ta or frozenset()) | (tb or frozenset())
                return badmap[union]
            if qa == sG and qb == sG:
                return sG
            return None

        return _product_edges(builder, left, right, s0, s0, s0, relabel,
                              relaxed=True)
    if isinstance(c, ct.Seq):
        mid = builder.fresh()
        return (_trans(c.left, builder, s0, mid, badmap, V, blame_mode)
                + _trans(c.right, builder, mid, sG, badmap, V, blame_mode))
    if isinstance(c, ct.Rep):
        mid = builder.fresh()
        collapsed = {tag: mid for tag in TAGS}
        return (_trans(c.left, builder, s0, sG, collapsed, V, blame_mode)
                + _trans(c.right, builder, mid, sG, badmap, V, blame_mode))
    if isinstance(c, ct.Var):
        # The predecessor's satisfaction point loops back to the recursion
        # start; this is the state the construction hands to the variable.
        return [Edge(s0, V[c.name])]
    if isinstance(c, ct.Rec):
        return _trans(c.body, builder, s0, sG, badmap,
                      {**V, c.name: s0}, blame_mode)
    raise CdlError(f"cannot compile {c!r}")


@dataclass
class TransResult:
    """The raw transition set of a contract, before post-processing."""

    automaton: SymbolicAutomaton
    s0: int
    sG: int
    badmap: Dict[FrozenSet[int], int]

    @property
    def edges(self):
        return self.automaton.edges


def trans_construct(c, alphabet, blame: bool = False) -> TransResult:
    """Run the transition-set construction without finalization."""
    require_wellformed(c)
    builder = _Builder()
    s0 = builder.fresh()
    sG = builder.good()
    if blame:
        badmap = {tag: builder.bad(tag) for tag in TAGS}
    else:
        bad = builder.bad(frozenset())
        badmap = {tag: bad for tag in TAGS}
    edges = _trans(c, builder, s0, sG, badmap, {}, blame)
    automaton = SymbolicAutomaton(frozenset(alphabet), s0, builder.states,
                                  edges, finalized=False)
    return TransResult(automaton, s0, sG, badmap)


# ---------------------------------------------------------------------------
# Finalization.
# ---------------------------------------------------------------------------


def _reachable(initial, edges):
    adjacency = _adjacency(edges)
    seen, stack = {initial}, [initial]
    while stack:
        for e in adjacency.get(stack.pop(), ()):
            if e.dst not in seen:
                seen.add(e.dst)
                stack.append(e.dst)
    return seen


def _merge_parallel(edges: Sequence[Edge]) -> List[Edge]:
    grouped: Dict[Tuple[int, int], List[Edge]] = defaultdict(list)
    out = []
    for e in edges:
        if e.guard is not None:
            grouped[(e.src, e.dst)].append(e)
        else:
            out.append(e)
    for (src, dst), group in sorted(grouped.items()):
        guard = fm.disj(*(e.guard for e in group))
        out.append(Edge(src, dst, guard=guard))
    return out


def _check_partition(a: SymbolicAutomaton):
    """Each live state's guards must partition the event space.

    Returns the set of states with overlapping guards (nondeterminism);
    raises on a coverage gap, which the construction never produces.
    """
    adjacency = _adjacency(a.edges)
    overlapping = set()
    for state, info in a.states.items():
        if info.kind != "plain" and not adjacency.get(state):
            continue
        out = adjacency.get(state, [])
        if any(e.guard is None for e in out):
            raise AutomatonError("epsilon edge survived finalization")
        atoms = set()
        for e in out:
            atoms.update(e.guard.atoms())
        for event in fm.events_over(atoms):
            n = sum(1 for e in out if e.guard.holds(event))
            if n == 0:
                raise AutomatonError(
                    f"state {info.name} has no transition on "
                    f"{sorted(map(str, event))}")
            if n > 1:
                overlapping.add(state)
    return overlapping


def _determinize(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Subset construction; rejecting subsets collapse to a tagged bad state."""
    adjacency = _adjacency(a.edges)
    builder = _Builder()
    bad_cache: Dict[FrozenSet[int], int] = {}
    good_state: Optional[int] = None

    def bad_for(tag):
        if tag not in bad_cache:
            bad_cache[tag] = builder.bad(tag)
        return bad_cache[tag]

    subset_ids: Dict[FrozenSet[int], int] = {}
    edges: List[Edge] = []

    def resolve(subset):
        nonlocal good_state
        bads = [s for s in subset if a.states[s].rejecting]
        if bads:
            tag = frozenset().union(*(a.states[s].blame for s in bads))
            return bad_for(tag), True
        if all(a.states[s].kind == "good" for s in subset):
            if good_state is None:
                good_state = builder.good()
            return good_state, True
        key = frozenset(subset)
        if key in subset_ids:
            return subset_ids[key], False
        names = ",".join(sorted(a.states[s].name for s in key))
        subset_ids[key] = builder.fresh(f"{{{names}}}")
        worklist.append(key)
        return subset_ids[key], False

    worklist: List[FrozenSet[int]] = []
    initial, _ = resolve(frozenset({a.initial}))
    while worklist:
        subset = worklist.pop()
        src = subset_ids[subset]
        out = [e for s in subset for e in adjacency.get(s, ())]
        atoms = sorted({atom for e in out for atom in e.guard.atoms()})
        groups: Dict[int, List[int]] = defaultdict(list)
        for mask in range(2 ** len(atoms)):
            event = frozenset(atom for k, atom in enumerate(atoms)
                              if mask >> k & 1)
            targets = frozenset(e.dst for e in out if e.guard.holds(event))
            if not targets:
                raise AutomatonError("coverage gap during determinization")
            dst, _ = resolve(targets)
            groups[dst].append(mask)
        for dst, masks in sorted(groups.items()):
            literals = []
            if len(masks) == 2 ** len(atoms):
                guard = fm.TRUE
            else:
                guard = fm.disj(*(
                    fm.conj(*(fm.Atom(atom) if mask >> k & 1
                              else fm.Not(fm.Atom(atom))
                              for k, atom in enumerate(atoms)))
                    for mask in masks))
            edges.append(Edge(src, dst, guard=guard))
    for sid in bad_cache.values():
        edges.append(Edge(sid, sid, guard=fm.TRUE))
    if good_state is not None:
        edges.append(Edge(good_state, good_state, guard=fm.TRUE))
    return SymbolicAutomaton(a.alphabet, initial, builder.states, edges)


def finalize(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Make an automaton runnable: epsilon-free, deterministic, total."""
    if a.finalized:
        return a
    terminal = {s for s, info in a.states.items() if info.kind != "plain"}
    edges = [e for e in a.edges if e.src not in terminal]
    edges += [Edge(s, s, guard=fm.TRUE) for s in sorted(terminal)]
    edges = _eliminate_eps(edges)
    reachable = _reachable(a.initial, edges)
    edges = _merge_parallel(e for e in edges if e.src in reachable)
    result = SymbolicAutomaton(
        a.alphabet, a.initial,
        {s: info for s, info in a.states.items() if s in reachable},
        edges, finalized=True)
    overlapping = _check_partition(result)
    if overlapping:
        result = _determinize(replace_finalized(result, False))
        result.finalized = True
        if _check_partition(result):
            raise AutomatonError("determinization left overlapping guards")
    return result


def replace_finalized(a: SymbolicAutomaton, value: bool) -> SymbolicAutomaton:
    return SymbolicAutomaton(a.alphabet, a.initial, dict(a.states),
                             list(a.edges), value)


# ---------------------------------------------------------------------------
# aut / blaut.
# ---------------------------------------------------------------------------


def aut(c, alphabet) -> SymbolicAutomaton:
    """The deterministic safety automaton of a contract."""
    return finalize(trans_construct(c, alphabet, blame=False).automaton)


def blaut(c, alphabet) -> SymbolicAutomaton:
    """The deterministic blame automaton of a contract.

    Any live state whose every transition leads to a bad state is redirected
    to the blameless bad state: violations that could not be avoided are
    nobody's fault.
    """
    result = finalize(trans_construct(c, alphabet, blame=True).automaton)
    adjacency = _adjacency(result.edges)
    forced = [
        s for s, info in result.states.items()
        if info.kind == "plain"
        and adjacency.get(s)
        and all(result.states[e.dst].rejecting for e in adjacency[s])
    ]
    if not forced:
        return result
    plain_bad = next((s for s, info in result.states.items()
                      if info.rejecting and not info.blame), None)
    if plain_bad is None:
        plain_bad = max(result.states) + 1
        result.states[plain_bad] = StateInfo(_bad_name(frozenset()), "bad")
        result.edges.append(Edge(plain_bad, plain_bad, guard=fm.TRUE))
    forced_set = set(forced)
    result.edges = [
        replace(e, dst=plain_bad)
        if e.src in forced_set and result.states[e.dst].rejecting else e
        for e in result.edges
    ]
    result.edges = _merge_parallel(result.edges)
    reachable = _reachable(result.initial, result.edges)
    result.states = {s: i for s, i in result.states.items() if s in reachable}
    result.edges = [e for e in result.edges if e.src in reachable]
    return result


# ---------------------------------------------------------------------------
# Public products.
# ---------------------------------------------------------------------------


def _public_product(a: SymbolicAutomaton, b: SymbolicAutomaton,
                    relaxed: bool) -> SymbolicAutomaton:
    if a.alphabet != b.alphabet:
        raise CdlError("product requires a shared alphabet")
    builder = _Builder()
    pair_ids: Dict[Tuple[int, int], int] = {}
    out_a = _adjacency(_eliminate_eps(a.edges))
    out_b = _adjacency(_eliminate_eps(b.edges))

    def resolve(qa, qb):
        key = (qa, qb)
        if key not in pair_ids:
            ia, ib = a.states[qa], b.states[qb]
            if ia.rejecting or ib.rejecting:
                kind, blame = "bad", ia.blame | ib.blame
            elif ia.kind == "good" and ib.kind == "good":
                kind, blame = "good", frozenset()
            else:
                kind, blame = "plain", frozenset()
            pair_ids[key] = builder.fresh(f"({ia.name},{ib.name})", kind, blame)
            worklist.append(key)
        return pair_ids[key]

    worklist: List[Tuple[int, int]] = []
    edges: List[Edge] = []
    initial = resolve(a.initial, b.initial)
    while worklist:
        qa, qb = worklist.pop()
        src = pair_ids[(qa, qb)]
        moves_a = out_a.get(qa, [])
        moves_b = out_b.get(qb, [])
        for ea in moves_a:
            for eb in moves_b:
                label = _combine_labels(ea, eb)
                if label is not None:
                    edges.append(Edge(src, resolve(ea.dst, eb.dst), **label))
        if relaxed:
            for ea in moves_a:
                label = _uncovered(ea, moves_b)
                if label is not None:
                    edges.append(Edge(src, resolve(ea.dst, qb), **label))
            for eb in moves_b:
                label = _uncovered(eb, moves_a)
                if label is not None:
                    edges.append(Edge(src, resolve(qa, eb.dst), **label))
    return SymbolicAutomaton(a.alphabet, initial, builder.states, edges,
                             finalized=a.finalized and b.finalized)


def sync_product(a: SymbolicAutomaton, b: SymbolicAutomaton) -> SymbolicAutomaton:
    """Synchronous product: both sides move on every event."""
    return _public_product(a, b, relaxed=False)


def relaxed_product(a: SymbolicAutomaton, b: SymbolicAutomaton) -> SymbolicAutomaton:
    """Synchronous product plus one-sided moves where the other side is stuck."""
    return _public_product(a, b, relaxed=True)


def universal(alphabet) -> SymbolicAutomaton:
    """The one-state automaton accepting everything."""
    builder = _Builder()
    s = builder.fresh("u")
    return SymbolicAutomaton(frozenset(alphabet), s, builder.states,
                             [Edge(s, s, guard=fm.TRUE)], finalized=True)


def conflict_states(a: SymbolicAutomaton) -> List[int]:
    """Reachable live states whose every successor is rejecting."""
    adjacency = _adjacency(a.edges)
    reachable = _reachable(a.initial, a.edges)
    return sorted(
        s for s in reachable
        if a.states[s].kind == "plain"
        and adjacency.get(s)
        and all(a.states[e.dst].rejecting for e in adjacency[s]))
