"""Blame assignment and conflict detection over finite interactions.

Blame refines violation: a party is blamed for withholding an action it is
the subject of (or that the other party's norm needs it to cooperate on),
or for performing an action it is forbidden from.  Violations of BOT and
violations forced by a conflict blame no one, and double blame is possible
when a conjunction's sides are violated by different parties at once.

Norm blame, per party p:

  * O_p(a)      p withheld a;
  * O_{1-p}(a)  the subject attempted a but p did not cooperate;
  * F_p(a)      the subject attempted a and it succeeded;
  * P_{1-p}(a)  the subject attempted a and p did not enable it.

Conjunction blame at index j requires that the other party was not blamed
for the conjunction strictly earlier and that the violation was not forced
by a conflict at j-1.  Reparation blames the violator of the reparation,
regardless of who violated the primary.  Sequence has no published blame
rule; the rule used here mirrors the violation rule (blame for the first
component, or for the second after the first is satisfied).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Optional, Tuple

from . import contracts as ct
from .contracts import require_wellformed
from .errors import ConflictPreconditionError, IllFormedContractError
from .semantics import Evaluator, evaluate
from .traces import Interaction


@dataclass(frozen=True)
class BlameVerdict:
    """The violation position and the (possibly empty) set of blamed parties."""

    index: int
    blamed: FrozenSet[int]

    def __str__(self):
        parties = ", ".join(str(p) for p in sorted(self.blamed)) or "nobody"
        return f"violated at {self.index}, blamed: {parties}"


def norm_blame(norm, e0, e1) -> FrozenSet[int]:
    """Parties blamed for an atomic norm on one step (empty if satisfied)."""
    blamed = set()
    for p in (0, 1):
        if _norm_blames(p, norm, e0, e1):
            blamed.add(p)
    return frozenset(blamed)


def _norm_blames(p: int, norm, e0, e1) -> bool:
    events = (e0, e1)
    mine, other = events[p], events[1 - p]
    a = norm.action
    if isinstance(norm, ct.Obl):
        if norm.party == p:
            return a not in mine
        return a in other and a not in mine
    if isinstance(norm, ct.Frb):
        if norm.party == p:
            return a in mine and a in other
        return False
    if isinstance(norm, ct.Perm):
        if norm.party == p:
            return False
        return a in other and a not in mine
    return False  # TOP and BOT blame nobody


def _events_over(alphabet):
    universe = sorted(alphabet)
    for r in range(len(universe) + 1):
        for combo in combinations(universe, r):
            yield frozenset(combo)


class BlameEvaluator(Evaluator):
    """Evaluator extended with the per-party blame relation."""

    def __init__(self, x: Interaction):
        super().__init__(x)
        self._blame: Dict[Tuple, bool] = {}

    def blames(self, p: int, c: ct.Contract, i: int, j: int) -> bool:
        if j < i or i < 0 or j > self.end:
            return False
        key = (p, c, i, j)
        if key not in self._blame:
            self._blame[key] = self._blames_raw(p, c, i, j)
        return self._blame[key]

    def _blames_raw(self, p, c, i, j):
        if isinstance(c, (ct.Top, ct.Bot)):
            return False
        if isinstance(c, (ct.Obl, ct.Frb, ct.Perm)):
            return i == j and _norm_blames(p, c, self.x.trace0[i],
                                           self.x.trace1[i])
        if isinstance(c, ct.Trigger):
            k = self.scan(c.regex, i).match_index
            return k is not None and k < j and self.blames(p, c.body, k + 1, j)
        if isinstance(c, ct.Guard):
            return (self.scan(c.regex, i).in_closure(j)
                    and self.blames(p, c.body, i, j))
        if isinstance(c, ct.And):
            if not (self.blames(p, c.left, i, j) or self.blames(p, c.right, i, j)):
                return False
            if any(self.blames(1 - p, c, i, k) for k in range(i, j)):
                return False
            return not self.conflict(c.left, c.right, i, j - 1)
        if isinstance(c, ct.Seq):
            # No published rule; mirrors the violation rule for sequence.
            if self.blames(p, c.left, i, j):
                return True
            k = self.sat_index(c.left, i)
            return k is not None and k < j and self.blames(p, c.right, k + 1, j)
        if isinstance(c, ct.Rep):
            v = self.viol_index(c.left, i)
            return v is not None and v < j and self.blames(p, c.right, v + 1, j)
        if isinstance(c, ct.Rec):
            return self.blames(p, self.unfold(c), i, j)
        raise IllFormedContractError(f"cannot evaluate {c!r}")

    def conflict(self, c1: ct.Contract, c2: ct.Contract, i: int, j: int) -> bool:
        """Whether every one-step extension of x[i..j] violates c1 /\\ c2.

        j may be i-1, in which case the prefix is empty and the extensions
        range over all first steps.
        """
        conj = ct.And(c1, c2)
        prefix = self.x.slice(i, j)
        steps = j - i + 1
        events = list(_events_over(self.x.alphabet))
        for e0 in events:
            for e1 in events:
                extended = prefix.extended(e0, e1)
                if not Evaluator(extended).viol(conj, 0, steps):
                    return False
        return True


def blame(c: ct.Contract, x: Interaction, start: int = 0) -> Optional[BlameVerdict]:
    """Blamed parties at the violation index, or None when not violated."""
    require_wellformed(c)
    ev = BlameEvaluator(x)
    verdict = ev.verdict(c, start)
    if not verdict.is_violated:
        return None
    j = verdict.index
    blamed = frozenset(p for p in (0, 1) if ev.blames(p, c, start, j))
    return BlameVerdict(j, blamed)


def blames_at(c: ct.Contract, x: Interaction, i: int, j: int, p: int) -> bool:
    """The raw per-party blame relation at exactly (i, j)."""
    return BlameEvaluator(x).blames(p, c, i, j)


def conflict(c1: ct.Contract, c2: ct.Contract, prefix: Interaction,
             start: int = 0) -> bool:
    """Whether c1 and c2 are in conflict after the given interaction prefix.

    Precondition: the conjunction is neither satisfied nor violated on the
    prefix; a breach raises ConflictPreconditionError.
    """
    require_wellformed(c1)
    require_wellformed(c2)
    verdict = evaluate(ct.And(c1, c2), prefix, start)
    if not verdict.is_unknown:
        raise ConflictPreconditionError(
            f"the conjunction is already {verdict} on the given prefix")
    ev = BlameEvaluator(prefix)
    return ev.conflict(c1, c2, start, len(prefix) - 1)
