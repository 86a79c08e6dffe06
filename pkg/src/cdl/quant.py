"""Quantitative semantics: per-party counts of repaired norm violations.

Interactions that satisfy a contract only through its reparations are not
ideal; the mistake score of a party counts how many norm violations blamed
on that party were incurred along the way.  The status component of the
result always coincides with the informative verdict; the score refines it:

  * a violated norm scores 1 for the blamed party and 0 otherwise
    (violations of BOT score 0 for everybody);
  * scores add up across conjunction, sequence, and reparation, and a
    satisfied reparation keeps the score of the violated primary;
  * a conjunction violated through a conflict scores the sum of the two
    undecided-so-far scores at the step before the conflict hit, with no
    extra penalty;
  * for an undecided contract the score counts the reparations consumed so
    far.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from . import contracts as ct
from .blame import BlameEvaluator, _norm_blames
from .contracts import require_wellformed
from .errors import IllFormedContractError
from .semantics import Verdict, VerdictKind
from .traces import Interaction


@dataclass(frozen=True)
class ScoreResult:
    status: VerdictKind
    score: int
    party: int

    def __str__(self):
        return f"party {self.party}: {self.status.value}, score {self.score}"


class Scorer(BlameEvaluator):
    """Blame evaluator extended with the mistake-score recursion."""

    def __init__(self, x: Interaction, party: int):
        super().__init__(x)
        self.party = party
        self._scores: Dict[Tuple, int] = {}

    # Each score function is meaningful when the corresponding relation
    # holds (sat at exactly (i, j), viol at exactly (i, j), undecided on
    # [i, j]); out-of-range windows contribute 0.

    def sat_score(self, c, i, j) -> int:
        return self._memo("s", c, i, j)

    def viol_score(self, c, i, j) -> int:
        return self._memo("v", c, i, j)

    def unk_score(self, c, i, j) -> int:
        if j < i:
            return 0
        return self._memo("?", c, i, j)

    def _memo(self, rel, c, i, j):
        key = (rel, c, i, j)
        if key not in self._scores:
            self._scores[key] = {"s": self._sat_score,
                                 "v": self._viol_score,
                                 "?": self._unk_score}[rel](c, i, j)
        return self._scores[key]

    def _decided_score(self, c, i, j) -> int:
        """Score of a component by position j, whatever its status."""
        k = self.sat_index(c, i)
        if k is not None and k <= j:
            return self.sat_score(c, i, k)
        v = self.viol_index(c, i)
        if v is not None and v <= j:
            return self.viol_score(c, i, v)
        return self.unk_score(c, i, j)

    def _sat_score(self, c, i, j):
        if isinstance(c, ct.ATOMIC_TYPES):
            return 0
        if isinstance(c, ct.And):
            return (self._decided_score(c.left, i, j)
                    + self._decided_score(c.right, i, j))
        if isinstance(c, ct.Seq):
            k = self.sat_index(c.left, i)
            return self.sat_score(c.left, i, k) + self.sat_score(c.right, k + 1, j)
        if isinstance(c, ct.Rep):
            if self.sat(c.left, i, j):
                return self.sat_score(c.left, i, j)
            v = self.viol_index(c.left, i)
            return self.viol_score(c.left, i, v) + self.sat_score(c.right, v + 1, j)
        if isinstance(c, ct.Trigger):
            s = self.scan(c.regex, i)
            if s.in_closure_complement(j):
                return 0
            k = s.match_index
            return self.sat_score(c.body, k + 1, j)
        if isinstance(c, ct.Guard):
            s = self.scan(c.regex, i)
            if s.in_closure(j):
                return self.sat_score(c.body, i, j)
            # Released at the fall-out / tight-match point: report the
            # score consumed by the body so far.
            return self._decided_score(c.body, i, j - 1) if j > i else 0
        if isinstance(c, ct.Rec):
            return self.sat_score(self.unfold(c), i, j)
        raise IllFormedContractError(f"cannot score {c!r}")

    def _viol_score(self, c, i, j):
        if isinstance(c, ct.ATOMIC_TYPES):
            if isinstance(c, ct.Bot):
                return 0
            blames = _norm_blames(self.party, c, self.x.trace0[i],
                                  self.x.trace1[i])
            return 1 if blames else 0
        if isinstance(c, ct.And):
            if self.conflict(c.left, c.right, i, j - 1):
                return (self.unk_score(c.left, i, j - 1)
                        + self.unk_score(c.right, i, j - 1))
            return (self._decided_score(c.left, i, j)
                    + self._decided_score(c.right, i, j))
        if isinstance(c, ct.Seq):
            k = self.sat_index(c.left, i)
            if k is not None and k < j and self.viol(c.right, k + 1, j):
                return (self.sat_score(c.left, i, k)
                        + self.viol_score(c.right, k + 1, j))
            return self.viol_score(c.left, i, j)
        if isinstance(c, ct.Rep):
            v = self.viol_index(c.left, i)
            return self.viol_score(c.left, i, v) + self.viol_score(c.right, v + 1, j)
        if isinstance(c, ct.Trigger):
            k = self.scan(c.regex, i).match_index
            return self.viol_score(c.body, k + 1, j)
        if isinstance(c, ct.Guard):
            return self.viol_score(c.body, i, j)
        if isinstance(c, ct.Rec):
            return self.viol_score(self.unfold(c), i, j)
        raise IllFormedContractError(f"cannot score {c!r}")

    def _unk_score(self, c, i, j):
        if isinstance(c, ct.ATOMIC_TYPES):
            return 0
        if isinstance(c, ct.And):
            return (self._undecided_component(c.left, i, j)
                    + self._undecided_component(c.right, i, j))
        if isinstance(c, ct.Seq):
            k = self.sat_index(c.left, i)
            if k is not None and k <= j:
                return (self.sat_score(c.left, i, k)
                        + self.unk_score(c.right, k + 1, j))
            return self.unk_score(c.left, i, j)
        if isinstance(c, ct.Rep):
            v = self.viol_index(c.left, i)
            if v is not None and v <= j:
                return (self.viol_score(c.left, i, v)
                        + self.unk_score(c.right, v + 1, j))
            return self.unk_score(c.left, i, j)
        if isinstance(c, ct.Trigger):
            k = self.scan(c.regex, i).match_index
            if k is None or k > j:
                return 0
            return self.unk_score(c.body, k + 1, j)
        if isinstance(c, ct.Guard):
            return self.unk_score(c.body, i, j)
        if isinstance(c, ct.Rec):
            return self.unk_score(self.unfold(c), i, j)
        raise IllFormedContractError(f"cannot score {c!r}")

    def _undecided_component(self, c, i, j) -> int:
        k = self.sat_index(c, i)
        if k is not None and k <= j:
            return self.sat_score(c, i, k)
        return self.unk_score(c, i, j)


def score(c: ct.Contract, x: Interaction, party: int,
          start: int = 0) -> ScoreResult:
    """The mistake score of one party, together with the contract status."""
    require_wellformed(c)
    if party not in (0, 1):
        raise ValueError("party must be 0 or 1")
    scorer = Scorer(x, party)
    verdict = scorer.verdict(c, start)
    if verdict.is_satisfied:
        value = scorer.sat_score(c, start, verdict.index)
    elif verdict.is_violated:
        value = scorer.viol_score(c, start, verdict.index)
    else:
        value = scorer.unk_score(c, start, len(x) - 1) if len(x) > start else 0
    return ScoreResult(verdict.kind, value, party)
