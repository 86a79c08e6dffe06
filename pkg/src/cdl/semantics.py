"""Informative satisfaction and violation of contracts over finite interactions.

The relations are position-exact: a contract is satisfied (violated) *at*
the index where its status becomes determined, and by uniqueness there is at
most one such index per relation, never one of each.  evaluate() scans the
prefixes of an interaction and reports the earliest decided index, or
Unknown when no prefix decides.

Norms decide in exactly one step:

  * an obligation O_p(a) is satisfied when both parties attempt a;
  * a prohibition F_p(a) is satisfied when at least one party withholds a;
  * a permission P_p(a) is satisfied when the subject's attempt of a implies
    the other party enables it.

Sequence splits at the unique satisfaction index of its first component,
reparation at the unique violation index; conjunction is satisfied at the
later of the two satisfaction indices and violated at the earliest index at
which either conjunct is violated.  Triggered contracts start one step after
the tight match of their regex and are vacuously satisfied when the trace
falls out of the regex's prefix closure; guarded contracts are released at
the fall-out or tight-match point if they were neither violated nor already
satisfied strictly before it.  Recursion is evaluated by substitution, which
terminates because every recursion variable sits behind at least one
consumed step.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from . import contracts as ct
from . import rex
from .contracts import require_wellformed
from .errors import CdlError, IllFormedContractError
from .traces import Interaction


class VerdictKind(Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    index: Optional[int] = None

    @classmethod
    def satisfied(cls, j: int) -> "Verdict":
        return cls(VerdictKind.SATISFIED, j)

    @classmethod
    def violated(cls, j: int) -> "Verdict":
        return cls(VerdictKind.VIOLATED, j)

    @classmethod
    def unknown(cls) -> "Verdict":
        return cls(VerdictKind.UNKNOWN, None)

    @property
    def is_satisfied(self):
        return self.kind is VerdictKind.SATISFIED

    @property
    def is_violated(self):
        return self.kind is VerdictKind.VIOLATED

    @property
    def is_unknown(self):
        return self.kind is VerdictKind.UNKNOWN

    def __str__(self):
        if self.is_unknown:
            return "unknown"
        return f"{self.kind.value} at {self.index}"


class Evaluator:
    """Memoized decision procedure for one interaction.

    Instances cache per (subterm, i, j); they are meant to live for a single
    adjudication call and are not shared between threads.
    """

    def __init__(self, x: Interaction):
        self.x = x
        self.labeled = x.to_labeled()
        self.end = len(x) - 1
        self._sat: Dict[Tuple, bool] = {}
        self._viol: Dict[Tuple, bool] = {}
        self._sat_index: Dict[Tuple, Optional[int]] = {}
        self._viol_index: Dict[Tuple, Optional[int]] = {}
        self._dfas: Dict[ct.Regex, rex.TightDfa] = {}
        self._scans: Dict[Tuple, rex.RexScan] = {}
        self._unfold: Dict[ct.Rec, ct.Contract] = {}

    # -- helpers ------------------------------------------------------------

    def scan(self, regex: ct.Regex, i: int) -> rex.RexScan:
        key = (regex, i)
        if key not in self._scans:
            if regex not in self._dfas:
                self._dfas[regex] = rex.compile_regex(regex)
            self._scans[key] = rex.scan(self._dfas[regex], self.labeled, i)
        return self._scans[key]

    def unfold(self, c: ct.Rec) -> ct.Contract:
        if c not in self._unfold:
            self._unfold[c] = ct.unfold_once(c)
        return self._unfold[c]

    def sat_index(self, c: ct.Contract, i: int) -> Optional[int]:
        """The unique j with sat(c, i, j), or None."""
        key = (c, i)
        if key not in self._sat_index:
            self._sat_index[key] = next(
                (j for j in range(i, self.end + 1) if self.sat(c, i, j)), None)
        return self._sat_index[key]

    def viol_index(self, c: ct.Contract, i: int) -> Optional[int]:
        key = (c, i)
        if key not in self._viol_index:
            self._viol_index[key] = next(
                (j for j in range(i, self.end + 1) if self.viol(c, i, j)), None)
        return self._viol_index[key]

    # -- the relations -------------------------------------------------------

    def sat(self, c: ct.Contract, i: int, j: int) -> bool:
        if j < i or i < 0 or j > self.end:
            return False
        key = (c, i, j)
        if key not in self._sat:
            self._sat[key] = self._sat_raw(c, i, j)
        return self._sat[key]

    def viol(self, c: ct.Contract, i: int, j: int) -> bool:
        if j < i or i < 0 or j > self.end:
            return False
        key = (c, i, j)
        if key not in self._viol:
            self._viol[key] = self._viol_raw(c, i, j)
        return self._viol[key]

    def _sat_raw(self, c, i, j):
        if isinstance(c, ct.Top):
            return i == j
        if isinstance(c, ct.Bot):
            return False
        if isinstance(c, (ct.Obl, ct.Frb, ct.Perm)):
            return i == j and _norm_sat(c, self.x.trace0[i], self.x.trace1[i])
        if isinstance(c, ct.And):
            k = self.sat_index(c.left, i)
            m = self.sat_index(c.right, i)
            return k is not None and m is not None and max(k, m) == j
        if isinstance(c, ct.Seq):
            k = self.sat_index(c.left, i)
            return k is not None and k < j and self.sat(c.right, k + 1, j)
        if isinstance(c, ct.Rep):
            if self.sat(c.left, i, j):
                return True
            v = self.viol_index(c.left, i)
            return v is not None and v < j and self.sat(c.right, v + 1, j)
        if isinstance(c, ct.Trigger):
            s = self.scan(c.regex, i)
            if s.in_closure_complement(j):
                return True
            k = s.match_index
            return k is not None and k < j and self.sat(c.body, k + 1, j)
        if isinstance(c, ct.Guard):
            s = self.scan(c.regex, i)
            if s.in_closure_complement(j) or s.in_tight(j):
                v = self.viol_index(c.body, i)
                if v is None or v >= j:
                    # The release case must not fire a second time after the
                    # guard was already satisfied inside the prefix closure,
                    # otherwise satisfaction would not be unique.
                    k = self.sat_index(c.body, i)
                    if k is None or k >= j or not s.in_closure(k):
                        return True
            return s.in_closure(j) and self.sat(c.body, i, j)
        if isinstance(c, ct.Rec):
            return self.sat(self.unfold(c), i, j)
        raise IllFormedContractError(f"cannot evaluate {c!r}")

    def _viol_raw(self, c, i, j):
        if isinstance(c, ct.Top):
            return False
        if isinstance(c, ct.Bot):
            return i == j
        if isinstance(c, (ct.Obl, ct.Frb, ct.Perm)):
            return i == j and not _norm_sat(c, self.x.trace0[i], self.x.trace1[i])
        if isinstance(c, ct.And):
            indices = [v for v in (self.viol_index(c.left, i),
                                   self.viol_index(c.right, i))
                       if v is not None]
            return bool(indices) and j == min(indices)
        if isinstance(c, ct.Seq):
            if self.viol(c.left, i, j):
                return True
            k = self.sat_index(c.left, i)
            return k is not None and k < j and self.viol(c.right, k + 1, j)
        if isinstance(c, ct.Rep):
            v = self.viol_index(c.left, i)
            return v is not None and v < j and self.viol(c.right, v + 1, j)
        if isinstance(c, ct.Trigger):
            k = self.scan(c.regex, i).match_index
            return k is not None and k < j and self.viol(c.body, k + 1, j)
        if isinstance(c, ct.Guard):
            return self.scan(c.regex, i).in_closure(j) and self.viol(c.body, i, j)
        if isinstance(c, ct.Rec):
            return self.viol(self.unfold(c), i, j)
        raise IllFormedContractError(f"cannot evaluate {c!r}")

    def verdict(self, c: ct.Contract, start: int) -> Verdict:
        for j in range(start, self.end + 1):
            if self.sat(c, start, j):
                return Verdict.satisfied(j)
            if self.viol(c, start, j):
                return Verdict.violated(j)
        return Verdict.unknown()


def _norm_sat(norm, e0, e1) -> bool:
    subject, other = (e0, e1) if norm.party == 0 else (e1, e0)
    if isinstance(norm, ct.Obl):
        return norm.action in e0 and norm.action in e1
    if isinstance(norm, ct.Frb):
        return norm.action not in subject or norm.action not in other
    return norm.action not in subject or norm.action in other  # permission


def evaluate(c: ct.Contract, x: Interaction, start: int = 0) -> Verdict:
    """Adjudicate the contract on the interaction from the given position.

    Returns the position-exact verdict; starting past the end of the trace
    yields Unknown.
    """
    require_wellformed(c)
    if not 0 <= start <= len(x):
        raise IndexError(f"start index {start} out of range for length {len(x)}")
    return Evaluator(x).verdict(c, start)


def evaluate_norm(norm, e0, e1) -> VerdictKind:
    """One-step status of an atomic norm against a pair of events."""
    if not isinstance(norm, ct.ATOMIC_TYPES):
        raise CdlError(f"{norm!r} is not an atomic norm")
    if isinstance(norm, ct.Top):
        return VerdictKind.SATISFIED
    if isinstance(norm, ct.Bot):
        return VerdictKind.VIOLATED
    sat = _norm_sat(norm, frozenset(e0), frozenset(e1))
    return VerdictKind.SATISFIED if sat else VerdictKind.VIOLATED


def satisfies_at(c: ct.Contract, x: Interaction, i: int, j: int) -> bool:
    """The raw informative-satisfaction relation at exactly (i, j)."""
    return Evaluator(x).sat(c, i, j)


def violates_at(c: ct.Contract, x: Interaction, i: int, j: int) -> bool:
    """The raw informative-violation relation at exactly (i, j)."""
    return Evaluator(x).viol(c, i, j)
