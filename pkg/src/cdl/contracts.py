"""Contract and regular-expression abstract syntax.

A contract is built from norms (obligation, prohibition, permission of one
party over one action), the constants TOP and BOT, conjunction, sequence,
reparation, regex-triggered and regex-guarded subcontracts, and tail
recursion.  All nodes are frozen dataclasses, so structural equality and
hashing come for free and values are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import IllFormedContractError
from . import formula as fm


# ---------------------------------------------------------------------------
# Regular expressions: atoms are guard formulas over labelled actions.
# ---------------------------------------------------------------------------


class Regex:
    """Base class for regex nodes."""

    def __str__(self):
        return regex_to_str(self)


@dataclass(frozen=True)
class ReAtom(Regex):
    formula: fm.Formula


@dataclass(frozen=True)
class ReChoice(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class ReSeq(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class RePlus(Regex):
    sub: Regex


# ---------------------------------------------------------------------------
# Contracts.
# ---------------------------------------------------------------------------


class Contract:
    """Base class for contract nodes."""

    def __str__(self):
        return contract_to_str(self)


@dataclass(frozen=True)
class Top(Contract):
    pass


@dataclass(frozen=True)
class Bot(Contract):
    pass


@dataclass(frozen=True)
class Obl(Contract):
    party: int
    action: str


@dataclass(frozen=True)
class Frb(Contract):
    party: int
    action: str


@dataclass(frozen=True)
class Perm(Contract):
    party: int
    action: str


@dataclass(frozen=True)
class And(Contract):
    left: Contract
    right: Contract


@dataclass(frozen=True)
class Seq(Contract):
    left: Contract
    right: Contract


@dataclass(frozen=True)
class Rep(Contract):
    """Reparation: the right contract activates when the left is violated."""

    left: Contract
    right: Contract


@dataclass(frozen=True)
class Trigger(Contract):
    regex: Regex
    body: Contract


@dataclass(frozen=True)
class Guard(Contract):
    regex: Regex
    body: Contract


@dataclass(frozen=True)
class Var(Contract):
    name: str


@dataclass(frozen=True)
class Rec(Contract):
    name: str
    body: Contract


NORM_TYPES = (Obl, Frb, Perm)
ATOMIC_TYPES = (Top, Bot, Obl, Frb, Perm)


def is_norm(c: Contract) -> bool:
    """Atomic contracts in the sense of the one-step semantics (incl. TOP/BOT)."""
    return isinstance(c, ATOMIC_TYPES)


def children(c: Contract) -> tuple:
    if isinstance(c, (And, Seq, Rep)):
        return (c.left, c.right)
    if isinstance(c, (Trigger, Guard)):
        return (c.body,)
    if isinstance(c, Rec):
        return (c.body,)
    return ()


def subterms(c: Contract) -> Iterator[Contract]:
    """Pre-order traversal of all contract subterms."""
    yield c
    for child in children(c):
        yield from subterms(child)


def size(c: Contract) -> int:
    """Number of contract nodes; normed actions and regexes are not counted."""
    return 1 + sum(size(child) for child in children(c))


def actions_of(c: Contract) -> frozenset:
    """All action names mentioned in norms or regex atoms of the contract."""
    acc = set()
    for t in subterms(c):
        if isinstance(t, NORM_TYPES):
            acc.add(t.action)
        elif isinstance(t, (Trigger, Guard)):
            for f in _regex_formulas(t.regex):
                acc.update(a.action for a in f.atoms())
    return frozenset(acc)


def _regex_formulas(re: Regex) -> Iterator[fm.Formula]:
    if isinstance(re, ReAtom):
        yield re.formula
    elif isinstance(re, (ReChoice, ReSeq)):
        yield from _regex_formulas(re.left)
        yield from _regex_formulas(re.right)
    else:
        yield from _regex_formulas(re.sub)


# ---------------------------------------------------------------------------
# Substitution and unfolding.
# ---------------------------------------------------------------------------


def substitute(c: Contract, name: str, replacement: Contract) -> Contract:
    """Replace free occurrences of Var(name) by the replacement contract."""
    if isinstance(c, Var):
        return replacement if c.name == name else c
    if isinstance(c, Rec):
        if c.name == name:  # shadowing; cannot occur in well-formed contracts
            return c
        return Rec(c.name, substitute(c.body, name, replacement))
    if isinstance(c, (And, Seq, Rep)):
        return type(c)(substitute(c.left, name, replacement),
                       substitute(c.right, name, replacement))
    if isinstance(c, (Trigger, Guard)):
        return type(c)(c.regex, substitute(c.body, name, replacement))
    return c


def unfold_once(c: Rec) -> Contract:
    """One unrolling step: rec X. C  becomes  C[X \\ rec X. C]."""
    return substitute(c.body, c.name, c)


def unfold_recursion(c: Contract, n: int) -> Contract:
    """Unroll every recursion n times; leftover recursion becomes TOP.

    With n body instantiations per recursion the result agrees with the
    original contract on every interaction of at most n steps, because each
    instantiation consumes at least one step before reaching its variable.
    """
    if n < 0:
        raise ValueError("unfold count must be non-negative")
    if isinstance(c, Rec):
        if n == 0:
            return Top()
        return unfold_recursion(unfold_once(c), n - 1)
    if isinstance(c, (And, Seq, Rep)):
        return type(c)(unfold_recursion(c.left, n), unfold_recursion(c.right, n))
    if isinstance(c, (Trigger, Guard)):
        return type(c)(c.regex, unfold_recursion(c.body, n))
    return c


# ---------------------------------------------------------------------------
# Well-formedness.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """One broken restriction, with the path of the offending subterm."""

    path: str
    message: str

    def __str__(self):
        return f"{self.path}: {self.message}"


def check_wellformed(c: Contract) -> list:
    """Return all broken restrictions (empty list = well-formed).

    Restrictions checked:
      * every recursion variable is bound by an enclosing rec;
      * no two recursions share a variable name;
      * each rec body is tail recursive: the variable occurs exactly once,
        reachable from the body root through right-of-sequence, trigger-body,
        or right-of-reparation steps only, and the body's top-level operator
        is a sequence or a trigger;
      * a reparation may be the last operation before the variable (or the
        body's top operator) only when the whole recursion is guarded.
    """
    violations = []
    seen_rec_names = set()

    def var_count(node, name):
        if isinstance(node, Var):
            return 1 if node.name == name else 0
        return sum(var_count(child, name) for child in children(node))

    def walk(node, path, bound, guarded):
        if isinstance(node, Var):
            if node.name not in bound:
                violations.append(Violation(path, f"unbound variable {node.name}"))
            return
        if isinstance(node, Rec):
            if node.name in seen_rec_names:
                violations.append(Violation(
                    path, f"variable {node.name} is reused by another rec"))
            seen_rec_names.add(node.name)
            _check_rec(node, path, guarded)
            walk(node.body, path + "/body", bound | {node.name}, guarded)
            return
        if isinstance(node, Guard):
            walk(node.body, path + "/body", bound, True)
            return
        if isinstance(node, Trigger):
            walk(node.body, path + "/body", bound, guarded)
            return
        if isinstance(node, (And, Seq, Rep)):
            walk(node.left, path + "/left", bound, guarded)
            walk(node.right, path + "/right", bound, guarded)

    def _check_rec(rec, path, guarded):
        body, name = rec.body, rec.name
        n = var_count(body, name)
        if n != 1:
            violations.append(Violation(
                path, f"variable {name} occurs {n} times in the rec body, not once"))
            return
        if not isinstance(body, (Seq, Trigger)) and not (
                isinstance(body, Rep) and guarded):
            violations.append(Violation(
                path, f"rec body's top-level operator must be a sequence or a "
                      f"trigger (got {type(body).__name__})"))
        # Follow the tail spine towards the single occurrence of the variable.
        node, last_op = body, None
        while True:
            if isinstance(node, Var):
                if node.name != name:
                    violations.append(Violation(
                        path, f"tail of rec {name} ends in foreign variable"))
                elif last_op is Rep and not guarded:
                    violations.append(Violation(
                        path, f"reparation is the last operation before {name} "
                              f"and the recursion is not guarded"))
                return
            if isinstance(node, Seq):
                if var_count(node.left, name):
                    violations.append(Violation(
                        path, f"{name} occurs left of a sequence, not in tail "
                              f"position"))
                    return
                node, last_op = node.right, Seq
            elif isinstance(node, Trigger):
                node, last_op = node.body, Trigger
            elif isinstance(node, Rep):
                if var_count(node.left, name):
                    violations.append(Violation(
                        path, f"{name} occurs left of a reparation, not in "
                              f"tail position"))
                    return
                node, last_op = node.right, Rep
            else:
                # The variable sits under an operator with no tail position.
                violations.append(Violation(
                    path, f"{name} does not occur in tail position"))
                return

    walk(c, "/", frozenset(), False)
    return violations


def require_wellformed(c: Contract) -> None:
    violations = check_wellformed(c)
    if violations:
        raise IllFormedContractError(
            "; ".join(str(v) for v in violations))


# ---------------------------------------------------------------------------
# Pretty printing.  Levels, loosest to tightest:
#   rec (0) < ; (1, right assoc) < |> (2, left assoc) < /\ (3, left assoc)
#   < trigger/guard prefix (4) < atoms (5).
# ---------------------------------------------------------------------------


def contract_to_str(c: Contract, level: int = 0) -> str:
    if isinstance(c, Top):
        return "TOP"
    if isinstance(c, Bot):
        return "BOT"
    if isinstance(c, Obl):
        return f"O_{c.party}({c.action})"
    if isinstance(c, Frb):
        return f"F_{c.party}({c.action})"
    if isinstance(c, Perm):
        return f"P_{c.party}({c.action})"
    if isinstance(c, Var):
        return c.name
    if isinstance(c, Rec):
        text, own = f"rec {c.name}. {contract_to_str(c.body, 0)}", 0
    elif isinstance(c, Seq):
        text = f"{contract_to_str(c.left, 2)} ; {contract_to_str(c.right, 1)}"
        own = 1
    elif isinstance(c, Rep):
        text = f"{contract_to_str(c.left, 2)} |> {contract_to_str(c.right, 3)}"
        own = 2
    elif isinstance(c, And):
        text = f"{contract_to_str(c.left, 3)} /\\ {contract_to_str(c.right, 4)}"
        own = 3
    elif isinstance(c, Trigger):
        text = f"<{regex_to_str(c.regex)}> {contract_to_str(c.body, 4)}"
        own = 4
    else:
        text = f"{regex_to_str(c.regex)} ~> {contract_to_str(c.body, 4)}"
        own = 4
    return f"({text})" if own < level else text


def regex_to_str(re: Regex, level: int = 0) -> str:
    if isinstance(re, ReAtom):
        f = re.formula
        if isinstance(f, fm.Atom):
            return str(f.atom)
        if isinstance(f, fm.Not) and isinstance(f.sub, fm.Atom):
            return f"!{f.sub.atom}"
        return f"[{fm.to_str(f)}]"
    if isinstance(re, ReChoice):
        text = f"{regex_to_str(re.left, 1)} | {regex_to_str(re.right, 2)}"
        own = 1
    elif isinstance(re, ReSeq):
        text = f"{regex_to_str(re.left, 2)} ; {regex_to_str(re.right, 3)}"
        own = 2
    else:
        text = f"{regex_to_str(re.sub, 4)}+"
        own = 3
    return f"({text})" if own < level else text
