"""Recursive-descent parser for the contract DSL.

Concrete syntax:

    contract := 'rec' IDENT '.' contract | seq
    seq      := rep (';' seq)?                      right associative
    rep      := conj ('|>' conj)*                   left associative
    conj     := prefix ('/\\' prefix)*              left associative
    prefix   := '<' regex '>' prefix
              | regex '~>' prefix
              | primary
    primary  := 'TOP' | 'BOT' | norm | IDENT | '(' contract ')'
    norm     := ('O'|'F'|'P') '_' ('0'|'1') '(' IDENT ')'

    regex    := rseq ('|' rseq)*
    rseq     := rplus (';' rplus)*
    rplus    := ratom '+'*
    ratom    := LABELED | '!' LABELED | '[' fml ']' | '(' regex ')'

    fml      := fdis ('->' fml)?
    fdis     := fcon ('|' fcon)*
    fcon     := funit ('&' funit)*
    funit    := '!' funit | 'true' | 'false' | LABELED | '(' fml ')'

A LABELED token is an identifier ending in ``_0`` or ``_1``; the suffix names
the party and the rest names the action.  Lines starting with ``#`` are
comments.  Contract files carry a header line ``alphabet: a, b, ...``.
"""

from __future__ import annotations

import re as _stdre
from dataclasses import dataclass
from typing import Optional

from . import contracts as ct
from . import formula as fm
from .errors import ParseError, UndeclaredActionError

_TOKEN_RE = _stdre.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>\#[^\n]*)
      | (?P<nl>\n)
      | (?P<op>/\\|\|>|~>|->|[()<>;.,:|+!\[\]&])
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    _stdre.VERBOSE,
)

_KEYWORDS = {"rec", "TOP", "BOT", "true", "false"}
_NORM_RE = _stdre.compile(r"^([OFP])_([01])$")
_LABELED_RE = _stdre.compile(r"^(.+)_([01])$")
_IDENT_RE = _stdre.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Token:
    kind: str  # 'op', 'ident', 'kw', 'eof'
    value: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(value)
        elif kind == "ident":
            k = "kw" if value in _KEYWORDS else "ident"
            tokens.append(Token(k, value, line, col))
            col += len(value)
        else:
            tokens.append(Token("op", value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, alphabet=None):
        self.tokens = tokens
        self.pos = 0
        self.alphabet = frozenset(alphabet) if alphabet is not None else None

    # -- token helpers ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def accept(self, value: str) -> Optional[Token]:
        tok = self.peek()
        if tok.kind in ("op", "kw") and tok.value == value:
            return self.advance()
        return None

    def expect(self, value: str) -> Token:
        tok = self.accept(value)
        if tok is None:
            got = self.peek()
            raise ParseError(f"expected {value!r}, found {got.value!r}",
                             got.line, got.column)
        return tok

    def expect_ident(self, what="identifier") -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(f"expected {what}, found {tok.value!r}",
                             tok.line, tok.column)
        return self.advance()

    def error(self, message) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.column)

    def check_action(self, name: str, tok: Token) -> None:
        if self.alphabet is not None and name not in self.alphabet:
            raise UndeclaredActionError(
                f"action {name!r} is not in the declared alphabet",
                tok.line, tok.column)

    # -- contracts ---------------------------------------------------------

    def contract(self) -> ct.Contract:
        if self.accept("rec"):
            name = self.expect_ident("recursion variable").value
            self.expect(".")
            return ct.Rec(name, self.contract())
        return self.seq_level()

    def seq_level(self) -> ct.Contract:
        left = self.rep_level()
        if self.accept(";"):
            return ct.Seq(left, self.seq_level())
        return left

    def rep_level(self) -> ct.Contract:
        left = self.conj_level()
        while self.accept("|>"):
            left = ct.Rep(left, self.conj_level())
        return left

    def conj_level(self) -> ct.Contract:
        left = self.prefix_level()
        while self.accept("/\\"):
            left = ct.And(left, self.prefix_level())
        return left

    def prefix_level(self) -> ct.Contract:
        if self.accept("<"):
            regex, atoms = self.regex_with_atoms()
            self._check_regex_atoms(atoms)
            self.expect(">")
            return ct.Trigger(regex, self.prefix_level())
        # A guard starts with a regex; backtrack if no '~>' follows.  Once
        # the arrow is seen we are committed and errors propagate.
        save = self.pos
        committed = False
        try:
            regex, atoms = self.regex_with_atoms()
            if self.accept("~>"):
                committed = True
                self._check_regex_atoms(atoms)
                return ct.Guard(regex, self.prefix_level())
        except ParseError:
            if committed:
                raise
        self.pos = save
        return self.primary()

    def primary(self) -> ct.Contract:
        if self.accept("("):
            inner = self.contract()
            self.expect(")")
            return inner
        if self.accept("TOP"):
            return ct.Top()
        if self.accept("BOT"):
            return ct.Bot()
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            norm = _NORM_RE.match(tok.value)
            if norm and self.accept("("):
                action = self.expect_ident("action name")
                self.check_action(action.value, action)
                self.expect(")")
                party = int(norm.group(2))
                kind = {"O": ct.Obl, "F": ct.Frb, "P": ct.Perm}[norm.group(1)]
                return kind(party, action.value)
            return ct.Var(tok.value)
        raise self.error(f"expected a contract, found {tok.value!r}")

    # -- regular expressions ------------------------------------------------

    def regex_with_atoms(self):
        """Parse a regex, returning it and its labelled atoms with positions.

        Alphabet validation is deferred so that a failed guard attempt can
        backtrack before complaining about undeclared actions.
        """
        atoms = []
        return self._re_choice(atoms), atoms

    def _check_regex_atoms(self, atoms) -> None:
        for action, tok in atoms:
            self.check_action(action, tok)

    def _re_choice(self, atoms) -> ct.Regex:
        left = self._re_seq(atoms)
        while self.accept("|"):
            left = ct.ReChoice(left, self._re_seq(atoms))
        return left

    def _re_seq(self, atoms) -> ct.Regex:
        left = self._re_plus(atoms)
        while self.accept(";"):
            left = ct.ReSeq(left, self._re_plus(atoms))
        return left

    def _re_plus(self, atoms) -> ct.Regex:
        node = self._re_atom(atoms)
        while self.accept("+"):
            node = ct.RePlus(node)
        return node

    def _re_atom(self, atoms) -> ct.Regex:
        if self.accept("("):
            inner = self._re_choice(atoms)
            self.expect(")")
            return inner
        if self.accept("["):
            f = self.formula(atoms)
            self.expect("]")
            return ct.ReAtom(f)
        if self.accept("!"):
            return ct.ReAtom(fm.Not(fm.Atom(self._labeled(atoms))))
        return ct.ReAtom(fm.Atom(self._labeled(atoms)))

    def _labeled(self, atoms) -> fm.LabeledAction:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(f"expected a labelled action, found {tok.value!r}",
                             tok.line, tok.column)
        m = _LABELED_RE.match(tok.value)
        if not m:
            raise ParseError(
                f"labelled action must end in _0 or _1, found {tok.value!r}",
                tok.line, tok.column)
        self.advance()
        atoms.append((m.group(1), tok))
        return fm.LabeledAction(m.group(1), int(m.group(2)))

    # -- boolean formulas ---------------------------------------------------

    def formula(self, atoms) -> fm.Formula:
        left = self._f_dis(atoms)
        if self.accept("->"):
            return fm.Implies(left, self.formula(atoms))
        return left

    def _f_dis(self, atoms) -> fm.Formula:
        left = self._f_con(atoms)
        while self.accept("|"):
            left = fm.Or(left, self._f_con(atoms))
        return left

    def _f_con(self, atoms) -> fm.Formula:
        left = self._f_unit(atoms)
        while self.accept("&"):
            left = fm.And(left, self._f_unit(atoms))
        return left

    def _f_unit(self, atoms) -> fm.Formula:
        if self.accept("!"):
            return fm.Not(self._f_unit(atoms))
        if self.accept("true"):
            return fm.TRUE
        if self.accept("false"):
            return fm.FALSE
        if self.accept("("):
            inner = self.formula(atoms)
            self.expect(")")
            return inner
        return fm.Atom(self._labeled(atoms))


def _finish(parser: _Parser, node):
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected trailing input {tok.value!r}",
                         tok.line, tok.column)
    return node


def parse_contract(text: str, alphabet) -> ct.Contract:
    """Parse a contract expression over the given alphabet."""
    if not alphabet:
        raise ParseError("the alphabet must be non-empty")
    parser = _Parser(tokenize(text), alphabet)
    return _finish(parser, parser.contract())


def parse_formula(text: str, alphabet=None, party=None) -> fm.Formula:
    """Parse a guard formula; if party is given, all atoms must carry it."""
    parser = _Parser(tokenize(text), alphabet)
    atoms = []
    f = _finish(parser, parser.formula(atoms))
    for action, tok in atoms:
        parser.check_action(action, tok)
    if party is not None:
        for a in f.atoms():
            if a.party != party:
                raise ParseError(
                    f"atom {a} must be labelled with party {party}")
    return f


def parse_regex(text: str, alphabet=None) -> ct.Regex:
    parser = _Parser(tokenize(text), alphabet)
    regex, atoms = parser.regex_with_atoms()
    parser._check_regex_atoms(atoms)
    return _finish(parser, regex)


_ALPHA_RE = _stdre.compile(r"^\s*alphabet\s*:\s*(.*)$")


def load_contract_document(text: str):
    """Parse a contract file: an ``alphabet:`` header then the contract.

    Returns (alphabet, contract).  Error positions refer to the original
    file; the header line is blanked, not removed, before parsing the body.
    """
    lines = text.splitlines()
    header_index = None
    for i, line in enumerate(lines):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _ALPHA_RE.match(line)
        if not m:
            raise ParseError("expected an 'alphabet: ...' header line", i + 1, 1)
        header_index = i
        names = [n.strip() for n in m.group(1).split(",")]
        break
    if header_index is None:
        raise ParseError("missing 'alphabet: ...' header line")
    alphabet = []
    for name in names:
        if not _IDENT_RE.match(name):
            raise ParseError(f"bad action name {name!r} in alphabet header",
                             header_index + 1, 1)
        alphabet.append(name)
    body_lines = ["" if i <= header_index else line
                  for i, line in enumerate(lines)]
    contract = parse_contract("\n".join(body_lines), frozenset(alphabet))
    return frozenset(alphabet), contract
