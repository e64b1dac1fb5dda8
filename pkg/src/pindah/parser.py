"""Statement grouping and clause-grammar checking.

The parser enforces local shape (separators, whitespace, clause value
forms) and clause order. Clause cardinality (duplicates, missing mandatory
clauses) is left to :mod:`pindah.semantics`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import diagnostics
from .diagnostics import DiagnosticError
from .lexer import Token, TokenGroup

CODES = ("SYN001", "SYN002", "SYN003", "SYN004")

KEYWORD = "PINDAH"


class ClauseKind(str, enum.Enum):
    SUMBER = "SUMBER"
    TUJUAN = "TUJUAN"
    TABEL = "TABEL"
    TABEL2 = "TABEL2"
    TGL_AWAL = "TGL_AWAL"
    TGL_AKHIR = "TGL_AKHIR"
    METODE = "METODE"
    IGNORE = "IGNORE"

    def __str__(self) -> str:
        return self.value

    @property
    def rank(self) -> int:
        return CANONICAL_ORDER.index(self)


CANONICAL_ORDER: Tuple[ClauseKind, ...] = tuple(ClauseKind)
OPTIONAL: FrozenSet[ClauseKind] = frozenset({ClauseKind.TABEL2, ClauseKind.TGL_AKHIR, ClauseKind.IGNORE})
MANDATORY: Tuple[ClauseKind, ...] = tuple(k for k in CANONICAL_ORDER if k not in OPTIONAL)


@dataclass(frozen=True)
class RawClause:
    kind: ClauseKind
    value_tokens: Tuple[Token, ...]
    line: int

    @property
    def value(self) -> str:
        return "".join(t.lexeme for t in self.value_tokens)


@dataclass(frozen=True)
class TransferStatement:
    line: int
    clauses: Tuple[RawClause, ...]

    def kinds(self) -> List[ClauseKind]:
        return [c.kind for c in self.clauses]

    def shape(self) -> List[Tuple[ClauseKind, Tuple[Tuple[TokenGroup, str], ...]]]:
        """Structure without positions, for comparing re-parsed statements."""
        return [(c.kind, tuple((t.group, t.lexeme) for t in c.value_tokens)) for c in self.clauses]


@dataclass(frozen=True)
class Expect:
    groups: FrozenSet[TokenGroup]
    label: str
    lexemes: Optional[FrozenSet[str]] = None

    def admits(self, token: Token) -> bool:
        if token.group not in self.groups:
            return False
        return self.lexemes is None or token.lexeme in self.lexemes


def _expect(*groups: TokenGroup, label: str | None = None, lexemes=None) -> Expect:
    if label is None:
        label = "|".join(g.value for g in groups)
    return Expect(frozenset(groups), label, frozenset(lexemes) if lexemes else None)


_CONN = (
    _expect(TokenGroup.ALFANUMERIKSPESIAL, label="user"),
    _expect(TokenGroup.SLASH, label="'/'"),
    _expect(TokenGroup.ALFANUMERIKSPESIAL, label="password"),
    _expect(TokenGroup.OPERATOR, label="'@'"),
    _expect(TokenGroup.ALFANUMERIKSPESIAL, label="alias"),
)
_TABLE = (_expect(TokenGroup.ALFANUMERIKSPESIAL, label="table name"),)
_DATE = (_expect(TokenGroup.TGLBLNTHN, TokenGroup.BLNTHN, TokenGroup.TAHUN,
                 label="dd/mm/yyyy, mm/yyyy or yyyy"),)


@dataclass(frozen=True)
class SyntaxRuleTable:
    """Follow sequences keyed by keyword/identifier lexeme, plus value shapes per clause."""

    follow: Dict[str, Tuple[Expect, ...]]
    values: Dict[ClauseKind, Tuple[Expect, ...]]
    # what must come between a closing ']' and the next clause
    between: Tuple[Expect, ...] = field(default=())


def default_table() -> SyntaxRuleTable:
    follow = {
        KEYWORD: (
            _expect(TokenGroup.WHITESPACE, label="WHITESPACE must be declared"),
            _expect(TokenGroup.IDENTIFIER, label="IDENTIFIER must be declared"),
        )
    }
    for kind in ClauseKind:
        follow[kind.value] = (_expect(TokenGroup.OPEN_SEPARATOR, label=f"'[' after {kind}"),)
    values = {
        ClauseKind.SUMBER: _CONN,
        ClauseKind.TUJUAN: _CONN,
        ClauseKind.TABEL: _TABLE,
        ClauseKind.TABEL2: _TABLE,
        ClauseKind.TGL_AWAL: _DATE,
        ClauseKind.TGL_AKHIR: _DATE,
        ClauseKind.METODE: (_expect(TokenGroup.LITERAL, label="LOADER|QUERY|TRANSPORTTABLESPACE"),),
        ClauseKind.IGNORE: (_expect(TokenGroup.ALFANUMERIKSPESIAL, label="Y|T", lexemes={"Y", "T"}),),
    }
    between = (
        _expect(TokenGroup.WHITESPACE, label="WHITESPACE must be declared"),
        _expect(TokenGroup.IDENTIFIER, label="IDENTIFIER must be declared"),
    )
    return SyntaxRuleTable(follow=follow, values=values, between=between)


DEFAULT_TABLE = default_table()

_DELIMITERS = (TokenGroup.LINEBREAK, TokenGroup.END_STMNT)


def split_statements(tokens: Sequence[Token]) -> List[List[Token]]:
    slices: List[List[Token]] = []
    current: List[Token] = []
    for tok in list(tokens) + [None]:
        if tok is None or tok.group in _DELIMITERS:
            if any(t.group is not TokenGroup.WHITESPACE for t in current):
                slices.append(current)
            current = []
        else:
            current.append(tok)
    return slices


def slice_line(tokens: Sequence[Token]) -> int:
    for t in tokens:
        if t.group is not TokenGroup.WHITESPACE:
            return t.line
    raise ValueError("slice has no significant tokens")


def _describe(tok: Optional[Token]) -> str:
    return "end of line" if tok is None else tok.lexeme


def parse_statement(tokens: Sequence[Token], table: SyntaxRuleTable = DEFAULT_TABLE) -> TransferStatement:
    """Parse one statement's tokens. Raises ``DiagnosticError`` on the first syntax error."""
    toks = [t for t in tokens if t.group not in _DELIMITERS]
    while toks and toks[0].group is TokenGroup.WHITESPACE:
        toks.pop(0)
    while toks and toks[-1].group is TokenGroup.WHITESPACE:
        toks.pop()
    if not toks:
        raise ValueError("empty statement")
    line = toks[0].line

    def fail(code: str, **kw):
        raise DiagnosticError([diagnostics.make(code, line, **kw)])

    def at(i: int) -> Optional[Token]:
        return toks[i] if i < len(toks) else None

    def follow(i: int, expects: Tuple[Expect, ...], after: str) -> int:
        for exp in expects:
            tok = at(i)
            if tok is None or not exp.admits(tok):
                fail("SYN002", after=after, found=_describe(tok), expected=exp.label)
            i += 1
        return i

    first = toks[0]
    if first.group is not TokenGroup.KEYWORD:
        fail("SYN001", group=first.group.value, lexeme=first.lexeme)

    i = follow(1, table.follow[first.lexeme], f"KEYWORD {first.lexeme}") - 1
    clauses: List[RawClause] = []
    prev: Optional[ClauseKind] = None
    while True:
        head = toks[i]
        kind = ClauseKind(head.lexeme)
        if prev is not None and kind.rank < prev.rank:
            allowed = "|".join(k.value for k in CANONICAL_ORDER[prev.rank:])
            fail("SYN002", after=f"IDENTIFIER {prev}", found=head.lexeme, expected=f"IDENTIFIER {allowed}")
        i = follow(i + 1, table.follow[kind.value], f"IDENTIFIER {kind}")
        start = i
        while True:
            tok = at(i)
            if tok is None or tok.group is TokenGroup.OPEN_SEPARATOR:
                fail("SYN003", clause=kind.value)
            if tok.group is TokenGroup.CLOSE_SEPARATOR:
                break
            i += 1
        value = tuple(toks[start:i])
        shape = table.values[kind]
        if len(value) != len(shape) or not all(e.admits(t) for e, t in zip(shape, value)):
            fail("SYN004", clause=kind.value, value="".join(t.lexeme for t in value),
                 shape="".join(e.label if len(shape) == 1 else _short(e) for e in shape))
        clauses.append(RawClause(kind, value, head.line))
        prev = kind
        i += 1
        if at(i) is None:
            break
        i = follow(i, table.between, f"IDENTIFIER {kind} {clauses[-1].value}") - 1
    return TransferStatement(line, tuple(clauses))


def _short(e: Expect) -> str:
    return e.label.strip("'")


def serialize(stmt: TransferStatement) -> str:
    parts = [KEYWORD] + [f"{c.kind}[{c.value}]" for c in stmt.clauses]
    return " ".join(parts)


def accepts(kinds: Sequence[ClauseKind]) -> bool:
    """True iff ``kinds`` is one of the eight transfer-statement productions."""
    i = 0
    for kind in CANONICAL_ORDER:
        if i < len(kinds) and kinds[i] is kind:
            i += 1
        elif kind not in OPTIONAL:
            return False
    return i == len(kinds)
