"""Table-driven scanner for PINDAH transfer programs.

The rule table is plain data: an ordered list of ``LexRule``. At every
position the first rule (lowest rank) matching a non-empty prefix wins.
Scanning is lossless, so whitespace and line breaks are kept as tokens.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple


class TokenGroup(str, enum.Enum):
    KEYWORD = "KEYWORD"
    IDENTIFIER = "IDENTIFIER"
    LITERAL = "LITERAL"
    OPEN_SEPARATOR = "OPEN_SEPARATOR"
    CLOSE_SEPARATOR = "CLOSE_SEPARATOR"
    OPERATOR = "OPERATOR"
    TGLBLNTHN = "TGLBLNTHN"
    BLNTHN = "BLNTHN"
    TAHUN = "TAHUN"
    ALFANUMERIKSPESIAL = "ALFANUMERIKSPESIAL"
    STRING = "STRING"
    SLASH = "SLASH"
    LINEBREAK = "LINEBREAK"
    WHITESPACE = "WHITESPACE"
    END_STMNT = "END_STMNT"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Token:
    group: TokenGroup
    lexeme: str
    line: int
    column: int


@dataclass(frozen=True)
class LexRule:
    group: TokenGroup
    pattern: str
    rank: int


class LexError(Exception):
    """No rule matches at ``line``/``column``."""

    def __init__(self, line: int, column: int, char: str) -> None:
        super().__init__(f"line {line}, column {column}: unrecognized character {char!r}")
        self.line = line
        self.column = column
        self.char = char


# A reserved word or date must not run on into a longer word / date.
_WORD_END = r"(?![\w$#])"
_DATE_END = r"(?![\d/])"

_RULE_TABLE: Tuple[Tuple[TokenGroup, str], ...] = (
    (TokenGroup.KEYWORD, r"(PINDAH)" + _WORD_END),
    (TokenGroup.IDENTIFIER,
     r"(SUMBER|TUJUAN|TABEL2|TABEL|TGL_AWAL|TGL_AKHIR|METODE|IGNORE)" + _WORD_END),
    (TokenGroup.LITERAL, r"(LOADER|QUERY|TRANSPORTTABLESPACE)" + _WORD_END),
    (TokenGroup.OPEN_SEPARATOR, r"[\[]"),
    (TokenGroup.CLOSE_SEPARATOR, r"[\]]"),
    (TokenGroup.OPERATOR, r"[@]"),
    (TokenGroup.TGLBLNTHN, r"\d\d/\d\d/\d\d\d\d" + _DATE_END),
    (TokenGroup.BLNTHN, r"\d\d/\d\d\d\d" + _DATE_END),
    (TokenGroup.TAHUN, r"\d\d\d\d" + _DATE_END),
    (TokenGroup.ALFANUMERIKSPESIAL, r"[\w$#]+"),
    (TokenGroup.STRING, r"('[^'\n]*')"),
    (TokenGroup.SLASH, r"[/]"),
    (TokenGroup.LINEBREAK, r"\n"),
    (TokenGroup.WHITESPACE, r"[^\S\n]+"),
    # never matches a non-empty prefix: end of input closes a statement
    (TokenGroup.END_STMNT, r"\Z"),
)

FLAGS = re.ASCII


def default_rules() -> List[LexRule]:
    return [LexRule(group, pattern, rank) for rank, (group, pattern) in enumerate(_RULE_TABLE)]


@lru_cache(maxsize=16)
def _master(rules: Tuple[LexRule, ...]) -> Tuple["re.Pattern[str]", Dict[str, TokenGroup]]:
    # Python alternation is ordered, so the first named group to match is
    # the lowest-ranked rule. Zero-width matches are rejected by the caller.
    parts = [f"(?P<r{rule.rank}>{rule.pattern})" for rule in sorted(rules, key=lambda r: r.rank)]
    return re.compile("|".join(parts), FLAGS), {f"r{rule.rank}": rule.group for rule in rules}


def scan(source: str, rules: Sequence[LexRule] | None = None, first_line: int = 1) -> List[Token]:
    """Split ``source`` into tokens; raises ``LexError`` on the first unmatched character."""
    if rules is None:
        rules = default_rules()
    if not rules:
        raise ValueError("rule table is empty")
    key = tuple(rules)
    master, groups = _master(key)
    linebreak = TokenGroup.LINEBREAK

    tokens: List[Token] = []
    emit = tokens.append
    pos = 0
    line = first_line
    line_start = 0
    end = len(source)
    match = master.match
    while pos < end:
        m = match(source, pos)
        if m is None or m.end() == pos:
            if m is not None:
                m = _first_nonempty(source, pos, key)
            if m is None:
                raise LexError(line, pos - line_start + 1, source[pos])
            group = m[0]
            lexeme = m[1]
        else:
            group = groups[m.lastgroup]
            lexeme = m.group()
        emit(Token(group, lexeme, line, pos - line_start + 1))
        pos += len(lexeme)
        if group is linebreak:
            line += 1
            line_start = pos
    return tokens


def _first_nonempty(source: str, pos: int, rules: Iterable[LexRule]):
    # slow path: a zero-width alternative shadowed a real match
    for rule in sorted(rules, key=lambda r: r.rank):
        m = re.compile(rule.pattern, FLAGS).match(source, pos)
        if m is not None and m.end() > pos:
            return rule.group, m.group()
    return None
