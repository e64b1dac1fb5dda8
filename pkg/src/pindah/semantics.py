"""Semantic checks and normalization of parsed statements into ``TransferSpec``."""

from __future__ import annotations

import calendar
import datetime as dt
import enum
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional

from . import diagnostics
from .diagnostics import Diagnostic, DiagnosticError
from .lexer import TokenGroup
from .parser import CANONICAL_ORDER, MANDATORY, ClauseKind, RawClause, TransferStatement

CODES = ("SEM001", "SEM002", "SEM003", "SEM004", "SEM005")



def format_date(d: dt.date) -> str:
    """dd/mm/yyyy with a zero-padded four-digit year (strftime does not pad years < 1000)."""
    return f"{d.day:02d}/{d.month:02d}/{d.year:04d}"


class Method(str, enum.Enum):
    QUERY = "QUERY"
    LOADER = "LOADER"
    TRANSPORTTABLESPACE = "TRANSPORTTABLESPACE"

    def __str__(self) -> str:
        return self.value


class Precision(str, enum.Enum):
    DAY = "DAY"
    MONTH = "MONTH"
    YEAR = "YEAR"


class Role(str, enum.Enum):
    BEGIN = "BEGIN"
    END = "END"


@dataclass(frozen=True)
class ConnSpec:
    user: str
    password: str
    alias: str

    def __post_init__(self):
        if not (self.user and self.password and self.alias):
            raise ValueError("connection needs user, password and alias")

    def __str__(self) -> str:
        return f"{self.user}/{self.password}@{self.alias}"

    def redacted(self) -> str:
        return f"{self.user}/***@{self.alias}"


@dataclass(frozen=True)
class DateSpec:
    precision: Precision
    year: int
    month: Optional[int] = None
    day: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "DateSpec":
        parts = [int(p) for p in text.split("/")]
        if len(parts) == 3:
            return cls(Precision.DAY, parts[2], parts[1], parts[0])
        if len(parts) == 2:
            return cls(Precision.MONTH, parts[1], parts[0])
        return cls(Precision.YEAR, parts[0])


class InvalidDate(ValueError):
    pass


def resolve_date(d: DateSpec, role: Role) -> dt.date:
    """Expand a day/month/year spec to a concrete date.

    Month and year precision expand to the first day of the period for
    ``BEGIN`` and the last day for ``END``.
    """
    try:
        if d.precision is Precision.DAY:
            return dt.date(d.year, d.month, d.day)
        if d.precision is Precision.MONTH:
            if role is Role.BEGIN:
                return dt.date(d.year, d.month, 1)
            # validates month before monthrange
            dt.date(d.year, d.month, 1)
            return dt.date(d.year, d.month, calendar.monthrange(d.year, d.month)[1])
        return dt.date(d.year, 1, 1) if role is Role.BEGIN else dt.date(d.year, 12, 31)
    except ValueError as exc:
        raise InvalidDate(str(exc)) from None


@dataclass(frozen=True)
class TransferSpec:
    line: int
    source: ConnSpec
    destination: ConnSpec
    table: str
    table2: str
    begin_date: dt.date
    end_date: dt.date
    method: Method
    ignore_errors: bool = False


def connspec_of(clause: RawClause) -> ConnSpec:
    values = [t.lexeme for t in clause.value_tokens if t.group is TokenGroup.ALFANUMERIKSPESIAL]
    user, password, alias = values
    return ConnSpec(user, password, alias)


def analyze(stmt: TransferStatement) -> TransferSpec:
    """Validate and default-fill one statement. Raises ``DiagnosticError`` with every violation."""
    line = stmt.line
    found: List[Diagnostic] = []
    counts = Counter(stmt.kinds())
    first: Dict[ClauseKind, RawClause] = {}
    for clause in stmt.clauses:
        first.setdefault(clause.kind, clause)

    for kind in CANONICAL_ORDER:
        if counts[kind] > 1:
            found.append(diagnostics.make("SEM001", line, clause=kind.value))
    for kind in MANDATORY:
        if counts[kind] == 0:
            found.append(diagnostics.make("SEM002", line, clause=kind.value))

    def value(kind: ClauseKind, default: Optional[ClauseKind] = None) -> Optional[RawClause]:
        if kind in first:
            return first[kind]
        return first.get(default) if default is not None else None

    begin = end = None
    if ClauseKind.TGL_AWAL in first:
        begin = _date_or_diag(first[ClauseKind.TGL_AWAL], Role.BEGIN, line, found)
        # an omitted end date is the begin date itself, whatever its precision
        end = begin
        if ClauseKind.TGL_AKHIR in first:
            end = _date_or_diag(first[ClauseKind.TGL_AKHIR], Role.END, line, found)
    if begin is not None and end is not None and end < begin:
        found.append(diagnostics.make(
            "SEM003", line,
            begin=format_date(begin), end=format_date(end)))

    source = destination = None
    if ClauseKind.SUMBER in first and ClauseKind.TUJUAN in first:
        source = connspec_of(first[ClauseKind.SUMBER])
        destination = connspec_of(first[ClauseKind.TUJUAN])
    table_clause = value(ClauseKind.TABEL)
    table2_clause = value(ClauseKind.TABEL2, default=ClauseKind.TABEL)
    table = table_clause.value if table_clause else None
    table2 = table2_clause.value if table2_clause else None
    if source is not None and source == destination and table is not None and table == table2:
        found.append(diagnostics.make("SEM004", line, table=table, table2=table2))

    if found:
        found.sort(key=lambda d: d.code)
        raise DiagnosticError(found)

    ignore = first.get(ClauseKind.IGNORE)
    return TransferSpec(
        line=line,
        source=source,
        destination=destination,
        table=table,
        table2=table2,
        begin_date=begin,
        end_date=end,
        method=Method(first[ClauseKind.METODE].value),
        ignore_errors=ignore is not None and ignore.value == "Y",
    )


def _date_or_diag(clause: RawClause, role: Role, line: int, found: List[Diagnostic]) -> Optional[dt.date]:
    try:
        return resolve_date(DateSpec.parse(clause.value), role)
    except InvalidDate:
        found.append(diagnostics.make("SEM005", line, clause=clause.kind.value, value=clause.value))
        return None
