"""File-backed mock databases and a dry-run executor for transfer specs.

A store is a directory with one ``<table>.tbl`` file per table::

    COLS=ACCT,TXDATE,AMOUNT;DATE=TXDATE
    A001|2010-03-05|1500
    A002|2010-03-06|20|!INVALID

Rows carrying the trailing ``!INVALID`` marker fail to load, which lets
tests inject errors.
"""

from __future__ import annotations

import datetime as dt
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Tuple

from .semantics import Method, TransferSpec

INVALID_MARK = "!INVALID"
SUFFIX = ".tbl"


class StoreError(ValueError):
    pass


class UnknownTable(LookupError):
    pass


class SchemaMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SimRow:
    values: Tuple[str, ...]
    valid: bool = True


@dataclass
class SimTable:
    name: str
    columns: Tuple[str, ...]
    date_column: str
    rows: List[SimRow] = field(default_factory=list)

    def __post_init__(self):
        self.columns = tuple(self.columns)
        if self.date_column not in self.columns:
            raise StoreError(f"{self.name}: date column {self.date_column} not in columns")

    @property
    def date_index(self) -> int:
        return self.columns.index(self.date_column)

    def row_date(self, row: SimRow) -> dt.date:
        return dt.date.fromisoformat(row.values[self.date_index])


@dataclass
class SimDatabase:
    tables: Dict[str, SimTable] = field(default_factory=dict)

    def table(self, name: str) -> SimTable:
        try:
            return self.tables[name]
        except KeyError:
            raise UnknownTable(name) from None


def _parse_table(name: str, text: str, filename: str) -> SimTable:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise StoreError(f"{filename}:1: missing header")
    header = dict(part.partition("=")[::2] for part in lines[0].split(";"))
    if "COLS" not in header or "DATE" not in header:
        raise StoreError(f"{filename}:1: header must be COLS=...;DATE=...")
    columns = tuple(header["COLS"].split(","))
    try:
        table = SimTable(name, columns, header["DATE"])
    except StoreError as exc:
        raise StoreError(f"{filename}:1: {exc}") from None
    for n, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        values = line.split("|")
        valid = True
        if len(values) == len(columns) + 1 and values[-1] == INVALID_MARK:
            values.pop()
            valid = False
        if len(values) != len(columns):
            raise StoreError(f"{filename}:{n}: expected {len(columns)} values, got {len(values)}")
        row = SimRow(tuple(values), valid)
        try:
            table.row_date(row)
        except ValueError:
            raise StoreError(f"{filename}:{n}: bad date {values[table.date_index]!r}") from None
        table.rows.append(row)
    return table


def _render_table(table: SimTable) -> str:
    out = [f"COLS={','.join(table.columns)};DATE={table.date_column}"]
    for row in table.rows:
        if any("|" in v or "\n" in v for v in row.values):
            raise StoreError(f"{table.name}: value contains a separator: {row.values!r}")
        line = "|".join(row.values)
        out.append(line if row.valid else f"{line}|{INVALID_MARK}")
    return "\n".join(out) + "\n"


def load_store(path) -> SimDatabase:
    path = Path(path)
    db = SimDatabase()
    if not path.is_dir():
        raise StoreError(f"{path}: not a directory")
    for f in sorted(path.glob("*" + SUFFIX)):
        db.tables[f.stem] = _parse_table(f.stem, f.read_text(encoding="utf-8"), str(f))
    return db


def save_store(db: SimDatabase, path) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    for name, table in sorted(db.tables.items()):
        (path / (name + SUFFIX)).write_text(_render_table(table), encoding="utf-8")


@dataclass(frozen=True)
class CostModel:
    """Simulated seconds per method: a fixed setup cost plus a per-row cost."""

    setup: Mapping[Method, float] = field(default_factory=lambda: {
        Method.QUERY: 1130.0,
        Method.TRANSPORTTABLESPACE: 1440.0,
        Method.LOADER: 1800.0,
    })
    per_row: Mapping[Method, float] = field(default_factory=lambda: {
        Method.QUERY: 0.004,
        Method.LOADER: 0.0011,
        Method.TRANSPORTTABLESPACE: 0.001,
    })

    def cost(self, method: Method, rows: int) -> float:
        return self.setup[method] + self.per_row[method] * rows


@dataclass(frozen=True)
class ExecReport:
    line: int
    method: Method
    rows_examined: int
    rows_selected: int
    rows_moved: int
    rows_failed: int
    rows_pruned: int
    aborted: bool
    duration: float
    simulated_cost: float

    def to_dict(self) -> dict:
        return {
            "line": self.line,
            "method": self.method.value,
            "rows_examined": self.rows_examined,
            "rows_selected": self.rows_selected,
            "rows_moved": self.rows_moved,
            "rows_failed": self.rows_failed,
            "rows_pruned": self.rows_pruned,
            "aborted": self.aborted,
            "duration": self.duration,
            "simulated_cost": self.simulated_cost,
        }


def execute(
    spec: TransferSpec,
    source_store: SimDatabase,
    dest_store: SimDatabase,
    cost_model: CostModel = CostModel(),
) -> ExecReport:
    """Move the rows of ``spec``'s date range from source to destination.

    Without ``ignore_errors`` one invalid row in range aborts the statement
    and leaves both stores untouched. With it, invalid rows stay in the
    source and are counted as failed.
    """
    started = time.perf_counter()
    src = source_store.table(spec.table)
    dst = dest_store.table(spec.table2)
    if src.columns != dst.columns:
        raise SchemaMismatch(f"{spec.table}{list(src.columns)} vs {spec.table2}{list(dst.columns)}")

    examined = len(src.rows)
    keep: List[SimRow] = []
    moved: List[SimRow] = []
    failed = 0
    for row in src.rows:
        if spec.begin_date <= src.row_date(row) <= spec.end_date:
            if row.valid:
                moved.append(row)
            else:
                failed += 1
                keep.append(row)
        else:
            keep.append(row)
    selected = len(moved) + failed

    aborted = failed > 0 and not spec.ignore_errors
    if not aborted:
        dst.rows.extend(moved)
        src.rows[:] = keep
    n_moved = 0 if aborted else len(moved)
    return ExecReport(
        line=spec.line,
        method=spec.method,
        rows_examined=examined,
        rows_selected=selected,
        rows_moved=n_moved,
        rows_failed=failed,
        rows_pruned=n_moved,
        aborted=aborted,
        duration=time.perf_counter() - started,
        simulated_cost=cost_model.cost(spec.method, selected),
    )
