"""Rendering of validated specs as NEW_STATEMENT text and back as source."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .semantics import TransferSpec, format_date

KEYWORD_MAP: Tuple[Tuple[str, str], ...] = (
    ("PINDAH", "TRANSFER"),
    ("SUMBER", "SOURCE"),
    ("TUJUAN", "DESTINATION"),
    ("TABEL", "TABLE"),
    ("TABEL2", "TABLE2"),
    ("TGL_AWAL", "BEGIN_DATE"),
    ("TGL_AKHIR", "LAST_DATE"),
    ("METODE", "METHOD"),
    # unmapped words pass through unchanged
    ("IGNORE", "IGNORE"),
)

TARGET: Dict[str, str] = dict(KEYWORD_MAP)
INVERSE: Dict[str, str] = {target: source for source, target in KEYWORD_MAP}


@dataclass(frozen=True)
class NewStatement:
    line: int
    text: str
    spec: TransferSpec

    def redacted(self) -> str:
        """The statement text with both connection passwords masked."""
        return _render(self.spec, TARGET, redact=True)


def _clauses(spec: TransferSpec, redact: bool):
    conn = (lambda c: c.redacted()) if redact else str
    return (
        ("SUMBER", conn(spec.source)),
        ("TUJUAN", conn(spec.destination)),
        ("TABEL", spec.table),
        ("TABEL2", spec.table2),
        ("TGL_AWAL", format_date(spec.begin_date)),
        ("TGL_AKHIR", format_date(spec.end_date)),
        ("METODE", spec.method.value),
        ("IGNORE", "Y" if spec.ignore_errors else "T"),
    )


def _render(spec: TransferSpec, names: Dict[str, str], redact: bool = False) -> str:
    words = [names["PINDAH"]]
    words += [f"{names[kw]}[{value}]" for kw, value in _clauses(spec, redact)]
    return " ".join(words)


def generate(spec: TransferSpec) -> NewStatement:
    return NewStatement(spec.line, _render(spec, TARGET), spec)


def render_source(spec: TransferSpec) -> str:
    """Source-language statement with every clause explicit."""
    return _render(spec, {kw: kw for kw, _ in KEYWORD_MAP})

