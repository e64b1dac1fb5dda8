"""Error-code catalog: the single source for diagnostic templates.

Both the compiler (when rendering messages) and the docs read from
``CATALOG``. ``verify_catalog`` compiles every entry's example and checks
that it produces the entry's code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List


@dataclass(frozen=True)
class ErrorCatalogEntry:
    code: str
    template: str
    rule: str
    example: str


CATALOG: Dict[str, ErrorCatalogEntry] = {
    e.code: e
    for e in (
        ErrorCatalogEntry(
            "LEX001",
            "unrecognized character {char!r} at column {column}",
            "no lexical rule matches at this position",
            "PINDAH SUMBER[u/p@a]; TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[2006] METODE[QUERY]",
        ),
        ErrorCatalogEntry(
            "SYN001",
            "KEYWORD value must be declared, found {group} {lexeme!r}",
            "a statement must start with the keyword PINDAH",
            "SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[2006] METODE[QUERY]",
        ),
        ErrorCatalogEntry(
            "SYN002",
            "{after}: next value {found!r}, syntax error, expected {expected}",
            "token group or clause order not allowed by the follow table",
            "PINDAH TUJUAN[u/p@b] SUMBER[u/p@a] TABEL[TRX] TGL_AWAL[2006] METODE[QUERY]",
        ),
        ErrorCatalogEntry(
            "SYN003",
            "separator '[' after {clause} is never closed",
            "every clause value must be closed with ']' on the same line",
            "PINDAH SUMBER[u/p@a TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[2006] METODE[QUERY]",
        ),
        ErrorCatalogEntry(
            "SYN004",
            "malformed value {value!r} for {clause}, expected {shape}",
            "clause value does not have the shape required for its kind",
            "PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[] TGL_AWAL[2006] METODE[QUERY]",
        ),
        ErrorCatalogEntry(
            "SEM001",
            "IDENTIFIER {clause} must not be defined more than once",
            "each clause may appear at most once per statement",
            "PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[2006] METODE[QUERY] METODE[LOADER]",
        ),
        ErrorCatalogEntry(
            "SEM002",
            "IDENTIFIER {clause} is not defined",
            "SUMBER, TUJUAN, TABEL, TGL_AWAL and METODE are mandatory",
            "PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[2006]",
        ),
        ErrorCatalogEntry(
            "SEM003",
            "TGL_AWAL={begin} cannot greater than TGL_AKHIR={end}",
            "the end date must not precede the begin date",
            "PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[01/01/2011] "
            "TGL_AKHIR[01/01/2010] METODE[QUERY]",
        ),
        ErrorCatalogEntry(
            "SEM004",
            "TABEL={table} and TABEL2={table2} cannot be same if SUMBER=TUJUAN",
            "a transfer may not copy a table onto itself",
            "PINDAH SUMBER[u/p@a] TUJUAN[u/p@a] TABEL[TRX] TABEL2[TRX] TGL_AWAL[2006] METODE[QUERY]",
        ),
        ErrorCatalogEntry(
            "SEM005",
            "invalid calendar date {value!r} in {clause}",
            "dates must exist in the Gregorian calendar",
            "PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[31/02/2010] METODE[QUERY]",
        ),
    )
}


def implemented_codes() -> frozenset:
    from . import parser, semantics, compiler

    return frozenset(compiler.CODES) | frozenset(parser.CODES) | frozenset(semantics.CODES)


def verify_catalog(
    catalog: Dict[str, ErrorCatalogEntry] | None = None,
    codes: Iterable[str] | None = None,
) -> List[str]:
    """Return a list of mismatches between ``catalog`` and the compiler."""
    from .compiler import compile_source

    if catalog is None:
        catalog = CATALOG
    expected = frozenset(implemented_codes() if codes is None else codes)
    problems = []
    for code in sorted(expected - catalog.keys()):
        problems.append(f"{code}: emitted but missing from catalog")
    for code in sorted(catalog.keys() - expected):
        problems.append(f"{code}: in catalog but never emitted")
    for code, entry in sorted(catalog.items()):
        if entry.code != code:
            problems.append(f"{code}: entry is keyed under the wrong code {entry.code}")
        got = {d.code for d in compile_source(entry.example).diagnostics}
        if code not in got:
            problems.append(f"{code}: example yields {sorted(got)}")
    return problems


def render_catalog(catalog: Dict[str, ErrorCatalogEntry] | None = None) -> str:
    if catalog is None:
        catalog = CATALOG
    out = ["# Error codes", ""]
    for code, entry in sorted(catalog.items()):
        out += [
            f"## {code}",
            "",
            f"Rule: {entry.rule}.",
            "",
            f"Message: `{entry.template}`",
            "",
            "Example:",
            "",
            "```",
            entry.example,
            "```",
            "",
        ]
    return "\n".join(out)
