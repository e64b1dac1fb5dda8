"""Renders the in-repo reference docs (grammar, error codes) from code data."""

from __future__ import annotations

from pathlib import Path

from .catalog import render_catalog
from .lexer import default_rules
from .parser import CANONICAL_ORDER, OPTIONAL


def productions():
    """Clause sequences of the eight statement forms, in reference order.

    Form ``i`` includes the optional clause ``j`` iff bit ``j`` of ``i`` is
    set, with TABEL2, TGL_AKHIR, IGNORE as bits 0, 1, 2.
    """
    optional = [k for k in CANONICAL_ORDER if k in OPTIONAL]
    for i in range(2 ** len(optional)):
        chosen = {k for j, k in enumerate(optional) if i >> j & 1}
        yield [k for k in CANONICAL_ORDER if k not in OPTIONAL or k in chosen]


def render_grammar() -> str:
    forms = list(productions())
    out = ["# Grammar", "", "## Statement", "", "```"]
    for i, seq in enumerate(forms):
        body = " ".join(f"<{k.value}>" for k in seq)
        lead = "<STATEMENT> ::= " if i == 0 else " " * 14 + "| "
        out.append(f"{lead}<PINDAH> {body} <EOL>")
    out += ["```", "", "A program is a sequence of statements, one per line. Blank lines are ignored.", "",
            "## Clause values", "",
            "| clause | value |",
            "|---|---|",
            "| SUMBER, TUJUAN | `user/password@alias` |",
            "| TABEL, TABEL2 | one name of letters, digits, `_`, `$`, `#` |",
            "| TGL_AWAL, TGL_AKHIR | `dd/mm/yyyy`, `mm/yyyy` or `yyyy` |",
            "| METODE | `QUERY`, `LOADER` or `TRANSPORTTABLESPACE` |",
            "| IGNORE | `Y` or `T` |",
            "",
            "## Token rules", "",
            "Tried in this order; the first rule matching at the current position wins.", "",
            "| rank | group | pattern |",
            "|---|---|---|"]
    for rule in default_rules():
        pattern = rule.pattern.replace("|", "\\|")
        out.append(f"| {rule.rank} | {rule.group.value} | `{pattern}` |")
    out.append("")
    return "\n".join(out)


def write_docs(directory) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "grammar.md").write_text(render_grammar(), encoding="utf-8")
    (d / "errors.md").write_text(render_catalog(), encoding="utf-8")


if __name__ == "__main__":
    import sys

    write_docs(sys.argv[1] if len(sys.argv) > 1 else "docs")
