"""Seeded generator of valid synthetic programs, used by the bench command."""

from __future__ import annotations

import datetime as dt
import random
from typing import List

from .semantics import ConnSpec, Method, TransferSpec, format_date

_TABLES = ("TRX", "GL", "REKENING_KORAN", "BUKU_BESAR", "MUTASI", "SALDO")
_USERS = ("dwh", "prod", "scott", "retensi")
_ALIASES = ("prod", "dwh", "arsip", "dr")


def random_spec(rng: random.Random, line: int = 1) -> TransferSpec:
    user = rng.choice(_USERS)
    source = ConnSpec(user, f"pw{rng.randrange(100)}", rng.choice(_ALIASES))
    destination = ConnSpec(rng.choice(_USERS), f"pw{rng.randrange(100)}", rng.choice(_ALIASES))
    table = f"{rng.choice(_TABLES)}_{rng.randrange(100)}"
    table2 = table + "_H" if rng.random() < 0.5 else table
    if source == destination and table2 == table:
        table2 = table + "_H"
    begin = dt.date(2006, 1, 1) + dt.timedelta(days=rng.randrange(6 * 365))
    end = begin + dt.timedelta(days=rng.randrange(400))
    return TransferSpec(
        line=line,
        source=source,
        destination=destination,
        table=table,
        table2=table2,
        begin_date=begin,
        end_date=end,
        method=rng.choice(list(Method)),
        ignore_errors=rng.random() < 0.3,
    )


def _statement(rng: random.Random, line: int) -> str:
    """A source line in one of the eight clause layouts, values randomized."""
    spec = random_spec(rng, line)
    words = ["PINDAH", f"SUMBER[{spec.source}]", f"TUJUAN[{spec.destination}]", f"TABEL[{spec.table}]"]
    if spec.table2 != spec.table or rng.random() < 0.5:
        words.append(f"TABEL2[{spec.table2}]")
    words.append(f"TGL_AWAL[{format_date(spec.begin_date)}]")
    if rng.random() < 0.7:
        words.append(f"TGL_AKHIR[{format_date(spec.end_date)}]")
    words.append(f"METODE[{spec.method.value}]")
    if spec.ignore_errors:
        words.append("IGNORE[Y]")
    elif rng.random() < 0.3:
        words.append("IGNORE[T]")
    return " ".join(words)


def random_program(statements: int, seed: int = 0) -> str:
    rng = random.Random(seed)
    lines: List[str] = [_statement(rng, n) for n in range(1, statements + 1)]
    return "".join(line + "\n" for line in lines)

