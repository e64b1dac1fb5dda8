import os
from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "golden"
UPDATE = os.environ.get("PINDAH_UPDATE_GOLDEN") == "1"

# One concrete instance of each of the four example statement shapes.
CONTOH = [
    "PINDAH SUMBER[prod/rahasia@bankdb] TUJUAN[dwh/arsip@dwhdb] TABEL[REKENING_KORAN] "
    "TGL_AWAL[01/01/2006] TGL_AKHIR[31/12/2011] METODE[QUERY]",
    "PINDAH SUMBER[prod/rahasia@bankdb] TUJUAN[dwh/arsip@dwhdb] TABEL[BUKU_BESAR] "
    "TGL_AWAL[03/2008] METODE[LOADER]",
    "PINDAH SUMBER[prod/rahasia@bankdb] TUJUAN[dwh/arsip@dwhdb] TABEL[MUTASI] "
    "TGL_AWAL[2007] METODE[TRANSPORTTABLESPACE] IGNORE[Y]",
    "PINDAH SUMBER[prod/rahasia@bankdb] TUJUAN[prod/rahasia@bankdb] TABEL[TRX] TABEL2[TRX_H] "
    "TGL_AWAL[15/06/2009] METODE[QUERY]",
]


def check_golden(name: str, actual: str) -> None:
    path = GOLDEN_DIR / name
    if UPDATE or not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(actual, encoding="utf-8")
        if not UPDATE:
            pytest.fail(f"golden file {name} was missing and has been written; review and rerun")
    assert actual == path.read_text(encoding="utf-8"), f"golden mismatch: {name}"


@pytest.fixture
def golden():
    return check_golden


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    # keeps the call-phase report on the item so fixtures can see the outcome
    outcome = yield
    if call.when == "call":
        item.rep_call = outcome.get_result()
