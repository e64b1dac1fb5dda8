import json

import pytest

from pindah.cli import bench, main
from pindah.diagnostics import Diagnostic

from conftest import CONTOH

MANIFEST = ("TABLE=REKENING_KORAN;DATE=TGL;COLS=NOREK,TGL,NOMINAL\n"
            "TABLE=BUKU_BESAR;DATE=TGL;COLS=AKUN,TGL,SALDO\n")


@pytest.fixture
def program(tmp_path):
    def write(*lines, name="prog.pdh"):
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n")
        return str(path)
    return write


def test_check_clean(program, capsys):
    assert main(["check", program(*CONTOH)]) == 0
    assert "4 statement(s), no errors" in capsys.readouterr().out


def test_check_reports_line(program, capsys):
    bad = ("PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[01/01/2011] "
           "TGL_AKHIR[01/01/2010] METODE[QUERY]")
    assert main(["check", program(CONTOH[0], "", bad)]) == 1
    out = capsys.readouterr().out
    assert out.strip() == "Error line 3 [SEM003] TGL_AWAL=01/01/2011 cannot greater than TGL_AKHIR=01/01/2010"


def test_check_json_round_trip(program, capsys):
    assert main(["check", "--format", "json", program(CONTOH[0], "PINDAH SUMBER[u/p@a]")]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["statements"] == 1
    diags = [Diagnostic.from_dict(d) for d in data["diagnostics"]]
    assert [d.line for d in diags] == [2, 2, 2, 2]
    assert {d.code for d in diags} == {"SEM002"}


def test_missing_file(tmp_path, capsys):
    assert main(["check", str(tmp_path / "nope.pdh")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_bad_usage():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_line_fidelity(program, capsys):
    lines = [CONTOH[i % 4] for i in range(1000)]
    lines[499] = "PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[31/02/2010] METODE[QUERY]"
    assert main(["check", program(*lines)]) == 1
    assert capsys.readouterr().out.startswith("Error line 500 [SEM005]")


def test_build(program, tmp_path, capsys):
    src = program(*CONTOH[:3])
    manifest = tmp_path / "tables.txt"
    manifest.write_text(MANIFEST)
    out = tmp_path / "plans"
    argv = ["build", src, "--out", str(out), "--manifest", str(manifest)]
    assert main(argv) == 0
    dirs = sorted(p.name for p in out.iterdir())
    assert dirs == ["1_QUERY", "2_LOADER", "3_TRANSPORTTABLESPACE"]
    for d in dirs:
        assert (out / d / "plan.txt").read_text().startswith("TRANSFER ")
    printed = capsys.readouterr().out
    assert "rahasia" not in printed and "SOURCE[prod/***@bankdb]" in printed
    assert not any("rahasia" in f.read_text() for f in out.rglob("*") if f.is_file())
    # rebuilding identical plans is a no-op
    assert main(argv) == 0


def test_build_refuses_to_overwrite(program, tmp_path):
    out = tmp_path / "plans"
    assert main(["build", program(CONTOH[0]), "--out", str(out)]) == 0
    (out / "1_QUERY" / "plan.txt").write_text("edited\n")
    assert main(["build", program(CONTOH[0]), "--out", str(out)]) == 2
    assert (out / "1_QUERY" / "plan.txt").read_text() == "edited\n"
    assert main(["build", program(CONTOH[0]), "--out", str(out), "--force"]) == 0
    assert (out / "1_QUERY" / "plan.txt").read_text().startswith("TRANSFER ")


def test_build_loader_needs_manifest(program, tmp_path, capsys):
    assert main(["build", program(CONTOH[1]), "--out", str(tmp_path / "o")]) == 1
    assert "line 1" in capsys.readouterr().err


def test_build_with_diagnostics(program, tmp_path):
    assert main(["build", program("PINDAH"), "--out", str(tmp_path / "o")]) == 1
    assert not (tmp_path / "o").exists()


def test_config_file(program, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"advisor": {"small_threshold_rows": 10}, "backend": {"delimiter": ";"}}))
    assert main(["advise", "--rows", "50", "--config", str(cfg)]) == 0
    assert capsys.readouterr().out.startswith("TRANSPORTTABLESPACE")
    cfg.write_text("[1]")
    assert main(["advise", "--rows", "50", "--config", str(cfg)]) == 2


@pytest.mark.parametrize("argv, method", [
    (["--rows", "10"], "QUERY"),
    (["--rows", "5000000"], "TRANSPORTTABLESPACE"),
    (["--rows", "600", "--threshold", "1000", "--prefer-loader"], "LOADER"),
])
def test_advise(argv, method, capsys):
    assert main(["advise", "--format", "json", *argv]) == 0
    assert json.loads(capsys.readouterr().out)["method"] == method


def test_advise_negative():
    assert main(["advise", "--rows", "-1"]) == 2


def _stores(tmp_path, invalid=False):
    src, dst = tmp_path / "src", tmp_path / "dst"
    src.mkdir(parents=True)
    dst.mkdir()
    flag = "|!INVALID" if invalid else ""
    (src / "TRX.tbl").write_text("COLS=ID,D;DATE=D\n1|2009-01-01\n2|2010-05-05" + flag + "\n3|2011-01-01\n")
    (dst / "TRX.tbl").write_text("COLS=ID,D;DATE=D\n")
    return src, dst


SIM = "PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[TRX] TGL_AWAL[2010] TGL_AKHIR[2010] METODE[QUERY]"


def test_simulate(program, tmp_path, capsys):
    src, dst = _stores(tmp_path)
    assert main(["simulate", "--format", "json", program(SIM), "--source", str(src), "--dest", str(dst)]) == 0
    (report,) = json.loads(capsys.readouterr().out)
    assert report["rows_moved"] == 1 and report["rows_examined"] == 3
    assert (dst / "TRX.tbl").read_text() == "COLS=ID,D;DATE=D\n2|2010-05-05\n"


def test_simulate_dry_run_and_abort(program, tmp_path):
    src, dst = _stores(tmp_path, invalid=True)
    before = (src / "TRX.tbl").read_bytes(), (dst / "TRX.tbl").read_bytes()
    assert main(["simulate", program(SIM), "--source", str(src), "--dest", str(dst)]) == 1
    assert ((src / "TRX.tbl").read_bytes(), (dst / "TRX.tbl").read_bytes()) == before
    src2, dst2 = _stores(tmp_path / "b")
    assert main(["simulate", program(SIM), "--source", str(src2), "--dest", str(dst2), "--dry-run"]) == 0
    assert (dst2 / "TRX.tbl").read_text() == "COLS=ID,D;DATE=D\n"


def test_simulate_unknown_table(program, tmp_path, capsys):
    src, dst = _stores(tmp_path)
    text = SIM.replace("TABEL[TRX]", "TABEL[GL]")
    assert main(["simulate", program(text), "--source", str(src), "--dest", str(dst)]) == 1
    assert "UnknownTable" in capsys.readouterr().err


def test_bench(capsys):
    assert main(["bench", "--sizes", "1000,0", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["stage"] for r in rows[:4]] == ["lexical", "syntax", "semantic", "codegen"]
    assert rows[3]["items"] == 1000 and rows[7]["items"] == 0
    assert main(["bench", "--sizes", "x"]) == 2


def test_bench_is_seeded():
    assert [r[:2] for r in bench(200, 5)] == [r[:2] for r in bench(200, 5)]
