import dataclasses

import pytest
from hypothesis import given, settings

from pindah.backends import (
    EMITTERS,
    ManifestError,
    MissingManifest,
    StepKind,
    TableManifest,
    emit_loader_plan,
    emit_plan,
    emit_query_plan,
    emit_tts_plan,
    parse_manifest,
    password_env,
    plan_files,
)
from pindah.semantics import Method

from test_codegen import GOLDEN_SPEC
from test_semantics import specs

MANIFEST = {"TRX": TableManifest("TRX", ("ACCT", "TXDATE", "AMOUNT"), "TXDATE")}


def with_(spec, **kw):
    return dataclasses.replace(spec, **kw)


def dump(plan):
    return "".join(f"=== {path} ===\n{content}" for path, content in plan_files(plan))


def test_query_plan(golden):
    plan = emit_query_plan(GOLDEN_SPEC)
    assert [s.kind for s in plan.steps] == [StepKind.LOAD, StepKind.VERIFY, StepKind.PRUNE]
    assert [p for p, _ in plan.artifacts] == ["step_1_load.sql"]
    golden("plans/query.txt", dump(plan))


def test_query_plan_ignore(golden):
    plan = emit_query_plan(with_(GOLDEN_SPEC, ignore_errors=True))
    golden("plans/query_ignore.txt", dump(plan))
    assert "EXCEPTION WHEN OTHERS THEN\n      v_failed" in plan.artifacts[0][1]


def test_query_single_day_range():
    spec = with_(GOLDEN_SPEC, end_date=GOLDEN_SPEC.begin_date)
    sql = emit_query_plan(spec).artifacts[0][1]
    assert ("TXDATE >= TO_DATE('01/01/2006', 'DD/MM/YYYY') AND "
            "TXDATE < TO_DATE('01/01/2006', 'DD/MM/YYYY') + 1") in sql


def test_loader_plan(golden):
    spec = with_(GOLDEN_SPEC, method=Method.LOADER)
    plan = emit_loader_plan(spec, MANIFEST)
    control = dict(plan.artifacts)["step_2_prepare.ctl"]
    assert "FIELDS TERMINATED BY '|'" in control
    assert control.count("\n  ") == 3
    assert "errors=0" in dict(plan.artifacts)["step_3_load.sh"]
    golden("plans/loader.txt", dump(plan))


def test_loader_ignore_allows_errors():
    spec = with_(GOLDEN_SPEC, method=Method.LOADER, ignore_errors=True)
    load = dict(emit_loader_plan(spec, MANIFEST).artifacts)["step_3_load.sh"]
    assert "errors=1000000" in load


def test_loader_requires_manifest():
    spec = with_(GOLDEN_SPEC, method=Method.LOADER)
    with pytest.raises(MissingManifest) as info:
        emit_loader_plan(spec, None)
    assert info.value.table == "TRX"
    with pytest.raises(MissingManifest):
        emit_loader_plan(spec, {"OTHER": MANIFEST["TRX"]})


def test_tts_plan(golden):
    spec = with_(GOLDEN_SPEC, method=Method.TRANSPORTTABLESPACE)
    plan = emit_tts_plan(spec)
    assert [s.kind for s in plan.steps] == [
        StepKind.EXTRACT, StepKind.PREPARE, StepKind.EXTRACT, StepKind.LOAD, StepKind.LOAD,
        StepKind.VERIFY, StepKind.PRUNE]
    assert dump(emit_tts_plan(spec)) == dump(plan)
    golden("plans/tts.txt", dump(plan))


def test_tts_naming():
    spec = with_(GOLDEN_SPEC, method=Method.TRANSPORTTABLESPACE, table2="TRX_ARSIP")
    files = dict(emit_tts_plan(spec).artifacts)
    assert "CREATE TABLE TRX_STG" in files["step_1_extract.sql"]
    assert "INSERT INTO TRX_ARSIP SELECT * FROM TRX_STG" in files["step_5_load.sql"]


def test_plan_txt_first_line():
    plan = emit_query_plan(GOLDEN_SPEC)
    first = plan_files(plan)[0][1].splitlines()[0]
    assert first == ("TRANSFER SOURCE[u/***@a] DESTINATION[u/***@b] TABLE[TRX] TABLE2[TRX] "
                     "BEGIN_DATE[01/01/2006] LAST_DATE[31/12/2011] METHOD[QUERY] IGNORE[T]")
    assert plan.dirname == "1_QUERY"


def test_emitters_reject_other_methods():
    for method, emit in EMITTERS.items():
        for other in Method:
            if other is not method:
                with pytest.raises(ValueError):
                    emit(with_(GOLDEN_SPEC, method=other), MANIFEST["TRX"])


def test_password_env_name():
    assert password_env(GOLDEN_SPEC.source) == "PINDAH_PWD_U_A"


@settings(max_examples=150, deadline=None)
@given(specs())
def test_plan_invariants(spec):
    manifest = {spec.table: TableManifest(spec.table, ("K", "D"), "D")}
    plan = emit_plan(spec, manifest)
    assert plan.method is spec.method
    kinds = [s.kind for s in plan.steps]
    assert kinds[-2:] == [StepKind.VERIFY, StepKind.PRUNE]
    paths = [p for p, _ in plan.artifacts]
    assert len(paths) == len(set(paths))
    assert all(not p.startswith("/") and ".." not in p for p in paths)
    for step in plan.steps:
        assert step.script_ref in paths
    for _, content in plan.artifacts:
        # passwords never reach the scripts
        assert f"/{spec.source.password}@" not in content
        assert f"/{spec.destination.password}@" not in content
    assert dump(emit_plan(spec, manifest)) == dump(plan)


def test_parse_manifest():
    text = "# tables\nTABLE=TRX;DATE=TXDATE;COLS=ACCT,TXDATE,AMOUNT\n\nTABLE=GL;DATE=D;COLS=D,X\n"
    got = parse_manifest(text)
    assert got["TRX"] == MANIFEST["TRX"]
    assert got["GL"].columns == ("D", "X")


@pytest.mark.parametrize("text", [
    "TABLE=TRX;DATE=X;COLS=A,B",
    "TABLE=TRX;COLS=A",
    "TABLE=TRX;DATE=A;COLS=A\nTABLE=TRX;DATE=A;COLS=A",
    "nonsense",
])
def test_parse_manifest_errors(text):
    with pytest.raises(ManifestError):
        parse_manifest(text)
