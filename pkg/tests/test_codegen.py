import datetime as dt
import re

from hypothesis import given, settings
from hypothesis import strategies as st

from pindah.codegen import INVERSE, KEYWORD_MAP, TARGET, generate, render_source
from pindah.compiler import compile_source
from pindah.semantics import ConnSpec, Method, TransferSpec

from test_semantics import specs

GOLDEN_SPEC = TransferSpec(
    line=1,
    source=ConnSpec("u", "p", "a"),
    destination=ConnSpec("u", "p", "b"),
    table="TRX",
    table2="TRX",
    begin_date=dt.date(2006, 1, 1),
    end_date=dt.date(2011, 12, 31),
    method=Method.QUERY,
    ignore_errors=False,
)

SOURCE_TARGET_PAIRS = [
    ("PINDAH", "TRANSFER"), ("SUMBER", "SOURCE"), ("TUJUAN", "DESTINATION"), ("TABEL", "TABLE"),
    ("TABEL2", "TABLE2"), ("TGL_AWAL", "BEGIN_DATE"), ("TGL_AKHIR", "LAST_DATE"), ("METODE", "METHOD"),
]


def naive_replace(statement):
    for source, target in KEYWORD_MAP:
        statement = statement.replace(source, target)
    return statement


def test_generate_golden_spec():
    assert generate(GOLDEN_SPEC).text == (
        "TRANSFER SOURCE[u/p@a] DESTINATION[u/p@b] TABLE[TRX] TABLE2[TRX] "
        "BEGIN_DATE[01/01/2006] LAST_DATE[31/12/2011] METHOD[QUERY] IGNORE[T]"
    )


def test_keyword_map():
    assert list(KEYWORD_MAP[:8]) == SOURCE_TARGET_PAIRS
    assert KEYWORD_MAP[8] == ("IGNORE", "IGNORE")
    assert len(set(TARGET.values())) == len(TARGET)


def test_keywords_in_output():
    words = re.findall(r"(\w+)\[", generate(GOLDEN_SPEC).text)
    assert words == ["SOURCE", "DESTINATION", "TABLE", "TABLE2", "BEGIN_DATE", "LAST_DATE", "METHOD", "IGNORE"]
    assert generate(GOLDEN_SPEC).text.startswith("TRANSFER ")


def test_value_containing_keyword_is_untouched():
    spec = compile_source(
        "PINDAH SUMBER[u/p@a] TUJUAN[u/p@b] TABEL[PINDAHAN] TGL_AWAL[2006] METODE[QUERY]").specs[0]
    text = generate(spec).text
    assert "TABLE[PINDAHAN]" in text and "TABLE2[PINDAHAN]" in text
    assert naive_replace(render_source(spec)) != text


def test_redacted():
    assert "p@" not in generate(GOLDEN_SPEC).redacted()
    assert "SOURCE[u/***@a]" in generate(GOLDEN_SPEC).redacted()


def test_render_source_is_explicit():
    text = render_source(GOLDEN_SPEC)
    for kw in ("TABEL2[", "TGL_AKHIR[", "IGNORE["):
        assert kw in text


@settings(max_examples=200, deadline=None)
@given(specs())
def test_round_trip_through_compiler(spec):
    (again,) = compile_source(render_source(spec)).specs
    assert generate(again) == generate(spec)


@settings(max_examples=200, deadline=None)
@given(specs())
def test_inverse_map_recovers_source_keywords(spec):
    new = generate(spec).text
    head, *rest = new.split(" ", 1)
    recovered = INVERSE[head] + " " + re.sub(r"(\w+)\[", lambda m: INVERSE[m.group(1)] + "[", rest[0])
    assert recovered == render_source(spec)


keyword_names = st.sampled_from(["PINDAHAN", "TABELX", "XSUMBER", "METODE_1", "TUJUAN2", "MY_TGL_AWAL"])


@settings(max_examples=100, deadline=None)
@given(specs(), keyword_names)
def test_value_opacity(spec, name):
    spec = TransferSpec(spec.line, spec.source, spec.destination, name, spec.table2,
                        spec.begin_date, spec.end_date, spec.method, spec.ignore_errors)
    text = generate(spec).text
    assert f"TABLE[{name}]" in text
    assert text != naive_replace(render_source(spec))
    assert generate(spec).text == text
