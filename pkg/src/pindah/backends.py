"""Method-specific transfer plans.

Each plan is an ordered list of steps plus the script artifacts that
realize them. Emission is pure and deterministic; writing the artifacts to
disk is left to the caller. Scripts never contain passwords: they name an
environment variable instead.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .codegen import NewStatement, generate
from .semantics import ConnSpec, Method, TransferSpec, format_date


class StepKind(str, enum.Enum):
    EXTRACT = "EXTRACT"
    PREPARE = "PREPARE"
    LOAD = "LOAD"
    VERIFY = "VERIFY"
    PRUNE = "PRUNE"


@dataclass(frozen=True)
class PlanStep:
    kind: StepKind
    description: str
    script_ref: Optional[str] = None


@dataclass(frozen=True)
class Plan:
    new_statement: NewStatement
    method: Method
    steps: Tuple[PlanStep, ...]
    artifacts: Tuple[Tuple[str, str], ...]

    @property
    def dirname(self) -> str:
        return f"{self.new_statement.line}_{self.method.value}"

    def summary(self) -> str:
        """Text of ``plan.txt``: the statement line, then one line per step."""
        out = [self.new_statement.redacted(), f"method: {self.method.value}"]
        for k, step in enumerate(self.steps, start=1):
            ref = f" ({step.script_ref})" if step.script_ref else ""
            out.append(f"{k}. {step.kind.value}: {step.description}{ref}")
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class TableManifest:
    table: str
    columns: Tuple[str, ...]
    date_column: str


class MissingManifest(LookupError):
    def __init__(self, table: str) -> None:
        super().__init__(f"no column manifest for table {table}")
        self.table = table


class ManifestError(ValueError):
    pass


def parse_manifest(text: str, filename: str = "<manifest>") -> Dict[str, TableManifest]:
    """Parse ``TABLE=TRX;DATE=TXDATE;COLS=ACCT,TXDATE,AMOUNT`` records, one per line."""
    tables: Dict[str, TableManifest] = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = {}
        for part in line.split(";"):
            key, sep, value = part.partition("=")
            if not sep:
                raise ManifestError(f"{filename}:{n}: expected KEY=VALUE, got {part!r}")
            fields[key.strip().upper()] = value.strip()
        try:
            table, date_col, cols = fields["TABLE"], fields["DATE"], fields["COLS"]
        except KeyError as exc:
            raise ManifestError(f"{filename}:{n}: missing {exc.args[0]}") from None
        columns = tuple(c.strip() for c in cols.split(",") if c.strip())
        if date_col not in columns:
            raise ManifestError(f"{filename}:{n}: date column {date_col} not in COLS")
        if table in tables:
            raise ManifestError(f"{filename}:{n}: table {table} listed twice")
        tables[table] = TableManifest(table, columns, date_col)
    return tables


@dataclass(frozen=True)
class BackendConfig:
    delimiter: str = "|"
    staging_suffix: str = "_STG"
    default_date_column: str = "TXDATE"
    password_env_prefix: str = "PINDAH_PWD"
    tablespace: str = "PINDAH_TTS"
    loader_error_limit: int = 1000000


def password_env(conn: ConnSpec, config: BackendConfig = BackendConfig()) -> str:
    name = f"{config.password_env_prefix}_{conn.user}_{conn.alias}".upper()
    return re.sub(r"[^A-Z0-9_]", "_", name)


def _date_lit(d) -> str:
    return f"TO_DATE('{format_date(d)}', 'DD/MM/YYYY')"


def _range(spec: TransferSpec, column: str) -> str:
    # half-open on the day after end_date so time-of-day values are included
    return f"{column} >= {_date_lit(spec.begin_date)} AND {column} < {_date_lit(spec.end_date)} + 1"


def _header(spec: TransferSpec, run_as: ConnSpec, config: BackendConfig, comment: str = "--") -> str:
    return "\n".join([
        f"{comment} {generate(spec).redacted()}",
        f"{comment} run as {run_as.user}@{run_as.alias}, password from ${password_env(run_as, config)}",
        "",
    ])


def _sqlplus_connect(conn: ConnSpec, config: BackendConfig) -> str:
    return f"{conn.user}/\"${{{password_env(conn, config)}}}\"@{conn.alias}"


def _date_column(spec: TransferSpec, manifest: Optional[TableManifest], config: BackendConfig) -> str:
    return manifest.date_column if manifest is not None else config.default_date_column


def _prune_loaded(spec: TransferSpec, pred: str) -> str:
    """Delete only source rows that now exist at the destination."""
    link = spec.destination.alias
    return (
        "DECLARE\n"
        "  v_present NUMBER;\n"
        "BEGIN\n"
        f"  FOR r IN (SELECT ROWID AS rid FROM {spec.table} WHERE {pred}) LOOP\n"
        "    SELECT COUNT(*) INTO v_present FROM (\n"
        f"      SELECT * FROM {spec.table} WHERE ROWID = r.rid\n"
        f"      INTERSECT SELECT * FROM {spec.table2}@{link});\n"
        "    IF v_present > 0 THEN\n"
        f"      DELETE FROM {spec.table} WHERE ROWID = r.rid;\n"
        "    END IF;\n"
        "  END LOOP;\n"
        "  COMMIT;\n"
        "END;\n"
        "/\n"
    )


def _prune_all(spec: TransferSpec, pred: str) -> str:
    return f"DELETE FROM {spec.table} WHERE {pred};\nCOMMIT;\n"


def emit_query_plan(
    spec: TransferSpec,
    manifest: Optional[TableManifest] = None,
    config: BackendConfig = BackendConfig(),
) -> Plan:
    if spec.method is not Method.QUERY:
        raise ValueError(f"not a QUERY statement: {spec.method}")
    path = "step_1_load.sql"
    pred = _range(spec, _date_column(spec, manifest, config))
    src = f"{spec.table}@{spec.source.alias}"
    head = _header(spec, spec.destination, config)
    if spec.ignore_errors:
        body = (
            "WHENEVER SQLERROR EXIT FAILURE ROLLBACK\n"
            "DECLARE\n"
            "  TYPE rid_list IS TABLE OF UROWID;\n"
            "  v_src    rid_list;\n"
            "  v_done   rid_list := rid_list();\n"
            "  v_failed NUMBER := 0;\n"
            "BEGIN\n"
            f"  SELECT ROWID BULK COLLECT INTO v_src FROM {src} WHERE {pred};\n"
            "  -- LOAD: row by row, failing rows are counted and left in place\n"
            "  FOR i IN 1 .. v_src.COUNT LOOP\n"
            "    BEGIN\n"
            f"      INSERT INTO {spec.table2} SELECT * FROM {src} WHERE ROWID = v_src(i);\n"
            "      v_done.EXTEND;\n"
            "      v_done(v_done.COUNT) := v_src(i);\n"
            "    EXCEPTION WHEN OTHERS THEN\n"
            "      v_failed := v_failed + 1;\n"
            "    END;\n"
            "  END LOOP;\n"
            "  -- VERIFY\n"
            "  IF v_done.COUNT + v_failed <> v_src.COUNT THEN\n"
            "    RAISE_APPLICATION_ERROR(-20001, 'verify failed');\n"
            "  END IF;\n"
            "  -- PRUNE: moved rows only\n"
            "  FOR i IN 1 .. v_done.COUNT LOOP\n"
            f"    DELETE FROM {src} WHERE ROWID = v_done(i);\n"
            "  END LOOP;\n"
            "  COMMIT;\n"
            "  DBMS_OUTPUT.PUT_LINE('moved ' || v_done.COUNT || ', failed ' || v_failed);\n"
            "END;\n"
            "/\n"
        )
    else:
        body = (
            "WHENEVER SQLERROR EXIT FAILURE ROLLBACK\n"
            "DECLARE\n"
            "  v_expected NUMBER;\n"
            "  v_moved    NUMBER;\n"
            "BEGIN\n"
            f"  SELECT COUNT(*) INTO v_expected FROM {src} WHERE {pred};\n"
            "  -- LOAD: one statement, all or nothing\n"
            f"  INSERT INTO {spec.table2} SELECT * FROM {src} WHERE {pred};\n"
            "  v_moved := SQL%ROWCOUNT;\n"
            "  -- VERIFY\n"
            "  IF v_moved <> v_expected THEN\n"
            "    RAISE_APPLICATION_ERROR(-20001, 'verify failed: expected ' || v_expected || ', moved ' || v_moved);\n"
            "  END IF;\n"
            "  -- PRUNE\n"
            f"  DELETE FROM {src} WHERE {pred};\n"
            "  COMMIT;\n"
            "EXCEPTION WHEN OTHERS THEN\n"
            "  ROLLBACK;\n"
            "  RAISE;\n"
            "END;\n"
            "/\n"
        )
    steps = (
        PlanStep(StepKind.LOAD, f"insert-select {src} into {spec.table2}", path),
        PlanStep(StepKind.VERIFY, "compare moved row count with source range count", path),
        PlanStep(StepKind.PRUNE, f"delete moved range from {src}", path),
    )
    return Plan(generate(spec), Method.QUERY, steps, ((path, head + body),))


def emit_loader_plan(
    spec: TransferSpec,
    manifest: Mapping[str, TableManifest] | TableManifest | None = None,
    config: BackendConfig = BackendConfig(),
) -> Plan:
    if spec.method is not Method.LOADER:
        raise ValueError(f"not a LOADER statement: {spec.method}")
    table = _lookup(manifest, spec.table)
    if table is None:
        raise MissingManifest(spec.table)
    delim = config.delimiter
    pred = _range(spec, table.date_column)
    datafile = f"{spec.table}.dat"
    select = f" || '{delim}' || ".join(
        f"TO_CHAR({c}, 'DD/MM/YYYY')" if c == table.date_column else c for c in table.columns
    )
    extract = _header(spec, spec.source, config) + (
        "SET HEADING OFF FEEDBACK OFF PAGESIZE 0 LINESIZE 32767 TRIMSPOOL ON\n"
        f"SPOOL {datafile}\n"
        f"SELECT {select}\n"
        f"  FROM {spec.table}\n"
        f" WHERE {pred};\n"
        "SPOOL OFF\n"
    )
    fields = ",\n".join(
        f"  {c} DATE \"DD/MM/YYYY\"" if c == table.date_column else f"  {c}" for c in table.columns
    )
    control = (
        "LOAD DATA\n"
        f"INFILE '{datafile}'\n"
        f"BADFILE '{spec.table}.bad'\n"
        "APPEND\n"
        f"INTO TABLE {spec.table2}\n"
        f"FIELDS TERMINATED BY '{delim}'\n"
        "TRAILING NULLCOLS\n"
        "(\n"
        f"{fields}\n"
        ")\n"
    )
    errors = config.loader_error_limit if spec.ignore_errors else 0
    load = _header(spec, spec.destination, config, comment="#") + (
        "set -eu\n"
        f"sqlldr userid={_sqlplus_connect(spec.destination, config)} "
        f"control=step_2_prepare.ctl log={spec.table}.log errors={errors}\n"
    )
    verify = _header(spec, spec.destination, config) + (
        "WHENEVER SQLERROR EXIT FAILURE\n"
        f"-- must equal the line count of {datafile} minus {spec.table}.bad\n"
        f"SELECT COUNT(*) FROM {spec.table2} WHERE {pred};\n"
    )
    prune = _header(spec, spec.source, config) + "WHENEVER SQLERROR EXIT FAILURE ROLLBACK\n"
    prune += _prune_loaded(spec, pred) if spec.ignore_errors else _prune_all(spec, pred)
    artifacts = (
        ("step_1_extract.sql", extract),
        ("step_2_prepare.ctl", control),
        ("step_3_load.sh", load),
        ("step_4_verify.sql", verify),
        ("step_5_prune.sql", prune),
    )
    steps = (
        PlanStep(StepKind.EXTRACT, f"spool range of {spec.table} to {datafile}", "step_1_extract.sql"),
        PlanStep(StepKind.PREPARE, f"loader control file for {spec.table2}", "step_2_prepare.ctl"),
        PlanStep(StepKind.LOAD, f"bulk load {datafile} into {spec.table2}", "step_3_load.sh"),
        PlanStep(StepKind.VERIFY, f"count loaded rows in {spec.table2}", "step_4_verify.sql"),
        PlanStep(StepKind.PRUNE, f"delete moved range from {spec.table}", "step_5_prune.sql"),
    )
    return Plan(generate(spec), Method.LOADER, steps, artifacts)


def emit_tts_plan(
    spec: TransferSpec,
    manifest: Optional[TableManifest] = None,
    config: BackendConfig = BackendConfig(),
) -> Plan:
    if spec.method is not Method.TRANSPORTTABLESPACE:
        raise ValueError(f"not a TRANSPORTTABLESPACE statement: {spec.method}")
    pred = _range(spec, _date_column(spec, manifest, config))
    staging = spec.table + config.staging_suffix
    ts = config.tablespace
    dump = f"{staging}.dmp"
    datafile = f"{ts.lower()}01.dbf"
    src, dst = spec.source, spec.destination

    stage = _header(spec, src, config) + (
        "WHENEVER SQLERROR EXIT FAILURE\n"
        f"CREATE TABLE {staging} TABLESPACE {ts} AS\n"
        f"  SELECT * FROM {spec.table} WHERE {pred};\n"
    )
    read_only = _header(spec, src, config) + (
        "WHENEVER SQLERROR EXIT FAILURE\n"
        f"EXEC DBMS_TTS.TRANSPORT_SET_CHECK('{ts}', TRUE);\n"
        f"ALTER TABLESPACE {ts} READ ONLY;\n"
    )
    export = _header(spec, src, config, comment="#") + (
        "set -eu\n"
        f"expdp userid={_sqlplus_connect(src, config)} "
        f"transport_tablespaces={ts} dumpfile={dump} logfile={staging}_exp.log\n"
    )
    copy_list = (
        f"# datafiles to copy from {src.alias} to {dst.alias} after step 3\n"
        f"{datafile}\n"
        f"{dump}\n"
    )
    imp = _header(spec, dst, config, comment="#") + (
        "set -eu\n"
        f"impdp userid={_sqlplus_connect(dst, config)} "
        f"dumpfile={dump} transport_datafiles={datafile} logfile={staging}_imp.log\n"
    )
    if spec.ignore_errors:
        insert = (
            f"INSERT INTO {spec.table2} SELECT * FROM {staging}\n"
            f"  LOG ERRORS INTO ERR${spec.table2} REJECT LIMIT UNLIMITED;\n"
        )
    else:
        insert = f"INSERT INTO {spec.table2} SELECT * FROM {staging};\n"
    merge = _header(spec, dst, config) + "WHENEVER SQLERROR EXIT FAILURE ROLLBACK\n" + insert + "COMMIT;\n"
    verify = _header(spec, dst, config) + (
        "WHENEVER SQLERROR EXIT FAILURE\n"
        f"-- rows in {spec.table2} for the range must equal rows in {staging}"
        + (f" minus ERR${spec.table2}\n" if spec.ignore_errors else "\n")
        + f"SELECT COUNT(*) FROM {staging};\n"
        f"SELECT COUNT(*) FROM {spec.table2} WHERE {pred};\n"
    )
    prune = _header(spec, src, config) + "WHENEVER SQLERROR EXIT FAILURE ROLLBACK\n"
    prune += _prune_loaded(spec, pred) if spec.ignore_errors else _prune_all(spec, pred)

    artifacts = (
        ("step_1_extract.sql", stage),
        ("step_2_prepare.sql", read_only),
        ("step_3_extract.sh", export),
        ("datafiles.txt", copy_list),
        ("step_4_load.sh", imp),
        ("step_5_load.sql", merge),
        ("step_6_verify.sql", verify),
        ("step_7_prune.sql", prune),
    )
    steps = (
        PlanStep(StepKind.EXTRACT, f"copy range of {spec.table} into {staging} in tablespace {ts}",
                 "step_1_extract.sql"),
        PlanStep(StepKind.PREPARE, f"check and set tablespace {ts} read only", "step_2_prepare.sql"),
        PlanStep(StepKind.EXTRACT, f"export {ts} metadata, then copy the files in datafiles.txt",
                 "step_3_extract.sh"),
        PlanStep(StepKind.LOAD, f"import {ts} metadata at {dst.alias}", "step_4_load.sh"),
        PlanStep(StepKind.LOAD, f"merge {staging} into {spec.table2}", "step_5_load.sql"),
        PlanStep(StepKind.VERIFY, f"compare {staging} and {spec.table2} row counts", "step_6_verify.sql"),
        PlanStep(StepKind.PRUNE, f"delete moved range from {spec.table}", "step_7_prune.sql"),
    )
    return Plan(generate(spec), Method.TRANSPORTTABLESPACE, steps, artifacts)


def _lookup(manifest, table: str) -> Optional[TableManifest]:
    if manifest is None:
        return None
    if isinstance(manifest, TableManifest):
        return manifest if manifest.table == table else None
    return manifest.get(table)


EMITTERS = {
    Method.QUERY: emit_query_plan,
    Method.LOADER: emit_loader_plan,
    Method.TRANSPORTTABLESPACE: emit_tts_plan,
}


def emit_plan(
    spec: TransferSpec,
    manifest: Optional[Mapping[str, TableManifest]] = None,
    config: BackendConfig = BackendConfig(),
) -> Plan:
    if spec.method is Method.LOADER:
        return emit_loader_plan(spec, manifest, config)
    return EMITTERS[spec.method](spec, _lookup(manifest, spec.table), config)


def plan_files(plan: Plan) -> List[Tuple[str, str]]:
    """All files of a plan directory, relative to ``plan.dirname``."""
    return [("plan.txt", plan.summary())] + list(plan.artifacts)
