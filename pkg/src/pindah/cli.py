"""Command-line driver: check, build, advise, simulate, bench.

Exit codes: 0 clean, 1 diagnostics or failed transfers, 2 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from . import advisor, backends, simdb, synth
from .codegen import generate
from .compiler import CompileResult, analyze_statements, compile_source, lex_source, parse_tokens

EXIT_OK, EXIT_DIAG, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError(f"{path}: top level must be an object")
    return cfg


def _policy(args) -> advisor.AdvisorPolicy:
    cfg = _load_config(args.config).get("advisor", {})
    threshold = args.threshold if args.threshold is not None else cfg.get(
        "small_threshold_rows", advisor.DEFAULT_THRESHOLD)
    loader = args.prefer_loader or bool(cfg.get("prefer_loader_mid_band", False))
    try:
        return advisor.AdvisorPolicy(int(threshold), loader)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _backend_config(args) -> backends.BackendConfig:
    cfg = _load_config(args.config).get("backend", {})
    try:
        return backends.BackendConfig(**cfg)
    except TypeError as exc:
        raise UsageError(f"bad backend config: {exc}") from None


def _report(result: CompileResult, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({
            "statements": len(result.specs),
            "diagnostics": [d.to_dict() for d in result.diagnostics],
        }, indent=2))
    else:
        for d in result.diagnostics:
            print(str(d))


def _compile(path: str) -> CompileResult:
    return compile_source(_read(path))


def cmd_check(args) -> int:
    result = _compile(args.file)
    _report(result, args.format)
    if args.format == "text" and result.ok:
        print(f"{len(result.specs)} statement(s), no errors")
    return EXIT_OK if result.ok else EXIT_DIAG


def cmd_build(args) -> int:
    result = _compile(args.file)
    if not result.ok:
        _report(result, args.format)
        return EXIT_DIAG
    manifest = None
    if args.manifest is not None:
        try:
            manifest = backends.parse_manifest(_read(args.manifest), args.manifest)
        except backends.ManifestError as exc:
            raise UsageError(str(exc)) from None
    config = _backend_config(args)
    plans = []
    for spec in result.specs:
        try:
            plans.append(backends.emit_plan(spec, manifest, config))
        except backends.MissingManifest as exc:
            _err(f"line {spec.line}: {exc}")
            return EXIT_DIAG

    out = Path(args.out)
    pending = []
    for plan in plans:
        for rel, content in backends.plan_files(plan):
            target = out / plan.dirname / rel
            if target.exists() and not args.force:
                try:
                    same = target.read_text(encoding="utf-8") == content
                except OSError as exc:
                    raise UsageError(f"cannot read {target}: {exc}") from None
                if not same:
                    raise UsageError(f"{target} exists with different content (use --force)")
            pending.append((target, content))
    try:
        for target, content in pending:
            target.parent.mkdir(parents=True, exist_ok=True)
            if not target.exists() or target.read_text(encoding="utf-8") != content:
                target.write_text(content, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write plans: {exc}") from None

    if args.format == "json":
        print(json.dumps([
            {"line": p.new_statement.line, "method": p.method.value,
             "new_statement": p.new_statement.redacted(), "plan": str(out / p.dirname)}
            for p in plans
        ], indent=2))
    else:
        for plan in plans:
            print(plan.new_statement.redacted())
    return EXIT_OK


def cmd_advise(args) -> int:
    policy = _policy(args)
    try:
        est = advisor.SizeEstimate(args.rows, args.bytes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    method = advisor.recommend(est, policy)
    text = advisor.explain(est, policy)
    if args.format == "json":
        print(json.dumps({"method": method.value, "explanation": text}))
    else:
        print(method.value)
        print(text)
    return EXIT_OK


def _table(header: Sequence[str], rows: List[Sequence]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines)


def cmd_simulate(args) -> int:
    result = _compile(args.file)
    if not result.ok:
        _report(result, args.format)
        return EXIT_DIAG
    try:
        source = simdb.load_store(args.source)
        same = Path(args.source).resolve() == Path(args.dest).resolve()
        dest = source if same else simdb.load_store(args.dest)
    except simdb.StoreError as exc:
        raise UsageError(str(exc)) from None

    reports = []
    status = EXIT_OK
    for spec in result.specs:
        try:
            reports.append(simdb.execute(spec, source, dest))
        except (simdb.UnknownTable, simdb.SchemaMismatch) as exc:
            _err(f"line {spec.line}: {type(exc).__name__}: {exc}")
            status = EXIT_DIAG
            break
    if any(r.aborted for r in reports):
        status = EXIT_DIAG
    if not args.dry_run:
        try:
            simdb.save_store(source, args.source)
            if not same:
                simdb.save_store(dest, args.dest)
        except (OSError, simdb.StoreError) as exc:
            raise UsageError(f"cannot save stores: {exc}") from None

    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        header = ("line", "method", "examined", "selected", "moved", "failed", "pruned", "aborted", "sim_cost_s")
        rows = [(r.line, r.method.value, r.rows_examined, r.rows_selected, r.rows_moved, r.rows_failed,
                 r.rows_pruned, "yes" if r.aborted else "no", f"{r.simulated_cost:.1f}") for r in reports]
        print(_table(header, rows))
    return status


def _sizes(text: str) -> List[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {text!r}") from None
    if not sizes or any(s < 0 for s in sizes):
        raise UsageError(f"bad --sizes {text!r}")
    return sizes


def bench(size: int, seed: int = 0) -> List[tuple]:
    """Time each compiler stage on a synthetic program of ``size`` statements."""
    program = synth.random_program(size, seed)
    clock = time.perf_counter

    t0 = clock()
    tokens, lex_diags = lex_source(program)
    t1 = clock()
    statements, syn_diags = parse_tokens(tokens)
    t2 = clock()
    specs, sem_diags = analyze_statements(statements)
    t3 = clock()
    generated = [generate(s) for s in specs]
    t4 = clock()
    errors = len(lex_diags) + len(syn_diags) + len(sem_diags)
    return [
        ("lexical", len(tokens), t1 - t0, errors),
        ("syntax", len(statements), t2 - t1, errors),
        ("semantic", len(specs), t3 - t2, errors),
        ("codegen", len(generated), t4 - t3, errors),
    ]


def cmd_bench(args) -> int:
    sizes = _sizes(args.sizes)
    results = []
    for size in sizes:
        for stage, items, seconds, errors in bench(size, args.seed):
            results.append({"statements": size, "stage": stage, "items": items,
                            "seconds": seconds, "errors": errors})
    if args.format == "json":
        print(json.dumps(results, indent=2))
    else:
        print(_table(("statements", "stage", "items", "seconds"),
                     [(r["statements"], r["stage"], r["items"], f"{r['seconds']:.3f}") for r in results]))
    return EXIT_DIAG if any(r["errors"] for r in results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--config", help="JSON config file with 'advisor' and 'backend' sections")

    p = argparse.ArgumentParser(prog="pindah", description="Compiler for PINDAH data-transfer programs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="lex, parse and analyze a program")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("build", parents=[common], help="compile a program into plan directories")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.add_argument("--manifest")
    s.add_argument("--force", action="store_true", help="overwrite differing plan files")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("advise", parents=[common], help="recommend a transfer method")
    s.add_argument("--rows", type=int, required=True)
    s.add_argument("--bytes", type=int)
    s.add_argument("--threshold", type=int)
    s.add_argument("--prefer-loader", action="store_true")
    s.set_defaults(func=cmd_advise)

    s = sub.add_parser("simulate", parents=[common], help="dry-run a program against mock stores")
    s.add_argument("file")
    s.add_argument("--source", required=True)
    s.add_argument("--dest", required=True)
    s.add_argument("--dry-run", action="store_true", help="do not write the stores back")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("bench", parents=[common], help="time compiler stages on synthetic programs")
    s.add_argument("--sizes", default="1000,10000,100000")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
