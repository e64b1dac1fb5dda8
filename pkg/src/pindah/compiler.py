"""Whole-program pipeline: lex, parse, analyze, generate.

Every physical line is independent, so an error on one line never stops
the following lines from being compiled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import diagnostics
from .codegen import NewStatement, generate
from .diagnostics import Diagnostic, DiagnosticError
from .lexer import LexError, LexRule, Token, default_rules, scan
from .parser import DEFAULT_TABLE, SyntaxRuleTable, TransferStatement, parse_statement, split_statements
from .semantics import TransferSpec, analyze

CODES = ("LEX001",)


@dataclass
class CompileResult:
    specs: List[TransferSpec] = field(default_factory=list)
    statements: List[NewStatement] = field(default_factory=list)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics


def lex_source(source: str, rules: Optional[Sequence[LexRule]] = None) -> Tuple[List[Token], List[Diagnostic]]:
    if rules is None:
        rules = default_rules()
    tokens: List[Token] = []
    found: List[Diagnostic] = []
    parts = source.split("\n")
    for n, part in enumerate(parts, start=1):
        text = part + "\n" if n < len(parts) else part
        if not text:
            continue
        try:
            tokens.extend(scan(text, rules, first_line=n))
        except LexError as exc:
            found.append(diagnostics.make("LEX001", exc.line, char=exc.char, column=exc.column))
    return tokens, found


def parse_tokens(tokens: Sequence[Token], table: SyntaxRuleTable = DEFAULT_TABLE):
    statements: List[TransferStatement] = []
    found: List[Diagnostic] = []
    for piece in split_statements(tokens):
        try:
            statements.append(parse_statement(piece, table))
        except DiagnosticError as exc:
            found.extend(exc.diagnostics)
    return statements, found


def analyze_statements(statements: Sequence[TransferStatement]):
    specs: List[TransferSpec] = []
    found: List[Diagnostic] = []
    for stmt in statements:
        try:
            specs.append(analyze(stmt))
        except DiagnosticError as exc:
            found.extend(exc.diagnostics)
    return specs, found


def compile_source(source: str) -> CompileResult:
    tokens, lex_diags = lex_source(source)
    statements, syn_diags = parse_tokens(tokens)
    specs, sem_diags = analyze_statements(statements)
    found = sorted(lex_diags + syn_diags + sem_diags, key=lambda d: d.line)
    return CompileResult(specs, [generate(s) for s in specs], found)
