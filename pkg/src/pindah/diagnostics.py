from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from typing import List, Optional

from .catalog import CATALOG


class Severity(str, enum.Enum):
    ERROR = "ERROR"


@dataclass(frozen=True)
class Diagnostic:
    line: int
    code: str
    message: str
    severity: Severity = Severity.ERROR
    clause: Optional[str] = None

    def __str__(self) -> str:
        return f"Error line {self.line} [{self.code}] {self.message}"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["severity"] = self.severity.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Diagnostic":
        return cls(
            line=d["line"],
            code=d["code"],
            message=d["message"],
            severity=Severity(d.get("severity", "ERROR")),
            clause=d.get("clause"),
        )


class DiagnosticError(Exception):
    """Raised by a compiler stage that rejected its input."""

    def __init__(self, diagnostics: List[Diagnostic]) -> None:
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


def make(code: str, line: int, clause: Optional[str] = None, **fields) -> Diagnostic:
    if clause is not None:
        fields.setdefault("clause", clause)
    message = CATALOG[code].template.format(**fields)
    return Diagnostic(line=line, code=code, message=message, clause=clause)
