"""Diagnostics shared by every stage: codes, spans, text and JSON rendering."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any

CODES = (
    "E_LEX",
    "E_PARSE",
    "E_DUPNAME",
    "E_PROFILE_MISSING",
    "E_SCOPE",
    "E_TYPE",
    "E_PROFILE",
    "E_EXTERN",
    "E_UNSUPPORTED",
    "E_INNER_TYPE",
    "E_ARITY",
    "E_OVERFLOW",
    "E_USAGE",
    "E_IO",
)


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int = 0
    end_col: int = 0

    @staticmethod
    def none() -> "Span":
        return Span(0, 0)


@dataclass
class Diagnostic:
    code: str
    message: str
    span: Span = field(default_factory=Span.none)
    file: str = "<input>"
    profile: str | None = None
    expected: str | None = None
    actual: str | None = None

    def __post_init__(self) -> None:
        assert self.code in CODES, self.code

    def render(self, color: bool | None = None) -> str:
        if color is None:
            color = os.environ.get("SIGFORGE_COLOR", "0") == "1"
        code = f"\x1b[31m{self.code}\x1b[0m" if color else self.code
        text = f"{self.file}:{self.span.line}:{self.span.col}: {code}: {self.message}"
        if self.expected is not None:
            text += f"\n  expected: {self.expected}"
        if self.actual is not None:
            text += f"\n  actual:   {self.actual}"
        return text

    def to_json(self) -> dict[str, Any]:
        return {
            "file": self.file,
            "line": self.span.line,
            "col": self.span.col,
            "end_line": self.span.end_line,
            "end_col": self.span.end_col,
            "code": self.code,
            "message": self.message,
            "profile": self.profile,
            "expected": self.expected,
            "actual": self.actual,
        }


DIAGNOSTIC_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["file", "line", "col", "code", "message"],
    "properties": {
        "file": {"type": "string"},
        "line": {"type": "integer", "minimum": 0},
        "col": {"type": "integer", "minimum": 0},
        "end_line": {"type": "integer", "minimum": 0},
        "end_col": {"type": "integer", "minimum": 0},
        "code": {"enum": list(CODES)},
        "message": {"type": "string"},
        "profile": {"type": ["string", "null"]},
        "expected": {"type": ["string", "null"]},
        "actual": {"type": ["string", "null"]},
    },
    "additionalProperties": False,
}


class SigforgeError(Exception):
    def __init__(self, diag: Diagnostic):
        super().__init__(diag.render(color=False))
        self.diag = diag

    @property
    def code(self) -> str:
        return self.diag.code


def fail(code: str, message: str, span: Span | None = None, **extra: Any) -> SigforgeError:
    return SigforgeError(Diagnostic(code, message, span or Span.none(), **extra))


def dump_json(diags: list[Diagnostic]) -> str:
    return json.dumps([d.to_json() for d in diags], indent=2, sort_keys=True)
