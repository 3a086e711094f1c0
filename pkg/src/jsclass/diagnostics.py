"""Diagnostics shared by every analysis stage."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .tree import SourceSpan

SEVERITIES = ("info", "warning", "error")

#: closed set of diagnostic codes, mapped to their meaning
CODES = {
    "bad_json": "input file is not valid JSON",
    "not_a_program": "JSON document root is not an ESTree Program",
    "bad_root": "analysis root is missing or unreadable",
    "empty_input": "no ingestible files under the analysis root",
    "read_error": "file could not be read or decoded",
    "file_skipped": "file skipped by the directory walker (size limit)",
    "syntax": "source text is not valid in the supported grammar",
    "unsupported_syntax": "construct outside the supported ES5 grammar",
    "opaque_region": "unparsable statement skipped as an opaque region",
    "duplicate_candidate": "function name declared more than once; first wins",
    "near_miss": "constructor-like function never instantiated",
    "member_conflict": "member name used both as attribute and method",
    "computed_member": "computed member name ignored",
    "accessor_member": "getter/setter in prototype literal ignored",
    "prototype_reassigned": "prototype inherits more than once; last wins",
    "inheritance_cycle": "inheritance edge dropped because it closes a cycle",
    "bad_metric": "unknown metric name",
    "bad_spec": "invalid distribution-map settings",
    "bad_schema": "model document has an unsupported schema version or shape",
}


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    span: Optional[SourceSpan] = None

    def __post_init__(self):
        if self.severity not in SEVERITIES:
            raise ValueError(f"unknown severity {self.severity!r}")
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "span": self.span.to_dict() if self.span else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Diagnostic":
        span = data.get("span")
        return cls(data["severity"], data["code"], data["message"],
                   SourceSpan.from_dict(span) if span else None)

    def __str__(self):
        where = f"{self.span}: " if self.span else ""
        return f"{where}{self.severity}: {self.message} [{self.code}]"


class AnalysisError(Exception):
    """Raised when an input cannot be processed at all."""

    def __init__(self, code: str, message: str, span: Optional[SourceSpan] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span

    def to_diagnostic(self, severity: str = "error") -> Diagnostic:
        return Diagnostic(severity, self.code, self.message, self.span)

    def __str__(self):
        where = f"{self.span}: " if self.span else ""
        return f"{where}{self.message} [{self.code}]"
