"""Ingestion of ESTree JSON documents (as produced by Esprima and friends)."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .diagnostics import AnalysisError, Diagnostic
from .tree import (CHILD_SLOTS, LIST_SLOTS, OPAQUE, SUPPORTED_KINDS, Node, Program, SourceFile,
                   SourceSpan, make_node, make_opaque)

log = logging.getLogger(__name__)

# ESTree scalar key -> our slot name, where they differ
_RENAMED = {("VariableDeclaration", "kind"): "declaration_kind",
            ("Property", "kind"): "property_kind"}
_SCALARS = {
    "Identifier": ("name",),
    "MemberExpression": ("computed",),
    "AssignmentExpression": ("operator",),
    "BinaryExpression": ("operator",),
    "LogicalExpression": ("operator",),
    "UnaryExpression": ("operator", "prefix"),
    "UpdateExpression": ("operator", "prefix"),
    "VariableDeclaration": ("kind",),
    "Property": ("kind",),
}
_SKIPPED_KEYS = frozenset({"type", "loc", "range", "start", "end", "comments", "tokens", "errors"})


@dataclass
class IngestReport:
    files_loaded: int = 0
    nodes_loaded: int = 0
    opaque_nodes: int = 0
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def add(self, source: SourceFile) -> None:
        self.files_loaded += 1
        self.nodes_loaded += source.node_count
        self.opaque_nodes += source.opaque_count
        self.diagnostics.extend(source.diagnostics)

    @property
    def opaque_ratio(self) -> float:
        return self.opaque_nodes / self.nodes_loaded if self.nodes_loaded else 0.0


def _is_node(value: Any) -> bool:
    return isinstance(value, dict) and isinstance(value.get("type"), str)


class _Converter:
    def __init__(self, path: str):
        self.path = path
        self.count = 0
        self.opaque = 0
        self.max_line = 0

    def span(self, data: dict) -> Optional[SourceSpan]:
        loc = data.get("loc")
        if not isinstance(loc, dict):
            return None
        try:
            start, end = loc["start"], loc["end"]
            self.max_line = max(self.max_line, end["line"])
            return SourceSpan(self.path, start["line"], start["column"], end["line"], end["column"])
        except (KeyError, TypeError, ValueError):
            return None

    def child(self, value: Any) -> Any:
        if value is None:
            return None
        if isinstance(value, list):
            return tuple(None if item is None else self.convert(item) for item in value)
        if _is_node(value):
            return self.convert(value)
        raise AnalysisError("bad_json", f"expected an ESTree node, got {type(value).__name__}")

    def convert(self, data: dict) -> Node:
        if not _is_node(data):
            raise AnalysisError("bad_json", "expected an ESTree node object")
        self.count += 1
        kind = data["type"]
        span = self.span(data)
        if kind not in SUPPORTED_KINDS:
            self.opaque += 1
            children = {}
            for key, value in data.items():
                if key in _SKIPPED_KEYS:
                    continue
                if _is_node(value):
                    children[key] = self.convert(value)
                elif isinstance(value, list) and all(v is None or _is_node(v) for v in value):
                    children[key] = self.child(value)
            return make_opaque(kind, span, **children)

        fields: dict[str, Any] = {}
        for slot in CHILD_SLOTS[kind]:
            value = self.child(data.get(slot))
            if (kind, slot) in LIST_SLOTS and value is None:
                value = ()
            fields[slot] = value
        for key in _SCALARS.get(kind, ()):
            fields[_RENAMED.get((kind, key), key)] = data.get(key)
        if kind == "Literal":
            fields.update(self.literal(data))
        if kind == "MemberExpression":
            fields["computed"] = bool(fields["computed"])
        if kind == "Property" and fields["property_kind"] is None:
            fields["property_kind"] = "init"
        try:
            return make_node(kind, span, **fields)
        except ValueError as exc:
            raise AnalysisError("bad_json", f"malformed {kind} node: {exc}", span) from None

    @staticmethod
    def literal(data: dict) -> dict:
        value = data.get("value")
        raw = data.get("raw")
        if "regex" in data:
            return {"value": None, "raw": raw, "literal_type": "regex"}
        if isinstance(value, bool):
            literal_type = "boolean"
        elif value is None:
            literal_type = "null"
        elif isinstance(value, str):
            literal_type = "string"
        elif isinstance(value, (int, float)):
            literal_type = "number"
        else:
            raise AnalysisError("bad_json", f"unsupported literal value {value!r}")
        if raw is None:
            raw = json.dumps(value)
        return {"value": value, "raw": raw, "literal_type": literal_type}


def ingest_estree_json(document_text: str, path: str) -> SourceFile:
    """Build a SourceFile from one ESTree JSON document.

    Line counts are approximated by the largest ``loc`` end line, since the
    original source text is not available; ``loc_approximate`` is set.
    """
    try:
        data = json.loads(document_text)
    except json.JSONDecodeError as exc:
        raise AnalysisError("bad_json", f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict) or data.get("type") != "Program":
        raise AnalysisError("not_a_program", f"{path}: top-level node is not a Program")
    conv = _Converter(path)
    root = conv.convert(data)
    lines = conv.max_line
    return SourceFile(path, lines, lines, root, loc_approximate=True,
                      node_count=conv.count, opaque_count=conv.opaque)


def ingest_tree(root_dir, mode: str = "estree-json") -> tuple[Program, IngestReport]:
    """Load every ``*.json`` ESTree document under ``root_dir``.

    Files that fail to load are reported and skipped.  Raises
    ``AnalysisError`` with ``bad_root`` or ``empty_input``.
    """
    if mode != "estree-json":
        raise ValueError(f"unsupported ingest mode {mode!r}")
    root = Path(root_dir)
    if not root.is_dir() or not os.access(root, os.R_OK | os.X_OK):
        raise AnalysisError("bad_root", f"cannot read directory {root}")
    report = IngestReport()
    files = []
    for path in sorted(root.rglob("*.json")):
        if not path.is_file():
            continue
        rel = path.relative_to(root).as_posix()
        try:
            text = path.read_text(encoding="utf-8")
            source = ingest_estree_json(text, rel)
        except (OSError, UnicodeDecodeError) as exc:
            report.diagnostics.append(Diagnostic("error", "read_error", f"{rel}: {exc}"))
            continue
        except AnalysisError as exc:
            report.diagnostics.append(exc.to_diagnostic())
            continue
        report.add(source)
        files.append(source)
    if not files:
        raise AnalysisError("empty_input", f"no ingestible ESTree files under {root}")
    return Program(tuple(files), list(report.diagnostics)), report
