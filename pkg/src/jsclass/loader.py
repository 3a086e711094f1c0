"""Directory walking: turn an analysis root into a Program."""

from __future__ import annotations

import logging
import os
from pathlib import Path

from .diagnostics import AnalysisError, Diagnostic
from .estree import IngestReport, ingest_estree_json
from .parser import parse_source
from .tree import Program

log = logging.getLogger(__name__)

MODES = ("js", "estree-json", "auto")
DEFAULT_MAX_FILE_SIZE = 5 * 1024 * 1024
SKIPPED_DIRS = frozenset({"node_modules"})

_EXTENSIONS = {"js": (".js",), "estree-json": (".json",), "auto": (".js", ".json")}


def discover(root: Path, mode: str, max_file_size: int = DEFAULT_MAX_FILE_SIZE,
             skip_vendored: bool = True) -> tuple[list[Path], list[Diagnostic]]:
    """Input files under ``root`` in path order, plus notes on skipped files."""
    extensions = _EXTENSIONS[mode]
    found: list[Path] = []
    notes: list[Diagnostic] = []
    for dirpath, dirnames, filenames in os.walk(root):
        if skip_vendored:
            dirnames[:] = [d for d in dirnames if d not in SKIPPED_DIRS and not d.startswith(".")]
        dirnames.sort()
        for filename in sorted(filenames):
            if not filename.endswith(extensions):
                continue
            path = Path(dirpath) / filename
            if skip_vendored and path.stat().st_size > max_file_size:
                notes.append(Diagnostic("info", "file_skipped",
                                        f"{path.relative_to(root).as_posix()}: larger than "
                                        f"{max_file_size} bytes"))
                continue
            found.append(path)
    found.sort(key=lambda p: p.relative_to(root).as_posix())
    return found, notes


def load_program(root_dir, mode: str = "auto", *, max_file_size: int = DEFAULT_MAX_FILE_SIZE,
                 skip_vendored: bool = True) -> tuple[Program, IngestReport]:
    """Parse ``*.js`` and/or ingest ``*.json`` files under ``root_dir``.

    A file that fails is reported as an error diagnostic and skipped.  Raises
    ``AnalysisError`` with ``bad_root`` or ``empty_input``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown input mode {mode!r}")
    root = Path(root_dir)
    if not root.is_dir() or not os.access(root, os.R_OK | os.X_OK):
        raise AnalysisError("bad_root", f"cannot read directory {root}")
    paths, notes = discover(root, mode, max_file_size, skip_vendored)
    report = IngestReport(diagnostics=list(notes))
    files = []
    for path in paths:
        rel = path.relative_to(root).as_posix()
        try:
            text = path.read_text(encoding="utf-8")
            if path.suffix == ".json":
                source = ingest_estree_json(text, rel)
            else:
                source = parse_source(text, rel)
        except (OSError, UnicodeDecodeError) as exc:
            report.diagnostics.append(Diagnostic("error", "read_error", f"{rel}: {exc}"))
            continue
        except AnalysisError as exc:
            if exc.span is None:
                exc.message = exc.message if exc.message.startswith(rel) else f"{rel}: {exc.message}"
            report.diagnostics.append(exc.to_diagnostic())
            continue
        log.debug("loaded %s (%d nodes)", rel, source.node_count)
        report.add(source)
        files.append(source)
    if not files:
        raise AnalysisError("empty_input", f"no ingestible files under {root}")
    return Program(tuple(files), list(report.diagnostics)), report
