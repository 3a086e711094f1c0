"""Command-line driver.

    jsclass analyze <root> [--mode js|estree-json|auto] [--out DIR]
                    [--emit model,uml,distmap,metrics] [--distmap-* ...] [--strict]
    jsclass report <model.json> <uml|distmap|metrics> [--distmap-* ...] [--format text|csv]

Exit codes: 0 success, 1 usage error, 2 analysis errors (``--strict``) or a
model document that cannot be used, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional

from .detector import analyze
from .diagnostics import AnalysisError
from .loader import DEFAULT_MAX_FILE_SIZE, MODES, load_program
from .metrics import METRIC_NAMES, compute_metrics
from .reports import (DistMapSpec, emit_distribution_map, emit_metrics_table, emit_model_json,
                      emit_uml_dot, load_model_json)

log = logging.getLogger("jsclass")

EXIT_OK, EXIT_USAGE, EXIT_ANALYSIS, EXIT_IO = 0, 1, 2, 3
ARTIFACTS = {"model": "model.json", "uml": "classes.dot", "distmap": "distmap.svg",
             "metrics": "metrics.csv"}
LOG_LEVELS = {"error": logging.ERROR, "warn": logging.WARNING, "warning": logging.WARNING,
              "info": logging.INFO, "debug": logging.DEBUG}
_SEVERITY_LEVEL = {"error": logging.ERROR, "warning": logging.WARNING, "info": logging.INFO}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit_list(text: str) -> list[str]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    unknown = [item for item in items if item not in ARTIFACTS]
    if unknown or not items:
        raise argparse.ArgumentTypeError(
            f"--emit takes a non-empty subset of {','.join(ARTIFACTS)}")
    return list(dict.fromkeys(items))


def _add_distmap_flags(parser: argparse.ArgumentParser, short_aliases: bool = False) -> None:
    def names(flag, alias):
        return (flag, alias) if short_aliases else (flag,)

    group = parser.add_argument_group("distribution map")
    group.add_argument(*names("--distmap-metric", "--metric"), dest="distmap_metric",
                       default="nom", metavar="M",
                       help=f"metric to color by ({', '.join(METRIC_NAMES)}; default nom)")
    group.add_argument(*names("--distmap-min", "--min"), dest="distmap_min", type=int,
                       metavar="N", help="lowest highlighted value")
    group.add_argument(*names("--distmap-max", "--max"), dest="distmap_max", type=int,
                       metavar="N", help="highest highlighted value")
    group.add_argument(*names("--distmap-color", "--highlight"), dest="distmap_color",
                       default="blue", metavar="C",
                       help="highlight color, SVG name or #rrggbb (default blue)")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="jsclass",
                             description="Recover emulated classes from ES5 JavaScript.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    analyze_cmd = sub.add_parser("analyze", help="analyze a source tree and write artifacts")
    analyze_cmd.add_argument("root", help="directory with .js sources or ESTree .json files")
    analyze_cmd.add_argument("--mode", choices=MODES, default="auto")
    analyze_cmd.add_argument("--out", default="jsclass-out", help="output directory")
    analyze_cmd.add_argument("--emit", type=_emit_list, default=list(ARTIFACTS),
                             help="comma-separated artifacts: model,uml,distmap,metrics")
    _add_distmap_flags(analyze_cmd)
    analyze_cmd.add_argument("--strict", action="store_true",
                             help="exit 2 when any error diagnostic is reported")
    analyze_cmd.add_argument("--name", help="application name stored in the model")
    analyze_cmd.add_argument("--max-file-size", type=int, default=DEFAULT_MAX_FILE_SIZE,
                             metavar="BYTES", help="skip larger files (default 5 MB)")
    analyze_cmd.add_argument("--include-vendored", action="store_true",
                             help="also walk node_modules and hidden directories, no size limit")

    report_cmd = sub.add_parser("report", help="re-emit an artifact from a stored model")
    report_cmd.add_argument("model", help="model.json written by analyze")
    report_cmd.add_argument("kind", choices=("uml", "distmap", "metrics"))
    _add_distmap_flags(report_cmd, short_aliases=True)
    report_cmd.add_argument("--format", choices=("text", "csv"), default="csv",
                            help="metrics table format (default csv)")
    return parser


def _distmap_spec(args) -> DistMapSpec:
    try:
        return DistMapSpec(metric=args.distmap_metric, min=args.distmap_min,
                           max=args.distmap_max, highlight_color=args.distmap_color)
    except AnalysisError as exc:
        raise UsageError(str(exc)) from None


def _configure_logging() -> None:
    level = LOG_LEVELS.get(os.environ.get("JSCLASS_LOG", "warn").lower(), logging.WARNING)
    if not log.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
        log.addHandler(handler)
    log.setLevel(level)
    log.propagate = False


def write_atomic(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_analyze(args) -> int:
    spec = _distmap_spec(args)
    try:
        program, report = load_program(
            args.root, args.mode,
            max_file_size=args.max_file_size if not args.include_vendored else sys.maxsize,
            skip_vendored=not args.include_vendored)
    except AnalysisError as exc:
        print(f"jsclass: {exc}", file=sys.stderr)
        return EXIT_USAGE
    model = analyze(program, name=args.name)
    metrics = compute_metrics(model, program)
    for diag in model.diagnostics:
        log.log(_SEVERITY_LEVEL[diag.severity], "%s", diag)

    emitters = {
        "model": lambda: emit_model_json(model, metrics),
        "uml": lambda: emit_uml_dot(model, metrics),
        "distmap": lambda: emit_distribution_map(model, metrics, spec),
        "metrics": lambda: emit_metrics_table(metrics, "csv"),
    }
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for kind in args.emit:
            write_atomic(out / ARTIFACTS[kind], emitters[kind]())
    except OSError as exc:
        print(f"jsclass: cannot write artifacts: {exc}", file=sys.stderr)
        return EXIT_IO

    errors = sum(d.severity == "error" for d in model.diagnostics)
    warnings = sum(d.severity == "warning" for d in model.diagnostics)
    print(f"files: {len(program.files)}, lines: {program.total_lines}, loc: {program.total_loc}, "
          f"classes: {model.noc}, inheritance edges: {len(model.edges)}, "
          f"methods: {metrics.total_methods}, attributes: {metrics.total_attributes}")
    print(f"diagnostics: {len(model.diagnostics)} (errors: {errors}, warnings: {warnings}), "
          f"opaque nodes: {report.opaque_nodes}/{report.nodes_loaded}")
    print(f"artifacts: {', '.join(str(out / ARTIFACTS[k]) for k in args.emit)}")
    if args.strict and errors:
        return EXIT_ANALYSIS
    return EXIT_OK


def cmd_report(args) -> int:
    spec = _distmap_spec(args)
    try:
        text = Path(args.model).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"jsclass: cannot read {args.model}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        model = load_model_json(text)
    except AnalysisError as exc:
        print(f"jsclass: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    metrics = compute_metrics(model)
    if args.kind == "uml":
        output = emit_uml_dot(model, metrics)
    elif args.kind == "distmap":
        output = emit_distribution_map(model, metrics, spec)
    else:
        output = emit_metrics_table(metrics, args.format)
    sys.stdout.write(output)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "analyze":
            return cmd_analyze(args)
        return cmd_report(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"jsclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
