"""Recover emulated classes from ES5 JavaScript and report on them."""

from .detector import (ClassEntity, InheritanceEdge, Member, OOModel, Package, analyze,
                       collect_candidates, collect_instantiations, detect_classes,
                       detect_inheritance, extract_members)
from .diagnostics import AnalysisError, Diagnostic
from .estree import IngestReport, ingest_estree_json, ingest_tree
from .lexer import tokenize
from .loader import load_program
from .metrics import ClassMetrics, MetricsReport, compute_metrics
from .parser import parse, parse_source
from .reports import (DistMapSpec, emit_distribution_map, emit_metrics_table, emit_model_json,
                      emit_uml_dot, load_model_json)
from .tree import Node, Program, SourceFile, SourceSpan, count_loc, walk

__version__ = "0.1.0"

__all__ = [
    "AnalysisError", "ClassEntity", "ClassMetrics", "Diagnostic", "DistMapSpec",
    "InheritanceEdge", "IngestReport", "Member", "MetricsReport", "Node", "OOModel", "Package",
    "Program", "SourceFile", "SourceSpan", "analyze", "collect_candidates",
    "collect_instantiations", "compute_metrics", "count_loc", "detect_classes",
    "detect_inheritance", "emit_distribution_map", "emit_metrics_table", "emit_model_json",
    "emit_uml_dot", "extract_members", "ingest_estree_json", "ingest_tree", "load_model_json",
    "load_program", "parse", "parse_source", "tokenize", "walk",
]
