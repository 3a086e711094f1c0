"""Report emitters: UML class diagram, distribution map, model JSON, metric tables."""

from .distmap import DistMapSpec, emit_distribution_map
from .model_json import SCHEMA_VERSION, emit_model_json, load_model_json
from .table import emit_metrics_table
from .uml import emit_uml_dot

__all__ = [
    "DistMapSpec",
    "SCHEMA_VERSION",
    "emit_distribution_map",
    "emit_metrics_table",
    "emit_model_json",
    "emit_uml_dot",
    "load_model_json",
]
