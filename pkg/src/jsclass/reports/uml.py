"""UML class diagram as a Graphviz DOT digraph."""

from __future__ import annotations

from typing import Optional

from ..detector import OOModel
from ..metrics import MetricsReport

_RECORD_SPECIAL = set('\\{}|<>" ')


def _record_text(text: str) -> str:
    return "".join("\\" + ch if ch in _RECORD_SPECIAL else ch for ch in text)


def _quoted(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def emit_uml_dot(model: OOModel, metrics: Optional[MetricsReport] = None) -> str:
    """Render classes as three-compartment record nodes, subclasses pointing at parents.

    ``metrics`` is accepted for interface symmetry with the other emitters;
    when given, NOM/NOA/DIT are added as a node tooltip.
    """
    by_name = metrics.by_name() if metrics else {}
    lines = [
        "digraph classes {",
        '  graph [rankdir=BT, fontname="Helvetica"];',
        '  node [shape=record, fontname="Helvetica", fontsize=10];',
        "  edge [arrowhead=empty];",
    ]
    for name in sorted(model.classes):
        entity = model.classes[name]
        attributes = "".join(_record_text(a) + "\\l" for a in sorted(entity.attributes))
        methods = "".join(_record_text(m + "()") + "\\l" for m in sorted(entity.methods))
        label = "{" + _record_text(name) + "|" + attributes + "|" + methods + "}"
        attrs = f'label="{label}"'
        if name in by_name:
            m = by_name[name]
            attrs += f', tooltip="NOM={m.nom} NOA={m.noa} DIT={m.dit}"'
        lines.append(f"  {_quoted(name)} [{attrs}];")
    for edge in sorted(model.edges, key=lambda e: (e.subclass, e.superclass)):
        lines.append(f"  {_quoted(edge.subclass)} -> {_quoted(edge.superclass)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
