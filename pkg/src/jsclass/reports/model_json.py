"""Canonical JSON export of a detected model, and loading it back."""

from __future__ import annotations

import json
from typing import Optional

from ..detector import ClassEntity, InheritanceEdge, Member, OOModel, Package
from ..diagnostics import AnalysisError, Diagnostic
from ..metrics import MetricsReport, compute_metrics
from ..tree import SourceSpan

SCHEMA_VERSION = 1


def _span(span: Optional[SourceSpan]):
    return span.to_dict() if span else None


def _member(member: Member) -> dict:
    return {"name": member.name, "origin": member.origin, "span": _span(member.span)}


def model_to_dict(model: OOModel, metrics: Optional[MetricsReport] = None) -> dict:
    metrics = metrics or compute_metrics(model)
    by_name = metrics.by_name()
    classes = []
    for name in sorted(model.classes):
        entity = model.classes[name]
        m = by_name[name]
        classes.append({
            "name": name,
            "package": entity.file_id,
            "span": _span(entity.span),
            "attributes": [_member(entity.attributes[a]) for a in sorted(entity.attributes)],
            "methods": [_member(entity.methods[k]) for k in sorted(entity.methods)],
            "superclass": entity.superclass,
            "subclasses": sorted(entity.children),
            "nom": m.nom,
            "noa": m.noa,
            "children": m.children_count,
            "dit": m.dit,
        })
    doc = {"schema_version": SCHEMA_VERSION}
    if model.name:
        doc["name"] = model.name
    doc.update({
        "noc": model.noc,
        "classes": classes,
        "edges": [{"subclass": e.subclass, "superclass": e.superclass, "pattern": e.pattern,
                   "span": _span(e.span)}
                  for e in sorted(model.edges, key=lambda e: (e.subclass, e.superclass))],
        "packages": [{"path": p.path, "classes": sorted(p.classes), "loc": p.loc,
                      "lines": p.lines, "loc_approximate": p.loc_approximate}
                     for p in (model.packages[k] for k in sorted(model.packages))],
        "diagnostics": [d.to_dict() for d in model.diagnostics],
    })
    return doc


def emit_model_json(model: OOModel, metrics: Optional[MetricsReport] = None) -> str:
    return json.dumps(model_to_dict(model, metrics), indent=2, ensure_ascii=True) + "\n"


def _load_span(data) -> Optional[SourceSpan]:
    return SourceSpan.from_dict(data) if data else None


def load_model_json(text: str) -> OOModel:
    """Rebuild an OOModel from :func:`emit_model_json` output.

    Raises ``AnalysisError`` (``bad_json`` or ``bad_schema``).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AnalysisError("bad_json", f"model file is not JSON: {exc.msg}") from None
    if not isinstance(doc, dict) or "schema_version" not in doc:
        raise AnalysisError("bad_schema", "not a model document")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise AnalysisError("bad_schema",
                            f"unsupported schema_version {doc['schema_version']!r} "
                            f"(expected {SCHEMA_VERSION})")
    try:
        model = OOModel(name=doc.get("name"))
        for c in doc["classes"]:
            entity = ClassEntity(c["name"], c["package"], span=_load_span(c["span"]),
                                 superclass=c["superclass"], children=list(c["subclasses"]))
            for kind, target in (("attribute", entity.attributes), ("method", entity.methods)):
                for m in c[kind + "s"]:
                    target[m["name"]] = Member(m["name"], kind, m["origin"], _load_span(m["span"]))
            model.classes[entity.name] = entity
        model.edges = [InheritanceEdge(e["subclass"], e["superclass"], e["pattern"],
                                       _load_span(e["span"])) for e in doc["edges"]]
        for p in doc["packages"]:
            model.packages[p["path"]] = Package(p["path"], list(p["classes"]), p["loc"],
                                                p["lines"], p["loc_approximate"])
        model.diagnostics = [Diagnostic.from_dict(d) for d in doc["diagnostics"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise AnalysisError("bad_schema", f"malformed model document: {exc}") from None
    return model
