"""Class-level and system-level metrics over a detected model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .detector import OOModel
from .tree import Program

METRIC_NAMES = ("nom", "noa", "children", "dit")


@dataclass(frozen=True)
class ClassMetrics:
    class_name: str
    package: str
    nom: int
    noa: int
    children_count: int
    dit: int

    def value(self, metric: str) -> int:
        if metric == "children":
            return self.children_count
        if metric in ("nom", "noa", "dit"):
            return getattr(self, metric)
        raise KeyError(metric)


@dataclass(frozen=True)
class PackageMetrics:
    path: str
    classes: int
    methods: int
    attributes: int
    loc: int
    lines: int


@dataclass
class MetricsReport:
    noc: int = 0
    total_methods: int = 0
    total_attributes: int = 0
    total_loc: int = 0
    total_lines: int = 0
    per_class: list[ClassMetrics] = field(default_factory=list)
    per_package: dict[str, PackageMetrics] = field(default_factory=dict)

    def by_name(self) -> dict[str, ClassMetrics]:
        return {m.class_name: m for m in self.per_class}

    @property
    def total_children(self) -> int:
        return sum(m.children_count for m in self.per_class)

    @property
    def max_dit(self) -> int:
        return max((m.dit for m in self.per_class), default=0)


def depth_of_inheritance(model: OOModel, name: str) -> int:
    """Number of superclass links between a class and its root (root is 0)."""
    return sum(1 for _ in model.ancestors(name))


def compute_metrics(model: OOModel, program: Optional[Program] = None) -> MetricsReport:
    """NOC, per-class NOM/NOA/children/DIT and per-file aggregates.

    Line counts come from ``program`` when given, otherwise from the
    package records stored in the model.
    """
    per_class = []
    for name in sorted(model.classes):
        entity = model.classes[name]
        per_class.append(ClassMetrics(name, entity.file_id, len(entity.methods),
                                      len(entity.attributes), len(entity.children),
                                      depth_of_inheritance(model, name)))

    sizes = {path: (pkg.loc, pkg.lines) for path, pkg in model.packages.items()}
    if program is not None:
        sizes = {f.path: (f.loc, f.raw_line_count) for f in program.files}
    per_package = {}
    for path in sorted(sizes.keys() | {m.package for m in per_class}):
        members = [m for m in per_class if m.package == path]
        loc, lines = sizes.get(path, (0, 0))
        per_package[path] = PackageMetrics(path, len(members), sum(m.nom for m in members),
                                           sum(m.noa for m in members), loc, lines)

    return MetricsReport(
        noc=len(per_class),
        total_methods=sum(m.nom for m in per_class),
        total_attributes=sum(m.noa for m in per_class),
        total_loc=sum(loc for loc, _ in sizes.values()),
        total_lines=sum(lines for _, lines in sizes.values()),
        per_class=per_class,
        per_package=per_package,
    )
