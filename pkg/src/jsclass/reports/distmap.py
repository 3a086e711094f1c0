"""Distribution map: one rectangle per file, one small square per class.

Squares whose chosen metric falls inside ``[min, max]`` are drawn in the
highlight color, the rest in the base color.  Packages are laid out left to
right and wrap at a fixed page width; classes fill a fixed-column grid.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from ..detector import OOModel
from ..diagnostics import AnalysisError
from ..metrics import METRIC_NAMES, MetricsReport

_COLOR_RE = re.compile(r"^(?:[a-zA-Z]+|#[0-9a-fA-F]{6})$")

SQUARE = 10
GAP = 4
PAD = 8
LABEL_HEIGHT = 16
CHAR_WIDTH = 6.5
PAGE_WIDTH = 960
HEADER_HEIGHT = 28


@dataclass(frozen=True)
class DistMapSpec:
    metric: str = "nom"
    min: Optional[int] = None
    max: Optional[int] = None
    highlight_color: str = "blue"
    base_color: str = "gray"
    columns: int = 8

    def __post_init__(self):
        if self.metric not in METRIC_NAMES:
            raise AnalysisError("bad_metric", f"unknown metric {self.metric!r}; "
                                              f"choose one of {', '.join(METRIC_NAMES)}")
        if self.min is not None and self.max is not None and self.min > self.max:
            raise AnalysisError("bad_spec", f"min {self.min} exceeds max {self.max}")
        for color in (self.highlight_color, self.base_color):
            if not _COLOR_RE.match(color):
                raise AnalysisError("bad_spec", f"invalid color {color!r}")
        if self.columns < 1:
            raise AnalysisError("bad_spec", "columns must be positive")

    def selects(self, value: int) -> bool:
        if self.min is not None and value < self.min:
            return False
        if self.max is not None and value > self.max:
            return False
        return True

    def describe(self) -> str:
        if self.min is None and self.max is None:
            return f"all classes ({self.metric})"
        if self.max is None:
            return f"{self.metric} >= {self.min}"
        if self.min is None:
            return f"{self.metric} <= {self.max}"
        return f"{self.min} <= {self.metric} <= {self.max}"


def _fmt(x: float) -> str:
    return f"{x:g}"


def emit_distribution_map(model: OOModel, metrics: MetricsReport, spec: DistMapSpec) -> str:
    values = {m.class_name: m.value(spec.metric) for m in metrics.per_class}
    cell = SQUARE + GAP
    boxes = []
    for path in sorted(model.packages):
        names = sorted(model.packages[path].classes)
        cols = max(1, min(len(names), spec.columns))
        rows = max(1, math.ceil(len(names) / spec.columns))
        width = max(cols * cell - GAP + 2 * PAD, len(path) * CHAR_WIDTH + 2 * PAD)
        height = LABEL_HEIGHT + rows * cell - GAP + 2 * PAD
        boxes.append((path, names, math.ceil(width), height))

    out = []
    x = y = PAD
    row_height = 0
    y += HEADER_HEIGHT
    placed = []
    for path, names, width, height in boxes:
        if x > PAD and x + width > PAGE_WIDTH:
            x = PAD
            y += row_height + PAD
            row_height = 0
        placed.append((path, names, x, y, width, height))
        x += width + PAD
        row_height = max(row_height, height)
    total_height = y + row_height + PAD
    total_width = max([PAGE_WIDTH] + [px + w + PAD for _, _, px, _, w, _ in placed])

    out.append('<?xml version="1.0" encoding="UTF-8" standalone="no"?>')
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
               f'width="{total_width}" height="{total_height}" '
               f'viewBox="0 0 {total_width} {total_height}" font-family="Helvetica" font-size="11">')
    title = f"Distribution map: {spec.describe()} in {spec.highlight_color}"
    if model.name:
        title = f"{model.name} - {title}"
    out.append(f'  <text x="{PAD}" y="{PAD + 12}">{escape(title)}</text>')
    for path, names, px, py, width, height in placed:
        out.append(f'  <g class="package" data-path={quoteattr(path)}>')
        out.append(f'    <rect class="package" x="{px}" y="{py}" width="{width}" height="{height}" '
                   f'fill="white" stroke="black"/>')
        out.append(f'    <text x="{px + PAD}" y="{py + PAD + 10}">{escape(path)}</text>')
        for i, name in enumerate(names):
            row, col = divmod(i, spec.columns)
            sx = px + PAD + col * cell
            sy = py + PAD + LABEL_HEIGHT + row * cell
            value = values.get(name, 0)
            fill = spec.highlight_color if spec.selects(value) else spec.base_color
            out.append(f'    <rect class="class" data-class={quoteattr(name)} data-value="{value}" '
                       f'x="{_fmt(sx)}" y="{_fmt(sy)}" width="{SQUARE}" height="{SQUARE}" '
                       f'fill="{fill}"><title>{escape(name)}: {spec.metric}={value}</title></rect>')
        out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
