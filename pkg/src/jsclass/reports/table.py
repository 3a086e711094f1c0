"""Per-class metric tables as CSV or aligned text."""

from __future__ import annotations

import csv
import io

from ..metrics import MetricsReport

HEADER = ("class", "package", "nom", "noa", "children", "dit")


def _rows(metrics: MetricsReport) -> list[tuple]:
    rows = [(m.class_name, m.package, m.nom, m.noa, m.children_count, m.dit)
            for m in metrics.per_class]
    summary = f"noc={metrics.noc} lines={metrics.total_lines} loc={metrics.total_loc}"
    rows.append(("SYSTEM", summary, metrics.total_methods, metrics.total_attributes,
                 metrics.total_children, metrics.max_dit))
    return rows


def emit_metrics_table(metrics: MetricsReport, format: str = "csv") -> str:
    """One row per class (name-sorted) and a closing SYSTEM row.

    In the SYSTEM row the package column carries ``noc=, lines=, loc=`` and
    the numeric columns hold totals (``dit`` holds the maximum).
    """
    rows = _rows(metrics)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(HEADER)
        writer.writerows(rows)
        return buf.getvalue()
    if format != "text":
        raise ValueError(f"unknown table format {format!r}")
    cells = [HEADER] + [tuple(str(v) for v in row) for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(HEADER))]
    lines = []
    for index, row in enumerate(cells):
        parts = [v.ljust(w) if i < 2 else v.rjust(w) for i, (v, w) in enumerate(zip(row, widths))]
        lines.append("  ".join(parts).rstrip())
        if index == 0 or index == len(cells) - 2:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
