"""Report emission: CSV, JSON, and a static SVG stem plot.

Rows are flat key/value dicts.  Numeric fields are serialized with
`repr`, which round-trips every float bit-exactly, so re-parsing an
emitted report reproduces the values identically.  Emission is fully
deterministic: same rows, same bytes.
"""

from __future__ import annotations

import io
import json
from typing import Mapping, Sequence

ReportRow = Mapping[str, object]

FORMATS = ("csv", "json", "plot-svg")

# Fixed column order for scan reports.
SCAN_COLUMNS = ("l", "magnitude", "verdict", "complement", "kind", "M", "threshold")


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(rows: Sequence[ReportRow]) -> bytes:
    if not rows:
        return b""
    columns = list(rows[0].keys())
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_cell(row.get(c)) for c in columns) + "\n")
    return out.getvalue().encode("utf-8")


def emit_json(rows: Sequence[ReportRow]) -> bytes:
    return (json.dumps([dict(r) for r in rows], indent=2) + "\n").encode("utf-8")


def emit_report(
    rows: Sequence[ReportRow],
    format: str = "csv",
    threshold: float | None = None,
    allow_empty: bool = False,
) -> bytes:
    """Serialize rows in the requested format.

    Empty row lists are only emitted when explicitly allowed (an empty
    JSON report is `[]`, an empty CSV report is empty bytes).
    """
    if format not in FORMATS:
        raise ValueError(f"unknown report format {format!r}")
    if not rows and not allow_empty:
        raise ValueError("refusing to emit an empty report; pass allow_empty")
    if format == "csv":
        return emit_csv(rows)
    if format == "json":
        return emit_json(rows)
    return render_stem_svg(rows, threshold=threshold).encode("utf-8")


def _fmt_coord(x: float) -> str:
    return f"{x:.2f}"


def render_stem_svg(
    rows: Sequence[ReportRow],
    threshold: float | None = None,
    title: str = "sum magnitude vs trial factor",
) -> str:
    """Stem plot of magnitude against trial factor, one stem per row.

    Rows must carry an `l` (or `trial`) key and a `magnitude` key.  A
    horizontal line marks the classification threshold when given.
    """
    points = []
    for row in rows:
        l = row.get("l", row.get("trial"))
        points.append((int(l), float(row["magnitude"])))  # type: ignore[arg-type]
    width, height = 840.0, 420.0
    left, right, top, bottom = 60.0, 20.0, 24.0, 48.0
    plot_w = width - left - right
    plot_h = height - top - bottom
    xs = [p[0] for p in points]
    lo = min(xs) - 0.5 if points else 0.0
    hi = max(xs) + 0.5 if points else 1.0
    span = hi - lo or 1.0
    y_max = 1.05

    def px(x: float) -> float:
        return left + (x - lo) / span * plot_w

    def py(y: float) -> float:
        return top + (1.0 - y / y_max) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<title>{title}</title>',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<line class="axis" x1="{_fmt_coord(left)}" y1="{_fmt_coord(py(0.0))}" '
        f'x2="{_fmt_coord(width - right)}" y2="{_fmt_coord(py(0.0))}" stroke="black"/>',
        f'<line class="axis" x1="{_fmt_coord(left)}" y1="{_fmt_coord(py(0.0))}" '
        f'x2="{_fmt_coord(left)}" y2="{_fmt_coord(top)}" stroke="black"/>',
    ]
    for x, mag in points:
        parts.append(
            f'<line class="stem" x1="{_fmt_coord(px(x))}" y1="{_fmt_coord(py(0.0))}" '
            f'x2="{_fmt_coord(px(x))}" y2="{_fmt_coord(py(mag))}" stroke="steelblue" '
            'stroke-width="2"/>'
        )
        parts.append(
            f'<circle class="head" cx="{_fmt_coord(px(x))}" cy="{_fmt_coord(py(mag))}" '
            'r="3" fill="steelblue"/>'
        )
    if threshold is not None:
        parts.append(
            f'<line class="threshold" x1="{_fmt_coord(left)}" '
            f'y1="{_fmt_coord(py(threshold))}" x2="{_fmt_coord(width - right)}" '
            f'y2="{_fmt_coord(py(threshold))}" stroke="crimson" stroke-dasharray="6 4"/>'
        )
    parts.append(
        f'<text x="{_fmt_coord(width / 2)}" y="{_fmt_coord(height - 12)}" '
        'text-anchor="middle" font-size="13">trial factor l</text>'
    )
    parts.append(
        f'<text x="16" y="{_fmt_coord(height / 2)}" text-anchor="middle" '
        f'font-size="13" transform="rotate(-90 16 {_fmt_coord(height / 2)})">|A|</text>'
    )
    parts.append("</svg>\n")
    return "\n".join(parts)
