"""CSV, JSON and SVG writers shared by the command line tools."""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Iterable, Mapping, Sequence

SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


def csv_text(rows: Iterable[Mapping], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c, "")) for c in columns])
    return buf.getvalue()


def write_text(text: str, path: str | None) -> None:
    """Write to ``path``, or to standard output for ``None`` and ``"-"``."""
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def write_csv(rows, columns, path=None) -> None:
    write_text(csv_text(rows, columns), path)


def write_json(obj, path=None) -> None:
    write_text(json.dumps(obj, indent=2) + "\n", path)


def svg_polylines(series: Mapping[str, tuple[Sequence[float], Sequence[float]]],
                  width: int = 640, height: int = 400, margin: int = 40,
                  title: str = "") -> str:
    """Line plot with one ``<polyline>`` per named series and a text legend."""
    xs = [x for xv, _ in series.values() for x in xv]
    ys = [y for _, yv in series.values() for y in yv]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(0.0, min(ys)), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def py(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
           f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
           f'y2="{height - margin}" stroke="black"/>',
           f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>']
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="{margin / 2:.1f}" text-anchor="middle">{title}</text>')
    for i, (name, (xv, yv)) in enumerate(series.items()):
        color = SVG_COLORS[i % len(SVG_COLORS)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xv, yv))
        out.append(f'<polyline fill="none" stroke="{color}" points="{pts}"><title>{name}</title></polyline>')
        out.append(f'<text x="{width - margin - 150}" y="{margin + 16 * (i + 1)}" '
                   f'fill="{color}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
