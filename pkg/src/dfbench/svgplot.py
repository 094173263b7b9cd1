"""Dependency-free SVG scatter plots, colored by class with a legend.

Output is deterministic for fixed inputs: coordinates are formatted with a
fixed precision and classes are drawn in vocabulary order.
"""

from __future__ import annotations

import numpy as np

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

WIDTH = 900
HEIGHT = 640
MARGIN = 50
LEGEND_WIDTH = 170


def scatter_svg(points: np.ndarray, labels, class_names, path, title: str = "") -> None:
    """Scatter the first two columns of points, one color per class."""
    points = np.asarray(points, dtype=np.float64)[:, :2]
    labels = np.asarray(labels, dtype=np.int64)
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    plot_w = WIDTH - 2 * MARGIN - LEGEND_WIDTH
    plot_h = HEIGHT - 2 * MARGIN

    def to_px(p):
        x = MARGIN + (p[0] - lo[0]) / span[0] * plot_w
        y = MARGIN + plot_h - (p[1] - lo[1]) / span[1] * plot_h
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#444444" stroke-width="1"/>',
    ]
    if title:
        parts.append(
            f'<text x="{MARGIN}" y="{MARGIN - 18}" font-family="sans-serif" '
            f'font-size="16" fill="#222222">{_escape(title)}</text>'
        )
    for cls in range(len(class_names)):
        color = PALETTE[cls % len(PALETTE)]
        rows = np.flatnonzero(labels == cls)
        dots = []
        for i in rows:
            x, y = to_px(points[i])
            dots.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}" fill-opacity="0.75"/>')
        parts.append(f'<g class="cls{cls}">' + "".join(dots) + "</g>")
    legend_x = WIDTH - MARGIN - LEGEND_WIDTH + 20
    for cls, name in enumerate(class_names):
        color = PALETTE[cls % len(PALETTE)]
        y = MARGIN + 20 + cls * 24
        parts.append(f'<circle cx="{legend_x}" cy="{y}" r="6" fill="{color}"/>')
        parts.append(
            f'<text x="{legend_x + 14}" y="{y + 5}" font-family="sans-serif" '
            f'font-size="13" fill="#222222">{_escape(name)}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
