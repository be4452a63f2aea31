"""Deterministic SVG scatter plots of projected probe vectors.

Markers are the group numbers in a fixed per-group palette.  Output is plain
SVG text with fixed-precision coordinates, so snapshots are stable.
"""

import numpy as np

from ..errors import ValidationError

GROUP_COLORS = {
    1: "red",
    2: "orange",
    3: "lime",
    4: "blue",
    5: "deepskyblue",
    6: "magenta",
    7: "dimgray",
    8: "olive",
    9: "green",
    10: "purple",
    11: "teal",
}

_SIZE = 640
_MARGIN = 48


def _scale(points):
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = np.where(hi - lo < 1e-12, 1.0, hi - lo)
    inner = _SIZE - 2 * _MARGIN

    def to_px(p):
        u = (p - lo) / span
        return _MARGIN + u[0] * inner, _SIZE - _MARGIN - u[1] * inner

    return to_px


def scatter_svg(projection, group_labels, title=""):
    """Render one layer's projection as an SVG string."""
    points = np.asarray(projection.points, dtype=np.float64)
    labels = list(group_labels)
    if len(labels) != len(points):
        raise ValidationError(
            f"{len(labels)} labels for {len(points)} points"
        )
    if len(points) == 0:
        raise ValidationError("nothing to plot")
    to_px = _scale(points)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_SIZE // 2}" y="24" text-anchor="middle" '
            f'font-size="16" fill="black">{title}</text>'
        )
    for p, gid in zip(points, labels):
        x, y = to_px(p)
        color = GROUP_COLORS.get(int(gid), "black")
        parts.append(
            f'<text class="marker" x="{x:.2f}" y="{y:.2f}" fill="{color}" '
            f'font-size="11" text-anchor="middle">{int(gid)}</text>'
        )
    seen = sorted({int(g) for g in labels})
    for row, gid in enumerate(seen):
        y = _MARGIN + row * 16
        color = GROUP_COLORS.get(gid, "black")
        parts.append(
            f'<g class="legend-entry">'
            f'<rect x="{_SIZE - 120}" y="{y - 9}" width="10" height="10" fill="{color}"/>'
            f'<text x="{_SIZE - 104}" y="{y}" font-size="11" fill="black">G{gid}</text>'
            f'</g>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def emit_scatter(projection, group_labels, path, title=""):
    """Write the scatter SVG to ``path``."""
    svg = scatter_svg(projection, group_labels, title=title)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return path
