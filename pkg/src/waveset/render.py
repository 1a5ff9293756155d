"""Static SVG output: one polygon element per convex piece."""

from __future__ import annotations

import colorsys
from pathlib import Path
from typing import Any, Sequence
from xml.sax.saxutils import quoteattr

from .geometry import Region

GOLDEN = 0.618033988749895


def color(i: int) -> str:
    """Deterministic, well separated colours by index."""
    h = (i * GOLDEN) % 1.0
    r, g, b = colorsys.hls_to_rgb(h, 0.55, 0.65)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


def _fmt(v: float) -> str:
    return f"{v:.10g}"


def render_svg(regions: Sequence[tuple[Region, dict[str, Any] | None]], path: str | Path, width: int = 800) -> Path:
    """Write the regions as SVG and return the path.

    ``style`` may set ``fill``, ``stroke``, ``opacity`` and ``label``; pieces
    without a fill get ``color(k)`` for their running index ``k``. The y axis
    points up and the viewBox is the joint bounding box padded by 5%.
    """
    if not regions:
        raise ValueError("nothing to render")
    boxes = [r.bbox() for r, _ in regions if not r.is_empty]
    if not boxes:
        raise ValueError("all regions are empty")
    x0 = min(b[0] for b in boxes)
    y0 = min(b[1] for b in boxes)
    x1 = max(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    pad_x = 0.05 * (x1 - x0) or 0.05
    pad_y = 0.05 * (y1 - y0) or 0.05
    vx, vy = x0 - pad_x, -(y1 + pad_y)
    vw, vh = x1 - x0 + 2 * pad_x, y1 - y0 + 2 * pad_y
    height = max(1, round(width * vh / vw))
    stroke_w = 0.002 * max(vw, vh)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}">',
    ]
    k = 0
    for region, style in regions:
        style = style or {}
        group_attrs = f' data-label={quoteattr(str(style["label"]))}' if "label" in style else ""
        lines.append(f"<g{group_attrs}>")
        for piece in region.pieces:
            fill = style.get("fill", color(k))
            pts = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in piece.vertices)
            lines.append(
                f'<polygon points="{pts}" fill="{fill}" fill-opacity="{style.get("opacity", 0.85)}" '
                f'stroke="{style.get("stroke", "#222222")}" stroke-width="{_fmt(stroke_w)}"/>'
            )
            k += 1
        lines.append("</g>")
    lines.append("</svg>")
    out = Path(path)
    try:
        out.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror}") from exc
    return out
