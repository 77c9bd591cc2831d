"""SVG output for tilings. Coordinates become floats only here."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import ColoringResult, Tiling

COLOR_MODES = ("outline", "coloring", "by_orientation")


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = 512
    stroke_width: float = 1.0
    color_mode: str = "outline"

    def __post_init__(self):
        if self.width_px < 64:
            raise ValueError("width_px must be at least 64")
        if self.stroke_width <= 0:
            raise ValueError("stroke_width must be positive")
        if self.color_mode not in COLOR_MODES:
            raise ValueError(f"color_mode must be one of {COLOR_MODES}")


def _fill(mode: str, k: int, tiling: Tiling, col: Optional[ColoringResult]) -> str:
    if mode == "coloring":
        return "#000000" if col.colors[k] else "#ffffff"
    if mode == "by_orientation":
        return "#f4b6b6" if tiling.tiles[k].mirrored else "#b6c8f4"
    return "none"


def render_svg(t: Tiling, col: Optional[ColoringResult] = None, opts: Optional[RenderOptions] = None) -> str:
    opts = opts or RenderOptions()
    if opts.color_mode == "coloring" and col is None:
        raise ValueError("coloring mode needs a ColoringResult")
    xs = [float(p[0]) for p in t.target]
    ys = [float(p[1]) for p in t.target]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    margin = 0.02 * (x1 - x0)
    w = x1 - x0 + 2 * margin
    h = y1 - y0 + 2 * margin
    k = opts.width_px / w
    height_px = round(h * k)

    def px(p):
        return f"{(float(p[0]) - x0 + margin) * k:.3f},{(y1 - float(p[1]) + margin) * k:.3f}"

    stroke = "#808080" if opts.color_mode == "coloring" else "#000000"
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opts.width_px}" height="{height_px}" '
        f'viewBox="0 0 {opts.width_px} {height_px}">',
    ]
    for i, tile in enumerate(t.tiles):
        pts = " ".join(px(p) for p in tile.points)
        out.append(
            f'<polygon points="{pts}" fill="{_fill(opts.color_mode, i, t, col)}" '
            f'stroke="{stroke}" stroke-width="{opts.stroke_width:g}"/>'
        )
    tri = " ".join(px(p) for p in t.target)
    out.append(f'<polygon points="{tri}" fill="none" stroke="#000000" stroke-width="{2 * opts.stroke_width:g}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
