"""Deterministic SVG figures of walls, grid drawings and embeddings."""

from __future__ import annotations

from .drawing import GraphInput, GridDrawing
from .embedder import EmbeddingResult, ScaledLayout
from .errors import RenderError
from .wall import WallDims, iter_edges

DEFAULT_CAP = 5000
# wall vertices and edges are only drawn individually up to this side length
DETAIL_LIMIT = 120
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22")


def _header(width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]


def _check_cap(dims: WallDims, cap: int) -> None:
    if max(dims.rows, dims.cols) > cap:
        raise RenderError(
            f"wall side {max(dims.rows, dims.cols)} exceeds the render cap {cap}; "
            "use --sigma-override for a smaller, renderable instance or raise --cap"
        )


class _Frame:
    """Map wall (row, col) to SVG (x, y): columns left to right, rows top to bottom."""

    def __init__(self, dims: WallDims, size: float = 800.0):
        self.scale = size / max(dims.rows, dims.cols)
        self.pad = 10.0
        self.width = dims.cols * self.scale + 2 * self.pad
        self.height = dims.rows * self.scale + 2 * self.pad

    def xy(self, row, col) -> tuple[float, float]:
        return (self.pad + (col - 0.5) * self.scale, self.pad + (row - 0.5) * self.scale)


def _wall_detail(dims: WallDims, fr: _Frame) -> list[str]:
    out = ['<g stroke="#bbbbbb" stroke-width="0.6">']
    for a, b in iter_edges(dims):
        (x1, y1), (x2, y2) = fr.xy(*a), fr.xy(*b)
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
    out.append("</g>")
    r = max(0.5, min(3.0, fr.scale / 5))
    out.append('<g fill="#888888">')
    for i in range(1, dims.rows + 1):
        for j in range(1, dims.cols + 1):
            x, y = fr.xy(i, j)
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}"/>')
    out.append("</g>")
    return out


def render_wall(dims: WallDims, cap: int = DEFAULT_CAP) -> str:
    """The bare wall: every edge and one circle per vertex."""
    _check_cap(dims, cap)
    if max(dims.rows, dims.cols) > DETAIL_LIMIT:
        raise RenderError(f"bare wall renders are limited to side {DETAIL_LIMIT}")
    fr = _Frame(dims)
    return "\n".join([*_header(fr.width, fr.height), *_wall_detail(dims, fr), "</svg>"]) + "\n"


def render_drawing(graph: GraphInput, d: GridDrawing, size: float = 600.0) -> str:
    step = size / max(1, d.bound)
    pad = step / 2 + 10

    def xy(v):
        x, y = d.coords[v]
        return pad + x * step, pad + (d.bound - 1 - y) * step

    side = (d.bound - 1) * step + 2 * pad
    out = _header(side, side)
    out.append('<g fill="#dddddd">')
    for a in range(d.bound):
        for b in range(d.bound):
            out.append(f'<circle cx="{pad + a * step:.2f}" cy="{pad + b * step:.2f}" r="1.5"/>')
    out.append("</g>")
    out.append('<g stroke="black" stroke-width="2">')
    for u, v in graph.edge_keys():
        (x1, y1), (x2, y2) = xy(u), xy(v)
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
    out.append("</g>")
    for v in sorted(d.coords):
        x, y = xy(v)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="6" fill="white" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{y + 4:.2f}" font-size="10" text-anchor="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_embedding(
    result: EmbeddingResult,
    layout: ScaledLayout | None = None,
    cap: int = DEFAULT_CAP,
) -> str:
    """Colored edge paths over the wall; boxes and margins when ``layout`` is given."""
    dims = result.dims
    _check_cap(dims, cap)
    fr = _Frame(dims)
    out = _header(fr.width, fr.height)
    if max(dims.rows, dims.cols) <= DETAIL_LIMIT:
        out += _wall_detail(dims, fr)
    else:
        x0, y0 = fr.xy(0.5, 0.5)
        out.append(
            f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{dims.cols * fr.scale:.2f}" '
            f'height="{dims.rows * fr.scale:.2f}" fill="none" stroke="#bbbbbb"/>'
        )
    if layout is not None:
        margin_w = max(4 * fr.scale, 0.5)
        out.append(f'<g stroke="#f2e6a0" stroke-width="{margin_w:.2f}" stroke-linecap="round">')
        for seg in layout.margins.values():
            (x1, y1), (x2, y2) = fr.xy(*seg.a), fr.xy(*seg.b)
            out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
        out.append("</g>")
        out.append('<g fill="none">')
        for v in sorted(layout.centers):
            for box, colour in ((layout.large_boxes[v], "#666666"), (layout.small_boxes[v], "#aaaaaa")):
                (r, c), rad = box.center, box.radius
                x, y = fr.xy(r - rad, c - rad)
                w = 2 * rad * fr.scale
                out.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{w:.2f}" stroke="{colour}"/>')
        out.append("</g>")
    sw = max(1.0, min(3.0, fr.scale / 2))
    for i, (e, path) in enumerate(sorted(result.g.items())):
        rows, cols = path.corners()
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (fr.xy(r, c) for r, c in zip(rows.tolist(), cols.tolist())))
        colour = PALETTE[i % len(PALETTE)]
        out.append(
            f'<polyline class="edge" data-edge="{e[0]}-{e[1]}" points="{pts}" fill="none" '
            f'stroke="{colour}" stroke-width="{sw:.2f}"/>'
        )
    for v, x in sorted(result.f.items()):
        cx, cy = fr.xy(*x)
        out.append(f'<circle class="vertex" cx="{cx:.2f}" cy="{cy:.2f}" r="{2 * sw:.2f}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
