"""SVG rendering of instances and solutions (diagnostic figures only).

Requires vertex coordinates; instances without a coords section cannot be
drawn and no layout is attempted.
"""

from __future__ import annotations

from typing import Optional

from .embedding import PlanarEmbedding
from .pathunion import UnionResult

_PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
            "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"]


def render_svg(emb: PlanarEmbedding, result: Optional[UnionResult] = None,
               width: float = 640.0, margin: float = 30.0,
               vertex_labels: bool = False) -> str:
    if emb.coords is None:
        raise ValueError("instance carries no coordinates; nothing to draw")
    xs = emb.coords[:, 0]
    ys = emb.coords[:, 1]
    span_x = max(float(xs.max() - xs.min()), 1e-9)
    span_y = max(float(ys.max() - ys.min()), 1e-9)
    scale = (width - 2 * margin) / max(span_x, span_y)
    height = span_y * scale + 2 * margin

    def pt(v: int) -> tuple[float, float]:
        # flip y: SVG grows downward, coordinates grow upward
        x = margin + (float(xs[v]) - float(xs.min())) * scale
        y = height - (margin + (float(ys[v]) - float(ys.min())) * scale)
        return x, y

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" '
           f'width="{width:.0f}" height="{height:.0f}" '
           f'viewBox="0 0 {width:.0f} {height:.0f}">',
           '<rect width="100%" height="100%" fill="white"/>']
    # all edges
    for e in range(emb.m):
        u, v = emb.tail(2 * e), emb.head(2 * e)
        (x1, y1), (x2, y2) = pt(u), pt(v)
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" '
                   f'y2="{y2:.2f}" stroke="#d0d0d0" stroke-width="1"/>')
    # external boundary
    bpts = " ".join(f"{pt(int(v))[0]:.2f},{pt(int(v))[1]:.2f}"
                    for v in emb.outer_verts)
    out.append(f'<polygon points="{bpts}" fill="none" stroke="#a0a0a0" '
               f'stroke-width="2.5"/>')
    if result is not None and result.k:
        for i in range(1, result.k + 1):
            color = _PALETTE[(i - 1) % len(_PALETTE)]
            vs = result.path_vertices(i)
            pts = " ".join(f"{pt(v)[0]:.2f},{pt(v)[1]:.2f}" for v in vs)
            out.append(f'<polyline points="{pts}" fill="none" '
                       f'stroke="{color}" stroke-width="2" opacity="0.85"/>')
        for i, (s, t) in enumerate(result.inst.pairs, start=1):
            color = _PALETTE[(i - 1) % len(_PALETTE)]
            for v, tag in ((s, f"s{i}"), (t, f"t{i}")):
                x, y = pt(v)
                out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" '
                           f'fill="{color}"/>')
                out.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" '
                           f'font-size="11">{tag}</text>')
    if vertex_labels:
        for v in range(emb.n):
            x, y = pt(v)
            out.append(f'<text x="{x + 3:.2f}" y="{y + 3:.2f}" '
                       f'font-size="8" fill="#606060">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def save_svg(path: str, emb: PlanarEmbedding,
             result: Optional[UnionResult] = None, **kw):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(emb, result, **kw))
