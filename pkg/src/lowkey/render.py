"""Deterministic SVG output: slope graphs and paired CON/PageRank bar charts."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .lkl import CentralityReport, SlopeGraphSpec

CLASS_COLORS = {"neutral": "#999999", "con_up": "#d62728", "pr_up": "#1f77b4"}
CON_COLOR = "#1f77b4"
PR_COLOR = "#d62728"


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _svg_open(width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]


def render_slope_svg(spec: SlopeGraphSpec, top_k: int | None = None, title: str | None = None) -> str:
    """Two label columns, CON ranking on the left and PageRank on the right.

    Lines and labels are grey, red (CON ranks the node at least the movement
    threshold higher) or blue (PageRank does). With ``top_k`` only nodes in
    the top k of either ranking are drawn, at their true rank numbers.
    """
    entries = spec.entries
    if top_k is not None:
        entries = [e for e in entries if e.con_rank <= top_k or e.pr_rank <= top_k]
    left = sorted(entries, key=lambda e: e.con_rank)
    right = sorted(entries, key=lambda e: e.pr_rank)
    ly = {e.node.index: k for k, e in enumerate(left)}
    ry = {e.node.index: k for k, e in enumerate(right)}

    row_h, top, x_left, x_right, width = 18.0, 50.0, 170.0, 430.0, 600.0
    height = top + row_h * max(len(entries), 1) + 20
    out = _svg_open(width, height)
    if title:
        out.append(f'<text x="{_fmt(width / 2)}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<text x="{_fmt(x_left)}" y="38" text-anchor="end" font-weight="bold">CON</text>')
    out.append(f'<text x="{_fmt(x_right)}" y="38" font-weight="bold">PageRank</text>')

    # grey first so highlighted lines sit on top
    order = sorted(left, key=lambda e: (e.cls != "neutral", e.con_rank))
    for e in order:
        color = CLASS_COLORS[e.cls]
        y1 = top + row_h * ly[e.node.index]
        y2 = top + row_h * ry[e.node.index]
        out.append(
            f'<line x1="{_fmt(x_left + 6)}" y1="{_fmt(y1 - 4)}" x2="{_fmt(x_right - 6)}" y2="{_fmt(y2 - 4)}" '
            f'stroke="{color}" stroke-width="1.5" class="{e.cls}"/>'
        )
    for e in left:
        y = top + row_h * ly[e.node.index]
        out.append(
            f'<text x="{_fmt(x_left)}" y="{_fmt(y)}" text-anchor="end" fill="{CLASS_COLORS[e.cls]}">'
            f"{escape(e.node.label)} ({e.con_rank})</text>"
        )
    for e in right:
        y = top + row_h * ry[e.node.index]
        out.append(
            f'<text x="{_fmt(x_right)}" y="{_fmt(y)}" fill="{CLASS_COLORS[e.cls]}">'
            f"({e.pr_rank}) {escape(e.node.label)}</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_histogram_svg(report: CentralityReport, top_k: int | None = None, title: str | None = None) -> str:
    """Paired bars of normalized CON and PageRank, nodes ordered by epsilon descending."""
    records = report.records[:top_k] if top_k else report.records
    bar_w, gap, left, bottom, plot_h = 6.0, 6.0, 50.0, 90.0, 200.0
    width = left + max(len(records), 1) * (2 * bar_w + gap) + 20
    height = 40 + plot_h + bottom
    base = 40 + plot_h
    out = _svg_open(width, height)
    if title:
        out.append(f'<text x="{_fmt(width / 2)}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<line x1="{_fmt(left)}" y1="{_fmt(base)}" x2="{_fmt(width - 10)}" y2="{_fmt(base)}" stroke="#000000"/>')
    out.append(f'<line x1="{_fmt(left)}" y1="40" x2="{_fmt(left)}" y2="{_fmt(base)}" stroke="#000000"/>')
    for tick in (0.0, 0.5, 1.0):
        y = base - tick * plot_h
        out.append(f'<text x="{_fmt(left - 4)}" y="{_fmt(y + 4)}" text-anchor="end">{_fmt(tick)}</text>')
    for k, r in enumerate(records):
        x = left + gap / 2 + k * (2 * bar_w + gap)
        for j, (val, color, name) in enumerate(((r.con_norm, CON_COLOR, "con"), (r.pr_norm, PR_COLOR, "pr"))):
            h = val * plot_h
            out.append(
                f'<rect x="{_fmt(x + j * bar_w)}" y="{_fmt(base - h)}" width="{_fmt(bar_w)}" height="{_fmt(h)}" '
                f'fill="{color}" class="{name}"><title>{escape(r.node.label)} {name} {r.con_norm if j == 0 else r.pr_norm:.4f}</title></rect>'
            )
        lx, ly = x + bar_w, base + 8
        out.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="9" text-anchor="end" '
            f'transform="rotate(-90 {_fmt(lx)} {_fmt(ly)})">{escape(r.node.label)}</text>'
        )
    lx = width - 130
    out.append(f'<rect x="{_fmt(lx)}" y="28" width="10" height="10" fill="{CON_COLOR}"/>')
    out.append(f'<text x="{_fmt(lx + 14)}" y="37">CON (norm.)</text>')
    out.append(f'<rect x="{_fmt(lx)}" y="44" width="10" height="10" fill="{PR_COLOR}"/>')
    out.append(f'<text x="{_fmt(lx + 14)}" y="53">PageRank (norm.)</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_degree_histogram_svg(histogram: dict[int, int], title: str | None = None) -> str:
    """Bar chart of an in-degree histogram (degree on x, node count on y)."""
    if not histogram:
        histogram = {0: 0}
    max_deg = max(histogram)
    max_count = max(histogram.values()) or 1
    bar_w, left, plot_h = 4.0, 50.0, 200.0
    width = left + (max_deg + 1) * bar_w + 20
    base = 40 + plot_h
    out = _svg_open(width, base + 40)
    if title:
        out.append(f'<text x="{_fmt(width / 2)}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<line x1="{_fmt(left)}" y1="{_fmt(base)}" x2="{_fmt(width - 10)}" y2="{_fmt(base)}" stroke="#000000"/>')
    out.append(f'<text x="{_fmt(left - 4)}" y="44" text-anchor="end">{max_count}</text>')
    out.append(f'<text x="{_fmt(left)}" y="{_fmt(base + 16)}">0</text>')
    out.append(f'<text x="{_fmt(width - 10)}" y="{_fmt(base + 16)}" text-anchor="end">{max_deg}</text>')
    for deg in sorted(histogram):
        h = histogram[deg] / max_count * plot_h
        out.append(
            f'<rect x="{_fmt(left + deg * bar_w)}" y="{_fmt(base - h)}" width="{_fmt(bar_w)}" height="{_fmt(h)}" '
            f'fill="{CON_COLOR}"><title>{deg}: {histogram[deg]}</title></rect>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
