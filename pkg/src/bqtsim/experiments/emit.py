"""CSV and SVG writers. Output bytes depend only on the table contents."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from ..errors import BQTError
from .sweep import ResultTable

PALETTE = ("#000000", "#d62728", "#ff7f0e", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")
DASHES = ("", "6,3", "2,3", "6,3,2,3")

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 130, 30, 50


class EmptyTableError(BQTError, ValueError):
    pass


def format_value(x: float) -> str:
    return format(float(x), ".17g")


def emit_csv(table: ResultTable, path) -> None:
    if not table.rows:
        raise EmptyTableError("refusing to write an empty table")
    lines = [",".join(table.columns)]
    lines += [",".join(format_value(x) for x in row) for row in table.rows]
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def _param_column(table: ResultTable) -> str | None:
    for name in ("tau", "spectral_width"):
        if name in table.columns:
            return name
    return None


def emit_svg(table: ResultTable, column: str, path) -> None:
    """
    Plot ``column`` against rescaled time ``t/pi``.

    One polyline per u value. When the table spans several model parameters
    (surface data) each u value gets a heat-map panel instead.
    """
    if not table.rows:
        raise EmptyTableError("refusing to plot an empty table")
    if column not in table.columns:
        raise KeyError(column)
    pcol = _param_column(table)
    params = sorted(set(table.column(pcol))) if pcol else []
    if len(params) > 1:
        body = _heatmaps(table, column, pcol, params)
    else:
        body = _lines(table, column)
    doc = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        *body,
        "</svg>",
    ]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(doc) + "\n")


def _frame(x0, x1, y0, y1, xlabel, ylabel, px0, px1, py0, py1):
    out = [f'<rect x="{px0}" y="{py0}" width="{px1 - px0}" height="{py1 - py0}" fill="none" stroke="#000000"/>']
    for xv in _ticks(x0, x1):
        px = px0 + (xv - x0) / (x1 - x0 or 1) * (px1 - px0)
        out.append(f'<line x1="{_fmt(px)}" y1="{py1}" x2="{_fmt(px)}" y2="{py1 + 5}" stroke="#000000"/>')
        out.append(f'<text x="{_fmt(px)}" y="{py1 + 18}" text-anchor="middle">{xv:.3g}</text>')
    for yv in _ticks(y0, y1):
        py = py1 - (yv - y0) / (y1 - y0 or 1) * (py1 - py0)
        out.append(f'<line x1="{px0 - 5}" y1="{_fmt(py)}" x2="{px0}" y2="{_fmt(py)}" stroke="#000000"/>')
        out.append(f'<text x="{px0 - 8}" y="{_fmt(py + 4)}" text-anchor="end">{yv:.3g}</text>')
    out.append(f'<text x="{(px0 + px1) / 2:.1f}" y="{py1 + 38}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{(py0 + py1) / 2:.1f}" text-anchor="middle" transform="rotate(-90 16 {(py0 + py1) / 2:.1f})">{escape(ylabel)}</text>'
    )
    return out


def _lines(table: ResultTable, column: str) -> list[str]:
    xs = table.column("t_star") if "t_star" in table.columns else table.column("t")
    ys = table.column(column)
    us = table.column("u")
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    px0, px1, py0, py1 = LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM
    out = _frame(x0, x1, y0, y1, "t* = t/pi", column, px0, px1, py0, py1)
    for k, u in enumerate(sorted(set(us))):
        sel = us == u
        pts = " ".join(
            f"{_fmt(px0 + (x - x0) / (x1 - x0 or 1) * (px1 - px0))},{_fmt(py1 - (y - y0) / (y1 - y0) * (py1 - py0))}"
            for x, y in zip(xs[sel], ys[sel])
        )
        color = PALETTE[k % len(PALETTE)]
        dash = DASHES[k % len(DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{pts}"/>')
        ly = TOP + 16 + 18 * k
        out.append(f'<line x1="{px1 + 12}" y1="{ly}" x2="{px1 + 40}" y2="{ly}" stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{px1 + 46}" y="{ly + 4}">u = {u:g}</text>')
    return out


def _color(v: float, lo: float, hi: float) -> str:
    s = 0.0 if hi <= lo else (v - lo) / (hi - lo)
    s = min(1.0, max(0.0, s))
    r = int(round(255 * s))
    b = int(round(255 * (1 - s)))
    g = int(round(255 * (1 - abs(2 * s - 1)) * 0.8))
    return f"#{r:02x}{g:02x}{b:02x}"


def _heatmaps(table: ResultTable, column: str, pcol: str, params: list[float]) -> list[str]:
    us = sorted(set(table.column("u")))
    xs_all = table.column("t")
    vals = table.column(column)
    lo, hi = float(vals.min()), float(vals.max())
    times = sorted(set(xs_all))
    out = []
    panel_w = (WIDTH - LEFT - RIGHT - 20 * (len(us) - 1)) / len(us)
    ylabel = "tau" if pcol == "tau" else "Gamma/gamma"
    gamma = table.column("gamma")[0] if "gamma" in table.columns else 1.0
    yvals = [p if pcol == "tau" else p / gamma for p in params]
    col_t, col_p, col_u = table.columns.index("t"), table.columns.index(pcol), table.columns.index("u")
    col_v = table.columns.index(column)
    lookup = {(r[col_u], r[col_p], r[col_t]): r[col_v] for r in table.rows}
    for k, u in enumerate(us):
        px0 = LEFT + k * (panel_w + 20)
        px1 = px0 + panel_w
        py0, py1 = TOP, HEIGHT - BOTTOM
        cw = (px1 - px0) / len(times)
        ch = (py1 - py0) / len(params)
        for i, par in enumerate(params):
            for j, t in enumerate(times):
                v = lookup.get((u, par, t))
                if v is None or not math.isfinite(v):
                    continue
                out.append(
                    f'<rect x="{_fmt(px0 + j * cw)}" y="{_fmt(py1 - (i + 1) * ch)}" width="{_fmt(cw + 0.05)}" height="{_fmt(ch + 0.05)}" fill="{_color(v, lo, hi)}"/>'
                )
        out += _frame(times[0], times[-1], yvals[0], yvals[-1], f"t (u = {u:g})", ylabel if k == 0 else "", px0, px1, py0, py1)
    bx = WIDTH - RIGHT + 30
    for i in range(11):
        s = i / 10
        out.append(f'<rect x="{bx}" y="{_fmt(HEIGHT - BOTTOM - (i + 1) * 30)}" width="16" height="30" fill="{_color(lo + s * (hi - lo), lo, hi)}"/>')
    out.append(f'<text x="{bx + 22}" y="{HEIGHT - BOTTOM}">{lo:.3g}</text>')
    out.append(f'<text x="{bx + 22}" y="{HEIGHT - BOTTOM - 320}">{hi:.3g}</text>')
    out.append(f'<text x="{bx}" y="{TOP - 8}">{escape(column)}</text>')
    return out
