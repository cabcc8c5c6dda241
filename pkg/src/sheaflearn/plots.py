"""Minimal deterministic SVG line charts, written by hand so that identical
report data yields byte-identical files."""

from __future__ import annotations

from pathlib import Path

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 50

STYLES = {
    "solid": "",
    "dashed": 'stroke-dasharray="8,5" ',
}
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]


def _span(values):
    lo, hi = min(values), max(values)
    if hi == lo:
        hi = lo + 1.0
    return lo, hi


def svg_line_chart(series, path, title="", xlabel="", ylabel="") -> None:
    """Render one panel to SVG.

    ``series`` is a list of (label, style, points) with style "solid" or
    "dashed" and points a list of (x, y). Axis ranges cover every plotted
    point exactly.
    """
    if not series or all(not pts for _, _, pts in series):
        raise ValueError("nothing to plot")
    xs = [x for _, _, pts in series for x, _ in pts]
    ys = [y for _, _, pts in series for _, y in pts]
    x_lo, x_hi = _span(xs)
    y_lo, y_hi = _span(ys)

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + plot_w * (x - x_lo) / (x_hi - x_lo)

    def py(y):
        return MARGIN_T + plot_h * (1.0 - (y - y_lo) / (y_hi - y_lo))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{title}</text>',
        # axes
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{HEIGHT - MARGIN_B}" '
        'stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" x2="{WIDTH - MARGIN_R}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
        # axis labels and range ticks
        f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="16" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {MARGIN_T + plot_h / 2:.1f})">{ylabel}</text>',
        f'<text x="{MARGIN_L}" y="{HEIGHT - MARGIN_B + 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="10">{x_lo:.6g}</text>',
        f'<text x="{WIDTH - MARGIN_R}" y="{HEIGHT - MARGIN_B + 16}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{x_hi:.6g}</text>',
        f'<text x="{MARGIN_L - 6}" y="{HEIGHT - MARGIN_B}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{y_lo:.6g}</text>',
        f'<text x="{MARGIN_L - 6}" y="{MARGIN_T + 4}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{y_hi:.6g}</text>',
    ]
    for i, (label, style, pts) in enumerate(series):
        if not pts:
            continue
        color = COLORS[i % len(COLORS)]
        dash = STYLES.get(style, "")
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="1.5" {dash}/>'
        )
        ly = MARGIN_T + 14 + 16 * i
        lx = WIDTH - MARGIN_R - 150
        out.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 28}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.5" {dash}/>'
        )
        out.append(
            f'<text x="{lx + 34}" y="{ly}" font-family="sans-serif" '
            f'font-size="12">{label}</text>'
        )
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")
