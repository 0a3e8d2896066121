"""Minimal deterministic SVG scatter and histogram plots."""
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 60, 20, 40, 50


def _frame(title, xlabel, ylabel, xlim, ylim, body):
    x0, x1 = xlim
    y0, y1 = ylim
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for k in range(5):
        fx = k / 4
        xv = x0 + fx * (x1 - x0)
        yv = y0 + fx * (y1 - y0)
        px = LEFT + fx * pw
        py = TOP + ph - fx * ph
        lines.append(f'<line x1="{px:.1f}" y1="{TOP + ph}" x2="{px:.1f}" y2="{TOP + ph + 5}" stroke="black"/>')
        lines.append(f'<text x="{px:.1f}" y="{TOP + ph + 18}" text-anchor="middle">{xv:.4g}</text>')
        lines.append(f'<line x1="{LEFT - 5}" y1="{py:.1f}" x2="{LEFT}" y2="{py:.1f}" stroke="black"/>')
        lines.append(f'<text x="{LEFT - 8}" y="{py + 4:.1f}" text-anchor="end">{yv:.4g}</text>')
    lines.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    lines.append(
        f'<text x="15" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 15 {TOP + ph / 2:.1f})">{escape(ylabel)}</text>'
    )
    lines.extend(body)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _mapper(xlim, ylim):
    x0, x1 = xlim
    y0, y1 = ylim
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM
    sx = pw / (x1 - x0) if x1 != x0 else 0.0
    sy = ph / (y1 - y0) if y1 != y0 else 0.0
    return lambda x, y: (LEFT + (x - x0) * sx, TOP + ph - (y - y0) * sy)


def scatter(xs, ys, title="", xlabel="", ylabel="", ylim=(-1.0, 1.0)) -> str:
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    xlim = (min(xs), max(xs)) if xs else (0.0, 1.0)
    if xlim[0] == xlim[1]:
        xlim = (xlim[0] - 0.5, xlim[1] + 0.5)
    to_px = _mapper(xlim, ylim)
    body = []
    for x, y in zip(xs, ys):
        px, py = to_px(x, y)
        body.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="1.5" fill="steelblue"/>')
    return _frame(title, xlabel, ylabel, xlim, ylim, body)


def histogram(edges, counts, title="", xlabel="", ylabel="count") -> str:
    edges = [float(e) for e in edges]
    counts = [int(c) for c in counts]
    top = max(counts) if counts and max(counts) > 0 else 1
    xlim, ylim = (edges[0], edges[-1]), (0.0, float(top))
    to_px = _mapper(xlim, ylim)
    body = []
    for left, right, c in zip(edges, edges[1:], counts):
        x0, y0 = to_px(left, c)
        x1, ybase = to_px(right, 0.0)
        body.append(
            f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{x1 - x0:.2f}" height="{ybase - y0:.2f}" '
            f'fill="steelblue" stroke="white"/>'
        )
    return _frame(title, xlabel, ylabel, xlim, ylim, body)
