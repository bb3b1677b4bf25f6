"""Text and SVG pictures of diagrams."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .diagram import Diagram


def render_text(d: Diagram) -> str:
    """One line per arc, listed from the top of the picture down."""
    lines = [f"{d.left} left, {d.right} right, width {d.width}"]
    arcs = []
    for a, b in zip(d.larc_left, d.larc_right):
        arcs.append((max(a, b), f"larc  L{a} -- R{b}"))
    for a in d.left_sarcs:
        arcs.append((a, f"sarc  L{a} -)"))
    for b in d.right_sarcs:
        arcs.append((b, f"sarc  (- R{b}"))
    for _, text in sorted(arcs, key=lambda t: (-t[0], t[1])):
        lines.append(text)
    return "\n".join(lines)


def render_svg(d: Diagram, unit: int = 30, width: int = 120) -> str:
    """Larcs are monotone cubic curves; sarcs are half-arcs hanging off a boundary line."""
    h = unit * (max(d.left, d.right, 1) + 1)

    def y(i: int) -> int:
        return h - unit * i

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * unit}" height="{h}" '
        f'viewBox="{-unit} 0 {width + 2 * unit} {h}">',
        f"<title>{escape(str(d))}</title>",
        f'<line x1="0" y1="0" x2="0" y2="{h}" stroke="black"/>',
        f'<line x1="{width}" y1="0" x2="{width}" y2="{h}" stroke="black"/>',
    ]
    mid = width // 2
    for a, b in zip(d.larc_left, d.larc_right):
        parts.append(f'<path class="larc" d="M 0 {y(a)} C {mid} {y(a)}, {mid} {y(b)}, {width} {y(b)}" '
                     f'fill="none" stroke="black"/>')
    r = unit // 3
    for a in d.left_sarcs:
        parts.append(f'<path class="sarc" d="M 0 {y(a)} A {r} {r} 0 0 1 {r} {y(a) - r}" fill="none" stroke="black"/>')
    for b in d.right_sarcs:
        parts.append(f'<path class="sarc" d="M {width} {y(b)} A {r} {r} 0 0 0 {width - r} {y(b) - r}" '
                     f'fill="none" stroke="black"/>')
    for i in range(1, d.left + 1):
        parts.append(f'<circle cx="0" cy="{y(i)}" r="2"/>')
    for i in range(1, d.right + 1):
        parts.append(f'<circle cx="{width}" cy="{y(i)}" r="2"/>')
    parts.append("</svg>")
    return "\n".join(parts)
