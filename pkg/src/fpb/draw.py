"""SVG picture of a basket surface: the disk as a rectangle, bands as
semicircular strips over its top edge, painted back to front by page."""
from __future__ import annotations

from .code import BasketCode, as_code

UNIT = 40.0
PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
           "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd")


def _strip_path(left: float, right: float, width: float, base: float) -> str:
    cx = (left + right) / 2
    ro = (right - left) / 2 + width
    ri = (right - left) / 2 - width
    return (
        f"M {cx - ro:.2f} {base:.2f} A {ro:.2f} {ro:.2f} 0 0 1 {cx + ro:.2f} {base:.2f} "
        f"L {cx + ri:.2f} {base:.2f} A {ri:.2f} {ri:.2f} 0 0 0 {cx - ri:.2f} {base:.2f} Z"
    )


def basket_svg(code, unit: float = UNIT) -> str:
    code: BasketCode = as_code(code)
    m = len(code.word)
    width = max(m, 1) * unit + unit
    height = (m / 2 + 1) * unit + 2 * unit
    base = (m / 2 + 1) * unit
    half = unit * 0.2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="{unit / 2:.2f}" y="{base:.2f}" width="{m * unit:.2f}" height="{unit:.2f}" '
        'fill="#eeeeee" stroke="black"/>',
    ]
    for label in range(1, code.n + 1):  # back to front
        p, q = code.feet(label)
        left, right = unit * (p + 1), unit * (q + 1)
        color = PALETTE[(label - 1) % len(PALETTE)]
        out.append(f'<path d="{_strip_path(left, right, half, base)}" fill="{color}" '
                   'fill-opacity="0.9" stroke="black" stroke-width="1"/>')
    for pos, label in enumerate(code.word):
        out.append(f'<text x="{unit * (pos + 1):.2f}" y="{base + unit * 0.7:.2f}" '
                   f'font-size="{unit * 0.4:.1f}" text-anchor="middle">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(code, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(basket_svg(code))
