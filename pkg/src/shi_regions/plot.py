"""SVG pictures of the two-dimensional Shi arrangements.

Supported: shi-a with n=2 (drawn in the x1,x2 plane), shi-a with n=3 (drawn
in the sum-zero plane, coordinates u = x1 - x2, v = x2 - x3, sheared so the
three directions meet at 60 degrees) and shi-c with n=2.  Each region is
clipped exactly to a bounding box and labeled by its sequence and partition.
"""
from __future__ import annotations

from fractions import Fraction
from math import sqrt

from .bijections import RegionAddress, phi
from .errors import ValidationError
from .geometry import build_arrangement, combinatorial_family, geometric_census
from .model import format_partition, format_sequence

PLOTTABLE = {("shi-a", 2), ("shi-a", 3), ("shi-c", 2)}

# bounding boxes in plot coordinates, chosen so every region keeps some area
_BOX = {
    ("shi-a", 2): (Fraction(-2), Fraction(3), Fraction(-2), Fraction(3)),
    ("shi-a", 3): (Fraction(-2), Fraction(3), Fraction(-2), Fraction(3)),
    ("shi-c", 2): (Fraction(-3, 2), Fraction(2), Fraction(-3, 2), Fraction(2)),
}

SIZE = 640
MARGIN = 20


def _plane_form(family: str, n: int, normal) -> tuple[Fraction, Fraction]:
    """Coefficients of ``normal . x`` in plot coordinates."""
    if n == 2:
        return Fraction(normal[0]), Fraction(normal[1])
    # x = (u + v, v, 0)
    return Fraction(normal[0]), Fraction(normal[0] + normal[1])


def _clip(poly, a, b, c, keep_positive: bool):
    """Sutherland-Hodgman against a*u + b*v >= c (or <= c)."""
    sign = 1 if keep_positive else -1

    def inside(p):
        return sign * (a * p[0] + b * p[1] - c) >= 0

    def cross(p, q):
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        t = fp / (fp - fq)
        return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))

    out = []
    for k, cur in enumerate(poly):
        prev = poly[k - 1]
        if inside(cur):
            if not inside(prev):
                out.append(cross(prev, cur))
            out.append(cur)
        elif inside(prev):
            out.append(cross(prev, cur))
    # drop repeated vertices
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _area(poly) -> Fraction:
    return sum(
        (poly[k - 1][0] * poly[k][1] - poly[k][0] * poly[k - 1][1] for k in range(len(poly))), Fraction(0)
    ) / 2


def _centroid(poly) -> tuple[Fraction, Fraction]:
    a = _area(poly)
    cx = cy = Fraction(0)
    for k in range(len(poly)):
        (x0, y0), (x1, y1) = poly[k - 1], poly[k]
        f = x0 * y1 - x1 * y0
        cx += (x0 + x1) * f
        cy += (y0 + y1) * f
    return cx / (6 * a), cy / (6 * a)


def region_cells(family: str, n: int) -> list[dict]:
    """One cell per region: clipped polygon (plot coordinates), sequence, partition."""
    family = family.lower()
    if (family, n) not in PLOTTABLE:
        raise ValidationError(f"no planar picture for {family} with n={n}")
    fam = combinatorial_family(family)
    arr = build_arrangement(family, n)
    umin, umax, vmin, vmax = _BOX[(family, n)]
    box = [(umin, vmin), (umax, vmin), (umax, vmax), (umin, vmax)]
    cells = []
    for region, label in geometric_census(fam, n).table:
        poly = box
        for h, s in zip(arr.hyperplanes, region.signs):
            a, b = _plane_form(family, n, h.normal)
            poly = _clip(poly, a, b, h.offset, s > 0)
            if not poly:
                break
        if len(poly) < 3 or _area(poly) == 0:
            raise AssertionError(f"region {region.signs} has no area inside the plot box")
        addr = RegionAddress(fam, label.window, label.antichain, 1 if fam == "A" else None)
        cells.append(
            {
                "polygon": poly,
                "sequence": format_sequence(phi(addr)),
                "partition": format_partition(addr.partition),
                "ceilings": len(region.ceilings),
            }
        )
    return cells


def _lines(family: str, n: int):
    """Each hyperplane clipped to the box, as a segment in plot coordinates."""
    arr = build_arrangement(family, n)
    umin, umax, vmin, vmax = _BOX[(family, n)]
    out = []
    for h in arr.hyperplanes:
        a, b = _plane_form(family, n, h.normal)
        c = h.offset
        pts = []
        if b != 0:
            for u in (umin, umax):
                v = (c - a * u) / b
                if vmin <= v <= vmax:
                    pts.append((u, v))
        if a != 0:
            for v in (vmin, vmax):
                u = (c - b * v) / a
                if umin <= u <= umax:
                    pts.append((u, v))
        pts = sorted(set(pts))
        if len(pts) >= 2:
            out.append((pts[0], pts[-1], h))
    return out


def _screen(family: str, n: int):
    umin, umax, vmin, vmax = _BOX[(family, n)]
    shear = family == "shi-a" and n == 3

    def raw(p):
        u, v = float(p[0]), float(p[1])
        if shear:
            return u + v / 2, v * sqrt(3) / 2
        return u, v

    corners = [raw(p) for p in ((umin, vmin), (umax, vmin), (umax, vmax), (umin, vmax))]
    xs = [x for x, _ in corners]
    ys = [y for _, y in corners]
    x0, y1 = min(xs), max(ys)
    scale = (SIZE - 2 * MARGIN) / max(max(xs) - x0, y1 - min(ys))

    def to_screen(p):
        x, y = raw(p)
        return MARGIN + (x - x0) * scale, MARGIN + (y1 - y) * scale

    return to_screen


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


_FILL = ("#f4f4f4", "#dbe8f5", "#b9d3ec", "#93bbe0")


def render_svg(family: str, n: int) -> str:
    family = family.lower()
    cells = region_cells(family, n)
    to_screen = _screen(family, n)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif">',
        f"<title>{family} n={n}: {len(cells)} regions</title>",
        '<g class="regions" stroke="none">',
    ]
    for cell in cells:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(to_screen, cell["polygon"]))
        fill = _FILL[min(cell["ceilings"], len(_FILL) - 1)]
        out.append(f'<polygon class="cell" points="{pts}" fill="{fill}"/>')
    out.append("</g>")
    out.append('<g class="hyperplanes" stroke-width="1.5">')
    for p, q, h in _lines(family, n):
        (x1, y1), (x2, y2) = to_screen(p), to_screen(q)
        color = "#333333" if h.central else "#c0392b"
        out.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{color}"><title>{h.label}</title></line>'
        )
    out.append("</g>")
    out.append('<g class="labels" text-anchor="middle">')
    for cell in cells:
        x, y = to_screen(_centroid(cell["polygon"]))
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(y - 2)}" font-size="11">{cell["sequence"]}</text>')
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(y + 9)}" font-size="7" fill="#555555">{cell["partition"]}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
