"""Exact rational polygons for standard curves and their stacked diagrams.

Punctures sit at ``(v, 0)``.  The curve around ``S = {i1 < ... < ir}`` is a
rectangle spanning ``[i1 - h, ir + h] x [-h, h]`` with a narrow finger cut
down from the top edge at every skipped puncture, so the skipped punctures
stay outside.  Heights shrink with the slot index; the perturbation index
rescales each slot by a slot-dependent factor so that coincidences between
slots can be broken by retrying.

All coordinates are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .multicurve import Multicurve

Point = tuple  # (Fraction, Fraction)

DEFAULT_RETRIES = 8


class GenericityError(RuntimeError):
    pass


@dataclass(frozen=True)
class PLLoop:
    vertices: tuple
    height: int
    subset: tuple = ()

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


@dataclass(frozen=True)
class Crossing:
    point: Point
    upper: int
    lower: int
    upper_param: tuple  # (edge index, t)
    lower_param: tuple
    upper_dir: Point
    lower_dir: Point


@dataclass
class StackedDiagram:
    loops: list
    crossings: list
    n: int
    perturbation: int = 0
    ray_events: list = field(default_factory=list)  # per loop: [(edge, t, ray, y, dir)]


def slot_height(slot: int, total_slots: int, perturb: int = 0, retries: int = DEFAULT_RETRIES) -> Fraction:
    base = Fraction(1, 2) * (1 - Fraction(slot + 1, total_slots + 2))
    shrink = (1 - Fraction(perturb, 10 * (retries + 1))) ** (slot + 1)
    return base * shrink


def embed_subset_curve(S: Sequence[int], slot: int, n: int, total_slots: int | None = None,
                       perturb: int = 0, retries: int = DEFAULT_RETRIES) -> PLLoop:
    """Polygon enclosing exactly the punctures in ``S``."""
    s = sorted(set(S))
    if not s or s[0] < 1 or s[-1] > n:
        raise ValueError(f"subset {S} not inside 1..{n}")
    F = n if total_slots is None else total_slots
    if slot >= F + 1:
        raise ValueError("slot schedule exhausted")
    h = slot_height(slot, F, perturb, retries)
    w = h / 3
    floor = -h + h / 8
    lo, hi = s[0], s[-1]
    pts = [(lo - h, -h), (hi + h, -h), (hi + h, h)]
    for g in range(hi - 1, lo, -1):
        if g not in s:
            pts += [(g + w, h), (g + w, floor), (g - w, floor), (g - w, h)]
    pts.append((lo - h, h))
    pts = tuple((Fraction(x), Fraction(y)) for x, y in pts)
    return PLLoop(pts, height=F - slot, subset=tuple(s))


def _cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def ray_parity(p: Point, loop: PLLoop) -> bool:
    """Even-odd enclosure test along a ray whose slope avoids every vertex."""
    px, py = Fraction(p[0]), Fraction(p[1])
    k = 0
    while True:
        d = (Fraction(1), Fraction(k + 1, 7919))
        if all(_cross(d, _sub(v, (px, py))) != 0 for v in loop.vertices):
            break
        k += 1
    hits = 0
    for a, b in loop.edges():
        e = _sub(b, a)
        den = _cross(d, e)
        if den == 0:
            continue
        ap = _sub(a, (px, py))
        t = _cross(ap, e) / den  # along the ray
        u = _cross(ap, d) / den  # along the edge
        if t > 0 and 0 < u < 1:
            hits += 1
    return hits % 2 == 1


def _segment_hit(a, b, c, d):
    """Intersection of segments ab and cd: None, ('point', t, u) or ('bad',)."""
    r = _sub(b, a)
    s = _sub(d, c)
    den = _cross(r, s)
    ca = _sub(c, a)
    if den == 0:
        if _cross(ca, r) != 0:
            return None
        # collinear: any overlap or touch is degenerate
        rr = r[0] * r[0] + r[1] * r[1]
        t0 = (ca[0] * r[0] + ca[1] * r[1]) / rr
        t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        return ("bad",)
    t = _cross(ca, s) / den
    u = _cross(ca, r) / den
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if t in (0, 1) or u in (0, 1):
        return ("bad",)
    return ("point", t, u)


def _ray_events(loop: PLLoop, n: int):
    out = []
    for ei, (a, b) in enumerate(loop.edges()):
        if a[1] != b[1] or a[1] <= 0:
            continue
        x0, x1 = a[0], b[0]
        lo, hi = min(x0, x1), max(x0, x1)
        for v in range(1, n + 1):
            if lo < v < hi:
                out.append((ei, (v - x0) / (x1 - x0), v, a[1], 1 if x1 > x0 else -1))
    return out


def _check_loop(loop: PLLoop, n: int) -> None:
    vs = loop.vertices
    if len(vs) < 3:
        raise GenericityError("loop with fewer than 3 vertices")
    for v in vs:
        if v[1] == 0 and v[0] == int(v[0]) and 1 <= v[0] <= n:
            raise GenericityError("vertex on a puncture")
        if v[1] > 0 and v[0] == int(v[0]) and 1 <= v[0] <= n:
            raise GenericityError("vertex on a ray")
    es = loop.edges()
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            if j == i + 1 or (i == 0 and j == len(es) - 1):
                continue
            if _segment_hit(*es[i], *es[j]) is not None:
                raise GenericityError("loop is not simple")


def _peripheral_square(v: int, slot: int, size: Fraction, F: int) -> PLLoop:
    pts = ((v - size, -size), (v + size, -size), (v + size, size), (v - size, size))
    return PLLoop(tuple((Fraction(x), Fraction(y)) for x, y in pts), height=F - slot, subset=(v,))


def _try_assemble(subsets: list, n: int, perturb: int, retries: int,
                  shrink_peripheral: bool = True) -> StackedDiagram:
    F = len(subsets)
    loops = [embed_subset_curve(s, f, n, F, perturb, retries) for f, s in enumerate(subsets)]
    if shrink_peripheral:
        # a peripheral curve shrinks inside its own level; far below every finger width
        hmin = min(slot_height(f, F, perturb, retries) for f in range(F))
        loops = [_peripheral_square(s[0], f, hmin / (4 + f), F) if len(s) == 1 else lp
                 for f, (s, lp) in enumerate(zip(subsets, loops))]
    for lp in loops:
        _check_loop(lp, n)
    crossings = []
    seen_points = set()
    for i in range(len(loops)):
        for j in range(i + 1, len(loops)):
            ei = loops[i].edges()
            ej = loops[j].edges()
            for a_idx, (a, b) in enumerate(ei):
                for c_idx, (c, d) in enumerate(ej):
                    hit = _segment_hit(a, b, c, d)
                    if hit is None:
                        continue
                    if hit[0] == "bad":
                        raise GenericityError("non-transverse or vertex contact")
                    _, t, u = hit
                    pt = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                    if pt in seen_points:
                        raise GenericityError("triple point")
                    if pt[1] > 0 and pt[0] == int(pt[0]) and 1 <= pt[0] <= n:
                        raise GenericityError("crossing on a ray")
                    seen_points.add(pt)
                    # loop i is in an earlier slot, hence higher
                    crossings.append(Crossing(pt, i, j, (a_idx, t), (c_idx, u), _sub(b, a), _sub(d, c)))
    events = [_ray_events(lp, n) for lp in loops]
    return StackedDiagram(loops, crossings, n, perturb, events)


def stacking_order(factors: Sequence[Multicurve]) -> list:
    """Component subsets of each factor, earlier factors first."""
    out = []
    for m in factors:
        subs = m.subsets()
        if subs is None:
            raise ValueError(f"{m!r} has a non-standard component; only standard curves are embedded")
        out.extend(subs)
    return out


def assemble_stacked_diagram(factors: Sequence[Multicurve], n: int, perturb: int = 0,
                             retries: int = DEFAULT_RETRIES, cap: int | None = None,
                             shrink_peripheral: bool = True) -> StackedDiagram:
    """Embed every component of every factor at its own slot, earlier factors higher.

    With ``shrink_peripheral`` the curves around a single puncture are drawn
    as tiny squares that meet nothing; without it they follow the same
    schedule as every other curve and cross whatever passes nearby.
    """
    subsets = stacking_order(factors)
    for s in subsets:
        if s[-1] > n:
            raise ValueError(f"component {s} exceeds n={n}")
    last = None
    for p in range(perturb, retries + 1):
        try:
            d = _try_assemble(subsets, n, p, retries, shrink_peripheral)
        except GenericityError as e:
            last = e
            continue
        if cap is not None and len(d.crossings) > cap:
            from .chord import CrossingCapExceeded

            raise CrossingCapExceeded(len(d.crossings), cap)
        return d
    raise GenericityError(f"no generic embedding within {retries} retries: {last}")


_SLOT_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"]


def svg_render(d: StackedDiagram, path=None, scale: int = 120) -> str:
    """SVG 1.1 drawing: loops by slot, over-strand gaps at crossings, punctures."""
    xmin, xmax = Fraction(0), Fraction(max(d.n, 1) + 1)
    ymin, ymax = Fraction(-1), Fraction(1)
    W = float(xmax - xmin) * scale
    H = float(ymax - ymin) * scale

    def X(x):
        return float(x - xmin) * scale

    def Y(y):
        return float(ymax - y) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W:.0f}" height="{H:.0f}" '
        f'viewBox="0 0 {W:.0f} {H:.0f}">',
        f'<rect x="0" y="0" width="{W:.0f}" height="{H:.0f}" fill="white"/>',
    ]
    order = sorted(range(len(d.loops)), key=lambda i: d.loops[i].height)
    gap = Fraction(1, 25)
    for i in order:
        lp = d.loops[i]
        color = _SLOT_COLORS[i % len(_SLOT_COLORS)]
        pts = " ".join(f"{X(x):.2f},{Y(y):.2f}" for x, y in lp.vertices)
        lines.append(f'<polygon points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
        # crossings where this loop is over: blank the under strand, redraw the over strand
        for c in d.crossings:
            if c.upper != i:
                continue
            px, py = c.point
            lines.append(f'<circle cx="{X(px):.2f}" cy="{Y(py):.2f}" r="{float(gap) * scale:.2f}" fill="white"/>')
            ux, uy = c.upper_dir
            norm = max(abs(ux), abs(uy))
            dx, dy = ux / norm * gap * 2, uy / norm * gap * 2
            lines.append(
                f'<line x1="{X(px - dx):.2f}" y1="{Y(py - dy):.2f}" x2="{X(px + dx):.2f}" y2="{Y(py + dy):.2f}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
    for v in range(1, d.n + 1):
        lines.append(f'<line x1="{X(v):.2f}" y1="{Y(0):.2f}" x2="{X(v):.2f}" y2="0" stroke="#bbbbbb" '
                     'stroke-dasharray="4,4" stroke-width="1"/>')
        lines.append(f'<circle cx="{X(v):.2f}" cy="{Y(0):.2f}" r="4" fill="black"/>')
        lines.append(f'<text x="{X(v) + 6:.2f}" y="{Y(0) + 16:.2f}" font-size="14" font-family="sans-serif">'
                     f'p{v}</text>')
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
