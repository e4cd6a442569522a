"""Deterministic SVG for fronts and ribbon schematics.

Fronts are drawn column by column: event k occupies x in [k, k+1] (scaled),
strand i of the stack sits at y = i.  At a crossing the strand descending
left to right passes in front; the ascending one is drawn with a gap.
"""
from __future__ import annotations

import os

from .front import FrontDiagram

SX, SY, PAD = 36.0, 24.0, 18.0
PALETTE = ("#1f5fa8", "#b8401c", "#2d8a3e", "#7a3fa0", "#a07a10", "#10808a", "#a0306a")
LIGHT, HEAVY = "#dfe8f3", "#7f97b8"


def _color_on(color):
    if color is None:
        color = os.environ.get("LGN_COLOR", "1") != "0"
    return color


def _fmt(v):
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _bez(p0, p1):
    """Cubic with horizontal tangents at both ends."""
    (x0, y0), (x1, y1) = p0, p1
    xm = (x0 + x1) / 2
    return [(x0, y0), (xm, y0), (xm, y1), (x1, y1)]


def _split(c, t):
    """de Casteljau split of a cubic at t."""
    a, b, cc, d = c

    def lerp(p, q):
        return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)
    ab, bc, cd = lerp(a, b), lerp(b, cc), lerp(cc, d)
    abc, bcd = lerp(ab, bc), lerp(bc, cd)
    m = lerp(abc, bcd)
    return [a, ab, abc, m], [m, bcd, cd, d]


def _path(c, cls, stroke, width=1.6):
    a, b, cc, d = [(PAD + x * SX, PAD + y * SY) for x, y in c]
    return (f'<path class="{cls}" d="M{_fmt(a[0])},{_fmt(a[1])} C{_fmt(b[0])},{_fmt(b[1])} '
            f'{_fmt(cc[0])},{_fmt(cc[1])} {_fmt(d[0])},{_fmt(d[1])}" fill="none" '
            f'stroke="{stroke}" stroke-width="{width}"/>')


def front_svg(d: FrontDiagram, color=None, title=None) -> str:
    color = _color_on(color)
    stack = []
    items = []
    top = 0

    def col(s):
        return PALETTE[d.strand_component(s) % len(PALETTE)] if color else "#000000"

    nstrand = 0
    for k, e in enumerate(d.events):
        x0, x1 = float(k), float(k + 1)
        p = e.pos - 1
        before = list(stack)
        if e.kind == "L":
            a, b = nstrand, nstrand + 1
            nstrand += 2
            stack[p:p] = [a, b]
        elif e.kind == "R":
            a, b = stack[p], stack[p + 1]
            del stack[p:p + 2]
        else:
            a, b = stack[p], stack[p + 1]
            stack[p], stack[p + 1] = b, a
        after = stack
        top = max(top, len(before), len(after))
        # strands passing the column untouched
        for s in before:
            if s in (a, b) or s not in after:
                continue
            c = _bez((x0, before.index(s)), (x1, after.index(s)))
            items.append(_path(c, "strand", col(s)))
        if e.kind == "L":
            tip = (x0 + 0.25, p + 0.5)
            for s, y in ((a, p), (b, p + 1)):
                items.append(_path(_bez(tip, (x1, y)), "cusp", col(s)))
        elif e.kind == "R":
            tip = (x1 - 0.25, p + 0.5)
            for s, y in ((a, p), (b, p + 1)):
                items.append(_path(_bez((x0, y), tip), "cusp", col(s)))
        else:
            over = _bez((x0, p), (x1, p + 1))          # a descends left to right: in front
            under = _bez((x0, p + 1), (x1, p))
            left, rest = _split(under, 0.38)
            _, right = _split(rest, (0.62 - 0.38) / 0.62)
            items.append(_path(left, "strand under", col(b)))
            items.append(_path(right, "strand under", col(b)))
            items.append(f'<g class="gap" data-event="{k + 1}"/>')
            items.append(_path(over, "strand over", col(a)))
    w = PAD * 2 + SX * max(len(d.events), 1)
    h = PAD * 2 + SY * max(top - 1, 1)
    head = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
            f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">']
    if title:
        head.append(f"<title>{_escape(title)}</title>")
    return "\n".join(head + items + ["</svg>"]) + "\n"


def _escape(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _end_shade(gf, v):
    kind = gf.cols[v].kind
    if kind == "left-cusp":
        return "light"
    if kind == "right-cusp":
        return "heavy"
    return None


def ribbon_svg(gf, color=None, title=None) -> str:
    """Schematic of the ribbon of a Legendrian graph: a band along every
    edge, lightly shaded where the band's orientation agrees with the
    blackboard and heavily where it disagrees.  The band turns over once
    between a left-cusp end (light) and a right-cusp end (heavy); at other
    vertices the shading is carried through from the far end."""
    color = _color_on(color)
    fills = {"light": LIGHT if color else "#e8e8e8", "heavy": HEAVY if color else "#8c8c8c"}
    items = []
    top = 1
    for eid, e in enumerate(gf.edges):
        if not e.swept:
            continue
        pts = []
        for w in range(e.u, e.v):
            st = gf.stacks[w]
            pts.append((w + 1.0, float(st.index(eid))))
            top = max(top, len(st))
        cu = gf.cols[e.u]
        cv = gf.cols[e.v]
        start = (e.u + 0.5, cu.pos + (cu.n - 1) / 2 if cu.n else float(cu.pos))
        end = (e.v + 0.5, cv.pos + (cv.m - 1) / 2 if cv.m else float(cv.pos))
        pts = [start] + pts + [end]
        su, sv = _end_shade(gf, e.u), _end_shade(gf, e.v)
        su = su or sv or "light"
        sv = sv or su
        half = len(pts) // 2
        for i in range(len(pts) - 1):
            shade = su if i < half else sv
            c = _bez(pts[i], pts[i + 1])
            items.append(_path(c, f"band {shade}", fills[shade], width=9.0))
        for i in range(len(pts) - 1):
            items.append(_path(_bez(pts[i], pts[i + 1]), "core", "#333333", width=1.0))
    for e in gf.edges:
        if e.swept:
            continue
        # arcs through the unbounded face: drawn as dashed loops below
        x0, x1 = e.u + 0.5, e.v + 0.5
        y = top + 0.5
        c = [(x0, top - 1.0), (x0, y), (x1, y), (x1, top - 1.0)]
        items.append(_path(c, "band free light", fills["light"], width=9.0))
        items.append(_path(c, "core free", "#333333", width=1.0).replace("/>", ' stroke-dasharray="3,2"/>'))
    w = PAD * 2 + SX * (len(gf.cols) + 1)
    h = PAD * 2 + SY * (top + 1)
    head = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
            f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">']
    if title:
        head.append(f"<title>{_escape(title)}</title>")
    return "\n".join(head + items + ["</svg>"]) + "\n"


def emit_svg(obj, color=None, title=None) -> str:
    """Front diagrams and graph fronts (ribbon schematics) to SVG text."""
    from .complex import GraphFront
    if isinstance(obj, FrontDiagram):
        return front_svg(obj, color, title)
    if isinstance(obj, GraphFront):
        return ribbon_svg(obj, color, title)
    gf = getattr(obj, "skeleton", None) or getattr(obj, "gf", None)
    if gf is not None:
        return ribbon_svg(gf, color, title)
    raise TypeError(f"cannot draw {type(obj).__name__}")
