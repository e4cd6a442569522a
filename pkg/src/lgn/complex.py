"""Planar complex of a front: crossings as 4-valent vertices, connecting
arcs, bounded faces with Thurston-Bennequin weights, and the partition of
faces into elementary (tb = -1) disks with their vertical order.

Geometry is kept as a generalized sweep: a list of vertex columns, each
ending ``m`` strands and starting ``n`` strands at a contiguous block of
the current strand stack.  Cusps are (0, 2) and (2, 0) columns, crossings
(2, 2).  Added arcs that are x-monotone are simply extra strands, so every
face, corner and above/below relation is read off the same sweep.

A dart (half-edge) sits on the left (L) or right (R) of its vertex and
has a rank: its height among the darts on that side, 0 at the bottom.
The counterclockwise order in the front plane is R darts bottom to top
followed by L darts top to bottom.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .front import FrontDiagram, FrontError


class ComplexError(ValueError):
    pass


L_SIDE, R_SIDE = "L", "R"


@dataclass(frozen=True)
class Column:
    pos: int            # 0-based stack index of the block
    m: int              # strands ending here (left darts)
    n: int              # strands starting here (right darts)
    out_labels: tuple   # labels of the started strands, top to bottom
    kind: str           # "left-cusp" | "right-cusp" | "crossing"
    src: int            # index of the front event


@dataclass(frozen=True)
class FreeArc:
    """An arc routed through the unbounded face, known only by its ends."""
    u: int
    u_side: str
    v: int
    v_side: str
    label: tuple
    cusps: int = 0


@dataclass(frozen=True)
class Edge:
    label: tuple        # ("s", strand id) for link edges, ("a", k) for added arcs
    u: int              # vertex (column index) at the left end / start
    v: int
    u_side: str
    v_side: str
    u_rank: object
    v_rank: object
    swept: bool = True  # x-monotone, drawn in the sweep
    cusps: int = 0      # interior cusps (free arcs only)


@dataclass(frozen=True)
class Corner:
    vertex: int
    arrive: int         # dart arriving at the vertex
    leave: int          # dart leaving it
    kind: str
    weight: int         # in halves


@dataclass
class Face:
    index: int
    darts: list         # outgoing darts of the boundary walk (face on the left)
    corners: list
    extra: int = 0      # halves contributed by cusps of free arcs on the boundary

    @property
    def weight(self):
        return sum(c.weight for c in self.corners) + self.extra

    @property
    def tb(self):
        if self.weight % 2:  # pragma: no cover - closed faces always pair up
            raise ComplexError("odd corner weight")
        return -(self.weight // 2)

    def reversal_corners(self):
        return [i for i, c in enumerate(self.corners) if c.weight]


def _front_columns(d: FrontDiagram):
    cols = []
    for k, e in enumerate(d.events):
        a, b = d.event_strands(k)
        p = e.pos - 1
        if e.kind == "L":
            cols.append(Column(p, 0, 2, (("s", a), ("s", b)), "left-cusp", k))
        elif e.kind == "R":
            cols.append(Column(p, 2, 0, (), "right-cusp", k))
        else:
            # the upper strand continues below and vice versa
            cols.append(Column(p, 2, 2, (("s", b), ("s", a)), "crossing", k))
    return cols


class GraphFront:
    """A compiled sweep plus free arcs; immutable after construction."""

    def __init__(self, front: FrontDiagram, cols, free_arcs=(), arc_cusps=None):
        self.front = front
        self.cols = tuple(cols)
        self.free_arcs = tuple(free_arcs)
        self.arc_cusps = dict(arc_cusps or {})
        self._compile()

    @classmethod
    def from_front(cls, front: FrontDiagram):
        return cls(front, _front_columns(front))

    # -- compilation --------------------------------------------------------
    def _compile(self):
        edges = []
        open_edges = []            # stack of (label, u, u_rank)
        self.stacks = []           # edge ids per column, after each vertex
        pending = []               # stack of edge indices being built
        starts = []
        for j, col in enumerate(self.cols):
            s = len(pending)
            if col.pos < 0 or col.pos + col.m > s or (col.m == 0 and col.pos > s):
                raise ComplexError(f"column {j}: block out of range")
            incoming = pending[col.pos:col.pos + col.m]
            for i, eid in enumerate(incoming):
                lab, u, urank = starts[eid]
                edges[eid] = Edge(lab, u, j, R_SIDE, L_SIDE, urank, col.m - 1 - i)
            new = []
            for i, lab in enumerate(col.out_labels):
                eid = len(edges)
                edges.append(None)
                starts.append((lab, j, col.n - 1 - i))
                new.append(eid)
            if len(new) != col.n:
                raise ComplexError(f"column {j}: label count mismatch")
            pending[col.pos:col.pos + col.m] = new
            self.stacks.append(tuple(pending))
        if pending:
            raise ComplexError("strands left open")
        for fa in self.free_arcs:
            rank_u = self._free_rank(edges, fa.u, fa.u_side)
            rank_v = self._free_rank(edges, fa.v, fa.v_side)
            edges.append(Edge(fa.label, fa.u, fa.v, fa.u_side, fa.v_side, rank_u, rank_v,
                              swept=False, cusps=fa.cusps))
        self.edges = tuple(edges)
        self._rotation()

    def _free_rank(self, edges, v, side):
        for e in edges:
            if e is None:
                continue
            if (e.u == v and e.u_side == side) or (e.v == v and e.v_side == side):
                raise ComplexError(f"free arc end at vertex {v} side {side} is not alone")
        return 0

    def _rotation(self):
        nv = len(self.cols)
        side_lists = [{L_SIDE: [], R_SIDE: []} for _ in range(nv)]
        self.dart_vertex = []
        self.dart_side = []
        self.dart_rank = []
        for eid, e in enumerate(self.edges):
            for end, (v, side, rank) in enumerate(((e.u, e.u_side, e.u_rank),
                                                   (e.v, e.v_side, e.v_rank))):
                d = 2 * eid + end
                self.dart_vertex.append(v)
                self.dart_side.append(side)
                self.dart_rank.append(rank)
                side_lists[v][side].append(d)
        self.side_lists = []
        ccw = []
        for v in range(nv):
            r = sorted(side_lists[v][R_SIDE], key=lambda d: self.dart_rank[d])
            l_ = sorted(side_lists[v][L_SIDE], key=lambda d: self.dart_rank[d])
            self.side_lists.append({R_SIDE: r, L_SIDE: l_})
            ccw.append(r + l_[::-1])
        self.ccw = ccw
        self.ccw_index = {}
        for v, lst in enumerate(ccw):
            for i, d in enumerate(lst):
                self.ccw_index[d] = (v, i)

    # -- rotation helpers ---------------------------------------------------
    @property
    def ndarts(self):
        return 2 * len(self.edges)

    def sigma(self, d, step=1):
        v, i = self.ccw_index[d]
        lst = self.ccw[v]
        return lst[(i + step) % len(lst)]

    def ribbon_rotation(self, v):
        """Cyclic dart order of the ribbon at v: L bottom to top, then R bottom to top."""
        s = self.side_lists[v]
        return s[L_SIDE] + s[R_SIDE]

    def vertex_x(self, v):
        return v

    # -- faces --------------------------------------------------------------
    def orbits(self):
        seen = [False] * self.ndarts
        out = []
        for d0 in range(self.ndarts):
            if seen[d0]:
                continue
            orb = []
            d = d0
            while not seen[d]:
                seen[d] = True
                orb.append(d)
                d = self.sigma(d ^ 1, -1)
            out.append(orb)
        return out

    def is_wrap(self, arrive, leave):
        """True for the passage around the back of a one-sided vertex."""
        v = self.dart_vertex[leave]
        sa, sl = self.dart_side[arrive], self.dart_side[leave]
        if sa != sl:
            return False
        other = L_SIDE if sa == R_SIDE else R_SIDE
        if self.side_lists[v][other]:
            return False
        ro, ra = self.dart_rank[leave], self.dart_rank[arrive]
        if leave == arrive:
            return True
        return ro > ra if sa == R_SIDE else ro < ra

    def corner_of(self, arrive, leave):
        v = self.dart_vertex[leave]
        sa, sl = self.dart_side[arrive], self.dart_side[leave]
        kind = self.cols[v].kind
        if sa == sl:
            concave = self.is_wrap(arrive, leave)
            if kind == "crossing":
                k = "crossing-concave" if concave else "crossing-lateral"
            else:
                k = "cusp-outside" if concave else "cusp-into-face"
            return Corner(v, arrive, leave, k, 1)
        k = "crossing-vertical" if kind == "crossing" else "smooth"
        return Corner(v, arrive, leave, k, 0)

    def gap_face_dart(self, j, g):
        """Dart whose orbit is the face containing gap g right of column j.

        Returns None for an empty column (unbounded).
        """
        st = self.stacks[j]
        if not st:
            return None
        if g < len(st):
            return 2 * st[g]          # above edge st[g], traversed rightward
        return 2 * st[-1] + 1         # below the lowest edge, traversed leftward

    def gaps_before(self, j):
        return len(self.stacks[j - 1]) if j > 0 else 0

    # -- transforms ---------------------------------------------------------
    def with_chord(self, a, ta, b, tb, route, label):
        """Insert an x-monotone strand from column a to column b.

        ta: index in a's outgoing block (0 = top) where the chord starts;
        tb: index in b's incoming block; route[j] for a < j < b is True when
        the chord passes above column j's block.
        """
        cols = list(self.cols)
        ca = cols[a]
        outl = list(ca.out_labels)
        outl.insert(ta, label)
        cols[a] = Column(ca.pos, ca.m, ca.n + 1, tuple(outl), ca.kind, ca.src)
        for j in range(a + 1, b):
            if route[j]:
                c = cols[j]
                cols[j] = Column(c.pos + 1, c.m, c.n, c.out_labels, c.kind, c.src)
        cb = cols[b]
        pos_b = cb.pos  # chord enters at index pos_b + tb; block start stays
        cols[b] = Column(pos_b, cb.m + 1, cb.n, cb.out_labels, cb.kind, cb.src)
        return GraphFront(self.front, cols, self.free_arcs, self.arc_cusps)

    def with_free_arc(self, arc: FreeArc):
        return GraphFront(self.front, self.cols, self.free_arcs + (arc,), self.arc_cusps)

    def arc_labels(self):
        labs = []
        for e in self.edges:
            if e.label[0] == "a":
                labs.append(e.label)
        return labs

    def next_arc_label(self):
        used = [lab[1] for lab in self.arc_labels()]
        return ("a", (max(used) + 1) if used else 0)

    # -- routing ------------------------------------------------------------
    def route(self, a, ga, b, gb):
        """Find an x-monotone path from gap ga right of column a to gap gb
        left of column b, never passing through a vertex block.

        Returns {column: passes_above} or None.
        """
        if a >= b:
            return None
        # depth-first with "above" preferred; states (column, gap)
        best = {}

        def step(j, g):
            c = self.cols[j]
            p, m, n = c.pos, c.m, c.n
            if m == 0:
                if g < p:
                    return [(g, True)]
                if g > p:
                    return [(g + n, False)]
                return [(p, True), (p + n, False)]
            if g <= p:
                return [(g, True)]
            if g >= p + m:
                return [(g - m + n, False)]
            return []

        seen = set()
        stack = [(a + 1, ga, ())]
        while stack:
            j, g, path = stack.pop()
            if j == b:
                if g == gb:
                    return {a + 1 + i: up for i, up in enumerate(path)}
                continue
            if (j, g, len(path)) in seen:
                continue
            seen.add((j, g, len(path)))
            opts = step(j, g)
            for g2, up in reversed(opts):
                stack.append((j + 1, g2, path + (up,)))
        return None


# ---------------------------------------------------------------------------

def _union_find(n):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return find, union


def _planar_pieces(gf: GraphFront):
    """Connected components of the swept graph, as sorted vertex lists."""
    find, union = _union_find(len(gf.cols))
    for e in gf.edges:
        union(e.u, e.v)
    groups = {}
    for v in range(len(gf.cols)):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda vs: vs[0])


def _gap_regions(gf: GraphFront):
    """Union-find over sweep gaps; returns (region of gap (j, g), outer id).

    Gap (j, g) lies right of column j.  The unbounded region contains the
    gaps above and below everything.
    """
    ids = {}
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0] - 1

    parent = []

    def add():
        parent.append(len(parent))
        return len(parent) - 1

    def find(a):
        while parent[a] != parent[parent[a]]:
            parent[a] = parent[parent[a]]
        return parent[a]

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    outer = add()
    cur = [outer]   # region ids of gaps left of column 0
    for j, c in enumerate(gf.cols):
        p, m, n = c.pos, c.m, c.n
        above = cur[:p + 1]
        below = cur[p + m:]
        if m == 0:
            g = cur[p]
            mid = [add() for _ in range(n - 1)] if n > 1 else []
            nxt = cur[:p + 1] + mid + [g] + cur[p + 1:]
        elif n == 0:
            union(cur[p], cur[p + m])
            nxt = cur[:p + 1] + cur[p + m + 1:]
        else:
            mid = [add() for _ in range(n - 1)]
            nxt = above + mid + below
        cur = nxt
        for g, r in enumerate(cur):
            ids[(j, g)] = r
        # top and bottom gaps are always unbounded
        union(cur[0], outer)
        union(cur[-1], outer)
    return (lambda j, g: find(ids[(j, g)])), find(outer)


def _connect(gf: GraphFront) -> GraphFront:
    """Step 2: make the graph connected."""
    # nested pieces first: cast a monotone ray leftward from the leftmost cusp
    while True:
        pieces = _planar_pieces(gf)
        if len(pieces) <= 1:
            return gf
        region, outer = _gap_regions(gf)
        nested = None
        for vs in pieces:
            v0 = vs[0]
            c = gf.cols[v0]
            g = c.pos
            r = region(v0 - 1, g) if v0 > 0 else outer
            if r != outer:
                nested = v0
                break
        if nested is None:
            break
        gf = _ray_arc(gf, nested)
    # top-level pieces: chain them through the unbounded face
    pieces = _planar_pieces(gf)
    for prev, cur in zip(pieces, pieces[1:]):
        rc = max(v for v in prev if gf.cols[v].kind == "right-cusp")
        lc = min(v for v in cur if gf.cols[v].kind == "left-cusp")
        lab = gf.next_arc_label()
        u, v = (rc, lc)
        gf = gf.with_free_arc(FreeArc(u, R_SIDE, v, L_SIDE, lab))
    return gf


def _ray_arc(gf: GraphFront, k: int) -> GraphFront:
    """Arc from the first convex right-facing corner hit by a leftward ray
    starting at the left cusp in column k."""
    c = gf.cols[k]
    g = c.pos
    route = {}
    j = k - 1
    while j >= 0:
        cj = gf.cols[j]
        p, m, n = cj.pos, cj.m, cj.n
        # g is a gap right of column j; map it to the gap left of column j
        if p < g < p + n:
            return gf.with_chord(j, g - p, k, 0, route, gf.next_arc_label())
        if g <= p:
            route[j] = True
        else:
            route[j] = False
            g = g - n + m
        j -= 1
    raise ComplexError("nested piece without an enclosing corner")


# ---------------------------------------------------------------------------

class PlanarComplex:
    """Connected planar graph of a front after Steps 1 and 2."""

    def __init__(self, gf: GraphFront):
        self.gf = gf
        self.front = gf.front
        orbs = gf.orbits()
        faces = []
        for i, orb in enumerate(orbs):
            corners = []
            extra = 0
            for t, d in enumerate(orb):
                prev = orb[t - 1]
                corners.append(gf.corner_of(prev ^ 1, d))
                extra += gf.edges[d // 2].cusps
            faces.append(Face(i, orb, corners, extra))
        # unbounded face: the one passing around the outside of column 0
        top_r = gf.side_lists[0][R_SIDE][-1]
        self.outer = next(f.index for f in faces if top_r in f.darts)
        self.all_faces = faces
        self.dart_face = {}
        for f in faces:
            for d in f.darts:
                self.dart_face[d] = f.index
        order = self._creation_order()
        self.bounded = [self.all_faces[i] for i in order]

    def _creation_order(self):
        seen = []
        gf = self.gf
        for j in range(len(gf.cols)):
            st = gf.stacks[j]
            for g in range(len(st) + 1):
                d = gf.gap_face_dart(j, g)
                if d is None:
                    continue
                f = self.dart_face[d]
                if f != self.outer and f not in seen:
                    seen.append(f)
        rest = [f.index for f in self.all_faces if f.index != self.outer and f.index not in seen]
        return seen + rest

    # -- counts ---------------------------------------------------------------
    @property
    def nvertices(self):
        return len(self.gf.cols)

    @property
    def nedges(self):
        return len(self.gf.edges)

    def euler_relation(self):
        return self.nvertices - self.nedges + len(self.all_faces)

    def faces(self):
        return list(self.bounded)

    def face_by_index(self, i):
        return self.all_faces[i]

    def outer_face(self):
        return self.all_faces[self.outer]


def build_complex(d: FrontDiagram, strategy: str = "default") -> PlanarComplex:
    if strategy not in ("default",):
        raise ComplexError(f"unknown connectivity strategy {strategy!r}")
    if not d.events:
        raise ComplexError("empty diagram")
    gf = _connect(GraphFront.from_front(d))
    return PlanarComplex(gf)


def enumerate_faces(c: PlanarComplex):
    return c.faces()


# ---------------------------------------------------------------------------
# Step 3

def _insert_index(gf: GraphFront, corner: Corner, side: str):
    """Block index (from the top) for a new dart of the given side placed
    in the corner, or None if the corner cannot hold such a dart."""
    v = corner.vertex
    lst = gf.side_lists[v][side]
    k = len(lst)
    a, o = corner.arrive, corner.leave
    sa, so = gf.dart_side[a], gf.dart_side[o]
    wrap = gf.is_wrap(a, o)
    # ccw order: R ascending then L descending; the corner runs ccw from o to a
    if so == side and sa == side:
        if wrap:
            return None
        i = lst.index(o)
        return k - 1 - i if side == R_SIDE else k - i
    if so == R_SIDE and sa == L_SIDE:        # top sector
        return 0
    if so == L_SIDE and sa == R_SIDE:        # bottom sector
        return k
    # both darts on the other side: only the back of a one-sided vertex
    return 0 if wrap else None




@dataclass(frozen=True)
class Chord:
    a: int          # left vertex (column)
    ta: int         # index in a's outgoing block, from the top
    b: int
    tb: int
    cusps: int = 0

    def as_tuple(self):
        return (self.a, self.ta, self.b, self.tb, self.cusps)


def _try_chord(gf: GraphFront, c_left: Corner, c_right: Corner):
    """Chord leaving c_left rightward and arriving at c_right from the left."""
    if c_left.vertex >= c_right.vertex:
        return None
    ta = _insert_index(gf, c_left, R_SIDE)
    tb = _insert_index(gf, c_right, L_SIDE)
    if ta is None or tb is None:
        return None
    ga = gf.cols[c_left.vertex].pos + ta
    gb = gf.cols[c_right.vertex].pos + tb
    route = gf.route(c_left.vertex, ga, c_right.vertex, gb)
    if route is None:
        return None
    return Chord(c_left.vertex, ta, c_right.vertex, tb), route


def _add_chord(gf, chord, route):
    lab = gf.next_arc_label()
    return gf.with_chord(chord.a, chord.ta, chord.b, chord.tb, route, lab), lab


def _leftmost_convex(face: Face):
    best = None
    for i, c in enumerate(face.corners):
        if c.weight and c.kind != "cusp-outside" and c.kind != "crossing-concave":
            key = (c.vertex, i)
            if best is None or key < best[0]:
                best = (key, i)
    return best[1] if best else 0


def _is_concave(c: Corner):
    return c.kind in ("cusp-outside", "crossing-concave")


def _split_face_once(gf: GraphFront, pc: PlanarComplex, face: Face):
    start = _leftmost_convex(face)
    n = len(face.corners)
    order = [(start + i) % n for i in range(n)]
    rev = [i for i in order if face.corners[i].weight]
    for pos, i in enumerate(rev):
        c = face.corners[i]
        if not _is_concave(c):
            continue
        for step in (1, -1):
            v = face.corners[rev[(pos + 2 * step) % len(rev)]]
            if _is_concave(v):
                continue
            side_c = gf.dart_side[c.leave]
            # chord runs on the side opposite to the concave vertex's darts
            if side_c == R_SIDE:
                got = _try_chord(gf, v, c)
            else:
                got = _try_chord(gf, c, v)
            if got:
                return got
    return None


def _split_elementary(gf: GraphFront, face: Face):
    """Cut a tb=-1 face from its left reversal corner to its right one."""
    rev = [c for c in face.corners if c.weight]
    if len(rev) != 2:
        return None
    lft, rgt = sorted(rev, key=lambda c: c.vertex)
    return _try_chord(gf, lft, rgt)


@dataclass
class CellDecomposition:
    complex: PlanarComplex
    disks: list                 # bounded faces, topologically sorted (lowest first)
    order: list                 # pairs (hi, lo) of positions in `disks`
    chords: list                # arcs added in Step 3 (and completion)
    mode: str
    link_edges: list = field(default_factory=list)

    @property
    def front(self):
        return self.complex.front

    @property
    def gf(self):
        return self.complex.gf

    def disk_count(self):
        return len(self.disks)


def _disk_order(pc: PlanarComplex):
    gf = pc.gf
    bounded = {f.index for f in pc.bounded}
    above = set()

    def rel(hi, lo):
        if hi in bounded and lo in bounded and hi != lo:
            above.add((hi, lo))

    for eid, e in enumerate(gf.edges):
        f_up = pc.dart_face[2 * eid]
        f_dn = pc.dart_face[2 * eid + 1]
        if e.swept:
            rel(f_up, f_dn)
        else:
            rel(f_up, f_dn)
            if e.cusps:
                rel(f_dn, f_up)
    for v in range(len(gf.cols)):
        r = gf.side_lists[v][R_SIDE]
        l_ = gf.side_lists[v][L_SIDE]
        if r and l_:
            top = pc.dart_face[r[-1]]
            bot = pc.dart_face[l_[0]]
            rel(top, bot)
    return above


def _toposort(pc: PlanarComplex, relations):
    keys = {f.index: k for k, f in enumerate(pc.bounded)}
    below = {f.index: set() for f in pc.bounded}   # hi -> set of lo
    for hi, lo in relations:
        below[hi].add(lo)
    placed = []
    done = set()
    while len(placed) < len(keys):
        ready = [f for f in keys if f not in done and below[f] <= done]
        if not ready:
            raise ComplexError("cyclic disk order")
        f = min(ready, key=lambda i: keys[i])
        placed.append(f)
        done.add(f)
    return placed


def _finish(pc: PlanarComplex, chords, mode):
    rel = _disk_order(pc)
    order = _toposort(pc, rel)
    pos = {f: i for i, f in enumerate(order)}
    disks = [pc.face_by_index(f) for f in order]
    pairs = sorted((pos[h], pos[l_]) for h, l_ in rel)
    for f in disks:
        if f.tb != -1:
            raise ComplexError(f"face {f.index} has tb {f.tb}, not -1")
    return CellDecomposition(pc, disks, pairs, list(chords), mode)


def split_all(gf: GraphFront, chords=None):
    """Cut faces with tb < -1 until every bounded face is elementary."""
    chords = list(chords or [])
    guard = 0
    while True:
        pc = PlanarComplex(gf)
        big = [f for f in pc.bounded if f.tb < -1]
        if not big:
            return gf, pc, chords
        got = _split_face_once(gf, pc, big[0])
        if got is None:
            raise ComplexError(f"no admissible chord in face {big[0].index} (tb {big[0].tb})")
        chord, route = got
        gf, lab = _add_chord(gf, chord, route)
        chords.append(chord)
        guard += 1
        if guard > 10000:  # pragma: no cover
            raise ComplexError("partition did not terminate")


def target_disks(d: FrontDiagram):
    ncross = sum(1 for e in d.events if e.kind == "X")
    ncusp = sum(1 for e in d.events if e.kind != "X")
    return ncross + ncusp // 2


def partition_faces(c: PlanarComplex, mode="canonical", chords=None):
    """Split bounded faces into elementary disks and order them.

    mode "canonical": greedy cuts, then extra cusp-to-cusp cuts across
    elementary disks until the disk count equals crossings + cusps/2.
    mode "explicit": exactly the given chords (list of Chord), no
    automatic cuts; every resulting face must already be elementary.
    """
    gf = c.gf
    if mode == "explicit":
        chords = list(chords or [])
        for ch in chords:
            if ch.cusps:
                raise ComplexError("explicit chords with interior cusps are not x-monotone; "
                                   "declare them with free arcs")
            got = None
            ga = gf.cols[ch.a].pos + ch.ta
            gb = gf.cols[ch.b].pos + ch.tb
            if not (0 <= ch.a < ch.b < len(gf.cols)):
                raise ComplexError(f"chord {ch.as_tuple()}: bad endpoints")
            if ch.ta > gf.cols[ch.a].n or ch.tb > gf.cols[ch.b].m:
                raise ComplexError(f"chord {ch.as_tuple()}: bad slot")
            got = gf.route(ch.a, ga, ch.b, gb)
            if got is None:
                raise ComplexError(f"chord {ch.as_tuple()}: no monotone route inside one face")
            gf, _ = _add_chord(gf, ch, got)
        pc = PlanarComplex(gf)
        bad = [f for f in pc.bounded if f.tb != -1]
        if bad:
            raise ComplexError(f"explicit chords leave {len(bad)} face(s) with tb != -1 "
                               f"(tb values {[f.tb for f in bad]})")
        return _finish(pc, chords, mode)
    if mode != "canonical":
        raise ComplexError(f"unknown mode {mode!r}")
    gf, pc, chords = split_all(gf)
    want = target_disks(c.front)
    while len(pc.bounded) < want:
        gf, pc, ch = _completion_cut(gf, pc)
        chords.append(ch)
    return _finish(pc, chords, mode)


def _completion_cut(gf, pc):
    """One extra cut across an elementary disk, preferring cuts that join
    two boundary components of the ribbon."""
    from .ribbon import FatGraph
    base_b = FatGraph.from_graphfront(gf).boundary_components()
    first = None
    for f in pc.bounded:
        got = _split_elementary(gf, f)
        if got is None:
            continue
        chord, route = got
        gf2, _ = _add_chord(gf, chord, route)
        if first is None:
            first = (gf2, chord)
        if FatGraph.from_graphfront(gf2).boundary_components() < base_b:
            return gf2, PlanarComplex(gf2), chord
    if first is None:
        raise ComplexError("no elementary disk can be cut")
    return first[0], PlanarComplex(first[0]), first[1]


def cut_disk(cd: CellDecomposition, disk_pos: int) -> CellDecomposition:
    """Add the left-to-right cusp chord across one elementary disk."""
    gf = cd.gf
    face = cd.disks[disk_pos]
    got = _split_elementary(gf, face)
    if got is None:
        raise ComplexError("disk cannot be cut by a monotone chord")
    chord, route = got
    gf2, _ = _add_chord(gf, chord, route)
    return _finish(PlanarComplex(gf2), cd.chords + [chord], cd.mode)


def decompose(d: FrontDiagram, mode="canonical", chords=None) -> CellDecomposition:
    return partition_faces(build_complex(d), mode, chords)


# ---------------------------------------------------------------------------
# text formats

def parse_disks(text: str):
    """``disks v1`` followed by ``chord <a> <ta> <b> <tb>`` lines.

    a, b are 1-based front event numbers; ta/tb are slots counted from the
    top of the vertex's right (resp. left) dart block.
    """
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0].split() != ["disks", "v1"]:
        if lines and lines[0].split()[:1] == ["disks"]:
            raise ComplexError(f"unsupported disks version: {lines[0]!r}")
        raise ComplexError("expected header 'disks v1'")
    out = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] != "chord" or len(parts) not in (5, 7):
            raise ComplexError(f"bad line {ln!r}")
        nums = [int(x) for x in parts[1:5]]
        cusps = 0
        if len(parts) == 7:
            if parts[5] != "cusps":
                raise ComplexError(f"bad line {ln!r}")
            cusps = int(parts[6])
        out.append(Chord(nums[0] - 1, nums[1], nums[2] - 1, nums[3], cusps))
    return out




def serialize_disks(chords) -> str:
    lines = ["disks v1"]
    for ch in chords:
        s = f"chord {ch.a + 1} {ch.ta} {ch.b + 1} {ch.tb}"
        if ch.cusps:
            s += f" cusps {ch.cusps}"
        lines.append(s)
    return "\n".join(lines) + "\n"


def decomposition_document(cd: CellDecomposition) -> dict:
    gf = cd.gf
    pc = cd.complex
    verts = [{"id": j, "kind": c.kind, "event": c.src + 1} for j, c in enumerate(gf.cols)]
    edges = []
    for eid, e in enumerate(gf.edges):
        edges.append({"id": eid, "from": e.u, "to": e.v,
                      "provenance": ("strand %d" % e.label[1]) if e.label[0] == "s"
                      else ("arc %d" % e.label[1]),
                      "monotone": e.swept, "cusps": e.cusps})
    faces = []
    for k, f in enumerate(cd.disks):
        faces.append({"disk": k + 1, "tb": f.tb,
                      "corners": [[c.vertex, c.kind] for c in f.corners],
                      "walk": [[d // 2, 1 if d % 2 == 0 else -1] for d in f.darts]})
    return {"format": "cells v1", "mode": cd.mode, "vertices": verts, "edges": edges,
            "disks": faces, "chords": [list(ch.as_tuple()) for ch in cd.chords],
            "order": [[h + 1, l_ + 1] for h, l_ in cd.order]}
