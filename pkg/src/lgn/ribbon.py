"""Ribbons of Legendrian graphs as fat graphs, and the open books they carry.

A fat graph is a cyclic order of darts at each vertex.  Dart ``2e`` is the
start of edge ``e`` and ``2e + 1`` its end.  Closed curves on the ribbon
are walks: lists of darts, each leaving the vertex where the previous one
arrived.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .complex import (CellDecomposition, ComplexError, GraphFront, cut_disk)


class RibbonError(ValueError):
    pass


class FatGraph:
    def __init__(self, rotation, nedges):
        self.rotation = [list(r) for r in rotation]
        self.nedges = nedges
        self.vertex_of = [-1] * (2 * nedges)
        self.where = {}
        for v, rot in enumerate(self.rotation):
            for i, d in enumerate(rot):
                if self.vertex_of[d] != -1:
                    raise RibbonError(f"dart {d} appears twice")
                self.vertex_of[d] = v
                self.where[d] = (v, i)
        if -1 in self.vertex_of:
            raise RibbonError("dart without a vertex")
        self._tree = None
        self._J = None

    @classmethod
    def from_graphfront(cls, gf: GraphFront):
        rot = [gf.ribbon_rotation(v) for v in range(len(gf.cols))]
        return cls(rot, len(gf.edges))

    # -- topology -----------------------------------------------------------
    @property
    def nvertices(self):
        return len(self.rotation)

    def euler(self):
        return self.nvertices - self.nedges

    def next_dart(self, d):
        v, i = self.where[d]
        r = self.rotation[v]
        return r[(i + 1) % len(r)]

    def boundary_cycles(self):
        """Orbits of d -> next(d ^ 1); each dart side is visited once."""
        seen = set()
        out = []
        for d0 in range(2 * self.nedges):
            if d0 in seen:
                continue
            cyc = []
            d = d0
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                d = self.next_dart(d ^ 1)
            out.append(cyc)
        return out

    def boundary_components(self):
        return len(self.boundary_cycles())

    def genus(self):
        two_g = 2 - self.euler() - self.boundary_components()
        if two_g % 2 or two_g < 0:  # pragma: no cover - impossible for a fat graph
            raise RibbonError("inconsistent fat graph")
        return two_g // 2

    def is_connected(self):
        if not self.rotation:
            return True
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for d in self.rotation[v]:
                w = self.vertex_of[d ^ 1]
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.nvertices

    # -- homology -----------------------------------------------------------
    def _spanning_tree(self):
        if self._tree is None:
            parent = {0: None}
            order = deque([0])
            while order:
                v = order.popleft()
                for d in self.rotation[v]:
                    w = self.vertex_of[d ^ 1]
                    if w not in parent:
                        parent[w] = d       # dart from v into w's edge
                        order.append(w)
            if len(parent) != self.nvertices:
                raise RibbonError("fat graph is not connected")
            tree = {parent[w] // 2 for w in parent if parent[w] is not None}
            basis = [e for e in range(self.nedges) if e not in tree]
            self._tree = (parent, tree, basis)
        return self._tree

    @property
    def basis_edges(self):
        return self._spanning_tree()[2]

    @property
    def rank(self):
        return len(self.basis_edges)

    def _path_to_root(self, v):
        parent = self._spanning_tree()[0]
        out = []
        while parent[v] is not None:
            d = parent[v]
            out.append(d ^ 1)               # walk from v back toward the root
            v = self.vertex_of[d]
        return out

    def tree_path(self, u, v):
        """Darts of the tree path from u to v."""
        pu = self._path_to_root(u)
        pv = self._path_to_root(v)
        # strip the common tail
        while pu and pv and pu[-1] == pv[-1]:
            pu.pop()
            pv.pop()
        return pu + [d ^ 1 for d in reversed(pv)]

    def basis_walk(self, e):
        d = 2 * e
        return [d] + self.tree_path(self.vertex_of[d ^ 1], self.vertex_of[d])

    def check_walk(self, walk):
        if not walk:
            raise RibbonError("empty walk")
        for a, b in zip(walk, walk[1:] + walk[:1]):
            if self.vertex_of[a ^ 1] != self.vertex_of[b]:
                raise RibbonError(f"walk is not closed or not connected at dart {a}")

    def coords(self, walk):
        idx = {e: i for i, e in enumerate(self.basis_edges)}
        x = [0] * self.rank
        for d in walk:
            e = d // 2
            if e in idx:
                x[idx[e]] += 1 if d % 2 == 0 else -1
        return x

    def intersection(self, wa, wb):
        """Algebraic intersection of two closed walks.

        wa runs along the core; wb is pushed to its left.  At each vertex the
        passages are chords of the vertex circle, counted with sign when
        their ends interleave.  The sign is the one for which a positive
        twist is x -> x + <x, c> c and Legendrian surgery on a page curve
        matches its smooth framing tb - 1.
        """
        passes_a = {}
        for a, b in zip(wa, wa[1:] + wa[:1]):
            passes_a.setdefault(self.vertex_of[b], []).append((a ^ 1, b))
        total = 0
        for a, b in zip(wb, wb[1:] + wb[:1]):
            v = self.vertex_of[b]
            if v not in passes_a:
                continue
            k = len(self.rotation[v])
            n = 3 * k
            r = 3 * self.where[a ^ 1][1]        # entering: clockwise side
            s = 3 * self.where[b][1] + 2        # leaving: counterclockwise side
            for (p0, q0) in passes_a[v]:
                p = 3 * self.where[p0][1] + 1
                q = 3 * self.where[q0][1] + 1
                if p == q:
                    continue
                r_in = (r - p) % n < (q - p) % n
                s_in = (s - p) % n < (q - p) % n
                if r_in != s_in:
                    total += -1 if r_in else 1
        return total

    def pairing(self):
        """Intersection form on the basis cycles (antisymmetric)."""
        if self._J is None:
            walks = [self.basis_walk(e) for e in self.basis_edges]
            n = len(walks)
            J = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    v = self.intersection(walks[i], walks[j])
                    J[i][j] = v
                    J[j][i] = -v
            self._J = J
        return self._J

    def pair(self, x, y):
        J = self.pairing()
        return sum(x[i] * J[i][j] * y[j] for i in range(len(x)) for j in range(len(y))
                   if x[i] and y[j])

    # -- edits --------------------------------------------------------------
    def with_edge(self, v1, i1, v2, i2):
        """Add an edge whose start sits after position i1 at v1 and whose end
        sits after position i2 at v2 (positions in the old rotation)."""
        e = self.nedges
        rot = [list(r) for r in self.rotation]
        if v1 == v2 and not rot[v1]:
            rot[v1] = [2 * e, 2 * e + 1]        # a loop at a bare vertex
        elif v1 == v2:
            r = rot[v1]
            a, b = self.rotation[v1][i1], self.rotation[v1][i2]
            r.insert(r.index(a) + 1, 2 * e)
            r.insert(r.index(b) + 1, 2 * e + 1)
        else:
            a = self.rotation[v1][i1]
            b = self.rotation[v2][i2]
            rot[v1].insert(rot[v1].index(a) + 1, 2 * e)
            rot[v2].insert(rot[v2].index(b) + 1, 2 * e + 1)
        return FatGraph(rot, e + 1)

    def to_data(self):
        return {"rotation": self.rotation, "edges": self.nedges}


@dataclass(frozen=True)
class SupportBounds:
    neg_euler: int
    genus: int
    boundary: int

    def as_tuple(self):
        return (self.neg_euler, self.genus, self.boundary)


@dataclass
class RibbonSurface:
    fatgraph: FatGraph
    atlas: dict = field(default_factory=dict)     # name -> walk (list of darts)

    @property
    def euler(self):
        return self.fatgraph.euler()

    @property
    def genus(self):
        return self.fatgraph.genus()

    @property
    def boundary_components(self):
        return self.fatgraph.boundary_components()

    def curve(self, name):
        try:
            return self.atlas[name]
        except KeyError:
            raise RibbonError(f"unknown curve {name!r}") from None

    def coords(self, name):
        return self.fatgraph.coords(self.curve(name))

    def with_curves(self, extra):
        atlas = dict(self.atlas)
        for k, w in extra.items():
            self.fatgraph.check_walk(list(w))
            atlas[k] = list(w)
        return RibbonSurface(self.fatgraph, atlas)


@dataclass
class OpenBook:
    page: RibbonSurface
    word: list          # [(curve, sign)], composition read right to left
    meta: dict = field(default_factory=dict, compare=False)   # extra document fields

    def __post_init__(self):
        for name, s in self.word:
            self.page.curve(name)
            if s not in (1, -1):
                raise RibbonError(f"twist sign must be +1 or -1, got {s!r}")


def surface_invariants(s: RibbonSurface) -> SupportBounds:
    return SupportBounds(-s.euler, s.genus, s.boundary_components)


def _link_walks(gf: GraphFront):
    front = gf.front
    by_strand = {}
    for eid, e in enumerate(gf.edges):
        if e.label[0] == "s":
            by_strand.setdefault(e.label[1], []).append(eid)
    for lst in by_strand.values():
        lst.sort(key=lambda eid: gf.edges[eid].u)
    ends = {}           # strand -> (left event, right event)
    partner = {}
    for k, ev in enumerate(front.events):
        if ev.kind == "X":
            continue
        a, b = front.event_strands(k)
        side = 0 if ev.kind == "L" else 1
        partner[(a, side)] = b
        partner[(b, side)] = a
    walks = {}
    for c in range(front.ncomponents):
        k0 = front.component_events(c)[0]
        a, b = front.event_strands(k0)
        s = a if front.strand_direction(a) == 1 else b
        start = s
        walk = []
        going_right = True
        while True:
            es = by_strand[s]
            if going_right:
                walk.extend(2 * e for e in es)
                s = partner[(s, 1)]
            else:
                walk.extend(2 * e + 1 for e in reversed(es))
                s = partner[(s, 0)]
            going_right = not going_right
            if s == start and going_right:
                break
        walks[front.labels[c]] = walk
    return walks


def build_ribbon(cd: CellDecomposition) -> RibbonSurface:
    fg = FatGraph.from_graphfront(cd.gf)
    atlas = {}
    for j, f in enumerate(cd.disks):
        atlas[f"C{j + 1}"] = list(f.darts)
    atlas.update(_link_walks(cd.gf))
    for w in atlas.values():
        fg.check_walk(w)
    return RibbonSurface(fg, atlas)


def monodromy(cd: CellDecomposition, s: RibbonSurface = None) -> OpenBook:
    if s is None:
        s = build_ribbon(cd)
    n = len(cd.disks)
    # composition D_C1 o ... o D_Cn, C_n applied first
    word = [(f"C{j}", 1) for j in range(1, n + 1)]
    return OpenBook(s, word)


def open_book(cd: CellDecomposition) -> OpenBook:
    return monodromy(cd, build_ribbon(cd))


def make_binding_connected(cd: CellDecomposition):
    """Cut elementary disks until the binding is connected.

    Returns (decomposition, number of arcs added).
    """
    added = 0
    while True:
        b = FatGraph.from_graphfront(cd.gf).boundary_components()
        if b == 1:
            return cd, added
        for k in range(len(cd.disks)):
            try:
                nxt = cut_disk(cd, k)
            except ComplexError:
                continue
            b2 = FatGraph.from_graphfront(nxt.gf).boundary_components()
            if b2 == b - 1:
                cd = nxt
                added += 1
                break
        else:
            raise RibbonError("no disk cut joins two boundary components")


def positively_stabilize(ob: OpenBook, site=None, name=None) -> OpenBook:
    """Attach a 1-handle at two corners of the page and precompose with a
    positive twist about a curve running once over it.

    site: ((v1, i1), (v2, i2)); corner (v, i) lies after rotation position i
    at vertex v.  Default: the two corners at vertex 0.
    """
    fg = ob.page.fatgraph
    if site is None:
        if len(fg.rotation[0]) == 1:
            raise RibbonError("vertex 0 has a single corner")
        site = ((0, 0), (0, 1)) if fg.rotation[0] else ((0, 0), (0, 0))
    try:
        (v1, i1), (v2, i2) = site

        def ok(v, i):
            n = len(fg.rotation[v])
            return 0 <= i < n or (n == 0 and i == 0)
        if not (ok(v1, i1) and ok(v2, i2)):
            raise IndexError
        if v1 == v2 and i1 == i2 and fg.rotation[v1]:
            raise RibbonError("site corners must differ")
    except (TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, RibbonError):
            raise
        raise RibbonError(f"invalid stabilization site {site!r}") from None
    new = fg.with_edge(v1, i1, v2, i2)
    e = fg.nedges
    # return through the old page; the new graph's tree may contain edge e
    walk = [2 * e] + fg.tree_path(v2, v1)
    if name is None:
        k = 1
        while f"S{k}" in ob.page.atlas:
            k += 1
        name = f"S{k}"
    atlas = dict(ob.page.atlas)
    atlas[name] = walk
    new.check_walk(walk)
    return OpenBook(RibbonSurface(new, atlas), list(ob.word) + [(name, 1)])


def disk_open_book() -> OpenBook:
    """The trivial open book of S^3 with disk page (a single vertex)."""
    return OpenBook(RibbonSurface(FatGraph([[]], 0), {}), [])


# ---------------------------------------------------------------------------
# document format

def openbook_document(ob: OpenBook, extra=None) -> dict:
    b = surface_invariants(ob.page)
    doc = {
        "format": "openbook v1",
        "composition": "right-to-left",
        "fatgraph": ob.page.fatgraph.to_data(),
        "atlas": {k: list(v) for k, v in sorted(ob.page.atlas.items())},
        "word": [[c, s] for c, s in ob.word],
        "euler": ob.page.euler,
        "genus": b.genus,
        "boundary": b.boundary,
    }
    doc.update(ob.meta)
    if extra:
        doc.update(extra)
    return doc


def dump_openbook(ob: OpenBook, extra=None) -> str:
    return json.dumps(openbook_document(ob, extra), indent=1, sort_keys=True) + "\n"


def load_openbook(text_or_doc) -> OpenBook:
    doc = json.loads(text_or_doc) if isinstance(text_or_doc, str) else text_or_doc
    if doc.get("format") != "openbook v1":
        raise RibbonError(f"unsupported open-book format {doc.get('format')!r}")
    if doc.get("composition") != "right-to-left":
        raise RibbonError("open-book word must be read right-to-left")
    fg = FatGraph(doc["fatgraph"]["rotation"], doc["fatgraph"]["edges"])
    atlas = {k: list(v) for k, v in doc["atlas"].items()}
    for w in atlas.values():
        fg.check_walk(w)
    derived = {"format", "composition", "fatgraph", "atlas", "word", "euler", "genus", "boundary"}
    meta = {k: v for k, v in doc.items() if k not in derived}
    return OpenBook(RibbonSurface(fg, atlas), [(c, int(s)) for c, s in doc["word"]], meta)
