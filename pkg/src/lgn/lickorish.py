"""Lickorish generators on the standard genus-g page and the conversion
of a Lickorish twist word into a contact (+-1) surgery diagram.

The page is the ribbon of a Legendrian graph G drawn as a sweep: for
each handle j a saucer alpha_j above a saucer beta_j, touching at one
tangency point, and an arc c_j from the right cusp of beta_j to the left
cusp of beta_{j+1}.

Rendering.  A curve on the page at height t is its Reeb translate by a
small multiple of t.  Near a vertex a strand on an edge of rank k at
height t sits at z ~ t + k u^2 / 2, so far from the vertex strands are
ordered by (rank, height) and near it by (height, rank).  Each change of
order is a crossing.  Passes that turn back at a vertex become cusps.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import intlinalg as la
from .complex import Column, GraphFront, L_SIDE, R_SIDE
from .front import Event, FrontDiagram, FrontError, linking_number, mutual_crossings, tb, tb_all
from .ribbon import FatGraph, OpenBook, RibbonSurface


class LickorishError(ValueError):
    pass


class TemplateError(RuntimeError):
    """A rendered diagram violated the structure guaranteed by the template."""


# ---------------------------------------------------------------------------
# the page

def skeleton(g: int) -> GraphFront:
    if g < 1:
        raise LickorishError("genus must be at least 1")
    cols = []
    for j in range(g):
        has_in = j > 0
        has_out = j < g - 1
        cols.append(Column(0, 0, 2, (("au", j), ("al", j)), "left-cusp", len(cols)))
        cols.append(Column(2, 1 if has_in else 0, 2, (("bu", j), ("bl", j)), "left-cusp",
                           len(cols)))
        cols.append(Column(1, 2, 2, (("al2", j), ("bu2", j)), "kiss", len(cols)))
        cols.append(Column(0, 2, 0, (), "right-cusp", len(cols)))
        cols.append(Column(0, 2, 1 if has_out else 0, (("c", j),) if has_out else (),
                           "right-cusp", len(cols)))
    return GraphFront(None, cols)


def _edge_ids(gf: GraphFront):
    return {e.label: i for i, e in enumerate(gf.edges)}


def _sub_boundaries(fg: FatGraph, edges):
    darts = {2 * e for e in edges} | {2 * e + 1 for e in edges}
    rot = {}
    for v, r in enumerate(fg.rotation):
        sub = [d for d in r if d in darts]
        for i, d in enumerate(sub):
            rot[d] = sub[(i + 1) % len(sub)]
    seen = set()
    out = []
    for d0 in sorted(darts):
        if d0 in seen:
            continue
        cyc = []
        d = d0
        while d not in seen:
            seen.add(d)
            cyc.append(d)
            d = rot[d ^ 1]
        out.append(cyc)
    return out


def curve_names(g: int):
    names = []
    for j in range(1, g + 1):
        names += [f"alpha{j}", f"beta{j}"]
    names += [f"gamma{j}" for j in range(1, g)]
    return names


def lickorish_atlas(g: int) -> RibbonSurface:
    if g < 1:
        raise LickorishError("genus must be at least 1")
    return _atlas(g)


@functools.lru_cache(maxsize=None)
def _atlas(g: int) -> RibbonSurface:
    gf = skeleton(g)
    fg = FatGraph.from_graphfront(gf)
    ids = _edge_ids(gf)
    atlas = {}
    for j in range(g):
        au, al, al2 = ids[("au", j)], ids[("al", j)], ids[("al2", j)]
        bu, bu2, bl = ids[("bu", j)], ids[("bu2", j)], ids[("bl", j)]
        atlas[f"alpha{j + 1}"] = [2 * au, 2 * al2 + 1, 2 * al + 1]
        atlas[f"beta{j + 1}"] = [2 * bu, 2 * bu2, 2 * bl + 1]
    for j in range(g - 1):
        c = ids[("c", j)]
        es = [ids[(k, i)] for i in (j, j + 1) for k in ("bu", "bu2", "bl")] + [c]
        cyc = [b for b in _sub_boundaries(fg, es) if 2 * c in b and 2 * c + 1 in b]
        if len(cyc) != 1:  # pragma: no cover - fixed template
            raise TemplateError("no boundary of N(beta, c, beta') runs over c twice")
        # start the walk at the outgoing traversal of c for readability
        w = cyc[0]
        k = w.index(2 * c)
        atlas[f"gamma{j + 1}"] = w[k:] + w[:k]
    for w in atlas.values():
        fg.check_walk(w)
    surf = RibbonSurface(fg, atlas)
    surf.skeleton = gf
    return surf


def intersection_table(s: RibbonSurface):
    """|algebraic intersection| for every pair of atlas curves."""
    fg = s.fatgraph
    names = sorted(s.atlas)
    out = {}
    for a, b in itertools.combinations(names, 2):
        out[(a, b)] = abs(fg.pair(s.coords(a), s.coords(b)))
    return out


def skeleton_monodromy(g: int):
    """Monodromy of the page of G supporting S^3: prod D_beta_i o D_alpha_i,
    as a right-to-left word."""
    word = []
    for j in range(1, g + 1):
        word += [(f"beta{j}", 1), (f"alpha{j}", 1)]
    return word


# ---------------------------------------------------------------------------
# words and symbolic links

_GEN = {"a": "alpha", "b": "beta", "c": "gamma", "alpha": "alpha", "beta": "beta",
        "gamma": "gamma"}


@dataclass(frozen=True)
class LickorishWord:
    genus: int
    letters: tuple      # ((curve name, +1/-1), ...) in application order

    def __post_init__(self):
        if self.genus < 1:
            raise LickorishError("genus must be at least 1")
        names = set(curve_names(self.genus))
        for c, s in self.letters:
            if c not in names:
                raise LickorishError(f"generator {c!r} not available in genus {self.genus}")
            if s not in (1, -1):
                raise LickorishError(f"bad sign {s!r}")

    def open_book(self) -> OpenBook:
        page = lickorish_atlas(self.genus)
        # letter k applied k-th: the right-to-left list is reversed
        return OpenBook(page, [(c, s) for c, s in reversed(self.letters)])


def parse_letter(tok: str):
    tok = tok.strip()
    if not tok:
        raise LickorishError("empty letter")
    sign = 1
    if tok[0] in "+-":
        sign = 1 if tok[0] == "+" else -1
        tok = tok[1:]
    elif tok[-1] in "+-":
        sign = 1 if tok[-1] == "+" else -1
        tok = tok[:-1]
    base = tok.rstrip("0123456789")
    idx = tok[len(base):]
    if base not in _GEN or not idx:
        raise LickorishError(f"bad generator {tok!r}")
    return f"{_GEN[base]}{int(idx)}", sign


def parse_word(text: str) -> LickorishWord:
    """``lickorish v1`` / ``genus <g>`` / ``word <letters...>``; letters like
    ``+alpha1`` or ``b2-``, applied left to right."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0].split()[:1] != ["lickorish"]:
        raise LickorishError("expected header 'lickorish v1'")
    if lines[0].split() != ["lickorish", "v1"]:
        raise LickorishError(f"unsupported word version: {lines[0]!r}")
    genus = None
    letters = []
    for ln in lines[1:]:
        key, *rest = ln.split()
        if key == "genus" and len(rest) == 1:
            genus = int(rest[0])
        elif key == "word":
            letters += [parse_letter(t) for t in rest]
        else:
            raise LickorishError(f"bad line {ln!r}")
    if genus is None:
        raise LickorishError("missing genus")
    return LickorishWord(genus, tuple(letters))


def serialize_word(w: LickorishWord) -> str:
    toks = [("+" if s > 0 else "-") + c for c, s in w.letters]
    return "lickorish v1\ngenus %d\nword %s\n" % (w.genus, " ".join(toks))


@dataclass(frozen=True)
class SurgeryComponent:
    curve: str
    height: Fraction
    coefficient: int
    role: str           # "correction" | "twist"

    @property
    def kind(self):
        return self.curve.rstrip("0123456789")

    @property
    def index(self):
        return int(self.curve[len(self.kind):])

    @property
    def label(self):
        return f"{self.curve}({self.height})"


@dataclass(frozen=True)
class SymbolicSurgeryLink:
    genus: int
    components: tuple

    def __post_init__(self):
        hs = [c.height for c in self.components]
        if len(set(hs)) != len(hs):
            raise LickorishError("component heights must be distinct")


def algorithm1(w: LickorishWord) -> SymbolicSurgeryLink:
    comps = []
    for j in range(1, w.genus + 1):
        comps.append(SurgeryComponent(f"alpha{j}", Fraction(0), 1, "correction"))
    for j in range(1, w.genus + 1):
        comps.append(SurgeryComponent(f"beta{j}", Fraction(-1), 1, "correction"))
    n = len(w.letters)
    for k, (c, s) in enumerate(w.letters, start=1):
        comps.append(SurgeryComponent(c, Fraction(k, n), -s, "twist"))
    # corrections at equal heights only clash for distinct handles, which are disjoint
    return _Symbolic(w.genus, tuple(comps))


class _Symbolic(SymbolicSurgeryLink):
    def __post_init__(self):
        seen = {}
        for c in self.components:
            key = c.height
            if c.role == "twist" and key in seen:
                raise LickorishError("twist heights must be distinct")
            seen[key] = c


def symbolic_document(s: SymbolicSurgeryLink) -> dict:
    return {"format": "surgery-symbolic v1", "genus": s.genus,
            "components": [{"type": c.kind, "index": c.index, "height": str(c.height),
                            "coefficient": c.coefficient, "role": c.role}
                           for c in s.components]}


def load_symbolic(doc) -> SymbolicSurgeryLink:
    if doc.get("format") != "surgery-symbolic v1":
        raise LickorishError(f"unsupported format {doc.get('format')!r}")
    comps = tuple(SurgeryComponent(f"{c['type']}{c['index']}", Fraction(c["height"]),
                                   int(c["coefficient"]), c.get("role", "twist"))
                  for c in doc["components"])
    return _Symbolic(int(doc["genus"]), comps)


# ---------------------------------------------------------------------------
# rendering

@dataclass
class _Piece:
    copy: int
    step: int           # walk index
    edge: int
    rightward: bool


def _rotation(gf):
    """Dart -> (vertex, position in the cyclic order L ascending, R ascending)."""
    by_v = {}
    for d in range(len(gf.dart_vertex)):
        by_v.setdefault(gf.dart_vertex[d], []).append(d)
    pos, deg = {}, {}
    for v, ds in by_v.items():
        ds.sort(key=lambda d: (gf.dart_side[d] != L_SIDE, gf.dart_rank[d]))
        for i, d in enumerate(ds):
            pos[d] = i
        deg[v] = len(ds)
    return pos, deg


def _slot_order(gf, copies):
    """Transverse order of the parallel passes of one copy along each edge.

    Two passes along the same edge are followed in the same direction until
    they leave a vertex through different darts; the one that turns sooner
    (counter-clockwise after the arrival dart) lies nearer the band side that
    precedes the dart counter-clockwise at the start.  Returns
    {(piece, dart): slot} with slots counted from that side at each end, so
    the order at the far end of an edge is the reverse of the near end."""
    out = {}
    pos = deg = None
    for c, (walk, h) in enumerate(copies):
        n = len(walk)
        by_edge = {}
        for i, d in enumerate(walk):
            by_edge.setdefault(d // 2, []).append(i)
        for e, steps in by_edge.items():
            if len(steps) < 2:
                continue
            if pos is None:
                pos, deg = _rotation(gf)
            d0 = 2 * e

            def seq(i, t):
                if walk[i] == d0:
                    return walk[(i + t) % n]
                return walk[(i - t) % n] ^ 1

            def cmp(i, j):
                for t in range(1, 2 * n + 1):
                    a, b = seq(i, t), seq(j, t)
                    if a != b:
                        x = seq(i, t - 1) ^ 1
                        v = gf.dart_vertex[x]
                        oa = (pos[a] - pos[x]) % deg[v]
                        ob = (pos[b] - pos[x]) % deg[v]
                        # each shared vertex passage reverses the two strands
                        higher = (oa < ob) != ((t - 1) % 2 == 1)
                        return 1 if higher else -1
                raise TemplateError("curve runs parallel to itself; not a simple closed curve")

            order = sorted(steps, key=functools.cmp_to_key(cmp))
            m = len(order)
            for slot, i in enumerate(order):
                out[((c, i), d0)] = slot
                out[((c, i), d0 ^ 1)] = slot
    return out


def _peel_turning(gf, seq, info, side):
    """Remove adjacent pairs forming a pass that turns back on ``side``,
    innermost first.  Returns (rest, [(index, pair), ...]) where index is the
    position of the pair in the sequence at the moment it is removed."""
    seq = list(seq)
    peeled = []

    def turning(p):
        a, b = info[p][3][3:]
        return gf.dart_side[a] == side and gf.dart_side[b] == side

    while True:
        for i in range(len(seq) - 1):
            if turning(seq[i]) and info[seq[i]][3] == info[seq[i + 1]][3]:
                peeled.append((i, (seq[i], seq[i + 1])))
                del seq[i:i + 2]
                break
        else:
            break
    if any(turning(p) for p in seq):
        raise TemplateError("turning pass is not adjacent")
    return seq, peeled


class _Renderer:
    def __init__(self, gf: GraphFront, copies):
        """copies: list of (walk, height)."""
        self.gf = gf
        self.copies = copies
        self.events = []
        self.strand_copy = []           # front strand id -> copy
        self.strand_upper_dir = []
        self.pieces = {}
        for c, (walk, h) in enumerate(copies):
            for i, d in enumerate(walk):
                self.pieces[(c, i)] = _Piece(c, i, d // 2, d % 2 == 0)
        self.sub = _slot_order(gf, copies)
        # passes at each vertex: (copy, in step, out step)
        self.passes = {}
        for c, (walk, h) in enumerate(copies):
            n = len(walk)
            for i in range(n):
                d_in, d_out = walk[i], walk[(i + 1) % n]
                v = gf.dart_vertex[d_out]
                self.passes.setdefault(v, []).append((c, i, (i + 1) % n, d_in ^ 1, d_out))

    # keys ---------------------------------------------------------------
    def _end_info(self, v):
        """For pieces ending or starting at v: piece -> (side, rank, other rank, pass)."""
        info = {}
        for (c, i_in, i_out, a, b) in self.passes.get(v, []):
            gf = self.gf
            ka, kb = gf.dart_rank[a], gf.dart_rank[b]
            sa, sb = self.sub.get(((c, i_in), a), 0), self.sub.get(((c, i_out), b), 0)
            info[(c, i_in)] = (gf.dart_side[a], ka, kb, (c, i_in, i_out, a, b), sa)
            info[(c, i_out)] = (gf.dart_side[b], kb, ka, (c, i_in, i_out, a, b), sb)
        return info

    def _near_key(self, pid, info):
        side, k, ko, _, sub = info[pid]
        h = self.copies[pid[0]][1]
        return (h, k, sub, ko, -pid[0], -pid[1])

    def _far_key(self, pid, info):
        side, k, ko, _, sub = info[pid]
        h = self.copies[pid[0]][1]
        return (k, h, sub, ko, -pid[0], -pid[1])

    # emission -------------------------------------------------------------
    def _swap_to(self, stack, start, target):
        """Bubble-sort stack[start:start+len(target)] into target, emitting X."""
        cur = stack[start:start + len(target)]
        if sorted(map(repr, cur)) != sorted(map(repr, target)):  # pragma: no cover
            raise TemplateError("block contents changed unexpectedly")
        pos = {p: i for i, p in enumerate(target)}
        changed = True
        while changed:
            changed = False
            for i in range(len(cur) - 1):
                if pos[cur[i]] > pos[cur[i + 1]]:
                    cur[i], cur[i + 1] = cur[i + 1], cur[i]
                    self.events.append(Event("X", start + i + 1))
                    changed = True
        stack[start:start + len(target)] = cur

    def run(self):
        gf = self.gf
        stack = []          # piece ids top to bottom
        for v, col in enumerate(gf.cols):
            info = self._end_info(v)
            g_before = gf.stacks[v - 1] if v > 0 else ()
            in_edges = list(g_before[col.pos:col.pos + col.m])
            above_edges = set(g_before[:col.pos])
            start = sum(1 for p in stack if self.pieces[p].edge in above_edges)
            block_len = sum(1 for p in stack if self.pieces[p].edge in set(in_edges))
            # within each incoming edge, order as required at this end
            off = start
            for e in in_edges:
                sub = [p for p in stack[off:off + block_len] if self.pieces[p].edge == e]
                want = sorted(sub, key=lambda p: self._far_key(p, info), reverse=True)
                self._swap_to(stack, off, want)
                off += len(sub)
            block = stack[start:start + block_len]
            # far -> near on the left
            near_l = sorted(block, key=lambda p: self._near_key(p, info), reverse=True)
            self._swap_to(stack, start, near_l)
            # right cusps for passes that turn back from the left, innermost first
            cur = stack[start:start + block_len]
            kept, peeled = _peel_turning(gf, cur, info, L_SIDE)
            for idx, _pair in peeled:
                self.events.append(Event("R", start + idx + 1))
            stack[start:start + block_len] = kept
            # through passes: continue onto the right side
            cont = {}
            for p in kept:
                c, i_in, i_out, a, b = info[p][3]
                cont[p] = (c, i_out) if p == (c, i_in) else (c, i_in)
            right_all = []
            for (c, i_in, i_out, a, b) in self.passes.get(v, []):
                if gf.dart_side[b] == R_SIDE:
                    right_all.append((c, i_out))
                if gf.dart_side[a] == R_SIDE:
                    right_all.append((c, i_in))
            near_r = sorted(right_all, key=lambda p: self._near_key(p, info), reverse=True)
            through_r = [p for p in near_r if p in set(cont.values())]
            inv = {q: p for p, q in cont.items()}
            self._swap_to(stack, start, [inv[q] for q in through_r])
            stack[start:start + len(kept)] = through_r
            # left cusps for passes that turn back from the right, outermost first
            rest, peeled = _peel_turning(gf, near_r, info, R_SIDE)
            if rest != through_r:  # pragma: no cover
                raise TemplateError(f"through passes out of order at vertex {v}")
            blk = list(through_r)
            for idx, (q, q2) in reversed(peeled):
                c, i_in, i_out = info[q][3][:3]
                self.events.append(Event("L", start + idx + 1))
                blk[idx:idx] = [q, q2]
                # the strand leaving rightward is the walk's out step
                self.strand_copy += [c, c]
                self.strand_upper_dir += [1 if q == (c, i_out) else -1, None]
            stack[start:start + len(kept)] = blk
            # near -> far on the right
            far_r = sorted(blk, key=lambda p: self._far_key(p, info), reverse=True)
            self._swap_to(stack, start, far_r)
            # check grouping by outgoing edges
            out_edges = list(gf.stacks[v][col.pos:col.pos + col.n])
            got = [self.pieces[p].edge for p in stack[start:start + len(far_r)]]
            exp = sorted(got, key=lambda e: out_edges.index(e))
            if got != exp:  # pragma: no cover
                raise TemplateError(f"bundle order broken after vertex {v}")
        if stack:  # pragma: no cover
            raise TemplateError("strands left open")
        return self.events


def render_copies(gf: GraphFront, copies, labels=None):
    """Front of the given (walk, height) copies drawn near the graph."""
    r = _Renderer(gf, copies)
    events = r.run()
    base = FrontDiagram(tuple(events))
    n = base.ncomponents
    comp_copy = [None] * n
    ori = [1] * n
    for s, c in enumerate(r.strand_copy):
        k = base.strand_component(s)
        if comp_copy[k] is None:
            comp_copy[k] = c
        elif comp_copy[k] != c:  # pragma: no cover
            raise TemplateError("one front component carries two copies")
    # orientation: direction of the upper strand at each component's first left cusp
    first = {}
    for s, c in enumerate(r.strand_copy):
        k = base.strand_component(s)
        if k not in first and r.strand_upper_dir[s] is not None:
            first[k] = r.strand_upper_dir[s]
    for k in range(n):
        ori[k] = first.get(k, 1)
    if None in comp_copy or sorted(comp_copy) != list(range(len(copies))):
        raise TemplateError("copies and front components do not match")
    d = FrontDiagram(tuple(events), tuple(ori))
    # reorder nothing in the word; report the copy of each component
    labs = None
    if labels is not None:
        labs = tuple(labels[comp_copy[k]] for k in range(n))
        d = d.with_labels(labs)
    return d, comp_copy


@dataclass
class RenderedLink:
    front: FrontDiagram
    coefficients: list      # per front component
    components: list        # SurgeryComponent per front component

    def coefficient_map(self):
        return {self.front.labels[k]: c for k, c in enumerate(self.coefficients)}


def render_surgery_link(s: SymbolicSurgeryLink, check=True) -> RenderedLink:
    page = lickorish_atlas(s.genus)
    gf = page.skeleton
    copies = [(page.curve(c.curve), c.height) for c in s.components]
    labels = [c.label for c in s.components]
    d, comp_copy = render_copies(gf, copies, labels)
    comps = [s.components[comp_copy[k]] for k in range(d.ncomponents)]
    out = RenderedLink(d, [c.coefficient for c in comps], comps)
    if check:
        problems = render_structure_checks(out)
        if problems:
            raise TemplateError("; ".join(problems))
    return out


def _classify(xs) -> str:
    n = len(xs)
    lk2 = sum(x.sign for x in xs)
    if n == 0 or (n == 2 and lk2 == 0):
        return "unlink"
    if n == 2 and abs(lk2) == 2:
        return "hopf"
    if n == 4 and abs(lk2) == 4 and len({x.sign for x in xs}) == 1:
        return "torus(-4,2)"
    return "other"


def classify_pair(d: FrontDiagram, a: int, b: int) -> str:
    return _classify(mutual_crossings(d, a, b))


def sublink_table(d: FrontDiagram):
    """{(a, b): class} for every pair of components."""
    groups = {}
    for x in d.crossings():
        a, b = x.comps
        if a != b:
            groups.setdefault((min(a, b), max(a, b)), []).append(x)
    return {(a, b): _classify(groups.get((a, b), []))
            for a, b in itertools.combinations(range(d.ncomponents), 2)}


def render_structure_checks(r: RenderedLink):
    d = r.front
    problems = []
    for k, (c, t) in enumerate(zip(r.components, tb_all(d))):
        want = -2 if c.kind == "gamma" else -1
        if t != want:
            problems.append(f"{d.labels[k]} has tb {t}, expected {want}")
    for (a, b), cls in sublink_table(d).items():
        if cls == "other":
            problems.append(f"sublink {d.labels[a]}, {d.labels[b]} is not unlink/Hopf/(-4,2)")
    return problems


def rendered_h1(r: RenderedLink):
    from .invariants import linking_matrix_front
    return la.cokernel(linking_matrix_front(r.front, r.coefficients))


def all_words(g: int, max_len: int):
    gens = [(c, s) for c in curve_names(g) for s in (1, -1)]
    for n in range(max_len + 1):
        for letters in itertools.product(gens, repeat=n):
            yield LickorishWord(g, tuple(letters))


# ---------------------------------------------------------------------------
# pair catalogue

@functools.lru_cache(maxsize=None)
def pair_catalogue(g: int):
    """Two-copy renders: {(upper curve, lower curve, tie): (lk, class)}.

    The renderer decides every crossing between two copies from their own
    passes and height order alone, so each two-component sublink of a
    full render is one of these."""
    page = lickorish_atlas(g)
    gf = page.skeleton
    names = curve_names(g)
    out = {}
    for a in names:
        for b in names:
            for tie in (False, True):
                # equal heights only occur for corrections on different handles
                if tie and (a == b or a.rstrip("0123456789") != b.rstrip("0123456789")
                            or a.startswith("gamma")):
                    continue
                ha, hb = (Fraction(0), Fraction(0)) if tie else (Fraction(1), Fraction(0))
                d, comp_copy = render_copies(gf, [(page.curve(a), ha), (page.curve(b), hb)])
                ka, kb = comp_copy.index(0), comp_copy.index(1)
                xs = mutual_crossings(d, ka, kb)
                lk = linking_number(d, ka, kb)
                out[(a, b, tie)] = (lk, _classify(xs))
    return out


def _pair_key(ca: SurgeryComponent, cb: SurgeryComponent):
    if ca.height == cb.height:
        return (ca.curve, cb.curve, True)
    if ca.height > cb.height:
        return (ca.curve, cb.curve, False)
    return (cb.curve, ca.curve, False)


def predicted_linking_matrix(s: SymbolicSurgeryLink):
    """Linking matrix assembled from the pair catalogue, in component order."""
    cat = pair_catalogue(s.genus)
    comps = s.components
    n = len(comps)
    M = la.zeros(n, n)
    for i, c in enumerate(comps):
        M[i][i] = (-2 if c.kind == "gamma" else -1) + c.coefficient
        for j in range(i + 1, n):
            M[i][j] = M[j][i] = cat[_pair_key(c, comps[j])][0]
    return M


def predicted_sublinks(s: SymbolicSurgeryLink):
    cat = pair_catalogue(s.genus)
    comps = s.components
    return {(i, j): cat[_pair_key(comps[i], comps[j])][1]
            for i, j in itertools.combinations(range(len(comps)), 2)}
