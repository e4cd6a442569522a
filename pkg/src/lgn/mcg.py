"""Twist words on ribbon surfaces: homology action, variation map, and
the relation library used by the ribbon moves.

A positive twist about c acts on H1 by the transvection
x -> x + <x, c> c.  Words are stored with the rightmost letter applied
first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import intlinalg as la
from .ribbon import FatGraph, OpenBook, RibbonError, RibbonSurface


class MoveError(ValueError):
    pass


@dataclass
class TwistWord:
    surface: RibbonSurface
    letters: list       # [(curve, sign)], rightmost applied first

    def __post_init__(self):
        for c, s in self.letters:
            self.surface.curve(c)
            if s not in (1, -1):
                raise RibbonError(f"bad sign {s!r}")

    def __mul__(self, other):
        """Composition self o other."""
        if other.surface is not self.surface:
            raise RibbonError("words live on different surfaces")
        return TwistWord(self.surface, list(self.letters) + list(other.letters))

    def inverse(self):
        return TwistWord(self.surface, [(c, -s) for c, s in reversed(self.letters)])

    def power(self, k):
        return TwistWord(self.surface, list(self.letters) * k)


@dataclass
class HomologyAction:
    matrix: list
    basis: list         # basis edges (non-tree) of the fat graph
    pairing: list


def _transvection(J, c, s):
    """Matrix of x -> x + s <x, c> c, with <x, c> = x^T J c."""
    n = len(c)
    Jc = la.matvec(J, c)      # <x, c> = sum_i x_i (J c)_i
    M = la.identity(n)
    for i in range(n):
        if c[i]:
            for j in range(n):
                if Jc[j]:
                    M[i][j] += s * c[i] * Jc[j]
    return M


def homology_action(w: TwistWord) -> HomologyAction:
    fg = w.surface.fatgraph
    J = fg.pairing()
    n = fg.rank
    M = la.identity(n)
    for c, s in reversed(w.letters):
        M = la.matmul(_transvection(J, w.surface.coords(c), s), M)
    return HomologyAction(M, list(fg.basis_edges), J)


def variation_matrix(w: TwistWord):
    """Matrix of a -> Phi(a) - a from H1(S, dS) (dual arcs) to H1(S)."""
    fg = w.surface.fatgraph
    J = fg.pairing()
    n = fg.rank
    V = la.zeros(n, n)
    for c, s in reversed(w.letters):
        x = w.surface.coords(c)
        T = _transvection(J, x, s)
        V = la.add(la.matmul(T, V), la.outer(x, x, s))
    return V


def variation_h1(ob: OpenBook):
    """First homology of the open-book manifold as (torsion, free rank)."""
    w = TwistWord(ob.page, list(ob.word))
    n = ob.page.fatgraph.rank
    if n == 0:
        return [], 0
    return la.cokernel(variation_matrix(w), n)


def check_relation(w1: TwistWord, w2: TwistWord) -> str:
    """'homology-equal' or 'homology-distinct'.  A necessary condition only.

    Both the action on H1 and the variation map are compared; the latter
    sees twists about boundary-parallel curves, which act trivially on H1.
    """
    if w1.surface.fatgraph is not w2.surface.fatgraph:
        raise RibbonError("relation sides live on different surfaces")
    a1, a2 = homology_action(w1), homology_action(w2)
    if a1.matrix != a2.matrix:
        return "homology-distinct"
    if variation_matrix(w1) != variation_matrix(w2):
        return "homology-distinct"
    return "homology-equal"


def preserves_pairing(a: HomologyAction) -> bool:
    M, J = a.matrix, a.pairing
    return la.matmul(la.matmul(la.transpose(M), J), M) == J


# ---------------------------------------------------------------------------
# curves as walks: crossings and twisting

def reduce_walk(w):
    """Cancel back-and-forth steps (d followed by d ^ 1), cyclically."""
    out = []
    for d in w:
        if out and out[-1] == d ^ 1:
            out.pop()
        else:
            out.append(d)
    while len(out) >= 2 and out[0] == out[-1] ^ 1:
        out = out[1:-1]
    return out


def walk_crossings(fg: FatGraph, wa, wb):
    """[(i, j, sign)]: wa's passage through the vertex after step i meets
    wb's passage after step j; the signs sum to fg.intersection(wa, wb)."""
    na, nb = len(wa), len(wb)
    passes_a = {}
    for i in range(na):
        a, b = wa[i], wa[(i + 1) % na]
        passes_a.setdefault(fg.vertex_of[b], []).append((i, a ^ 1, b))
    out = []
    for j in range(nb):
        a, b = wb[j], wb[(j + 1) % nb]
        v = fg.vertex_of[b]
        if v not in passes_a:
            continue
        k = len(fg.rotation[v])
        n = 3 * k
        r = 3 * fg.where[a ^ 1][1]
        s = 3 * fg.where[b][1] + 2
        for (i, p0, q0) in passes_a[v]:
            p = 3 * fg.where[p0][1] + 1
            q = 3 * fg.where[q0][1] + 1
            if p == q:
                continue
            r_in = (r - p) % n < (q - p) % n
            s_in = (s - p) % n < (q - p) % n
            if r_in != s_in:
                out.append((i, j, -1 if r_in else 1))
    return out


def twist_walk(fg: FatGraph, w, c, s):
    """A walk for D_c^s(w): a copy of c spliced in at every crossing.

    With <w, c> the algebraic count, the class of the result is
    [w] + s <w, c> [c], matching the transvection of a twist."""
    xs = walk_crossings(fg, w, c)
    if not xs:
        return list(w)
    nc = len(c)
    at = {}
    for i, j, sign in xs:
        if s * sign > 0:
            loop = [c[(j + 1 + t) % nc] for t in range(nc)]
        else:
            loop = [c[(j - t) % nc] ^ 1 for t in range(nc)]
        at.setdefault(i, []).append(loop)
    out = []
    for i, d in enumerate(w):
        out.append(d)
        for loop in at.get(i, ()):
            out += loop
    out = reduce_walk(out)
    fg.check_walk(out)
    return out


def image_walk(fg: FatGraph, surface: RibbonSurface, letters, w):
    """Walk for Phi(w) where Phi is a right-to-left twist word."""
    for name, s in reversed(letters):
        w = twist_walk(fg, w, surface.curve(name), s)
    return w


# ---------------------------------------------------------------------------
# surgery links on a ribbon

@dataclass(frozen=True)
class RibbonComponent:
    curve: str
    height: Fraction
    coefficient: int        # contact coefficient, +1 or -1
    name: str = ""

    @property
    def label(self):
        return self.name or f"{self.curve}@{self.height}"


@dataclass
class RibbonLink:
    """Legendrian curves on R_G x [-1, 1]: each component is an atlas
    curve Reeb-translated to its height.  The mapping class it determines
    is D_{L_n}^{-c_n} o ... o D_{L_1}^{-c_1}, lowest height first."""
    surface: RibbonSurface
    components: tuple
    annotations: dict = field(default_factory=dict)
    page_word: list = None      # monodromy of an open book of S^3 with this page

    def __post_init__(self):
        comps = []
        for c in self.components:
            if not isinstance(c, RibbonComponent):
                c = RibbonComponent(*c)
            self.surface.curve(c.curve)
            if c.coefficient not in (1, -1):
                raise MoveError(f"ribbon components take coefficients +-1, not {c.coefficient}")
            comps.append(RibbonComponent(c.curve, Fraction(c.height), c.coefficient, c.name))
        comps.sort(key=lambda c: c.height)
        for a, b in zip(comps, comps[1:]):
            if a.height == b.height and self.surface.fatgraph.intersection(
                    self.surface.curve(a.curve), self.surface.curve(b.curve)):
                raise MoveError(f"{a.label} and {b.label} meet at the same height")
        labels = [c.label for c in comps]
        if len(set(labels)) != len(labels):
            raise MoveError("component labels must be distinct")
        self.components = tuple(comps)

    @property
    def graph(self):
        return self.surface.skeleton

    def index(self, label):
        for i, c in enumerate(self.components):
            if c.label == label:
                return i
        raise MoveError(f"no component {label!r}")

    def word(self) -> TwistWord:
        return TwistWord(self.surface, [(c.curve, -c.coefficient)
                                        for c in reversed(self.components)])

    def open_book(self) -> OpenBook:
        if self.page_word is None:
            raise MoveError("this ribbon is not the page of an open book of S^3")
        return OpenBook(self.surface, list(self.page_word) + self.word().letters)

    def replace(self, components, **kw):
        return RibbonLink(self.surface, tuple(components),
                          kw.get("annotations", dict(self.annotations)), self.page_word)

    def linking_matrix(self):
        """Linking matrix from the Seifert form of the page: lk of an upper
        and a lower component is theta(upper, lower), the diagonal is the page
        framing theta(K, K) plus the contact coefficient."""
        th = seifert_form(self.surface)
        fg = self.surface.fatgraph
        xs = [fg.coords(self.surface.curve(c.curve)) for c in self.components]
        n = len(xs)
        M = la.zeros(n, n)
        for i in range(n):
            for j in range(n):
                if i == j:
                    M[i][i] = _bil(th, xs[i], xs[i]) + self.components[i].coefficient
                else:
                    hi, lo = (i, j) if i > j else (j, i)
                    M[i][j] = _bil(th, xs[hi], xs[lo])
        return M

    def render(self, check=True):
        """Front of the link drawn near the skeleton.  With ``check`` each
        component's tb and every linking number are compared with the page
        framing; a mismatch means the drawing is not a Legendrian realization
        of the link (this happens for curves running parallel to themselves)."""
        from .lickorish import render_copies, TemplateError
        from .front import linking_table, tb_all
        comps = self.components
        d, comp_copy = render_copies(self.graph, [(self.surface.curve(c.curve), c.height)
                                                  for c in comps],
                                     [c.label for c in comps])
        if check and comps:
            want = self.linking_matrix()
            lk, tbs = linking_table(d), tb_all(d)
            for k in range(d.ncomponents):
                i = comp_copy[k]
                if tbs[k] != want[i][i] - comps[i].coefficient:
                    raise TemplateError(f"{comps[i].label}: drawn with tb {tbs[k]}, page framing "
                                        f"{want[i][i] - comps[i].coefficient}")
                for k2 in range(d.ncomponents):
                    if k2 != k and lk[k][k2] != want[i][comp_copy[k2]]:
                        raise TemplateError(f"{comps[i].label}: linking numbers disagree "
                                            "with the Seifert form")
        from .invariants import SurgeryDiagram
        return SurgeryDiagram(d, tuple(comps[comp_copy[k]].coefficient
                                       for k in range(d.ncomponents)),
                              provenance=self.open_book() if self.page_word else None)

    def renderable(self):
        from .lickorish import TemplateError
        try:
            self.render()
        except TemplateError:
            return False
        return True

    def h1(self):
        """H1 of the surgered manifold from the Seifert-form linking matrix."""
        if not self.components:
            return Homology((), 0)
        from .invariants import h1_from_surgery
        return h1_from_surgery(self.linking_matrix())

    def h1_rendered(self):
        from .invariants import h1_of
        if not self.components:
            return Homology((), 0)
        return h1_of(self.render())


def _bil(th, x, y):
    return sum(x[i] * th[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j])


_SEIFERT = {}


def seifert_form(surface):
    """theta(x, y) = lk(x pushed up the Reeb direction, y) on the basis
    cycles of the fat graph.  Basis cycles are embedded in the skeleton, so
    two stacked copies render faithfully."""
    from .lickorish import render_copies
    from .front import linking_number
    key = id(surface.skeleton)
    hit = _SEIFERT.get(key)
    if hit is not None and hit[0] is surface.skeleton:
        return hit[1]
    fg = surface.fatgraph
    walks = [fg.basis_walk(e) for e in fg.basis_edges]
    n = len(walks)
    th = la.zeros(n, n)
    for i in range(n):
        for j in range(n):
            d, cc = render_copies(surface.skeleton, [(walks[i], 1), (walks[j], 0)])
            th[i][j] = linking_number(d, cc.index(0), cc.index(1))
    _SEIFERT[key] = (surface.skeleton, th)
    return th


from .invariants import Homology  # noqa: E402


def _curve_name(surface, base):
    if base not in surface.atlas:
        return base
    k = 2
    while f"{base}#{k}" in surface.atlas:
        k += 1
    return f"{base}#{k}"


def _with_curve(link: RibbonLink, base, walk):
    """Add (or reuse) a named curve on the link's surface."""
    s = link.surface
    for k, w in s.atlas.items():
        if w == walk:
            return link, k
    name = _curve_name(s, base)
    s2 = s.with_curves({name: walk})
    s2.skeleton = s.skeleton
    return RibbonLink(s2, link.components, dict(link.annotations), link.page_word), name


# ---------------------------------------------------------------------------
# configuration surfaces

def _saucer_chain_graph(kinds):
    """Saucers stacked top to bottom, each kissing the next."""
    from .complex import Column, GraphFront
    n = len(kinds)
    cols = []
    for i in range(n):
        cols.append(Column(2 * i, 0, 2, ((f"u", i), (f"l", i)), "left-cusp", len(cols)))
    # stack: u0 l0 u1 l1 ... ; kiss l_i with u_{i+1}
    for i in range(n - 1):
        cols.append(Column(2 * i + 1, 2, 2, ((f"l2", i), (f"u2", i + 1)), "kiss", len(cols)))
    for i in range(n):
        cols.append(Column(0, 2, 0, (), "right-cusp", len(cols)))
    return GraphFront(None, cols)


def _cycle_walk(gf, uppers, lowers):
    """Walk right along the upper edges and back left along the lower ones."""
    ids = {e.label: i for i, e in enumerate(gf.edges)}
    w = [2 * ids[x] for x in uppers if x in ids]
    w += [2 * ids[x] + 1 for x in reversed(lowers) if x in ids]
    return w


def chain3_surface() -> RibbonSurface:
    """R_{A v B v C}: three tb=-1 saucers in a kissing chain, a twice
    punctured torus.  X and Y are its boundary-parallel curves."""
    gf = _saucer_chain_graph("ABC")
    fg = FatGraph.from_graphfront(gf)
    atlas = {
        "A": _cycle_walk(gf, [("u", 0)], [("l", 0), ("l2", 0)]),
        "B": _cycle_walk(gf, [("u", 1), ("u2", 1)], [("l", 1), ("l2", 1)]),
        "C": _cycle_walk(gf, [("u", 2), ("u2", 2)], [("l", 2)]),
    }
    bd = fg.boundary_cycles()
    if len(bd) != 2:  # pragma: no cover - fixed template
        raise MoveError("chain surface should have two boundary components")
    atlas["X"], atlas["Y"] = bd[0], bd[1]
    s = RibbonSurface(fg, atlas)
    s.skeleton = gf
    return s


def _star_graph():
    """Saucer 0 whose right cusp sends arcs to the left cusps of saucers 1
    (above) and 2 (below)."""
    from .complex import Column, GraphFront
    cols = [Column(0, 0, 2, (("u", 0), ("l", 0)), "left-cusp", 0),
            Column(0, 2, 2, (("c", 1), ("c", 2)), "right-cusp", 1),
            Column(0, 1, 2, (("u", 1), ("l", 1)), "left-cusp", 2),
            Column(2, 1, 2, (("u", 2), ("l", 2)), "left-cusp", 3),
            Column(0, 2, 0, (), "right-cusp", 4),
            Column(0, 2, 0, (), "right-cusp", 5)]
    return GraphFront(None, cols)


def lantern_surface() -> RibbonSurface:
    """A disk with three holes as the ribbon of a star of three saucers.

    a, b, c run around the holes and d around the outer boundary; e, f, g
    enclose the hole pairs {a, b}, {b, c} and {a, c}."""
    from .lickorish import _sub_boundaries
    gf = _star_graph()
    fg = FatGraph.from_graphfront(gf)
    ids = {e.label: i for i, e in enumerate(gf.edges)}
    u = [ids[("u", i)] for i in range(3)]
    lo = [ids[("l", i)] for i in range(3)]
    c1, c2 = ids[("c", 1)], ids[("c", 2)]

    def around(es, must):
        for b in _sub_boundaries(fg, es):
            if all(2 * e in b and 2 * e + 1 in b for e in must):
                return b
        raise MoveError("lantern template broken")  # pragma: no cover

    bd = fg.boundary_cycles()
    atlas = {}
    for b in bd:
        es = {d // 2 for d in b}
        if c1 in es and c2 in es:
            atlas["d"] = b
        elif u[0] in es:
            atlas["a"] = b
        elif u[1] in es:
            atlas["b"] = b
        else:
            atlas["c"] = b
    atlas["e"] = around([u[0], lo[0], c1, u[1], lo[1]], [c1])
    atlas["f"] = around([u[1], lo[1], c1, c2, u[2], lo[2]], [c1, c2])
    atlas["g"] = around([u[0], lo[0], c2, u[2], lo[2]], [c2])
    s = RibbonSurface(fg, atlas)
    s.skeleton = gf
    return s


def torus_surface() -> RibbonSurface:
    """R_{A v B}: the punctured torus of two pinched tb=-1 unknots."""
    from .lickorish import lickorish_atlas
    base = lickorish_atlas(1)
    s = RibbonSurface(base.fatgraph, {"A": base.curve("alpha1"), "B": base.curve("beta1")})
    s.skeleton = base.skeleton
    return s


# ---------------------------------------------------------------------------
# moves

MOVE_KINDS = ("cancel_insert", "cancel_delete", "handle_slide", "braid", "chain3", "lantern",
              "conjugate", "delete_positive_stab")


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    site: tuple = ()                # component labels
    params: tuple = ()              # sorted (key, value) pairs

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise MoveError(f"unknown move {self.kind!r}")
        object.__setattr__(self, "site", tuple(self.site))
        p = self.params
        if isinstance(p, dict):
            p = tuple(sorted(p.items()))
        object.__setattr__(self, "params", tuple(p))

    def param(self, key, default=None):
        return dict(self.params).get(key, default)


def _guard(old: RibbonLink, new: RibbonLink, what):
    """Old and new sublinks must determine the same class on H1 (action and
    variation); anything else is a bug in the move."""
    if check_relation(old.word(), new.word()) != "homology-equal":
        raise MoveError(f"{what}: homology guard failed")
    return new


def _adjacent(link, i, j):
    lo, hi = sorted((i, j))
    return hi == lo + 1


def _between(h1, h2):
    return (h1 + h2) / 2


def _slot_free(link, h, skip=()):
    return all(c.height != h for k, c in enumerate(link.components) if k not in skip)


def ribbon_cancel_insert(link: RibbonLink, curve, coefficient, height) -> RibbonLink:
    """Add K^c(h) with its Reeb pushoff K^-c just below it."""
    height = Fraction(height)
    below = [c.height for c in link.components if c.height < height]
    lo = max(below) if below else height - 1
    h2 = _between(lo, height)
    if not _slot_free(link, height) or not _slot_free(link, h2):
        raise MoveError("insertion heights are taken")
    new = link.replace(list(link.components) +
                       [RibbonComponent(curve, height, coefficient),
                        RibbonComponent(curve, h2, -coefficient)])
    return _guard(link, new, "cancel_insert")


def ribbon_cancel_delete(link: RibbonLink, a, b) -> RibbonLink:
    i, j = link.index(a), link.index(b)
    ca, cb = link.components[i], link.components[j]
    if ca.curve != cb.curve or ca.coefficient != -cb.coefficient:
        raise MoveError("cancel_delete needs one curve with opposite coefficients")
    if not _adjacent(link, i, j):
        raise MoveError("cancel_delete needs the two copies adjacent in height")
    new = link.replace([c for k, c in enumerate(link.components) if k not in (i, j)])
    return _guard(link, new, "cancel_delete")


def ribbon_handle_slide(link: RibbonLink, a, b, variant) -> RibbonLink:
    """Slide B over A.  Variants 1/2: B sits just below A with coefficient
    -1/+1 on A; variants 3/4: B sits just above A, again -1/+1 on A."""
    variant = int(variant)
    if variant not in (1, 2, 3, 4):
        raise MoveError("handle_slide variant must be 1-4")
    i, j = link.index(a), link.index(b)
    A, B = link.components[i], link.components[j]
    fg = link.surface.fatgraph
    wa, wb = link.surface.curve(A.curve), link.surface.curve(B.curve)
    if abs(fg.intersection(wa, wb)) != 1:
        raise MoveError("handle_slide needs i(A, B) = 1")
    if not _adjacent(link, i, j):
        raise MoveError("handle_slide needs A and B adjacent in height")
    want_coef = -1 if variant in (1, 3) else 1
    if A.coefficient != want_coef:
        raise MoveError(f"variant {variant} needs coefficient {want_coef:+d} on A")
    e = -A.coefficient                  # twist sign of A
    below = j < i
    if variant in (1, 2) and not below:
        raise MoveError(f"variant {variant} needs B below A")
    if variant in (3, 4) and below:
        raise MoveError(f"variant {variant} needs B above A")
    if below:
        # D_A^e o D_B = D_{D_A^e(B)} o D_A^e
        walk = twist_walk(fg, wb, wa, e)
    else:
        # D_B o D_A^e = D_A^e o D_{D_A^-e(B)}
        walk = twist_walk(fg, wb, wa, -e)
    link2, name = _with_curve(link, f"slide({B.curve},{A.curve})", walk)
    lo, hi = sorted((A.height, B.height))
    comps = [c for k, c in enumerate(link.components) if k not in (i, j)]
    if below:
        comps += [RibbonComponent(A.curve, lo, A.coefficient, A.name),
                  RibbonComponent(name, hi, B.coefficient, B.name)]
    else:
        comps += [RibbonComponent(name, lo, B.coefficient, B.name),
                  RibbonComponent(A.curve, hi, A.coefficient, A.name)]
    new = link2.replace(comps)
    old = link2.replace(link.components)
    return _guard(old, new, "handle_slide")


def ribbon_braid(link: RibbonLink, x1, y, x2) -> RibbonLink:
    """x(-) y(0) x(+)  ->  y(-) x(0) y(+) for i(x, y) = 1, one coefficient."""
    idx = sorted(link.index(t) for t in (x1, y, x2))
    if idx[2] - idx[0] != 2:
        raise MoveError("braid needs three components adjacent in height")
    c0, c1, c2 = (link.components[k] for k in idx)
    if c0.curve != c2.curve or c0.curve == c1.curve:
        raise MoveError("braid needs the pattern x, y, x")
    if len({c0.coefficient, c1.coefficient, c2.coefficient}) != 1:
        raise MoveError("braid needs equal coefficients")
    fg = link.surface.fatgraph
    if abs(fg.intersection(link.surface.curve(c0.curve), link.surface.curve(c1.curve))) != 1:
        raise MoveError("braid needs i(x, y) = 1")
    comps = [c for k, c in enumerate(link.components) if k not in idx]
    # the whole link is the braid sublink on its fixture: heights -1, 0, 1;
    # otherwise the three slots are reused so nothing else moves
    hs = [Fraction(-1), Fraction(0), Fraction(1)] if not comps else [c0.height, c1.height,
                                                                      c2.height]
    comps += [RibbonComponent(c1.curve, hs[0], c0.coefficient, c0.name),
              RibbonComponent(c0.curve, hs[1], c1.coefficient, c1.name),
              RibbonComponent(c1.curve, hs[2], c2.coefficient, c2.name)]
    return _guard(link, link.replace(comps), "braid")


def chain3_link(coefficient=-1) -> RibbonLink:
    """L = union_j C(1-j/2), B(1-j/2-1/6), A(1-j/2-1/3) on R_{A v B v C}."""
    s = chain3_surface()
    comps = []
    for j in range(4):
        top = 1 - Fraction(j, 2)
        comps += [RibbonComponent("C", top, coefficient, f"C{j}"),
                  RibbonComponent("B", top - Fraction(1, 6), coefficient, f"B{j}"),
                  RibbonComponent("A", top - Fraction(1, 3), coefficient, f"A{j}")]
    return RibbonLink(s, tuple(comps), {"configuration": "chain3"})


def ribbon_chain3(link: RibbonLink, site) -> RibbonLink:
    """Twelve components reading (C B A)^4 from the top -> X(+1), Y(-1)."""
    if link.annotations.get("configuration") != "chain3":
        raise MoveError("chain3 needs the R_{A v B v C} configuration")
    idx = sorted(link.index(t) for t in site) if site else list(range(len(link.components)))
    if len(idx) != 12 or idx[-1] - idx[0] != 11:
        raise MoveError("chain3 needs twelve components adjacent in height")
    comps = [link.components[k] for k in idx]
    pattern = [c.curve for c in reversed(comps)]
    if pattern != ["C", "B", "A"] * 4 or len({c.coefficient for c in comps}) != 1:
        raise MoveError("chain3 needs (C B A)^4 with one coefficient")
    coef = comps[0].coefficient
    rest = [c for k, c in enumerate(link.components) if k not in idx]
    hi, lo = comps[-1].height, comps[0].height
    new = link.replace(rest + [RibbonComponent("X", hi, coef, "X"),
                               RibbonComponent("Y", lo, coef, "Y")])
    return _guard(link, new, "chain3")


def lantern_link(coefficient=-1) -> RibbonLink:
    """Boundary curves d, c, b, a from the bottom: D_a o D_b o D_c o D_d."""
    s = lantern_surface()
    comps = tuple(RibbonComponent(n, Fraction(k), coefficient, n)
                  for k, n in enumerate("dcba"))
    return RibbonLink(s, comps, {"configuration": "lantern"})


def ribbon_lantern(link: RibbonLink, site) -> RibbonLink:
    """a, b, c, d  ->  e, f, g (D_a D_b D_c D_d = D_g D_f D_e)."""
    if link.annotations.get("configuration") != "lantern":
        raise MoveError("lantern needs the three-holed disk configuration")
    site = site or ("a", "b", "c", "d")
    idx = [link.index(t) for t in site]
    comps = [link.components[k] for k in idx]
    if sorted(c.curve for c in comps) != ["a", "b", "c", "d"]:
        raise MoveError("lantern needs the four boundary curves")
    if len({c.coefficient for c in comps}) != 1:
        raise MoveError("lantern needs one coefficient")
    coef = comps[0].coefficient
    hs = sorted(c.height for c in comps)
    rest = [c for k, c in enumerate(link.components) if k not in idx]
    new = link.replace(rest + [RibbonComponent("e", hs[0], coef, "e"),
                               RibbonComponent("f", hs[1], coef, "f"),
                               RibbonComponent("g", hs[2], coef, "g")])
    return _guard(link, new, "lantern")


def ribbon_conjugate(link: RibbonLink, curve, delta) -> RibbonLink:
    """Add (Phi^-1(K))^delta on top and K^-delta at the bottom, where Phi is
    the monodromy of the open book of S^3 whose page carries the link."""
    if link.page_word is None:
        raise MoveError("conjugation needs the page of an open book of S^3")
    delta = int(delta)
    if delta not in (1, -1):
        raise MoveError("delta must be +1 or -1")
    fg = link.surface.fatgraph
    inv = [(c, -s) for c, s in reversed(link.page_word)]
    k_walk = link.surface.curve(curve)
    walk = image_walk(fg, link.surface, inv, k_walk)
    link2, name = _with_curve(link, f"pull({curve})", walk)
    # squeeze the old link into (-1/2, 1/2); the new pair sits at 1 and -1
    span = max([abs(c.height) for c in link.components] + [Fraction(1)])
    comps = [RibbonComponent(c.curve, c.height / (2 * span), c.coefficient, c.name)
             for c in link.components]
    comps += [RibbonComponent(name, Fraction(1), delta), RibbonComponent(curve, Fraction(-1), -delta)]
    new = link2.replace(comps)
    # monodromies must be conjugate by D_K^delta
    old_w = TwistWord(link2.surface, list(link2.page_word) + link2.word().letters)
    new_w = TwistWord(link2.surface, list(new.page_word) + new.word().letters)
    conj = TwistWord(link2.surface, [(curve, -delta)]) * old_w * TwistWord(link2.surface,
                                                                          [(curve, delta)])
    if check_relation(new_w, conj) != "homology-equal":
        raise MoveError("conjugate: homology guard failed")
    return new


def lickorish_link(g, components=()) -> RibbonLink:
    """A ribbon link on the genus-g Lickorish page, which carries the open
    book of S^3 with monodromy prod D_beta_i o D_alpha_i."""
    from .lickorish import lickorish_atlas, skeleton_monodromy
    return RibbonLink(lickorish_atlas(g), tuple(components), {"configuration": f"lickorish{g}"},
                      skeleton_monodromy(g))


# -- front-level moves ------------------------------------------------------

def _front_site(d, labels):
    labs = list(d.front.labels)
    out = []
    for t in labels:
        if t not in labs:
            raise MoveError(f"no component {t!r}")
        out.append(labs.index(t))
    return out


def _h1_guard(old, new, what):
    from .invariants import h1_of
    if h1_of(old) != h1_of(new):
        raise MoveError(f"{what}: H1 guard failed")
    return new


def front_cancel_insert(d, label, coefficient):
    """Add a Reeb pushoff K' of the named component with the given
    coefficient, together with the pushoff of K' carrying the opposite one."""
    from .front import reeb_pushoff
    from .invariants import SurgeryDiagram, SurgeryCoefficient
    (c,) = _front_site(d, [label])
    coefficient = Fraction(coefficient)
    if abs(coefficient) != 1:
        raise MoveError("canceling pairs carry coefficients +1 and -1")
    f = reeb_pushoff(reeb_pushoff(d.front, c), c + 1)
    coefs = list(d.coefficients)
    coefs[c + 1:c + 1] = [SurgeryCoefficient(coefficient), SurgeryCoefficient(-coefficient)]
    labs = list(f.labels)
    labs[c + 1], labs[c + 2] = _fresh(labs, f"{label}.a"), _fresh(labs, f"{label}.b")
    new = SurgeryDiagram(f.with_labels(labs), tuple(coefs), dict(d.annotations))
    return _h1_guard(d, new, "cancel_insert")


def _fresh(labels, base):
    name, k = base, 2
    while name in labels:
        name, k = f"{base}{k}", k + 1
    return name


def is_pushoff_pair(front, a, b):
    """True iff component b is exactly the Reeb pushoff of a."""
    from .front import delete_components, reeb_pushoff
    if b != a + 1:
        return False
    rest = delete_components(front, [b])
    return reeb_pushoff(rest, a).events == front.events


def front_cancel_delete(d, a_label, b_label):
    from .front import delete_components
    from .invariants import SurgeryDiagram
    a, b = sorted(_front_site(d, [a_label, b_label]))
    if d.coefficients[a].contact != -d.coefficients[b].contact \
            or abs(d.coefficients[a].contact) != 1:
        raise MoveError("cancel_delete needs coefficients +1 and -1")
    if not is_pushoff_pair(d.front, a, b):
        raise MoveError("cancel_delete: the pair is not a Reeb pushoff pair")
    f = delete_components(d.front, [a, b])
    coefs = tuple(c for k, c in enumerate(d.coefficients) if k not in (a, b))
    new = SurgeryDiagram(f, coefs, _drop_annotations(d.annotations, {a_label, b_label}))
    return _h1_guard(d, new, "cancel_delete")


def _drop_annotations(ann, labels):
    out = dict(ann)
    mer = {k: v for k, v in out.get("meridians", {}).items()
           if k not in labels and v not in labels}
    if "meridians" in out:
        out["meridians"] = mer
    return out


def is_standard_meridian(d, mu, k) -> bool:
    """mu is a tb=-1 unknot (two cusps, no self-crossings) clasping k once
    and meeting no other component."""
    from .front import classical_invariants
    f = d.front
    inv = classical_invariants(f, mu)
    if inv.tb != -1 or inv.cusps != 2 or inv.crossings != 0:
        return False
    for x in f.crossings():
        a, b = x.comps
        if mu in (a, b) and a != b and ({a, b} != {mu, k}):
            return False
    xs = [x for x in f.crossings() if set(x.comps) == {mu, k}]
    return len(xs) == 2 and abs(sum(x.sign for x in xs)) == 2


def meridian_pairs(d):
    """[(knot index, meridian index)] declared or auto-detected."""
    labs = list(d.front.labels)
    out = set()
    for mu_lab, k_lab in d.annotations.get("meridians", {}).items():
        mu, k = labs.index(mu_lab), labs.index(k_lab)
        if not is_standard_meridian(d, mu, k):
            raise MoveError(f"declared meridian {mu_lab} of {k_lab} is not standard")
        out.add((k, mu))
    n = d.ncomponents
    for mu in range(n):
        for k in range(n):
            if mu != k and is_standard_meridian(d, mu, k):
                out.add((k, mu))
    return sorted(out)


def front_delete_positive_stab(d, k_label, mu_label):
    from .front import delete_components
    from .invariants import SurgeryDiagram
    k, mu = _front_site(d, [k_label, mu_label])
    if d.coefficients[k].contact != -1 or d.coefficients[mu].contact != 1:
        raise MoveError("delete_positive_stab needs K with -1 and its meridian with +1")
    if not is_standard_meridian(d, mu, k):
        raise MoveError(f"{mu_label} is not a standard meridian of {k_label}")
    f = delete_components(d.front, [k, mu])
    coefs = tuple(c for i, c in enumerate(d.coefficients) if i not in (k, mu))
    new = SurgeryDiagram(f, coefs, _drop_annotations(d.annotations, {k_label, mu_label}))
    return _h1_guard(d, new, "delete_positive_stab")


def detect_overtwisted_pattern(d) -> bool:
    """A +1 knot with a +1 standard meridian forces an overtwisted result."""
    if d.ncomponents == 0:
        return False
    return any(d.coefficients[k].contact == 1 and d.coefficients[mu].contact == 1
               for k, mu in meridian_pairs(d))


def add_meridian(d, label, coefficient=1, name=None):
    """Clasp a small tb=-1 unknot around the first strand of a component,
    just after its first left cusp."""
    from .front import Event, FrontDiagram
    from .invariants import SurgeryDiagram, SurgeryCoefficient
    (c,) = _front_site(d, [label])
    f = d.front
    k0 = next(k for k, e in enumerate(f.events)
              if e.kind == "L" and f.strand_component(f.event_strands(k)[0]) == c)
    p = f.events[k0].pos
    ev = list(f.events[:k0 + 1]) + [Event("L", p), Event("X", p + 1), Event("X", p + 1),
                                     Event("R", p)] + list(f.events[k0 + 1:])
    base = FrontDiagram(tuple(ev))
    # the new component is created right after c's first cusp
    order = _creation_index(base, k0 + 1)
    ori = list(f.orientations)
    lab = list(f.labels)
    coefs = list(d.coefficients)
    name = name or f"mu({label})"
    ori.insert(order, 1)
    lab.insert(order, name)
    coefs.insert(order, SurgeryCoefficient(coefficient))
    ann = dict(d.annotations)
    ann["meridians"] = dict(ann.get("meridians", {}), **{name: label})
    return SurgeryDiagram(FrontDiagram(tuple(ev), tuple(ori), tuple(lab)), tuple(coefs), ann)


def _creation_index(front, k):
    return front.strand_component(front.event_strands(k)[0])


def plumb_ribbon(d, a_label, b_label, config) -> RibbonLink:
    """Pinch two tb=-1 unknots along a Reeb chord into R_{A v B}.

    Configuration 1 (A stacked over B, unlinked) gives D_A^-dA o D_B^-dB;
    configuration 2 (clasped) gives D_B^-dB o D_A^-dA."""
    from .front import classical_invariants
    config = int(config)
    a, b = _front_site(d, [a_label, b_label])
    f = d.front
    for c in (a, b):
        inv = classical_invariants(f, c)
        if inv.tb != -1 or inv.cusps != 2 or inv.crossings != 0:
            raise MoveError("plumbing needs two tb=-1 unknots")
    xs = [x for x in f.crossings() if set(x.comps) == {a, b}]
    if config == 1 and xs:
        raise MoveError("configuration 1 needs A and B unlinked")
    if config == 2 and not (len(xs) == 2 and abs(sum(x.sign for x in xs)) == 2):
        raise MoveError("configuration 2 needs A and B clasped once")
    if config not in (1, 2):
        raise MoveError("config must be 1 or 2")
    ca, cb = d.coefficients[a].contact, d.coefficients[b].contact
    if abs(ca) != 1 or abs(cb) != 1:
        raise MoveError("plumbing needs +-1 coefficients")
    s = torus_surface()
    ha, hb = (Fraction(1), Fraction(0)) if config == 1 else (Fraction(0), Fraction(1))
    return RibbonLink(s, (RibbonComponent("A", ha, int(ca), a_label),
                          RibbonComponent("B", hb, int(cb), b_label)),
                      {"configuration": "torus", "plumbing": {"config": config,
                                                               "A": a_label, "B": b_label}})


def apply_move(d, m: MoveSpec):
    """Dispatch a move on a RibbonLink or a front-level SurgeryDiagram."""
    if isinstance(d, RibbonLink):
        k = m.kind
        if k == "cancel_insert":
            return ribbon_cancel_insert(d, m.param("curve"), int(m.param("coefficient", -1)),
                                        Fraction(m.param("height", "0")))
        if k == "cancel_delete":
            return ribbon_cancel_delete(d, *m.site)
        if k == "handle_slide":
            # site: the sliding component, then the one it slides over
            return ribbon_handle_slide(d, m.site[1], m.site[0], m.param("variant", 1))
        if k == "braid":
            return ribbon_braid(d, *m.site)
        if k == "chain3":
            return ribbon_chain3(d, m.site)
        if k == "lantern":
            return ribbon_lantern(d, m.site)
        if k == "conjugate":
            return ribbon_conjugate(d, m.param("curve"), int(m.param("delta", 1)))
        raise MoveError(f"{k} applies to front diagrams, not ribbon links")
    k = m.kind
    if k == "cancel_insert":
        return front_cancel_insert(d, m.site[0], Fraction(m.param("coefficient", -1)))
    if k == "cancel_delete":
        return front_cancel_delete(d, *m.site)
    if k == "delete_positive_stab":
        return front_delete_positive_stab(d, *m.site)
    raise MoveError(f"{k} needs a ribbon configuration; plumb the components first")


def parse_move_script(text):
    """Lines ``move <kind> <site ids...> [key=value ...]``; '#' comments."""
    moves = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#")[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "moves" and toks[1:] == ["v1"] and not moves:
            continue
        if toks[0] != "move" or len(toks) < 2:
            raise MoveError(f"line {ln}: expected 'move <kind> ...'")
        site = [t for t in toks[2:] if "=" not in t]
        params = dict(t.split("=", 1) for t in toks[2:] if "=" in t)
        try:
            moves.append(MoveSpec(toks[1], tuple(site), params))
        except MoveError as e:
            raise MoveError(f"line {ln}: {e}") from None
    return moves


def serialize_move_script(moves) -> str:
    lines = ["moves v1"]
    for m in moves:
        toks = ["move", m.kind, *m.site] + [f"{k}={v}" for k, v in m.params]
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


# -- ribbon link documents --------------------------------------------------

def named_surface(name):
    """(surface, page word or None) for a configuration name."""
    if name == "chain3":
        return chain3_surface(), None
    if name == "lantern":
        return lantern_surface(), None
    if name == "torus":
        return torus_surface(), None
    if name.startswith("lickorish"):
        from .lickorish import lickorish_atlas, skeleton_monodromy
        try:
            g = int(name[len("lickorish"):])
            return lickorish_atlas(g), skeleton_monodromy(g)
        except ValueError:
            pass
    raise MoveError(f"unknown configuration surface {name!r}")


def ribbonlink_document(link: RibbonLink) -> dict:
    conf = link.annotations.get("configuration")
    if conf is None:
        raise MoveError("ribbon link has no configuration name")
    surf, _ = named_surface(conf)
    extra = {k: v for k, v in link.surface.atlas.items() if k not in surf.atlas}
    return {"format": "ribbonlink v1", "configuration": conf,
            "curves": {k: list(v) for k, v in sorted(extra.items())},
            "components": [[c.curve, str(c.height), c.coefficient, c.label]
                           for c in link.components],
            "annotations": {k: v for k, v in link.annotations.items() if k != "configuration"}}


def dump_ribbonlink(link: RibbonLink) -> str:
    import json
    return json.dumps(ribbonlink_document(link), indent=1, sort_keys=True) + "\n"


def load_ribbonlink(text_or_doc) -> RibbonLink:
    import json
    doc = json.loads(text_or_doc) if isinstance(text_or_doc, str) else text_or_doc
    if not isinstance(doc, dict) or doc.get("format") != "ribbonlink v1":
        fmt = doc.get("format") if isinstance(doc, dict) else None
        raise MoveError(f"unsupported ribbon link format {fmt!r}")
    conf = doc["configuration"]
    surf, page = named_surface(conf)
    if doc.get("curves"):
        s2 = surf.with_curves({k: list(v) for k, v in doc["curves"].items()})
        s2.skeleton = surf.skeleton
        surf = s2
    comps = tuple(RibbonComponent(c, Fraction(h), int(k), name) for c, h, k, name in
                  doc["components"])
    ann = dict(doc.get("annotations") or {})
    ann["configuration"] = conf
    return RibbonLink(surf, comps, ann, page)
