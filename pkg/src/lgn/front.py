"""Legendrian fronts encoded as left-to-right words of Morse events.

A word is a sequence of ``L i`` (left cusp creating strands i, i+1),
``R i`` (right cusp joining strands i, i+1) and ``X i`` (strands i and i+1
cross).  Positions are 1-based and counted from the top.

Conventions used throughout the package:

* components are numbered 0, 1, ... in the order of their first left cusp
  (the text format uses 1-based numbers);
* orientation ``+`` means that at the first left cusp of the component the
  upper strand is traversed rightward;
* at a crossing the strand descending left-to-right passes in front; the
  crossing is positive exactly when both strands run in the same
  x-direction;
* a cusp is *down* when the traversal goes from its upper to its lower
  branch, and rot = (down - up) / 2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels


class FrontError(ValueError):
    """Invalid event word (range violation, unclosed strands, ...)."""


class FrontSyntaxError(FrontError):
    def __init__(self, msg, line=0, col=0):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


KINDS = ("L", "R", "X")
_CODE = {"L": _kernels.LEFT, "R": _kernels.RIGHT, "X": _kernels.CROSS}


@dataclass(frozen=True)
class Event:
    kind: str
    pos: int

    def __str__(self):
        return f"{self.kind} {self.pos}"


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: int
    crossings: int
    cusps: int
    writhe: int


@dataclass(frozen=True)
class Crossing:
    """One X event, seen from the link."""
    index: int          # event index in the word
    top: int            # strand id above just left of the crossing (the over strand)
    bottom: int
    comps: tuple        # (component of top, component of bottom)
    sign: int


class _Trace:
    """Strand bookkeeping derived once per diagram."""

    def __init__(self, events):
        kinds = np.array([_CODE[e.kind] for e in events], dtype=np.int64)
        pos = np.array([e.pos for e in events], dtype=np.int64)
        status, bad, fresh, top, bottom = _kernels.trace_word(kinds, pos)
        if status == _kernels.BAD_POSITION:
            e = events[bad]
            raise FrontError(f"event {bad + 1} ({e}): position out of range")
        if status == _kernels.UNCLOSED:
            raise FrontError("unclosed strands at end of word")
        self.kinds = kinds
        self.top = top
        self.bottom = bottom
        self.nstrands = fresh
        # union-find over strands, joined at cusps
        parent = list(range(fresh))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for k, e in enumerate(events):
            if e.kind != "X":
                ra, rb = find(int(top[k])), find(int(bottom[k]))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        # components ordered by first left cusp == smallest strand id
        roots = {}
        comp = np.empty(fresh, dtype=np.int64)
        for s in range(fresh):
            r = find(s)
            if r not in roots:
                roots[r] = len(roots)
            comp[s] = roots[r]
        self.comp = comp
        self.ncomp = len(roots)
        # first left cusp of each component
        self.first_cusp = [-1] * self.ncomp
        for k, e in enumerate(events):
            if e.kind == "L":
                c = int(comp[top[k]])
                if self.first_cusp[c] < 0:
                    self.first_cusp[c] = k

    def directions(self, events, orientations):
        """x-direction (+1 right, -1 left) of every strand."""
        fresh = self.nstrands
        partner = [[] for _ in range(fresh)]
        for k, e in enumerate(events):
            if e.kind != "X":
                a, b = int(self.top[k]), int(self.bottom[k])
                partner[a].append(b)
                partner[b].append(a)
        d = np.zeros(fresh, dtype=np.int64)
        for c in range(self.ncomp):
            k = self.first_cusp[c]
            s0 = int(self.top[k])
            d[s0] = orientations[c]
            todo = [s0]
            while todo:
                s = todo.pop()
                for t in partner[s]:
                    if d[t] == 0:
                        d[t] = -d[s]
                        todo.append(t)
                    elif d[t] == d[s]:  # pragma: no cover - parity is automatic
                        raise FrontError("inconsistent orientation")
        return d


@dataclass(frozen=True)
class FrontDiagram:
    events: tuple
    orientations: tuple = None
    labels: tuple = None
    _trace: _Trace = field(default=None, repr=False, compare=False)
    _dirs: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        ev = tuple(e if isinstance(e, Event) else Event(*e) for e in self.events)
        for e in ev:
            if e.kind not in KINDS:
                raise FrontError(f"unknown event kind {e.kind!r}")
        object.__setattr__(self, "events", ev)
        tr = _Trace(ev)
        object.__setattr__(self, "_trace", tr)
        n = tr.ncomp
        ori = self.orientations
        if ori is None:
            ori = (1,) * n
        ori = tuple(1 if o in (1, "+") else -1 for o in ori)
        if len(ori) != n:
            raise FrontError(f"{len(ori)} orientations for {n} components")
        object.__setattr__(self, "orientations", ori)
        lab = self.labels
        if lab is None:
            lab = tuple(f"K{i + 1}" for i in range(n))
        lab = tuple(lab)
        if len(lab) != n:
            raise FrontError(f"{len(lab)} labels for {n} components")
        object.__setattr__(self, "labels", lab)
        object.__setattr__(self, "_dirs", tr.directions(ev, ori))

    # -- basic structure ------------------------------------------------
    @property
    def ncomponents(self):
        return self._trace.ncomp

    @property
    def nstrands(self):
        return self._trace.nstrands

    def strand_component(self, s):
        return int(self._trace.comp[s])

    def strand_direction(self, s):
        return int(self._dirs[s])

    def event_strands(self, k):
        """(upper, lower) strand ids at event k (before the event for X/R)."""
        return int(self._trace.top[k]), int(self._trace.bottom[k])

    def _check_comp(self, c):
        if not (0 <= c < self.ncomponents):
            raise FrontError(f"unknown component {c}")

    def crossings(self):
        cached = self.__dict__.get("_crossings")
        if cached is not None:
            return list(cached)
        out = []
        tr = self._trace
        for k, e in enumerate(self.events):
            if e.kind == "X":
                a, b = int(tr.top[k]), int(tr.bottom[k])
                sign = 1 if self._dirs[a] == self._dirs[b] else -1
                out.append(Crossing(k, a, b, (int(tr.comp[a]), int(tr.comp[b])), sign))
        object.__setattr__(self, "_crossings", tuple(out))
        return out

    def component_events(self, c):
        self._check_comp(c)
        tr = self._trace
        return [k for k in range(len(self.events)) if tr.comp[tr.top[k]] == c
                or tr.comp[tr.bottom[k]] == c]

    def with_orientations(self, orientations):
        return FrontDiagram(self.events, tuple(orientations), self.labels)

    def with_labels(self, labels):
        return FrontDiagram(self.events, self.orientations, tuple(labels))

    def __len__(self):
        return len(self.events)


# ---------------------------------------------------------------------------
# invariants

def cusp_direction(d: FrontDiagram, k: int) -> int:
    """+1 for a down cusp, -1 for an up cusp (event k must be L or R)."""
    e = d.events[k]
    up, _ = d.event_strands(k)
    du = d.strand_direction(up)
    if e.kind == "L":
        # travel arrives on the lower branch, leaves on the upper one
        return -1 if du > 0 else 1
    if e.kind == "R":
        return 1 if du > 0 else -1
    raise FrontError(f"event {k} is not a cusp")


def classical_invariants(d: FrontDiagram, c: int) -> ClassicalInvariants:
    d._check_comp(c)
    tr = d._trace
    wr, cu = _kernels.writhe_and_cusps(tr.kinds, tr.top, tr.bottom, tr.comp, d._dirs,
                                       tr.ncomp)
    ncross = 0
    rot2 = 0
    for k, e in enumerate(d.events):
        a, b = d.event_strands(k)
        if e.kind == "X":
            if tr.comp[a] == c and tr.comp[b] == c:
                ncross += 1
        elif tr.comp[a] == c:
            rot2 += cusp_direction(d, k)
    cusps = int(cu[c])
    writhe = int(wr[c])
    if cusps % 2 or rot2 % 2:  # pragma: no cover - impossible for closed curves
        raise FrontError("odd cusp count")
    return ClassicalInvariants(tb=writhe - cusps // 2, rot=rot2 // 2, crossings=ncross,
                               cusps=cusps, writhe=writhe)


def tb(d, c=0):
    return classical_invariants(d, c).tb


def rot(d, c=0):
    return classical_invariants(d, c).rot


def linking_number(d: FrontDiagram, a: int, b: int) -> int:
    d._check_comp(a)
    d._check_comp(b)
    if a == b:
        raise FrontError("linking number needs two distinct components")
    total = 0
    for x in d.crossings():
        if set(x.comps) == {a, b}:
            total += x.sign
    if total % 2:  # pragma: no cover
        raise FrontError("odd mutual crossing count")
    return total // 2


def tb_all(d: FrontDiagram) -> list:
    tr = d._trace
    wr, cu = _kernels.writhe_and_cusps(tr.kinds, tr.top, tr.bottom, tr.comp, d._dirs,
                                       tr.ncomp)
    return [int(w) - int(c) // 2 for w, c in zip(wr, cu)]


def linking_table(d: FrontDiagram) -> list:
    """All pairwise linking numbers at once; the diagonal is left 0."""
    n = d.ncomponents
    M = [[0] * n for _ in range(n)]
    for x in d.crossings():
        a, b = x.comps
        if a != b:
            M[a][b] += x.sign
            M[b][a] += x.sign
    for row in M:
        for j, v in enumerate(row):
            if v % 2:  # pragma: no cover
                raise FrontError("odd mutual crossing count")
            row[j] = v // 2
    return M


def mutual_crossings(d: FrontDiagram, a: int, b: int) -> list:
    return [x for x in d.crossings() if set(x.comps) == {a, b}]


def is_non_split(d: FrontDiagram) -> bool:
    """True iff the diagram is connected as a subset of the plane.

    Disjoint pieces of a planar diagram can always be separated by a
    circle, and pieces that share a crossing never can, so connectivity
    of the component/crossing graph decides the question.
    """
    n = d.ncomponents
    if n <= 1:
        return True
    seen = {0}
    adj = [set() for _ in range(n)]
    for x in d.crossings():
        p, q = x.comps
        adj[p].add(q)
        adj[q].add(p)
    todo = [0]
    while todo:
        u = todo.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return len(seen) == n


# ---------------------------------------------------------------------------
# Reeb pushoff

def reeb_pushoff(d: FrontDiagram, c: int) -> FrontDiagram:
    """Add a copy of component c translated slightly downward.

    The copy of each strand runs directly beneath it; the event word is
    rewritten locally around every event of c.  The copy becomes component
    c+1.
    """
    d._check_comp(c)
    tr = d._trace
    stack = []   # strand ids (of d) top to bottom, before each event
    out = []

    def newpos(p):
        # 1-based new position of the strand at old position p
        above = sum(1 for s in stack[:p - 1] if tr.comp[s] == c)
        return p + above

    for k, e in enumerate(d.events):
        a, b = d.event_strands(k)
        p = e.pos
        q = newpos(p)
        if e.kind == "L":
            if tr.comp[a] == c:
                out += [Event("L", q), Event("L", q + 2), Event("X", q + 1)]
            else:
                out.append(Event("L", q))
            stack[p - 1:p - 1] = [a, b]
        elif e.kind == "R":
            if tr.comp[a] == c:
                out += [Event("X", q + 1), Event("R", q), Event("R", q)]
            else:
                out.append(Event("R", q))
            del stack[p - 1:p + 1]
        else:
            ca, cb = tr.comp[a] == c, tr.comp[b] == c
            if ca and cb:
                out += [Event("X", q + 1), Event("X", q), Event("X", q + 2),
                        Event("X", q + 1)]
            elif ca:
                out += [Event("X", q + 1), Event("X", q)]
            elif cb:
                out += [Event("X", q), Event("X", q + 1)]
            else:
                out.append(Event("X", q))
            stack[p - 1], stack[p] = stack[p], stack[p - 1]
    ori = list(d.orientations)
    lab = list(d.labels)
    ori.insert(c + 1, ori[c])
    lab.insert(c + 1, lab[c] + "'")
    return FrontDiagram(tuple(out), tuple(ori), tuple(lab))


def disjoint_union(*diagrams: FrontDiagram) -> FrontDiagram:
    """Place diagrams side by side, left to right."""
    ev, ori, lab = [], [], []
    for d in diagrams:
        ev += d.events
        ori += d.orientations
        lab += d.labels
    return FrontDiagram(tuple(ev), tuple(ori), tuple(lab))


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(#.*)|(;)|([^\s;#]+))")


def _lex(text):
    """Yield (line, col, token) with ';' and newlines as statement ends."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        pos = 0
        stmt = []
        while pos < len(raw):
            m = _TOKEN.match(raw, pos)
            if not m or m.end() == pos:
                break
            if m.group(1):
                break
            if m.group(2):
                if stmt:
                    yield stmt
                stmt = []
            else:
                stmt.append((ln, m.start(3) + 1, m.group(3)))
            pos = m.end()
        if stmt:
            yield stmt


def parse_front(text: str) -> FrontDiagram:
    stmts = list(_lex(text))
    if not stmts or [t for _, _, t in stmts[0]] != ["front", "v1"]:
        if stmts and stmts[0][0][2] == "front" and len(stmts[0]) == 2:
            ln, col, ver = stmts[0][1]
            raise FrontSyntaxError(f"unsupported version {ver!r}", ln, col)
        ln, col = (stmts[0][0][0], stmts[0][0][1]) if stmts else (1, 1)
        raise FrontSyntaxError("expected header 'front v1'", ln, col)
    events = []
    names, orients = {}, {}
    for stmt in stmts[1:]:
        ln, col, head = stmt[0]
        args = [t for _, _, t in stmt[1:]]
        if head in KINDS:
            if len(args) != 1 or not args[0].isdigit():
                raise FrontSyntaxError(f"event {head} takes one positive integer", ln, col)
            events.append(Event(head, int(args[0])))
        elif head == "name":
            if len(args) != 2 or not args[0].isdigit():
                raise FrontSyntaxError("usage: name <k> <label>", ln, col)
            names[int(args[0])] = (args[1], ln, col)
        elif head == "orient":
            if len(args) != 2 or not args[0].isdigit() or args[1] not in "+-" or len(args[1]) != 1:
                raise FrontSyntaxError("usage: orient <k> +|-", ln, col)
            orients[int(args[0])] = (1 if args[1] == "+" else -1, ln, col)
        else:
            raise FrontSyntaxError(f"unknown token {head!r}", ln, col)
    base = FrontDiagram(tuple(events))
    n = base.ncomponents
    ori = [1] * n
    lab = list(base.labels)
    for k, (v, ln, col) in orients.items():
        if not 1 <= k <= n:
            raise FrontSyntaxError(f"orient: no component {k}", ln, col)
        ori[k - 1] = v
    for k, (v, ln, col) in names.items():
        if not 1 <= k <= n:
            raise FrontSyntaxError(f"name: no component {k}", ln, col)
        lab[k - 1] = v
    return FrontDiagram(base.events, tuple(ori), tuple(lab))


def serialize_front(d: FrontDiagram) -> str:
    lines = ["front v1"]
    if d.events:
        lines.append("; ".join(str(e) for e in d.events))
    for i, (o, lab) in enumerate(zip(d.orientations, d.labels)):
        if lab != f"K{i + 1}":
            lines.append(f"name {i + 1} {lab}")
        if o != 1:
            lines.append(f"orient {i + 1} -")
    return "\n".join(lines) + "\n"


def word(text: str, orientations=None, labels=None) -> FrontDiagram:
    """Build a diagram from a bare event word such as ``"L 1; R 1"``."""
    ev = []
    for tok in re.split(r"[;\n]", text):
        tok = tok.split("#")[0].strip()
        if not tok:
            continue
        kind, _, num = tok.partition(" ")
        if kind not in KINDS or not num.strip().isdigit():
            raise FrontSyntaxError(f"bad event {tok!r}")
        ev.append(Event(kind, int(num)))
    return FrontDiagram(tuple(ev), orientations, labels)


def validate(text: str) -> list:
    """Return a list of problems (empty when the text is a valid front)."""
    try:
        parse_front(text)
    except FrontError as exc:
        return [str(exc)]
    return []


# ---------------------------------------------------------------------------
# standard examples

def unknot(stabilizations: int = 0) -> FrontDiagram:
    """tb = -1 - s unknot; each stabilization adds a zigzag on the lower branch."""
    ev = [Event("L", 1)]
    for _ in range(stabilizations):
        ev += [Event("L", 2), Event("R", 1)]
    ev.append(Event("R", 1))
    return FrontDiagram(tuple(ev))


def torus_knot(n: int) -> FrontDiagram:
    """The (2, 2n+1) torus knot with two left and two right cusps (tb = 2n-1)."""
    ev = [Event("L", 1), Event("L", 3)] + [Event("X", 2)] * (2 * n + 1)
    ev += [Event("R", 1), Event("R", 1)]
    return FrontDiagram(tuple(ev))


def trefoil() -> FrontDiagram:
    return torus_knot(1)


def hopf_pair() -> FrontDiagram:
    return FrontDiagram(tuple(Event(k, p) for k, p in
                              [("L", 1), ("L", 3), ("X", 2), ("X", 2), ("R", 1), ("R", 1)]))


def delete_components(d: FrontDiagram, comps) -> FrontDiagram:
    """Drop the given components; the rest of the word is kept verbatim."""
    drop = set(comps)
    for c in drop:
        d._check_comp(c)
    tr = d._trace
    stack = []
    out = []
    for k, e in enumerate(d.events):
        a, b = d.event_strands(k)
        p = e.pos
        keep_a = int(tr.comp[a]) not in drop
        keep_b = int(tr.comp[b]) not in drop
        q = 1 + sum(1 for s in stack[:p - 1] if int(tr.comp[s]) not in drop)
        if e.kind == "L":
            stack[p - 1:p - 1] = [a, b]
            if keep_a:
                out.append(Event("L", q))
        elif e.kind == "R":
            del stack[p - 1:p + 1]
            if keep_a:
                out.append(Event("R", q))
        else:
            stack[p - 1], stack[p] = stack[p], stack[p - 1]
            if keep_a and keep_b:
                out.append(Event("X", q))
    kept = [c for c in range(d.ncomponents) if c not in drop]
    return FrontDiagram(tuple(out), tuple(d.orientations[c] for c in kept),
                        tuple(d.labels[c] for c in kept))
