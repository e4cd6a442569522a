"""Independent reference computations used to freeze derived test values.

Nothing here imports the package's invariant code: fronts are traced from
raw (kind, pos) pairs and crossing signs come from tangent cross products,
homology from determinantal divisors.
"""
from fractions import Fraction
from itertools import combinations
from math import gcd


def trace(events):
    """Components of an event word.

    Returns (comp, rightward, info) where comp[strand] is the component,
    rightward[strand] the traversal direction for the default orientation
    and info the per-event strand pairs.
    """
    stack, info, fresh = [], [], 0
    left_mate, right_mate = {}, {}
    for kind, p in events:
        p -= 1
        if kind == "L":
            a, b = fresh, fresh + 1
            fresh += 2
            stack[p:p] = [a, b]
            left_mate[a], left_mate[b] = b, a
        else:
            a, b = stack[p], stack[p + 1]
            if kind == "R":
                del stack[p:p + 2]
                right_mate[a], right_mate[b] = b, a
            else:
                stack[p], stack[p + 1] = b, a
        info.append((a, b))
    assert not stack
    comp, rightward = {}, {}
    ncomp = 0
    for s in range(fresh):
        if s in comp:
            continue
        # component starts at the upper strand of its first left cusp, going right
        cur, right = s, True
        while cur not in comp:
            comp[cur], rightward[cur] = ncomp, right
            cur = right_mate[cur] if right else left_mate[cur]
            right = not right
        ncomp += 1
    return comp, rightward, info, ncomp


def _dirs(events, orientations):
    comp, rightward, info, n = trace(events)
    ori = list(orientations) if orientations else [1] * n
    d = {s: (1 if rightward[s] else -1) * ori[comp[s]] for s in comp}
    return comp, d, info, n


def crossing_signs(events, orientations=None):
    """[(comp of over strand, comp of under strand, sign)] per crossing."""
    comp, d, info, _ = _dirs(events, orientations)
    out = []
    for (kind, _), (a, b) in zip(events, info):
        if kind != "X":
            continue
        # a runs from the upper slot down: descending, in front.
        # tangents in (x, height) with height increasing upward
        over = (d[a], -d[a])
        under = (d[b], d[b])
        cross = over[0] * under[1] - over[1] * under[0]
        out.append((comp[a], comp[b], 1 if cross > 0 else -1))
    return out


def tb_rot(events, orientations=None):
    comp, d, info, n = _dirs(events, orientations)
    writhe = [0] * n
    cusps = [0] * n
    down = [0] * n
    for (kind, _), (a, b) in zip(events, info):
        if kind == "X":
            continue
        c = comp[a]
        cusps[c] += 1
        # a is the upper branch; at a left cusp traversal enters the upper
        # branch from the lower when a runs rightward
        if kind == "L":
            goes_down = d[a] < 0
        else:
            goes_down = d[a] > 0
        down[c] += 1 if goes_down else -1
    for ca, cb, s in crossing_signs(events, orientations):
        if ca == cb:
            writhe[ca] += s
    return ([writhe[c] - Fraction(cusps[c], 2) for c in range(n)],
            [Fraction(down[c], 2) for c in range(n)])


def lk(events, a, b, orientations=None):
    s = sum(x for ca, cb, x in crossing_signs(events, orientations) if {ca, cb} == {a, b}
            and ca != cb)
    return Fraction(s, 2)


def _det(M):
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if M[r][i]), None)
        if piv is None:
            return 0
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
            det = -det
        det *= M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / M[i][i]
            for c in range(i, n):
                M[r][c] -= f * M[i][c]
    return int(det)


def smith_by_minors(M):
    """Invariant factors of an integer matrix from gcds of k x k minors.

    Independent of elimination-based Smith forms; exponential, fine for the
    small matrices in the fixtures.  Returns (torsion > 1, free rank of the
    cokernel)."""
    rows, cols = len(M), len(M[0]) if M else 0
    dets = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, abs(_det([[M[r][c] for c in cs] for r in rs])))
        if g == 0:
            break
        dets.append(g)
    factors = [dets[i] // dets[i - 1] for i in range(1, len(dets))]
    return sorted(f for f in factors if f > 1), rows - len(factors)


def sweep_faces(events):
    """Bounded faces of a connected front by a slot sweep.

    Slot j of a column lies between strands j-1 and j; the top and bottom
    slots are the unbounded face.  Returns a sorted list of corner weights
    per bounded face, so tb of a face is -weight/2.  A cusp weighs one on
    both sides (the face it opens into and the face at its tip); a crossing
    weighs one in each lateral quadrant.
    """
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    fresh = [0]

    def new():
        r = fresh[0]
        fresh[0] += 1
        parent[r] = r
        return r

    weight = {}
    outside = new()
    slots = [outside]
    for kind, p in events:
        q = p - 1
        if kind == "L":
            inner = new()
            weight[inner] = weight.get(inner, 0) + 1
            weight[slots[q]] = weight.get(slots[q], 0) + 1
            slots = slots[:q + 1] + [inner] + slots[q:]
        elif kind == "R":
            inner = slots[q + 1]
            weight[inner] = weight.get(inner, 0) + 1
            union(slots[q], slots[q + 2])
            weight[slots[q]] = weight.get(slots[q], 0) + 1
            slots = slots[:q + 1] + slots[q + 3:]
        else:
            west = slots[q + 1]
            east = new()
            weight[west] = weight.get(west, 0) + 1
            weight[east] = weight.get(east, 0) + 1
            slots = slots[:q + 1] + [east] + slots[q + 2:]
        union(slots[0], outside)
        union(slots[-1], outside)
    total = {}
    for r, w in weight.items():
        total[find(r)] = total.get(find(r), 0) + w
    for r in parent:
        total.setdefault(find(r), 0)
    out_root = find(outside)
    return sorted(w for r, w in total.items() if r != out_root)


def decode_word(ops):
    """Turn (choice, position) pairs into a valid front word: each pair picks
    a cusp or crossing among those legal at the current stack height, and
    the word is closed off with right cusps."""
    out, n = [], 0
    for k, r in ops:
        kinds = "L" if n < 2 else "LXR"
        kind = kinds[k % len(kinds)]
        if kind == "L":
            p = 1 + r % (n + 1)
            n += 2
        else:
            p = 1 + r % (n - 1)
            n -= 2 if kind == "R" else 0
        out.append((kind, p))
    for k, r in ops:
        if not n:
            break
        out.append(("R", 1 + r % (n - 1)))
        n -= 2
    while n:
        out.append(("R", 1))
        n -= 2
    return out
