"""Exact integer matrices as lists of lists of Python ints."""
from __future__ import annotations


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = zeros(len(A), cols)
    for i, row in enumerate(A):
        oi = out[i]
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += a * bk[j]
    return out


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def outer(x, y, scale=1):
    return [[scale * a * b for b in y] for a in x]


def smith_divisors(M):
    """Invariant factors of an integer matrix (including zeros for rank
    deficiency along the shorter side), computed exactly."""
    A = [list(map(int, r)) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero |entry| in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[t]
                if A[t][j]:
                    done = False
            if done:
                # divisibility of the rest of the block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad])]
                continue
            # move the smallest remainder into the pivot slot
            best = (abs(p), t, t)
            for i in range(t, rows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t, cols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for r in A:
                r[t], r[j] = r[j], r[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def cokernel(M, nrows=None):
    """Cokernel of M : Z^cols -> Z^rows as (torsion divisors > 1, free rank)."""
    rows = len(M) if nrows is None else nrows
    if rows == 0:
        return [], 0
    d = smith_divisors(M) if M and M[0] else []
    nonzero = [x for x in d if x]
    torsion = sorted(x for x in nonzero if x > 1)
    return torsion, rows - len(nonzero)


def group_name(torsion, free):
    parts = [f"Z/{t}" for t in torsion]
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    return " + ".join(parts) if parts else "0"


def inverse_unimodular(A):
    """Inverse of an integer matrix with determinant +-1 (Gauss-Jordan over Q)."""
    from fractions import Fraction
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    out = []
    for row in M:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out
