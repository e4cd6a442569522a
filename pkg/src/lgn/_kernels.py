"""Hot loops over event words.

Two interchangeable back ends: plain numpy/python (default) and numba.
Set ``LGN_NUMBA=1`` to route the kernels through ``numba.njit``; if numba
is missing the flag is ignored and the numpy path is used.
"""
import os

import numpy as np

# event kind codes shared with front.py
LEFT, RIGHT, CROSS = 0, 1, 2

# error codes returned by trace_word
OK = 0
BAD_POSITION = 1
UNCLOSED = 2


def _trace_word_py(kinds, positions, top, bottom):
    """Fill top/bottom with the strand ids touched by every event.

    Strand ids are allocated by left cusps (two per cusp, upper first).
    Returns (status, index of the offending event or -1, strands allocated).
    """
    n = kinds.shape[0]
    stack = np.empty(2 * n + 2, dtype=np.int64)
    depth = 0
    fresh = 0
    for k in range(n):
        kind = kinds[k]
        p = positions[k] - 1
        if kind == LEFT:
            if p < 0 or p > depth:
                return BAD_POSITION, k, fresh
            for j in range(depth - 1, p - 1, -1):
                stack[j + 2] = stack[j]
            stack[p] = fresh
            stack[p + 1] = fresh + 1
            top[k] = fresh
            bottom[k] = fresh + 1
            fresh += 2
            depth += 2
        else:
            if p < 0 or p + 1 >= depth:
                return BAD_POSITION, k, fresh
            a = stack[p]
            b = stack[p + 1]
            top[k] = a
            bottom[k] = b
            if kind == CROSS:
                stack[p] = b
                stack[p + 1] = a
            else:
                for j in range(p, depth - 2):
                    stack[j] = stack[j + 2]
                depth -= 2
    if depth != 0:
        return UNCLOSED, n, fresh
    return OK, -1, fresh


def _writhe_cusps_py(kinds, top, bottom, comp, direction, ncomp, writhe, cusps):
    """Accumulate per-component writhe and cusp counts (self crossings only)."""
    for k in range(kinds.shape[0]):
        a = top[k]
        if kinds[k] == CROSS:
            b = bottom[k]
            if comp[a] == comp[b]:
                if direction[a] == direction[b]:
                    writhe[comp[a]] += 1
                else:
                    writhe[comp[a]] -= 1
        else:
            cusps[comp[a]] += 1
    return ncomp


def _select():
    if os.environ.get("LGN_NUMBA", "0") not in ("1", "true", "yes"):
        return _trace_word_py, _writhe_cusps_py, "numpy"
    try:
        import numba
    except ImportError:  # flag set but numba absent
        return _trace_word_py, _writhe_cusps_py, "numpy"
    jit = numba.njit(cache=True)
    return jit(_trace_word_py), jit(_writhe_cusps_py), "numba"


_trace_impl, _writhe_impl, BACKEND = _select()


def trace_word(kinds, positions):
    """Strand ids per event for an encoded word.

    kinds, positions: int arrays of equal length.
    Returns (status, bad_index, nstrands, top, bottom).
    """
    kinds = np.ascontiguousarray(kinds, dtype=np.int64)
    positions = np.ascontiguousarray(positions, dtype=np.int64)
    top = np.full(kinds.shape[0], -1, dtype=np.int64)
    bottom = np.full(kinds.shape[0], -1, dtype=np.int64)
    status, bad, fresh = _trace_impl(kinds, positions, top, bottom)
    return int(status), int(bad), int(fresh), top, bottom


def writhe_and_cusps(kinds, top, bottom, comp, direction, ncomp):
    writhe = np.zeros(ncomp, dtype=np.int64)
    cusps = np.zeros(ncomp, dtype=np.int64)
    _writhe_impl(np.ascontiguousarray(kinds, dtype=np.int64), top, bottom,
                 np.ascontiguousarray(comp, dtype=np.int64),
                 np.ascontiguousarray(direction, dtype=np.int64), ncomp, writhe, cusps)
    return writhe, cusps
