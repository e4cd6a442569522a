import random

import numpy as np
import pytest

import oracles
from lgn import _kernels as K
from lgn.front import FrontDiagram, tb_all

CODES = {"L": K.LEFT, "R": K.RIGHT, "X": K.CROSS}


def encode(events):
    return (np.array([CODES[k] for k, _ in events], dtype=np.int64),
            np.array([p for _, p in events], dtype=np.int64))


def test_trace_errors():
    kinds, pos = encode([("L", 1), ("R", 3)])
    assert K.trace_word(kinds, pos)[:2] == (K.BAD_POSITION, 1)
    kinds, pos = encode([("L", 1)])
    assert K.trace_word(kinds, pos)[0] == K.UNCLOSED


def test_default_backend_matches_oracle():
    rng = random.Random(7)
    for _ in range(200):
        e = oracles.decode_word([(rng.randrange(6), rng.randrange(64)) for _ in range(12)])
        tbs, _ = oracles.tb_rot(e)
        assert tb_all(FrontDiagram(e)) == tbs


@pytest.fixture(scope="module")
def jitted():
    numba = pytest.importorskip("numba")
    trace, writhe = numba.njit(K._trace_word_py), numba.njit(K._writhe_cusps_py)
    kinds, pos = encode([("L", 1), ("R", 1)])
    trace(kinds, pos, np.zeros(2, np.int64), np.zeros(2, np.int64))      # compile
    z = np.zeros(1, np.int64)
    writhe(kinds, z, z, z, z, 1, z.copy(), z.copy())
    return trace, writhe


def test_numba_backend_agrees(jitted):
    trace, writhe = jitted
    rng = random.Random(11)
    for _ in range(300):
        e = oracles.decode_word([(rng.randrange(6), rng.randrange(64)) for _ in range(16)])
        kinds, pos = encode(e)
        out = []
        for f in (K._trace_word_py, trace):
            top, bottom = np.full(len(e), -1, np.int64), np.full(len(e), -1, np.int64)
            status = f(kinds, pos, top, bottom)
            out.append((tuple(status), top.tolist(), bottom.tolist()))
        assert out[0] == out[1]
        d = FrontDiagram(e)
        tr = d._trace
        res = []
        for f in (K._writhe_cusps_py, writhe):
            w, c = np.zeros(tr.ncomp, np.int64), np.zeros(tr.ncomp, np.int64)
            f(tr.kinds, tr.top, tr.bottom, tr.comp, d._dirs, tr.ncomp, w, c)
            res.append((w.tolist(), c.tolist()))
        assert res[0] == res[1]
