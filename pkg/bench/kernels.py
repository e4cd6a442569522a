"""Time the event-word kernels on the numpy and numba back ends.

    python3 bench/kernels.py [--words 2000] [--length 400]

Both back ends run on the same random words and must agree exactly.
"""
import argparse
import random
import time

import numpy as np

from lgn import _kernels as K


def random_word(rng, length):
    kinds, pos, n = [], [], 0
    for _ in range(length):
        k = K.LEFT if n < 2 else rng.choice((K.LEFT, K.CROSS, K.CROSS, K.RIGHT))
        if k == K.LEFT:
            p = rng.randint(1, n + 1)
            n += 2
        else:
            p = rng.randint(1, n - 1)
            n -= 2 if k == K.RIGHT else 0
        kinds.append(k)
        pos.append(p)
    while n:
        kinds.append(K.RIGHT)
        pos.append(1)
        n -= 2
    return np.array(kinds, dtype=np.int64), np.array(pos, dtype=np.int64)


def run(trace, words):
    out = []
    t = time.perf_counter()
    for kinds, pos in words:
        top = np.full(len(kinds), -1, dtype=np.int64)
        bottom = np.full(len(kinds), -1, dtype=np.int64)
        trace(kinds, pos, top, bottom)
        out.append((top, bottom))
    return time.perf_counter() - t, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--length", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    words = [random_word(rng, args.length) for _ in range(args.words)]
    t_py, ref = run(K._trace_word_py, words)
    print(f"numpy  {t_py * 1e3:9.1f} ms")
    try:
        import numba
    except ImportError:
        print("numba not installed; skipping")
        return
    jitted = numba.njit(K._trace_word_py)
    t0 = time.perf_counter()
    run(jitted, words[:1])
    print(f"numba compile {(time.perf_counter() - t0) * 1e3:7.1f} ms")
    t_nb, got = run(jitted, words)
    print(f"numba  {t_nb * 1e3:9.1f} ms  ({t_py / t_nb:.1f}x)")
    for (a, b), (c, d) in zip(ref, got):
        assert (a == c).all() and (b == d).all()
    print("back ends agree")


if __name__ == "__main__":
    main()
