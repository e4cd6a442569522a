"""Render every Lickorish word up to a given genus and length.

    python3 bench/exhaustive_render.py [--genus 2] [--length 4] [--jobs 4]

For each word: tb of every component (-2 on gamma curves, -1 otherwise),
every two-component sublink an unlink, Hopf link or (-4,2) torus link, and
H1 of the rendered linking matrix equal to the variation H1 of the open
book.  The test suite renders everything below length 4 at genus 2 and
covers length 4 through the pair catalogue plus a sample; this script
renders the rest.
"""
import argparse
import time
from concurrent.futures import ProcessPoolExecutor

from lgn.lickorish import (all_words, algorithm1, render_structure_checks, render_surgery_link,
                           rendered_h1)
from lgn.mcg import variation_h1


def check(w):
    r = render_surgery_link(algorithm1(w), check=False)
    problems = render_structure_checks(r)
    if rendered_h1(r) != variation_h1(w.open_book()):
        problems.append("H1 mismatch")
    return w.letters, problems


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--genus", type=int, default=2)
    ap.add_argument("--length", type=int, default=4)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    t = time.perf_counter()
    total = failures = 0
    for g in range(1, args.genus + 1):
        words = list(all_words(g, args.length))
        with ProcessPoolExecutor(args.jobs) as ex:
            for letters, problems in ex.map(check, words, chunksize=64):
                total += 1
                if problems:
                    failures += 1
                    print(g, letters, "; ".join(problems))
        print(f"genus {g}: {len(words)} words")
    print(f"{total} words, {failures} failures, {time.perf_counter() - t:.1f} s")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
