#!/usr/bin/env python3
"""Exact rank of the Gram matrix of the monomial words m(c) on every fibre.

A fibre whose Gram matrix is singular has linearly dependent words, so the
factorisation Lambda = tH D H cannot exist there.  For each such fibre the
script prints the rank and the words in the support of a kernel vector.
"""
import argparse
import itertools
import time

from affcanon import build_h, cartan_datum, gram_matrix
from affcanon.solver import exact_rank


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="A")
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--max-weight", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    seq = build_h(cartan_datum(args.type, args.rank))
    size = seq.datum.size
    n_fib = n_bad = 0
    t0 = time.perf_counter()
    for t in range(1, args.max_weight + 1):
        for nu in itertools.product(range(t + 1), repeat=size):
            if sum(nu) != t:
                continue
            g = gram_matrix(nu, seq, jobs=args.jobs)
            n_fib += 1
            if len(g) < 2:
                continue
            r, v = exact_rank([list(row) for row in g.entries])
            if v is None:
                continue
            n_bad += 1
            print(f"nu = {nu}: {len(g)} indices, rank {r}")
            for i, x in enumerate(v):
                if x:
                    print(f"    ({x})  {g.words[i]}    [{g.indices[i]}]")
    print(f"{n_bad} of {n_fib} fibres singular ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
