#!/usr/bin/env python3
"""Print the basic A_2^(1) tables: h, beta_k, orders, fibre sizes and small canonical bases."""
import argparse
import itertools

from affcanon import build_h, cartan_datum, enumerate_indices, total_order_I
from affcanon.affine_root import defect
from affcanon.solver import DegenerateMonomials, canonical_in_pbw
from affcanon.strata import classify_indecomposable


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=8, help="list beta_k for |k| <= bound")
    ap.add_argument("--max-weight", type=int, default=3, help="canonical bases for |nu| <= this")
    args = ap.parse_args()

    seq = build_h(cartan_datum("A", 2))
    print(f"word {seq.word}  window {seq.window}  order on I {total_order_I(seq)}")
    print(f"{'k':>4} {'h':>2}  beta        defect  class")
    for k in range(-args.bound, args.bound + 1):
        b = seq.beta(k)
        print(f"{k:>4} {seq.h(k):>2}  {str(b):<11} {defect(seq, b):>6}  {classify_indecomposable(seq, b)}")

    print("\nfibre sizes |C_nu|")
    for t in range(1, 7):
        sizes = {nu: len(enumerate_indices(nu, seq))
                 for nu in itertools.product(range(t + 1), repeat=3) if sum(nu) == t}
        print(f"  |nu| = {t}: " + ", ".join(f"{nu}:{n}" for nu, n in sizes.items()))

    print("\ncanonical basis in the PBW basis (columns of P)")
    for t in range(1, args.max_weight + 1):
        for nu in itertools.product(range(t + 1), repeat=3):
            if sum(nu) != t:
                continue
            try:
                res = canonical_in_pbw(nu, seq, jobs=1)
            except DegenerateMonomials as e:
                print(f"  nu = {nu}: monomial words dependent (rank {e.rank} < {e.size})")
                continue
            print(f"  nu = {nu}")
            for j, c in enumerate(res.indices):
                terms = [f"({res.P[i, j]}) L{res.indices[i]}" for i in range(len(res.indices)) if not res.P[i, j].is_zero()]
                print(f"    b{c} = " + " + ".join(terms))


if __name__ == "__main__":
    main()
