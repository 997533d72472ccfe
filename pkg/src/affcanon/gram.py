"""Inner products of monomial words and Gram matrices of monomial bases.

Three independent evaluations of (F, F') are provided:

* ``inner_product_bruteforce`` sums q^{-A(xi)} over every colour-matching
  permutation;
* ``inner_product`` computes the same sum by a subset DP;
* ``inner_product_coproduct`` never forms the permutation sum and instead
  unwinds the defining properties of the form through r(f_i) = f_i (x) 1 + 1 (x) f_i.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .affine_root import BetaSequence, CartanDatum
from .monomial import MonomialWord, m_index
from .pbw_index import PBWIndex, classes, total_order
from .qfield import ONE, Q, LaurentPoly, RatFn, qfact

__all__ = [
    "ColorSequence",
    "GramMatrix",
    "color_sequence",
    "xi_sum",
    "xi_sum_bruteforce",
    "inner_product",
    "inner_product_bruteforce",
    "inner_product_coproduct",
    "gram_matrix",
    "ENGINES",
]

ColorSequence = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

ENGINES = ("dp", "brute", "oracle")


def color_sequence(w: MonomialWord) -> ColorSequence:
    return w.colors()


@lru_cache(maxsize=None)
def _delta_den(t: int) -> LaurentPoly:
    return (ONE - Q * Q) ** t


@lru_cache(maxsize=None)
def _fact_product(powers: tuple[int, ...]) -> LaurentPoly:
    out = ONE
    for c in powers:
        out = out * qfact(c)
    return out


def _same_weight(a: Sequence[int], b: Sequence[int]) -> bool:
    return sorted(a) == sorted(b)


def xi_sum_bruteforce(nu: ColorSequence, nu2: ColorSequence, A: Matrix) -> LaurentPoly:
    """sum over colour-matching w in S_t of q^{-A(w)}, by enumeration."""
    if not _same_weight(nu, nu2):
        return LaurentPoly()
    t = len(nu)
    acc: dict[int, int] = {}
    for w in permutations(range(t)):
        if any(nu[k] != nu2[w[k]] for k in range(t)):
            continue
        a = 0
        for k in range(t):
            for l in range(k + 1, t):
                if w[k] > w[l]:
                    a += A[nu[k]][nu[l]]
        acc[-a] = acc.get(-a, 0) + 1
    return LaurentPoly(acc)


@lru_cache(maxsize=200_000)
def xi_sum(nu: ColorSequence, nu2: ColorSequence, A: Matrix) -> LaurentPoly:
    """The same sum as :func:`xi_sum_bruteforce`, by DP over used targets.

    Sources are placed left to right; putting source k on target j creates
    an inversion with every earlier source already sitting on a target > j.
    The state is the bitmask of occupied targets.
    """
    if not _same_weight(nu, nu2):
        return LaurentPoly()
    t = len(nu)
    if t == 0:
        return ONE
    targets_of: dict[int, list[int]] = {}
    for j, col in enumerate(nu2):
        targets_of.setdefault(col, []).append(j)
    layer: dict[int, dict[int, int]] = {0: {0: 1}}
    for k in range(t):
        a = nu[k]
        row = A[a]
        nxt: dict[int, dict[int, int]] = {}
        for mask, poly in layer.items():
            for j in targets_of[a]:
                bit = 1 << j
                if mask & bit:
                    continue
                inc = 0
                higher = mask >> (j + 1)
                jj = j + 1
                while higher:
                    if higher & 1:
                        inc += row[nu2[jj]]
                    higher >>= 1
                    jj += 1
                dst = nxt.setdefault(mask | bit, {})
                for e, c in poly.items():
                    e2 = e - inc
                    dst[e2] = dst.get(e2, 0) + c
        layer = nxt
    (final,) = layer.values()
    return LaurentPoly(final)


def _normalise(s: LaurentPoly, w1: MonomialWord, w2: MonomialWord) -> RatFn:
    if s.is_zero():
        return RatFn(0)
    t = sum(w1.powers)
    den = _fact_product(w1.powers) * _fact_product(w2.powers) * _delta_den(t)
    return RatFn(s, den)


def _matrix(datum_or_matrix) -> Matrix:
    if isinstance(datum_or_matrix, CartanDatum):
        return datum_or_matrix.matrix
    return tuple(tuple(r) for r in datum_or_matrix)


def inner_product_bruteforce(w1: MonomialWord, w2: MonomialWord, datum) -> RatFn:
    A = _matrix(datum)
    return _normalise(xi_sum_bruteforce(w1.colors(), w2.colors(), A), w1, w2)


def inner_product(w1: MonomialWord, w2: MonomialWord, datum) -> RatFn:
    A = _matrix(datum)
    return _normalise(xi_sum(w1.colors(), w2.colors(), A), w1, w2)


_FII = RatFn(ONE, ONE - Q * Q)


@lru_cache(maxsize=200_000)
def _coproduct(x: ColorSequence, y: ColorSequence, A: Matrix) -> RatFn:
    if len(x) != len(y) or not _same_weight(x, y):
        return RatFn(0)
    if not x:
        return RatFn(1)
    j, rest = y[-1], y[:-1]
    total = RatFn(0)
    for k, xk in enumerate(x):
        if xk != j:
            continue
        e = -sum(A[xk][xl] for xl in x[k + 1:])
        sub = _coproduct(x[:k] + x[k + 1:], rest, A)
        if sub:
            total = total + sub * LaurentPoly.monomial(e)
    return total * _FII


def inner_product_coproduct(w1: MonomialWord, w2: MonomialWord, datum) -> RatFn:
    """(F, F') from (1,1) = 1, (f_i, f_j) = delta_ij/(1-q^2) and (x, y'y'') = (r(x), y' (x) y'')."""
    A = _matrix(datum)
    raw = _coproduct(w1.colors(), w2.colors(), A)
    if raw.is_zero():
        return raw
    return raw / (_fact_product(w1.powers) * _fact_product(w2.powers))


_ENGINE_FN = {
    "dp": inner_product,
    "brute": inner_product_bruteforce,
    "oracle": inner_product_coproduct,
}


@dataclass(frozen=True)
class GramMatrix:
    """Lambda_nu = ((m(c), m(c'))) on a fibre in total order."""

    entries: tuple[tuple[RatFn, ...], ...]
    indices: tuple[PBWIndex, ...]
    words: tuple[MonomialWord, ...]
    classes: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.indices)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def _entry_task(args):
    engine, w1, w2, A = args
    return _ENGINE_FN[engine](w1, w2, A)


def gram_matrix(nu: Sequence[int], seq: BetaSequence, engine: str = "dp", jobs: int = 1,
                indices: Sequence[PBWIndex] | None = None) -> GramMatrix:
    if engine not in _ENGINE_FN:
        raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
    ordered = tuple(total_order(nu, seq, indices))
    words = tuple(m_index(c, seq) for c in ordered)
    A = seq.datum.matrix
    n = len(ordered)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    tasks = [(engine, words[i], words[j], A) for i, j in pairs]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 64:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            values = list(ex.map(_entry_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        values = [_entry_task(t) for t in tasks]
    M = [[RatFn(0)] * n for _ in range(n)]
    for (i, j), v in zip(pairs, values):
        M[i][j] = v
        M[j][i] = v
    return GramMatrix(tuple(map(tuple, M)), ordered, words, tuple(classes(ordered)))
