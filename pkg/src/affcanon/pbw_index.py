"""PBW index set: fibres of the weight map, orders, equivalence, Kostka numbers."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .affine_root import BetaSequence, Root, real_roots_below, total_order_I

Partition = tuple[int, ...]

__all__ = [
    "Partition",
    "PBWIndex",
    "make_partition",
    "partitions",
    "weight",
    "enumerate_indices",
    "dominance_leq",
    "lex_leq",
    "prec0",
    "prec",
    "equivalent",
    "total_order",
    "classes",
    "kostka",
]


def make_partition(parts: Iterable[int]) -> Partition:
    p = tuple(sorted((int(x) for x in parts if x), reverse=True))
    if any(x < 0 for x in p):
        raise ValueError(f"negative part in {p}")
    return p


@lru_cache(maxsize=None)
def partitions(m: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of m, in decreasing lexicographic order."""
    if max_part is None:
        max_part = m
    if m == 0:
        return ((),)
    out = []
    for first in range(min(m, max_part), 0, -1):
        for rest in partitions(m - first, first):
            out.append((first,) + rest)
    return tuple(out)


@dataclass(frozen=True, order=False)
class PBWIndex:
    """A triple (c_+, c_0, c_-).

    ``plus`` holds (k, c) for k <= 0 sorted as k = 0, -1, -2, ...;
    ``minus`` holds (k, c) for k > 0 sorted as k = 1, 2, ...;
    ``zero`` holds (i, partition) for i in I_0 with nonempty partitions.
    """

    plus: tuple[tuple[int, int], ...] = ()
    zero: tuple[tuple[int, Partition], ...] = ()
    minus: tuple[tuple[int, int], ...] = ()

    @classmethod
    def build(cls, plus: Mapping[int, int] | None = None, zero: Mapping[int, Iterable[int]] | None = None,
              minus: Mapping[int, int] | None = None) -> "PBWIndex":
        plus = {k: c for k, c in (plus or {}).items() if c}
        minus = {k: c for k, c in (minus or {}).items() if c}
        if any(k > 0 for k in plus) or any(k <= 0 for k in minus) or any(c < 0 for c in [*plus.values(), *minus.values()]):
            raise ValueError("c_+ lives on k <= 0, c_- on k > 0, entries nonnegative")
        z = {i: make_partition(p) for i, p in (zero or {}).items()}
        if any(i == 0 for i, p in z.items() if p):
            raise ValueError("c_0 is indexed by I_0")
        return cls(
            tuple(sorted(plus.items(), reverse=True)),
            tuple(sorted((i, p) for i, p in z.items() if p)),
            tuple(sorted(minus.items())),
        )

    def part(self, i: int) -> Partition:
        for j, p in self.zero:
            if j == i:
                return p
        return ()

    def real_part(self):
        return self.plus, self.minus

    def real_entries(self) -> list[tuple[int, int]]:
        return list(self.plus) + list(self.minus)

    def imaginary_size(self) -> int:
        return sum(sum(p) for _, p in self.zero)

    def is_zero(self) -> bool:
        return not (self.plus or self.zero or self.minus)

    def to_json(self) -> dict:
        return {
            "plus": [[k, c] for k, c in self.plus],
            "zero": {str(i): list(p) for i, p in self.zero},
            "minus": [[k, c] for k, c in self.minus],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "PBWIndex":
        return cls.build(
            {int(k): int(c) for k, c in d.get("plus", [])},
            {int(i): p for i, p in d.get("zero", {}).items()},
            {int(k): int(c) for k, c in d.get("minus", [])},
        )

    def __str__(self):
        plus = ",".join(f"{c}@{k}" for k, c in self.plus)
        zero = ",".join(f"{i}:{list(p)}" for i, p in self.zero)
        minus = ",".join(f"{c}@{k}" for k, c in self.minus)
        return f"[{plus} | {zero} | {minus}]"


def weight(c: PBWIndex, seq: BetaSequence) -> Root:
    """sum_k c_k beta_k + (sum_i |lambda^(i)|) delta, as an element of Q_+."""
    datum = seq.datum
    out = [0] * datum.size
    for k, m in c.real_entries():
        b = seq.beta(k)
        for j in datum.vertices:
            out[j] += m * b[j]
    s = c.imaginary_size()
    if s:
        for j in datum.vertices:
            out[j] += s * datum.delta[j]
    return tuple(out)


def _real_parts(roots: Sequence[tuple[int, Root]], target: Root) -> Iterator[dict[int, int]]:
    """Bounded knapsack: multiplicities over ``roots`` summing to ``target``."""
    n = len(roots)

    def rec(idx: int, rem: list[int], acc: dict[int, int]):
        if not any(rem):
            yield dict(acc)
            return
        if idx == n:
            return
        k, b = roots[idx]
        cmax = min((rem[j] // b[j] for j in range(len(b)) if b[j]), default=0)
        for c in range(cmax, -1, -1):
            if c:
                acc[k] = c
                new = [rem[j] - c * b[j] for j in range(len(b))]
            else:
                acc.pop(k, None)
                new = rem
            yield from rec(idx + 1, new, acc)
        acc.pop(k, None)

    yield from rec(0, list(target), {})


def _zero_parts(m: int, finite: Sequence[int]) -> Iterator[dict[int, Partition]]:
    """I_0-tuples of partitions of total size m (compositions, then partitions)."""

    def comps(m, r):
        if r == 1:
            yield (m,)
            return
        for a in range(m, -1, -1):
            for rest in comps(m - a, r - 1):
                yield (a,) + rest

    for comp in comps(m, len(finite)):
        for parts in product(*(partitions(a) for a in comp)):
            yield {i: p for i, p in zip(finite, parts) if p}


def enumerate_indices(nu: Sequence[int], seq: BetaSequence) -> list[PBWIndex]:
    """Every c in the index set with weight(c) == nu (unordered, duplicate-free)."""
    datum = seq.datum
    nu = tuple(nu)
    if any(v < 0 for v in nu):
        raise ValueError(f"{nu} is not in Q_+")
    out = []
    m = 0
    while all(nu[j] - m * datum.delta[j] >= 0 for j in datum.vertices):
        rest = tuple(nu[j] - m * datum.delta[j] for j in datum.vertices)
        roots = real_roots_below(seq, rest)
        reals = list(_real_parts(roots, rest))
        zeros = list(_zero_parts(m, list(datum.finite_vertices)))
        for r in reals:
            plus = {k: c for k, c in r.items() if k <= 0}
            minus = {k: c for k, c in r.items() if k > 0}
            for z in zeros:
                out.append(PBWIndex.build(plus, z, minus))
        m += 1
    assert len(set(out)) == len(out)
    return out


# -- orders ---------------------------------------------------------------
def dominance_leq(lam: Partition, mu: Partition) -> bool:
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def _plus_cmp(a: Sequence[tuple[int, int]], b: Sequence[tuple[int, int]], descending: bool) -> int:
    """Lexicographic comparison of finitely supported sequences.

    c_+ is read c_0, c_-1, c_-2, ... and c_- is read c_1, c_2, ...; the first
    position where they differ decides.
    """
    da, db = dict(a), dict(b)
    keys = sorted(set(da) | set(db), reverse=descending)
    for k in keys:
        x, y = da.get(k, 0), db.get(k, 0)
        if x != y:
            return -1 if x < y else 1
    return 0


def lex_leq(a, b, side: str) -> bool:
    return _plus_cmp(a, b, side == "plus") <= 0


def prec0(c: PBWIndex, d: PBWIndex) -> bool:
    """c <_0 d: c_+ <= d_+ and c_- <= d_- lexicographically, one strict."""
    p = _plus_cmp(c.plus, d.plus, True)
    m = _plus_cmp(c.minus, d.minus, False)
    return p <= 0 and m <= 0 and (p < 0 or m < 0)


def _zero_cmp(c: PBWIndex, d: PBWIndex) -> int | None:
    """Product-of-dominance comparison: -1, 0, 1, or None if incomparable."""
    idx = {i for i, _ in c.zero} | {i for i, _ in d.zero}
    le = ge = True
    for i in idx:
        a, b = c.part(i), d.part(i)
        if a == b:
            continue
        le = le and dominance_leq(a, b)
        ge = ge and dominance_leq(b, a)
    if le and ge:
        return 0
    if le:
        return -1
    if ge:
        return 1
    return None


def prec(c: PBWIndex, d: PBWIndex) -> bool:
    """c < d: either c <_0 d, or c ~ d and c_0 < d_0 in the product of dominance orders.

    Read literally, the c_0 condition would make indices with different
    imaginary sizes incomparable, which is not a refinement of <_0; the
    monomial/PBW transition matrix does link such indices.
    """
    if prec0(c, d):
        return True
    return equivalent(c, d) and _zero_cmp(c, d) == -1


def equivalent(c: PBWIndex, d: PBWIndex) -> bool:
    return c.plus == d.plus and c.minus == d.minus


def total_order(nu: Sequence[int], seq: BetaSequence, indices: Sequence[PBWIndex] | None = None) -> list[PBWIndex]:
    """Linear extension of < on the fibre with each ~-class contiguous.

    Classes are sorted by the lexicographic keys of (c_+, c_-); inside a class
    c_0 is sorted by (size, parts) per vertex of I_0 taken in the total order
    on I, which extends the dominance order.
    """
    if indices is None:
        indices = enumerate_indices(nu, seq)
    if not indices:
        return []
    lo = min((k for c in indices for k, _ in c.plus), default=0)
    hi = max((k for c in indices for k, _ in c.minus), default=1)
    finite = [i for i in total_order_I(seq) if i != 0]

    def key(c: PBWIndex):
        dp, dm = dict(c.plus), dict(c.minus)
        kp = tuple(dp.get(k, 0) for k in range(0, lo - 1, -1))
        km = tuple(dm.get(k, 0) for k in range(1, hi + 1))
        kz = tuple((sum(c.part(i)), c.part(i)) for i in finite)
        return kp, km, kz

    return sorted(indices, key=key)


def classes(ordered: Sequence[PBWIndex]) -> list[tuple[int, int]]:
    """Half-open index ranges of the ~-classes in an ordered fibre."""
    out = []
    start = 0
    for j in range(1, len(ordered) + 1):
        if j == len(ordered) or not equivalent(ordered[j], ordered[start]):
            out.append((start, j))
            start = j
    seen = set()
    for a, b in out:
        r = ordered[a].real_part()
        if r in seen:
            raise AssertionError("equivalence class is not contiguous")
        seen.add(r)
    return out


# -- Kostka numbers -------------------------------------------------------
def _horizontal_strips(lam: Partition, size: int) -> Iterator[Partition]:
    """Partitions nu inside lam with lam/nu a horizontal strip of ``size`` boxes."""
    n = len(lam)

    def rec(i: int, left: int, acc: list[int]):
        if i == n:
            if left == 0:
                yield make_partition(acc)
            return
        nxt = lam[i + 1] if i + 1 < n else 0
        # row i may shrink to anything in [lam[i+1], lam[i]]
        for r in range(min(left, lam[i] - nxt), -1, -1):
            acc.append(lam[i] - r)
            yield from rec(i + 1, left - r, acc)
            acc.pop()

    yield from rec(0, size, [])


@lru_cache(maxsize=None)
def _kostka(lam: Partition, content: tuple[int, ...]) -> int:
    if not content:
        return 1 if not lam else 0
    last = content[-1]
    return sum(_kostka(nu, content[:-1]) for nu in _horizontal_strips(lam, last))


def kostka(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Number of semistandard tableaux of shape lam and content mu."""
    lam, mu = make_partition(lam), tuple(int(x) for x in mu if x)
    if sum(lam) != sum(mu):
        return 0
    return _kostka(lam, mu)
