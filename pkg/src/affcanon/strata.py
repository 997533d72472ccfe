"""Quiver orientation, flag dimensions, defect classification and stratum data."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Sequence

from .affine_root import (
    BetaSequence,
    CartanDatum,
    Root,
    RootClass,
    classify_root,
    coxeter_cols,
    defect,
    total_order_I,
)
from .pbw_index import Partition, PBWIndex, make_partition, partitions, weight

__all__ = [
    "Quiver",
    "orientation_from_order",
    "flip",
    "check_sink_sequence",
    "flag_dim",
    "fibre_dim",
    "tilde_flag_dim",
    "IndecClass",
    "classify_indecomposable",
    "classify_by_coxeter",
    "StratumData",
    "stratum_data_of_index",
    "indices_of_stratum",
    "induced_multiplicity",
    "character",
]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: frozenset  # of (tail, head)

    def is_sink(self, i: int) -> bool:
        return not any(a == i for a, _ in self.arrows)

    def is_source(self, i: int) -> bool:
        return not any(b == i for _, b in self.arrows)

    def is_acyclic(self) -> bool:
        left = set(self.vertices)
        arrows = set(self.arrows)
        while left:
            sinks = [i for i in left if not any(a == i and b in left for a, b in arrows)]
            if not sinks:
                return False
            left -= set(sinks)
        return True

    def to_json(self) -> list[list[int]]:
        return [list(a) for a in sorted(self.arrows)]


def flip(Q: Quiver, i: int) -> Quiver:
    """sigma_i: reverse every arrow at i."""
    return Quiver(Q.vertices, frozenset((b, a) if i in (a, b) else (a, b) for a, b in Q.arrows))


def _arrows_at_step(order: Sequence[int], r: int, joined) -> frozenset:
    """The arrow set H_r after flipping i_0, ..., i_{r-1}, written out case by case."""
    out = set()
    n = len(order)
    for kp in range(n):
        for k in range(kp + 1, n):
            a, b = order[kp], order[k]
            if not joined(a, b):
                continue
            if k == r:
                out.add((a, b))          # i_k' -> i_r, k' < r
            elif kp == r:
                out.add((b, a))          # i_r <- i_k, r < k
            elif kp < r < k:
                out.add((a, b))
            else:
                out.add((b, a))
    return frozenset(out)


def check_sink_sequence(Q: Quiver, order: Sequence[int], datum: CartanDatum) -> None:
    """Assert that i_r is a sink of sigma_{i_{r-1}} ... sigma_{i_0} Q and the full product returns Q."""
    def joined(a, b):
        return datum.matrix[a][b] == -1

    cur = Q
    for r, i in enumerate(order):
        if cur.arrows != _arrows_at_step(order, r, joined):
            raise AssertionError(f"arrow set after {r} flips does not match the closed form")
        if not cur.is_sink(i):
            raise AssertionError(f"vertex {i} is not a sink after {r} flips")
        cur = flip(cur, i)
    if cur != Q:
        raise AssertionError("sigma_{i_n} ... sigma_{i_0} does not restore the quiver")


def orientation_from_order(order: Sequence[int], datum: CartanDatum) -> Quiver:
    """Arrow i_k' -> i_k for every joined pair with k' > k."""
    order = tuple(order)
    if sorted(order) != list(datum.vertices):
        raise ValueError(f"{order} is not an ordering of the vertices")
    pos = {v: p for p, v in enumerate(order)}
    arrows = frozenset((a, b) if pos[a] > pos[b] else (b, a) for a, b in datum.edges)
    Q = Quiver(tuple(datum.vertices), arrows)
    if not Q.is_acyclic():
        raise AssertionError("orientation has an oriented cycle")
    check_sink_sequence(Q, order, datum)
    return Q


# -- flag varieties -------------------------------------------------------
Omega = tuple[Sequence[int], Sequence[int]]


def _check(omega: Omega):
    i, c = omega
    if len(i) != len(c):
        raise ValueError("vertex and multiplicity sequences differ in length")
    return i, c


def flag_dim(omega: Omega) -> int:
    i, c = _check(omega)
    return sum(c[a] * c[b] for b in range(len(i)) for a in range(b) if i[a] == i[b])


def fibre_dim(omega: Omega, Q: Quiver) -> int:
    i, c = _check(omega)
    return sum(c[a] * c[b] for b in range(len(i)) for a in range(b) if (i[a], i[b]) in Q.arrows)


def tilde_flag_dim(omega: Omega, Q: Quiver) -> int:
    return flag_dim(omega) + fibre_dim(omega, Q)


# -- defect ---------------------------------------------------------------
class IndecClass:
    PREPROJECTIVE = "preprojective"
    PREINJECTIVE = "preinjective"
    REGULAR = "regular_nonhomogeneous"


def _require_real(seq: BetaSequence, beta: Sequence[int]) -> None:
    if classify_root(seq.datum, beta) not in (RootClass.REAL_GT, RootClass.REAL_LT):
        raise ValueError(f"{tuple(beta)} is not a positive real root")


def classify_indecomposable(seq: BetaSequence, beta: Sequence[int]) -> str:
    _require_real(seq, beta)
    d = defect(seq, beta)
    if d < 0:
        return IndecClass.PREPROJECTIVE
    if d > 0:
        return IndecClass.PREINJECTIVE
    return IndecClass.REGULAR


def _apply(cols: Sequence[Root], x: Sequence[int]) -> Root:
    n = len(x)
    return tuple(sum(cols[j][r] * x[j] for j in range(n)) for r in range(n))


def _invert_cols(datum: CartanDatum, order: Sequence[int]) -> tuple[Root, ...]:
    """Columns of C^{-1} = s_{i_0} ... s_{i_n}."""
    from .affine_root import simple_reflect

    cols = []
    for j in datum.vertices:
        x = datum.simple(j)
        for i in reversed(order):
            x = simple_reflect(datum, i, x)
        cols.append(x)
    return tuple(cols)


def classify_by_coxeter(seq: BetaSequence, beta: Sequence[int], max_steps: int | None = None) -> str:
    """Classification without the defect: follow beta under C and C^{-1}.

    The Coxeter functor acts on dimension vectors of non-projective
    indecomposables by C, so beta is preprojective iff some C^r beta leaves
    the positive cone, preinjective iff some C^{-r} beta does, regular otherwise.
    """
    _require_real(seq, beta)
    datum = seq.datum
    C = coxeter_cols(seq)
    Cinv = _invert_cols(datum, total_order_I(seq))
    if max_steps is None:
        max_steps = 4 * datum.size * (sum(beta) + 2)

    def escapes(cols):
        x = tuple(beta)
        for _ in range(max_steps):
            x = _apply(cols, x)
            if any(v < 0 for v in x):
                return True
        return False

    fwd, bwd = escapes(C), escapes(Cinv)
    if fwd and bwd:
        raise AssertionError(f"{tuple(beta)} escapes in both directions")
    if fwd:
        return IndecClass.PREPROJECTIVE
    if bwd:
        return IndecClass.PREINJECTIVE
    return IndecClass.REGULAR


# -- stratum data ---------------------------------------------------------
@dataclass(frozen=True)
class StratumData:
    """(Y, l, l', lambda) with Y split by defect sign.

    Each Y-part is a tuple of (k, beta_k, multiplicity) in increasing k.
    """

    Y_P: tuple[tuple[int, Root, int], ...]
    Y_R: tuple[tuple[int, Root, int], ...]
    Y_I: tuple[tuple[int, Root, int], ...]
    l: int
    l_prime: int
    lam: Partition
    i0: int

    def dim(self, datum: CartanDatum) -> Root:
        out = [0] * datum.size
        for _, b, c in self.Y_P + self.Y_R + self.Y_I:
            for j in datum.vertices:
                out[j] += c * b[j]
        for j in datum.vertices:
            out[j] += (self.l + self.l_prime) * datum.delta[j]
        return tuple(out)

    def Y(self) -> tuple[tuple[int, Root, int], ...]:
        return tuple(sorted(self.Y_P + self.Y_R + self.Y_I))

    def to_json(self) -> dict:
        def part(ys):
            return [{"k": k, "beta": list(b), "mult": c} for k, b, c in ys]

        return {
            "Y_P": part(self.Y_P),
            "Y_R": part(self.Y_R),
            "Y_I": part(self.Y_I),
            "l": self.l,
            "l_prime": self.l_prime,
            "lambda": list(self.lam),
            "i0": self.i0,
        }


def stratum_data_of_index(c: PBWIndex, seq: BetaSequence) -> StratumData:
    datum = seq.datum
    i0 = total_order_I(seq)[0]
    groups: dict[str, list] = {IndecClass.PREPROJECTIVE: [], IndecClass.REGULAR: [], IndecClass.PREINJECTIVE: []}
    for k, m in sorted(c.real_entries()):
        b = seq.beta(k)
        groups[classify_indecomposable(seq, b)].append((k, b, m))
    lam = c.part(i0)
    l = sum(lam)
    lp = sum(sum(p) for i, p in c.zero if i != i0)
    data = StratumData(
        tuple(groups[IndecClass.PREPROJECTIVE]),
        tuple(groups[IndecClass.REGULAR]),
        tuple(groups[IndecClass.PREINJECTIVE]),
        l, lp, lam, i0,
    )
    if data.dim(datum) != weight(c, seq):
        raise AssertionError(f"stratum data of {c} has the wrong dimension")
    return data


def indices_of_stratum(data: StratumData, seq: BetaSequence) -> list[PBWIndex]:
    """Every c mapping to ``data``: lambda^(i0) is fixed, l' is spread over I_0 minus i0."""
    others = [i for i in seq.datum.finite_vertices if i != data.i0]
    plus = {k: m for k, _, m in data.Y() if k <= 0}
    minus = {k: m for k, _, m in data.Y() if k > 0}
    out = []

    def comps(m, r):
        if r == 0:
            if m == 0:
                yield ()
            return
        for a in range(m, -1, -1):
            for rest in comps(m - a, r - 1):
                yield (a,) + rest

    for comp in comps(data.l_prime, len(others)):
        for parts in product(*(partitions(a) for a in comp)):
            zero = {i: p for i, p in zip(others, parts) if p}
            if data.lam:
                zero[data.i0] = data.lam
            out.append(PBWIndex.build(plus, zero, minus))
    return out


# -- symmetric group characters -------------------------------------------
def _z(rho: Partition) -> int:
    out = 1
    for part, mult in Counter(rho).items():
        out *= part ** mult * factorial(mult)
    return out


@lru_cache(maxsize=None)
def character(lam: Partition, rho: Partition) -> int:
    """chi^lam at cycle type rho, by Murnaghan-Nakayama on beta-sets."""
    lam, rho = make_partition(lam), make_partition(rho)
    if sum(lam) != sum(rho):
        raise ValueError("size mismatch")
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    n = len(lam)
    beads = [lam[i] + (n - 1 - i) for i in range(n)]
    occupied = set(beads)
    total = 0
    for b in beads:
        t = b - r
        if t < 0 or t in occupied:
            continue
        sign = (-1) ** sum(1 for x in occupied if t < x < b)
        new = sorted((t if x == b else x) for x in occupied)[::-1]
        mu = make_partition(new[i] - (n - 1 - i) for i in range(n))
        total += sign * character(mu, rest)
    return total


def induced_multiplicity(mu: Sequence[int], lam: Sequence[int]) -> int:
    """Multiplicity of xi_lam in Ind_{S_mu}^{S_l} 1, as the average of chi^lam over S_mu."""
    mu, lam = make_partition(mu), make_partition(lam)
    if sum(mu) != sum(lam):
        raise ValueError("|mu| != |lam|")
    acc = Fraction(0)
    for rhos in product(*(partitions(m) for m in mu)):
        w = Fraction(1)
        for rho in rhos:
            w /= _z(rho)
        cyc = make_partition(x for rho in rhos for x in rho)
        acc += w * character(lam, cyc)
    assert acc.denominator == 1
    return int(acc)
