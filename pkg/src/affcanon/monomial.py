"""Monomial words m(c) attached to PBW indices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .affine_root import BetaSequence, RootClass, classify_root, total_order_I
from .pbw_index import Partition, PBWIndex

__all__ = [
    "MonomialWord",
    "m_real",
    "m_plus",
    "m_minus",
    "m_imag_single",
    "m_imag_partition",
    "m_zero",
    "m_index",
]


@dataclass(frozen=True)
class MonomialWord:
    """f_{i_1}^{(d_1)} ... f_{i_s}^{(d_s)} as a tuple of (vertex, power) letters."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        cleaned = tuple((int(i), int(d)) for i, d in self.letters if d)
        if any(d < 0 for _, d in cleaned):
            raise ValueError("negative divided power")
        object.__setattr__(self, "letters", cleaned)

    @classmethod
    def of(cls, letters: Iterable[Sequence[int]]) -> "MonomialWord":
        return cls(tuple((i, d) for i, d in letters))

    def __add__(self, other: "MonomialWord") -> "MonomialWord":
        return MonomialWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def weight(self, size: int) -> tuple[int, ...]:
        out = [0] * size
        for i, d in self.letters:
            out[i] += d
        return tuple(out)

    def colors(self) -> tuple[int, ...]:
        """Each vertex repeated by its divided power."""
        return tuple(i for i, d in self.letters for _ in range(d))

    @property
    def powers(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.letters)

    def to_json(self) -> list[list[int]]:
        return [[i, d] for i, d in self.letters]

    def __str__(self):
        return " ".join(f"f{i}^({d})" for i, d in self.letters) or "1"


def m_real(c: int, beta: Sequence[int], order: Sequence[int], datum=None) -> MonomialWord:
    """f_{i_n}^{(d_n)} ... f_{i_0}^{(d_0)} where c*beta = sum_j d_j alpha_{i_j}."""
    if datum is not None and classify_root(datum, beta) not in (RootClass.REAL_GT, RootClass.REAL_LT):
        raise ValueError(f"{tuple(beta)} is not a positive real root")
    if c <= 0:
        raise ValueError("multiplicity must be positive")
    return MonomialWord(tuple((i, c * beta[i]) for i in reversed(order)))


def _real_word(k: int, c: int, seq: BetaSequence) -> MonomialWord:
    return m_real(c, seq.beta(k), total_order_I(seq))


def m_plus(plus: Sequence[tuple[int, int]], seq: BetaSequence) -> MonomialWord:
    """m(c_0 beta_0) m(c_-1 beta_-1) ..."""
    w = MonomialWord()
    for k, c in sorted(plus, reverse=True):
        w = w + _real_word(k, c, seq)
    return w


def m_minus(minus: Sequence[tuple[int, int]], seq: BetaSequence) -> MonomialWord:
    """... m(c_2 beta_2) m(c_1 beta_1)"""
    w = MonomialWord()
    for k, c in sorted(minus, reverse=True):
        w = w + _real_word(k, c, seq)
    return w


def m_imag_single(i: int, c: int, seq: BetaSequence) -> MonomialWord:
    """m(i, c) = m(c(delta - alpha_i)) f_i^{(c)}."""
    datum = seq.datum
    if i == 0 or i not in datum.vertices:
        raise ValueError("m(i, c) needs i in I_0")
    beta = tuple(datum.delta[j] - (j == i) for j in datum.vertices)
    return m_real(c, beta, total_order_I(seq)) + MonomialWord(((i, c),))


def m_imag_partition(i: int, mu: Partition, seq: BetaSequence) -> MonomialWord:
    w = MonomialWord()
    for part in sorted(mu, reverse=True):
        w = w + m_imag_single(i, part, seq)
    return w


def m_zero(zero: Sequence[tuple[int, Partition]], seq: BetaSequence) -> MonomialWord:
    """Product over I_0, taken in the restriction of the total order on I."""
    parts = dict(zero)
    w = MonomialWord()
    for i in total_order_I(seq):
        if parts.get(i):
            w = w + m_imag_partition(i, parts[i], seq)
    return w


def m_index(c: PBWIndex, seq: BetaSequence) -> MonomialWord:
    """m(c) = m(c_+) m(c_0) m(c_-)."""
    return m_plus(c.plus, seq) + m_zero(c.zero, seq) + m_minus(c.minus, seq)
