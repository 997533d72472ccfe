"""Exact arithmetic in Z[q, q^-1] and Q(q).

LaurentPoly is stored densely as (valuation, coefficient tuple).  RatFn keeps
a canonical reduced form so that equality is structural.  Polynomial gcd and
exact division are delegated to sympy's dense univariate routines over ZZ.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from sympy.polys.densearith import dup_exquo
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_inner_gcd

__all__ = [
    "LaurentPoly",
    "RatFn",
    "TruncSeries",
    "Q",
    "ONE",
    "ZERO",
    "bar",
    "qint",
    "qfact",
    "qbinom",
    "split_bar",
    "expand",
    "as_ratfn",
    "laurent_to_json",
    "laurent_from_json",
    "ratfn_to_json",
    "ratfn_from_json",
]


def _trim(val: int, coeffs: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    co = list(coeffs)
    lo = 0
    while lo < len(co) and co[lo] == 0:
        lo += 1
    hi = len(co)
    while hi > lo and co[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return 0, ()
    return val + lo, tuple(int(c) for c in co[lo:hi])


class LaurentPoly:
    """An element of Z[q, q^-1].

    Build from a mapping ``{exponent: coefficient}`` or use :meth:`dense`.
    Instances are immutable and hashable; zero coefficients are never stored.
    """

    __slots__ = ("_val", "_co", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        if not coeffs:
            self._val, self._co = 0, ()
        else:
            lo, hi = min(coeffs), max(coeffs)
            dense = [0] * (hi - lo + 1)
            for e, c in coeffs.items():
                dense[e - lo] += int(c)
            self._val, self._co = _trim(lo, dense)
        self._hash = None

    @classmethod
    def dense(cls, val: int, coeffs: Iterable[int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._val, obj._co = _trim(val, coeffs)
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.dense(0, (c,))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls.dense(e, (c,))

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return {self._val + j: c for j, c in enumerate(self._co) if c}

    def items(self):
        return sorted(self.coeffs.items())

    def __getitem__(self, e: int) -> int:
        j = e - self._val
        if 0 <= j < len(self._co):
            return self._co[j]
        return 0

    def is_zero(self) -> bool:
        return not self._co

    def __bool__(self) -> bool:
        return bool(self._co)

    @property
    def valuation(self) -> int:
        if not self._co:
            raise ValueError("valuation of zero")
        return self._val

    @property
    def degree(self) -> int:
        if not self._co:
            raise ValueError("degree of zero")
        return self._val + len(self._co) - 1

    def is_constant(self) -> bool:
        return not self._co or (self._val == 0 and len(self._co) == 1)

    def at_one(self) -> int:
        return sum(self._co)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._co:
            return self
        if not self._co:
            return other
        lo = min(self._val, other._val)
        hi = max(self._val + len(self._co), other._val + len(other._co))
        out = [0] * (hi - lo)
        for j, c in enumerate(self._co):
            out[self._val - lo + j] += c
        for j, c in enumerate(other._co):
            out[other._val - lo + j] += c
        return LaurentPoly.dense(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly.dense(self._val, [-c for c in self._co])

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly.dense(self._val, [c * other for c in self._co])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._co or not other._co:
            return ZERO
        a, b = self._co, other._co
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly.dense(self._val + other._val, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._co) == 1 and self._co[0] in (1, -1):
                return LaurentPoly.dense(-self._val * (-n), (self._co[0] ** (-n),))
            raise ValueError("negative power of a non-unit")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by q^e."""
        return LaurentPoly.dense(self._val + e, self._co) if self._co else self

    def bar(self) -> "LaurentPoly":
        if not self._co:
            return self
        return LaurentPoly.dense(-self.degree, reversed(self._co))

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises ArithmeticError if ``other`` does not divide."""
        if not other._co:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self._co:
            return ZERO
        q_co = dup_exquo(_to_dup(self._co), _to_dup(other._co), ZZ)
        return LaurentPoly.dense(self._val - other._val, _from_dup(q_co))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._val == other._val and self._co == other._co

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._val, self._co))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._co:
            return "0"
        terms = []
        for e in range(self.degree, self._val - 1, -1):
            c = self[e]
            if not c:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _to_dup(co: tuple[int, ...]) -> list:
    return [ZZ(c) for c in reversed(co)]


def _from_dup(f: list) -> list[int]:
    return [int(c) for c in reversed(f)]


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)


def bar(a: LaurentPoly) -> LaurentPoly:
    """Bar involution q -> q^-1."""
    return a.bar()


def qint(n: int) -> LaurentPoly:
    """Quantum integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n == 0:
        return ZERO
    m = abs(n)
    sign = 1 if n > 0 else -1
    return LaurentPoly({m - 1 - 2 * j: sign for j in range(m)})


def qfact(m: int) -> LaurentPoly:
    if m < 0:
        raise ValueError("qfact needs m >= 0")
    out = ONE
    for i in range(1, m + 1):
        out = out * qint(i)
    return out


def qbinom(n: int, k: int) -> LaurentPoly:
    if k < 0 or k > n:
        return ZERO
    return qfact(n).divexact(qfact(k) * qfact(n - k))


def split_bar(a: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split a = p + r with r bar-invariant and p in qZ[q].

    The bar-invariant part copies the non-positive half: r_n = a_{-|n|}.
    """
    if a.is_zero():
        return ZERO, ZERO
    r = {}
    for e, c in a.coeffs.items():
        if e <= 0:
            r[e] = c
            if e < 0:
                r[-e] = c
    rp = LaurentPoly(r)
    return a - rp, rp


class RatFn:
    """An element of Q(q) held as num/den in canonical form.

    Canonical form: ``den`` is a polynomial with nonzero constant term and
    positive leading coefficient, ``num`` and ``den`` share no polynomial or
    integer-content factor.  The q-power part lives in ``num``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly | int, den: LaurentPoly | int = 1, *, _reduced: bool = False):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if isinstance(den, int):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFn with zero denominator")
        self._hash = None
        if _reduced:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        shift = num._val - den._val
        if len(den._co) == 1:
            # monomial denominator: only integer content to cancel
            d = den._co[0]
            g = _content_gcd(num._co, d)
            if d < 0:
                g = -g
            self.num = LaurentPoly.dense(shift, [c // g for c in num._co])
            self.den = LaurentPoly.const(d // g)
            return
        g, n_co, d_co = dup_inner_gcd(_to_dup(num._co), _to_dup(den._co), ZZ)
        n_co, d_co = _from_dup(n_co), _from_dup(d_co)
        if d_co[-1] < 0:
            n_co = [-c for c in n_co]
            d_co = [-c for c in d_co]
        self.num = LaurentPoly.dense(shift, n_co)
        self.den = LaurentPoly.dense(0, d_co)

    @classmethod
    def from_laurent(cls, a: LaurentPoly) -> "RatFn":
        return cls(a, ONE, _reduced=True)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            if self.den == ONE:
                return RatFn(self.num + other.num, ONE, _reduced=True)
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RATZERO
        if self.den == ONE and other.den == ONE:
            return RatFn(self.num * other.num, ONE, _reduced=True)
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_ratfn(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFn(self.num ** n, self.den ** n, _reduced=True)

    def bar(self) -> "RatFn":
        return RatFn(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        other = as_ratfn(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFn({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _content_gcd(co, d: int) -> int:
    from math import gcd

    g = abs(d)
    for c in co:
        g = gcd(g, c)
        if g == 1:
            break
    return g


RATZERO = RatFn(ZERO, ONE, _reduced=True)
RATONE = RatFn(ONE, ONE, _reduced=True)


def as_ratfn(x) -> RatFn:
    if isinstance(x, RatFn):
        return x
    if isinstance(x, LaurentPoly):
        return RatFn(x, ONE, _reduced=True)
    if isinstance(x, int):
        return RatFn(LaurentPoly.const(x), ONE, _reduced=True)
    return NotImplemented


@dataclass(frozen=True)
class TruncSeries:
    """Power series in q truncated after q^order.

    ``coeffs[j]`` is the coefficient of q^(valuation + j).  The zero series
    has ``valuation = order + 1`` and no coefficients.
    """

    order: int
    valuation: int
    coeffs: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        j = k - self.valuation
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        if k > self.order:
            raise IndexError(f"q^{k} is beyond the truncation order {self.order}")
        return Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self):
        terms = [f"{c}*q^{self.valuation + j}" for j, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O(q^{self.order + 1})"


def expand(f: RatFn | LaurentPoly | int, order: int) -> TruncSeries:
    """Taylor expansion of f at q = 0 up to and including q^order."""
    f = as_ratfn(f)
    if f.is_zero():
        return TruncSeries(order, order + 1, ())
    v = f.num.valuation
    if v > order:
        return TruncSeries(order, v, ())
    den = f.den._co  # den(0) != 0 by canonical form
    n = order - v + 1
    inv = [Fraction(0)] * n
    inv[0] = Fraction(1, den[0])
    for m in range(1, n):
        acc = Fraction(0)
        for i in range(1, min(m, len(den) - 1) + 1):
            acc += den[i] * inv[m - i]
        inv[m] = -acc / den[0]
    num = f.num._co
    out = []
    for k in range(n):
        acc = Fraction(0)
        for j in range(min(k, len(num) - 1) + 1):
            acc += num[j] * inv[k - j]
        out.append(acc)
    return TruncSeries(order, v, tuple(out))


# -- serialization --------------------------------------------------------
def laurent_to_json(a: LaurentPoly) -> dict[str, str]:
    return {str(e): str(c) for e, c in a.items()}


def laurent_from_json(d: Mapping[str, str]) -> LaurentPoly:
    return LaurentPoly({int(e): int(c) for e, c in d.items()})


def ratfn_to_json(f: RatFn) -> dict:
    f = as_ratfn(f)
    return {"num": laurent_to_json(f.num), "den": laurent_to_json(f.den)}


def ratfn_from_json(d: Mapping) -> RatFn:
    return RatFn(laurent_from_json(d["num"]), laurent_from_json(d["den"]))
