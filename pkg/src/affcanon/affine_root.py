"""Simply-laced affine Cartan data, the Beck-Nakajima sequence h and its roots.

Roots are integer tuples in simple-root coordinates indexed by vertices
0..n, vertex 0 being the affine node.  Weyl group elements are handled as
integer matrices acting on the affine root lattice, stored as the tuple of
images of the simple roots (columns).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

Root = tuple[int, ...]

__all__ = [
    "Root",
    "CartanDatum",
    "BetaSequence",
    "RootClass",
    "SUPPORTED_TYPES",
    "cartan_datum",
    "simple_reflect",
    "build_h",
    "beta",
    "classify_root",
    "total_order_I",
    "defect",
    "defect_form",
    "coxeter_cols",
    "real_roots_below",
    "translation_length",
    "inversion_length",
]

SUPPORTED_TYPES = ("A", "D", "E")


def _edges(typ: str, n: int) -> list[tuple[int, int]]:
    if typ == "A":
        if n < 2:
            raise ValueError("type A_n^(1) needs n >= 2")
        return [(i, (i + 1) % (n + 1)) for i in range(n + 1)]
    if typ == "D":
        if n < 4:
            raise ValueError("type D_n^(1) needs n >= 4")
        es = [(i, i + 1) for i in range(1, n - 1)]
        es += [(n - 2, n), (0, 2)]
        return es
    if typ == "E":
        if n == 6:
            return [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)]
        if n == 7:
            return [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4), (0, 1)]
        if n == 8:
            return [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)]
        raise ValueError("type E_n^(1) needs n in {6, 7, 8}")
    raise ValueError(f"unsupported Cartan type {typ!r}")


def _delta(typ: str, n: int) -> Root:
    if typ == "A":
        return (1,) * (n + 1)
    if typ == "D":
        return (1, 1) + (2,) * (n - 3) + (1, 1)
    return {
        6: (1, 1, 2, 2, 3, 2, 1),
        7: (1, 2, 2, 3, 4, 3, 2, 1),
        8: (1, 2, 3, 4, 6, 5, 4, 3, 2),
    }[n]


@dataclass(frozen=True)
class CartanDatum:
    """Affine simply-laced Cartan datum of type X_n^(1)."""

    type: str
    rank: int
    matrix: tuple[tuple[int, ...], ...]
    delta: Root
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        A = self.matrix
        size = self.rank + 1
        assert len(A) == size and all(len(r) == size for r in A)
        for i in range(size):
            assert A[i][i] == 2
            for j in range(size):
                assert A[i][j] == A[j][i]
                if i != j:
                    assert A[i][j] in (0, -1), "not simply-laced"
        assert all(sum(A[i][j] * self.delta[j] for j in range(size)) == 0 for i in range(size)), "A.delta != 0"

    @property
    def size(self) -> int:
        return self.rank + 1

    @property
    def vertices(self) -> range:
        return range(self.rank + 1)

    @property
    def finite_vertices(self) -> range:
        return range(1, self.rank + 1)

    def label(self) -> str:
        return f"{self.type}{self.rank}^(1)"

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        A = self.matrix
        return sum(x[i] * A[i][j] * y[j] for i in range(self.size) if x[i] for j in range(self.size) if y[j])

    def pair_simple(self, x: Sequence[int], i: int) -> int:
        """(x, alpha_i)."""
        row = self.matrix[i]
        return sum(x[j] * row[j] for j in range(self.size) if x[j])

    def simple(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.size))

    def neighbours(self, i: int) -> list[int]:
        return [j for j in self.vertices if j != i and self.matrix[i][j] == -1]

    @cached_property
    def finite_positive_roots(self) -> tuple[Root, ...]:
        """Positive roots of the finite root system on I_0, sorted by height."""
        found = {self.simple(i) for i in self.finite_vertices}
        layer = sorted(found)
        while layer:
            nxt = set()
            for r in layer:
                for i in self.finite_vertices:
                    if self.pair_simple(r, i) == -1:
                        s = tuple(r[j] + (j == i) for j in range(self.size))
                        if s not in found:
                            nxt.add(s)
            found |= nxt
            layer = sorted(nxt)
        return tuple(sorted(found, key=lambda r: (sum(r), r)))

    @cached_property
    def highest_root(self) -> Root:
        return self.finite_positive_roots[-1]

    @cached_property
    def coxeter_number(self) -> int:
        return sum(self.highest_root) + 1


def cartan_datum(typ: str, rank: int) -> CartanDatum:
    typ = typ.upper()
    edges = _edges(typ, rank)
    size = rank + 1
    A = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
    for a, b in edges:
        A[a][b] = A[b][a] = -1
    return CartanDatum(typ, rank, tuple(map(tuple, A)), _delta(typ, rank), tuple(sorted(tuple(sorted(e)) for e in edges)))


def simple_reflect(datum: CartanDatum, i: int, x: Sequence[int]) -> Root:
    """s_i(x) = x - (x, alpha_i) alpha_i."""
    p = datum.pair_simple(x, i)
    if not p:
        return tuple(x)
    out = list(x)
    out[i] -= p
    return tuple(out)


# -- Weyl group elements as column tuples ----------------------------------
def _apply(cols: Sequence[Root], x: Sequence[int]) -> Root:
    size = len(cols)
    out = [0] * size
    for j, xj in enumerate(x):
        if xj:
            c = cols[j]
            for i in range(size):
                out[i] += xj * c[i]
    return tuple(out)


def _compose(a: Sequence[Root], b: Sequence[Root]) -> tuple[Root, ...]:
    """Columns of the product a*b."""
    return tuple(_apply(a, col) for col in b)


def _right_reflect(datum: CartanDatum, cols: Sequence[Root], i: int) -> tuple[Root, ...]:
    """Columns of x*s_i given the columns of x."""
    ci = cols[i]
    row = datum.matrix[i]
    out = list(cols)
    for j in datum.vertices:
        a = row[j]
        if a and j != i:
            out[j] = tuple(cols[j][k] - a * ci[k] for k in range(datum.size))
    out[i] = tuple(-v for v in ci)
    return tuple(out)


def _left_reflect(datum: CartanDatum, cols: Sequence[Root], i: int) -> tuple[Root, ...]:
    return tuple(simple_reflect(datum, i, c) for c in cols)


def _identity(size: int) -> tuple[Root, ...]:
    return tuple(tuple(1 if r == c else 0 for r in range(size)) for c in range(size))


def _sign(x: Sequence[int]) -> int:
    if all(v >= 0 for v in x) and any(x):
        return 1
    if all(v <= 0 for v in x) and any(x):
        return -1
    return 0


def _translation(datum: CartanDatum, lam_pairings: Sequence[int]) -> tuple[Root, ...]:
    """t_lambda : x -> x + (lambda, x) delta on the affine root lattice.

    ``lam_pairings[i]`` is (lambda, alpha_i) for i in I_0; the value on alpha_0
    follows from alpha_0 = delta - theta.
    """
    theta = datum.highest_root
    p0 = -sum(theta[i] * lam_pairings[i] for i in datum.finite_vertices)
    pair = [p0] + [lam_pairings[i] for i in datum.finite_vertices]
    cols = []
    for j in datum.vertices:
        cols.append(tuple(int(r == j) + pair[j] * datum.delta[r] for r in datum.vertices))
    return tuple(cols)


def translation_length(datum: CartanDatum, lam_pairings: Sequence[int]) -> int:
    """Length of t_lambda from the Iwahori-Matsumoto formula with u = 1."""
    total = 0
    for a in datum.finite_positive_roots:
        total += abs(sum(a[i] * lam_pairings[i] for i in datum.finite_vertices))
    return total


def inversion_length(datum: CartanDatum, cols: Sequence[Root]) -> int:
    """#{beta > 0 real : x(beta) < 0}, counted along each delta-string."""
    total = 0
    d = datum.delta
    for a in datum.finite_positive_roots:
        img = _apply(cols, a)
        k = img[0]  # delta-multiple of the image, since d[0] == 1
        y = tuple(img[j] - k * d[j] for j in datum.vertices)
        pos = _sign(y) > 0
        # alpha + m delta, m >= 0
        total += max(0, -k) if pos else max(0, -k + 1)
        # -alpha + m delta, m >= 1
        total += max(0, k) if pos else max(0, k - 1)
    return total


def _reduced_decomposition(datum: CartanDatum, cols):
    """Greedy left-descent factorisation x = s_{i1}...s_{iN} tau."""
    inv = _inverse_cols(datum, cols)
    word = []
    x = cols
    while True:
        desc = [i for i in datum.vertices if _sign(inv[i]) < 0]
        if not desc:
            break
        i = desc[0]
        word.append(i)
        x = _left_reflect(datum, x, i)
        inv = _right_reflect(datum, inv, i)
    # x now permutes the simple roots
    perm = []
    for j in datum.vertices:
        img = x[j]
        nz = [r for r in datum.vertices if img[r]]
        if len(nz) != 1 or img[nz[0]] != 1:
            raise AssertionError("remainder of reduced decomposition is not a diagram automorphism")
        perm.append(nz[0])
    return tuple(word), tuple(perm)


def _inverse_cols(datum: CartanDatum, cols):
    """Invert an integer unimodular matrix by exact Gauss-Jordan."""
    from fractions import Fraction

    n = datum.size
    M = [[Fraction(cols[c][r]) for c in range(n)] + [Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    out = []
    for c in range(n):
        col = []
        for r in range(n):
            v = M[r][n + c]
            assert v.denominator == 1
            col.append(int(v))
        out.append(tuple(col))
    return tuple(out)


class RootClass(str, enum.Enum):
    REAL_GT = "real_gt"
    REAL_LT = "real_lt"
    IMAGINARY = "imaginary"
    NOT_POSITIVE_ROOT = "not_positive_root"


def classify_root(datum: CartanDatum, x: Sequence[int]) -> RootClass:
    """Place x in Delta_>^{re,+}, Delta_<^{re,+}, Z_{>0} delta, or nowhere."""
    m = x[0]
    y = tuple(x[j] - m * datum.delta[j] for j in datum.vertices)
    if not any(y):
        return RootClass.IMAGINARY if m > 0 else RootClass.NOT_POSITIVE_ROOT
    if y in _root_set(datum) and m >= 0:
        return RootClass.REAL_GT
    if tuple(-v for v in y) in _root_set(datum) and m > 0:
        return RootClass.REAL_LT
    return RootClass.NOT_POSITIVE_ROOT


_ROOTSETS: dict = {}


def _root_set(datum: CartanDatum) -> frozenset:
    key = (datum.type, datum.rank)
    s = _ROOTSETS.get(key)
    if s is None:
        s = _ROOTSETS[key] = frozenset(datum.finite_positive_roots)
    return s


@dataclass(frozen=True, eq=False)
class BetaSequence:
    """The doubly infinite sequence h with its roots beta_k.

    ``word`` is the greedy reduced word of the W-part of t_rho = w tau.
    ``window`` = (i_1, ..., i_N) is the block actually used to index h, with
    i_{k+N} = tau_h(i_k); it is either ``word`` itself or the reduced word of
    t_rho^{-1}, whichever realises the partition of positive real roots into
    {beta_k : k <= 0} and {beta_k : k > 0} (see ``orientation``).
    """

    datum: CartanDatum
    word: tuple[int, ...]
    tau: tuple[int, ...]
    window: tuple[int, ...]
    tau_h: tuple[int, ...]
    orientation: str
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def N(self) -> int:
        return len(self.window)

    def h(self, k: int) -> int:
        """The vertex i_k."""
        N = self.N
        q, r = divmod(k - 1, N)
        v = self.window[r]
        perm = self.tau_h if q >= 0 else _perm_inverse(self.tau_h)
        for _ in range(abs(q)):
            v = perm[v]
        return v

    def beta(self, k: int) -> Root:
        b = self._cache.get(k)
        if b is None:
            self._extend(k)
            b = self._cache[k]
        return b

    def _extend(self, k: int) -> None:
        datum = self.datum
        st = self._cache
        if k > 0:
            top, cols = st.get("pos_state", (0, _identity(datum.size)))
            while top < k:
                top += 1
                i = self.h(top)
                st[top] = cols[i]
                cols = _right_reflect(datum, cols, i)
            st["pos_state"] = (top, cols)
        else:
            bot, cols = st.get("neg_state", (1, _identity(datum.size)))
            while bot > k:
                bot -= 1
                i = self.h(bot)
                st[bot] = cols[i]
                cols = _right_reflect(datum, cols, i)
            st["neg_state"] = (bot, cols)

    def betas(self, lo: int, hi: int) -> list[tuple[int, Root]]:
        return [(k, self.beta(k)) for k in range(lo, hi + 1)]

    def index_of(self, root: Sequence[int], max_periods: int = 64) -> int:
        """The unique k with beta_k == root."""
        root = tuple(root)
        cls = classify_root(self.datum, root)
        if cls not in (RootClass.REAL_GT, RootClass.REAL_LT):
            raise ValueError(f"{root} is not a positive real root")
        ks = (k for j in range(max_periods * self.N) for k in (-j, j + 1))
        for k in ks:
            if self.beta(k) == root:
                return k
        raise LookupError(f"{root} not found within {max_periods} periods")


def _perm_inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _partition_ok(seq: BetaSequence, bound: int) -> bool:
    datum = seq.datum
    for k in range(-bound + 1, bound + 1):
        c = classify_root(datum, seq.beta(k))
        want = RootClass.REAL_GT if k <= 0 else RootClass.REAL_LT
        if c is not want:
            return False
    return True


def build_h(datum: CartanDatum) -> BetaSequence:
    """Construct the sequence h from t_rho, rho = sum of fundamental weights."""
    ones = [0] + [1] * datum.rank
    t_rho = _translation(datum, ones)
    word, tau = _reduced_decomposition(datum, t_rho)
    expected = translation_length(datum, ones)
    if len(word) != expected or inversion_length(datum, t_rho) != expected:
        raise AssertionError("greedy word for t_rho is not reduced")
    candidates = [(word, tau, "t_rho")]
    t_inv = _translation(datum, [-v for v in ones])
    word_inv, tau_inv = _reduced_decomposition(datum, t_inv)
    if len(word_inv) != expected:
        raise AssertionError("greedy word for t_rho^-1 is not reduced")
    candidates.append((word_inv, tau_inv, "t_rho_inverse"))
    for window, tau_h, name in candidates:
        seq = BetaSequence(datum, word, tau, window, tau_h, name)
        if _partition_ok(seq, 2 * len(window)):
            return seq
    raise AssertionError("no orientation of h realises the Delta_> / Delta_< partition")


def beta(seq: BetaSequence, k: int) -> Root:
    return seq.beta(k)


def total_order_I(seq: BetaSequence, max_periods: int = 64) -> tuple[int, ...]:
    """Vertices ordered by where alpha_i sits in beta_0 < beta_-1 < ... < delta < ... < beta_2 < beta_1."""
    cached = seq._cache.get("order_I")
    if cached is not None:
        return cached
    datum = seq.datum
    keys = {}
    bound = seq.N
    while len(keys) < datum.size:
        if bound > max_periods * seq.N:
            raise LookupError("simple roots not all located among beta_k")
        for i in datum.vertices:
            if i in keys:
                continue
            try:
                k = seq.index_of(datum.simple(i), max_periods=bound // seq.N)
            except LookupError:
                continue
            keys[i] = (0, -k) if k <= 0 else (1, -k)
        bound *= 2
    order = tuple(sorted(datum.vertices, key=keys.__getitem__))
    seq._cache["order_I"] = order
    return order


def coxeter_cols(seq: BetaSequence) -> tuple[Root, ...]:
    """Columns of C = s_{i_n} ... s_{i_0} for the total order on I."""
    datum = seq.datum
    cols = _identity(datum.size)
    for i in total_order_I(seq):
        cols = _left_reflect(datum, cols, i)
    return cols


def defect_form(seq: BetaSequence, max_power: int = 10_000) -> tuple[int, tuple[int, ...]]:
    """(g, a) with C^g(alpha_j) = alpha_j + a_j delta and g minimal."""
    cached = seq._cache.get("defect_form")
    if cached is not None:
        return cached
    datum = seq.datum
    C = coxeter_cols(seq)
    P = C
    for g in range(1, max_power + 1):
        coeffs = []
        ok = True
        for j in datum.vertices:
            diff = list(P[j])
            diff[j] -= 1
            m = diff[0]
            if any(diff[r] != m * datum.delta[r] for r in datum.vertices):
                ok = False
                break
            coeffs.append(m)
        if ok:
            seq._cache["defect_form"] = (g, tuple(coeffs))
            return g, tuple(coeffs)
        P = _compose(C, P)
    raise AssertionError("no power of the Coxeter element is a translation")


def defect(seq: BetaSequence, x: Sequence[int]) -> int:
    _, a = defect_form(seq)
    return sum(xi * ai for xi, ai in zip(x, a))


def real_roots_below(seq: BetaSequence, nu: Sequence[int]) -> list[tuple[int, Root]]:
    """All (k, beta_k) with beta_k <= nu componentwise, ordered by k."""
    nu = tuple(nu)
    if not any(nu):
        return []
    N = seq.N
    out = []

    def le(b):
        return all(x <= y for x, y in zip(b, nu))

    for sign in (-1, 1):
        start = 0 if sign < 0 else 1
        period = 0
        while True:
            ks = [start + sign * (period * N + j) for j in range(N)]
            all_high = True
            for k in ks:
                b = seq.beta(k)
                if b[0] <= nu[0]:
                    all_high = False
                if le(b):
                    out.append((k, b))
            if all_high:
                break
            period += 1
    out.sort()
    return out
