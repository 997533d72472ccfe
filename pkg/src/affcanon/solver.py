"""Block factorisation Lambda = tH D H, H = P Q, and canonical-basis expansions.

Internally H, P, Q carry identity diagonal blocks; the within-class Kostka
factor U (monomials m(i, mu) expand over S_{i,lambda} with Kostka
coefficients) is absorbed into D.  Matrices in the PBW convention are then

    H_pbw = H U,   Q_pbw = Q U,   D_pbw = U^-t D U^-1,   P unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .affine_root import BetaSequence
from .gram import GramMatrix, gram_matrix
from .pbw_index import PBWIndex, kostka, prec, prec0
from .qfield import ONE, Q, LaurentPoly, RatFn, expand, split_bar

__all__ = [
    "SingularBlock",
    "NotInA",
    "DegenerateMonomials",
    "exact_rank",
    "BlockMatrix",
    "DecompResult",
    "VerificationReport",
    "hd_decompose",
    "hd_decompose_schur",
    "pq_split",
    "pq_split_rowwise",
    "kostka_correction",
    "decompose",
    "canonical_in_pbw",
    "canonical_in_monomials",
    "verify_almost_orthonormal",
    "verify_prop32_diagonal",
    "verify_decomposition",
    "prop32_value",
]


class SingularBlock(ArithmeticError):
    pass


class NotInA(ArithmeticError):
    pass


class DegenerateMonomials(SingularBlock):
    """Lambda itself is singular: the monomial words are linearly dependent.

    ``rank`` is the exact rank over Q(q), ``null_vector`` a certified kernel
    element (Lambda v = 0), both filled in by :func:`decompose`.
    """

    def __init__(self, msg: str, size: int = 0, rank: int | None = None, null_vector=None):
        super().__init__(msg)
        self.size = size
        self.rank = rank
        self.null_vector = null_vector


Mat = list[list[RatFn]]
_Z = RatFn(0)
_O = RatFn(1)


# -- small dense linear algebra over Q(q) ---------------------------------
def _zeros(n: int, m: int | None = None) -> Mat:
    return [[_Z] * (n if m is None else m) for _ in range(n)]


def _eye(n: int) -> Mat:
    M = _zeros(n)
    for i in range(n):
        M[i][i] = _O
    return M


def _sub(A: Mat, rows, cols) -> Mat:
    return [[A[i][j] for j in cols] for i in rows]


def _t(A: Mat) -> Mat:
    return [list(r) for r in zip(*A)] if A else []


def _mul(A: Mat, B: Mat) -> Mat:
    if not A or not B:
        return [[] for _ in A]
    m = len(B[0])
    out = []
    Bt = _t(B)
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out_row = []
        for j in range(m):
            col = Bt[j]
            acc = _Z
            for k, a in nz:
                b = col[k]
                if b:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def _minus(A: Mat, B: Mat) -> Mat:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _inverse(A: Mat) -> Mat:
    """Gauss-Jordan over Q(q); raises SingularBlock."""
    n = len(A)
    M = [list(r) + e for r, e in zip(A, _eye(n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise SingularBlock(f"pivot {c} vanishes")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv if x else x for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y if y else x for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def exact_rank(A: Mat) -> tuple[int, list[RatFn] | None]:
    """Rank over Q(q) and, when deficient, a kernel vector checked against A."""
    n = len(A)
    M = [list(r) for r in A]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv if x else x for x in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y if y else x for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if r == n:
        return n, None
    free = next(c for c in range(n) if c not in pivots)
    v = [_Z] * n
    v[free] = _O
    for row, c in enumerate(pivots):
        v[c] = -M[row][free]
    for row in A:
        acc = _Z
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        assert not acc, "kernel vector does not annihilate the matrix"
    return r, v


def _unitri_inverse(A: Mat) -> Mat:
    """Inverse of a lower unitriangular matrix by forward substitution."""
    n = len(A)
    X = _eye(n)
    for j in range(n):
        for i in range(j + 1, n):
            acc = _Z
            for k in range(j, i):
                if A[i][k] and X[k][j]:
                    acc = acc + A[i][k] * X[k][j]
            X[i][j] = -acc
    return X


def _ranges(classes):
    return [range(a, b) for a, b in classes]


def _to_laurent(x: RatFn, what: str) -> LaurentPoly:
    try:
        return x.to_laurent()
    except ArithmeticError:
        raise NotInA(f"{what} entry {x} is not in Z[q, q^-1]") from None


# -- data types -------------------------------------------------------------
@dataclass(frozen=True)
class BlockMatrix:
    entries: tuple[tuple, ...]
    indices: tuple[PBWIndex, ...]
    classes: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, M, indices, classes) -> "BlockMatrix":
        return cls(tuple(tuple(r) for r in M), tuple(indices), tuple(classes))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def rows(self) -> Mat:
        return [[e if isinstance(e, RatFn) else RatFn(e) for e in r] for r in self.entries]

    def class_of(self) -> list[int]:
        out = [0] * len(self.entries)
        for n, (a, b) in enumerate(self.classes):
            for i in range(a, b):
                out[i] = n
        return out


@dataclass(frozen=True)
class DecompResult:
    gram: GramMatrix
    H: BlockMatrix          # identity diagonal blocks, LaurentPoly
    D: BlockMatrix          # block diagonal, RatFn
    P: BlockMatrix          # LaurentPoly
    Q: BlockMatrix          # LaurentPoly
    U: BlockMatrix          # within-class Kostka factor, integer LaurentPoly
    H_pbw: BlockMatrix
    Q_pbw: BlockMatrix
    D_pbw: BlockMatrix
    Qinv: BlockMatrix       # columns: b(c) in the monomial basis

    @property
    def indices(self):
        return self.gram.indices

    @property
    def classes(self):
        return self.gram.classes


@dataclass
class VerificationReport:
    name: str
    ok: bool = True
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    def fail(self, msg: str):
        self.ok = False
        if len(self.failures) < 20:
            self.failures.append(msg)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": list(self.failures)}


# -- Lambda = tH D H ----------------------------------------------------------
def _as_mat(L) -> tuple[Mat, tuple]:
    if isinstance(L, GramMatrix):
        return [list(r) for r in L.entries], L.classes
    if isinstance(L, BlockMatrix):
        return L.rows(), L.classes
    raise TypeError(type(L))


def hd_decompose(L, classes=None) -> tuple[Mat, Mat]:
    """Left-looking block LDL^t, classes processed from the largest down.

    D_I = L_II - sum_{K>I} tH_KI D_K H_KI
    H_IJ = D_I^-1 (L_IJ - sum_{K>I} tH_KI D_K H_KJ)      (J < I)
    """
    if classes is None:
        M, classes = _as_mat(L)
    else:
        M = [list(r) for r in L]
    n = len(M)
    blocks = _ranges(classes)
    nb = len(blocks)
    H = _eye(n)
    D = _zeros(n)
    # DH[K][J] caches D_K H_KJ
    DH: dict[tuple[int, int], Mat] = {}
    for I in reversed(range(nb)):
        rI = blocks[I]
        acc = _sub(M, rI, rI)
        for K in range(I + 1, nb):
            HKI = _sub(H, blocks[K], rI)
            if any(x for r in HKI for x in r):
                acc = _minus(acc, _mul(_t(HKI), DH[K, I]))
        for a, i in enumerate(rI):
            for b, j in enumerate(rI):
                D[i][j] = acc[a][b]
        DI_inv = _inverse(acc)
        DH[I, I] = acc
        for J in range(I):
            rJ = blocks[J]
            rhs = _sub(M, rI, rJ)
            for K in range(I + 1, nb):
                HKI = _sub(H, blocks[K], rI)
                if any(x for r in HKI for x in r):
                    rhs = _minus(rhs, _mul(_t(HKI), DH[K, J]))
            HIJ = _mul(DI_inv, rhs)
            for a, i in enumerate(rI):
                for b, j in enumerate(rJ):
                    v = HIJ[a][b]
                    if v and not v.is_laurent():
                        raise NotInA(f"H[{i}][{j}] = {v}")
                    H[i][j] = v
            DH[I, J] = _mul(acc, HIJ)
    return H, D


def hd_decompose_schur(L, classes=None) -> tuple[Mat, Mat]:
    """Right-looking variant: peel the largest class and update the Schur complement."""
    if classes is None:
        M, classes = _as_mat(L)
    else:
        M = [list(r) for r in L]
    n = len(M)
    S = [list(r) for r in M]
    H = _eye(n)
    D = _zeros(n)
    for a, b in reversed(list(classes)):
        rI = range(a, b)
        DI = _sub(S, rI, rI)
        for x, i in enumerate(rI):
            for y, j in enumerate(rI):
                D[i][j] = DI[x][y]
        if a == 0:
            break
        rest = range(0, a)
        HI = _mul(_inverse(DI), _sub(S, rI, rest))
        for x, i in enumerate(rI):
            for j in rest:
                v = HI[x][j]
                if v and not v.is_laurent():
                    raise NotInA(f"H[{i}][{j}] = {v}")
                H[i][j] = v
        upd = _mul(_t(HI), _mul(DI, HI))
        for i in rest:
            for j in rest:
                if upd[i][j]:
                    S[i][j] = S[i][j] - upd[i][j]
    return H, D


# -- H = P Q ----------------------------------------------------------------
def _split_entry(x: RatFn, i: int, j: int) -> tuple[RatFn, RatFn]:
    p, r = split_bar(_to_laurent(x, f"H-residual[{i}][{j}]"))
    return RatFn(p), RatFn(r)


def pq_split(H: Mat, classes) -> tuple[Mat, Mat]:
    """Solve H = P Q by increasing block distance from the diagonal."""
    n = len(H)
    blocks = _ranges(classes)
    nb = len(blocks)
    P, Qm = _eye(n), _eye(n)
    for dist in range(1, nb):
        for J in range(nb - dist):
            I = J + dist
            for i in blocks[I]:
                for j in blocks[J]:
                    res = H[i][j]
                    for K in range(J + 1, I):
                        for k in blocks[K]:
                            if P[i][k] and Qm[k][j]:
                                res = res - P[i][k] * Qm[k][j]
                    P[i][j], Qm[i][j] = _split_entry(res, i, j)
    return P, Qm


def pq_split_rowwise(H: Mat, classes) -> tuple[Mat, Mat]:
    """Same factorisation, filled row block by row block, right to left."""
    n = len(H)
    blocks = _ranges(classes)
    P, Qm = _eye(n), _eye(n)
    for I in range(len(blocks)):
        for J in reversed(range(I)):
            for i in blocks[I]:
                for j in blocks[J]:
                    res = H[i][j]
                    for k in range(blocks[J].stop, blocks[I].start):
                        if P[i][k] and Qm[k][j]:
                            res = res - P[i][k] * Qm[k][j]
                    P[i][j], Qm[i][j] = _split_entry(res, i, j)
    return P, Qm


# -- Kostka factor ----------------------------------------------------------
def kostka_correction(indices: Sequence[PBWIndex], classes) -> Mat:
    """U[c'][c] = prod_i K(lambda^(i)(c'), lambda^(i)(c)) inside each class."""
    n = len(indices)
    U = _zeros(n)
    for a, b in classes:
        for x in range(a, b):
            for y in range(a, b):
                cx, cy = indices[x], indices[y]
                verts = {i for i, _ in cx.zero} | {i for i, _ in cy.zero}
                v = 1
                for i in verts:
                    v *= kostka(cx.part(i), cy.part(i))
                    if not v:
                        break
                if v:
                    U[x][y] = RatFn(v)
    for x in range(n):
        assert U[x][x] == _O and all(not U[x][y] for y in range(x + 1, n)), "Kostka factor not unitriangular"
    return U


# -- pipeline ---------------------------------------------------------------
def _laurent_block(M: Mat, indices, classes, what: str) -> BlockMatrix:
    return BlockMatrix.of([[_to_laurent(x, what) for x in r] for r in M], indices, classes)


def decompose(gram: GramMatrix, schedule: str = "left") -> DecompResult:
    M = [list(r) for r in gram.entries]
    cls = gram.classes
    idx = gram.indices
    try:
        if schedule == "left":
            H, D = hd_decompose(M, cls)
        elif schedule == "right":
            H, D = hd_decompose_schur(M, cls)
        else:
            raise ValueError(f"unknown schedule {schedule!r}")
    except SingularBlock as e:
        rank, v = exact_rank(M)
        if v is None:
            raise
        raise DegenerateMonomials(
            f"Gram matrix of the monomial words has rank {rank} < {len(M)}: the words are linearly dependent",
            size=len(M), rank=rank, null_vector=v,
        ) from e
    if schedule == "left":
        P, Qm = pq_split(H, cls)
    else:
        P, Qm = pq_split_rowwise(H, cls)
    U = kostka_correction(idx, cls)
    Uinv = _unitri_inverse(U)
    Hp = _mul(H, U)
    Qp = _mul(Qm, U)
    Dp = _mul(_t(Uinv), _mul(D, Uinv))
    Qinv = _mul(Uinv, _unitri_inverse(Qm))
    return DecompResult(
        gram=gram,
        H=_laurent_block(H, idx, cls, "H"),
        D=BlockMatrix.of(D, idx, cls),
        P=_laurent_block(P, idx, cls, "P"),
        Q=_laurent_block(Qm, idx, cls, "Q"),
        U=_laurent_block(U, idx, cls, "U"),
        H_pbw=_laurent_block(Hp, idx, cls, "H_pbw"),
        Q_pbw=_laurent_block(Qp, idx, cls, "Q_pbw"),
        D_pbw=BlockMatrix.of(Dp, idx, cls),
        Qinv=_laurent_block(Qinv, idx, cls, "Qinv"),
    )


def canonical_in_pbw(nu: Sequence[int], seq: BetaSequence, engine: str = "dp", jobs: int = 1) -> DecompResult:
    """Full pipeline; ``result.P`` has columns b(c) expanded in the PBW basis."""
    return decompose(gram_matrix(nu, seq, engine=engine, jobs=jobs))


def canonical_in_monomials(nu: Sequence[int], seq: BetaSequence, **kw) -> BlockMatrix:
    return canonical_in_pbw(nu, seq, **kw).Qinv


# -- verification -------------------------------------------------------------
def prop32_value(c: PBWIndex) -> RatFn:
    den = ONE
    for _, m in c.real_entries():
        for d in range(1, m + 1):
            den = den * (ONE - Q ** (2 * d))
    return RatFn(ONE, den)


def verify_prop32_diagonal(res: DecompResult) -> VerificationReport:
    rep = VerificationReport("prop32_diagonal")
    D = res.D_pbw.rows()
    for a, b in res.classes:
        rep.checked += 1
        c = res.indices[a]
        if not c.zero:
            if b - a != 1:
                rep.fail(f"class of {c} has size {b - a}")
            elif D[a][a] != prop32_value(c):
                rep.fail(f"D[{c}] = {D[a][a]} != {prop32_value(c)}")
        else:
            blk = _sub(D, range(a, b), range(a, b))
            if blk != _t(blk):
                rep.fail(f"class block at {c} not symmetric")
            try:
                _inverse(blk)
            except SingularBlock:
                rep.fail(f"class block at {c} singular")
    return rep


def verify_almost_orthonormal(res: DecompResult, order: int = 10, D: str = "pbw") -> VerificationReport:
    """tP D P in Id + q Z[[q]] up to q^order."""
    rep = VerificationReport("almost_orthonormal")
    Dm = (res.D_pbw if D == "pbw" else res.D).rows()
    P = res.P.rows()
    G = _mul(_t(P), _mul(Dm, P))
    n = len(G)
    for i in range(n):
        for j in range(n):
            rep.checked += 1
            s = expand(G[i][j], order)
            if not s.is_integral():
                rep.fail(f"G[{i}][{j}] has non-integral expansion")
                continue
            lead = 1 if i == j else 0
            if s.valuation < 0 or s[0] != lead:
                rep.fail(f"G[{i}][{j}] = {G[i][j]} not in {lead} + qZ[[q]]")
    return rep


def verify_decomposition(res: DecompResult, order: int = 10) -> dict[str, VerificationReport]:
    """Every structural constraint on (H, D, P, Q), plus the derived checks."""
    out: dict[str, VerificationReport] = {}
    idx = res.indices
    n = len(idx)
    L = [list(r) for r in res.gram.entries]
    H, D, P, Qm = res.H.rows(), res.D.rows(), res.P.rows(), res.Q.rows()
    cls_of = res.H.class_of()

    rec = VerificationReport("reconstruction", checked=2)
    if _mul(_t(H), _mul(D, H)) != L:
        rec.fail("tH D H != Lambda")
    if _mul(P, Qm) != H:
        rec.fail("P Q != H")
    Hp, Dp, Qp = res.H_pbw.rows(), res.D_pbw.rows(), res.Q_pbw.rows()
    if _mul(_t(Hp), _mul(Dp, Hp)) != L or _mul(P, Qp) != Hp:
        rec.fail("PBW-convention reconstruction failed")
    out[rec.name] = rec

    shape = VerificationReport("shape")
    for i in range(n):
        for j in range(n):
            shape.checked += 1
            same = cls_of[i] == cls_of[j]
            if same:
                for name, M in (("H", res.H), ("P", res.P), ("Q", res.Q)):
                    want = ONE if i == j else LaurentPoly()
                    if M[i, j] != want:
                        shape.fail(f"{name}[{i}][{j}] in a diagonal block is {M[i, j]}")
            else:
                if D[i][j]:
                    shape.fail(f"D[{i}][{j}] off the class blocks")
                if cls_of[i] < cls_of[j]:
                    for name, M in (("H", res.H), ("P", res.P), ("Q", res.Q)):
                        if not M[i, j].is_zero():
                            shape.fail(f"{name}[{i}][{j}] above the diagonal")
                else:
                    p = res.P[i, j]
                    if not p.is_zero() and p.valuation < 1:
                        shape.fail(f"P[{i}][{j}] = {p} not in qZ[q]")
                    qv = res.Q[i, j]
                    if qv.bar() != qv:
                        shape.fail(f"Q[{i}][{j}] = {qv} not bar-invariant")
                    if not p.is_zero() and not prec0(idx[j], idx[i]):
                        shape.fail(f"P[{i}][{j}] nonzero without c <_0 d")
                    if not res.H[i, j].is_zero() and not prec(idx[j], idx[i]):
                        shape.fail(f"H[{i}][{j}] nonzero without c < c'")
    out[shape.name] = shape

    out["prop32_diagonal"] = verify_prop32_diagonal(res)

    p25 = VerificationReport("prop25_unit_columns")
    Qi = res.Qinv
    for j, c in enumerate(idx):
        if len(c.real_entries()) == 1 and not c.zero:
            p25.checked += 1
            for i in range(n):
                want = ONE if i == j else LaurentPoly()
                if Qi[i, j] != want:
                    p25.fail(f"Qinv column {c} not a unit vector at row {i}")
                    break
    out[p25.name] = p25

    out["almost_orthonormal"] = verify_almost_orthonormal(res, order)
    return out
