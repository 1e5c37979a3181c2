"""Finite-dimensional F[t]-modules given as (field, square matrix).

A :class:`TorsionModule` is the vector space F^d with t acting by ``mat``.
It is classified by the Smith normal form of ``tI - A`` over F[t] (invariant
factors) or, after factoring, by its elementary divisors ``(m, r)`` meaning a
summand F[t]/m^r. Jordan blocks ``M_r = F[t]/t^r`` use the basis
1, t, ..., t^(r-1), so t acts by the companion matrix of t^r.
"""

from dataclasses import dataclass

from . import linalg as la
from .errors import FieldMismatch, InvalidJordanHom, NotNilpotent, ShapeMismatch
from .poly import Poly, factor


class TorsionModule:
    __slots__ = ("field", "mat")

    def __init__(self, field, mat):
        mat = [list(row) for row in mat]
        d = len(mat)
        if any(len(row) != d for row in mat):
            raise ShapeMismatch("module matrix must be square")
        self.field = field
        self.mat = mat

    @property
    def dim(self):
        return len(self.mat)

    @classmethod
    def from_ints(cls, field, rows):
        return cls(field, [[field.from_int(x) for x in row] for row in rows])

    def __eq__(self, other):
        return (
            isinstance(other, TorsionModule)
            and self.field == other.field
            and self.mat == other.mat
        )

    def __repr__(self):
        enc = self.field.encode
        return f"TorsionModule({self.field}, {[[enc(x) for x in r] for r in self.mat]})"

    def direct_sum(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return TorsionModule(self.field, la.block_diag(self.field, [self.mat, other.mat]))

    __add__ = direct_sum

    def conjugate(self, P, P_inv=None):
        """The module with matrix P A P^-1 (isomorphic to self)."""
        F = self.field
        if P_inv is None:
            P_inv = la.inverse(F, P)
        return TorsionModule(F, la.matmul(F, la.matmul(F, P, self.mat), P_inv))

    def shifted(self, alpha):
        """Matrix A + alpha*I."""
        F = self.field
        return TorsionModule(
            F, [[F.add(x, alpha) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(self.mat)]
        )


def char_matrix(M):
    """tI - A as a matrix of polynomials."""
    F = M.field
    out = []
    for i, row in enumerate(M.mat):
        new = []
        for j, x in enumerate(row):
            if i == j:
                new.append(Poly(F, (F.neg(x), F.one)))
            else:
                new.append(Poly(F, (F.neg(x),)))
        out.append(new)
    return out


def poly_identity(F, n):
    return [[Poly.one(F) if i == j else Poly.zero(F) for j in range(n)] for i in range(n)]


def poly_matmul(A, B, F):
    n, k = len(A), len(B)
    c = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(c):
            acc = Poly.zero(F)
            for t in range(k):
                if A[i][t] and B[t][j]:
                    acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def poly_det(A, F):
    """Determinant over F[t] by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return Poly.one(F)
    M = [list(row) for row in A]
    sign = False
    prev = Poly.one(F)
    for k in range(n - 1):
        if not M[k][k]:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return Poly.zero(F)
            M[k], M[piv] = M[piv], M[k]
            sign = not sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return -d if sign else d


def _sub_mul(a, q, b):
    # a - q*b
    if not b:
        return a
    return a - q * b


def smith_normal_form(X, F):
    """Return (U, D, V) with U X V = D for a square polynomial matrix X.

    D is diagonal with monic (or zero) entries d_1 | d_2 | ...; U and V are
    unimodular. Pivot: smallest degree in the active submatrix, ties broken by
    the smallest (row, column).
    """
    n = len(X)
    D = [list(row) for row in X]
    U = poly_identity(F, n)
    V = poly_identity(F, n)
    for k in range(n):
        while True:
            piv, best = None, None
            for i in range(k, n):
                row = D[i]
                for j in range(k, n):
                    e = row[j]
                    if e and (best is None or e.deg < best):
                        piv, best = (i, j), e.deg
            if piv is None:
                return U, D, V
            i, j = piv
            if i != k:
                D[k], D[i] = D[i], D[k]
                U[k], U[i] = U[i], U[k]
            if j != k:
                for row in D:
                    row[k], row[j] = row[j], row[k]
                for row in V:
                    row[k], row[j] = row[j], row[k]
            p = D[k][k]
            clean = True
            for i in range(k + 1, n):
                e = D[i][k]
                if not e:
                    continue
                q, r = divmod(e, p)
                if r:
                    clean = False
                Di, Dk = D[i], D[k]
                for j in range(k, n):
                    Di[j] = _sub_mul(Di[j], q, Dk[j])
                Ui, Uk = U[i], U[k]
                for j in range(n):
                    Ui[j] = _sub_mul(Ui[j], q, Uk[j])
            for j in range(k + 1, n):
                e = D[k][j]
                if not e:
                    continue
                q, r = divmod(e, p)
                if r:
                    clean = False
                for row in D[k:]:
                    row[j] = _sub_mul(row[j], q, row[k])
                for row in V:
                    row[j] = _sub_mul(row[j], q, row[k])
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if not p.divides(D[i][j])),
                None,
            )
            if bad is None:
                break
            D[k] = [a + b for a, b in zip(D[k], D[bad])]
            U[k] = [a + b for a, b in zip(U[k], U[bad])]
        c = F.inv(D[k][k].lc)
        if c != F.one:
            D[k] = [e.scale(c) for e in D[k]]
            U[k] = [e.scale(c) for e in U[k]]
    return U, D, V


def char_matrix_snf(M):
    """Smith normal form (U, D, V) of tI - A, with U (tI - A) V = D."""
    return smith_normal_form(char_matrix(M), M.field)


def invariant_factors(M):
    """Monic invariant factors d_1 | ... | d_d of M (including the trivial ones)."""
    _, D, _ = char_matrix_snf(M)
    return [D[i][i] for i in range(M.dim)]


def charpoly(M):
    return poly_det(char_matrix(M), M.field)


def snf_certificate(M, snf=None):
    """Check the SNF of tI - A; returns a dict of named boolean checks."""
    F = M.field
    X = char_matrix(M)
    U, D, V = snf if snf is not None else smith_normal_form(X, F)
    n = M.dim
    diag = [D[i][i] for i in range(n)]
    product = Poly.one(F)
    for d in diag:
        product = product * d
    cp = poly_det(X, F)
    det_u, det_v = poly_det(U, F), poly_det(V, F)
    return {
        "residual_zero": poly_matmul(poly_matmul(U, X, F), V, F) == D,
        "diagonal": all(not D[i][j] for i in range(n) for j in range(n) if i != j),
        "monic": all(d.lc == F.one for d in diag),
        "divisibility_chain": all(diag[i].divides(diag[i + 1]) for i in range(n - 1)),
        "unimodular": det_u.deg == 0 and det_v.deg == 0,
        "charpoly_product": cp.monic() == product,
    }


@dataclass(frozen=True)
class DivisorClass:
    """Multiset of elementary divisors: ``entries`` maps (m, r) to a multiplicity."""

    field: object
    entries: tuple = ()

    @classmethod
    def from_counts(cls, field, counts):
        items = [((m, r), c) for (m, r), c in counts.items() if c]
        items.sort(key=lambda kv: (kv[0][0].key(), kv[0][1]))
        return cls(field, tuple(items))

    def as_dict(self):
        return dict(self.entries)

    @property
    def dim(self):
        return sum(c * r * m.deg for (m, r), c in self.entries)

    def keys(self):
        return sorted({m for (m, _), _ in self.entries}, key=Poly.key)

    def __add__(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        acc = self.as_dict()
        for k, c in other.entries:
            acc[k] = acc.get(k, 0) + c
        return DivisorClass.from_counts(self.field, acc)

    def __len__(self):
        return len(self.entries)

    def to_json(self):
        return [{"m": m.to_json(), "r": r, "mult": c} for (m, r), c in self.entries]

    @classmethod
    def from_json(cls, field, obj):
        counts = {}
        for e in obj:
            m = Poly.from_json(field, e["m"])
            key = (m, int(e["r"]))
            counts[key] = counts.get(key, 0) + int(e["mult"])
        if any(c < 1 for c in counts.values()):
            raise ValueError("multiplicities must be >= 1")
        return cls.from_counts(field, counts)

    def __str__(self):
        parts = [f"({m})^{r}" + (f" x{c}" if c > 1 else "") for (m, r), c in self.entries]
        return "{" + ", ".join(parts) + "}"


def divisors_from_invariant_factors(F, factors, seed=0):
    counts = {}
    for d in factors:
        if d.deg < 1:
            continue
        for m, e in factor(d, seed).factors:
            counts[(m, e)] = counts.get((m, e), 0) + 1
    return DivisorClass.from_counts(F, counts)


def elementary_divisors(M, seed=0):
    return divisors_from_invariant_factors(M.field, invariant_factors(M), seed)


def is_automorphism(M):
    """True iff t acts invertibly, i.e. no elementary divisor at the ideal (t)."""
    # t divides some invariant factor iff t divides the last one iff det A = 0
    return la.det(M.field, M.mat) != M.field.zero


def companion(p):
    """Companion matrix of monic p: ones below the diagonal, -coeffs in the last column."""
    F = p.field
    n = p.deg
    C = la.zeros(F, n, n)
    for i in range(n - 1):
        C[i + 1][i] = F.one
    for i in range(n):
        C[i][n - 1] = F.neg(p.coeffs[i])
    return C


def build_module(field, cls):
    """Block-diagonal sum of companion matrices of m^r, in canonical key order."""
    blocks = []
    for (m, r), c in cls.entries:
        if c < 1:
            raise ValueError("multiplicities must be >= 1")
        block = companion(m**r)
        blocks.extend([block] * c)
    return TorsionModule(field, la.block_diag(field, blocks))


def similar(A, B):
    """Isomorphism test in Mod^tors: equal invariant factor sequences."""
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    if A.dim != B.dim:
        return False
    return invariant_factors(A) == invariant_factors(B)


def jordan_block(field, r):
    """Matrix of t on M_r = F[t]/t^r."""
    return companion(Poly.monomial(field, r))


def jordan_module(field, sizes):
    return TorsionModule(field, la.block_diag(field, [jordan_block(field, r) for r in sizes]))


@dataclass(frozen=True)
class JordanHom:
    """The F[t]-linear map M_s -> M_r, x -> p*x (deg p < r)."""

    s: int
    r: int
    p: Poly

    def __post_init__(self):
        if self.s < 0 or self.r < 0:
            raise InvalidJordanHom("block sizes must be >= 0")
        if self.p.deg >= self.r and not self.p.is_zero():
            raise InvalidJordanHom(f"deg p must be < r = {self.r}")
        if self.s < self.r and any(c != self.p.field.zero for c in self.p.coeffs[: self.r - self.s]):
            raise InvalidJordanHom(f"t^{self.r - self.s} must divide p for a map M_{self.s} -> M_{self.r}")

    @classmethod
    def make(cls, s, r, p):
        """Reduce p modulo t^r before validating."""
        return cls(s, r, Poly(p.field, p.coeffs[:r]))

    def compose(self, other):
        """self after other (other: M_a -> M_s)."""
        if other.r != self.s:
            raise ShapeMismatch("composition of incompatible Jordan maps")
        return JordanHom.make(other.s, self.r, self.p * other.p)


def jordan_hom_basis(s, r, field):
    """Basis of Hom(M_s, M_r); it has min(r, s) elements."""
    if s < 1 or r < 1:
        raise ValueError("block sizes must be >= 1")
    low = max(r - s, 0)
    return [JordanHom(s, r, Poly.monomial(field, k)) for k in range(low, r)]


def hom_to_matrix(h, field):
    """r x s matrix of x -> p*x in the bases 1, t, ..., t^(k-1)."""
    m = la.zeros(field, h.r, h.s)
    for j in range(h.s):
        for k, c in enumerate(h.p.coeffs):
            if j + k < h.r:
                m[j + k][j] = c
    return m


def hom_space(A, B):
    """Basis of {X : X A = B X}, i.e. Hom_{F[t]}(module A, module B), as matrices."""
    F = A.field
    m, n = B.dim, A.dim
    # unknown X[i][j] at index i*n + j
    rows = []
    for i in range(m):
        for j in range(n):
            eq = [F.zero] * (m * n)
            for k in range(n):
                eq[i * n + k] = F.add(eq[i * n + k], A.mat[k][j])
            for k in range(m):
                eq[k * n + j] = F.sub(eq[k * n + j], B.mat[i][k])
            rows.append(eq)
    basis = la.nullspace(F, rows, m * n)
    return [[v[i * n : (i + 1) * n] for i in range(m)] for v in basis]


def nilpotency_index(M):
    """Smallest l with A^l = 0; raises NotNilpotent."""
    F = M.field
    d = M.dim
    if d == 0:
        return 0
    P = la.identity(F, d)
    for l in range(1, d + 1):
        P = la.matmul(F, P, M.mat)
        if la.is_zero(F, P):
            return l
    raise NotNilpotent("matrix is not nilpotent")


@dataclass
class Filtration:
    """Chain 0 = T_0 < ... < T_l = F^d of t-invariant subspaces (bases as vectors)."""

    field: object
    dim: int
    steps: list

    @property
    def length(self):
        return len(self.steps) - 1

    def quotient_dims(self):
        return [len(b) - len(a) for a, b in zip(self.steps, self.steps[1:])]

    def check(self, M):
        """t T_{k+1} is contained in T_k for all k, so every quotient has zero t-action."""
        F = self.field
        for lower, upper in zip(self.steps, self.steps[1:]):
            for v in upper:
                if not la.in_span(F, lower, la.matvec(F, M.mat, v), self.dim):
                    return False
        return True


def devissage_filtration(M):
    """Kernel filtration T_k = ker A^k of a nilpotent module."""
    F = M.field
    d = M.dim
    l = nilpotency_index(M)
    steps = [[]]
    P = la.identity(F, d)
    for _ in range(l):
        P = la.matmul(F, P, M.mat)
        steps.append(la.echelon_basis(F, la.nullspace(F, P, d), d))
    if d:
        steps[-1] = la.echelon_basis(F, [row for row in la.identity(F, d)], d)
    return Filtration(F, d, steps)


def jordan_block_counts(M):
    """Number of Jordan blocks of each size of a nilpotent module, from ranks of powers."""
    F = M.field
    d = M.dim
    l = nilpotency_index(M)
    ranks = [d]
    P = la.identity(F, d)
    for _ in range(l + 1):
        P = la.matmul(F, P, M.mat) if d else P
        ranks.append(la.rank(F, P, d))
    # blocks of size >= k: rank(A^(k-1)) - rank(A^k)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, l + 2)]
    return {k: at_least[k - 1] - at_least[k] for k in range(1, l + 1) if at_least[k - 1] - at_least[k]}
