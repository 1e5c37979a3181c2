"""Primary splitting, coordinate shift and residue-field transport of modules.

``fext_forward`` sends an m-primary module over F to a nilpotent module over
L = F[t]/m: base-change to L, keep the generalized eigenspace of alpha (the
class of t) and subtract alpha. ``fext_backward`` goes the other way by
viewing an L-vector space as an F-vector space on which t acts as
``alpha + N``. ``verify_adjunction`` builds the unit and counit of the
adjunction between the two explicitly and certifies both by rank.
"""

from dataclasses import dataclass, field

from . import linalg as la
from .errors import (
    FieldMismatch,
    NotAutomorphism,
    NotLinearIdeal,
    NotPrimary,
    UnsupportedField,
)
from .fields import ExtensionField, FieldElem, embed, residue_field_data
from .poly import Poly, factor, is_separable
from .torsion import (
    TorsionModule,
    invariant_factors,
    is_automorphism,
    jordan_block_counts,
    nilpotency_index,
    similar,
)


@dataclass
class PrimaryComponent:
    """The m-primary summand of a module; ``basis`` spans it inside the ambient F^d."""

    ideal_gen: Poly
    module: TorsionModule
    basis: list = field(default=None, repr=False)

    @property
    def dim(self):
        return self.module.dim


def _raw(F, a):
    if isinstance(a, FieldElem):
        if a.field != F:
            raise FieldMismatch(f"{a.field} vs {F}")
        return a.value
    return a


def _components(M, seed, allow_t):
    F = M.field
    d = M.dim
    if d == 0:
        return []
    minpoly = invariant_factors(M)[-1]
    keys = [m for m, _ in factor(minpoly, seed).factors]
    t = Poly.t(F)
    out = []
    for m in keys:
        if m == t and not allow_t:
            raise NotAutomorphism("module has a (t)-primary summand")
        K = la.poly_at_matrix(m, M.mat)
        K = la.mat_pow(F, K, d)
        basis = la.echelon_basis(F, la.nullspace(F, K, d), d)
        out.append(PrimaryComponent(m, TorsionModule(F, la.restrict(F, M.mat, basis)), basis))
    return out


def primary_split(M, seed=0):
    """Split an automorphism into its m-primary components, m != t.

    Components are ordered by the canonical order of their keys; each one is
    the kernel of m(A)^d with basis in column-reduced echelon form.
    """
    if not is_automorphism(M):
        raise NotAutomorphism("primary_split expects an automorphism; use endo_classify")
    return _components(M, seed, allow_t=False)


def endo_classify(M, seed=0):
    """Like :func:`primary_split` but for any endomorphism; the key t is admitted."""
    return _components(M, seed, allow_t=True)


def component_change_of_basis(M, components):
    """Matrix P (columns = concatenated component bases) with P^-1 A P block diagonal."""
    vectors = [v for c in components for v in c.basis]
    return la.columns_matrix(vectors, M.dim)


def shift_to_nilpotent(C, alpha):
    """A - alpha*I for a (t - alpha)-primary component."""
    F = C.module.field
    a = _raw(F, alpha)
    m = C.ideal_gen
    if m.deg != 1 or m.coeffs[0] != F.neg(a):
        raise NotLinearIdeal(f"component at ({m}) is not (t - {F.encode(a)})-primary")
    N = C.module.shifted(F.neg(a))
    nilpotency_index(N)
    return N


def unshift(N, alpha):
    """Inverse of :func:`shift_to_nilpotent`: N + alpha*I."""
    return N.shifted(_raw(N.field, alpha))


class ResidueCoordinates:
    """Coordinates of elements of L = F[t]/m over F in the basis 1, alpha, ..., alpha^(n-1)."""

    def __init__(self, F, L, alpha, n):
        self.F, self.L, self.alpha, self.n = F, L, alpha, n
        self.powers = [L.one]
        for _ in range(n - 1):
            self.powers.append(L.mul(self.powers[-1], alpha))
        self._direct = n == 1 or (
            isinstance(L, ExtensionField) and L.base == F and alpha == L.gen
        )
        if not self._direct:
            self._setup_tower()

    def _setup_tower(self):
        # F = F_p[x]/(f) embedded in L = F_p[y]/(g): solve over F_p in the basis x^j alpha^i
        F, L = self.F, self.L
        P = L.base
        k = F.degree
        xs = [F.one]
        for _ in range(k - 1):
            xs.append(F.mul(xs[-1], F.gen))
        cols = []
        for i in range(self.n):
            for j in range(k):
                cols.append(list(L.mul(embed(F, L, xs[j]), self.powers[i])))
        self._k = k
        self._Binv = la.inverse(P, la.columns_matrix(cols, L.degree))

    def to_coords(self, x):
        n = self.n
        if n == 1:
            return [x]
        if self._direct:
            return list(x)
        P = self.L.base
        c = la.matvec(P, self._Binv, list(x))
        k = self._k
        return [tuple(c[i * k : (i + 1) * k]) for i in range(n)]

    def from_coords(self, cs):
        L = self.L
        acc = L.zero
        for c, pw in zip(cs, self.powers):
            acc = L.add(acc, L.mul(embed(self.F, L, c), pw))
        return acc


def _check_primary(C):
    M, m = C.module, C.ideal_gen
    F = M.field
    if m.field != F:
        raise FieldMismatch(f"{m.field} vs {F}")
    if M.dim and not la.is_zero(F, la.mat_pow(F, la.poly_at_matrix(m, M.mat), M.dim)):
        raise NotPrimary(f"module is not ({m})-primary")
    if not is_separable(m):
        raise UnsupportedField(f"({m}) is not generated by a separable polynomial")


def _base_change(F, L, A):
    return [[embed(F, L, x) for x in row] for row in A]


def _shifted_kernel(L, A_L, alpha):
    """(basis of the generalized alpha-eigenspace, A_L - alpha I)."""
    d = len(A_L)
    B = [[L.sub(x, alpha) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(A_L)]
    K = la.echelon_basis(L, la.nullspace(L, la.mat_pow(L, B, d), d), d)
    return K, B


@dataclass
class _Forward:
    L: object
    alpha: object
    A_L: list
    B: list
    kernel: list
    N: TorsionModule


def _forward(C, seed):
    _check_primary(C)
    F = C.module.field
    L, alpha = residue_field_data(F, C.ideal_gen)
    A_L = _base_change(F, L, C.module.mat)
    K, B = _shifted_kernel(L, A_L, alpha)
    N = TorsionModule(L, la.restrict(L, B, K))
    return _Forward(L, alpha, A_L, B, K, N)


def fext_forward(C, seed=0):
    """(L, N): the residue field of the key and the nilpotent module over it."""
    fw = _forward(C, seed)
    return fw.L, fw.N


def fext_backward(L, N, m):
    """The m-primary F-module underlying the L-module N, with t acting as alpha + N."""
    F = m.field
    L2, alpha = residue_field_data(F, m)
    if L2 != L or N.field != L:
        raise FieldMismatch(f"{N.field} is not the residue field {L2} of ({m})")
    nilpotency_index(N)
    n, k = m.deg, N.dim
    rc = ResidueCoordinates(F, L, alpha, n)
    out = la.zeros(F, k * n, k * n)
    for j in range(k):
        for i in range(n):
            col = j * n + i
            pw = rc.powers[i]
            for l in range(k):
                y = L.mul(pw, N.mat[l][j])
                if l == j:
                    y = L.add(y, L.mul(pw, alpha))
                for i2, c in enumerate(rc.to_coords(y)):
                    out[l * n + i2][col] = c
    return TorsionModule(F, out)


@dataclass
class FExtWitness:
    """Unit and counit certificates for one m-primary module and its transport."""

    field: object
    residue_field: object
    ideal_gen: Poly
    source: TorsionModule
    target: TorsionModule
    unit_matrix: list
    counit_matrix: list
    checks: dict

    @property
    def valid(self):
        return all(self.checks.values())


def verify_adjunction(C, seed=0):
    """Build eta_M: M -> R L M and eps_N: L R N -> N explicitly and certify both.

    eta sends x to the projection of 1 (x) x onto the alpha-primary part, in
    F-coordinates; eps is the multiplication map L (x)_F N -> N restricted to
    the alpha-primary part. Both are checked to be invertible and t-linear.
    """
    fw = _forward(C, seed)
    F, L, alpha, m = C.module.field, fw.L, fw.alpha, C.ideal_gen
    n, d = m.deg, C.module.dim
    N = fw.N
    k = N.dim
    rc = ResidueCoordinates(F, L, alpha, n)
    back = fext_backward(L, N, m)

    # unit: projection onto the primary part along the image of (A - alpha)^d
    image = la.echelon_basis(L, la.transpose(la.mat_pow(L, fw.B, d), d), d) if d else []
    image = [v for v in image if any(x != L.zero for x in v)]
    Q = la.columns_matrix(fw.kernel + image, d)
    eta = la.zeros(F, k * n, d)
    if d:
        Qinv = la.inverse(L, Q)
        for i in range(d):
            coords = [row[i] for row in Qinv][:k]
            for j, c in enumerate(coords):
                for i2, x in enumerate(rc.to_coords(c)):
                    eta[j * n + i2][i] = x
    A = C.module.mat
    unit_ok = k * n == d and la.rank(F, eta, d) == d
    unit_nat = la.matmul(F, eta, A, d) == la.matmul(F, back.mat, eta, d)

    # counit on the L side: L (x)_F R(N) -> N
    B_L = _base_change(F, L, back.mat)
    K2, _ = _shifted_kernel(L, B_L, alpha)
    E = la.zeros(L, k, k * n)
    for j in range(k):
        for i in range(n):
            E[j][j * n + i] = rc.powers[i]
    eps = la.matmul(L, E, la.columns_matrix(K2, k * n), len(K2)) if k else []
    counit_ok = len(K2) == k and (k == 0 or la.rank(L, eps, k) == k)
    shifted_N = [[L.add(x, alpha) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(N.mat)]
    restricted = la.restrict(L, B_L, K2)
    counit_nat = la.matmul(L, eps, restricted, k) == la.matmul(L, shifted_N, eps, k)
    N2 = TorsionModule(L, [[L.sub(x, alpha) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(restricted)])

    checks = {
        "dimension_identity": d == n * k,
        "unit_invertible": unit_ok,
        "unit_natural": unit_nat,
        "counit_invertible": counit_ok,
        "counit_natural": counit_nat,
        "unit_round_trip_similar": similar(back, C.module),
        "counit_round_trip_class": jordan_block_counts(N2) == jordan_block_counts(N),
    }
    return FExtWitness(F, L, m, C.module, N, eta, eps, checks)


def primary_module(M, m, seed=0):
    """Wrap a module known (or claimed) to be m-primary as a component."""
    C = PrimaryComponent(m, M)
    _check_primary(C)
    return C
