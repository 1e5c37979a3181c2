"""Coherent functors on nilpotent endomorphisms, given by presentations.

A presentation is an epimorphism beta: B -> B' between sums of Jordan blocks;
it presents the functor F = coker([-, B] -> [-, B']). Every morphism between
Jordan blocks is generated by the projections M_(s+1) -> M_s, the inclusions
t: M_s -> M_(s+1) and multiplication by t, so F is determined by the finite
:class:`FunctorData`: the spaces V_s = F(M_s) for 1 <= s <= s_max together
with

* ``t_s``: V_s -> V_s, induced by multiplication by t,
* ``u_s``: V_s -> V_(s+1), induced by the projection M_(s+1) -> M_s,
* ``d_s``: V_(s+1) -> V_s, induced by the inclusion t: M_s -> M_(s+1).

Hom(M_s, N) is identified with ker(t^s on N) by evaluating at 1, which turns
precomposition with the three generators into inclusion, multiplication by
t and multiplication by t respectively.
"""

import random
from dataclasses import dataclass

from . import linalg as la
from .errors import NotEpimorphism, NotInFPrime, ShapeMismatch
from .poly import Poly
from .torsion import JordanHom, hom_to_matrix, jordan_block, jordan_hom_basis


@dataclass(frozen=True)
class NuVector:
    """Finitely supported r -> nu_r >= 0, stored sorted by r."""

    entries: tuple = ()

    @classmethod
    def from_counts(cls, counts):
        return cls(tuple(sorted((int(r), int(c)) for r, c in counts.items() if c)))

    def as_dict(self):
        return dict(self.entries)

    @property
    def total(self):
        return sum(c for _, c in self.entries)

    def to_json(self):
        return {str(r): c for r, c in self.entries}


class CoherentFunctor:
    """Presentation beta: B -> B'; ``beta[j][i]`` maps source block i to target block j."""

    def __init__(self, field, source_blocks, target_blocks, beta):
        self.field = field
        self.source_blocks = [int(b) for b in source_blocks]
        self.target_blocks = [int(b) for b in target_blocks]
        if any(b < 0 for b in self.source_blocks + self.target_blocks):
            raise ShapeMismatch("block sizes must be >= 0")
        if len(beta) != len(self.target_blocks) or any(
            len(row) != len(self.source_blocks) for row in beta
        ):
            raise ShapeMismatch(
                f"beta must be {len(self.target_blocks)} x {len(self.source_blocks)} blocks"
            )
        for j, row in enumerate(beta):
            for i, h in enumerate(row):
                if (h.s, h.r) != (self.source_blocks[i], self.target_blocks[j]):
                    raise ShapeMismatch(
                        f"entry ({j},{i}) maps M_{h.s} -> M_{h.r}, expected "
                        f"M_{self.source_blocks[i]} -> M_{self.target_blocks[j]}"
                    )
        self.beta = [list(row) for row in beta]

    @property
    def source_dim(self):
        return sum(self.source_blocks)

    @property
    def target_dim(self):
        return sum(self.target_blocks)

    def beta_matrix(self):
        """beta as an F-linear map F^(sum source) -> F^(sum target)."""
        F = self.field
        out = la.zeros(F, self.target_dim, self.source_dim)
        r0 = 0
        for j, rb in enumerate(self.target_blocks):
            c0 = 0
            for i, sb in enumerate(self.source_blocks):
                block = hom_to_matrix(self.beta[j][i], F)
                for a in range(rb):
                    for b in range(sb):
                        out[r0 + a][c0 + b] = block[a][b]
                c0 += sb
            r0 += rb
        return out

    def direct_sum(self, other):
        F = self.field
        zero = Poly.zero(F)
        rows = []
        for j, r in enumerate(self.target_blocks):
            rows.append(self.beta[j] + [JordanHom(s, r, zero) for s in other.source_blocks])
        for j, r in enumerate(other.target_blocks):
            rows.append([JordanHom(s, r, zero) for s in self.source_blocks] + other.beta[j])
        return CoherentFunctor(
            F,
            self.source_blocks + other.source_blocks,
            self.target_blocks + other.target_blocks,
            rows,
        )

    def to_json(self):
        return {
            "field": self.field.descriptor.to_json(),
            "source": self.source_blocks,
            "target": self.target_blocks,
            "beta": [[{"p": h.p.to_json()} for h in row] for row in self.beta],
        }


def presentation_make(field, source_blocks, target_blocks, beta):
    """Validate a presentation; beta entries may be JordanHoms or polynomials.

    Polynomial entries are reduced modulo t^r. Raises ShapeMismatch for
    inconsistent sizes and NotEpimorphism when beta is not surjective.
    """
    rows = []
    for j, row in enumerate(beta):
        new = []
        for i, h in enumerate(row):
            if not isinstance(h, JordanHom):
                s = source_blocks[i] if i < len(source_blocks) else 0
                r = target_blocks[j] if j < len(target_blocks) else 0
                h = JordanHom.make(s, r, h)
            new.append(h)
        rows.append(new)
    Fn = CoherentFunctor(field, source_blocks, target_blocks, rows)
    if la.rank(field, Fn.beta_matrix(), Fn.source_dim) != Fn.target_dim:
        raise NotEpimorphism("beta is not surjective")
    return Fn


def f_r(field, r):
    """The presentation beta_r: M_(r-1) + M_(r+1) -> M_r, (x, y) -> t x + y."""
    if r < 1:
        raise ValueError("r must be >= 1")
    t = Poly.t(field)
    one = Poly.one(field)
    return presentation_make(field, [r - 1, r + 1], [r], [[t, one]])


def _nilpotent(field, blocks):
    return la.block_diag(field, [jordan_block(field, b) for b in blocks if b])


def _hom_values(field, blocks, s):
    """Values at 1 of the basis of Hom(M_s, sum of blocks): a basis of ker t^s."""
    dim = sum(blocks)
    out = []
    off = 0
    for b in blocks:
        if b:
            for h in jordan_hom_basis(s, b, field):
                col = [row[0] for row in hom_to_matrix(h, field)]
                v = [field.zero] * dim
                v[off : off + b] = col
                out.append(v)
        off += b
    return out


class _Quotient:
    """V_s = W_s / I_s with chosen representatives and a coordinate map."""

    def __init__(self, F, W, I, dim):
        self.F, self.dim = F, dim
        I = la.echelon_basis(F, I, dim)
        reps = []
        span = list(I)
        for w in W:
            if not la.in_span(F, span, w, dim):
                reps.append(w)
                span.append(w)
        self.I, self.reps = I, reps
        self._coords = la.coordinates(F, I + reps, dim)

    def coords(self, x):
        return self._coords(x)[len(self.I):]


class FunctorData:
    """Finite evaluation of a coherent functor (see module docstring).

    ``dims[s]``, ``t[s]``, ``u[s]``, ``d[s]`` for 1 <= s <= s_max; everything
    outside that window is zero. Matrices act on column coordinate vectors.
    """

    def __init__(self, field, dims, t, u, d):
        self.field = field
        self.dims = dict(dims)
        self.t = dict(t)
        self.u = dict(u)
        self.d = dict(d)
        self.s_max = max(self.dims, default=0)

    def dim(self, s):
        return self.dims.get(s, 0)

    def t_map(self, s):
        return self.t.get(s) or la.zeros(self.field, self.dim(s), self.dim(s))

    def u_map(self, s):
        """u_s: V_s -> V_(s+1)."""
        m = self.u.get(s)
        return m if m is not None else la.zeros(self.field, self.dim(s + 1), self.dim(s))

    def d_map(self, s):
        """d_s: V_(s+1) -> V_s."""
        m = self.d.get(s)
        return m if m is not None else la.zeros(self.field, self.dim(s), self.dim(s + 1))

    def is_zero(self):
        return all(v == 0 for v in self.dims.values())

    def total_dim(self):
        return sum(self.dims.values())

    def check_relations(self):
        """d_s u_s = t_s, u_s d_s = t_(s+1) and t_s^s = 0 for every s."""
        F = self.field
        for s in range(1, self.s_max + 1):
            a, b = self.dim(s), self.dim(s + 1)
            if _mm(F, self.d_map(s), self.u_map(s), a, b, a) != self.t_map(s):
                return False
            if _mm(F, self.u_map(s), self.d_map(s), b, a, b) != self.t_map(s + 1):
                return False
            P = la.identity(F, a)
            for _ in range(s):
                P = _mm(F, P, self.t_map(s), a, a, a)
            if not la.is_zero(F, P):
                return False
        return True

    def to_json(self):
        enc = self.field.encode

        def m(A):
            return [[enc(x) for x in row] for row in A]

        return {
            "s_max": self.s_max,
            "dims": {str(s): self.dim(s) for s in range(1, self.s_max + 1)},
            "t": {str(s): m(self.t_map(s)) for s in range(1, self.s_max + 1)},
            "u": {str(s): m(self.u_map(s)) for s in range(1, self.s_max + 1)},
            "d": {str(s): m(self.d_map(s)) for s in range(1, self.s_max + 1)},
        }


def _mm(F, A, B, r, k, c):
    """(r x k) times (k x c), tolerant of zero dimensions."""
    if r == 0:
        return []
    if k == 0:
        return la.zeros(F, r, c)
    return la.matmul(F, A, B, c)


def _value_space(Fn, s):
    F = Fn.field
    dim = Fn.target_dim
    W = _hom_values(F, Fn.target_blocks, s)
    beta = Fn.beta_matrix()
    I = [la.matvec(F, beta, v) for v in _hom_values(F, Fn.source_blocks, s)]
    return _Quotient(F, W, I, dim)


def value_dim(Fn, s):
    """dim F(M_s) for any s >= 1, computed directly from the presentation."""
    return len(_value_space(Fn, s).reps)


def evaluate(Fn):
    """FunctorData of a presentation on the window 1 <= s <= max(source blocks)."""
    F = Fn.field
    s_max = max(Fn.source_blocks, default=0)
    T = _nilpotent(F, Fn.target_blocks)
    spaces = {s: _value_space(Fn, s) for s in range(1, s_max + 2)}
    dims = {s: len(spaces[s].reps) for s in range(1, s_max + 1)}
    if spaces[s_max + 1].reps:
        raise AssertionError("value beyond the source bound must vanish")
    tmaps, umaps, dmaps = {}, {}, {}
    for s in range(1, s_max + 1):
        Q, Q1 = spaces[s], spaces[s + 1]
        tcols = [Q.coords(la.matvec(F, T, v)) for v in Q.reps]
        ucols = [Q1.coords(v) for v in Q.reps]
        dcols = [Q.coords(la.matvec(F, T, v)) for v in Q1.reps]
        tmaps[s] = la.columns_matrix(tcols, dims[s])
        umaps[s] = la.columns_matrix(ucols, len(Q1.reps))
        dmaps[s] = la.columns_matrix(dcols, dims[s])
    return FunctorData(F, dims, tmaps, umaps, dmaps)


def dim_functor(D):
    return D.total_dim()


def in_f_prime(D):
    """nu with nu_r = dim V_r when every u_s and d_s vanishes, else None."""
    F = D.field
    for s in range(1, D.s_max + 1):
        if not la.is_zero(F, D.u_map(s)) or not la.is_zero(F, D.d_map(s)):
            return None
    return NuVector.from_counts(D.dims)


def phi(D):
    """Image under F -> (F(M_r))_r: the list of (r, dim V_r) with dim V_r > 0."""
    if in_f_prime(D) is None:
        raise NotInFPrime("functor has a non-vanishing structure map")
    return [(s, D.dim(s)) for s in range(1, D.s_max + 1) if D.dim(s)]


def find_mono(D, seed=None):
    """(r, v) spanning a copy of F_r inside D, or None when D is zero.

    r is minimal with u_r not injective and v is a nonzero kernel vector with
    t_r v = 0 (hence d_(r-1) v = 0). Without a seed the first kernel basis
    vector in echelon order is used; with a seed a random nonzero kernel
    vector is drawn instead.
    """
    F = D.field
    rng = seed if isinstance(seed, random.Random) else (None if seed is None else random.Random(seed))
    for r in range(1, D.s_max + 1):
        n = D.dim(r)
        if n == 0:
            continue
        ker = la.nullspace(F, D.u_map(r), n)
        if not ker:
            continue
        if rng is None:
            v = ker[0]
        else:
            v = [F.zero] * n
            while all(x == F.zero for x in v):
                coeffs = [F.random(rng) for _ in ker]
                v = [F.zero] * n
                for c, k in zip(coeffs, ker):
                    v = [F.add(a, F.mul(c, b)) for a, b in zip(v, k)]
        tv = la.matvec(F, D.t_map(r), v)
        while any(x != F.zero for x in tv):
            v, tv = tv, la.matvec(F, D.t_map(r), tv)
        return r, v
    return None


def quotient_line(D, r, v):
    """D divided by the subfunctor that is span(v) in degree r and zero elsewhere."""
    F = D.field
    n = D.dim(r)
    piv = next(i for i, x in enumerate(v) if x != F.zero)
    inv = F.inv(v[piv])
    keep = [i for i in range(n) if i != piv]
    # projection V_r -> V_r / <v> in the basis of the kept coordinates
    P = [[F.zero] * n for _ in keep]
    for a, i in enumerate(keep):
        P[a][i] = F.one
        P[a][piv] = F.neg(F.mul(v[i], inv))
    S = [[F.one if i == keep[b] else F.zero for b in range(n - 1)] for i in range(n)]

    dims = dict(D.dims)
    dims[r] = n - 1
    tmaps, umaps, dmaps = dict(D.t), dict(D.u), dict(D.d)
    a1, b1 = D.dim(r - 1), D.dim(r + 1)
    tmaps[r] = _mm(F, P, _mm(F, D.t_map(r), S, n, n, n - 1), n - 1, n, n - 1)
    umaps[r] = _mm(F, D.u_map(r), S, b1, n, n - 1)
    dmaps[r] = _mm(F, P, D.d_map(r), n - 1, n, b1)
    if r > 1:
        umaps[r - 1] = _mm(F, P, D.u_map(r - 1), n - 1, n, a1)
        dmaps[r - 1] = _mm(F, D.d_map(r - 1), S, a1, n, n - 1)
    return FunctorData(F, dims, tmaps, umaps, dmaps)


def devissage_steps(D, seed=None):
    """Repeatedly split off F_r; returns the list of (r, v) in order."""
    steps = []
    rng = None if seed is None else random.Random(seed)
    while True:
        found = find_mono(D, rng)
        if found is None:
            return steps
        r, v = found
        steps.append((r, v))
        D = quotient_line(D, r, v)


def devissage_functor(D, seed=None):
    """Composition multiplicities: nu_r = number of F_r in a filtration of D."""
    counts = {}
    for r, _ in devissage_steps(D, seed):
        counts[r] = counts.get(r, 0) + 1
    return NuVector.from_counts(counts)


def natural_transformations(D1, D2):
    """Basis of Hom(D1, D2): families eta_s commuting with every t, u and d."""
    F = D1.field
    s_max = max(D1.s_max, D2.s_max)
    index = {}
    n = 0
    for s in range(1, s_max + 1):
        for i in range(D2.dim(s)):
            for j in range(D1.dim(s)):
                index[(s, i, j)] = n
                n += 1
    rows = []

    def add_eqs(s_out, s_in, left, right):
        # eta_(s_out) @ left == right @ eta_(s_in), both dim W_(s_out) x dim V_(s_in)
        a, b = D2.dim(s_out), D1.dim(s_in)
        for i in range(a):
            for j in range(b):
                eq = [F.zero] * n
                for k in range(D1.dim(s_out)):
                    c = left[k][j]
                    if c != F.zero:
                        eq[index[(s_out, i, k)]] = F.add(eq[index[(s_out, i, k)]], c)
                for k in range(D2.dim(s_in)):
                    c = right[i][k]
                    if c != F.zero:
                        eq[index[(s_in, k, j)]] = F.sub(eq[index[(s_in, k, j)]], c)
                rows.append(eq)

    for s in range(1, s_max + 1):
        add_eqs(s, s, D1.t_map(s), D2.t_map(s))
        if s < s_max:
            add_eqs(s + 1, s, D1.u_map(s), D2.u_map(s))
            add_eqs(s, s + 1, D1.d_map(s), D2.d_map(s))
    return la.nullspace(F, rows, n) if n else []
