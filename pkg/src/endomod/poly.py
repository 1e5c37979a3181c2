"""Univariate polynomials over an exact field, and their factorization.

Over finite fields factorization is complete: squarefree decomposition,
distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting
driven by a seeded ``random.Random``. Over Q it handles content, rational
roots and a Kronecker search for the remaining part up to degree
``QQ_DEGREE_CAP``.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd

from gmpy2 import mpq

from .errors import (
    DegreeCapExceeded,
    DivisionByZeroPoly,
    FieldMismatch,
    InfiniteField,
    UnsupportedField,
    ZeroPolynomial,
)

QQ_DEGREE_CAP = 6


class Poly:
    """Polynomial in t with coefficients (constant term first) in ``field``.

    Immutable; the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        coeffs = list(coeffs)
        zero = field.zero
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def _raw(cls, field, coeffs):
        # caller guarantees no trailing zeros
        p = object.__new__(cls)
        p.field = field
        p.coeffs = coeffs
        return p

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (field.one,))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def t(cls, field):
        return cls._raw(field, (field.zero, field.one))

    @classmethod
    def monomial(cls, field, k, c=None):
        c = field.one if c is None else c
        return cls(field, (field.zero,) * k + (c,))

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def from_json(cls, field, obj):
        return cls(field, [field.decode(c) for c in obj])

    def to_json(self):
        return [self.field.encode(c) for c in self.coeffs]

    @property
    def deg(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def key(self):
        """Canonical sort key: degree, then coefficients from the constant term up."""
        k = self.field.key
        return (self.deg, tuple(k(c) for c in self.coeffs))

    def __lt__(self, other):
        return self.key() < other.key()

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.field.add
        out = [add(x, y) for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return Poly(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.field.neg
        return Poly._raw(self.field, tuple(neg(c) for c in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        F = self.field
        out = [F.zero] * (len(a) + len(b) - 1)
        if F.native:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            red = F.reduce
            return Poly(F, [red(c) for c in out])
        add, mul, zero = F.add, F.mul, F.zero
        for i, x in enumerate(a):
            if x != zero:
                for j, y in enumerate(b):
                    out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    def scale(self, c):
        F = self.field
        if c == F.zero:
            return Poly.zero(F)
        mul = F.mul
        return Poly._raw(F, tuple(mul(c, x) for x in self.coeffs))

    def shift(self, k):
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return Poly._raw(self.field, (self.field.zero,) * k + self.coeffs)

    def __pow__(self, n):
        result, base = Poly.one(self.field), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        self._check(other)
        b = other.coeffs
        if not b:
            raise DivisionByZeroPoly("division by the zero polynomial")
        F = self.field
        r = list(self.coeffs)
        lb = len(b)
        if len(r) < lb:
            return Poly.zero(F), self
        inv = F.inv(b[-1])
        q = [F.zero] * (len(r) - lb + 1)
        if F.native:
            red = F.reduce
            for k in range(len(r) - lb, -1, -1):
                c = red(r[k + lb - 1] * inv)
                q[k] = c
                if c:
                    for j in range(lb - 1):
                        r[k + j] = red(r[k + j] - c * b[j])
                r[k + lb - 1] = F.zero
        else:
            mul, sub, zero = F.mul, F.sub, F.zero
            for k in range(len(r) - lb, -1, -1):
                c = mul(r[k + lb - 1], inv)
                q[k] = c
                if c != zero:
                    for j in range(lb - 1):
                        r[k + j] = sub(r[k + j], mul(c, b[j]))
                r[k + lb - 1] = zero
        return Poly(F, q), Poly(F, r[: lb - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        """True iff self | other."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == self.field.one:
            return self
        return self.scale(self.field.inv(lc))

    def derivative(self):
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs) if i])

    def __call__(self, x):
        """Evaluate at a field value by Horner's rule."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def map_coeffs(self, field, fn):
        return Poly(field, [fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"Poly({self}, {self.field})"

    def __str__(self):
        enc = self.field.encode
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == self.field.zero:
                continue
            cs = _fmt_elem(enc(c))
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(cs)
            elif c == self.field.one:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms) or "0"


def _fmt_elem(e):
    if isinstance(e, list):
        return "(" + ",".join(str(x) for x in e) + ")"
    return str(e)


def gcd(a, b):
    """Monic gcd (zero only when both inputs are zero)."""
    a._check(b)
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a, b):
    """Return ``(g, s, u)`` with ``g = s*a + u*b`` monic."""
    a._check(b)
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    u0, u1 = Poly.zero(F), Poly.one(F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if not r0:
        return r0, s0, u0
    c = F.inv(r0.lc)
    return r0.scale(c), s0.scale(c), u0.scale(c)


def powmod(a, n, m):
    result = Poly.one(a.field) % m
    base = a % m
    while n:
        if n & 1:
            result = result * base % m
        base = base * base % m
        n >>= 1
    return result


def is_separable(f):
    """True iff gcd(f, f') is constant."""
    if f.is_zero():
        raise ZeroPolynomial("separability of the zero polynomial")
    return gcd(f, f.derivative()).deg == 0


def _pth_root_poly(f):
    F = f.field
    p = F.characteristic
    return Poly(F, [F.pth_root(f.coeffs[i]) for i in range(0, len(f.coeffs), p)])


def squarefree_decomposition(f):
    """Monic f -> list of (squarefree monic g_i, i), pairwise coprime, f = prod g_i^i."""
    f = f.monic()
    out = []
    if f.deg < 1:
        return out
    fp = f.derivative()
    if fp.is_zero():
        g = _pth_root_poly(f)
        p = f.field.characteristic
        return [(h, e * p) for h, e in squarefree_decomposition(g)]
    c = gcd(f, fp)
    w = f // c
    i = 1
    while not w.is_one():
        y = gcd(w, c)
        z = w // y
        if not z.is_one():
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if not c.is_one():
        p = f.field.characteristic
        out.extend((h, e * p) for h, e in squarefree_decomposition(_pth_root_poly(c)))
    return out


def distinct_degree_factorization(f):
    """Squarefree monic f over F_q -> list of (g_d, d), g_d the product of degree-d factors."""
    F = f.field
    q = F.order
    out = []
    x = Poly.t(F)
    h = x % f
    rest = f
    i = 1
    while rest.deg >= 2 * i:
        h = powmod(h, q, rest)
        g = gcd(rest, h - x)
        if not g.is_one():
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.deg > 0:
        out.append((rest, rest.deg))
    return out


def _random_poly(F, n, rng):
    return Poly(F, [F.random(rng) for _ in range(n)])


def equal_degree_factorization(f, d, rng):
    """Split squarefree monic f whose irreducible factors all have degree d."""
    n = f.deg
    if n <= d:
        return [f]
    F = f.field
    q = F.order
    while True:
        a = _random_poly(F, n, rng)
        if a.deg < 1:
            continue
        if q % 2:
            b = powmod(a, (q**d - 1) // 2, f) - Poly.one(F)
        else:
            # trace map F_{q^d} -> F_2
            k = (q.bit_length() - 1) * d
            b = a % f
            acc = b
            for _ in range(k - 1):
                b = b * b % f
                acc = acc + b
            b = acc
        g = gcd(f, b)
        if 0 < g.deg < n:
            return equal_degree_factorization(g, d, rng) + equal_degree_factorization(
                f // g, d, rng
            )


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(m**e for m, e in factors)``; factors monic, irreducible, sorted."""

    unit: object
    factors: tuple

    def expand(self, field):
        acc = Poly.const(field, self.unit)
        for m, e in self.factors:
            acc = acc * m**e
        return acc


def _collect(F, unit, pairs):
    acc = {}
    for m, e in pairs:
        acc[m] = acc.get(m, 0) + e
    return Factorization(unit, tuple(sorted(acc.items(), key=lambda me: me[0].key())))


def factor(f, seed=0):
    """Complete factorization into monic irreducibles.

    Deterministic for a fixed seed. Raises ZeroPolynomial, DegreeCapExceeded
    (Q only) and UnsupportedField (number fields).
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    F = f.field
    unit = f.lc
    if f.deg == 0:
        return Factorization(unit, ())
    if F.is_finite:
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        pairs = []
        for g, e in squarefree_decomposition(f):
            for h, d in distinct_degree_factorization(g):
                for m in equal_degree_factorization(h, d, rng):
                    pairs.append((m.monic(), e))
        return _collect(F, unit, pairs)
    if F.descriptor.kind == "rationals":
        pairs = []
        for g, e in squarefree_decomposition(f):
            for m in _factor_squarefree_qq(g):
                pairs.append((m, e))
        return _collect(F, unit, pairs)
    raise UnsupportedField(f"factorization over {F} is not supported")


def is_irreducible(f):
    if f.deg < 1:
        return False
    F = f.field
    if F.is_finite:
        # Ben-Or: no factor of degree i <= n/2
        q = F.order
        f = f.monic()
        x = Poly.t(F)
        h = x % f
        for _ in range(f.deg // 2):
            h = powmod(h, q, f)
            if not gcd(f, h - x).is_one():
                return False
        return True
    fac = factor(f)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def roots(f, seed=0):
    """Distinct roots in the coefficient field, sorted by the field's key."""
    if f.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    F = f.field
    if F.is_finite:
        g = gcd(f, powmod(Poly.t(F), F.order, f.monic()) - Poly.t(F)) if f.deg > 0 else f
        if g.deg < 1:
            return []
        ms = equal_degree_factorization(g.monic(), 1, random.Random(seed))
        rs = [F.neg(m.monic().coeffs[0]) for m in ms]
    elif F.descriptor.kind == "rationals":
        rs = [r for r in _rational_roots(_primitive_int(f))]
    else:
        raise UnsupportedField(f"root finding over {F} is not supported")
    return sorted(set(rs), key=F.key)


def _monic_candidates(F, d):
    elems = sorted(F.elements(), key=F.key)
    for cs in itertools.product(elems, repeat=d):
        yield Poly._raw(F, tuple(cs) + (F.one,))


def irreducibles_up_to(F, d):
    """All monic irreducibles of degree 1..d over a finite field, canonically ordered."""
    if not F.is_finite:
        raise InfiniteField(f"{F} is infinite")
    if d < 1:
        raise ValueError("d must be >= 1")
    out = []
    for k in range(1, d + 1):
        out.extend(m for m in _monic_candidates(F, k) if is_irreducible(m))
    return sorted(out, key=Poly.key)


def first_irreducible(F, d):
    """The canonically smallest monic irreducible of degree d over a finite field."""
    if not F.is_finite:
        raise InfiniteField(f"{F} is infinite")
    for m in _monic_candidates(F, d):
        if is_irreducible(m):
            return m
    raise AssertionError("unreachable: irreducibles exist in every degree")


# --- Q ------------------------------------------------------------------------


def _primitive_int(f):
    """Primitive integer coefficient list proportional to f (positive leading coefficient)."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // igcd(den, int(c.denominator))
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = igcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(n):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _int_eval(ints, x):
    acc = 0
    for c in reversed(ints):
        acc = acc * x + c
    return acc


def _rational_roots(ints):
    if ints[0] == 0:
        rest = ints
        while rest and rest[0] == 0:
            rest = rest[1:]
        return [mpq(0)] + (_rational_roots(rest) if len(rest) > 1 else [])
    out = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * a, b)
                # evaluate numerator-cleared polynomial at a/b exactly
                n = len(ints) - 1
                val = sum(c * r.numerator**i * r.denominator ** (n - i) for i, c in enumerate(ints))
                if val == 0:
                    out.add(mpq(r.numerator, r.denominator))
    return sorted(out)


def _factor_squarefree_qq(g):
    """Monic irreducible factors of a squarefree monic g over Q."""
    F = g.field
    out = []
    for r in _rational_roots(_primitive_int(g)):
        lin = Poly(F, [-r, F.one])
        out.append(lin)
        g = g // lin
    if g.deg <= 0:
        return out
    if g.deg > QQ_DEGREE_CAP:
        raise DegreeCapExceeded(
            f"factorization over Q is limited to degree {QQ_DEGREE_CAP} after removing "
            f"rational roots (got {g.deg})"
        )
    return out + _kronecker(g)


def _kronecker(g):
    """Split a monic g over Q without rational roots, deg g <= cap."""
    F = g.field
    n = g.deg
    if n <= 3:
        return [g]
    ints = _primitive_int(g)
    for k in range(2, n // 2 + 1):
        h = _kronecker_find(ints, k)
        if h is not None:
            hp = Poly(F, [mpq(c) for c in h]).monic()
            return _kronecker(hp) + _kronecker(g // hp)
    return [g]


def _kronecker_find(ints, k):
    """A degree-k integer factor of the primitive polynomial ``ints`` or None."""
    pts = sorted(range(-12, 13), key=lambda x: (len(_divisors(_int_eval(ints, x))), abs(x)))
    pts = pts[: k + 1]
    vals = [_int_eval(ints, x) for x in pts]
    choices = [_divisors(v) for v in vals]
    for combo in itertools.product(*choices):
        for signs in itertools.product((1, -1), repeat=k):
            ys = [combo[0]] + [s * c for s, c in zip(signs, combo[1:])]
            cand = _interpolate(pts, ys)
            if cand is None or len(cand) != k + 1:
                continue
            if _int_divides(cand, ints):
                return cand
    return None


def _interpolate(xs, ys):
    """Integer coefficients of the interpolating polynomial, or None if not integral."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    if any(c.denominator != 1 for c in coeffs):
        return None
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _int_divides(d, f):
    """Exact divisibility of integer polynomials (over Q)."""
    r = [Fraction(c) for c in f]
    while len(r) >= len(d):
        c = r[-1] / d[-1]
        k = len(r) - len(d)
        for j, y in enumerate(d):
            r[k + j] -= c * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return not r
