"""Exact fields: prime fields F_p, finite extensions F_p[x]/(f), Q and Q[x]/(f).

Field handles are immutable and compare equal iff their descriptors are equal.
Elements are stored as plain values and manipulated through the handle:

* ``F_p``: ``int`` in ``[0, p)``
* ``Q``: ``gmpy2.mpq`` (always in lowest terms, positive denominator)
* extensions: ``tuple`` of base-field values of length ``deg f``, i.e. the
  coefficients of the reduced representative, constant term first.

:class:`FieldElem` wraps a value together with its field for callers that want
operator syntax; the polynomial and matrix kernels work on bare values.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .errors import FieldMismatch, NotPrime, ReducibleModulus, UnsupportedField

MAX_PRIME = 2**61

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3 * 10**24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def parse_rational(x):
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return mpq(int(x[0]), int(x[1]))
    if isinstance(x, bool):
        raise TypeError("booleans are not field elements")
    return mpq(x)


def encode_rational(a):
    a = mpq(a)
    if a.denominator == 1:
        return int(a.numerator)
    return f"{a.numerator}/{a.denominator}"


@dataclass(frozen=True)
class FieldDescriptor:
    """Serializable description of a field.

    ``kind`` is one of ``"prime"``, ``"extension"``, ``"rationals"`` or
    ``"numberfield"``. ``modulus`` is the little-endian coefficient tuple of
    the defining monic polynomial (ints for extensions of F_p, rationals for
    number fields).
    """

    kind: str
    p: int = 0
    modulus: tuple = ()

    @classmethod
    def prime(cls, p):
        return cls("prime", int(p))

    @classmethod
    def extension(cls, p, modulus):
        p = int(p)
        return cls("extension", p, tuple(int(c) % p for c in modulus))

    @classmethod
    def rationals(cls):
        return cls("rationals")

    @classmethod
    def numberfield(cls, modulus):
        return cls("numberfield", 0, tuple(parse_rational(c) for c in modulus))

    def to_json(self):
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        if self.kind == "extension":
            return {"kind": "extension", "p": self.p, "modulus": list(self.modulus)}
        if self.kind == "rationals":
            return {"kind": "rationals"}
        return {"kind": "numberfield", "modulus": [encode_rational(c) for c in self.modulus]}

    @classmethod
    def from_json(cls, obj):
        kind = obj.get("kind")
        if kind == "prime":
            return cls.prime(obj["p"])
        if kind == "extension":
            return cls.extension(obj["p"], obj["modulus"])
        if kind == "rationals":
            return cls.rationals()
        if kind == "numberfield":
            return cls.numberfield(obj["modulus"])
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self):
        if self.kind == "prime":
            return f"F_{self.p}"
        if self.kind == "extension":
            return f"F_{self.p}[x]/({_fmt_coeffs(self.modulus)})"
        if self.kind == "rationals":
            return "Q"
        return f"Q[x]/({_fmt_coeffs([encode_rational(c) for c in self.modulus])})"


def _fmt_coeffs(cs):
    terms = []
    for i, c in enumerate(cs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(reversed(terms)) or "0"


class Field:
    """Common interface of all field handles."""

    descriptor = None
    #: prime field handle (self for F_p and Q)
    prime_field = None
    #: True when values support ``+ - *`` natively and only need :meth:`reduce`
    native = False
    characteristic = 0
    #: degree over the prime field
    degree = 1

    @property
    def order(self):
        if self.characteristic == 0:
            return None
        return self.characteristic**self.degree

    @property
    def is_finite(self):
        return self.characteristic != 0

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return str(self.descriptor)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def pth_root(self, a):
        """Inverse of the Frobenius map (finite fields only)."""
        return self.pow(a, self.order // self.characteristic)

    def elem(self, value):
        return FieldElem(self, self.decode(value) if not self.is_value(value) else value)

    def is_value(self, value):
        raise NotImplementedError

    def elements(self):
        raise UnsupportedField(f"{self} is infinite")


class PrimeField(Field):
    native = True

    def __init__(self, descriptor):
        p = descriptor.p
        if p >= MAX_PRIME:
            raise UnsupportedField(f"p = {p} exceeds 2^61")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.descriptor = descriptor
        self.p = self.characteristic = p
        self.prime_field = self
        self.zero, self.one = 0, 1

    def reduce(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        return pow(a, n, self.p) if n >= 0 else pow(self.inv(a), -n, self.p)

    def pth_root(self, a):
        return a

    def from_int(self, n):
        return int(n) % self.p

    def key(self, a):
        return a

    def encode(self, a):
        return a

    def decode(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"expected an integer residue, got {x!r}")
        return x % self.p

    def is_value(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def random(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return iter(range(self.p))


class RationalField(Field):
    native = True

    def __init__(self, descriptor):
        self.descriptor = descriptor
        self.prime_field = self
        self.zero, self.one = mpq(0), mpq(1)

    def reduce(self, a):
        return a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def from_int(self, n):
        return mpq(n)

    def key(self, a):
        return a

    def encode(self, a):
        return encode_rational(a)

    def decode(self, x):
        return parse_rational(x)

    def is_value(self, a):
        return type(a) is type(self.zero)

    def random(self, rng, bound=3):
        return mpq(rng.randint(-bound, bound), rng.randint(1, 2))


class ExtensionField(Field):
    """``base[x]/(modulus)`` with ``base`` a prime field or Q."""

    def __init__(self, descriptor, base, modulus):
        self.descriptor = descriptor
        self.base = self.prime_field = base
        self.characteristic = base.characteristic
        self.modulus = tuple(modulus)
        n = self.degree = len(modulus) - 1
        if n < 1 or modulus[-1] != base.one:
            raise ValueError("modulus must be monic of positive degree")
        self.zero = (base.zero,) * n
        self.one = (base.one,) + (base.zero,) * (n - 1)
        if n > 1:
            self.gen = (base.zero, base.one) + (base.zero,) * (n - 2)
        else:
            self.gen = (base.neg(modulus[0]),)

    def constant(self, c):
        return (c,) + (self.base.zero,) * (self.degree - 1)

    def add(self, a, b):
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def mul(self, a, b):
        base, n, m = self.base, self.degree, self.modulus
        prod = [base.zero] * (2 * n - 1)
        if base.native:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            for i in range(2 * n - 2, n - 1, -1):
                c = prod[i]
                if c:
                    for j in range(n):
                        prod[i - n + j] -= c * m[j]
            red = base.reduce
            return tuple(red(c) for c in prod[:n])
        add, mul, sub = base.add, base.mul, base.sub
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = add(prod[i + j], mul(x, y))
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i]
            for j in range(n):
                prod[i - n + j] = sub(prod[i - n + j], mul(c, m[j]))
        return tuple(prod[:n])

    def scale(self, c, a):
        mul = self.base.mul
        return tuple(mul(c, x) for x in a)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid on (modulus, a) over the base field
        base = self.base
        r0, r1 = list(self.modulus), _trim(list(a), base)
        s0, s1 = [], [base.one]
        while len(r1) > 1:
            q, r = _list_divmod(r0, r1, base)
            r0, r1 = r1, r
            s0, s1 = s1, _list_sub(s0, _list_mul(q, s1, base), base)
        c = base.inv(r1[0])
        out = [base.mul(c, x) for x in s1] + [base.zero] * self.degree
        return tuple(out[: self.degree])

    def from_int(self, n):
        return self.constant(self.base.from_int(n))

    def key(self, a):
        if self.base.characteristic:
            p = self.characteristic
            return sum(x * p**i for i, x in enumerate(a))
        return tuple(reversed(a))

    def encode(self, a):
        return [self.base.encode(x) for x in a]

    def decode(self, x):
        if not isinstance(x, (list, tuple)):
            return self.constant(self.base.decode(x))
        vals = [self.base.decode(c) for c in x]
        if len(vals) > self.degree:
            raise ValueError(f"coefficient vector longer than {self.degree}")
        return tuple(vals) + (self.base.zero,) * (self.degree - len(vals))

    def is_value(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.degree
            and all(self.base.is_value(x) for x in a)
        )

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.degree))

    def elements(self):
        if not self.is_finite:
            raise UnsupportedField(f"{self} is infinite")
        return itertools.product(range(self.characteristic), repeat=self.degree)


def _trim(a, base):
    while a and a[-1] == base.zero:
        a.pop()
    return a


def _list_mul(a, b, base):
    if not a or not b:
        return []
    out = [base.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = base.add(out[i + j], base.mul(x, y))
    return _trim(out, base)


def _list_sub(a, b, base):
    n = max(len(a), len(b))
    a = a + [base.zero] * (n - len(a))
    b = b + [base.zero] * (n - len(b))
    return _trim([base.sub(x, y) for x, y in zip(a, b)], base)


def _list_divmod(a, b, base):
    r = list(a)
    inv_lc = base.inv(b[-1])
    q = [base.zero] * max(len(a) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        c = base.mul(r[-1], inv_lc)
        k = len(r) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            r[k + j] = base.sub(r[k + j], base.mul(c, y))
        _trim(r, base)
    return _trim(q, base), r


class FieldElem:
    """A field value bundled with its field, for operator syntax."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElem(self.field, v)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n):
        return self._wrap(self.field.pow(self.value, n))

    def inv(self):
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != self.field.zero

    def __repr__(self):
        return f"FieldElem({self.field.encode(self.value)!r}, {self.field})"


@lru_cache(maxsize=None)
def field_make(descriptor):
    """Build (and cache) the field handle for a descriptor.

    Raises NotPrime for a composite characteristic and ReducibleModulus when an
    extension modulus is not irreducible over its base.
    """
    if descriptor.kind == "prime":
        return PrimeField(descriptor)
    if descriptor.kind == "rationals":
        return RationalField(descriptor)
    if descriptor.kind == "extension":
        base = field_make(FieldDescriptor.prime(descriptor.p))
        modulus = descriptor.modulus
    elif descriptor.kind == "numberfield":
        base = field_make(FieldDescriptor.rationals())
        modulus = descriptor.modulus
    else:
        raise ValueError(f"unknown field kind {descriptor.kind!r}")
    from .poly import Poly, is_irreducible

    m = Poly(base, modulus)
    if m.deg < 1 or m.lc != base.one:
        raise ReducibleModulus(f"modulus {m} must be monic of positive degree")
    if not is_irreducible(m):
        raise ReducibleModulus(f"{m} is reducible over {base}")
    return ExtensionField(descriptor, base, m.coeffs)


def prime_field(p):
    return field_make(FieldDescriptor.prime(p))


def rationals():
    return field_make(FieldDescriptor.rationals())


def extension_field(p, modulus):
    return field_make(FieldDescriptor.extension(p, modulus))


@lru_cache(maxsize=None)
def _generator_image(base, ext):
    """Image of the generator of ``base`` under the canonical embedding into ``ext``.

    The canonical embedding sends the generator to the smallest root (in the
    field's key order) of the base modulus inside ``ext``.
    """
    from .poly import Poly, roots

    f = Poly(ext, [ext.constant(c) for c in base.modulus])
    rs = roots(f)
    if not rs:
        raise FieldMismatch(f"{base} does not embed into {ext}")
    return rs[0]


def embed(base, ext, a):
    """Embed the value ``a`` of ``base`` into the field ``ext``.

    Supported: identity, prime field (or Q) into one of its extensions, and a
    finite extension into a larger finite extension of the same characteristic.
    """
    if base == ext:
        return a
    if isinstance(ext, ExtensionField) and base == ext.base:
        return ext.constant(a)
    if (
        isinstance(base, ExtensionField)
        and isinstance(ext, ExtensionField)
        and base.is_finite
        and base.characteristic == ext.characteristic
        and ext.degree % base.degree == 0
    ):
        g = _generator_image(base, ext)
        acc, power = ext.zero, ext.one
        for c in a:
            acc = ext.add(acc, ext.scale(c, power))
            power = ext.mul(power, g)
        return acc
    raise FieldMismatch(f"{base} is not a subfield of {ext}")


def residue_field_data(base, m):
    """Return ``(L, alpha)`` with ``L = base[t]/(m)`` and ``alpha`` the class of t.

    ``L`` is always presented over the prime field, so for an extension base
    the tower is flattened: ``L = F_p[x]/(g)`` for the first irreducible g of
    the right degree, ``base`` embeds via :func:`embed`, and ``alpha`` is the
    smallest root of the image of ``m``.
    """
    from .poly import first_irreducible, is_irreducible, roots

    if m.field != base:
        raise FieldMismatch(f"modulus lives over {m.field}, not {base}")
    if m.deg < 1 or m.lc != base.one:
        raise ReducibleModulus(f"{m} is not monic of positive degree")
    if m.deg == 1:
        return base, base.neg(m.coeffs[0])
    if not is_irreducible(m):
        raise ReducibleModulus(f"{m} is reducible over {base}")
    if isinstance(base, PrimeField):
        L = field_make(FieldDescriptor.extension(base.p, m.coeffs))
        return L, L.gen
    if isinstance(base, RationalField):
        L = field_make(FieldDescriptor("numberfield", 0, tuple(m.coeffs)))
        return L, L.gen
    if isinstance(base, ExtensionField) and base.is_finite:
        p = base.characteristic
        g = first_irreducible(prime_field(p), base.degree * m.deg)
        L = field_make(FieldDescriptor.extension(p, g.coeffs))
        image = m.map_coeffs(L, lambda c: embed(base, L, c))
        return L, roots(image)[0]
    raise UnsupportedField(f"residue fields over {base} of degree > 1 are not supported")


def residue_field(base, m):
    """The residue field ``base[t]/(m)``; ``base`` itself when ``deg m = 1``."""
    return residue_field_data(base, m)[0]
