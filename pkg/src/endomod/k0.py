"""Grothendieck-group invariants of automorphisms and nilpotent endomorphisms.

An automorphism class is the formal sum of its elementary divisors (m, r),
m != t; a nilpotent class counts Jordan blocks by size. Both live in free
abelian groups, so negative coefficients appear only after subtraction and
cannot be realized as modules.
"""

from dataclasses import dataclass

from .equivalences import fext_forward
from .errors import FieldMismatch, NegativeCoefficient, NotAutomorphism
from .poly import Poly
from .torsion import DivisorClass, build_module, elementary_divisors, is_automorphism, jordan_block_counts


@dataclass(frozen=True, eq=False)
class K0Class:
    """Integer combination of (m, r) keys over a fixed field, keys canonically ordered."""

    field: object
    entries: tuple = ()

    @classmethod
    def from_counts(cls, field, counts):
        items = [(k, c) for k, c in counts.items() if c]
        items.sort(key=lambda kv: (kv[0][0].key(), kv[0][1]))
        return cls(field, tuple(items))

    def as_dict(self):
        return dict(self.entries)

    def __add__(self, other):
        return k0_add(self, other)

    def __neg__(self):
        return k0_neg(self)

    def __sub__(self, other):
        return k0_add(self, k0_neg(other))

    def __eq__(self, other):
        if not isinstance(other, K0Class):
            return NotImplemented
        return k0_eq(self, other)

    def __hash__(self):
        return hash((self.field, self.entries))

    def is_effective(self):
        return all(c > 0 for _, c in self.entries)

    def to_json(self):
        return {
            "field": self.field.descriptor.to_json(),
            "entries": [{"m": m.to_json(), "r": r, "coeff": c} for (m, r), c in self.entries],
        }

    @classmethod
    def from_json(cls, field, obj):
        counts = {}
        for e in obj["entries"] if isinstance(obj, dict) else obj:
            key = (Poly.from_json(field, e["m"]), int(e["r"]))
            counts[key] = counts.get(key, 0) + int(e["coeff"])
        return cls.from_counts(field, counts)

    def __str__(self):
        return "{" + ", ".join(f"({m})^{r}: {c}" for (m, r), c in self.entries) + "}"


@dataclass(frozen=True)
class NilK0Class:
    """Integer combination of Jordan block sizes."""

    entries: tuple = ()

    @classmethod
    def from_counts(cls, counts):
        return cls(tuple(sorted((int(r), c) for r, c in counts.items() if c)))

    def as_dict(self):
        return dict(self.entries)

    def __add__(self, other):
        acc = self.as_dict()
        for r, c in other.entries:
            acc[r] = acc.get(r, 0) + c
        return NilK0Class.from_counts(acc)

    def __neg__(self):
        return NilK0Class(tuple((r, -c) for r, c in self.entries))

    def __sub__(self, other):
        return self + (-other)

    def to_json(self):
        return [{"r": r, "coeff": c} for r, c in self.entries]


def k0_add(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    acc = a.as_dict()
    for k, c in b.entries:
        acc[k] = acc.get(k, 0) + c
    return K0Class.from_counts(a.field, acc)


def k0_neg(a):
    return K0Class(a.field, tuple((k, -c) for k, c in a.entries))


def k0_eq(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"classes over {a.field} and {b.field} are not comparable")
    return a.entries == b.entries


def aut_k0_class(M, seed=0):
    """Class of an automorphism: multiplicity of each elementary divisor (m, r)."""
    if not is_automorphism(M):
        raise NotAutomorphism("t does not act invertibly")
    divs = elementary_divisors(M, seed)
    return K0Class.from_counts(M.field, divs.as_dict())


def nil_k0_class(N):
    """Class of a nilpotent endomorphism: number of Jordan blocks of each size."""
    return NilK0Class.from_counts(jordan_block_counts(N))


def realize(cls):
    """A module whose class is ``cls``; only effective classes are realizable."""
    if any(c < 0 for _, c in cls.entries):
        raise NegativeCoefficient("virtual classes have no module realization")
    return build_module(cls.field, DivisorClass.from_counts(cls.field, cls.as_dict()))


def transport_exponents(C, seed=0):
    """(exponents of C's elementary divisors, Jordan block sizes of its transport).

    The first entry is None when C has a divisor at a key other than its own.
    """
    exps = {}
    for (m, r), c in elementary_divisors(C.module, seed).entries:
        if m != C.ideal_gen:
            return None, None
        exps[r] = exps.get(r, 0) + c
    _, N = fext_forward(C, seed)
    return NilK0Class.from_counts(exps), nil_k0_class(N)


def transport_check(C, seed=0):
    """True iff transport to the residue field keeps the multiset of exponents."""
    if C.ideal_gen == Poly.t(C.module.field):
        raise NotAutomorphism("transport_check is stated for keys m != t")
    exps, nil = transport_exponents(C, seed)
    return exps is not None and exps == nil
