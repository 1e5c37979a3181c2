"""Seeded random objects for property checks and the self-test."""

from . import linalg as la
from .coherent import f_r, presentation_make
from .errors import NotEpimorphism
from .poly import Poly
from .torsion import JordanHom, jordan_hom_basis, jordan_module


def random_element(F, rng):
    if F.descriptor.kind == "rationals":
        return F.from_int(rng.randint(-3, 3))
    return F.random(rng)


def random_matrix(F, d, rng):
    return [[random_element(F, rng) for _ in range(d)] for _ in range(d)]


def random_invertible(F, d, rng):
    while True:
        P = random_matrix(F, d, rng)
        if la.det(F, P) != F.zero:
            return P


def random_conjugate(M, rng):
    P = random_invertible(M.field, M.dim, rng)
    return M.conjugate(P)


def random_partition(d, rng):
    parts = []
    while d:
        k = rng.randint(1, d)
        parts.append(k)
        d -= k
    return sorted(parts, reverse=True)


def random_nilpotent(F, d, rng):
    """(conjugated Jordan matrix, the partition it was built from)."""
    parts = random_partition(d, rng)
    return random_conjugate(jordan_module(F, parts), rng), parts


def random_poly(F, deg, rng):
    cs = [F.random(rng) for _ in range(deg)] + [F.one if rng.random() < 0.5 else F.random(rng)]
    if cs[-1] == F.zero:
        cs[-1] = F.one
    return Poly(F, cs)


def random_hom(F, s, r, rng):
    acc = Poly.zero(F)
    for h in jordan_hom_basis(s, r, F):
        acc = acc + h.p.scale(F.random(rng))
    return JordanHom(s, r, acc)


def random_presentation(F, rng, max_block=4, tries=200):
    """A random epimorphism between sums of Jordan blocks of size <= max_block."""
    for _ in range(tries):
        target = [rng.randint(1, max_block) for _ in range(rng.randint(1, 3))]
        source = [rng.randint(1, max_block) for _ in range(rng.randint(len(target), len(target) + 3))]
        beta = [[random_hom(F, s, r, rng) for s in source] for r in target]
        try:
            return presentation_make(F, source, target, beta)
        except NotEpimorphism:
            continue
    raise RuntimeError("no epimorphism found")


def fprime_presentation(F, nu, rng):
    """Direct sum of beta_r blocks realizing nu, in shuffled order."""
    rs = [r for r, c in nu.items() for _ in range(c)]
    rng.shuffle(rs)
    out = None
    for r in rs:
        P = f_r(F, r)
        out = P if out is None else out.direct_sum(P)
    return out


def projection_presentation(F, r):
    """The projection M_(r+1) -> M_r as a presentation."""
    return presentation_make(F, [r + 1], [r], [[Poly.one(F)]])
