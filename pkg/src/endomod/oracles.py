"""Brute-force reference computations, kept independent of the main algorithms.

These are slow and only meant for the small sizes of the self-test.
"""

import itertools

from . import linalg as la
from .poly import Poly


def leibniz_charpoly(M):
    """det(tI - A) expanded over all permutations."""
    F = M.field
    n = M.dim
    t = Poly.t(F)
    entry = [[(t if i == j else Poly.zero(F)) - Poly.const(F, M.mat[i][j]) for j in range(n)] for i in range(n)]
    total = Poly.zero(F)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Poly.one(F)
        for i, j in enumerate(perm):
            term = term * entry[i][j]
            if term.is_zero():
                break
        total = total - term if inversions % 2 else total + term
    return total


def all_matrices(F, n):
    elems = list(F.elements())
    for flat in itertools.product(elems, repeat=n * n):
        yield [list(flat[i * n : (i + 1) * n]) for i in range(n)]


def general_linear(F, n):
    return [P for P in all_matrices(F, n) if la.det(F, P) != F.zero]


def conjugate_brute(F, A, B, group):
    """True iff P A = B P for some P in the enumerated group."""
    return any(la.matmul(F, P, A) == la.matmul(F, B, P) for P in group)


def mobius(n):
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def necklace_count(q, n):
    """Number of monic irreducibles of degree n over F_q."""
    return sum(mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def intertwiner_dim(F, A, B):
    """dim {X : X A = B X}, from the rank of X -> X A - B X on elementary matrices."""
    n, m = len(A), len(B)
    images = []
    for i in range(m):
        for j in range(n):
            E = la.zeros(F, m, n)
            E[i][j] = F.one
            D = la.mat_sub(F, la.matmul(F, E, A, n), la.matmul(F, B, E, n))
            images.append([x for row in D for x in row])
    return m * n - la.rank(F, images, m * n)


def intertwiner_count(F, A, B):
    """|{X : X A = B X}| by enumeration of all m x n matrices."""
    n, m = len(A), len(B)
    elems = list(F.elements())
    count = 0
    for flat in itertools.product(elems, repeat=m * n):
        X = [list(flat[i * n : (i + 1) * n]) for i in range(m)]
        if la.matmul(F, X, A, m) == la.matmul(F, B, X, n):
            count += 1
    return count


def nilpotency_by_powers(F, A):
    n = len(A)
    P = la.identity(F, n)
    for k in range(n + 1):
        if la.is_zero(F, P):
            return k
        P = la.matmul(F, P, A)
    return None
