"""The acceptance suite: nine self-contained checks, each against its own oracle.

Every check is deterministic given the seed and returns a :class:`Result`;
``run_all`` runs them in order.
"""

import random
import time
from dataclasses import dataclass, field

from . import linalg as la
from . import oracles
from .coherent import (
    devissage_functor,
    devissage_steps,
    dim_functor,
    evaluate,
    f_r,
    in_f_prime,
    phi,
    value_dim,
)
from .equivalences import fext_backward, fext_forward, primary_module, verify_adjunction
from .errors import FieldMismatch
from .fields import extension_field, prime_field, rationals
from .generators import (
    fprime_presentation,
    projection_presentation,
    random_conjugate,
    random_matrix,
    random_nilpotent,
    random_poly,
    random_presentation,
)
from .k0 import aut_k0_class, k0_eq, transport_check, transport_exponents
from .poly import Poly, factor, irreducibles_up_to, is_irreducible
from .torsion import (
    DivisorClass,
    TorsionModule,
    build_module,
    devissage_filtration,
    hom_space,
    hom_to_matrix,
    invariant_factors,
    jordan_block,
    jordan_hom_basis,
    similar,
    snf_certificate,
)


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    notes: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.checked} checks, {len(self.failures)} failures, {self.elapsed:.2f}s"

    def to_json(self):
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures[:10]],
            "notes": self.notes,
        }


class _Tally:
    def __init__(self):
        self.checked = 0
        self.failures = []

    def check(self, ok, what):
        self.checked += 1
        if not ok:
            self.failures.append(what)


def _finish(number, name, tally, start, budget=None, notes=None):
    elapsed = time.perf_counter() - start
    ok = not tally.failures
    notes = dict(notes or {})
    if budget is not None:
        notes["budget_seconds"] = budget
        ok = ok and elapsed < budget
    return Result(number, name, ok, tally.checked, tally.failures, elapsed, notes)


def snf_suite(seed=0, count=500):
    start = time.perf_counter()
    rng = random.Random(seed)
    tally = _Tally()
    for F in (prime_field(2), prime_field(3), prime_field(5), rationals()):
        for k in range(count):
            M = TorsionModule(F, random_matrix(F, rng.randint(0, 5), rng))
            cert = snf_certificate(M)
            for name, ok in cert.items():
                tally.check(ok, (str(F), k, name))
            # the certificate's charpoly uses Bareiss; compare with Leibniz too
            prod = Poly.one(F)
            for d in invariant_factors(M):
                prod = prod * d
            tally.check(prod == oracles.leibniz_charpoly(M), (str(F), k, "leibniz"))
    return _finish(1, "SNF certificate suite", tally, start, budget=30.0)


def _class_checks(tally, F, A, B, conjugate, tag):
    MA, MB = TorsionModule(F, A), TorsionModule(F, B)
    cA, cB = aut_k0_class(MA), aut_k0_class(MB)
    eq = k0_eq(cA, cB)
    tally.check(eq == similar(MA, MB) == conjugate, (tag, "class/similar/brute"))
    tally.check(aut_k0_class(MA.direct_sum(MB)) == cA + cB, (tag, "additive"))


def classification_suite(seed=0, pairs=500):
    start = time.perf_counter()
    rng = random.Random(seed)
    tally = _Tally()
    notes = {}
    exhaustive = [(prime_field(2), 2), (extension_field(2, [1, 1, 1]), 1)]
    for F, n in exhaustive:
        G = oracles.general_linear(F, n)
        notes[f"|GL_{n}({F})|"] = len(G)
        for A in G:
            for B in G:
                _class_checks(tally, F, A, B, oracles.conjugate_brute(F, A, B, G), (str(F), "exhaustive"))
            P = G[rng.randrange(len(G))]
            MA = TorsionModule(F, A)
            tally.check(aut_k0_class(MA.conjugate(P)) == aut_k0_class(MA), (str(F), "invariance"))
    for F, n in ((prime_field(2), 3), (prime_field(3), 2)):
        G = oracles.general_linear(F, n)
        notes[f"|GL_{n}({F})|"] = len(G)
        for k in range(pairs):
            A = G[rng.randrange(len(G))]
            if k % 2 == 0:
                P = G[rng.randrange(len(G))]
                B = TorsionModule(F, A).conjugate(P).mat
                tally.check(aut_k0_class(TorsionModule(F, B)) == aut_k0_class(TorsionModule(F, A)), (str(F), k, "invariance"))
            else:
                B = G[rng.randrange(len(G))]
            _class_checks(tally, F, A, B, oracles.conjugate_brute(F, A, B, G), (str(F), k))
    # classes over different fields are not comparable
    try:
        k0_eq(aut_k0_class(TorsionModule(prime_field(2), [[1]])), aut_k0_class(TorsionModule(prime_field(3), [[1]])))
        tally.check(False, "cross-field comparison accepted")
    except FieldMismatch:
        tally.check(True, "cross-field")
    return _finish(2, "classification completeness", tally, start, notes=notes)


EXPONENT_MULTISETS = ((1,), (2,), (3,), (1, 1), (1, 2), (1, 1, 1))


def round_trip_suite(seed=0):
    start = time.perf_counter()
    rng = random.Random(seed)
    tally = _Tally()
    cases = 0
    for F in (prime_field(2), prime_field(3)):
        for m in irreducibles_up_to(F, 3):
            for exps in EXPONENT_MULTISETS:
                counts = {}
                for r in exps:
                    counts[(m, r)] = counts.get((m, r), 0) + 1
                M = random_conjugate(build_module(F, DivisorClass.from_counts(F, counts)), rng)
                C = primary_module(M, m)
                tag = (str(F), str(m), exps)
                cases += 1
                L, N = fext_forward(C)
                back = fext_backward(L, N, m)
                tally.check(similar(back, M), tag + ("round trip",))
                tally.check(M.dim == m.deg * N.dim, tag + ("dimension",))
                expected, got = transport_exponents(C)
                tally.check(expected is not None and expected == got, tag + ("exponents",))
                if m != Poly.t(F):
                    tally.check(transport_check(C), tag + ("transport_check",))
                w = verify_adjunction(C)
                tally.check(w.valid, tag + ("adjunction",) + tuple(k for k, v in w.checks.items() if not v))
    return _finish(3, "residue-field round trip", tally, start, budget=60.0, notes={"cases": cases})


def fr_table_suite(seed=0):
    start = time.perf_counter()
    tally = _Tally()
    for F in (prime_field(2), prime_field(3), prime_field(5)):
        for r in range(1, 7):
            P = f_r(F, r)
            for s in range(1, 7):
                tally.check(value_dim(P, s) == (1 if r == s else 0), (str(F), r, s))
    return _finish(4, "F_r evaluation table", tally, start)


def fprime_suite(seed=0, members=100, non_members=20):
    start = time.perf_counter()
    rng = random.Random(seed)
    tally = _Tally()
    fields = (prime_field(2), prime_field(3), prime_field(5))
    for k in range(members):
        F = fields[k % 3]
        nu = {}
        while not nu:
            nu = {r: c for r in range(1, 5) if (c := rng.randint(0, 2))}
        D = evaluate(fprime_presentation(F, nu, rng))
        got = in_f_prime(D)
        tally.check(got is not None and got.as_dict() == nu, ("member", k, nu))
        if got is not None:
            tally.check(phi(D) == sorted(nu.items()), ("phi", k, nu))
    for k in range(non_members):
        F = fields[k % 3]
        P = projection_presentation(F, 2 + k % 3)
        if k >= 3:
            nu = {r: c for r in range(1, 5) if (c := rng.randint(0, 1))}
            if nu:
                P = P.direct_sum(fprime_presentation(F, nu, rng)) if rng.random() < 0.5 else fprime_presentation(F, nu, rng).direct_sum(P)
        tally.check(in_f_prime(evaluate(P)) is None, ("non-member", k))
    return _finish(5, "F' membership and Phi", tally, start)


def functor_devissage_suite(seed=0, count=50, seeds=5):
    start = time.perf_counter()
    rng = random.Random(seed)
    tally = _Tally()
    dims = []
    for F in (prime_field(2), prime_field(3)):
        for k in range(count):
            D = evaluate(random_presentation(F, rng))
            dims.append(dim_functor(D))
            tally.check(D.check_relations(), (str(F), k, "relations"))
            n = dim_functor(D)
            tally.check(len(devissage_steps(D, seed)) == n, (str(F), k, "steps"))
            nus = {devissage_functor(D, seed + j) for j in range(seeds)}
            tally.check(len(nus) == 1, (str(F), k, "seed independence"))
            tally.check(all(nu.total == n for nu in nus), (str(F), k, "total"))
    return _finish(6, "functor devissage", tally, start, notes={"max_dim": max(dims), "nonzero": sum(1 for d in dims if d)})


def nilpotent_filtration_suite(seed=0, count=100):
    start = time.perf_counter()
    rng = random.Random(seed)
    tally = _Tally()
    fields = (prime_field(2), prime_field(3), prime_field(5), rationals())
    for k in range(count):
        F = fields[k % 4]
        N, parts = random_nilpotent(F, rng.randint(1, 6), rng)
        filt = devissage_filtration(N)
        tally.check(filt.length == parts[0] == oracles.nilpotency_by_powers(F, N.mat), (k, "length"))
        tally.check(filt.check(N), (k, "zero quotient action"))
    return _finish(7, "nilpotent filtration", tally, start)


def hom_dimension_suite(seed=0):
    start = time.perf_counter()
    tally = _Tally()
    for F in (prime_field(2), prime_field(3)):
        for r in range(1, 6):
            for s in range(1, 6):
                Js, Jr = TorsionModule(F, jordan_block(F, s)), TorsionModule(F, jordan_block(F, r))
                basis = jordan_hom_basis(s, r, F)
                mats = [hom_to_matrix(h, F) for h in basis]
                oracle = oracles.intertwiner_dim(F, Js.mat, Jr.mat)
                tally.check(len(basis) == min(r, s) == oracle == len(hom_space(Js, Jr)), (str(F), r, s, "dim"))
                ok = all(la.matmul(F, X, Js.mat, s) == la.matmul(F, Jr.mat, X, s) for X in mats)
                flat = [[x for row in X for x in row] for X in mats]
                tally.check(ok and la.rank(F, flat, r * s) == len(mats), (str(F), r, s, "basis"))
                if F.order ** (r * s) <= 4096:
                    tally.check(oracles.intertwiner_count(F, Js.mat, Jr.mat) == F.order ** min(r, s), (str(F), r, s, "count"))
    return _finish(8, "Hom-dimension law", tally, start)


def factorization_suite(seed=0, count=500):
    start = time.perf_counter()
    rng = random.Random(seed)
    tally = _Tally()
    for F in (prime_field(2), prime_field(3), prime_field(5), extension_field(2, [1, 1, 1])):
        for k in range(count):
            f = random_poly(F, rng.randint(0, 8), rng)
            fac = factor(f, rng.randrange(2**32))
            tally.check(fac.expand(F) == f, (str(F), k, "expand"))
            ms = [m for m, _ in fac.factors]
            tally.check(len(set(ms)) == len(ms), (str(F), k, "distinct"))
            tally.check(all(m.lc == F.one and is_irreducible(m) for m in ms), (str(F), k, "irreducible"))
    notes = {}
    for q, F in ((2, prime_field(2)), (3, prime_field(3))):
        found = irreducibles_up_to(F, 4)
        counts = [sum(1 for m in found if m.deg == n) for n in range(1, 5)]
        expected = [oracles.necklace_count(q, n) for n in range(1, 5)]
        notes[f"F_{q}"] = counts
        tally.check(counts == expected, (q, counts, expected))
    tally.check(notes["F_2"] == [2, 1, 2, 3], "F_2 counts")
    return _finish(9, "factorization soundness", tally, start, notes=notes)


SUITES = (
    snf_suite,
    classification_suite,
    round_trip_suite,
    fr_table_suite,
    fprime_suite,
    functor_devissage_suite,
    nilpotent_filtration_suite,
    hom_dimension_suite,
    factorization_suite,
)


def run_all(seed=0):
    return [suite(seed) for suite in SUITES]
