import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endomod import linalg as la
from endomod.errors import DegreeCapExceeded, FieldMismatch, InvalidJordanHom, NotNilpotent, ShapeMismatch
from endomod.fields import prime_field, rationals
from endomod.generators import random_conjugate, random_matrix, random_nilpotent
from endomod.oracles import intertwiner_count, intertwiner_dim, leibniz_charpoly
from endomod.poly import Poly
from endomod.torsion import (
    DivisorClass,
    JordanHom,
    TorsionModule,
    build_module,
    char_matrix_snf,
    companion,
    devissage_filtration,
    elementary_divisors,
    hom_space,
    hom_to_matrix,
    invariant_factors,
    is_automorphism,
    jordan_block,
    jordan_block_counts,
    jordan_hom_basis,
    jordan_module,
    nilpotency_index,
    similar,
    snf_certificate,
)

from conftest import mod, poly


def test_snf_identity_over_q(Q):
    U, D, V = char_matrix_snf(mod(Q, [[1, 0], [0, 1]]))
    assert [D[0][0], D[1][1]] == [poly(Q, [-1, 1])] * 2


def test_invariant_factors_examples(Q):
    assert invariant_factors(mod(Q, [[0, 1], [0, 0]])) == [Poly.one(Q), poly(Q, [0, 0, 1])]
    assert invariant_factors(mod(Q, [[1, 0], [0, 2]])) == [Poly.one(Q), poly(Q, [2, -3, 1])]


def test_elementary_divisors_examples(F2):
    t1 = poly(F2, [1, 1])
    assert elementary_divisors(mod(F2, [[1]])).as_dict() == {(t1, 1): 1}
    assert elementary_divisors(mod(F2, [[0, 1], [0, 0]])).as_dict() == {(Poly.t(F2), 2): 1}
    p = poly(F2, [1, 1, 1])
    assert elementary_divisors(TorsionModule(F2, companion(p))).as_dict() == {(p, 1): 1}


def test_companion_convention(F3):
    # t^2 + 2t + 1: ones below the diagonal, negated coefficients in the last column
    assert companion(poly(F3, [1, 2, 1])) == [[0, 2], [1, 1]]


def test_is_automorphism_examples(F2, F3):
    assert is_automorphism(mod(F2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert not is_automorphism(mod(F2, [[0, 1], [0, 0]]))
    assert not is_automorphism(TorsionModule(F3, companion(poly(F3, [0, -1, 1]))))


def test_build_module_examples(F2):
    cls = DivisorClass.from_counts(F2, {(Poly.t(F2), 3): 1})
    M = build_module(F2, cls)
    assert similar(M, TorsionModule(F2, jordan_block(F2, 3)))
    assert build_module(F2, DivisorClass.from_counts(F2, {(poly(F2, [1, 1]), 1): 2})) == mod(F2, [[1, 0], [0, 1]])
    assert build_module(F2, DivisorClass(F2)).dim == 0


def test_similar_examples(F3):
    J2 = TorsionModule(F3, jordan_block(F3, 2))
    assert not similar(J2, mod(F3, [[0, 0], [0, 0]]))
    assert similar(mod(F3, []), mod(F3, []))
    with pytest.raises(FieldMismatch):
        similar(J2, TorsionModule(prime_field(2), jordan_block(prime_field(2), 2)))


def test_q_classification_degree_cap(Q):
    # companion of an irreducible degree-7 polynomial
    with pytest.raises(DegreeCapExceeded):
        elementary_divisors(TorsionModule(Q, companion(poly(Q, [2, 0, 0, 0, 0, 0, 0, 1]))))


def test_shape_mismatch(F2):
    with pytest.raises(ShapeMismatch):
        mod(F2, [[1, 0]])


def test_divisor_class_json(F3):
    cls = elementary_divisors(mod(F3, [[1, 1], [0, 1]]))
    assert cls.to_json() == [{"m": [2, 1], "r": 2, "mult": 1}]
    assert DivisorClass.from_json(F3, cls.to_json()) == cls


def test_jordan_hom_basis_examples(F2):
    t = Poly.t(F2)
    assert [h.p for h in jordan_hom_basis(1, 1, F2)] == [Poly.one(F2)]
    assert [h.p for h in jordan_hom_basis(2, 3, F2)] == [t, t * t]
    assert [h.p for h in jordan_hom_basis(3, 2, F2)] == [Poly.one(F2), t]


def test_hom_to_matrix_examples(F2):
    t = Poly.t(F2)
    assert hom_to_matrix(JordanHom(1, 2, t), F2) == [[0], [1]]
    assert hom_to_matrix(JordanHom(2, 1, Poly.one(F2)), F2) == [[1, 0]]
    assert hom_to_matrix(JordanHom(3, 3, Poly.one(F2)), F2) == la.identity(F2, 3)


def test_jordan_hom_divisibility_guard(F2):
    with pytest.raises(InvalidJordanHom):
        JordanHom(1, 2, Poly.one(F2))
    with pytest.raises(InvalidJordanHom):
        JordanHom(2, 2, poly(F2, [0, 0, 1]))


def test_jordan_hom_composition(F3):
    t = Poly.t(F3)
    a = JordanHom(2, 3, t)
    b = JordanHom(3, 2, Poly.one(F3))
    c = b.compose(a)
    assert (c.s, c.r) == (2, 2)
    assert hom_to_matrix(c, F3) == la.matmul(F3, hom_to_matrix(b, F3), hom_to_matrix(a, F3))


def test_devissage_filtration_examples(F2, F3):
    f = devissage_filtration(TorsionModule(F2, jordan_block(F2, 3)))
    assert f.length == 3 and f.quotient_dims() == [1, 1, 1]
    f = devissage_filtration(mod(F2, [[0, 0], [0, 0]]))
    assert f.length == 1 and f.quotient_dims() == [2]
    f = devissage_filtration(jordan_module(F3, [2, 1]))
    assert f.length == 2 and f.quotient_dims() == [2, 1]


def test_nilpotency_guard(F2):
    with pytest.raises(NotNilpotent):
        nilpotency_index(mod(F2, [[1]]))


@pytest.mark.parametrize("F", [prime_field(2), prime_field(3)], ids=str)
def test_hom_dimension_law(F):
    for r in range(1, 6):
        for s in range(1, 6):
            Js, Jr = TorsionModule(F, jordan_block(F, s)), TorsionModule(F, jordan_block(F, r))
            assert len(jordan_hom_basis(s, r, F)) == min(r, s) == intertwiner_dim(F, Js.mat, Jr.mat)
            assert len(hom_space(Js, Jr)) == min(r, s)


def test_hom_dimension_enumeration(F2):
    for r in range(1, 4):
        for s in range(1, 4):
            n = intertwiner_count(F2, jordan_block(F2, s), jordan_block(F2, r))
            assert n == 2 ** min(r, s)


SNF_FIELDS = [prime_field(2), prime_field(3), prime_field(5), rationals()]


@pytest.mark.parametrize("F", SNF_FIELDS, ids=str)
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32), d=st.integers(0, 5))
def test_snf_certificate(F, seed, d):
    M = TorsionModule(F, random_matrix(F, d, random.Random(seed)))
    assert all(snf_certificate(M).values())
    prod = Poly.one(F)
    for f in invariant_factors(M):
        prod = prod * f
    assert prod == leibniz_charpoly(M)


@pytest.mark.parametrize("F", SNF_FIELDS, ids=str)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32), d=st.integers(1, 4), e=st.integers(0, 3))
def test_classification_properties(F, seed, d, e):
    if not F.is_finite:
        # factoring over Q is capped at degree 6
        e = min(e, 6 - d)
    rng = random.Random(seed)
    A = TorsionModule(F, random_matrix(F, d, rng))
    B = TorsionModule(F, random_matrix(F, e, rng))
    assert elementary_divisors(random_conjugate(A, rng)) == elementary_divisors(A)
    assert elementary_divisors(A + B) == elementary_divisors(A) + elementary_divisors(B)
    assert similar(build_module(F, elementary_divisors(A)), A)


@pytest.mark.parametrize("F", SNF_FIELDS, ids=str)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32), d=st.integers(1, 6))
def test_nilpotent_filtration_and_blocks(F, seed, d):
    N, parts = random_nilpotent(F, d, random.Random(seed))
    f = devissage_filtration(N)
    assert f.length == nilpotency_index(N) == parts[0]
    assert f.check(N)
    counts = {}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1
    assert jordan_block_counts(N) == counts
