import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endomod import linalg as la
from endomod.equivalences import (
    PrimaryComponent,
    component_change_of_basis,
    endo_classify,
    fext_backward,
    fext_forward,
    primary_module,
    primary_split,
    shift_to_nilpotent,
    unshift,
    verify_adjunction,
)
from endomod.errors import NotAutomorphism, NotLinearIdeal, NotPrimary
from endomod.fields import extension_field, field_make, FieldDescriptor, prime_field
from endomod.generators import random_conjugate, random_invertible
from endomod.poly import Poly, irreducibles_up_to
from endomod.torsion import (
    DivisorClass,
    TorsionModule,
    build_module,
    companion,
    elementary_divisors,
    hom_space,
    jordan_block,
    jordan_block_counts,
    jordan_module,
    similar,
)

from conftest import mod, poly


def test_primary_split_eigenspaces(F5):
    comps = primary_split(mod(F5, [[1, 0], [0, 2]]))
    assert [(c.ideal_gen, c.module.mat) for c in comps] == [
        (poly(F5, [-2, 1]), [[2]]),
        (poly(F5, [-1, 1]), [[1]]),
    ]


def test_primary_split_identity_q(Q):
    (c,) = primary_split(mod(Q, [[1, 0], [0, 1]]))
    assert c.ideal_gen == poly(Q, [-1, 1]) and c.dim == 2


def test_primary_split_irreducible(F2):
    p = poly(F2, [1, 1, 1])
    (c,) = primary_split(TorsionModule(F2, companion(p)))
    assert c.ideal_gen == p and c.dim == 2


def test_primary_split_rejects_non_invertible(F2):
    with pytest.raises(NotAutomorphism):
        primary_split(mod(F2, [[0, 1], [0, 0]]))


def test_shift_examples(Q, F3):
    C = PrimaryComponent(poly(Q, [-1, 1]), mod(Q, [[1]]))
    assert shift_to_nilpotent(C, Q.one).mat == [[0]]
    J2 = TorsionModule(F3, jordan_block(F3, 2))
    C = PrimaryComponent(poly(F3, [-1, 1]), J2.shifted(F3.one))
    assert shift_to_nilpotent(C, F3.elem(1)) == J2
    assert unshift(J2, 1) == C.module
    with pytest.raises(NotLinearIdeal):
        shift_to_nilpotent(C, 2)


def test_fext_forward_examples(F2, F3):
    F4 = extension_field(2, [1, 1, 1])
    p = poly(F2, [1, 1, 1])
    L, N = fext_forward(PrimaryComponent(p, TorsionModule(F2, companion(p))))
    assert L == F4 and N.mat == [[F4.zero]]
    q = poly(F3, [-1, 1]) ** 2
    L, N = fext_forward(PrimaryComponent(poly(F3, [-1, 1]), TorsionModule(F3, companion(q))))
    assert L == F3 and similar(N, TorsionModule(F3, jordan_block(F3, 2)))
    L, N = fext_forward(PrimaryComponent(p, mod(F2, [])))
    assert L == F4 and N.dim == 0


def test_fext_backward_examples(F2, F3):
    F4 = extension_field(2, [1, 1, 1])
    p = poly(F2, [1, 1, 1])
    back = fext_backward(F4, TorsionModule(F4, [[F4.zero]]), p)
    assert similar(back, TorsionModule(F2, companion(p)))
    J2 = TorsionModule(F3, jordan_block(F3, 2))
    assert fext_backward(F3, J2, poly(F3, [-1, 1])) == J2.shifted(1)
    assert fext_backward(F4, TorsionModule(F4, []), p).dim == 0


def test_fext_rejects_non_primary(F2):
    with pytest.raises(NotPrimary):
        fext_forward(PrimaryComponent(poly(F2, [1, 1]), mod(F2, [[0]])))


def test_adjunction_simple(F2):
    p = poly(F2, [1, 1, 1])
    w = verify_adjunction(PrimaryComponent(p, TorsionModule(F2, companion(p))))
    assert w.valid
    assert len(w.unit_matrix) == 2 and la.rank(F2, w.unit_matrix, 2) == 2
    # the image of 1 generates: eta(e_0) and eta(t e_0) span
    assert any(row[0] for row in w.unit_matrix)


def test_adjunction_square(F2):
    p = poly(F2, [1, 1, 1])
    M = TorsionModule(F2, companion(p * p))
    w = verify_adjunction(PrimaryComponent(p, M))
    assert w.valid
    assert M.dim == 4 and w.target.dim == 2
    assert jordan_block_counts(w.target) == {2: 1}


def test_adjunction_zero(F3):
    w = verify_adjunction(PrimaryComponent(poly(F3, [1, 0, 1]), mod(F3, [])))
    assert w.valid and w.unit_matrix == [] and w.counit_matrix == []


def test_adjunction_number_field(Q):
    m = poly(Q, [-2, 0, 1])
    M = TorsionModule(Q, companion(m * m)) + TorsionModule(Q, companion(m))
    w = verify_adjunction(PrimaryComponent(m, M))
    assert w.valid
    assert w.residue_field == field_make(FieldDescriptor.numberfield([-2, 0, 1]))
    assert jordan_block_counts(w.target) == {1: 1, 2: 1}


def test_adjunction_over_extension_base():
    F4 = extension_field(2, [1, 1, 1])
    m = Poly(F4, [F4.gen, F4.one, F4.one])
    M = random_conjugate(TorsionModule(F4, companion(m * m)), random.Random(1))
    w = verify_adjunction(PrimaryComponent(m, M))
    assert w.valid
    assert w.residue_field.order == 16


def test_endo_classify_fitting(F2):
    M = TorsionModule(F2, jordan_block(F2, 2)) + mod(F2, [[1]])
    comps = endo_classify(M)
    assert [c.ideal_gen for c in comps] == [Poly.t(F2), poly(F2, [1, 1])]
    assert similar(comps[0].module, TorsionModule(F2, jordan_block(F2, 2)))
    assert comps[1].module.mat == [[1]]
    (c,) = endo_classify(mod(F2, [[0]]))
    assert c.ideal_gen == Poly.t(F2)


def test_endo_classify_matches_primary_split_on_automorphisms(F3):
    rng = random.Random(7)
    for _ in range(20):
        M = TorsionModule(F3, random_invertible(F3, 3, rng))
        a, b = endo_classify(M), primary_split(M)
        assert [(c.ideal_gen, c.module, c.basis) for c in a] == [(c.ideal_gen, c.module, c.basis) for c in b]


def test_components_are_orthogonal(F3):
    rng = random.Random(3)
    for _ in range(10):
        M = TorsionModule(F3, random_invertible(F3, 4, rng))
        comps = primary_split(M)
        for i, a in enumerate(comps):
            for j, b in enumerate(comps):
                if i != j:
                    assert hom_space(a.module, b.module) == []
        P = component_change_of_basis(M, comps)
        blocks = la.block_diag(F3, [c.module.mat for c in comps])
        assert la.matmul(F3, M.mat, P) == la.matmul(F3, P, blocks)


EXPONENTS = [(1,), (2,), (3,), (1, 1), (1, 2), (1, 1, 1)]


@pytest.mark.parametrize("F", [prime_field(2), prime_field(3)], ids=str)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_round_trip_property(F, data):
    ms = irreducibles_up_to(F, 3)
    m = data.draw(st.sampled_from(ms))
    exps = data.draw(st.sampled_from(EXPONENTS))
    seed = data.draw(st.integers(0, 2**32))
    counts = {}
    for r in exps:
        counts[(m, r)] = counts.get((m, r), 0) + 1
    M = random_conjugate(build_module(F, DivisorClass.from_counts(F, counts)), random.Random(seed))
    C = primary_module(M, m)
    L, N = fext_forward(C)
    assert M.dim == m.deg * N.dim
    assert similar(fext_backward(L, N, m), M)
    sizes = {}
    for r in exps:
        sizes[r] = sizes.get(r, 0) + 1
    assert jordan_block_counts(N) == sizes
    # counit side: start from N
    N2 = random_conjugate(jordan_module(L, list(exps)), random.Random(seed))
    _, N3 = fext_forward(PrimaryComponent(m, fext_backward(L, N2, m)))
    assert jordan_block_counts(N3) == jordan_block_counts(N2)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_split_reassembles(seed):
    F = prime_field(5)
    rng = random.Random(seed)
    M = TorsionModule(F, random_invertible(F, 4, rng))
    comps = primary_split(M)
    total = None
    for c in comps:
        total = c.module if total is None else total + c.module
    assert similar(total, M)
    assert sum((elementary_divisors(c.module) for c in comps), DivisorClass(F)) == elementary_divisors(M)
