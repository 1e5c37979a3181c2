import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endomod.equivalences import PrimaryComponent
from endomod.errors import FieldMismatch, NegativeCoefficient, NotAutomorphism
from endomod.fields import prime_field
from endomod.generators import random_conjugate, random_invertible
from endomod.k0 import K0Class, aut_k0_class, k0_eq, nil_k0_class, realize, transport_check
from endomod.oracles import conjugate_brute, general_linear
from endomod.poly import Poly
from endomod.torsion import TorsionModule, companion, jordan_block, jordan_module, similar

from conftest import mod, poly


def test_identity_class(F2):
    cls = aut_k0_class(mod(F2, [[1, 0], [0, 1]]))
    assert cls.as_dict() == {(poly(F2, [1, 1]), 1): 2}
    assert cls.to_json() == {"field": {"kind": "prime", "p": 2}, "entries": [{"m": [1, 1], "r": 1, "coeff": 2}]}


def test_companion_class(F2):
    p = poly(F2, [1, 1, 1])
    assert aut_k0_class(TorsionModule(F2, companion(p))).as_dict() == {(p, 1): 1}


def test_empty_class(F2):
    assert aut_k0_class(mod(F2, [])).entries == ()


def test_non_automorphism(F2):
    with pytest.raises(NotAutomorphism):
        aut_k0_class(mod(F2, [[0, 1], [0, 0]]))


def test_nil_classes(F3):
    assert nil_k0_class(mod(F3, [[0] * 3] * 3)).as_dict() == {1: 3}
    assert nil_k0_class(TorsionModule(F3, jordan_block(F3, 3))).as_dict() == {3: 1}
    assert nil_k0_class(jordan_module(F3, [2, 1])).as_dict() == {1: 1, 2: 1}


def test_group_law(F2):
    a = aut_k0_class(mod(F2, [[1]]))
    assert (a + (-a)).entries == ()
    assert a + a == aut_k0_class(mod(F2, [[1, 0], [0, 1]]))
    assert not (a - a - a).is_effective()


def test_cross_field_comparison(F2, F3):
    with pytest.raises(FieldMismatch):
        k0_eq(aut_k0_class(mod(F2, [[1]])), aut_k0_class(mod(F3, [[1]])))
    with pytest.raises(FieldMismatch):
        aut_k0_class(mod(F2, [[1]])) + aut_k0_class(mod(F3, [[1]]))


def test_realize(F3):
    a = aut_k0_class(mod(F3, [[1, 1], [0, 1]]))
    assert similar(realize(a), mod(F3, [[1, 1], [0, 1]]))
    with pytest.raises(NegativeCoefficient):
        realize(-a)


def test_json_round_trip(F3):
    a = aut_k0_class(mod(F3, [[2, 1, 0], [0, 2, 0], [0, 0, 1]]))
    assert K0Class.from_json(F3, a.to_json()) == a


def test_transport_examples(F2, F3):
    p = poly(F2, [1, 1, 1])
    assert transport_check(PrimaryComponent(p, TorsionModule(F2, companion(p))))
    q = poly(F3, [-1, 1])
    assert transport_check(PrimaryComponent(q, TorsionModule(F3, companion(q * q))))
    assert transport_check(PrimaryComponent(q, mod(F3, [])))
    with pytest.raises(NotAutomorphism):
        transport_check(PrimaryComponent(Poly.t(F3), mod(F3, [[0]])))


def test_exhaustive_gl2_f2(F2):
    G = general_linear(F2, 2)
    assert len(G) == 6
    for A in G:
        for B in G:
            same = k0_eq(aut_k0_class(TorsionModule(F2, A)), aut_k0_class(TorsionModule(F2, B)))
            assert same == conjugate_brute(F2, A, B, G)


@pytest.mark.parametrize("F", [prime_field(2), prime_field(3), prime_field(5)], ids=str)
@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32), d=st.integers(1, 3), e=st.integers(0, 3))
def test_class_properties(F, seed, d, e):
    rng = random.Random(seed)
    A = TorsionModule(F, random_invertible(F, d, rng))
    B = TorsionModule(F, random_invertible(F, e, rng))
    cA = aut_k0_class(A)
    assert aut_k0_class(random_conjugate(A, rng)) == cA
    assert aut_k0_class(A + B) == cA + aut_k0_class(B)
    assert all(m != Poly.t(F) for (m, _), _ in cA.entries)
    assert aut_k0_class(realize(cA)) == cA
