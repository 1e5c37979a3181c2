import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endomod import linalg as la
from endomod.coherent import (
    CoherentFunctor,
    devissage_functor,
    devissage_steps,
    dim_functor,
    evaluate,
    f_r,
    find_mono,
    in_f_prime,
    natural_transformations,
    phi,
    presentation_make,
    quotient_line,
    value_dim,
)
from endomod.errors import NotEpimorphism, NotInFPrime, ShapeMismatch
from endomod.fields import prime_field
from endomod.generators import fprime_presentation, projection_presentation, random_presentation
from endomod.poly import Poly


def test_identity_presents_zero(F2):
    D = evaluate(presentation_make(F2, [2], [2], [[Poly.one(F2)]]))
    assert D.is_zero() and dim_functor(D) == 0
    assert in_f_prime(D).entries == ()
    assert find_mono(D) is None
    assert phi(D) == []


def test_beta_2(F2):
    P = f_r(F2, 2)
    assert P.source_blocks == [1, 3] and P.target_blocks == [2]
    D = evaluate(P)
    assert [D.dim(s) for s in (1, 2, 3)] == [0, 1, 0]
    assert D.t_map(2) == [[0]]
    assert all(la.is_zero(F2, D.u_map(s)) and la.is_zero(F2, D.d_map(s)) for s in range(1, 4))


def test_not_epimorphism(F2):
    with pytest.raises(NotEpimorphism):
        presentation_make(F2, [1], [2], [[Poly.t(F2)]])


def test_shape_mismatch(F2):
    with pytest.raises(ShapeMismatch):
        presentation_make(F2, [1, 2], [2], [[Poly.t(F2)]])


def test_projection_cokernel(F2):
    D = evaluate(projection_presentation(F2, 2))
    assert D.dims == {1: 1, 2: 1, 3: 0}
    assert la.is_zero(F2, D.u_map(1))
    assert not la.is_zero(F2, D.d_map(1))
    assert dim_functor(D) == 2
    assert in_f_prime(D) is None
    with pytest.raises(NotInFPrime):
        phi(D)
    assert find_mono(D) == (1, [1])
    assert devissage_functor(D).as_dict() == {1: 1, 2: 1}


def test_projection_onto_m1(F3):
    D = evaluate(projection_presentation(F3, 1))
    assert devissage_functor(D).as_dict() == {1: 1}


def test_f_r_shapes(F3):
    P = f_r(F3, 1)
    assert P.source_blocks == [0, 2] and P.target_blocks == [1]
    assert f_r(F3, 3).target_dim == 3


@pytest.mark.parametrize("F", [prime_field(2), prime_field(3), prime_field(5)], ids=str)
def test_f_r_table(F):
    for r in range(1, 7):
        P = f_r(F, r)
        for s in range(1, 7):
            assert value_dim(P, s) == (r == s)


def test_f_r_membership(F3):
    D = evaluate(f_r(F3, 3))
    assert in_f_prime(D).as_dict() == {3: 1}
    assert dim_functor(D) == 1
    assert find_mono(evaluate(f_r(F3, 2))) == (2, [1])


def test_phi_examples(F2):
    D = evaluate(f_r(F2, 2).direct_sum(f_r(F2, 2)))
    assert phi(D) == [(2, 2)]
    D = evaluate(f_r(F2, 1).direct_sum(f_r(F2, 3)))
    assert phi(D) == [(1, 1), (3, 1)]


def test_hom_between_atoms(F3):
    atoms = {r: evaluate(f_r(F3, r)) for r in range(1, 5)}
    for r, a in atoms.items():
        for s, b in atoms.items():
            assert len(natural_transformations(a, b)) == (r == s)


def test_presentation_json(F2):
    P = f_r(F2, 2)
    obj = P.to_json()
    assert obj == {"field": {"kind": "prime", "p": 2}, "source": [1, 3], "target": [2], "beta": [[{"p": [0, 1]}, {"p": [1]}]]}
    assert isinstance(P, CoherentFunctor)


FIELDS = [prime_field(2), prime_field(3)]


@pytest.mark.parametrize("F", FIELDS, ids=str)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_random_presentations(F, seed):
    rng = random.Random(seed)
    P = random_presentation(F, rng)
    D = evaluate(P)
    assert D.check_relations()
    s_max = max(P.source_blocks)
    assert value_dim(P, s_max + 1) == 0 and value_dim(P, s_max + 2) == 0
    n = dim_functor(D)
    steps = devissage_steps(D, seed)
    assert len(steps) == n
    nus = {devissage_functor(D, seed + k) for k in range(5)}
    assert len(nus) == 1 and nus.pop().total == n
    found = find_mono(D)
    if found is not None:
        r, v = found
        Q = quotient_line(D, r, v)
        assert Q.check_relations()
        # subfunctor spanned by v: one dimension in degree r only
        for s in range(1, D.s_max + 1):
            assert Q.dim(s) == D.dim(s) - (s == r)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_fprime_recovers_nu(seed):
    rng = random.Random(seed)
    F = rng.choice([prime_field(2), prime_field(3), prime_field(5)])
    nu = {r: c for r in range(1, 5) if (c := rng.randint(0, 2))}
    if not nu:
        return
    D = evaluate(fprime_presentation(F, nu, rng))
    assert in_f_prime(D).as_dict() == nu
    assert devissage_functor(D, seed).as_dict() == nu
    assert phi(D) == sorted(nu.items())
