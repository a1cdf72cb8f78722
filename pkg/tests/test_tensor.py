import itertools

import pytest
from hypothesis import given, strategies as st

from flagbethe.poly import MPoly, Rat, elementary_symmetric, zvars
from flagbethe.tensor import (
    FracVElement,
    VElement,
    act_generator,
    current_relations_check,
    discriminant,
    enumerate_decompositions,
    graded_piece_quotient,
    is_symmetric,
    project_symmetric,
    quotient_character,
    random_element,
    shapovalov,
    shapovalov_pm,
    singular_character,
    singular_vectors,
    sn_act,
    sn_equivariance_check,
    all_weights,
)


def v(word, poly=1, N=2):
    return VElement.basis(tuple(word), N, MPoly.coerce(poly))


def test_decomposition_counts():
    assert len(enumerate_decompositions((2, 1))) == 3
    assert enumerate_decompositions((4,)) == [((1, 2, 3, 4),)]
    assert len(enumerate_decompositions((1, 1, 1))) == 6
    assert ((1, 2), ()) in enumerate_decompositions((2, 0))


def test_act_generator_example(z):
    got = act_generator(2, 1, 1, v((1, 1)))
    assert got == v((2, 1), z(1)) + v((1, 2), z(2))


def test_diagonal_acts_by_weight():
    x = v((1, 2, 1), MPoly.var("z.3") + 2)
    assert act_generator(1, 1, 0, x) == x.scale(2)


def test_out_of_range_generator():
    with pytest.raises(ValueError):
        act_generator(3, 1, 0, v((1, 2)))


def test_generator_into_negative_weight_is_zero():
    assert not act_generator(1, 2, 0, v((1, 1)))


def test_sn_act_examples():
    x = v((1, 2))
    assert sn_act((0, 1), x) == x
    assert sn_act((1, 0), x) == v((2, 1))
    y = v((1, 2, 2), MPoly.var("z.1") * MPoly.var("z.3"), N=2)
    s = (1, 0, 2)
    assert sn_act(s, sn_act(s, y)) == y


def test_project_symmetric_examples():
    half = Rat(1, 2)
    assert project_symmetric(v((1, 2)), -1) == v((1, 2)).scale(half) - v((2, 1)).scale(half)
    sym = v((1, 2)) + v((2, 1))
    assert project_symmetric(sym, 1) == sym
    assert not project_symmetric(sym, -1)
    assert is_symmetric(project_symmetric(v((1, 2, 1), MPoly.var("z.1")), -1), -1)


def test_shapovalov_examples(z):
    assert shapovalov(v((1, 2)), v((1, 2))) == MPoly.const(1)
    assert shapovalov(v((1, 2)), v((2, 1))) == MPoly()
    assert shapovalov(v((1, 2), z(1)), v((1, 2), z(2))) == z(1) * z(2)


def test_shapovalov_pm_two_sites():
    x = v((1, 2)) + v((2, 1))
    y = FracVElement(v((1, 2)) - v((2, 1)))
    # (1 - 1) / D = 0
    assert shapovalov_pm(x, y) == MPoly()
    y2 = FracVElement(v((1, 2), MPoly.var("z.2")) - v((2, 1), MPoly.var("z.1")))
    # (z2 - z1) / (z2 - z1) = 1
    assert shapovalov_pm(x, y2) == MPoly.const(1)


def test_total_quotient_dimension_two_sites():
    total = sum(
        len(graded_piece_quotient("plus", lam, k)) for lam in all_weights(2, 2) for k in range(0, 3)
    )
    assert total == 4


def test_trivial_weight_quotient():
    assert quotient_character("plus", (3,)) == {0: 1}
    assert singular_character("minus", (3,)) == {0: 1}


def test_minus_degrees_are_shifted_by_deg_D():
    lam = (1, 1)
    piece = graded_piece_quotient("minus", lam, -1)
    assert len(piece) == 1
    assert piece.elements[0].num.degree() == 0
    assert discriminant(2).degree() == 1


def test_singular_vectors_desk_instance():
    assert len(singular_vectors("minus", (1, 1), -1)) == 1
    assert singular_character("minus", (1, 1)) == {-1: 1}
    with pytest.raises(ValueError):
        singular_vectors("minus", (1, 2), 0)


@pytest.mark.parametrize("N,n", [(1, 3), (2, 3), (3, 2), (3, 3)])
def test_current_relations(N, n):
    assert current_relations_check(N, n, rmax=2, seed=N + n).passed


def test_action_commutes_with_sn():
    assert sn_equivariance_check(2, 3).passed


@given(st.integers(0, 10_000))
def test_action_is_linear_over_symmetric_polynomials(seed):
    import random

    x = random_element(2, 3, random.Random(seed))
    s2 = elementary_symmetric(2, zvars(3))
    for i, j in itertools.product((1, 2), repeat=2):
        assert act_generator(i, j, 1, x.scale(s2)) == act_generator(i, j, 1, x).scale(s2)
