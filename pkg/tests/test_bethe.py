import pytest

from flagbethe.bethe import (
    UEAElement,
    apply_uea,
    asymptotic_limit_check,
    binfty_generators,
    central_check,
    commutativity_check,
    expand_universal_operator,
    sweep_ratios,
    weight_commutation_check,
    zone_values,
)
from flagbethe.poly import MPoly, Rat, elementary_symmetric, zvars
from flagbethe.tensor import VElement, act_generator, generic_point, project_symmetric, sn_act

G = UEAElement.generator


@pytest.fixture(scope="module")
def fam2():
    return expand_universal_operator(2, 3)


def test_one_by_one_operator():
    fam = expand_universal_operator(1, 3)
    assert fam[(1, 0)] == UEAElement.scalar(-MPoly.var("K.1"))
    for j in range(1, 4):
        assert fam[(1, j)] == -G(1, 1, j - 1)


def test_two_by_two_first_coefficient(fam2):
    K1, K2 = MPoly.var("K.1"), MPoly.var("K.2")
    assert fam2[(1, 0)] == UEAElement.scalar(-K1 - K2)
    for j in range(1, 4):
        assert fam2[(1, j)] == -(G(1, 1, j - 1) + G(2, 2, j - 1))


def test_two_by_two_constant_term(fam2):
    K1, K2 = MPoly.var("K.1"), MPoly.var("K.2")
    assert fam2[(2, 0)] == UEAElement.scalar(K1 * K2)


def test_apply_uea_examples():
    x = VElement.basis((1, 2, 1), 2, MPoly.var("z.2"))
    assert apply_uea(G(1, 2, 1), x) == act_generator(1, 2, 1, x)
    assert apply_uea(G(1, 1) * G(1, 1), x) == x.scale(4)
    rel = G(1, 2) * G(2, 1) - G(2, 1) * G(1, 2) - (G(1, 1) - G(2, 2))
    assert not apply_uea(rel, x)


def test_commutativity_small(fam2):
    assert commutativity_check(fam2, (1, 1)).passed
    assert commutativity_check(fam2, (2, 1)).passed


def test_commutativity_detects_noncommuting_pair(fam2):
    # B_21 and e_12 do not commute; the matrix check must see it.
    bad = weight_commutation_check(fam2.with_K([3, 5]), (1, 1), [(1, 2)])
    assert not bad.passed


def test_commutativity_trivial_for_N1():
    assert commutativity_check(expand_universal_operator(1, 3), (3,)).passed


def test_u_h_and_gl_N_at_zero(fam2):
    assert weight_commutation_check(fam2, (1, 1), [(1, 1), (2, 2)]).passed
    zero = fam2.with_K([0, 0])
    assert weight_commutation_check(zero, (1, 1), [(1, 2), (2, 1)]).passed


def test_binfty_generators():
    gens = binfty_generators(1, 2)
    assert gens == [G(1, 1, 0), G(1, 1, 1), G(1, 1, 2)]


@pytest.mark.parametrize("lam", [(2,), (1, 1), (2, 1, 0)])
def test_central(lam):
    assert central_check(len(lam), lam, 4).passed


def test_bethe_action_linear_and_equivariant(fam2):
    x = project_symmetric(VElement.basis((1, 2, 1), 2, MPoly.var("z.1")), 1)
    s = elementary_symmetric(1, zvars(3))
    for key in [(1, 2), (2, 2), (2, 3)]:
        E = fam2[key]
        y = apply_uea(E, x)
        assert apply_uea(E, x.scale(s)) == y.scale(s)
        assert y.weight == x.weight
        assert sn_act((1, 0, 2), y) == y


def test_zone_values():
    assert zone_values(3, 10) == (Rat(1000), Rat(100), Rat(10))
    assert zone_values(2, 10, (2, 1)) == (Rat(10), Rat(100))


@pytest.mark.parametrize("order", [(1, 2), (2, 1)])
def test_asymptotics_both_orders(fam2, order):
    out = asymptotic_limit_check(fam2, (1, 1), [100, 1000, 10000], generic_point(2, 0), order)
    assert out.passed, out.details
    assert all(5 <= r <= 20 for r in out.details["ratios"] if r is not None)


def test_sweep_ratio_conventions():
    assert sweep_ratios([Rat(0), Rat(0)]) == [None]
    assert sweep_ratios([Rat(10), Rat(1)]) == [10.0]
