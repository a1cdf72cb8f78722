import pytest

from flagbethe import geometric
from flagbethe.cohomology import CohClass
from flagbethe.geometric import (
    CohFamily,
    current_relation_check,
    descent_check,
    diagram_check,
    diagram_sweep,
    paper_proved,
    rho_generator,
    rho_on_family,
    rho_singular_character,
    serre_check,
    target_weight,
)
from flagbethe.poly import MPoly

z1, z2 = MPoly.var("z.1"), MPoly.var("z.2")
g11 = MPoly.var("g.1.1")


def test_raise_on_two_points():
    x = CohClass.from_rep(g11, (1, 1))
    assert rho_generator("-", "raise", 1, 0, x).values == (MPoly.const(-1),)
    assert rho_generator("-", "raise", 1, 0, CohClass.constant(1, (1, 1))).values == (MPoly(),)
    assert rho_generator("+", "raise", 1, 0, x).values == (z1 + z2,)
    assert rho_generator("+", "raise", 1, 0, CohClass.constant(1, (1, 1))).values == (MPoly.const(2),)


def test_lower_from_point():
    one = CohClass.constant(1, (2, 0))
    assert rho_generator("+", "lower", 1, 0, one).values == (MPoly.const(1), MPoly.const(1))
    assert rho_generator("-", "lower", 1, 0, one).values == (z2 - z1, z1 - z2)


def test_empty_target():
    out = rho_generator("-", "lower", 1, 0, CohClass.constant(1, (0, 2)))
    assert isinstance(out, CohFamily) and out.is_zero()
    assert diagram_check("-", "lower", 1, 0, (0, 2)).passed


def test_bad_index_and_sign():
    with pytest.raises(ValueError):
        target_weight("raise", 2, (1, 1))
    with pytest.raises(ValueError):
        rho_generator("*", "raise", 1, 0, CohClass.constant(1, (1, 1)))


def test_family_action_collects_weights():
    fam = CohFamily()
    fam.add(CohClass.from_rep(g11, (1, 1)))
    fam.add(CohClass.constant(1, (0, 2)))
    out = rho_on_family("-", "raise", 1, 0, fam)
    assert sorted(out.weights()) == [(1, 1), (2, 0)]
    assert out[(2, 0)].values == (MPoly.const(-1),)


@pytest.mark.parametrize("lam", [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2)])
def test_sweep_two_strands(lam):
    res = diagram_sweep(lam, jmax=2)
    assert res.passed, [o.witnesses for o in res.outcomes if not o.passed]


@pytest.mark.parametrize("sign", ["+", "-"])
@pytest.mark.parametrize("direction", ["raise", "lower"])
@pytest.mark.parametrize("a", [1, 2])
def test_three_strands(sign, direction, a):
    assert diagram_check(sign, direction, a, 0, (1, 1, 1)).passed
    assert diagram_check(sign, direction, a, 1, (2, 1, 0)).passed


def test_sabotaged_action_is_caught(monkeypatch):
    orig = geometric._localization_sum

    def broken(sign, direction, a, j, x, K):
        return orig(sign, direction, a, j, x, K) + MPoly.const(1)

    monkeypatch.setattr(geometric, "_localization_sum", broken)
    out = diagram_check("-", "raise", 1, 0, (1, 1))
    assert not out.passed and out.witnesses


def test_paper_proved_flag():
    assert paper_proved("-") and not paper_proved("+")
    assert diagram_check("+", "raise", 1, 0, (1, 1)).details["paper_proved"] is False


@pytest.mark.parametrize("sign", ["+", "-"])
@pytest.mark.parametrize("direction", ["raise", "lower"])
def test_descent(sign, direction):
    assert descent_check(sign, direction, 1, 1, (2, 1)).passed
    assert descent_check(sign, direction, 1, 0, (1, 1, 1)).passed


@pytest.mark.parametrize("sign", ["+", "-"])
def test_relations(sign):
    out = serre_check(sign, 1, (2, 1))
    assert out.passed and out.details["scalar"] == 1
    assert current_relation_check(sign, 1, (1, 1), jmax=1).passed


def test_rho_singular_character():
    assert rho_singular_character((1, 1)) == {-1: 1}
    assert rho_singular_character((2, 1, 0)) == {-2: 1, -1: 1}
    with pytest.raises(ValueError):
        rho_singular_character((1, 2))
