from hypothesis import given, strategies as st

from flagbethe.poly import MPoly, Rat
from flagbethe.series import DiffOpSeries, USeries, rdet

import pytest

coeffs = st.dictionaries(st.integers(0, 5), st.integers(-4, 4).map(Rat), max_size=4)


def test_rdet_commuting_scalars():
    a, b, c, d = (MPoly.var(f"z.{k}") for k in range(1, 5))
    assert rdet([[a, b], [c, d]]) == a * d - b * c


def test_rdet_derivative_matrix():
    d = DiffOpSeries.d()
    uinv = DiffOpSeries.mult(USeries({1: Rat(1)}))
    one = DiffOpSeries.scalar(Rat(1))
    got = rdet([[d, uinv], [one, d]])
    want = DiffOpSeries.d(2) - uinv
    assert got.equal_to(want)


@given(coeffs, coeffs)
def test_rdet_diagonal_leibniz(fc, gc):
    f = USeries(fc, prec=6)
    g = USeries(gc, prec=6)
    d = DiffOpSeries.d()
    zero = DiffOpSeries()
    M = [[d - DiffOpSeries.mult(f), zero], [zero, d - DiffOpSeries.mult(g)]]
    got = rdet(M)
    want = DiffOpSeries({2: USeries.constant(Rat(1)), 1: -(f + g), 0: f * g - g.derivative()})
    assert got.equal_to(want, 6)


@given(coeffs, coeffs)
def test_d_composition_leibniz(fc, gc):
    f, g = USeries(fc, prec=6), USeries(gc, prec=6)
    lhs = DiffOpSeries.d() * DiffOpSeries.mult(f * g)
    rhs = DiffOpSeries({1: f * g, 0: f.derivative() * g + f * g.derivative()})
    assert lhs.equal_to(rhs, 6)


@given(coeffs, coeffs)
def test_truncation_consistency(fc, gc):
    f, g = USeries(fc, prec=6), USeries(gc, prec=6)
    assert (f * g).truncate(3).equal_to(f.truncate(3) * g.truncate(3), 3)


def test_inverse_geometric_series():
    # 1/(1 - u^-1) = sum u^-j
    s = USeries({0: Rat(1), 1: Rat(-1)})
    inv = s.inverse(5)
    assert all(inv[j] == 1 for j in range(6))


def test_mismatched_truncation_rejected():
    a = DiffOpSeries.mult(USeries({0: Rat(1)}, prec=3))
    b = DiffOpSeries.mult(USeries({0: Rat(1)}, prec=4))
    with pytest.raises(ValueError):
        rdet([[a, b], [b, a]])


def test_derivative_of_u_power():
    s = USeries({2: Rat(1)})  # u^-2
    assert s.derivative().coeffs == {3: Rat(-2)}
