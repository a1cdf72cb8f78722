import pytest

from flagbethe.cohomology import CohClass
from flagbethe.poly import MPoly, Rat, RatFun
from flagbethe.quasiexp import (
    QuasiExponentialFamily,
    eta_iso,
    extract_WK,
    factorization_check,
    fundamental_coefficients,
    kernel_check,
    langlands_limit_check,
    lemma43_check,
    lowest_singular_vector,
    singular_case_check,
    winfty,
    wronskian,
    wronskian_of,
)
from flagbethe.series import USeries
from flagbethe.tensor import generic_point

S = lambda i, j: MPoly.var(f"S.{i}.{j}")  # noqa: E731
K1, K2 = MPoly.var("K.1"), MPoly.var("K.2")


def upoly(*coeffs):
    """coefficients from the top degree down"""
    d = len(coeffs) - 1
    return USeries({-(d - k): RatFun(MPoly.coerce(c)) for k, c in enumerate(coeffs) if c})


def test_wronskian_of_one_and_u():
    _, W = wronskian_of([(MPoly(), upoly(1)), (MPoly(), upoly(1, 0))])
    assert W.coeffs == {0: RatFun(MPoly.const(1))}


def test_wronskian_of_exponentials():
    ksum, W = wronskian_of([(K1, upoly(1)), (K2, upoly(1))])
    assert ksum == K1 + K2
    assert W.coeffs == {0: RatFun(K2 - K1)}


def test_wronskian_two_linear_factors():
    _, W = wronskian(QuasiExponentialFamily((1, 1)))
    want = (K2 - K1) * ((MPoly.const(1)) * 0 + S(1, 1) * S(2, 1)) + S(1, 1) - S(2, 1)
    assert W[-2] == RatFun(K2 - K1)
    assert W[-1] == RatFun((K2 - K1) * (S(1, 1) + S(2, 1)))
    assert W[0] == RatFun(want)


def test_extract_WK_and_winfty_examples():
    F = QuasiExponentialFamily((1, 1))
    A = extract_WK(F)
    assert A[1] == -(S(1, 1) + S(2, 1))
    assert RatFun.coerce(A[2]) == RatFun(S(1, 1) * S(2, 1)) + RatFun(S(1, 1) - S(2, 1), [(K2 - K1, 1)])
    Ainf = winfty(F)
    assert Ainf == {1: -(S(1, 1) + S(2, 1)), 2: S(1, 1) * S(2, 1)}
    one = QuasiExponentialFamily((3,))
    assert extract_WK(one) == {s: S(1, s) * (-1) ** s for s in (1, 2, 3)}
    assert winfty(one) == extract_WK(one)


def test_coincident_K_rejected():
    with pytest.raises((ValueError, ZeroDivisionError)):
        extract_WK(QuasiExponentialFamily((1, 1), K=(2, 2)))


def test_one_dimensional_fundamental_operator():
    c = fundamental_coefficients(QuasiExponentialFamily((1,)), 3)
    assert c == {(1, 0): -K1, (1, 1): MPoly.const(-1), (1, 2): S(1, 1), (1, 3): -S(1, 1) ** 2}


@pytest.mark.parametrize("lam,K", [((1, 1), None), ((2, 0), None), ((2, 1), (Rat(1), Rat(3))), ((1, 1, 1), None)])
def test_kernel_and_factorization(lam, K):
    F = QuasiExponentialFamily(lam, K)
    assert kernel_check(F, 4).passed
    assert factorization_check(F, 4 if len(lam) < 3 else 3).passed


def test_kernel_singular_mode():
    assert kernel_check(QuasiExponentialFamily((2, 1), singular=True), 4).passed


def test_eta_examples():
    lam = (2, 1)
    assert eta_iso(-S(1, 1), lam) == CohClass.from_rep(MPoly.var("g.1.1") + MPoly.var("g.1.2"), lam)
    assert eta_iso(S(1, 1) * S(2, 1), (1, 1)) == CohClass.from_rep(MPoly.var("g.1.1") * MPoly.var("g.2.1"), (1, 1))
    assert lemma43_check(lam).passed


def test_gap_rule():
    F = QuasiExponentialFamily((1, 1), singular=True)
    assert F.degrees == (2, 1) and F.exponent_set == {2, 1}
    assert F.sigma_names() == ["S.1.2", "S.2.1"]
    with pytest.raises(ValueError):
        QuasiExponentialFamily((1, 2), singular=True)


def test_lowest_singular_vector_desk():
    deg, vecs, mult = lowest_singular_vector((1, 1))
    assert (deg, mult) == (-1, 1)


def test_singular_case_rank_transport():
    out = singular_case_check((1, 1), 3)
    assert out.passed, out.witnesses
    assert singular_case_check((3,), 3).passed


def test_singular_case_degree_discrepancy_frozen():
    out = singular_case_check((2, 1), 4)
    assert out.details["lowest_degree"] == -2 and out.details["predicted_degree"] == -1
    assert all(r["F"] == r["B"] == r["joint"] for r in out.details["ranks"].values())


@pytest.mark.parametrize("sign", [1, -1])
def test_langlands_limit_small(sign):
    out = langlands_limit_check((1, 1), sign, [100, 1000, 10000], 3, generic_point(2, 0))
    assert out.passed, out.details
