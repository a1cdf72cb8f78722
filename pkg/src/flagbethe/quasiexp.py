"""
Spaces of quasi-exponentials, their Wronskians and the fundamental operator.

A quasi-exponential e^{K u} p(u) is kept as the pair (K, p) with p an exact
``USeries`` polynomial in u (negative indices). Derivatives act by
p -> K p + p', so the exponential never needs to be expanded. Coefficients
are ``RatFun`` values, which lets symbolic K produce the (K_j - K_i)
denominators that appear after dividing by the Wronskian.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .bethe import (
    CheckOutcome,
    UEAElement,
    _weight_action,
    apply_uea,
    expand_universal_operator,
    ratios_ok,
    sweep_ratios,
    zone_values,
)
from .cohomology import CohClass, gvars, i_minus, integrate
from .linalg import inverse, matmul, max_abs_entry, rank
from .outcome import LIMIT
from .poly import ConsistencyError, MPoly, Rat, RatFun, elementary_symmetric, mono_key, zvars
from .series import DiffOpSeries, USeries
from .tensor import (
    FracVElement,
    check_weight,
    flag_dimension,
    graded_module,
    is_dominant,
    numerator_degree,
    row_key,
    singular_vectors_exact,
    weight_words,
    word_to_blocks,
)


def _rf(x) -> RatFun:
    return RatFun.coerce(x)


def _rf_to_poly(x):
    """Return an MPoly when x has no denominator, otherwise x itself."""
    if isinstance(x, RatFun) and not x.den:
        return x.num
    return x


class QuasiExponentialFamily:
    """Sigma_i(u) = e^{K_i u} p_i(u), i = 1..N.

    Generic mode: p_i = u^{l_i} + sum_{j=1}^{l_i} S_ij u^{l_i - j}, K symbolic
    (``K=None``) or rational. Singular mode: K = 0, deg p_i = d_i = l_i + N - i,
    and S_ij is present only when d_i - j is not in P = {d_1, ..., d_N}.
    """

    def __init__(self, lam, K=None, singular: bool = False):
        self.lam = check_weight(lam)
        self.N = len(self.lam)
        self.n = sum(self.lam)
        self.singular = singular
        if singular:
            if not is_dominant(self.lam):
                raise ValueError(f"singular mode needs a dominant weight, got {self.lam}")
            self.degrees = tuple(self.lam[i] + self.N - 1 - i for i in range(self.N))
            P = set(self.degrees)
            self.exponent_set = P
            self.allowed = tuple(
                tuple(j for j in range(1, d + 1) if d - j not in P) for d in self.degrees
            )
            self.K = tuple(Rat(0) for _ in range(self.N))
        else:
            self.degrees = self.lam
            self.exponent_set = None
            self.allowed = tuple(tuple(range(1, m + 1)) for m in self.lam)
            self.K = None if K is None else tuple(Rat(k) for k in K)
            if self.K is not None and len(self.K) != self.N:
                raise ValueError(f"need {self.N} values of K")

    def sigma_names(self) -> list[str]:
        return [f"S.{i}.{j}" for i in range(1, self.N + 1) for j in self.allowed[i - 1]]

    def k(self, i: int):
        if self.K is None:
            return MPoly.var(f"K.{i}")
        return MPoly.const(self.K[i - 1])

    def p(self, i: int) -> USeries:
        d = self.degrees[i - 1]
        coeffs = {-d: _rf(1)}
        for j in self.allowed[i - 1]:
            coeffs[-(d - j)] = _rf(MPoly.var(f"S.{i}.{j}"))
        return USeries(coeffs)

    def functions(self, indices=None):
        indices = range(1, self.N + 1) if indices is None else indices
        return [(self.k(i), self.p(i)) for i in indices]

    def vandermonde_K(self) -> MPoly:
        out = MPoly.const(1)
        for i in range(1, self.N + 1):
            for j in range(i + 1, self.N + 1):
                out = out * (self.k(j) - self.k(i))
        return out


def qe_derivatives(K, p: USeries, upto: int) -> list[USeries]:
    """Polynomial parts of the first ``upto`` derivatives of e^{Ku} p(u)."""
    Kr = _rf(K)
    out = [p]
    for _ in range(upto):
        q = out[-1]
        out.append(q * Kr + q.derivative())
    return out


def _det(mat):
    n = len(mat)
    total = USeries()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = USeries.constant(_rf(1))
        for r in range(n):
            term = term * mat[r][perm[r]]
        total = total - term if inv % 2 else total + term
    return total


def wronskian_of(functions):
    """(sum of exponents, polynomial part) of the Wronskian of quasi-exponentials."""
    m = len(functions)
    rows = [qe_derivatives(K, p, m - 1) for K, p in functions]
    ksum = MPoly()
    for K, _ in functions:
        ksum = ksum + K
    if m == 0:
        return ksum, USeries.constant(_rf(1))
    return ksum, _det(rows)


def wronskian(F: QuasiExponentialFamily):
    return wronskian_of(F.functions())


def upoly_coeff(p: USeries, degree: int):
    return p.coeffs.get(-degree, _rf(0))


def leading_inverse(F: QuasiExponentialFamily, W: USeries):
    """1 / (leading coefficient of W), checked against its predicted value."""
    lead = _rf(upoly_coeff(W, F.n))
    if any(k < 0 for k in W.coeffs) and W.degree() > F.n:
        raise ConsistencyError("Wronskian has degree above n")
    if F.singular:
        want = MPoly.const(1)
        for i in range(F.N):
            for j in range(i + 1, F.N):
                want = want * (F.degrees[j] - F.degrees[i])
        if lead != want:
            raise ConsistencyError(f"Wronskian leading coefficient {lead} != {want}")
        return _rf(1 / want.constant_value())
    V = F.vandermonde_K()
    if lead != V:
        raise ConsistencyError(f"Wronskian leading coefficient {lead} != prod (K_j - K_i)")
    if not V:
        raise ValueError("coincident K values")
    if V.is_constant():
        return _rf(1 / V.constant_value())
    facs = [(F.k(j) - F.k(i), 1) for i in range(1, F.N + 1) for j in range(i + 1, F.N + 1)]
    return RatFun(MPoly.const(1), facs)


def extract_WK(F: QuasiExponentialFamily) -> dict:
    """A_s^K with Wr = e^{sum K u} V(K) (u^n + sum (-1)^s A_s u^{n-s})."""
    if F.singular:
        raise ValueError("use the singular Wronskian normalization")
    _, W = wronskian(F)
    inv = leading_inverse(F, W)
    out = {}
    for s in range(1, F.n + 1):
        c = upoly_coeff(W, F.n - s) * inv
        out[s] = _rf_to_poly(c if s % 2 == 0 else -c)
    return out


def extract_A(F: QuasiExponentialFamily) -> dict:
    """A_s for either mode (singular: divide by prod (d_j - d_i))."""
    _, W = wronskian(F)
    inv = leading_inverse(F, W)
    return {s: _rf_to_poly((upoly_coeff(W, F.n - s) * inv) * ((-1) ** s)) for s in range(1, F.n + 1)}


def winfty(F: QuasiExponentialFamily) -> dict:
    """A_s^infty from prod_i p_i(u) = u^n + sum (-1)^s A_s u^{n-s}."""
    prod = USeries.constant(_rf(1))
    for i in range(1, F.N + 1):
        prod = prod * F.p(i)
    return {s: _rf_to_poly(upoly_coeff(prod, F.n - s) * ((-1) ** s)) for s in range(1, F.n + 1)}


@lru_cache(maxsize=None)
def _fundamental_cached(lam, K, singular, jmax):
    F = QuasiExponentialFamily(lam, K, singular)
    return _build_fundamental(F, jmax)


def _build_fundamental(F: QuasiExponentialFamily, jmax: int) -> DiffOpSeries:
    N = F.N
    rows = [qe_derivatives(K, p, N) for K, p in F.functions()]
    _, W = wronskian(F)
    inv_lead = leading_inverse(F, W)
    Wn = W * inv_lead
    prec = jmax + F.n + 1
    Winv = Wn.inverse(prec) * inv_lead
    coeffs = {}
    for k in range(N + 1):
        cols = [c for c in range(N + 1) if c != k]
        minor = _det([[rows[r][c] for c in cols] for r in range(N)])
        if (N + k) % 2:
            minor = -minor
        if k == N:
            if not (minor * inv_lead - Wn).is_zero():
                raise ConsistencyError("top coefficient of the fundamental operator is not the Wronskian")
            coeffs[k] = USeries.constant(_rf(1))
            continue
        coeffs[k] = (minor * Winv).truncate(jmax)
    return DiffOpSeries(coeffs)


def build_fundamental_diffop(F: QuasiExponentialFamily, jmax: int) -> DiffOpSeries:
    """d^N + sum_i F_i(u) d^{N-i}, coefficients known through u^{-jmax}."""
    return _fundamental_cached(F.lam, F.K, F.singular, jmax)


def fundamental_coefficients(F: QuasiExponentialFamily, jmax: int) -> dict:
    """{(i, j): F_ij} for 1 <= i <= N, 0 <= j <= jmax."""
    op = build_fundamental_diffop(F, jmax)
    out = {}
    for i in range(1, F.N + 1):
        ser = op.coefficient(F.N - i)
        for j in range(jmax + 1):
            out[(i, j)] = _rf_to_poly(ser.coeffs.get(j, _rf(0)))
    return out


def apply_to_quasiexp(op: DiffOpSeries, K, p: USeries) -> USeries:
    """Polynomial-times-series part of op(e^{Ku} p)."""
    N = op.order
    ders = qe_derivatives(K, p, N)
    total = USeries(prec=op.prec)
    for k, s in op.coeffs.items():
        total = total + s * ders[k]
    return total


def kernel_check(F: QuasiExponentialFamily, jmax: int) -> CheckOutcome:
    op = build_fundamental_diffop(F, jmax)
    wit = []
    for i, (K, p) in enumerate(F.functions(), start=1):
        res = apply_to_quasiexp(op, K, p)
        bad = [j for j, c in res.coeffs.items() if c]
        if bad:
            wit.append(f"D(Sigma_{i}) has nonzero u^{-min(bad)} coefficient (known to u^-{res.prec})")
    return CheckOutcome(not wit, wit)


def _rf_inverse(x: RatFun) -> RatFun:
    if x.num.is_constant():
        return x.inverse()
    return RatFun(x.denominator, [(x.num, 1)])


def log_derivative(Y: USeries, prec: int) -> USeries:
    """Y'/Y for a polynomial Y in u, as a u^{-1} series known to u^{-prec}."""
    inv = _rf_inverse(_rf(Y.coeffs[min(Y.coeffs)]))
    Yn = Y * inv
    d = Y.degree()
    return (Yn.derivative() * Yn.inverse(prec + d)).truncate(prec)


def factorization_check(F: QuasiExponentialFamily, jmax: int) -> CheckOutcome:
    """D_Sigma = prod_i (d - y_i'/y_i + y_{i+1}'/y_{i+1}) with y_i = Wr(Sigma_i..Sigma_N)."""
    N = F.N
    ys = []
    for i in range(1, N + 1):
        ksum, Y = wronskian_of(F.functions(range(i, N + 1)))
        ys.append((ksum, Y))
    logs = [USeries.constant(_rf(ksum), jmax) + log_derivative(Y, jmax) for ksum, Y in ys]
    logs.append(USeries(prec=jmax))
    prod = None
    for i in range(N):
        L = DiffOpSeries({1: USeries.constant(_rf(1)), 0: logs[i + 1] - logs[i]})
        prod = L if prod is None else prod * L
    op = build_fundamental_diffop(F, jmax)
    diff = op.first_difference(prod.truncate(jmax), jmax)
    if diff is None:
        return CheckOutcome(True, [], "exact", {"jmax": jmax})
    k, j, val = diff
    return CheckOutcome(False, [f"coefficient of d^{k} u^-{j} differs by {val}"], "exact", {"jmax": jmax})


# -- the isomorphism eta -----------------------------------------------------------


def eta_substitution(lam, names=None) -> dict:
    """S.i.s -> (-1)^s e_s(gamma_i1, ..., gamma_i,l_i)."""
    lam = check_weight(lam)
    out = {}
    for i, m in enumerate(lam, start=1):
        for s in range(1, m + 1):
            out[f"S.{i}.{s}"] = elementary_symmetric(s, gvars(i, m)) * ((-1) ** s)
    return out


def eta_iso(x, lam) -> CohClass:
    x = _rf_to_poly(x)
    if isinstance(x, RatFun):
        raise ValueError("eta needs a polynomial in the Sigma variables")
    return CohClass.from_rep(x.subs(eta_substitution(lam)), lam)


def eta_point_values(lam, zvals: dict) -> list[dict]:
    """For each fixed point I, the numeric values S.i.s = (-1)^s e_s(z_{I_i})."""
    lam = check_weight(lam)
    N = len(lam)
    out = []
    for w in weight_words(lam):
        blocks = word_to_blocks(w, N)
        vals = {}
        for i, blk in enumerate(blocks, start=1):
            zs = [zvals[f"z.{a}"] for a in blk]
            es = [Rat(1)]
            for x in zs:
                es = [a + b for a, b in zip(es + [Rat(0)], [Rat(0)] + [e * x for e in es])]
            for s in range(1, len(zs) + 1):
                vals[f"S.{i}.{s}"] = es[s] * ((-1) ** s)
        out.append(vals)
    return out


def _eval(x, vals) -> Rat:
    x = _rf_to_poly(x)
    if isinstance(x, RatFun):
        den = Rat(1)
        for f, e in x.den:
            den *= f.evaluate(vals) ** e
        return x.num.evaluate(vals) / den
    return MPoly.coerce(x).evaluate(vals) if x else Rat(0)


def lemma43_check(lam) -> CheckOutcome:
    """eta(A_s^infty) acts as sigma_s(z) on H_lam (on restriction vectors)."""
    F = QuasiExponentialFamily(lam)
    A = winfty(F)
    wit = []
    n = sum(F.lam)
    x = CohClass.from_rep(MPoly.var("g.1.1") if lam[0] else MPoly.const(1), lam)
    for s, a in A.items():
        lhs = eta_iso(a, lam) * x
        rhs = x * elementary_symmetric(s, zvars(n))
        if lhs != rhs:
            wit.append(f"s={s}")
    return CheckOutcome(not wit, wit)


# -- limits as K -> infinity -----------------------------------------------------------


def _norm(K, order, i, j) -> Rat:
    out = Rat((-1) ** i)
    for p in range(i - 1 if j else i):
        out *= K[order[p] - 1]
    return out


def wk_limit_discrepancy(lam, c) -> Rat:
    """max_s of the largest coefficient of A_s^K - A_s^infty at K in the zone."""
    F = QuasiExponentialFamily(lam, zone_values(len(lam), c))
    AK = extract_WK(F)
    Ainf = winfty(F)
    worst = Rat(0)
    for s in AK:
        d = MPoly.coerce(AK[s]) - MPoly.coerce(Ainf[s])
        worst = max(worst, d.max_abs_coeff())
    return worst


def lemma44_discrepancy(lam, c, jmax: int) -> Rat:
    """Normalized F^K_ij against sum_{m >= i} p_m'/p_m (and 1 for j = 0)."""
    lam = check_weight(lam)
    N = len(lam)
    K = zone_values(N, c)
    order = tuple(range(1, N + 1))
    F = QuasiExponentialFamily(lam, K)
    coeffs = fundamental_coefficients(F, jmax)
    Finf = QuasiExponentialFamily(lam)
    logs = []
    for m in range(1, N + 1):
        p = Finf.p(m)
        logs.append(log_derivative(p, jmax) if p.degree() > 0 else USeries(prec=jmax))
    worst = Rat(0)
    for i in range(1, N + 1):
        target = USeries(prec=jmax)
        for m in range(i, N + 1):
            target = target + logs[m - 1]
        for j in range(jmax + 1):
            got = MPoly.coerce(coeffs[(i, j)]) * (1 / _norm(K, order, i, j))
            want = MPoly.const(1) if j == 0 else MPoly.coerce(_rf_to_poly(target.coeffs.get(j, _rf(0))))
            worst = max(worst, (got - want).max_abs_coeff())
    return worst


def _b_matrices(lam, sign, basis_classes, zvals):
    """Columns: i+-(b_a) evaluated at z (as coefficient vectors over the words)."""
    lam = check_weight(lam)
    N = len(lam)
    words = weight_words(lam)
    cols = []
    for b in basis_classes:
        vals = b.evaluate(zvals)
        if sign < 0:
            from .cohomology import resultant

            vals = [v / resultant(w, N).evaluate(zvals) for v, w in zip(vals, words)]
        cols.append(vals)
    return [[cols[a][r] for a in range(len(cols))] for r in range(len(words))]


def _conj(Binv, M, Bm):
    return matmul(Binv, matmul(M, Bm))


def _limit_diagonal(lam, i: int, j: int, zvals: dict) -> list[Rat]:
    """Restrictions of xi(sum_{m >= i} e_mm (x) t^{j-1}) (or 1 when j = 0)."""
    N = len(lam)
    out = []
    for w in weight_words(lam):
        if j == 0:
            out.append(Rat(1))
            continue
        blocks = word_to_blocks(w, N)
        acc = Rat(0)
        for m in range(i, N + 1):
            for a in blocks[m - 1]:
                acc += zvals[f"z.{a}"] ** (j - 1)
        out.append(acc)
    return out


def _diag(vals):
    d = len(vals)
    return [[vals[r] if r == s else Rat(0) for s in range(d)] for r in range(d)]


def _maxdiff(A, B) -> Rat:
    return max_abs_entry([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(A, B)])


def langlands_discrepancy(lam, sign: int, c, jmax: int, zvals: dict, family=None) -> dict:
    """Discrepancies at zone scale c, all at one generic point z.

    ``tau``: distance of the pair (normalized B^K_ij on V+-_lam, i+- o
    multiplication by normalized eta(F^K_ij) o (i+-)^{-1}) from its limit
    pair (e-diagonal element, xi of it), in the i+--transported module basis.
    ``mu``: distance of ((i+-)^{-1} of normalized B^K_ij v+-, normalized
    eta(F^K_ij)) from (xi of the limit element, same). The ``*_direct``
    entries compare the two members of each pair with each other.
    """
    from .cohomology import module_basis, resultant

    lam = check_weight(lam)
    N = len(lam)
    order = tuple(range(1, N + 1))
    K = zone_values(N, c)
    if family is None:
        family = expand_universal_operator(N, jmax)
    act = _weight_action(lam)
    vals = dict(zvals)
    vals.update({f"K.{i + 1}": k for i, k in enumerate(K)})
    Fc = fundamental_coefficients(QuasiExponentialFamily(lam, K), jmax)
    points = eta_point_values(lam, zvals)
    words = weight_words(lam)
    d = len(words)
    Bm = _b_matrices(lam, sign, module_basis(lam).classes, zvals)
    Binv = inverse(Bm)
    if sign > 0:
        v = [Rat(1)] * d
        back = [Rat(1)] * d
    else:
        back = [resultant(w, N).evaluate(zvals) for w in words]
        v = [1 / r for r in back]
    out = {"tau": Rat(0), "tau_direct": Rat(0), "mu": Rat(0), "mu_direct": Rat(0)}
    for (i, j) in family.keys():
        if j > jmax:
            continue
        norm = _norm(K, order, i, j)
        M = [[x / norm for x in row] for row in act.numeric_matrix(family[(i, j)], vals)]
        etaF = [_eval(Fc[(i, j)], pt) / norm for pt in points]
        lim = _limit_diagonal(lam, i, j, zvals)
        cM = _conj(Binv, M, Bm)
        cF = _conj(Binv, _diag(etaF), Bm)
        cL = _conj(Binv, _diag(lim), Bm)
        out["tau"] = max(out["tau"], _maxdiff(cM, cL), _maxdiff(cF, cL))
        out["tau_direct"] = max(out["tau_direct"], _maxdiff(cM, cF))
        Bv = [sum((M[r][s] * v[s] for s in range(d)), Rat(0)) * back[r] for r in range(d)]
        out["mu"] = max(out["mu"], _maxdiff([Bv], [lim]), _maxdiff([etaF], [lim]))
        out["mu_direct"] = max(out["mu_direct"], _maxdiff([Bv], [etaF]))
    return out


def langlands_limit_check(lam, sign: int, scales, jmax: int, zvals: dict, family=None) -> CheckOutcome:
    """Convergence of eta o tau^K and eta o mu^K under the zone sweep.

    Passes when every discrepancy shrinks by a factor of at least 5 per
    step. A max over entries can mix 1/c and 1/c^2 terms, so ratios above
    20 occur before the 1/c term dominates; ``in_band`` records whether all
    ratios also fell in [5, 20].
    """
    N = len(lam)
    if family is None:
        family = expand_universal_operator(N, jmax)
    runs = [langlands_discrepancy(lam, sign, c, jmax, zvals, family) for c in scales]
    details = {"scales": [str(c) for c in scales]}
    ok = in_band = True
    for key in ("tau", "mu", "tau_direct", "mu_direct"):
        seq = [r[key] for r in runs]
        rat = sweep_ratios(seq)
        details[key + "_discrepancies"] = [float(x) for x in seq]
        details[key + "_ratios"] = rat
        ok = ok and ratios_ok(rat, 5.0, float("inf"))
        in_band = in_band and ratios_ok(rat)
    details["in_band"] = in_band
    wit = [] if ok else [f"discrepancy sweep out of range: {details}"]
    return CheckOutcome(ok, wit, LIMIT, details)


# -- the singular case ---------------------------------------------------------------


def lowest_singular_vector(lam, max_degree: int | None = None):
    """(degree, vector) of the lowest-degree singular vector of (1/D) V^-_lam."""
    lam = check_weight(lam)
    lo = -flag_dimension(lam)
    hi = 0 if max_degree is None else max_degree
    for k in range(lo, hi + 1):
        basis = singular_vectors_exact("minus", lam, k)
        if len(basis):
            return k, basis.elements, len(basis)
    raise ConsistencyError(f"no singular vector for {lam} up to degree {hi}")


def _monomials_in(gens, degree: int):
    """Multisets of generators (name, deg) with total degree ``degree``."""
    gens = sorted(gens)
    out = []

    def rec(start, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(gens)):
            g, d = gens[k]
            if d <= left:
                rec(k, left - d, acc + [g])

    rec(0, degree, [])
    return out


def _sigma_dimension(F: QuasiExponentialFamily, m: int) -> int:
    degs = [j for i in range(F.N) for j in F.allowed[i]]
    # coefficient of q^m in prod 1/(1 - q^d)
    ways = [1] + [0] * m
    for d in degs:
        for t in range(d, m + 1):
            ways[t] += ways[t - d]
    return ways[m]


def singular_case_check(lam, degree_bound: int = 4) -> CheckOutcome:
    """Transport of linear relations between B^{K=0}_ij v- and F_ij, degreewise.

    v- is the lowest-degree singular vector of (1/D) V^-_lam. For each degree m
    up to the bound we take all products of generators of positive degree
    (deg F_ij = j - i), plus 1 and the F_ii in degree zero, and compare ranks
    of the F-side, the B-side and the two sides stacked together.
    """
    lam = check_weight(lam)
    N = len(lam)
    n = sum(lam)
    F = QuasiExponentialFamily(lam, singular=True)
    jmax = degree_bound + N
    Fc = fundamental_coefficients(F, jmax)
    Bf = expand_universal_operator(N, jmax, K=[0] * N)
    predicted = sum((1 - i) * x for i, x in enumerate(lam, start=1))
    k0, vecs, mult = lowest_singular_vector(lam)
    v = vecs[0]
    details = {"P": sorted(F.exponent_set, reverse=True), "predicted_degree": predicted,
               "lowest_degree": k0, "lowest_multiplicity": mult, "ranks": {}}
    wit = []
    if k0 != predicted:
        wit.append(f"lowest singular vector has degree {k0}, predicted {predicted}")
    if mult != 1:
        wit.append(f"lowest singular degree {k0} has dimension {mult}")
    gens = [((i, j), j - i) for (i, j) in Fc if j - i >= 1 and j - i <= degree_bound]
    for (i, j) in list(Fc):
        if j < i and Fc[(i, j)]:
            wit.append(f"F_{i}{j} should vanish")
        if j < i and Bf[(i, j)]:
            wit.append(f"B_{i}{j} should vanish at K = 0")
    for m in range(degree_bound + 1):
        monos = [()] + [((i, i),) for i in range(1, N + 1)] if m == 0 else _monomials_in(gens, m)
        frows, brows = [], []
        for mono in monos:
            f = MPoly.const(1)
            for g in mono:
                f = f * MPoly.coerce(Fc[g])
            frows.append(dict(f.terms))
            x = v
            for g in reversed(mono):
                x = apply_uea(Bf[g], x)
            brows.append(x.num.to_row())
        fkeys = sorted({k for r in frows for k in r}, key=mono_key)
        bkeys = sorted({k for r in brows for k in r}, key=row_key)
        Fm = [[r.get(k, 0) for k in fkeys] for r in frows]
        Bmat = [[r.get(k, 0) for k in bkeys] for r in brows]
        joint = [a + b for a, b in zip(Fm, Bmat)]
        rf, rb, rj = rank(Fm), rank(Bmat), rank(joint)
        dim = _sigma_dimension(F, m)
        details["ranks"][m] = {"F": rf, "B": rb, "joint": rj, "dim": dim, "monomials": len(monos)}
        if not (rf == rb == rj):
            wit.append(f"degree {m}: rank F {rf}, rank B {rb}, joint {rj}")
        if m > 0 and rf != dim:
            wit.append(f"degree {m}: F spans {rf} of {dim}")
    return CheckOutcome(not wit, wit, "exact", details)
