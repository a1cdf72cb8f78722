"""
Truncated Laurent series in u^{-1} and differential operators in u.

A ``USeries`` stores ``sum_j c_j u^{-j}``. Negative ``j`` is the polynomial
part (``u^k`` sits at ``j = -k``). ``prec`` is the largest index whose
coefficient is known; ``None`` means the series is exact (a finite sum).
Products propagate precision like p-adic numbers do, so a coefficient is
never reported unless it is actually determined by the inputs.

Coefficients may come from any ring whose elements support ``+``, ``-``,
``*`` and truth testing, including noncommutative ones: products always keep
the left factor on the left.
"""

from __future__ import annotations

import itertools
from math import comb

from .poly import Rat

INF = float("inf")


def _p(prec):
    return INF if prec is None else prec


def _unp(prec):
    return None if prec == INF else int(prec)


def _mul(a, b):
    return a * b


def _inv(c):
    if hasattr(c, "inverse"):
        return c.inverse()
    if hasattr(c, "is_constant") and c.is_constant():
        return Rat(1) / c.constant_value()
    return Rat(1) / c


class USeries:
    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs=None, prec=None):
        cs = {}
        p = _p(prec)
        for j, c in (coeffs or {}).items():
            if j <= p and c:
                cs[j] = c
        self.coeffs = cs
        self.prec = prec

    @classmethod
    def constant(cls, c, prec=None):
        return cls({0: c}, prec)

    @classmethod
    def u_power(cls, k: int, c=1, prec=None):
        """c * u^k."""
        return cls({-k: Rat(c) if isinstance(c, int) else c}, prec)

    @classmethod
    def polynomial(cls, coeffs_by_degree: dict):
        """Exact series from {degree in u: coefficient}."""
        return cls({-d: c for d, c in coeffs_by_degree.items()})

    def __repr__(self):
        body = ", ".join(f"u^{-j}: {c}" for j, c in sorted(self.coeffs.items()))
        return f"USeries({{{body}}}, prec={self.prec})"

    @property
    def exact(self) -> bool:
        return self.prec is None

    def valuation(self):
        """Smallest index with a nonzero coefficient (prec + 1 if none)."""
        if self.coeffs:
            return min(self.coeffs)
        return _p(self.prec) + 1 if self.prec is not None else INF

    def degree(self) -> int:
        """Degree as a polynomial in u (largest -j)."""
        return -min(self.coeffs) if self.coeffs else -1

    def __getitem__(self, j):
        if j > _p(self.prec):
            raise IndexError(f"coefficient u^{-j} beyond precision {self.prec}")
        return self.coeffs.get(j, 0)

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, prec: int) -> "USeries":
        if prec > _p(self.prec):
            raise ValueError("cannot raise precision by truncation")
        return USeries(self.coeffs, prec)

    def map(self, f) -> "USeries":
        return USeries({j: f(c) for j, c in self.coeffs.items()}, self.prec)

    def __neg__(self):
        return USeries({j: -c for j, c in self.coeffs.items()}, self.prec)

    def __add__(self, other):
        if not isinstance(other, USeries):
            other = USeries.constant(other)
        prec = _unp(min(_p(self.prec), _p(other.prec)))
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out[j] + c if j in out else c
        return USeries(out, prec)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, USeries):
            other = USeries.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, USeries):
            return USeries({j: c * other for j, c in self.coeffs.items()}, self.prec)
        va, vb = self.valuation(), other.valuation()
        prec = min(_p(self.prec) + vb, _p(other.prec) + va)
        out = {}
        for ja, ca in self.coeffs.items():
            for jb, cb in other.coeffs.items():
                j = ja + jb
                if j > prec:
                    continue
                t = ca * cb
                out[j] = out[j] + t if j in out else t
        return USeries(out, _unp(prec))

    def __rmul__(self, other):
        return USeries({j: other * c for j, c in self.coeffs.items()}, self.prec)

    def derivative(self) -> "USeries":
        """d/du: u^{-j} -> -j u^{-j-1}."""
        out = {}
        for j, c in self.coeffs.items():
            if j:
                out[j + 1] = c * (-j)
        prec = None if self.prec is None else self.prec + 1
        return USeries(out, prec)

    def inverse(self, prec=None) -> "USeries":
        """Multiplicative inverse; the leading coefficient must be invertible.

        For an exact input the target precision has to be given.
        """
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a zero series")
        v = min(self.coeffs)
        lead_inv = _inv(self.coeffs[v])
        if self.prec is None:
            if prec is None:
                raise ValueError("inverse of an exact series needs a target precision")
            target = prec
        else:
            target = self.prec - 2 * v if prec is None else min(prec, self.prec - 2 * v)
        # x = c u^{-v} (1 + y) with y in u^{-1} Q[[u^{-1}]]
        rel = target + v
        y = {j - v: lead_inv * c for j, c in self.coeffs.items() if j != v and j - v <= rel}
        inv = {0: Rat(1)}
        # inv_k = -sum_{m>=1} y_m inv_{k-m}
        for k in range(1, rel + 1):
            acc = None
            for m in range(1, k + 1):
                ym = y.get(m)
                if ym is None or (k - m) not in inv:
                    continue
                t = ym * inv[k - m]
                acc = t if acc is None else acc + t
            if acc is not None and acc:
                inv[k] = -acc
        out = {k - v: c * lead_inv for k, c in inv.items()}
        return USeries(out, target)

    def equal_to(self, other, prec=None) -> bool:
        """Coefficientwise comparison up to the common (or given) precision."""
        p = min(_p(self.prec), _p(other.prec))
        if prec is not None:
            if prec > p:
                raise ValueError("requested precision not available")
            p = prec
        keys = {j for j in itertools.chain(self.coeffs, other.coeffs) if j <= p}
        return all(not (self.coeffs.get(j, 0) - other.coeffs.get(j, 0)) for j in keys)


class DiffOpSeries:
    """Differential operator sum_k a_k(u) d^k with series coefficients.

    Coefficients sit to the left of the derivatives. Composition uses
    d o f = f o d + f'.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {k: s for k, s in (coeffs or {}).items() if not s.is_zero() or s.prec is not None}

    @classmethod
    def d(cls, k: int = 1, one=Rat(1)):
        return cls({k: USeries.constant(one)})

    @classmethod
    def mult(cls, f: USeries):
        return cls({0: f})

    @classmethod
    def scalar(cls, c):
        return cls({0: USeries.constant(c)})

    @property
    def order(self) -> int:
        ks = [k for k, s in self.coeffs.items() if not s.is_zero()]
        return max(ks, default=-1)

    def coefficient(self, k: int) -> USeries:
        return self.coeffs.get(k, USeries())

    @property
    def prec(self):
        ps = [s.prec for s in self.coeffs.values() if s.prec is not None]
        return min(ps) if ps else None

    def __repr__(self):
        body = ", ".join(f"d^{k}: {s!r}" for k, s in sorted(self.coeffs.items(), reverse=True))
        return f"DiffOpSeries({body})"

    def __neg__(self):
        return DiffOpSeries({k: -s for k, s in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, DiffOpSeries):
            other = DiffOpSeries.scalar(other)
        out = dict(self.coeffs)
        for k, s in other.coeffs.items():
            out[k] = out[k] + s if k in out else s
        return DiffOpSeries(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, DiffOpSeries):
            other = DiffOpSeries.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, DiffOpSeries):
            return DiffOpSeries({k: s * other for k, s in self.coeffs.items()})
        return self.compose(other)

    def __rmul__(self, other):
        return DiffOpSeries({k: other * s for k, s in self.coeffs.items()})

    def compose(self, other: "DiffOpSeries") -> "DiffOpSeries":
        """self o other."""
        derivs: dict[tuple[int, int], USeries] = {}

        def nth(b, m):
            key = (b, m)
            if key not in derivs:
                derivs[key] = other.coeffs[b] if m == 0 else nth(b, m - 1).derivative()
            return derivs[key]

        out: dict[int, USeries] = {}
        for a, fa in self.coeffs.items():
            for b in other.coeffs:
                for m in range(a + 1):
                    g = nth(b, m)
                    t = fa * g
                    if comb(a, m) != 1:
                        t = t * Rat(comb(a, m))
                    k = a + b - m
                    out[k] = out[k] + t if k in out else t
        return DiffOpSeries(out)

    def truncate(self, prec: int) -> "DiffOpSeries":
        return DiffOpSeries({k: s.truncate(prec) for k, s in self.coeffs.items()})

    def equal_to(self, other: "DiffOpSeries", prec=None) -> bool:
        ks = set(self.coeffs) | set(other.coeffs)
        for k in ks:
            a = self.coeffs.get(k, USeries(prec=self.prec))
            b = other.coeffs.get(k, USeries(prec=other.prec))
            if not a.equal_to(b, prec):
                return False
        return True

    def first_difference(self, other: "DiffOpSeries", prec=None):
        """(power of d, index j, difference) of the first mismatch, or None."""
        for k in sorted(set(self.coeffs) | set(other.coeffs), reverse=True):
            a = self.coeffs.get(k, USeries(prec=self.prec))
            b = other.coeffs.get(k, USeries(prec=other.prec))
            p = min(_p(a.prec), _p(b.prec))
            if prec is not None:
                p = min(p, prec)
            for j in sorted(set(a.coeffs) | set(b.coeffs)):
                if j > p:
                    break
                diff = a.coeffs.get(j, 0) - b.coeffs.get(j, 0)
                if diff:
                    return k, j, diff
        return None


def permutations_with_sign(n: int):
    """All permutations of range(n) paired with their signs."""
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        yield perm, (-1) ** inv


def rdet(matrix):
    """Row determinant: sum_sigma sgn(sigma) a_{1 s(1)} a_{2 s(2)} ... a_{N s(N)}.

    Factors are multiplied in row order, so noncommuting entries (such as
    differential operators) are handled correctly.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("rdet needs a square matrix")
    precs = set()
    for row in matrix:
        for x in row:
            if isinstance(x, (DiffOpSeries, USeries)) and x.prec is not None:
                precs.add(x.prec)
    if len(precs) > 1:
        raise ValueError(f"rdet entries have mismatched truncation orders {sorted(precs)}")
    total = None
    for perm, sign in permutations_with_sign(n):
        term = matrix[0][perm[0]]
        for r in range(1, n):
            term = term * matrix[r][perm[r]]
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total
