"""
Exact multivariate polynomials over the rationals.

Variables live in four namespaces and are addressed by name:

    z.s      equivariant parameters z_1 .. z_n
    g.i.j    Chern roots gamma_{ij} of the i-th tautological quotient
    S.i.j    coefficients Sigma_{ij} of the quasi-exponential polynomials
    K.i      the Bethe parameters K_i

A monomial is packed into a single Python int: field 0 (16 bits) holds the
total degree, field ``k + 1`` holds the exponent of the k-th registered
variable. Monomial multiplication is then integer addition, and comparing
``(degree, packed)`` is a graded-lexicographic term order. The registry
order only affects the internal packing; everything observable (printing,
sort keys, linear-algebra pivots) goes through name-based keys.
"""

from __future__ import annotations

import heapq
import itertools
import re
from functools import lru_cache

from gmpy2 import mpq

Rat = mpq

_FIELD = 16
_FMASK = (1 << _FIELD) - 1
_GUARD_BIT = 1 << (_FIELD - 1)

_NAME_RE = re.compile(r"^(z\.\d+|K\.\d+|g\.\d+\.\d+|S\.\d+\.\d+)$")

_VARS: list[str] = []
_INDEX: dict[str, int] = {}
_SORTKEY: list[tuple] = []


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide."""


class ConsistencyError(ArithmeticError):
    """An identity that must hold by construction failed at runtime."""


def _varkey(name: str) -> tuple:
    head, *idx = name.split(".")
    return (head, *(int(i) for i in idx))


def var_index(name: str) -> int:
    i = _INDEX.get(name)
    if i is None:
        if not _NAME_RE.match(name):
            raise ValueError(f"bad variable name {name!r}")
        i = len(_VARS)
        _VARS.append(name)
        _INDEX[name] = i
        _SORTKEY.append(_varkey(name))
    return i


def _shift(i: int) -> int:
    return _FIELD * (i + 1)


def pack(exps: dict[str, int]) -> int:
    m = 0
    deg = 0
    for name, e in exps.items():
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            m += e << _shift(var_index(name))
            deg += e
    return m + deg


def unpack(m: int) -> list[tuple[int, int]]:
    """List of (variable index, exponent) for a packed monomial."""
    out = []
    m >>= _FIELD
    i = 0
    while m:
        e = m & _FMASK
        if e:
            out.append((i, e))
        m >>= _FIELD
        i += 1
    return out


def mono_degree(m: int) -> int:
    return m & _FMASK


@lru_cache(maxsize=None)
def mono_key(m: int) -> tuple:
    """Name-based canonical sort key of a packed monomial."""
    return tuple(sorted((_SORTKEY[i], e) for i, e in unpack(m)))


def mono_str(m: int) -> str:
    parts = []
    for key, e in mono_key(m):
        name = ".".join(str(k) for k in key)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _guard(m: int) -> int:
    nfields = m.bit_length() // _FIELD + 1
    return sum(_GUARD_BIT << (_FIELD * k) for k in range(nfields))


def mono_divides(a: int, b: int) -> bool:
    """True if monomial ``a`` divides monomial ``b``."""
    g = _guard(max(a, b))
    return ((b | g) - a) & g == g


def _is_scalar(x) -> bool:
    return isinstance(x, (int, type(Rat(0)))) or type(x).__name__ == "Fraction"


class MPoly:
    """Sparse polynomial: a map from packed monomials to nonzero rationals.

    Instances are immutable by convention; every operation returns a new
    polynomial.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = terms
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c) -> "MPoly":
        c = Rat(c)
        return cls({0: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        return cls({pack({name: power}): Rat(1)})

    @classmethod
    def monomial(cls, exps: dict[str, int], coeff=1) -> "MPoly":
        c = Rat(coeff)
        return cls({pack(exps): c} if c else {})

    @classmethod
    def from_terms(cls, items) -> "MPoly":
        """Build from an iterable of (exponent dict, coefficient)."""
        out: dict[int, Rat] = {}
        for exps, c in items:
            m = pack(exps)
            out[m] = out.get(m, 0) + Rat(c)
        return cls({m: c for m, c in out.items() if c})

    @staticmethod
    def coerce(x) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        if _is_scalar(x):
            return MPoly.const(x)
        return NotImplemented

    # -- basic protocol -----------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if _is_scalar(other):
            other = Rat(other)
            if not other:
                return not self.terms
            return len(self.terms) == 1 and self.terms.get(0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"MPoly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, key=lambda m: (-mono_degree(m), mono_key(m))):
            c = self.terms[m]
            if m == 0:
                body = str(c)
            elif c == 1:
                body = mono_str(m)
            elif c == -1:
                body = "-" + mono_str(m)
            else:
                body = f"{c}*{mono_str(m)}"
            out.append(body)
        return " + ".join(out).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------
    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        other = MPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = MPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c0 = Rat(other)
            if not c0:
                return MPoly()
            return MPoly({m: c * c0 for m, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Rat] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        return MPoly({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / Rat(other))
        if isinstance(other, MPoly) and other.is_constant() and other:
            return self * (1 / other.constant_value())
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, m: int, c=1) -> "MPoly":
        c = Rat(c)
        return MPoly({k + m: v * c for k, v in self.terms.items()})

    # -- inspection ---------------------------------------------------
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Rat:
        """Coefficient of the empty monomial."""
        return self.terms.get(0, Rat(0))

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly({m: c for m, c in self.terms.items() if mono_degree(m) == d})

    def variables(self) -> set[str]:
        out = set()
        for m in self.terms:
            out.update(_VARS[i] for i, _ in unpack(m))
        return out

    def exponents(self, m: int) -> dict[str, int]:
        return {_VARS[i]: e for i, e in unpack(m)}

    def items_named(self):
        """Terms as (exponent dict, coefficient), in canonical order."""
        for m in sorted(self.terms, key=lambda m: (-mono_degree(m), mono_key(m))):
            yield self.exponents(m), self.terms[m]

    def leading(self) -> tuple[int, Rat]:
        m = max(self.terms, key=lambda m: (m & _FMASK, m))
        return m, self.terms[m]

    def degree_in(self, names) -> int:
        idx = {var_index(n) for n in names}
        best = -1
        for m in self.terms:
            best = max(best, sum(e for i, e in unpack(m) if i in idx))
        return best

    def max_abs_coeff(self) -> Rat:
        return max((abs(c) for c in self.terms.values()), default=Rat(0))

    # -- substitution -------------------------------------------------
    def subs(self, mapping: dict) -> "MPoly":
        """Substitute variables by polynomials or rationals."""
        table = {}
        for name, val in mapping.items():
            table[var_index(name)] = MPoly.coerce(val)
        powers: dict[tuple[int, int], MPoly] = {}
        out = MPoly()
        for m, c in self.terms.items():
            keep = 0
            kdeg = 0
            factor = MPoly.const(c)
            for i, e in unpack(m):
                if i in table:
                    p = powers.get((i, e))
                    if p is None:
                        p = table[i] ** e
                        powers[(i, e)] = p
                    factor = factor * p
                else:
                    keep += e << _shift(i)
                    kdeg += e
            out = out + factor.mul_monomial(keep + kdeg)
        return out

    def rename(self, mapping: dict[str, str]) -> "MPoly":
        """Rename variables (a substitution by variables, done on exponents)."""
        table = {var_index(a): var_index(b) for a, b in mapping.items()}
        out: dict[int, Rat] = {}
        for m, c in self.terms.items():
            k = m & _FMASK
            for i, e in unpack(m):
                k += e << _shift(table.get(i, i))
            out[k] = out.get(k, 0) + c
        return MPoly({m: c for m, c in out.items() if c})

    def evaluate(self, values: dict) -> Rat:
        """Evaluate at rational values; every variable must be assigned."""
        vals = {var_index(n): Rat(v) for n, v in values.items()}
        total = Rat(0)
        for m, c in self.terms.items():
            t = c
            for i, e in unpack(m):
                try:
                    t *= vals[i] ** e
                except KeyError:
                    raise ValueError(f"no value for {_VARS[i]}") from None
            total += t
        return total

    # -- division -----------------------------------------------------
    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient of an exact division; raises NotDivisible otherwise."""
        other = MPoly.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self * (1 / other.constant_value())
        lm, lc = other.leading()
        rem = dict(self.terms)
        # max-heap of candidate leading monomials; stale entries are skipped
        heap = [(-(m & _FMASK), -m) for m in rem]
        heapq.heapify(heap)
        quot: dict[int, Rat] = {}
        while heap:
            _, negm = heapq.heappop(heap)
            m = -negm
            c = rem.pop(m, None)
            if c is None:
                continue
            if not mono_divides(lm, m):
                raise NotDivisible(f"{other} does not divide the dividend")
            q = m - lm
            qc = c / lc
            quot[q] = qc
            for mo, co in other.terms.items():
                if mo == lm:
                    continue
                k = mo + q
                old = rem.get(k)
                v = -co * qc if old is None else old - co * qc
                if v:
                    if old is None:
                        heapq.heappush(heap, (-(k & _FMASK), -k))
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return MPoly(quot)

    def divides(self, other: "MPoly") -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True


def z(s: int) -> MPoly:
    return MPoly.var(f"z.{s}")


def zvars(n: int) -> list[str]:
    return [f"z.{s}" for s in range(1, n + 1)]


def _as_polys(vars_) -> list[MPoly]:
    return [MPoly.var(v) if isinstance(v, str) else v for v in vars_]


def elementary_symmetric(s: int, vars_) -> MPoly:
    """The s-th elementary symmetric polynomial of the listed variables."""
    ps = _as_polys(vars_)
    if s == 0:
        return MPoly.const(1)
    if not 1 <= s <= len(ps):
        raise ValueError(f"elementary_symmetric: s={s} out of range 1..{len(ps)}")
    # e_s via the generating product, truncated at degree s
    coeffs = [MPoly.const(1)]
    for p in ps:
        nxt = coeffs + [MPoly()]
        for k in range(len(coeffs)):
            if k + 1 <= s:
                nxt[k + 1] = nxt[k + 1] + coeffs[k] * p
        coeffs = nxt[: s + 1]
    return coeffs[s]


def complete_homogeneous(k: int, vars_) -> MPoly:
    ps = _as_polys(vars_)
    if k < 0:
        return MPoly()
    if k == 0:
        return MPoly.const(1)
    total = MPoly()
    for combo in itertools.combinations_with_replacement(range(len(ps)), k):
        t = MPoly.const(1)
        for i in combo:
            t = t * ps[i]
        total = total + t
    return total


def power_sum(r: int, vars_) -> MPoly:
    ps = _as_polys(vars_)
    total = MPoly()
    for p in ps:
        total = total + p ** r
    return total


def vandermonde(vars_) -> MPoly:
    """prod_{i<j} (x_j - x_i)."""
    ps = _as_polys(vars_)
    if not ps:
        raise ValueError("vandermonde needs at least one variable")
    out = MPoly.const(1)
    for i, j in itertools.combinations(range(len(ps)), 2):
        out = out * (ps[j] - ps[i])
    return out


def block_resultant(blocks) -> MPoly:
    """prod over block pairs i<j, a in block i, b in block j, of (x_b - x_a)."""
    seen: set = set()
    for blk in blocks:
        for v in blk:
            key = v if isinstance(v, str) else str(v)
            if key in seen:
                raise ValueError(f"blocks overlap at {key}")
            seen.add(key)
    polys = [_as_polys(b) for b in blocks]
    out = MPoly.const(1)
    for i, j in itertools.combinations(range(len(polys)), 2):
        for a in polys[i]:
            for b in polys[j]:
                out = out * (b - a)
    return out


class RatFun:
    """Quotient of polynomials with a factored denominator.

    The denominator is kept as a tuple of (factor, exponent) pairs with
    distinct factors, which makes common denominators cheap to form (take
    the maximum exponent per factor) and avoids any gcd computation.
    Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=()):
        self.num = MPoly.coerce(num)
        merged: dict[MPoly, int] = {}
        for f, e in den:
            f = MPoly.coerce(f)
            if not f:
                raise ZeroDivisionError("zero denominator factor")
            if f.is_constant():
                self.num = self.num * (1 / f.constant_value()) ** e
                continue
            merged[f] = merged.get(f, 0) + e
        self.den = tuple((f, e) for f, e in merged.items() if e)
        self._cancel()

    def _cancel(self):
        if not self.num:
            self.den = ()
            return
        den = []
        num = self.num
        for f, e in self.den:
            while e > 0:
                try:
                    num = num.exact_div(f)
                except NotDivisible:
                    break
                e -= 1
            if e:
                den.append((f, e))
        self.num = num
        self.den = tuple(den)

    @staticmethod
    def coerce(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        p = MPoly.coerce(x)
        if p is NotImplemented:
            return NotImplemented
        return RatFun(p)

    @property
    def denominator(self) -> MPoly:
        out = MPoly.const(1)
        for f, e in self.den:
            out = out * f ** e
        return out

    def _common(self, other: "RatFun"):
        exps: dict[MPoly, int] = {f: e for f, e in self.den}
        for f, e in other.den:
            exps[f] = max(exps.get(f, 0), e)
        mine = dict(self.den)
        theirs = dict(other.den)
        a = self.num
        b = other.num
        for f, e in exps.items():
            if e - mine.get(f, 0):
                a = a * f ** (e - mine.get(f, 0))
            if e - theirs.get(f, 0):
                b = b * f ** (e - theirs.get(f, 0))
        return a, b, tuple(exps.items())

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = RatFun.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, _ = self._common(other)
        return a == b

    def __hash__(self):
        raise TypeError("RatFun is unhashable")

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    def __add__(self, other):
        other = RatFun.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        a, b, den = self._common(other)
        return RatFun(a + b, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFun.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RatFun.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        """Inverse; only available when the numerator is a constant."""
        if not self.num.is_constant() or not self.num:
            raise ArithmeticError("RatFun.inverse needs a nonzero constant numerator")
        return RatFun(self.denominator * (1 / self.num.constant_value()))

    @classmethod
    def reciprocal_of_product(cls, factors) -> "RatFun":
        """1 / prod(factors), factors being polynomials."""
        return cls(MPoly.const(1), [(f, 1) for f in factors])

    def subs(self, mapping) -> "RatFun":
        num = self.num.subs(mapping)
        den = [(f.subs(mapping), e) for f, e in self.den]
        for f, _ in den:
            if not f:
                raise ZeroDivisionError("substitution annihilates a denominator")
        return RatFun(num, den)

    def to_poly(self) -> MPoly:
        if self.den:
            raise NotDivisible("not a polynomial")
        return self.num

    def __repr__(self):
        if not self.den:
            return f"RatFun({self.num})"
        d = "*".join(f"({f})" + (f"^{e}" if e > 1 else "") for f, e in self.den)
        return f"RatFun(({self.num}) / {d})"
