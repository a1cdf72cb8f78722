"""
Bethe algebras: the universal operator, its coefficients as elements of the
enveloping algebra of gl_N[t], and their action on the tensor module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import max_abs_entry
from .outcome import LIMIT, CheckOutcome
from .poly import MPoly, Rat, power_sum, zvars
from .series import DiffOpSeries, USeries, rdet
from .tensor import VElement, act_generator, check_weight, weight_words

Gen = tuple  # (a, b, r) meaning e_ab (x) t^r


class UEAElement:
    """Finite sum of ordered generator words with polynomial coefficients.

    ``terms`` maps a tuple of generators ``((a, b, r), ...)`` (leftmost
    factor first) to an ``MPoly``, normally in the K variables. Words are
    never reordered, so the element is exactly what the row determinant
    produced.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            c = MPoly.coerce(c)
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def scalar(cls, c) -> "UEAElement":
        return cls({(): c})

    @classmethod
    def generator(cls, a: int, b: int, r: int = 0, c=1) -> "UEAElement":
        return cls({((a, b, r),): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __repr__(self):
        parts = []
        for w, c in sorted(self.terms.items()):
            word = "".join(f"[e{a}{b}t^{r}]" for a, b, r in w) or "1"
            parts.append(f"({c}){word}")
        return "UEAElement(" + (" + ".join(parts) or "0") + ")"

    def __neg__(self):
        return UEAElement({w: -c for w, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            other = UEAElement.scalar(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return UEAElement(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            other = UEAElement.scalar(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            return UEAElement({w: c * other for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return UEAElement(out)

    def __rmul__(self, other):
        return UEAElement({w: other * c for w, c in self.terms.items()})

    def subs(self, mapping: dict) -> "UEAElement":
        return UEAElement({w: c.subs(mapping) for w, c in self.terms.items()})

    def commutator(self, other: "UEAElement") -> "UEAElement":
        return self * other - other * self

    def max_t_power(self) -> int:
        return max((r for w in self.terms for _, _, r in w), default=0)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)


def current_series(a: int, b: int, prec: int) -> USeries:
    """e_ab(u) = sum_{s >= 0} (e_ab (x) t^s) u^{-s-1}, known to u^{-prec}."""
    return USeries({s + 1: UEAElement.generator(a, b, s) for s in range(prec)}, prec)


def _kvar(i: int) -> MPoly:
    return MPoly.var(f"K.{i}")


def universal_matrix(N: int, prec: int, K=None):
    """Entries delta_ab (d - K_a) - e_ba(u) as operator series.

    ``K`` is None (symbolic K_1..K_N) or a sequence of rationals.
    """
    one = UEAElement.scalar(1)
    rows = []
    for a in range(1, N + 1):
        row = []
        for b in range(1, N + 1):
            e = current_series(b, a, prec)
            if a == b:
                ka = _kvar(a) if K is None else MPoly.const(K[a - 1])
                coeff0 = USeries.constant(UEAElement.scalar(-ka), prec) - e
                row.append(DiffOpSeries({1: USeries.constant(one), 0: coeff0}))
            else:
                row.append(DiffOpSeries({0: -e}))
        rows.append(row)
    return rows


@dataclass
class BetheFamily:
    """The coefficients B_ij of the universal operator, 1 <= i <= N, 0 <= j <= jmax."""

    N: int
    jmax: int
    k_mode: str = "symbolic"
    K: tuple | None = None
    B: dict = field(default_factory=dict)

    def __getitem__(self, ij) -> UEAElement:
        return self.B[ij]

    def keys(self):
        return sorted(self.B)

    def with_K(self, values) -> "BetheFamily":
        """Substitute numeric K into a symbolic family."""
        if self.K is not None:
            raise ValueError("family already has numeric K")
        values = tuple(Rat(v) for v in values)
        if len(values) != self.N:
            raise ValueError(f"need {self.N} values of K")
        sub = {f"K.{i + 1}": v for i, v in enumerate(values)}
        return BetheFamily(self.N, self.jmax, "values", values,
                           {ij: E.subs(sub) for ij, E in self.B.items()})


def expand_universal_operator(N: int, jmax: int, K=None) -> BetheFamily:
    """Expand rdet of the universal matrix and read off B_ij for j <= jmax.

    Every u^{-j} coefficient of a product of entries only involves entry
    coefficients of index <= j (entries have no positive u-powers and
    differentiation only raises the index), so computing the entries to
    precision jmax is exact for the requested coefficients.
    """
    if N < 1 or jmax < 0:
        raise ValueError("need N >= 1 and jmax >= 0")
    op = rdet(universal_matrix(N, jmax, K))
    B = {}
    for i in range(1, N + 1):
        ser = op.coefficient(N - i)
        for j in range(jmax + 1):
            B[(i, j)] = ser.coeffs.get(j, UEAElement())
    lead = op.coefficient(N)
    if not (lead.coeffs.keys() <= {0} and lead[0] == UEAElement.scalar(1)):
        raise AssertionError("universal operator is not monic")
    mode = "symbolic" if K is None else "values"
    return BetheFamily(N, jmax, mode, None if K is None else tuple(Rat(k) for k in K), B)


def binfty_generators(N: int, jmax: int) -> list[UEAElement]:
    """The diagonal generators e_ii (x) t^j spanning the limit algebra."""
    return [UEAElement.generator(i, i, j) for i in range(1, N + 1) for j in range(jmax + 1)]


# -- action on the tensor module -------------------------------------------


def apply_uea(E: UEAElement, x):
    """Apply E to x, generators acting right to left."""
    acc = None
    for word, c in E.terms.items():
        y = x
        for a, b, r in reversed(word):
            y = act_generator(a, b, r, y)
            if not y:
                break
        if not y:
            continue
        y = y.scale(c)
        acc = y if acc is None else acc + y
    if acc is None:
        return x.scale(0)
    return acc


class WeightAction:
    """Matrices of UEA elements on the weight space V_lam (x) Q[z].

    The action of gl_N[t] is Q[z]-linear, so an operator preserving the weight
    is determined by its d x d matrix on the words of weight lam. Columns are
    images of basis vectors. Word results are cached per basis vector, so the
    many words shared between B_ij reuse their suffix computations.
    """

    def __init__(self, lam):
        self.lam = check_weight(lam)
        self.N = len(self.lam)
        self.n = sum(self.lam)
        self.words = weight_words(self.lam)
        self.index = {w: k for k, w in enumerate(self.words)}
        self._cache: dict = {}

    def _apply_word(self, word, col: int) -> VElement:
        key = (word, col)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not word:
            out = VElement.basis(self.words[col], self.N)
        else:
            rest = self._apply_word(word[1:], col)
            a, b, r = word[0]
            out = act_generator(a, b, r, rest) if rest else rest
        self._cache[key] = out
        return out

    def word_matrix(self, word) -> list[list[MPoly]]:
        d = len(self.words)
        mat = [[MPoly() for _ in range(d)] for _ in range(d)]
        for col in range(d):
            y = self._apply_word(tuple(word), col)
            for w, p in y.terms.items():
                row = self.index.get(w)
                if row is None:
                    raise ValueError("operator does not preserve the weight")
                mat[row][col] = p
        return mat

    def matrix(self, E: UEAElement) -> list[list[MPoly]]:
        d = len(self.words)
        out = [[MPoly() for _ in range(d)] for _ in range(d)]
        for word, c in E.terms.items():
            wm = self.word_matrix(word)
            for r in range(d):
                for s in range(d):
                    if wm[r][s]:
                        out[r][s] = out[r][s] + wm[r][s] * c
        return out

    def numeric_matrix(self, E: UEAElement, values: dict) -> list[list[Rat]]:
        """Matrix of E at a point (values for z and, if symbolic, K)."""
        d = len(self.words)
        out = [[Rat(0)] * d for _ in range(d)]
        wcache = self._numeric_words(values)
        for word, c in E.terms.items():
            wm = wcache.get(word)
            if wm is None:
                wm = [[p.evaluate(values) if p else Rat(0) for p in row] for row in self.word_matrix(word)]
                wcache[word] = wm
            cv = c.evaluate(values)
            if not cv:
                continue
            for r in range(d):
                for s in range(d):
                    if wm[r][s]:
                        out[r][s] += cv * wm[r][s]
        return out

    def _numeric_words(self, values):
        key = tuple(sorted((k, str(v)) for k, v in values.items() if k.startswith("z.")))
        store = self.__dict__.setdefault("_num", {})
        return store.setdefault(key, {})


def matmul_poly(A, B):
    d = len(A)
    m = len(B[0]) if B else 0
    out = [[MPoly() for _ in range(m)] for _ in range(d)]
    for i in range(d):
        for k in range(len(B)):
            a = A[i][k]
            if not a:
                continue
            for j in range(m):
                if B[k][j]:
                    out[i][j] = out[i][j] + a * B[k][j]
    return out


def poly_commutator(A, B):
    AB = matmul_poly(A, B)
    BA = matmul_poly(B, A)
    return [[AB[i][j] - BA[i][j] for j in range(len(AB))] for i in range(len(AB))]


def first_nonzero(mat):
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            if x:
                return i, j, x
    return None


def commutativity_check(family: BetheFamily, lam, pairs=None, jmax=None) -> CheckOutcome:
    """[B_ij, B_kl] = 0 on V_lam, as exact matrices over Q[z] (and K)."""
    act = WeightAction(lam)
    jm = family.jmax if jmax is None else jmax
    keys = [(i, j) for (i, j) in family.keys() if j <= jm]
    mats = {ij: act.matrix(family[ij]) for ij in keys}
    if pairs is None:
        pairs = [(p, q) for a, p in enumerate(keys) for q in keys[a + 1:]]
    wit = []
    for p, q in pairs:
        nz = first_nonzero(poly_commutator(mats[p], mats[q]))
        if nz is not None:
            r, s, val = nz
            wit.append(f"[B{p}, B{q}] entry ({act.words[r]}, {act.words[s]}) = {val}")
    return CheckOutcome(not wit, wit, "exact", {"pairs": len(pairs), "dim": len(act.words)})


def weight_commutation_check(family: BetheFamily, lam, generators) -> CheckOutcome:
    """B_ij commute with the given degree-zero generators (a, b) on sum of weight spaces.

    For diagonal generators this is the U(h) statement. Off-diagonal ones change
    the weight, so we compare E B x with B E x on V_lam directly.
    """
    lam = check_weight(lam)
    N = len(lam)
    wit = []
    for (a, b) in generators:
        g = UEAElement.generator(a, b, 0)
        for ij in family.keys():
            E = family[ij]
            comm = E * g - g * E
            for w in weight_words(lam):
                x = VElement.basis(w, N)
                y = apply_uea(comm, x)
                if y:
                    wit.append(f"[B{ij}, e{a}{b}] on v{w} != 0")
                    break
    return CheckOutcome(not wit, wit)


def central_check(N: int, lam, rmax: int) -> CheckOutcome:
    """sum_i e_ii (x) t^r acts as multiplication by the power sum p_r(z)."""
    lam = check_weight(lam)
    n = sum(lam)
    wit = []
    for r in range(rmax + 1):
        E = UEAElement()
        for i in range(1, N + 1):
            E = E + UEAElement.generator(i, i, r)
        pr = power_sum(r, zvars(n))
        for w in weight_words(lam):
            x = VElement.basis(w, N, MPoly.var("z.1") + 1)
            if apply_uea(E, x) != x.scale(pr):
                wit.append(f"r={r}, v{w}")
    return CheckOutcome(not wit, wit)


def zone_values(N: int, c, order=None) -> tuple:
    """K in the asymptotic zone: K_{sigma(i)} = c^{N+1-i}."""
    order = tuple(range(1, N + 1)) if order is None else tuple(order)
    K = [Rat(0)] * N
    for pos, idx in enumerate(order):
        K[idx - 1] = Rat(c) ** (N - pos)
    return tuple(K)


def asymptotic_discrepancy(family: BetheFamily, lam, c, zvals: dict, order=None) -> Rat:
    """max over (i, j) and matrix entries of |normalized B_ij - limit| at one point.

    Normalization is (-1)^i K_{s1}..K_{s(i-1)} for j >= 1 and
    (-1)^i K_{s1}..K_{si} for j = 0, with limits sum_{m>=i} e_{sm sm} (x) t^{j-1}
    and 1 respectively.
    """
    if family.K is not None:
        raise ValueError("asymptotics need the symbolic family")
    N = family.N
    order = tuple(range(1, N + 1)) if order is None else tuple(order)
    K = zone_values(N, c, order)
    vals = dict(zvals)
    vals.update({f"K.{i + 1}": k for i, k in enumerate(K)})
    act = _weight_action(tuple(lam))
    d = len(act.words)
    worst = Rat(0)
    for (i, j) in family.keys():
        bm = act.numeric_matrix(family[(i, j)], vals)
        norm = Rat((-1) ** i)
        for p in range(i - 1 if j else i):
            norm *= K[order[p] - 1]
        if j:
            lim = UEAElement()
            for m in range(i, N + 1):
                s = order[m - 1]
                lim = lim + UEAElement.generator(s, s, j - 1)
            lm = act.numeric_matrix(lim, vals)
        else:
            lm = [[Rat(int(r == s)) for s in range(d)] for r in range(d)]
        diff = [[bm[r][s] / norm - lm[r][s] for s in range(d)] for r in range(d)]
        worst = max(worst, max_abs_entry(diff))
    return worst


_ACTIONS: dict = {}


def _weight_action(lam) -> WeightAction:
    act = _ACTIONS.get(lam)
    if act is None:
        act = _ACTIONS[lam] = WeightAction(lam)
    return act


def sweep_ratios(discrepancies) -> list:
    """Successive ratios d_k / d_{k+1}; an exactly-zero pair counts as converged."""
    out = []
    for a, b in zip(discrepancies, discrepancies[1:]):
        if not a and not b:
            out.append(None)
        elif not b:
            out.append(float("inf"))
        else:
            out.append(float(a / b))
    return out


def ratios_ok(ratios, lo=5.0, hi=20.0) -> bool:
    return all(r is None or lo <= r <= hi for r in ratios)


def asymptotic_limit_check(family: BetheFamily, lam, scales, zvals: dict, order=None) -> CheckOutcome:
    discs = [asymptotic_discrepancy(family, lam, c, zvals, order) for c in scales]
    ratios = sweep_ratios(discs)
    ok = ratios_ok(ratios)
    wit = [] if ok else [f"discrepancies {[float(x) for x in discs]} ratios {ratios}"]
    return CheckOutcome(ok, wit, LIMIT,
                        {"scales": [str(c) for c in scales],
                         "discrepancies": [float(x) for x in discs], "ratios": ratios})
