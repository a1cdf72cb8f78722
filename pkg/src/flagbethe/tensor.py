"""
The current-algebra module V^{(x)n} (x) Q[z_1..z_n] and its pieces.

A basis vector v_{i_1} (x) ... (x) v_{i_n} is stored as its *word*
``(i_1, ..., i_n)`` (colors 1..N). The decomposition ``I = (I_1..I_N)`` with
``I_c = {k : i_k = c}`` is the same data; ``word_to_blocks`` and
``blocks_to_word`` convert between the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .linalg import SparseEchelon, nullspace
from .poly import MPoly, Rat, elementary_symmetric, mono_key, pack, vandermonde, zvars

# -- weights and decompositions -------------------------------------------


def check_weight(lam) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if not lam:
        raise ValueError("empty weight")
    if any(x < 0 for x in lam):
        raise ValueError(f"weight {lam} has a negative component")
    return lam


def is_dominant(lam) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def all_weights(N: int, n: int) -> list[tuple[int, ...]]:
    """Every lambda in Z_{>=0}^N with |lambda| = n, in lexicographic order."""
    out = []
    for cut in itertools.combinations(range(n + N - 1), N - 1):
        parts, prev = [], -1
        for c in cut:
            parts.append(c - prev - 1)
            prev = c
        parts.append(n + N - 1 - prev - 1)
        out.append(tuple(parts))
    return sorted(out, reverse=True)


def dominant_weights(N: int, n: int) -> list[tuple[int, ...]]:
    return [lam for lam in all_weights(N, n) if is_dominant(lam)]


def multinomial(lam) -> int:
    out = factorial(sum(lam))
    for x in lam:
        out //= factorial(x)
    return out


def flag_dimension(lam) -> int:
    """Complex dimension of the partial flag variety: sum_{i<j} l_i l_j."""
    return sum(lam[i] * lam[j] for i in range(len(lam)) for j in range(i + 1, len(lam)))


def word_to_blocks(word, N: int) -> tuple[tuple[int, ...], ...]:
    blocks = [[] for _ in range(N)]
    for k, c in enumerate(word, start=1):
        blocks[c - 1].append(k)
    return tuple(tuple(b) for b in blocks)


def blocks_to_word(blocks) -> tuple[int, ...]:
    n = sum(len(b) for b in blocks)
    word = [0] * n
    for c, blk in enumerate(blocks, start=1):
        for k in blk:
            if word[k - 1]:
                raise ValueError("blocks overlap")
            word[k - 1] = c
    if not all(word):
        raise ValueError("blocks do not cover 1..n")
    return tuple(word)


@lru_cache(maxsize=None)
def weight_words(lam) -> tuple[tuple[int, ...], ...]:
    """All words of weight lam, sorted."""
    lam = check_weight(lam)
    letters = [c for c, m in enumerate(lam, start=1) for _ in range(m)]
    return tuple(sorted(set(itertools.permutations(letters))))


def enumerate_decompositions(lam) -> list[tuple[tuple[int, ...], ...]]:
    """The index set I_lambda: ordered set partitions with block sizes lam."""
    lam = check_weight(lam)
    return [word_to_blocks(w, len(lam)) for w in weight_words(lam)]


def word_weight(word, N: int) -> tuple[int, ...]:
    lam = [0] * N
    for c in word:
        lam[c - 1] += 1
    return tuple(lam)


# -- elements ---------------------------------------------------------------


class VElement:
    """An element sum_w v_w (x) p_w(z) of V^{(x)n} (x) Q[z]."""

    __slots__ = ("N", "n", "terms")

    def __init__(self, N: int, n: int, terms=None):
        self.N = N
        self.n = n
        self.terms = {w: p for w, p in (terms or {}).items() if p}

    @classmethod
    def basis(cls, word, N: int, poly=None) -> "VElement":
        word = tuple(word)
        return cls(N, len(word), {word: MPoly.const(1) if poly is None else MPoly.coerce(poly)})

    @classmethod
    def from_blocks(cls, blocks, poly=None) -> "VElement":
        return cls.basis(blocks_to_word(blocks), len(blocks), poly)

    @property
    def weight(self):
        ws = {word_weight(w, self.N) for w in self.terms}
        if len(ws) > 1:
            raise ValueError("element is not a weight vector")
        return ws.pop() if ws else None

    def coefficient(self, word) -> MPoly:
        return self.terms.get(tuple(word), MPoly())

    def _same(self, other):
        if (self.N, self.n) != (other.N, other.n):
            raise ValueError("elements of different modules")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, VElement):
            return (self.N, self.n) == (other.N, other.n) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __repr__(self):
        body = " + ".join(f"v{''.join(map(str, w))}*({p})" for w, p in sorted(self.terms.items()))
        return f"VElement({body or '0'})"

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for w, p in other.terms.items():
            out[w] = out[w] + p if w in out else p
        return VElement(self.N, self.n, out)

    def __neg__(self):
        return VElement(self.N, self.n, {w: -p for w, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VElement":
        """Multiply by a scalar or a polynomial in z."""
        return VElement(self.N, self.n, {w: p * c for w, p in self.terms.items()})

    __mul__ = scale
    __rmul__ = scale

    def degree(self) -> int:
        return max((p.degree() for p in self.terms.values()), default=-1)

    def map_coefficients(self, f) -> "VElement":
        return VElement(self.N, self.n, {w: f(p) for w, p in self.terms.items()})

    def evaluate(self, zvals: dict) -> dict:
        """Coefficients at a numeric point: {word: rational}."""
        return {w: p.evaluate(zvals) for w, p in self.terms.items()}

    def to_row(self) -> dict:
        row = {}
        for w, p in self.terms.items():
            for m, c in p.terms.items():
                row[(w, m)] = c
        return row

    @classmethod
    def from_row(cls, row: dict, N: int, n: int) -> "VElement":
        terms: dict = {}
        for (w, m), c in row.items():
            terms.setdefault(w, {})[m] = c
        return cls(N, n, {w: MPoly(t) for w, t in terms.items()})


def row_key(k):
    w, m = k
    return (w, mono_key(m))


@lru_cache(maxsize=None)
def discriminant(n: int) -> MPoly:
    """D = prod_{i<j} (z_j - z_i)."""
    return vandermonde(zvars(n))


class FracVElement:
    """The element x / D of (1/D) V, where D is the Vandermonde in z.

    Arithmetic only ever touches the numerator. ``degree`` counts the z-degree
    of x/D, i.e. the numerator degree shifted down by n(n-1)/2.
    """

    __slots__ = ("num",)

    def __init__(self, num: VElement):
        self.num = num

    @property
    def N(self):
        return self.num.N

    @property
    def n(self):
        return self.num.n

    @property
    def terms(self):
        return self.num.terms

    @property
    def weight(self):
        return self.num.weight

    @property
    def offset(self) -> int:
        return -self.n * (self.n - 1) // 2

    def degree(self) -> int:
        d = self.num.degree()
        return d + self.offset if d >= 0 else d

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, FracVElement):
            return self.num == other.num
        if other == 0:
            return not self.num
        return NotImplemented

    def __repr__(self):
        return f"FracVElement({self.num!r} / D)"

    def __add__(self, other):
        return FracVElement(self.num + other.num)

    def __sub__(self, other):
        return FracVElement(self.num - other.num)

    def __neg__(self):
        return FracVElement(-self.num)

    def scale(self, c) -> "FracVElement":
        return FracVElement(self.num.scale(c))

    __mul__ = scale
    __rmul__ = scale

    def evaluate(self, zvals: dict) -> dict:
        d = discriminant(self.n).evaluate(zvals)
        return {w: c / d for w, c in self.num.evaluate(zvals).items()}

    def to_row(self) -> dict:
        return self.num.to_row()


def _wrap_like(x, v: VElement):
    return FracVElement(v) if isinstance(x, FracVElement) else v


def _numerator(x) -> VElement:
    return x.num if isinstance(x, FracVElement) else x


# -- the current algebra action ----------------------------------------------


@lru_cache(maxsize=None)
def _zpow(s: int, r: int) -> int:
    return pack({f"z.{s}": r})


def act_generator(i: int, j: int, r: int, x):
    """(e_ij (x) t^r) x = sum_s (e_ij at slot s) (x) z_s^r."""
    v = _numerator(x)
    if not (1 <= i <= v.N and 1 <= j <= v.N):
        raise ValueError(f"generator e_{i}{j} out of range for N={v.N}")
    if r < 0:
        raise ValueError("negative t-power")
    out: dict = {}
    for w, p in v.terms.items():
        for s, c in enumerate(w):
            if c != j:
                continue
            nw = w[:s] + (i,) + w[s + 1:]
            q = p.mul_monomial(_zpow(s + 1, r)) if r else p
            out[nw] = out[nw] + q if nw in out else q
    return _wrap_like(x, VElement(v.N, v.n, out))


def sn_act(perm, x):
    """Action of sigma in S_n (``perm[k] = sigma(k)``, 0-based).

    Slot s moves to slot sigma(s) and z_k is replaced by z_{sigma(k)}.
    """
    v = _numerator(x)
    perm = tuple(perm)
    if sorted(perm) != list(range(v.n)):
        raise ValueError(f"{perm} is not a permutation of 0..{v.n - 1}")
    ren = {f"z.{k + 1}": f"z.{perm[k] + 1}" for k in range(v.n) if perm[k] != k}
    out = {}
    for w, p in v.terms.items():
        nw = [0] * v.n
        for s, c in enumerate(w):
            nw[perm[s]] = c
        out[tuple(nw)] = p.rename(ren) if ren else p
    return _wrap_like(x, VElement(v.N, v.n, out))


def perm_sign(perm) -> int:
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


def project_symmetric(x, sign: int = 1):
    """(1/n!) sum_sigma sign(sigma)^{(1-sign)/2} sigma(x)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    v = _numerator(x)
    acc: dict = {}
    for perm in itertools.permutations(range(v.n)):
        t = sn_act(perm, v)
        s = perm_sign(perm) if sign < 0 else 1
        for w, p in t.terms.items():
            q = p if s > 0 else -p
            acc[w] = acc[w] + q if w in acc else q
    scale = Rat(1, factorial(v.n))
    out = VElement(v.N, v.n, {w: p * scale for w, p in acc.items()})
    return _wrap_like(x, out)


def is_symmetric(x, sign: int = 1) -> bool:
    v = _numerator(x)
    for k in range(v.n - 1):
        perm = list(range(v.n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        t = sn_act(perm, v)
        if t != (v if sign > 0 else -v):
            return False
    return True


# -- Shapovalov forms ---------------------------------------------------------


def shapovalov(x: VElement, y: VElement) -> MPoly:
    """sum_I x_I y_I: the basis v_I is orthonormal, bilinear over Q[z]."""
    x._same(y)
    total = MPoly()
    for w, p in x.terms.items():
        q = y.terms.get(w)
        if q is not None:
            total = total + p * q
    return total


def shapovalov_pm(x: VElement, y: FracVElement) -> MPoly:
    """Pairing of V^+ with (1/D) V^-; the result is a symmetric polynomial."""
    from .poly import NotDivisible, ConsistencyError

    s = shapovalov(x, y.num)
    try:
        return s.exact_div(discriminant(x.n))
    except NotDivisible as exc:
        raise ConsistencyError("Shapovalov pairing is not divisible by D") from exc


# -- graded pieces and quotients by J -----------------------------------------


@dataclass
class GradedSubspaceBasis:
    weight: tuple
    degree: int
    elements: list = field(default_factory=list)
    space: str = "plus"

    def __len__(self):
        return len(self.elements)


class _Piece:
    """A finite-dimensional graded piece with a chosen basis and coordinates."""

    def __init__(self, elements, echelon):
        self.elements = elements
        self.echelon = echelon

    def coordinates(self, v: VElement) -> dict:
        rem, coords = self.echelon.coordinates(v.to_row())
        if rem:
            raise ValueError("vector is not in this piece")
        return coords


def _monomials(n: int, m: int):
    for combo in itertools.combinations_with_replacement(range(1, n + 1), m):
        exps: dict[str, int] = {}
        for s in combo:
            exps[f"z.{s}"] = exps.get(f"z.{s}", 0) + 1
        yield exps


class GradedModule:
    """Graded pieces of V^+_lam (sign +1) or V^-_lam (sign -1), with J-quotients.

    Degrees here are numerator z-degrees; ``graded_piece_quotient`` converts to
    the degrees of (1/D) V^- for the minus case.
    """

    def __init__(self, sign: int, lam):
        self.sign = sign
        self.lam = check_weight(lam)
        self.N = len(self.lam)
        self.n = sum(self.lam)
        self._full: dict[int, _Piece] = {}
        self._quot: dict[int, _Piece] = {}

    def full(self, m: int) -> _Piece:
        """Basis of the degree-m piece of V^{+-}_lam."""
        if m not in self._full:
            ech = SparseEchelon(key=row_key)
            elements = []
            if m >= 0:
                w0 = weight_words(self.lam)[0]
                for exps in _monomials(self.n, m):
                    x = project_symmetric(VElement.basis(w0, self.N, MPoly.monomial(exps)), self.sign)
                    if x and ech.add(x.to_row(), {len(elements): Rat(1)}):
                        elements.append(x)
            self._full[m] = _Piece(elements, ech)
        return self._full[m]

    def quotient(self, m: int) -> _Piece:
        """Representatives of the degree-m piece of V^{+-}_lam / J V^{+-}_lam."""
        if m not in self._quot:
            ech = SparseEchelon(key=row_key)
            for s in range(1, self.n + 1):
                if m - s < 0:
                    break
                sig = elementary_symmetric(s, zvars(self.n))
                for b in self.full(m - s).elements:
                    ech.add(b.scale(sig).to_row())
            reps = []
            for b in self.full(m).elements:
                if ech.add(b.to_row(), {len(reps): Rat(1)}):
                    reps.append(b)
            self._quot[m] = _Piece(reps, ech)
        return self._quot[m]


@lru_cache(maxsize=None)
def graded_module(sign: int, lam) -> GradedModule:
    return GradedModule(sign, tuple(lam))


def _space_sign(space) -> int:
    if space in ("plus", "+", 1):
        return 1
    if space in ("minus", "-", -1):
        return -1
    raise ValueError(f"unknown space {space!r}; use 'plus' or 'minus'")


def numerator_degree(space, n: int, k: int) -> int:
    return k if _space_sign(space) > 0 else k + n * (n - 1) // 2


def quotient_degree_range(space, lam) -> range:
    """Degrees where V^+_lam/J^+ (0..dim F) or (1/D)V^-_lam/J^- (-dim F..0) live."""
    dimf = flag_dimension(lam)
    return range(0, dimf + 1) if _space_sign(space) > 0 else range(-dimf, 1)


def graded_piece_quotient(space, lam, k: int) -> GradedSubspaceBasis:
    """Basis of the degree-k piece of V^+/J^+ or (1/D)V^-/J^- at weight lam."""
    lam = check_weight(lam)
    sign = _space_sign(space)
    n = sum(lam)
    piece = graded_module(sign, lam).quotient(numerator_degree(space, n, k))
    elems = piece.elements if sign > 0 else [FracVElement(e) for e in piece.elements]
    return GradedSubspaceBasis(lam, k, elems, "plus" if sign > 0 else "minus")


def graded_piece_full(space, lam, k: int) -> GradedSubspaceBasis:
    """Basis of the degree-k piece of V^+_lam or (1/D)V^-_lam itself."""
    lam = check_weight(lam)
    sign = _space_sign(space)
    piece = graded_module(sign, lam).full(numerator_degree(space, sum(lam), k))
    elems = piece.elements if sign > 0 else [FracVElement(e) for e in piece.elements]
    return GradedSubspaceBasis(lam, k, elems, "plus" if sign > 0 else "minus")


def quotient_coordinates(space, lam, k: int, x) -> list[Rat]:
    """Coordinates of x (a degree-k element at weight lam) in the quotient basis."""
    lam = tuple(lam)
    sign = _space_sign(space)
    piece = graded_module(sign, lam).quotient(numerator_degree(space, sum(lam), k))
    coords = piece.coordinates(_numerator(x))
    return [coords.get(t, Rat(0)) for t in range(len(piece.elements))]


def _raising_targets(lam):
    N = len(lam)
    for i in range(N):
        for j in range(i + 1, N):
            if lam[j] == 0:
                continue
            tgt = list(lam)
            tgt[i] += 1
            tgt[j] -= 1
            yield i + 1, j + 1, tuple(tgt)


def _kernel_of_raising(space, lam, k: int, quotient: bool) -> GradedSubspaceBasis:
    lam = check_weight(lam)
    if not is_dominant(lam):
        raise ValueError(f"singular vectors need a dominant weight, got {lam}")
    sign = _space_sign(space)
    n = sum(lam)
    m = numerator_degree(space, n, k)
    src_mod = graded_module(sign, lam)
    src = src_mod.quotient(m) if quotient else src_mod.full(m)
    cols = []
    for i, j, tgt in _raising_targets(lam):
        tmod = graded_module(sign, tgt)
        piece = tmod.quotient(m) if quotient else tmod.full(m)
        cols.append((i, j, piece))
    # matrix: rows = target coordinates, columns = source basis vectors
    rows = []
    for i, j, piece in cols:
        images = [piece.coordinates(act_generator(i, j, 0, b)) for b in src.elements]
        for t in range(len(piece.elements)):
            rows.append([img.get(t, Rat(0)) for img in images])
    kernel = nullspace(rows, len(src.elements)) if src.elements else []
    elems = []
    for vec in kernel:
        acc = VElement(src_mod.N, n)
        for c, b in zip(vec, src.elements):
            if c:
                acc = acc + b.scale(c)
        elems.append(acc if sign > 0 else FracVElement(acc))
    return GradedSubspaceBasis(lam, k, elems, "plus" if sign > 0 else "minus")


def singular_vectors(space, lam, k: int) -> GradedSubspaceBasis:
    """Degree-k singular vectors of V^+/J^+ or (1/D)V^-/J^- at dominant lam.

    Kernel of every e_ij (x) t^0 with i < j, computed on quotient
    representatives modulo J at the target weights.
    """
    return _kernel_of_raising(space, lam, k, quotient=True)


def singular_vectors_exact(space, lam, k: int) -> GradedSubspaceBasis:
    """Degree-k singular vectors of V^+_lam or (1/D)V^-_lam (no quotient)."""
    return _kernel_of_raising(space, lam, k, quotient=False)


def singular_character(space, lam) -> dict[int, int]:
    """{degree: dim} of the singular part of the J-quotient at lam."""
    out = {}
    for k in quotient_degree_range(space, lam):
        d = len(singular_vectors(space, lam, k))
        if d:
            out[k] = d
    return out


def quotient_character(space, lam) -> dict[int, int]:
    out = {}
    for k in quotient_degree_range(space, lam):
        d = len(graded_piece_quotient(space, lam, k))
        if d:
            out[k] = d
    return out


def generic_point(n: int, seed: int = 0) -> dict[str, Rat]:
    """Distinct rationals for z_1..z_n, drawn deterministically from the seed."""
    import random

    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]
    rng = random.Random(seed)
    picks = rng.sample(primes, n)
    dens = [rng.choice([1, 2, 3, 5, 7]) for _ in range(n)]
    vals = {}
    for s in range(n):
        sign = rng.choice([1, -1])
        vals[f"z.{s + 1}"] = Rat(sign * picks[s], dens[s])
    if len(set(vals.values())) != n:
        raise AssertionError("generic point has coincident coordinates")
    return vals


# -- relation checks ------------------------------------------------------------


def random_element(N: int, n: int, rng, terms: int = 3, degree: int = 1) -> VElement:
    """A few random words with small random polynomial coefficients."""
    out = {}
    for _ in range(terms):
        w = tuple(rng.randint(1, N) for _ in range(n))
        p = MPoly.const(rng.randint(-3, 3) or 1)
        for _ in range(degree):
            s = rng.randint(1, n)
            p = p + MPoly.var(f"z.{s}") * rng.randint(-2, 2)
        out[w] = out[w] + p if w in out else p
    return VElement(N, n, {w: p for w, p in out.items() if p})


def current_relations_check(N: int, n: int, rmax: int = 3, seed: int = 0, samples: int = 2):
    """[e_ij t^r, e_kl t^p] = d_jk e_il t^{r+p} - d_li e_kj t^{r+p} on random elements."""
    import random

    from .outcome import CheckOutcome

    rng = random.Random(seed)
    wit = []
    idx = range(1, N + 1)
    for sample in range(samples):
        x = random_element(N, n, rng)
        for i, j, k, l in itertools.product(idx, repeat=4):
            for r in range(rmax + 1):
                for p in range(rmax + 1):
                    lhs = act_generator(i, j, r, act_generator(k, l, p, x)) - act_generator(
                        k, l, p, act_generator(i, j, r, x)
                    )
                    rhs = VElement(N, n)
                    if j == k:
                        rhs = rhs + act_generator(i, l, r + p, x)
                    if l == i:
                        rhs = rhs - act_generator(k, j, r + p, x)
                    if lhs != rhs:
                        wit.append(f"sample {sample}: [e{i}{j} t^{r}, e{k}{l} t^{p}]")
    return CheckOutcome(not wit, wit, "exact", {"rmax": rmax, "samples": samples, "seed": seed})


def sn_equivariance_check(N: int, n: int, rmax: int = 2, seed: int = 0):
    """act_generator commutes with every sigma in S_n."""
    import random

    from .outcome import CheckOutcome

    rng = random.Random(seed)
    x = random_element(N, n, rng)
    wit = []
    for perm in itertools.permutations(range(n)):
        for i, j in itertools.product(range(1, N + 1), repeat=2):
            for r in range(rmax + 1):
                if sn_act(perm, act_generator(i, j, r, x)) != act_generator(i, j, r, sn_act(perm, x)):
                    wit.append(f"sigma={perm}, e{i}{j} t^{r}")
    return CheckOutcome(not wit, wit, "exact", {"rmax": rmax, "seed": seed})
