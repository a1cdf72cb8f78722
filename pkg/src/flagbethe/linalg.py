"""
Exact linear algebra over the rationals.

Dense work (rank, inverse, kernels, solving) goes through sympy's
``DomainMatrix`` over QQ, whose elements are gmpy2 ``mpq`` values like ours.
``SparseEchelon`` is an incremental row-echelon form over sparse dict rows,
used for graded pieces of modules whose coordinates are indexed by
arbitrary sortable keys.
"""

from __future__ import annotations

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .poly import Rat


def to_dm(rows) -> DomainMatrix:
    rows = [[QQ.convert(Rat(x)) for x in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def from_dm(m: DomainMatrix) -> list[list[Rat]]:
    return [[Rat(x) for x in row] for row in m.to_list()]


def rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return to_dm(rows).rank()


def det(rows) -> Rat:
    return Rat(to_dm(rows).det())


def inverse(rows) -> list[list[Rat]]:
    return from_dm(to_dm(rows).inv())


def matmul(a, b) -> list[list[Rat]]:
    return from_dm(to_dm(a) * to_dm(b))


def nullspace(rows, ncols=None) -> list[list[Rat]]:
    """Basis of {x : A x = 0}."""
    if not rows:
        n = ncols or 0
        return [[Rat(int(i == k)) for i in range(n)] for k in range(n)]
    ns = to_dm(rows).nullspace()
    return from_dm(ns) if ns.shape[0] else []


def solve(rows, rhs) -> list[Rat]:
    """Solve A x = b for square invertible A."""
    inv = inverse(rows)
    return [sum((inv[i][k] * rhs[k] for k in range(len(rhs))), Rat(0)) for i in range(len(inv))]


def identity(n: int) -> list[list[Rat]]:
    return [[Rat(int(i == j)) for j in range(n)] for i in range(n)]


def max_abs_entry(rows) -> Rat:
    return max((abs(x) for row in rows for x in row), default=Rat(0))


def sparse_combine(target: dict, row: dict, c) -> None:
    """target += c * row, in place, dropping zeros."""
    for k, v in row.items():
        w = target.get(k)
        w = v * c if w is None else w + v * c
        if w:
            target[k] = w
        else:
            target.pop(k, None)


class SparseEchelon:
    """Incremental echelon form of sparse rows.

    Each stored row has a pivot (its smallest key under ``key``) with
    coefficient 1, and carries a *tag*: a sparse record of how the row was
    produced from the inputs that were added with a tag. Reducing a vector
    returns the remainder and the accumulated tag, which is how coordinates
    modulo a subspace are read off.
    """

    def __init__(self, key=None):
        self.key = key or (lambda k: k)
        self.rows: dict = {}  # pivot -> (row, tag)

    def __len__(self):
        return len(self.rows)

    def _pivot(self, row):
        return min(row, key=self.key)

    def reduce(self, row: dict, tag: dict | None = None):
        row = dict(row)
        tag = dict(tag or {})
        while row:
            piv = None
            # eliminate every pivot present; stop once no key is a pivot
            for k in sorted(row, key=self.key):
                if k in self.rows:
                    piv = k
                    break
            if piv is None:
                break
            c = row[piv]
            prow, ptag = self.rows[piv]
            sparse_combine(row, prow, -c)
            sparse_combine(tag, ptag, -c)
        return row, tag

    def add(self, row: dict, tag: dict | None = None) -> bool:
        """Insert a row; returns False if it was dependent."""
        row, tag = self.reduce(row, tag)
        if not row:
            return False
        piv = self._pivot(row)
        c = 1 / row[piv]
        row = {k: v * c for k, v in row.items()}
        tag = {k: v * c for k, v in tag.items()}
        self.rows[piv] = (row, tag)
        return True

    def contains(self, row: dict) -> bool:
        rem, _ = self.reduce(row)
        return not rem

    def coordinates(self, row: dict):
        """(remainder, coords) with row = remainder + sum coords[t] * input_t."""
        rem, tag = self.reduce(row)
        return rem, {k: -v for k, v in tag.items()}
