"""Integer linear algebra: Smith normal form, row echelon lattices, quotient bases.

Matrices are plain lists of lists of Python ints, so entries never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

IntMatrix = list[list[int]]

__all__ = [
    "IntMatrix",
    "SNFResult",
    "smith_normal_form",
    "RowLattice",
    "QuotientBasis",
    "quotient_basis",
    "matmul",
    "identity",
]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(x * b[k][j] for k, x in enumerate(row)) for j in range(cols)] for row in a]


@dataclass(frozen=True)
class SNFResult:
    """``D = U @ M @ V`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``factors`` holds the nonzero diagonal entries d_1 | d_2 | ... ;
    ``U``/``V``/``D`` are ``None`` when transforms were not requested.
    """

    factors: tuple[int, ...]
    rank: int
    U: IntMatrix | None = field(default=None, repr=False)
    V: IntMatrix | None = field(default=None, repr=False)
    D: IntMatrix | None = field(default=None, repr=False)


def smith_normal_form(matrix: Sequence[Sequence[int]], transforms: bool = True) -> SNFResult:
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover of the pivot row/column into place
                i_best = min((i for i in range(t + 1, m) if A[i][t]), key=lambda i: abs(A[i][t]), default=None)
                j_best = min((j for j in range(t + 1, n) if A[t][j]), key=lambda j: abs(A[t][j]), default=None)
                if i_best is not None and (j_best is None or abs(A[i_best][t]) <= abs(A[t][j_best])):
                    swap_rows(t, i_best)
                else:
                    swap_cols(t, j_best)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1

    factors = tuple(A[i][i] for i in range(min(m, n)) if A[i][i])
    return SNFResult(factors, len(factors), U, V, A if transforms else None)


class RowLattice:
    """Echelon basis of the row span of an integer matrix, with canonical reduction.

    Columns are scanned in ``column_order``.  A first pass only accepts
    pivots that can be made equal to 1; a second pass takes whatever is left.  The basis is
    fully reduced (entries above a pivot lie in ``[0, pivot)``), so
    :meth:`reduce` returns a canonical representative of a vector modulo the
    lattice.
    """

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int, column_order: Sequence[int] | None = None):
        self.ncols = ncols
        order = list(range(ncols)) if column_order is None else list(column_order)
        pending = [list(map(int, r)) for r in rows if any(r)]
        for r in pending:
            if len(r) != ncols:
                raise ValueError(f"row of length {len(r)}, expected {ncols}")
        basis: list[tuple[int, list[int]]] = []
        done: set[int] = set()
        # unit pivots first, so non-pivot coordinates form a Z-basis when possible
        for units_only in (True, False):
            for col in order:
                if col in done:
                    continue
                cand = [r for r in pending if r[col]]
                if not cand:
                    continue
                if units_only and _gcd_all(r[col] for r in cand) != 1:
                    continue
                rest = [r for r in pending if not r[col]]
                while len(cand) > 1:
                    cand.sort(key=lambda r: abs(r[col]))
                    p = cand[0]
                    keep = [p]
                    for r in cand[1:]:
                        q = r[col] // p[col]
                        r = [a - q * b for a, b in zip(r, p)]
                        if r[col]:
                            keep.append(r)
                        elif any(r):
                            rest.append(r)
                    cand = keep
                p = cand[0]
                if p[col] < 0:
                    p = [-x for x in p]
                basis.append((col, p))
                done.add(col)
                pending = rest
        # back-substitution so earlier rows are reduced at later pivots
        for k, (col, row) in enumerate(basis):
            for h in range(k):
                c2, r2 = basis[h]
                q = r2[col] // row[col]
                if q:
                    basis[h] = (c2, [a - q * b for a, b in zip(r2, row)])
        self.basis = basis

    @property
    def pivots(self) -> list[int]:
        return [c for c, _ in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rows(self) -> IntMatrix:
        return [list(r) for _, r in self.basis]

    def reduce(self, vec: Sequence[int]) -> list[int]:
        v = list(vec)
        for col, row in self.basis:
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))


def _gcd_all(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


@dataclass(frozen=True)
class QuotientBasis:
    """Description of ``Z^m / span(relations)``.

    ``representatives`` are the coordinates that are not echelon pivots;
    their images span the free part over Q.  ``integral`` is True when every
    pivot is 1, in which case they form a Z-basis of the quotient.
    """

    ncols: int
    free_rank: int
    torsion: tuple[int, ...]
    representatives: tuple[int, ...]
    integral: bool
    lattice: RowLattice = field(repr=False, compare=False)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        return self.lattice.reduce(vec)


def quotient_basis(relations: Sequence[Sequence[int]], m: int, prefer_last: bool = True) -> QuotientBasis:
    """Free rank, torsion and representative coordinates of ``Z^m / span(relations)``.

    With ``prefer_last`` the pivots are taken from the highest coordinates,
    leaving the lowest-index coordinates as representatives.
    """
    order = list(range(m - 1, -1, -1)) if prefer_last else list(range(m))
    lattice = RowLattice(relations, m, order)
    snf = smith_normal_form(lattice.rows(), transforms=False)
    pivots = set(lattice.pivots)
    reps = tuple(i for i in range(m) if i not in pivots)
    return QuotientBasis(
        ncols=m,
        free_rank=m - snf.rank,
        torsion=tuple(d for d in snf.factors if d > 1),
        representatives=reps,
        integral=all(row[c] == 1 for c, row in lattice.basis),
        lattice=lattice,
    )
