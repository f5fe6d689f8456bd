"""Exact linear algebra: fraction-free rank/kernel, determinants, Pfaffians.

Entries are Fractions for the numeric routines; the cofactor determinant and the
Pfaffian also accept any commutative-ring elements (e.g. MultiPoly).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

Row = List[Fraction]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank/kernel preserving)."""
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        m = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * m) for x in row])
    return out


def _bareiss_echelon(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) elimination to row-echelon form.

    Returns the integer echelon matrix and the list of pivot columns.
    """
    m = _integer_rows(rows)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                # Bareiss update: the division by the previous pivot is exact.
                m[i][j] = (piv * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def mat_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    _, pivots = _bareiss_echelon(rows)
    return len(pivots)


def mat_rank_kernel(
    rows: Sequence[Sequence[Fraction]], cols: Optional[int] = None
) -> Tuple[int, List[Tuple[Fraction, ...]]]:
    """Rank and a canonical basis of the right kernel.

    Kernel vectors carry 1 in their own free column and 0 in every other free
    column (column-echelon canonical form), so bases compare deterministically.
    """
    nrows = len(rows)
    if nrows == 0:
        n = cols or 0
        basis = []
        for f in range(n):
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            basis.append(tuple(v))
        return 0, basis
    ncols = len(rows[0])
    ech, pivots = _bareiss_echelon(rows)
    rank = len(pivots)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        # back substitution on the echelon rows
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            s = sum((Fraction(ech[i][j]) * v[j] for j in range(c + 1, ncols)), Fraction(0))
            v[c] = -s / ech[i][c]
        basis.append(tuple(v))
    return rank, basis


def mat_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square rational matrix (Bareiss)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in rows]
    sign = 1
    prev = Fraction(1)
    for c in range(n - 1):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (piv * m[i][j] - m[i][c] * m[c][j]) / prev
            m[i][c] = Fraction(0)
        prev = piv
    return sign * m[n - 1][n - 1]


def det_cofactor(rows, zero, one):
    """Determinant by cofactor expansion; generic entries, dims <= 8.

    `zero`/`one` are the ring's additive and multiplicative identities.
    Expansion prunes zero entries, so the sparse symbolic matrices in scope
    stay small.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")

    def _is_zero(x):
        z = x == zero
        return bool(z)

    def rec(mat):
        k = len(mat)
        if k == 0:
            return one
        if k == 1:
            return mat[0][0]
        acc = zero
        for j, entry in enumerate(mat[0]):
            if _is_zero(entry):
                continue
            minor = [[row[c] for c in range(k) if c != j] for row in mat[1:]]
            term = entry * rec(minor)
            acc = acc + (term if j % 2 == 0 else -term)
        return acc

    return rec([list(r) for r in rows])


def pfaffian(rows, zero, one):
    """Pfaffian of a skew-symmetric matrix by first-row expansion.

    Pf([[0, a], [-a, 0]]) = a. Raises on odd dimension or a non-skew matrix.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("pfaffian of a non-square matrix")
    if n % 2 != 0:
        raise ValueError("pfaffian needs even dimension")
    for i in range(n):
        for j in range(i, n):
            if not bool(rows[i][j] == -rows[j][i]):
                raise ValueError("matrix is not skew-symmetric")

    def rec(mat):
        k = len(mat)
        if k == 0:
            return one
        acc = zero
        for j in range(1, k):
            entry = mat[0][j]
            if bool(entry == zero):
                continue
            keep = [c for c in range(k) if c not in (0, j)]
            minor = [[mat[r][c] for c in keep] for r in keep]
            term = entry * rec(minor)
            acc = acc + (term if j % 2 == 1 else -term)
        return acc

    return rec([list(r) for r in rows])


def solve_exact(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """One exact solution of A x = b, or None if inconsistent."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        piv = aug[r][c]
        aug[r] = [x / piv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x


def mat_mul(a, b, zero):
    """Generic matrix product (entries: any ring elements)."""
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]
