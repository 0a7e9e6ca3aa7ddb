"""Exact linear algebra kernels.

Two lanes: generic Gaussian elimination over the Gaussian-rational field
(used by structure algebra and for kernel bases), and fraction-free Bareiss
elimination over plain integers (used by the per-mode torus sweep, whose
matrices are integral after a global unit factor is stripped).
"""

from __future__ import annotations

from .scalars import GaussianRational

Matrix = list  # list of rows; rows are lists of entries


def zeros(m: int, n: int, zero=0) -> Matrix:
    return [[zero] * n for _ in range(m)]


def identity(n: int, one, zero) -> Matrix:
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = one
    return out


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), len(M[0]) if M else 0


def matmul(A: Matrix, B: Matrix, zero) -> Matrix:
    ma, na = shape(A)
    mb, nb = shape(B)
    if na != mb:
        raise ValueError(f"shape mismatch {ma}x{na} @ {mb}x{nb}")
    out = []
    for i in range(ma):
        row_a = A[i]
        row = []
        for j in range(nb):
            acc = zero
            for k in range(na):
                a = row_a[k]
                if a:
                    acc = acc + a * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(M: Matrix) -> Matrix:
    m, n = shape(M)
    return [[M[i][j] for i in range(m)] for j in range(n)]


def conjugate_transpose(M: Matrix) -> Matrix:
    m, n = shape(M)
    return [[M[i][j].conjugate() for i in range(m)] for j in range(n)]


# ---------------------------------------------------------------------------
# field lane (GaussianRational entries)
# ---------------------------------------------------------------------------


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over the Gaussian rationals.

    Returns (R, pivot_columns); exact, with division by pivots.
    """
    rows = [list(r) for r in M]
    m, n = shape(rows)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank(M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def nullspace(M: Matrix) -> list[list[GaussianRational]]:
    """Basis of the right kernel, exact."""
    m, n = shape(M)
    zero = GaussianRational(0)
    one = GaussianRational(1)
    if n == 0:
        return []
    if m == 0:
        return [[one if j == i else zero for j in range(n)] for i in range(n)]
    R, pivots = rref(M)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [zero] * n
        vec[fc] = one
        for r, pc in enumerate(pivots):
            val = R[r][fc]
            if val:
                vec[pc] = -val
        basis.append(vec)
    return basis


def solve(M: Matrix, rhs: list) -> list | None:
    """One exact solution of M x = rhs, or None when inconsistent."""
    m, n = shape(M)
    aug = [list(M[i]) + [rhs[i]] for i in range(m)]
    R, pivots = rref(aug)
    zero = GaussianRational(0)
    if n in pivots:
        return None
    x = [zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return x


def invert(M: Matrix) -> Matrix:
    """Exact inverse of a small square matrix."""
    m, n = shape(M)
    if m != n:
        raise ValueError("inverse of a non-square matrix")
    one = GaussianRational(1)
    zero = GaussianRational(0)
    aug = [list(M[i]) + identity(n, one, zero)[i] for i in range(n)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def column_space_dims(*blocks: Matrix) -> int:
    """Rank of the column-concatenation of the given blocks."""
    mats = [B for B in blocks if B and B[0]]
    if not mats:
        return 0
    rows = len(mats[0])
    joined = []
    for i in range(rows):
        row = []
        for B in mats:
            row.extend(B[i])
        joined.append(row)
    return rank(joined)


def columns_from_vectors(vectors: list[list]) -> Matrix:
    """Stack kernel-style vectors as the columns of a matrix."""
    if not vectors:
        return []
    n = len(vectors[0])
    return [[v[i] for v in vectors] for i in range(n)]


# ---------------------------------------------------------------------------
# integer lane (fraction-free Bareiss)
# ---------------------------------------------------------------------------


def int_rank(M: Matrix) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination."""
    if not M or not M[0]:
        return 0
    rows = [list(r) for r in M]
    m, n = len(rows), len(rows[0])
    r = 0
    prev = 1
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c + 1, n):
                    row[j] = (pv * row[j] - f * prow[j]) // prev
                row[c] = 0
            elif pv != prev:
                for j in range(c + 1, n):
                    row[j] = (pv * row[j]) // prev
        prev = pv
        r += 1
        if r == m:
            break
    return r


def int_row_echelon(M: Matrix) -> tuple[Matrix, list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in M]
    m, n = len(rows), len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c + 1, n):
                    row[j] = (pv * row[j] - f * prow[j]) // prev
                row[c] = 0
            elif pv != prev:
                for j in range(c + 1, n):
                    row[j] = (pv * row[j]) // prev
        prev = pv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows[:r], pivots


def int_nullspace(M: Matrix) -> list[list[int]]:
    """Integer-scaled basis of the right kernel of an integer matrix."""
    from fractions import Fraction
    from math import gcd

    m, n = len(M), len(M[0]) if M else 0
    if n == 0:
        return []
    if m == 0 or all(not any(row) for row in M):
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    ech, pivots = int_row_echelon(M)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        # back substitution over the echelon rows
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            acc = Fraction(0)
            row = ech[r]
            for c in range(pc + 1, n):
                if row[c] and vec[c]:
                    acc += Fraction(row[c]) * vec[c]
            vec[pc] = -acc / row[pc]
        den = 1
        for v in vec:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in vec]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        basis.append(ints)
    return basis


def int_matmul(A: Matrix, B: Matrix) -> Matrix:
    ma, na = len(A), len(A[0]) if A else 0
    mb, nb = len(B), len(B[0]) if B else 0
    if na != mb:
        raise ValueError(f"shape mismatch {ma}x{na} @ {mb}x{nb}")
    Bt = [[B[k][j] for k in range(mb)] for j in range(nb)]
    out = []
    for i in range(ma):
        row_a = A[i]
        out.append([sum(x * y for x, y in zip(row_a, col)) for col in Bt])
    return out


def int_hstack(*blocks: Matrix) -> Matrix:
    rows = len(blocks[0])
    out = []
    for i in range(rows):
        row: list[int] = []
        for B in blocks:
            row.extend(B[i])
        out.append(row)
    return out


def int_vstack(*blocks: Matrix) -> Matrix:
    out = []
    for B in blocks:
        out.extend(list(r) for r in B)
    return out
