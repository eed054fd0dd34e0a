"""Exact integer and rational linear algebra helpers.

Exponent vectors are tuples of ints, matrices are tuples of row tuples.
Everything is exact: scalars are ints or ``fractions.Fraction``, never
floats.  The one nontrivial algorithm here is the Smith-style
normalization of a subgroup of Z^n by unimodular row operations.
"""

from __future__ import annotations

from fractions import Fraction


class DimensionError(ValueError):
    """Mismatched vector/matrix dimensions, or a non-square matrix."""


def vec_add(a, b):
    if len(a) != len(b):
        raise DimensionError(f"vector length {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    if len(a) != len(b):
        raise DimensionError(f"vector length {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def zero_vec(n):
    return (0,) * n


def dot(a, b):
    """Standard bilinear pairing; exact over ints/Fractions."""
    if len(a) != len(b):
        raise DimensionError(f"vector length {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_vec(m, v):
    if m and len(m[0]) != len(v):
        raise DimensionError("matrix/vector size mismatch")
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise DimensionError("matrix size mismatch")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def determinant(matrix):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(matrix)
    m = [list(row) for row in matrix]
    if any(len(row) != n for row in m):
        raise DimensionError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(matrix) -> bool:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        return False
    if any(x != int(x) for row in matrix for x in row):
        return False
    return determinant(matrix) in (1, -1)


def matrix_inverse(matrix):
    """Exact inverse over the rationals (Gauss-Jordan with Fractions)."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise DimensionError("inverse needs a square matrix")
    a = [[Fraction(x) for x in row] for row in matrix]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DimensionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def _min_abs_entry(a, t):
    """Position of the smallest nonzero |entry| in the trailing block, ties
    broken by the lowest (row, column) index."""
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else (best[1], best[2])


def smith_normalize(generators):
    """Normalize the subgroup of Z^n spanned by ``generators``.

    Returns ``(B, diag, rank)`` where B is unimodular (n x n) and the
    transformed subgroup {B g} is exactly the span of
    diag[0] e_0, ..., diag[rank-1] e_{rank-1}, with each diag entry
    positive and dividing the next.
    """
    if not generators:
        raise DimensionError("need at least one generator")
    n = len(generators[0])
    if any(len(g) != n for g in generators):
        raise DimensionError("generators of unequal length")
    m = len(generators)
    # generators as columns; row operations are tracked in u
    a = [[int(generators[j][i]) for j in range(m)] for i in range(n)]
    u = [list(row) for row in identity_matrix(n)]

    t = 0
    limit = min(n, m)
    while t < limit:
        pos = _min_abs_entry(a, t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            a[t], a[i] = a[i], a[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
        dirty = False
        p = a[t][t]
        for i in range(t + 1, n):
            if a[i][t]:
                q = a[i][t] // p
                for j in range(m):
                    a[i][j] -= q * a[t][j]
                for j in range(n):
                    u[i][j] -= q * u[t][j]
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, m):
            if a[t][j]:
                q = a[t][j] // p
                for i in range(n):
                    a[i][j] -= q * a[i][t]
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce the divisibility chain before moving on
        bad = next(
            (
                i
                for i in range(t + 1, n)
                for j in range(t + 1, m)
                if a[i][j] % p != 0
            ),
            None,
        )
        if bad is not None:
            for j in range(m):
                a[t][j] += a[bad][j]
            for j in range(n):
                u[t][j] += u[bad][j]
            continue
        t += 1

    diag = []
    for i in range(limit):
        if a[i][i] == 0:
            break
        if a[i][i] < 0:
            for j in range(m):
                a[i][j] = -a[i][j]
            for j in range(n):
                u[i][j] = -u[i][j]
        diag.append(a[i][i])
    b = tuple(tuple(row) for row in u)
    return b, tuple(diag), len(diag)
