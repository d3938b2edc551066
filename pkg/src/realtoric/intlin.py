"""Exact linear algebra over the integers.

Matrices are lists of rows; entries are Python ints, so everything is
arbitrary precision.  Where an empty generating set makes the shape
ambiguous the ambient rank is passed explicitly.
"""
from __future__ import annotations

from math import gcd
from typing import List, Sequence, Tuple

IntMatrix = List[List[int]]

__all__ = [
    "identity",
    "mat_mul",
    "mat_vec",
    "transpose",
    "determinant",
    "lin_rank",
    "hermite_normal_form",
    "smith_normal_form",
    "saturation",
    "saturation_index",
    "quotient_projection",
    "quotient_with_section",
    "primitive_vector",
]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b:
        assert len(a[0]) == len(b), "inner dimensions must agree"
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*a)] if a else []


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    assert all(len(row) == n for row in a), "matrix must be square"
    m = [list(row) for row in a]
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


def _swap_rows(m: IntMatrix, i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _add_row(m: IntMatrix, dst: int, src: int, c: int) -> None:
    row_s = m[src]
    row_d = m[dst]
    for k in range(len(row_d)):
        row_d[k] += c * row_s[k]


def _swap_cols(m: IntMatrix, i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_col(m: IntMatrix, dst: int, src: int, c: int) -> None:
    for row in m:
        row[dst] += c * row[src]


def hermite_normal_form(a: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and H = U @ a: H is in row echelon
    form, pivots are positive, and entries above each pivot are reduced
    into [0, pivot).
    """
    h = [list(row) for row in a]
    nrows = len(h)
    ncols = len(h[0]) if h else 0
    u = identity(nrows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # Euclid on the column: leave a single nonzero entry at row r.
        while True:
            piv, val = -1, 0
            for i in range(r, nrows):
                x = h[i][c]
                if x != 0 and (val == 0 or abs(x) < abs(val)):
                    piv, val = i, x
            if piv < 0:
                break
            if piv != r:
                _swap_rows(h, r, piv)
                _swap_rows(u, r, piv)
            done = True
            for i in range(r + 1, nrows):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    _add_row(h, i, r, -q)
                    _add_row(u, i, r, -q)
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                _add_row(h, i, r, -q)
                _add_row(u, i, r, -q)
        r += 1
    return h, u


def lin_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a list of integer vectors."""
    if not vectors:
        return 0
    h, _ = hermite_normal_form(vectors)
    return sum(1 for row in h if any(row))


def _snf_full(
    a: Sequence[Sequence[int]], nrows: int, ncols: int
) -> Tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Smith decomposition with transform inverses.

    Returns (S, U, V, Uinv, Vinv) with S = U @ a @ V, U and V unimodular,
    S diagonal with positive entries d_1 | d_2 | ... .
    """
    s = [list(row) for row in a]
    u, uinv = identity(nrows), identity(nrows)
    v, vinv = identity(ncols), identity(ncols)

    def row_op(dst: int, src: int, c: int) -> None:
        _add_row(s, dst, src, c)
        _add_row(u, dst, src, c)
        _add_col(uinv, src, dst, -c)

    def col_op(dst: int, src: int, c: int) -> None:
        _add_col(s, dst, src, c)
        _add_col(v, dst, src, c)
        _add_row(vinv, src, dst, -c)

    t = 0
    while t < min(nrows, ncols):
        # Pick the entry of least magnitude in the trailing block.
        piv, val = None, 0
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = s[i][j]
                if x != 0 and (val == 0 or abs(x) < abs(val)):
                    piv, val = (i, j), x
        if piv is None:
            break
        i, j = piv
        if i != t:
            _swap_rows(s, t, i)
            _swap_rows(u, t, i)
            _swap_cols(uinv, t, i)
        if j != t:
            _swap_cols(s, t, j)
            _swap_cols(v, t, j)
            _swap_rows(vinv, t, j)
        while True:
            for i in range(t + 1, nrows):
                if s[i][t] != 0:
                    row_op(i, t, -(s[i][t] // s[t][t]))
            if any(s[i][t] for i in range(t + 1, nrows)):
                # A remainder became the new, smaller pivot candidate.
                for i in range(t + 1, nrows):
                    if s[i][t] != 0:
                        _swap_rows(s, t, i)
                        _swap_rows(u, t, i)
                        _swap_cols(uinv, t, i)
                        break
                continue
            for j in range(t + 1, ncols):
                if s[t][j] != 0:
                    col_op(j, t, -(s[t][j] // s[t][t]))
            if any(s[t][j] for j in range(t + 1, ncols)):
                for j in range(t + 1, ncols):
                    if s[t][j] != 0:
                        _swap_cols(s, t, j)
                        _swap_cols(v, t, j)
                        _swap_rows(vinv, t, j)
                        break
                continue
            break
        # Divisibility: the pivot must divide the rest of the block.
        bad = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if s[i][j] % s[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, 1)
            continue
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
            for row in uinv:
                row[t] = -row[t]
        t += 1
    return s, u, v, uinv, vinv


def smith_normal_form(
    a: Sequence[Sequence[int]],
) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: (S, U, V) with S = U @ a @ V diagonal, d_1 | d_2 | ..."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    s, u, v, _, _ = _snf_full(a, nrows, ncols)
    return s, u, v


def _column_matrix(rank: int, vectors: Sequence[Sequence[int]]) -> IntMatrix:
    for vec in vectors:
        assert len(vec) == rank, "vector length must match ambient rank"
    return [[vec[i] for vec in vectors] for i in range(rank)]


def saturation(rank: int, vectors: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Basis of the saturation (Q-span intersected with Z^rank) of the
    lattice generated by the given vectors."""
    if not vectors:
        return []
    cols = _column_matrix(rank, vectors)
    s, _, _, uinv, _ = _snf_full(cols, rank, len(vectors))
    r = sum(1 for i in range(min(rank, len(vectors))) if s[i][i] != 0)
    return [tuple(uinv[i][j] for i in range(rank)) for j in range(r)]


def saturation_index(rank: int, vectors: Sequence[Sequence[int]]) -> int:
    """Index of the lattice generated by the vectors inside its saturation."""
    if not vectors:
        return 1
    cols = _column_matrix(rank, vectors)
    s, _, _, _, _ = _snf_full(cols, rank, len(vectors))
    idx = 1
    for i in range(min(rank, len(vectors))):
        if s[i][i]:
            idx *= s[i][i]
    return idx


def quotient_with_section(
    rank: int, vectors: Sequence[Sequence[int]]
) -> Tuple[IntMatrix, IntMatrix]:
    """Projection P of Z^rank onto the quotient by the saturation of the
    span of the vectors, together with an integer right inverse R.

    P has shape (rank - r) x rank, R has shape rank x (rank - r), and
    P @ R is the identity; the kernel of P is exactly the saturation.
    """
    cols = _column_matrix(rank, vectors) if vectors else [[] for _ in range(rank)]
    s, u, _, uinv, _ = _snf_full(cols, rank, len(vectors))
    r = sum(1 for i in range(min(rank, len(vectors))) if s[i][i] != 0)
    proj = [list(u[i]) for i in range(r, rank)]
    sect = [[uinv[i][j] for j in range(r, rank)] for i in range(rank)]
    return proj, sect


def quotient_projection(rank: int, vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Projection of Z^rank onto the quotient by the saturated span of the vectors."""
    return quotient_with_section(rank, vectors)[0]


def primitive_vector(vec: Sequence[int]) -> Tuple[int, ...]:
    """Divide out the gcd of the entries; the zero vector is returned as is."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)
