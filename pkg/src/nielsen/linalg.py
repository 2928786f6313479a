"""Exact integer and rational matrix kernels.

Matrices are plain lists of rows. Integer matrices hold Python ints and
rational matrices hold ``fractions.Fraction``; neither ever touches floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

IntMatrix = List[List[int]]
RatMatrix = List[List[Fraction]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> IntMatrix:
    return [[0] * c for _ in range(r)]


def copy(m: Sequence[Sequence]) -> list:
    return [list(row) for row in m]


def shape(m: Sequence[Sequence]) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {shape(a)} @ {shape(b)}")
    bt = transpose(b)
    if not bt:
        return [[] for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bilinear(g: Sequence[Sequence], x: Sequence, y: Sequence):
    """Return x^T g y."""
    return sum(xi * gy for xi, gy in zip(x, matvec(g, y)))


def congruent(g: Sequence[Sequence], s: Sequence[Sequence]) -> list:
    """Return s^T g s."""
    return matmul(matmul(transpose(s), g), s)


def block_diag(*blocks: Sequence[Sequence]) -> list:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def is_symmetric(g: Sequence[Sequence]) -> bool:
    n = len(g)
    return all(len(row) == n for row in g) and all(
        g[i][j] == g[j][i] for i in range(n) for j in range(i)
    )


def det(m: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant (Bareiss elimination; rational input allowed)."""
    n = len(m)
    if n == 0:
        return 1
    a = copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num / prev if isinstance(num, Fraction) else num // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    rows, cols = shape(a)
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def inverse(m: Sequence[Sequence]) -> RatMatrix:
    """Exact inverse over the rationals (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


# -- row/column helpers (in place) -------------------------------------------

def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a, dst, src, q):
    """row[dst] += q * row[src]"""
    if q:
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]


def _add_col(a, dst, src, q):
    """col[dst] += q * col[src]"""
    if q:
        for row in a:
            row[dst] += q * row[src]


def smith_normal_form(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (u, d, v) with u @ m @ v == d in Smith normal form.

    u and v are unimodular; d is diagonal with nonnegative entries and
    d[0][0] | d[1][1] | ... ; works for rectangular input.
    """
    rows, cols = shape(m)
    a = copy(m)
    u = identity(rows)
    v = identity(cols)
    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        _swap_rows(a, t, i)
        _swap_rows(u, t, i)
        _swap_cols(a, t, j)
        _swap_cols(v, t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                _add_row(a, i, t, -q)
                _add_row(u, i, t, -q)
            for j in range(t + 1, cols):
                q = a[t][j] // p
                _add_col(a, j, t, -q)
                _add_col(v, j, t, -q)
            rest = [(abs(a[i][t]), i, None) for i in range(t + 1, rows) if a[i][t]]
            rest += [(abs(a[t][j]), None, j) for j in range(t + 1, cols) if a[t][j]]
            if rest:
                # a remainder smaller than the pivot exists; promote it
                _, i, j = min(rest, key=lambda e: e[0])
                if i is not None:
                    _swap_rows(a, t, i)
                    _swap_rows(u, t, i)
                else:
                    _swap_cols(a, t, j)
                    _swap_cols(v, t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            _add_row(a, t, bad[0], 1)
            _add_row(u, t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def smith_invariants(m: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal of the Smith normal form (zeros included, length min(rows, cols))."""
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(shape(d)))]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style HNF: return (h, u) with u @ m == h.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    are moved to the bottom.
    """
    rows, cols = shape(m)
    h = copy(m)
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            live = [(abs(h[i][c]), i) for i in range(r, rows) if h[i][c]]
            if not live:
                break
            _, i = min(live)
            _swap_rows(h, r, i)
            _swap_rows(u, r, i)
            for i in range(r + 1, rows):
                q = h[i][c] // h[r][c]
                _add_row(h, i, r, -q)
                _add_row(u, i, r, -q)
            if all(h[i][c] == 0 for i in range(r + 1, rows)):
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            _add_row(h, i, r, -q)
            _add_row(u, i, r, -q)
        r += 1
    return h, u


def row_basis(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Nonzero rows of the HNF: a canonical basis of the row lattice."""
    h, _ = hermite_normal_form(m)
    return [row for row in h if any(row)]


def kernel_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Rows spanning the saturated integer lattice {x : m @ x = 0}.

    ``ncols`` is only needed when ``m`` has no rows.
    """
    rows, cols = shape(m)
    if rows == 0:
        return identity(ncols or 0)
    _, d, v = smith_normal_form(m)
    r = sum(1 for i in range(min(rows, cols)) if d[i][i])
    basis = [[v[i][j] for i in range(cols)] for j in range(r, cols)]
    return row_basis(basis) if basis else []


def congruence_diagonalize(g: Sequence[Sequence]) -> Tuple[RatMatrix, RatMatrix]:
    """Symmetric elimination over Q: return (p, d) with p^T g p == d diagonal."""
    if not is_symmetric(g):
        raise ValueError("congruence_diagonalize needs a symmetric matrix")
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def swap(i, j):
        _swap_rows(a, i, j)
        _swap_cols(a, i, j)
        _swap_cols(p, i, j)

    def add(dst, src, q):
        _add_col(a, dst, src, q)
        _add_row(a, dst, src, q)
        _add_col(p, dst, src, q)

    for i in range(n):
        if a[i][i] == 0:
            k = next((k for k in range(i + 1, n) if a[k][k] != 0), None)
            if k is not None:
                swap(i, k)
            else:
                k = next((k for k in range(i + 1, n) if a[i][k] != 0), None)
                if k is None:
                    continue
                # hyperbolic block: all remaining diagonal entries vanish
                add(i, k, 1)
        piv = a[i][i]
        for k in range(i + 1, n):
            if a[k][i]:
                add(k, i, -a[k][i] / piv)
    return p, a


def _pivots(g: Sequence[Sequence]) -> List[int]:
    """Signs-faithful pivots of a congruence diagonalization.

    Fraction-free: the stored trailing block equals the true Schur complement
    up to a scalar whose sign is tracked, and is divided by its content after
    each step to keep entries small.
    """
    if not is_symmetric(g):
        raise ValueError("inertia needs a symmetric matrix")
    den = 1
    for row in g:
        for x in row:
            den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    a = [[int(Fraction(x) * den) for x in row] for row in g]
    n = len(a)
    out, sign = [], 1
    for i in range(n):
        if a[i][i] == 0:
            k = next((k for k in range(i + 1, n) if a[k][k] != 0), None)
            if k is not None:
                _swap_rows(a, i, k)
                _swap_cols(a, i, k)
            else:
                k = next((k for k in range(i + 1, n) if a[i][k] != 0), None)
                if k is None:
                    out.append(0)
                    continue
                for r in range(i, n):
                    a[r][i] += a[r][k]
                for c in range(i, n):
                    a[i][c] += a[k][c]
        piv = a[i][i]
        out.append(sign * piv)
        row = a[i]
        content = 0
        for k in range(i + 1, n):
            ak, q = a[k], a[k][i]
            for j in range(i + 1, n):
                ak[j] = piv * ak[j] - q * row[j]
                content = math.gcd(content, ak[j])
        if piv < 0:
            sign = -sign
        if content > 1:
            for k in range(i + 1, n):
                ak = a[k]
                for j in range(i + 1, n):
                    ak[j] //= content
    return out


def inertia(g: Sequence[Sequence]) -> Tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric form."""
    diag = _pivots(g)
    return (sum(x > 0 for x in diag), sum(x < 0 for x in diag), sum(x == 0 for x in diag))
