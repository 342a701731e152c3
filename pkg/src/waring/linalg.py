"""Dense exact linear algebra over any field whose elements support ``+ - * /``.

Matrices are lists of rows.  Zero tests use ``== 0`` so ``Fraction`` and
``ModP`` entries both work.  A vectorised ``numpy`` path handles large prime
field ranks for the secant engine.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def rref(matrix):
    """Reduced row-echelon form.  Returns ``(rows, pivot_columns)``."""
    a = [list(row) for row in matrix]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c] if not isinstance(a[r][c], int) else Fraction(1, a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def _integer_rows(matrix):
    out = []
    for row in matrix:
        if not all(isinstance(x, (int, Fraction)) for x in row):
            return None
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def rank(matrix) -> int:
    """Exact rank; rational input goes through fraction-free integer elimination."""
    rows = _integer_rows(matrix)
    if rows is None:
        return len(rref(matrix)[1])
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        p = pr[c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                new = [p * x - f * y for x, y in zip(rows[i], pr)]
                g = math.gcd(*new)
                rows[i] = [x // g for x in new] if g > 1 else new
        r += 1
        if r == len(rows):
            break
    return r


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def nullspace(matrix, ncols: int | None = None):
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    if not matrix:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(matrix[0])
    r, pivots = rref(matrix)
    one, zero = _unit(matrix)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(r, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def left_kernel(matrix, nrows: int | None = None):
    """Basis of ``{g : g M = 0}`` in reduced row-echelon form."""
    if matrix and matrix[0]:
        basis = nullspace(transpose(matrix))
    else:
        n = len(matrix) if matrix else nrows
        basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if not basis:
        return []
    return rref(basis)[0]


def solve(a, b):
    """One solution of ``a x = b`` or ``None`` when the system is inconsistent."""
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    _, zero = _unit(a)
    x = [zero] * ncols
    for row, pc in zip(r, pivots):
        x[pc] = row[ncols]
    return x


def inverse(a):
    n = len(a)
    _, zero = _unit(a)
    one = zero + 1
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in bt] for row in a]


def _unit(matrix):
    for row in matrix:
        for x in row:
            z = x * 0
            if isinstance(z, int):
                z = Fraction(0)
            return z + 1, z
    return Fraction(1), Fraction(0)


def rank_mod_p(matrix, p: int) -> int:
    """Rank over F_p of an integer matrix; requires ``p < 3 * 10**9`` for int64 safety."""
    if p >= 3_037_000_499:
        raise ValueError("prime too large for int64 elimination")
    a = np.array(matrix, dtype=np.int64) % p
    if a.size == 0:
        return 0
    if a.shape[0] > a.shape[1]:
        a = a.T.copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        below = a[r + 1:, c]
        rows = np.flatnonzero(below)
        if rows.size:
            idx = rows + r + 1
            a[idx] = (a[idx] - np.outer(a[idx, c], a[r]) % p) % p
        r += 1
    return r
