"""Exact dense linear algebra over the rational scalar type.

Matrices are numpy object arrays or nested lists of rationals; rows are
copied into plain lists internally so callers' data is never mutated.
Everything here is used at desk scale (dimension <= a few hundred), so
classical O(n^3) field-arithmetic algorithms are the right tool.
"""

import numpy as np

from .rationals import QQ, ZERO, ONE


def _rows(mat):
    if isinstance(mat, np.ndarray):
        return [[x for x in row] for row in mat]
    return [list(row) for row in mat]


def det(mat):
    """Determinant by Gaussian elimination with partial pivoting."""
    a = _rows(mat)
    n = len(a)
    if n == 0:
        return ONE
    sign = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[piv], a[col] = a[col], a[piv]
            sign = -sign
        pv = a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f != 0:
                ar, ac = a[r], a[col]
                for c in range(col, n):
                    ar[c] = ar[c] - f * ac[c]
    out = sign
    for i in range(n):
        out = out * a[i][i]
    return out


def rref(mat):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    a = _rows(mat)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(mat):
    return len(rref(mat)[1])


def nullspace(mat):
    """Basis of the right kernel, as lists of rationals."""
    a, pivots = rref(mat)
    ncols = len(a[0]) if a else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One exact solution of mat x = rhs, or None if inconsistent."""
    a = _rows(mat)
    aug = [row + [QQ(b)] for row, b in zip(a, rhs)]
    red, pivots = rref(aug)
    ncols = len(a[0]) if a else 0
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def _hessenberg(a):
    """Upper Hessenberg form by exact similarity transforms (in place)."""
    n = len(a)
    for col in range(n - 2):
        piv = next((r for r in range(col + 1, n) if a[r][col] != 0), None)
        if piv is None:
            continue
        if piv != col + 1:
            a[piv], a[col + 1] = a[col + 1], a[piv]
            for r in range(n):
                a[r][piv], a[r][col + 1] = a[r][col + 1], a[r][piv]
        pv = a[col + 1][col]
        for r in range(col + 2, n):
            f = a[r][col] / pv
            if f == 0:
                continue
            ar, ap = a[r], a[col + 1]
            for c in range(col, n):
                ar[c] = ar[c] - f * ap[c]
            for i in range(n):
                a[i][col + 1] = a[i][col + 1] + f * a[i][r]
    return a


def charpoly(mat):
    """Coefficients c_0..c_n of det(xI - A), ascending powers, monic."""
    a = _rows(mat)
    n = len(a)
    if n == 0:
        return [ONE]
    h = _hessenberg(a)
    # p_k = charpoly of the leading k x k block, by last-column expansion
    polys = [[ONE]]
    for k in range(1, n + 1):
        p = [ZERO] + polys[k - 1]                       # x * p_{k-1}
        p = [c - h[k - 1][k - 1] * d for c, d in zip(p, polys[k - 1] + [ZERO])]
        subprod = ONE
        for m in range(1, k):
            subprod = subprod * h[k - m][k - m - 1]
            if subprod == 0:
                break
            coeff = h[k - 1 - m][k - 1] * subprod
            if coeff != 0:
                q = polys[k - 1 - m]
                for i, c in enumerate(q):
                    p[i] = p[i] - coeff * c
        polys.append(p)
    return polys[n]


def leading_principal_pivots(mat):
    """Pivots d_k of symmetric elimination without row exchanges.

    The k-th leading principal minor is d_1*...*d_k.  Stops early and
    returns (pivots, stopped_at) when a zero pivot blocks the
    factorization; stopped_at is None on full success.
    """
    a = _rows(mat)
    n = len(a)
    pivots = []
    for k in range(n):
        pv = a[k][k]
        if pv == 0:
            return pivots, k
        pivots.append(pv)
        for r in range(k + 1, n):
            f = a[r][k] / pv
            if f != 0:
                ar, ak = a[r], a[k]
                for c in range(k, n):
                    ar[c] = ar[c] - f * ak[c]
    return pivots, None
