"""Exact rational matrices plus the one floating point solve the IPM needs.

Matrices are numpy object arrays holding :class:`fractions.Fraction` entries,
so slicing, ``@`` and transposes work as usual while staying exact. Index
sets are tuples of 0-based, strictly increasing ints; the CLI and document
formats translate to and from 1-based indices.
"""
from fractions import Fraction
from itertools import combinations
from math import lcm

import numpy as np
from scipy.linalg import lapack

from .errors import InputError, NumericalBreakdown


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (float, np.floating)):
        # exact binary value, e.g. 0.5 -> 1/2
        return Fraction(float(x))
    if isinstance(x, (np.integer,)):
        return Fraction(int(x))
    return Fraction(x)


def rmat(rows):
    """Build an exact square matrix from nested sequences."""
    a = np.array([[to_fraction(x) for x in row] for row in rows], dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"matrix must be square, got shape {a.shape}")
    return a


def rvec(values):
    return np.array([to_fraction(x) for x in values], dtype=object)


def identity(n):
    return rmat(np.eye(n, dtype=int))


def zeros(n):
    return rmat(np.zeros((n, n), dtype=int))


def is_exact(a):
    return all(
        isinstance(x, (Fraction, int, np.integer)) and not isinstance(x, bool)
        for x in np.asarray(a, dtype=object).ravel()
    )


def index_set(indices, n):
    """Validate and normalize a 0-based index set."""
    s = tuple(sorted(int(i) for i in indices))
    if len(set(s)) != len(s):
        raise InputError(f"duplicate indices in {s}")
    if s and (s[0] < 0 or s[-1] >= n):
        raise InputError(f"index set {tuple(i + 1 for i in s)} out of range 1..{n}")
    return s


def complement(alpha, n):
    alpha = set(alpha)
    return tuple(i for i in range(n) if i not in alpha)


def subsets(n, include_empty=False):
    """All index sets of {0..n-1} in lexicographic order of their tuples."""
    out = [c for k in range(1, n + 1) for c in combinations(range(n), k)]
    out.sort()
    if include_empty:
        out.insert(0, ())
    return out


def principal_submatrix(a, alpha):
    alpha = index_set(alpha, a.shape[0])
    return a[np.ix_(alpha, alpha)]


def _integer_rows(rows):
    """Scale each row to integers; return the rows and the product of scales."""
    out, scale = [], 1
    for row in rows:
        fr = [to_fraction(x) for x in row]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * d) for x in fr])
        scale *= d
    return out, scale


def _bareiss(m, ncols):
    """In-place fraction-free forward elimination on integer rows.

    Eliminates the first ``ncols`` columns and returns the permutation sign,
    or None as soon as a column has no nonzero pivot (singular leading block).
    Every division is exact (Sylvester's identity).
    """
    n = len(m)
    width = len(m[0]) if m else 0
    sign, prev = 1, 1
    for k in range(min(n, ncols)):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return None
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign


def determinant(a):
    """Exact determinant by Bareiss elimination on an integer-scaled copy."""
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if n == 0:
        return Fraction(1)
    m, scale = _integer_rows(a)
    sign = _bareiss(m, n)
    if sign is None:
        return Fraction(0)
    return Fraction(sign * m[n - 1][n - 1], scale)


def linear_solve(a, b):
    """Solve ``a x = b`` exactly; ``b`` may be a vector or a matrix of columns.

    Returns None when ``a`` is singular (no unique solution).
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    n = a.shape[0]
    vector = b.ndim == 1
    bb = b.reshape(n, -1)
    if n == 0:
        return np.empty(b.shape, dtype=object)
    aug = np.concatenate([a, bb], axis=1)
    m, _ = _integer_rows(aug)
    if _bareiss(m, n) is None:
        return None
    if m[n - 1][n - 1] == 0:
        return None
    k = bb.shape[1]
    x = [[Fraction(0)] * k for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = m[i]
        for c in range(k):
            s = row[n + c] - sum(row[j] * x[j][c] for j in range(i + 1, n))
            x[i][c] = Fraction(s) / row[i]
    out = np.array(x, dtype=object)
    return out[:, 0] if vector else out


def inverse(a):
    n = a.shape[0]
    return linear_solve(a, identity(n))


def spd_solve(h, r):
    """Solve ``h x = r`` for symmetric positive definite ``h`` via Cholesky.

    Raises NumericalBreakdown (1-based pivot index) if the factorization meets
    a non-positive pivot.
    """
    h = np.asarray(h, dtype=float)
    r = np.asarray(r, dtype=float)
    c, info = lapack.dpotrf(h, lower=1, clean=1)
    if info > 0:
        raise NumericalBreakdown(info)
    if info < 0:
        raise ValueError(f"dpotrf: illegal argument {-info}")
    x, info = lapack.dpotrs(c, r, lower=1)
    if info != 0:
        raise ValueError(f"dpotrs failed with info={info}")
    return x


def fmt(x):
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v):
    return "(" + ", ".join(fmt(x) for x in v) + ")"


def fmt_mat(a):
    cells = [[fmt(x) for x in row] for row in a]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)
