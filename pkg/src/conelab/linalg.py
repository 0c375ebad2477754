"""Exact rational linear algebra on numpy object arrays of ``Fraction``.

Everything here is deliberately small: row reduction, kernels, images,
solves and a semidefiniteness test.  Entries are kept as ``Fraction`` so
equality tests are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


def frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("refusing to convert float to an exact rational")
    return Fraction(value)


def vector(values: Iterable) -> np.ndarray:
    out = [frac(v) for v in values]
    arr = np.empty(len(out), dtype=object)
    arr[:] = out
    return arr


def zeros(*shape: int) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(Fraction(0))
    return arr


def identity(n: int) -> np.ndarray:
    arr = zeros(n, n)
    for i in range(n):
        arr[i, i] = Fraction(1)
    return arr


def matrix(rows: Sequence[Sequence]) -> np.ndarray:
    rows = [list(r) for r in rows]
    if not rows:
        return zeros(0, 0)
    arr = zeros(len(rows), len(rows[0]))
    for i, r in enumerate(rows):
        if len(r) != arr.shape[1]:
            raise ValueError("ragged matrix")
        for j, v in enumerate(r):
            arr[i, j] = frac(v)
    return arr


def unit(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = Fraction(1)
    return v


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(a).flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = np.array(m, dtype=object, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def nullspace(m: np.ndarray) -> np.ndarray:
    """Columns form a basis of ``{x : m @ x = 0}`` (shape ``cols x k``)."""
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    a, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = Fraction(1)
        for i, p in enumerate(pivots):
            basis[p, k] = -a[i, f]
    return basis


def colspace(m: np.ndarray) -> np.ndarray:
    """Independent columns of ``m`` spanning its image."""
    m = np.asarray(m, dtype=object)
    if m.shape[1] == 0:
        return zeros(m.shape[0], 0)
    _, pivots = rref(m)
    return m[:, pivots]


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Unique solution of ``a @ x = b`` for square nonsingular ``a``.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("solve needs a square matrix")
    b = np.asarray(b, dtype=object)
    vec = b.ndim == 1
    rhs = b.reshape(n, -1)
    aug = np.concatenate([a, rhs], axis=1)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise np.linalg.LinAlgError("singular matrix")
    x = red[:, n:]
    return x[:, 0] if vec else x


def inverse(a: np.ndarray) -> np.ndarray:
    return solve(a, identity(np.asarray(a).shape[0]))


def coordinates(basis: np.ndarray, v: np.ndarray) -> np.ndarray | None:
    """Coordinates of ``v`` in the column basis, or None if outside the span."""
    k = basis.shape[1]
    aug = np.concatenate([basis, np.asarray(v, dtype=object).reshape(-1, 1)], axis=1)
    red, pivots = rref(aug)
    if k in pivots:
        return None
    x = zeros(k)
    for i, p in enumerate(pivots):
        x[p] = red[i, k]
    return x


def leading_minors(m: np.ndarray) -> list[Fraction]:
    m = np.asarray(m, dtype=object)
    out = []
    for k in range(1, m.shape[0] + 1):
        out.append(det(m[:k, :k]))
    return out


def det(m: np.ndarray) -> Fraction:
    a = np.array(m, dtype=object, copy=True)
    n = a.shape[0]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i, c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[[c, p]] = a[[p, c]]
            d = -d
        d *= a[c, c]
        for i in range(c + 1, n):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / a[c, c]) * a[c]
    return d


def is_symmetric(m: np.ndarray) -> bool:
    return equal(m, np.asarray(m).T)


def is_positive_definite(m: np.ndarray) -> bool:
    return is_symmetric(m) and all(x > 0 for x in leading_minors(m))


def is_psd(m: np.ndarray) -> bool:
    """Exact semidefiniteness of a symmetric rational matrix.

    Symmetric Gaussian elimination: a zero pivot forces its whole row to
    vanish, a negative pivot fails.
    """
    a = np.array(m, dtype=object, copy=True)
    if not is_symmetric(a):
        return False
    while a.shape[0]:
        p = a[0, 0]
        if p < 0:
            return False
        if p == 0:
            if not is_zero(a[0]):
                return False
            a = a[1:, 1:]
            continue
        a = a[1:, 1:] - np.outer(a[1:, 0], a[0, 1:]) / p
    return True
