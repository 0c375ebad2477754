"""Independent reference computations used by the tests.

Nothing here goes through the structure constants of the library; the
symmetric-matrix formulas are evaluated directly on dense matrices.
"""

from fractions import Fraction
from itertools import combinations, permutations

import numpy as np


def sym_labels(m):
    return [(k, j) for k in range(m) for j in range(k + 1)]


def to_matrix(coords, m):
    x = np.zeros((m, m), dtype=object)
    x[:] = Fraction(0)
    for c, (k, j) in zip(coords, sym_labels(m)):
        x[k, j] = Fraction(c)
        x[j, k] = Fraction(c)
    return x


def to_coords(x):
    m = x.shape[0]
    return [Fraction(x[k, j]) for k, j in sym_labels(m)]


def underline(x):
    m = x.shape[0]
    out = np.zeros((m, m), dtype=object)
    out[:] = Fraction(0)
    for i in range(m):
        for j in range(i):
            out[i, j] = x[i, j]
        out[i, i] = Fraction(x[i, i]) / 2
    return out


def sym_product(x, y):
    lo = underline(x)
    return lo @ y + y @ lo.T


def sym_dual_product(x, y):
    lo = underline(x)
    return lo.T @ y + y @ lo


def trace_inner(x, y):
    return sum((x @ y)[i, i] for i in range(x.shape[0]))


def leibniz_det(x):
    """Determinant by permutation expansion (small matrices only)."""
    n = x.shape[0]
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, p in enumerate(perm):
            term *= x[i, p]
            if term == 0:
                break
        total += term
    return total


def leading_minors_positive(x):
    return all(leibniz_det(x[:k, :k]) > 0 for k in range(1, x.shape[0] + 1))


def all_principal_minors_nonneg(x):
    n = x.shape[0]
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if leibniz_det(x[np.ix_(idx, idx)]) < 0:
                return False
    return True


def psd_trichotomy(x):
    if leading_minors_positive(x):
        return "interior"
    if all_principal_minors_nonneg(x):
        return "boundary"
    return "outside"


def congruence_action(m, h, vs, x):
    """``T x T^T`` with ``T = D_1 exp(lower(v_1)) D_2 ... D_m`` for Sym(m)."""
    T = np.eye(m, dtype=object) * Fraction(1)
    for j in range(m):
        D = np.eye(m, dtype=object) * Fraction(1)
        D[j, j] = Fraction(h[j])
        T = T @ D
        if j < m - 1:
            n = underline(to_matrix(vs[j], m))
            # nilpotent: lower(v_j) has a single nonzero column, n @ n = 0
            T = T @ (np.eye(m, dtype=object) + n)
    return T @ x @ T.T


def radical_congruence(m, h_squared, scaled, eps):
    """``T c_eps T^T`` in exact radicals, ``T = D_1 (I + lower(v_1)) D_2 ... D_m``.

    ``scaled[j]`` holds ``h_j v_j`` in Sym(m) coordinates; ``v_j = scaled[j] / h_j``.
    """
    import sympy

    h = [sympy.sqrt(sympy.Rational(q.numerator, q.denominator)) for q in map(Fraction, h_squared)]
    T = sympy.eye(m)
    for j in range(m):
        D = sympy.eye(m)
        D[j, j] = h[j]
        T = T * D
        if j < m - 1:
            n = sympy.zeros(m, m)
            for c, (k, i) in zip(scaled[j], sym_labels(m)):
                if c != 0 and k != i:
                    n[k, i] = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) / h[j]
            T = T * (sympy.eye(m) + n)
    c = sympy.diag(*[int(e) for e in eps])
    out = (T * c * T.T).applyfunc(sympy.expand)
    return [out[k, j] for k, j in sym_labels(m)]


def ldl_orbit_point(m, h_squared, scaled, eps):
    """``T c_eps T^T`` without radicals.

    Column ``j`` of ``T`` is ``(h_j^2 e_j + p_j) / h_j`` where ``p_j`` is the
    column-``j`` part of ``scaled[j]``, so ``T c_eps T^T`` is a sum of
    rational rank-one terms.
    """
    out = np.zeros((m, m), dtype=object)
    out[:] = Fraction(0)
    for j in range(m):
        if not eps[j]:
            continue
        w = np.zeros(m, dtype=object)
        w[:] = Fraction(0)
        w[j] = Fraction(h_squared[j])
        if j < m - 1:
            for c, (k, i) in zip(scaled[j], sym_labels(m)):
                if k != i:
                    w[k] += Fraction(c)
        out = out + np.outer(w, w) / Fraction(h_squared[j])
    return to_coords(out)
