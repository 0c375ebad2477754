"""Built-in clans.

Normalizations are fixed here and are part of the fixture contract:

* ``sym:m``  symmetric matrices, ``x△y = lower(x) y + y upper(x)`` where
  ``lower(x)`` is the lower triangle with halved diagonal; basis
  ``e_kk = E_kk``, ``e_kj = E_kj + E_jk``; ``s0 = trace``.
* ``dual-vinberg``  rank 3, basis ``c1, a21, c2, a31, c3`` with
  ``a21△a21 = c2``, ``a31△a31 = c3`` and ``V_32 = 0``; ``s0`` sums the
  diagonal coordinates.
* ``rank1``  ``V = R c1``.
* ``diag:r``  ``R^r`` with coordinatewise product.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg as la
from .clan import Clan, ClanError

HALF = Fraction(1, 2)


def sym_weights(m: int) -> tuple[tuple[int, int], ...]:
    return tuple((k, j) for k in range(1, m + 1) for j in range(1, k + 1))


def sym_basis_matrix(m: int, weight: tuple[int, int]) -> np.ndarray:
    k, j = weight
    e = la.zeros(m, m)
    e[k - 1, j - 1] = Fraction(1)
    e[j - 1, k - 1] = Fraction(1)
    return e


def sym_to_coords(x: np.ndarray) -> np.ndarray:
    m = x.shape[0]
    return la.vector([x[k - 1, j - 1] for k, j in sym_weights(m)])


def coords_to_sym(v, m: int) -> np.ndarray:
    x = la.zeros(m, m)
    for c, (k, j) in zip(v, sym_weights(m)):
        x[k - 1, j - 1] = c
        x[j - 1, k - 1] = c
    return x


def lower_half(x: np.ndarray) -> np.ndarray:
    out = np.tril(x, -1).astype(object)
    for i in range(x.shape[0]):
        out[i, i] = x[i, i] * HALF
    return out


@lru_cache(maxsize=None)
def build_sym_clan(m: int) -> Clan:
    """Cached; the returned arrays are read-only."""
    if m < 1:
        raise ClanError("sym clan needs m >= 1")
    weights = sym_weights(m)
    n = len(weights)
    mats = [sym_basis_matrix(m, w) for w in weights]
    consts = la.zeros(n, n, n)
    for a, x in enumerate(mats):
        lo = lower_half(x)
        for b, y in enumerate(mats):
            consts[a, b] = sym_to_coords(lo @ y + y @ lo.T)
    s0 = la.vector([1 if k == j else 0 for k, j in weights])
    consts.setflags(write=False)
    s0.setflags(write=False)
    return Clan(consts, s0, weights, f"sym:{m}")


def build_dual_vinberg_clan() -> Clan:
    weights = ((1, 1), (2, 1), (2, 2), (3, 1), (3, 3))
    c1, a21, c2, a31, c3 = range(5)
    consts = la.zeros(5, 5, 5)
    for c in (c1, c2, c3):
        consts[c, c, c] = Fraction(1)
    for a, ck in ((a21, c2), (a31, c3)):
        consts[c1, a, a] = HALF
        consts[ck, a, a] = HALF
        consts[a, c1, a] = Fraction(1)
    consts[a21, a21, c2] = Fraction(1)
    consts[a31, a31, c3] = Fraction(1)
    s0 = la.vector([1, 0, 1, 0, 1])
    return Clan(consts, s0, weights, "dual-vinberg")


def build_diagonal_clan(r: int) -> Clan:
    if r < 1:
        raise ClanError("diagonal clan needs r >= 1")
    weights = tuple((j, j) for j in range(1, r + 1))
    consts = la.zeros(r, r, r)
    for j in range(r):
        consts[j, j, j] = Fraction(1)
    return Clan(consts, la.vector([1] * r), weights, f"diag:{r}")


def build_rank1_clan() -> Clan:
    c = build_diagonal_clan(1)
    return Clan(c.constants, c.s0, c.weights, "rank1")


def builtin_clan(name: str) -> Clan:
    if name == "rank1":
        return build_rank1_clan()
    if name == "dual-vinberg":
        return build_dual_vinberg_clan()
    head, _, arg = name.partition(":")
    if head in ("sym", "diag") and arg.isdigit():
        return build_sym_clan(int(arg)) if head == "sym" else build_diagonal_clan(int(arg))
    raise ClanError(f"unknown builtin clan {name!r}")
