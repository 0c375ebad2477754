"""The split solvable group H acting simply transitively on the cone.

Elements use the factorized coordinates

    h = exp(t_1 L_{c_1}) exp(L_{v_1}) exp(t_2 L_{c_2}) ... exp(L_{v_{r-1}}) exp(t_r L_{c_r})

with ``t_j = 2 log h_j``.  We store ``h_j**2`` and the scaled nilpotent
parts ``p_j = h_j v_j``.  Orbit points ``rho(h) c_eps`` are polynomial in
these (no square roots), so they stay exact over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .clan import Clan


class GroupError(ValueError):
    pass


def exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _sqrt(value):
    if isinstance(value, Fraction):
        s = exact_sqrt(value)
        if s is not None:
            return s
    return math.sqrt(value)


@dataclass(frozen=True, eq=False)
class GroupElement:
    h_squared: tuple
    scaled: tuple  # p_j = h_j v_j for j = 1..r-1, full-length coordinate vectors

    @property
    def rank(self) -> int:
        return len(self.h_squared)

    @property
    def exact(self) -> bool:
        return all(isinstance(h, Fraction) for h in self.h_squared) and all(
            isinstance(c, Fraction) for p in self.scaled for c in p
        )

    def h(self, j: int):
        """``h_j`` (1-based); exact when ``h_j**2`` is a rational square."""
        return _sqrt(self.h_squared[j - 1])

    def v(self, j: int) -> np.ndarray:
        return self.scaled[j - 1] / self.h(j)


def identity(A: Clan) -> GroupElement:
    return GroupElement(
        tuple(Fraction(1) for _ in range(A.rank)),
        tuple(la.zeros(A.dim) for _ in range(A.rank - 1)),
    )


def from_coordinates(A: Clan, h: Sequence, v: Sequence) -> GroupElement:
    """Build from ``h_j`` and unscaled ``v_j``.  Rational ``h`` keeps exactness."""
    h = [x if isinstance(x, float) else la.frac(x) for x in h]
    vs = [np.asarray(x, dtype=object) for x in v]
    if len(vs) < A.rank - 1:
        vs += [la.zeros(A.dim)] * (A.rank - 1 - len(vs))
    g = GroupElement(tuple(x * x for x in h), tuple(h[j] * vs[j] for j in range(A.rank - 1)))
    check_element(A, g)
    return g


def check_element(A: Clan, g: GroupElement) -> None:
    if g.rank != A.rank or len(g.scaled) != max(A.rank - 1, 0):
        raise GroupError(f"element has rank {g.rank}, clan has rank {A.rank}")
    for j, h2 in enumerate(g.h_squared, start=1):
        if not h2 > 0:
            raise GroupError(f"diagonal entry h_{j} must be positive")
    for j, p in enumerate(g.scaled, start=1):
        if len(p) != A.dim:
            raise GroupError(f"v_{j} has the wrong length")
        for a, c in enumerate(p):
            k, i = A.weights[a]
            if c != 0 and not (i == j and k > j):
                raise GroupError(f"v_{j} has a component outside V_kj, k > j (basis {a})")


def _diag_factor(A: Clan, g: GroupElement, j: int) -> np.ndarray:
    h = g.h(j)
    d = np.empty(A.dim, dtype=object)
    for a, (k, i) in enumerate(A.weights):
        if k == i == j:
            d[a] = g.h_squared[j - 1]
        elif k == j or i == j:
            d[a] = h
        else:
            d[a] = Fraction(1)
    return np.diag(d)


def _nilpotent_exp(A: Clan, v: np.ndarray) -> np.ndarray:
    """``exp(L_v)`` by the terminating series."""
    lv = A.left_mult(v)
    out = la.identity(A.dim)
    term = la.identity(A.dim)
    for k in range(1, A.dim + 1):
        term = lv @ term / k
        if la.is_zero(term):
            break
        out = out + term
    return out


def act_matrix(A: Clan, g: GroupElement) -> np.ndarray:
    check_element(A, g)
    m = la.identity(A.dim)
    for j in range(1, A.rank + 1):
        m = m @ _diag_factor(A, g, j)
        if j < A.rank:
            m = m @ _nilpotent_exp(A, g.v(j))
    return m


def act(A: Clan, g: GroupElement, x) -> np.ndarray:
    return act_matrix(A, g) @ A._check(x)


def act_dual(A: Clan, g: GroupElement, y) -> np.ndarray:
    """Contragredient action: ``<rho(g) x, rho*(g) y> = <x, y>``."""
    m = act_matrix(A, g)
    gram = A.gram()
    if any(isinstance(c, float) for c in m.flat):
        mf = m.astype(float)
        gf = gram.astype(float)
        dual = np.linalg.solve(gf, np.linalg.inv(mf).T @ gf)
        return dual @ A._check(y).astype(float)
    return la.solve(gram, la.inverse(m).T @ gram) @ A._check(y)


def orbit_point(A: Clan, g: GroupElement, eps: Sequence[int]) -> np.ndarray:
    """``rho(g) c_eps`` computed level by level.

    One level: ``rho(exp L_{t c_j} exp L_v)(c_j + w) = h^2 c_j + p + (p△p)/(2 h^2) + w``
    for ``w`` in the lower subclan, and levels with ``eps_j = 0`` act trivially.
    """
    check_element(A, g)
    if len(eps) != A.rank:
        raise GroupError("epsilon has the wrong length")
    y = la.zeros(A.dim)
    for j in range(A.rank, 0, -1):
        if not eps[j - 1]:
            continue
        h2 = g.h_squared[j - 1]
        y = y + h2 * A.idempotent(j)
        if j < A.rank:
            p = g.scaled[j - 1]
            y = y + p + A.product(p, p) / (2 * h2)
    return y


def compose(A: Clan, g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Coordinates of ``g1 g2``, recovered by peeling ``rho(g1 g2) e``."""
    x = act(A, g1, act(A, g2, A.unit()))
    res = peel_membership(A, x)
    if res.status is not Status.INTERIOR:
        raise GroupError("composition left the cone")
    return res.element


# ---------------------------------------------------------------------------
# membership


class Status(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass
class Membership:
    status: Status
    level: int | None = None  # failing level when OUTSIDE
    element: GroupElement | None = None  # rho(element) e = x when INTERIOR
    pivots: tuple = ()


def peel_membership(A: Clan, x) -> Membership:
    """Decide ``x in Omega``, ``x in closure(Omega)`` or neither by peeling levels.

    ``x = l c_1 + x1 + x'`` lies in ``Omega`` iff ``l > 0`` and
    ``x' - (x1△x1)/(2l)`` lies in the cone of the lower subclan.  For the
    closure a zero pivot requires ``x1 = 0``.
    """
    w = np.array(A._check(x), dtype=object, copy=True)
    interior = True
    h2s, scaled, pivots = [], [], []
    for j in range(1, A.rank + 1):
        c, first, _ = A.level_indices(j)
        lam = w[c]
        x1 = la.zeros(A.dim)
        x1[first] = w[first]
        pivots.append(lam)
        if lam > 0:
            h2s.append(lam)
            if j < A.rank:
                scaled.append(x1)
            w = w - lam * A.idempotent(j) - x1 - A.product(x1, x1) / (2 * lam)
        elif lam == 0:
            interior = False
            if not la.is_zero(x1):
                return Membership(Status.OUTSIDE, j, pivots=tuple(pivots))
            w[c] = 0
        else:
            return Membership(Status.OUTSIDE, j, pivots=tuple(pivots))
    if interior:
        return Membership(Status.INTERIOR, element=GroupElement(tuple(h2s), tuple(scaled)),
                          pivots=tuple(pivots))
    return Membership(Status.BOUNDARY, pivots=tuple(pivots))
