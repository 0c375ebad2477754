"""Clans (Vinberg algebras) given by structure constants and a grading.

A basis vector carries a weight ``(k, j)`` with ``k >= j`` meaning it lies in
the weight space ``V_kj``; ``(j, j)`` is the primitive idempotent ``c_j``.
The basis is sorted lexicographically by ``(k, j)``:
``(1,1), (2,1), (2,2), (3,1), (3,2), (3,3), ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .report import ValidationReport

Weight = tuple[int, int]


class ClanError(ValueError):
    pass


class DecompositionError(ClanError):
    pass


@dataclass(frozen=True, eq=False)
class Algebra:
    """Finite-dimensional algebra: ``(x△y)_c = sum_ab x_a y_b C[a, b, c]``."""

    constants: np.ndarray
    s0: np.ndarray

    @property
    def dim(self) -> int:
        return self.constants.shape[0]

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        if x.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}, got shape {x.shape}")
        return x

    @cached_property
    def table(self) -> dict[tuple[int, int], list[tuple[int, Fraction]]]:
        """Nonzero structure constants keyed by basis pair."""
        out: dict[tuple[int, int], list] = {}
        for a, b, c in zip(*np.nonzero(self.constants != 0)):
            out.setdefault((int(a), int(b)), []).append((int(c), self.constants[a, b, c]))
        return out

    def _sparse_product(self, x, y) -> np.ndarray:
        out = la.zeros(self.dim)
        xs = [(a, v) for a, v in enumerate(x) if v != 0]
        ys = [(b, v) for b, v in enumerate(y) if v != 0]
        for a, xa in xs:
            for b, yb in ys:
                for c, val in self.table.get((a, b), ()):
                    out[c] = out[c] + xa * yb * val
        return out

    def product(self, x, y) -> np.ndarray:
        return self._sparse_product(self._check(x), self._check(y))

    def left_mult(self, x) -> np.ndarray:
        x = self._check(x)
        out = la.zeros(self.dim, self.dim)
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            for b in range(self.dim):
                for c, val in self.table.get((a, b), ()):
                    out[c, b] = out[c, b] + xa * val
        return out

    def right_mult(self, y) -> np.ndarray:
        y = self._check(y)
        out = la.zeros(self.dim, self.dim)
        for b, yb in enumerate(y):
            if yb == 0:
                continue
            for a in range(self.dim):
                for c, val in self.table.get((a, b), ()):
                    out[c, a] = out[c, a] + yb * val
        return out

    def basis_left_mult(self, a: int) -> np.ndarray:
        return self.constants[a].T

    @cached_property
    def _gram(self) -> np.ndarray:
        return np.tensordot(self.constants, self.s0, axes=1)

    def gram(self) -> np.ndarray:
        """``G[a, b] = s0(e_a △ e_b)``."""
        return self._gram.copy()

    @cached_property
    def _gram_inverse(self) -> np.ndarray:
        return la.inverse(self._gram)

    @cached_property
    def _dual_constants(self) -> np.ndarray:
        return dual_constants(self)

    def inner(self, x, y):
        return self._check(x) @ self._gram @ self._check(y)

    def left_symmetry_violation(self) -> tuple[int, int] | None:
        """First basis pair breaking ``[L_x, L_y] = L_{x△y - y△x}``.

        Checked on basis triples: ``x△(y△z) - y△(x△z) = (x△y - y△x)△z``.
        """
        n = self.dim
        units = [la.unit(n, a) for a in range(n)]
        left = [[self._sparse_product(units[a], units[b]) for b in range(n)] for a in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                comm = left[a][b] - left[b][a]
                for z in range(n):
                    lhs = self._sparse_product(units[a], left[b][z]) - self._sparse_product(
                        units[b], left[a][z]
                    )
                    if not la.equal(lhs, self._sparse_product(comm, units[z])):
                        return a, b
        return None


@dataclass(frozen=True, eq=False)
class Clan(Algebra):
    weights: tuple[Weight, ...] = ()
    name: str = ""

    def __post_init__(self):
        n = self.constants.shape[0]
        if self.constants.shape != (n, n, n):
            raise ClanError(f"structure constants must be n x n x n, got {self.constants.shape}")
        if len(self.s0) != n or len(self.weights) != n:
            raise ClanError("s0 and basis labels must match the dimension")
        for k, j in self.weights:
            if not 1 <= j <= k:
                raise ClanError(f"bad weight {(k, j)}: need 1 <= j <= k")

    @property
    def rank(self) -> int:
        return sum(1 for k, j in self.weights if k == j)

    def idempotent_index(self, j: int) -> int:
        return self.weights.index((j, j))

    def idempotent(self, j: int) -> np.ndarray:
        return la.unit(self.dim, self.idempotent_index(j))

    def unit(self) -> np.ndarray:
        e = la.zeros(self.dim)
        for j in range(1, self.rank + 1):
            e[self.idempotent_index(j)] = Fraction(1)
        return e

    def c_eps(self, eps: Sequence[int]) -> np.ndarray:
        x = la.zeros(self.dim)
        for j, e in enumerate(eps, start=1):
            if e:
                x[self.idempotent_index(j)] = Fraction(1)
        return x

    def indices(self, weight: Weight) -> list[int]:
        return [a for a, w in enumerate(self.weights) if w == weight]

    def weight_dim(self, k: int, j: int) -> int:
        return len(self.indices((k, j)))

    def level_indices(self, level: int) -> tuple[int, list[int], list[int]]:
        """Split indices as ``R c_l``, ``V^[l] = sum_k V_kl`` and the rest below."""
        c = self.idempotent_index(level)
        first = [a for a, (k, j) in enumerate(self.weights) if j == level and k > level]
        rest = [a for a, (k, j) in enumerate(self.weights) if j > level]
        return c, first, rest

    def with_constant(self, a: int, b: int, c: int, value) -> "Clan":
        consts = self.constants.copy()
        consts[a, b, c] = la.frac(value)
        return Clan(consts, self.s0.copy(), self.weights, self.name + "*")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clan):
            return NotImplemented
        return (
            self.weights == other.weights
            and la.equal(self.s0, other.s0)
            and la.equal(self.constants, other.constants)
        )

    __hash__ = None


def product(A: Algebra, x, y) -> np.ndarray:
    return A.product(x, y)


def left_mult(A: Algebra, x) -> np.ndarray:
    return A.left_mult(x)


# ---------------------------------------------------------------------------
# multiplication rules


def product_weight(x: Weight, y: Weight) -> Weight | None:
    """Weight space that must contain ``V_x △ V_y``; None means the product is 0.

    With ``x = (j, i)`` and ``y = (l, k)``:
    ``V_ji △ V_lk = 0`` unless ``i`` is ``k`` or ``l``;
    ``V_ji △ V_li`` lies in ``V_{max(j,l), min(j,l)}``;
    ``V_ji △ V_ik`` lies in ``V_jk``.
    """
    j, i = x
    l, k = y
    if i == k:
        return (max(j, l), min(j, l))
    if i == l:
        return (j, k)
    return None


def _lex_sorted(weights: Sequence[Weight]) -> bool:
    return list(weights) == sorted(weights)


def validate_axioms(A: Clan) -> ValidationReport:
    rep = ValidationReport(f"clan {A.name or '<anonymous>'}")
    n, r = A.dim, A.rank
    sorted_ok = _lex_sorted(A.weights)
    rep.add("basis_order", sorted_ok, "" if sorted_ok else "basis must be sorted by (k, j)")

    diag_ok = all(A.weight_dim(j, j) == 1 for j in range(1, r + 1)) and all(
        k <= r for k, _ in A.weights
    )
    rep.add("idempotent_labels", diag_ok, "" if diag_ok else "need exactly one basis vector per (j, j)")
    if not diag_ok:
        return rep

    bad = None
    for j in range(1, r + 1):
        for k in range(1, r + 1):
            p = A.product(A.idempotent(j), A.idempotent(k))
            want = A.idempotent(j) if j == k else la.zeros(n)
            if not la.equal(p, want):
                bad = bad or (j, k)
    rep.add("orthogonal_idempotents", bad is None, f"c_{bad[0]} c_{bad[1]}" if bad else "")

    e = A.unit()
    unit_ok = la.equal(A.left_mult(e), la.identity(n)) and la.equal(
        A.right_mult(e), la.identity(n)
    )
    rep.add("unit", unit_ok, "" if unit_ok else "c_1 + ... + c_r is not a two-sided unit")

    # grading: L_{c_i} v = (d_ij + d_ik)/2 v and v△c_i = d_ij v  for v in V_kj
    bad = None
    for a, (k, j) in enumerate(A.weights):
        v = la.unit(n, a)
        for i in range(1, r + 1):
            ci = A.idempotent(i)
            lam = Fraction((i == j) + (i == k), 2)
            if not la.equal(A.product(ci, v), lam * v) or not la.equal(
                A.product(v, ci), Fraction(int(i == j)) * v
            ):
                bad = bad or (a, i)
    rep.add("grading", bad is None, f"basis {bad[0]} against c_{bad[1]}" if bad else "")

    bad = None
    for a in range(n):
        for b in range(n):
            target = product_weight(A.weights[a], A.weights[b])
            for c in range(n):
                if A.constants[a, b, c] != 0 and A.weights[c] != target:
                    bad = bad or (a, b, c)
    rep.add(
        "multiplication_rules",
        bad is None,
        f"e_{bad[0]} e_{bad[1]} has a component on e_{bad[2]}" if bad else "",
    )

    v1 = A.left_symmetry_violation()
    rep.add("left_symmetry", v1 is None, f"basis pair {v1}" if v1 else "")

    g = A.gram()
    pd = la.is_positive_definite(g)
    rep.add("compactness", pd, "" if pd else "Gram of s0(x△y) is not positive definite")
    rep.add(
        "s0_positive_on_idempotents",
        all(A.s0[A.idempotent_index(j)] > 0 for j in range(1, r + 1)),
    )
    orth = all(
        g[a, b] == 0 for a in range(n) for b in range(n) if A.weights[a] != A.weights[b]
    )
    rep.add("weight_orthogonality", orth)

    # normality: the two structural checks force every L_x to be lower
    # triangular in the sorted basis, hence real spectrum
    tri = all(
        A.constants[a, b, c] == 0 for a in range(n) for b in range(n) for c in range(b)
    )
    structural = rep.get("grading").passed and rep.get("multiplication_rules").passed
    rep.add(
        "normality",
        structural and tri,
        "" if structural and tri else "left multiplications not certified lower triangular",
    )
    return rep


# ---------------------------------------------------------------------------
# normal decomposition


@dataclass
class Grading:
    rank: int
    bases: dict[Weight, np.ndarray]
    change_of_basis: np.ndarray  # columns: adapted basis in input coordinates
    weights: tuple[Weight, ...] = field(default=())

    def dims(self) -> dict[Weight, int]:
        return {w: b.shape[1] for w, b in self.bases.items()}


def normal_decomposition(A, idempotents: Sequence | None = None) -> Grading:
    """Weight spaces ``V_kj`` as simultaneous solutions of the idempotent conditions.

    ``A`` is a :class:`Clan` (its own idempotents are used) or any
    :class:`Algebra` together with a complete orthogonal system of idempotents
    given as coordinate vectors.
    """
    from_input = idempotents is not None
    if idempotents is None:
        if not isinstance(A, Clan):
            raise DecompositionError("ungraded input needs an idempotent system")
        idempotents = [A.idempotent(j) for j in range(1, A.rank + 1)]
    cs = [np.asarray(la.vector(c)) for c in idempotents]
    n, r = A.dim, len(cs)
    eye = la.identity(n)
    lefts = [A.left_mult(c) for c in cs]
    rights = [A.right_mult(c) for c in cs]

    bases: dict[Weight, np.ndarray] = {}
    for k in range(1, r + 1):
        for j in range(1, k + 1):
            rows = []
            for i in range(1, r + 1):
                lam = Fraction((i == j) + (i == k), 2)
                rows.append(lefts[i - 1] - lam * eye)
                rows.append(rights[i - 1] - Fraction(int(i == j)) * eye)
            space = la.nullspace(np.concatenate(rows, axis=0))
            if j == k:
                if space.shape[1] != 1 or la.coordinates(space, cs[j - 1]) is None:
                    raise DecompositionError(f"V_{k}{j} is not spanned by c_{j}")
                space = cs[j - 1].reshape(n, 1)
            bases[(k, j)] = space

    total = sum(b.shape[1] for b in bases.values())
    if total != n:
        raise DecompositionError(f"weight spaces have total dimension {total}, expected {n}")
    weights = tuple(w for w in sorted(bases) for _ in range(bases[w].shape[1]))
    p = np.concatenate([bases[w] for w in sorted(bases)], axis=1)
    if la.rank(p) != n:
        raise DecompositionError("weight spaces are not independent")
    if isinstance(A, Clan) and not from_input and tuple(A.weights) != weights:
        raise DecompositionError("basis labels disagree with the computed weight spaces")
    return Grading(r, bases, p, weights)


def graded_clan(A: Algebra, idempotents: Sequence, name: str = "") -> tuple[Clan, Grading]:
    """Rewrite an ungraded algebra in a basis adapted to its normal decomposition."""
    g = normal_decomposition(A, idempotents)
    p = g.change_of_basis
    pinv = la.inverse(p)
    n = A.dim
    consts = la.zeros(n, n, n)
    for a in range(n):
        for b in range(n):
            consts[a, b] = pinv @ A.product(p[:, a], p[:, b])
    s0 = p.T @ A.s0
    return Clan(consts, s0, g.weights, name), g


# ---------------------------------------------------------------------------
# dual product


def dual_constants(A: Algebra) -> np.ndarray:
    """Structure constants of ``⩔`` in the basis of ``A``.

    ``<x ⩔ y, z> = <y, x △ z>`` gives ``L'_x = G^{-1} L_x^T G``.
    """
    g = A.gram()
    ginv = la.inverse(g)
    n = A.dim
    out = la.zeros(n, n, n)
    for a in range(n):
        ld = ginv @ A.basis_left_mult(a).T @ g
        out[a] = ld.T
    return out


def dual_product(A: Algebra, x, y) -> np.ndarray:
    x, y = A._check(x), A._check(y)
    return np.tensordot(x, A._dual_constants, axes=1).T @ y


def dual_permutation(A: Clan) -> tuple[list[int], tuple[Weight, ...]]:
    """Basis order and labels of the dual clan.

    ``V_kj`` of ``(V, △)`` becomes ``V_{r+1-j, r+1-k}`` of ``(V, ⩔)``.
    """
    r = A.rank
    new = [(r + 1 - j, r + 1 - k) for k, j in A.weights]
    order = sorted(range(A.dim), key=lambda a: new[a])
    return order, tuple(new[a] for a in order)


def dual_algebra(A: Clan) -> Clan:
    d = dual_constants(A)
    order, weights = dual_permutation(A)
    d = d[np.ix_(order, order, order)]
    name = A.name[5:-1] if A.name.startswith("dual(") else f"dual({A.name})"
    return Clan(d, A.s0[order], weights, name)


# ---------------------------------------------------------------------------
# subclans


def subclan(A: Clan, level: int = 2) -> tuple[Clan, list[int]]:
    """Subclan on ``sum_{level <= j <= k} V_kj`` with idempotents renumbered from 1."""
    idx = [a for a, (k, j) in enumerate(A.weights) if j >= level]
    shift = level - 1
    weights = tuple((k - shift, j - shift) for k, j in (A.weights[a] for a in idx))
    consts = A.constants[np.ix_(idx, idx, idx)]
    return Clan(consts, A.s0[idx], weights, f"{A.name}'"), idx
