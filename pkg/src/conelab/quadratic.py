"""Quadratic maps attached to a clan through a representation ``phi``.

``E`` carries an ordered basis adapted to the blocks ``E_1, ..., E_r`` with
``E_i = phi(c_i) E``.  The triangular halves of ``phi(x)`` are taken
blockwise: ``lower(phi(x)) = sum_{k>j} P_k phi(x) P_j + 1/2 sum_j P_j phi(x) P_j``,
which matches the entrywise halves whenever the diagonal blocks are scalar.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction

import numpy as np

from . import linalg as la
from .clan import Algebra, Clan, subclan
from .group import Status, act_dual, from_coordinates, peel_membership
from .report import ValidationReport

HALF = Fraction(1, 2)


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class QuadraticRep:
    clan: Clan
    phi: tuple  # one dimE x dimE matrix per clan basis vector
    blocks: tuple[int, ...]
    gram: np.ndarray  # inner product on E
    name: str = ""

    def __post_init__(self):
        m = sum(self.blocks)
        if len(self.blocks) != self.clan.rank:
            raise RepresentationError("need one block size per idempotent")
        if len(self.phi) != self.clan.dim:
            raise RepresentationError("need one matrix per clan basis vector")
        if self.gram.shape != (m, m):
            raise RepresentationError("E inner product has the wrong size")
        for a, p in enumerate(self.phi):
            if np.asarray(p).shape != (m, m):
                raise RepresentationError(f"phi(e_{a}) is not {m} x {m}")

    @property
    def dimE(self) -> int:
        return sum(self.blocks)

    def block_indices(self, i: int) -> list[int]:
        start = sum(self.blocks[: i - 1])
        return list(range(start, start + self.blocks[i - 1]))

    def projector(self, i: int) -> np.ndarray:
        p = la.zeros(self.dimE, self.dimE)
        for a in self.block_indices(i):
            p[a, a] = Fraction(1)
        return p

    def phi_of(self, x) -> np.ndarray:
        x = self.clan._check(x)
        out = la.zeros(self.dimE, self.dimE)
        for c, p in zip(x, self.phi):
            if c != 0:
                out = out + c * p
        return out

    def phi_lower(self, x) -> np.ndarray:
        f = self.phi_of(x)
        out = la.zeros(self.dimE, self.dimE)
        for j in range(1, self.clan.rank + 1):
            cols = self.block_indices(j)
            for k in range(j, self.clan.rank + 1):
                rows = self.block_indices(k)
                scale = HALF if k == j else Fraction(1)
                out[np.ix_(rows, cols)] = scale * f[np.ix_(rows, cols)]
        return out

    def phi_upper(self, x) -> np.ndarray:
        return self.phi_of(x) - self.phi_lower(x)

    def _e(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=object)
        if xi.shape != (self.dimE,):
            raise ValueError(f"expected a vector of length {self.dimE}, got shape {xi.shape}")
        return xi

    def inner_e(self, xi, eta):
        return self._e(xi) @ self.gram @ self._e(eta)

    def norm2(self, xi):
        return self.inner_e(xi, xi)

    @cached_property
    def _phi_entries(self) -> list[list[tuple[int, int, Fraction]]]:
        return [[(i, k, p[i, k]) for i, k in zip(*np.nonzero(p))] for p in self.phi]

    def q_bilinear(self, xi, eta) -> np.ndarray:
        """``Q(xi, eta)`` from ``<x, Q(xi, eta)>_V = <phi(x) xi, eta>_E``."""
        xi, eta = self._e(xi), self._e(eta)
        geta = self.gram @ eta
        f = la.zeros(self.clan.dim)
        for a, entries in enumerate(self._phi_entries):
            f[a] = sum((v * xi[k] * geta[i] for i, k, v in entries), Fraction(0))
        return self.clan._gram_inverse @ f

    def q(self, xi) -> np.ndarray:
        return self.q_bilinear(xi, xi)


def q_bilinear(R: QuadraticRep, xi, eta) -> np.ndarray:
    return R.q_bilinear(xi, eta)


# ---------------------------------------------------------------------------
# validation


def random_rational(rng: random.Random, height: int = 9) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_vector(rng: random.Random, n: int, height: int = 9) -> np.ndarray:
    return la.vector([random_rational(rng, height) for _ in range(n)])


def random_group_element(A: Clan, rng: random.Random, height: int = 5):
    """Random element with rational ``h_j`` (so every action is exact)."""
    h = [Fraction(rng.randint(1, height), rng.randint(1, height)) for _ in range(A.rank)]
    vs = []
    for j in range(1, A.rank):
        v = la.zeros(A.dim)
        for a, (k, i) in enumerate(A.weights):
            if i == j and k > j:
                v[a] = random_rational(rng, height)
        vs.append(v)
    return from_coordinates(A, h, vs)


def validate_rep(R: QuadraticRep, samples: int = 20, seed: int = 0) -> ValidationReport:
    """Exact structural checks plus sampled positivity.

    Positivity of ``Q`` cannot be decided from finitely many samples; the
    ``positivity`` entries record how many samples were certified.
    """
    A, m = R.clan, R.dimE
    rep = ValidationReport(f"representation {R.name or '<anonymous>'} of {A.name}")

    rep.add("inner_product", la.is_positive_definite(R.gram) if m else True,
            "" if m == 0 or la.is_positive_definite(R.gram) else "E Gram not positive definite")

    bad = [a for a, p in enumerate(R.phi) if not la.is_symmetric(R.gram @ p)]
    rep.add("self_adjoint", not bad, f"phi(e_{bad[0]}) not self-adjoint" if bad else "")

    unit_ok = la.equal(R.phi_of(A.unit()), la.identity(m))
    rep.add("unit", unit_ok, "" if unit_ok else "phi(e_V) != I")

    bad = [j for j in range(1, A.rank + 1) if not la.equal(R.phi_of(A.idempotent(j)), R.projector(j))]
    rep.add(
        "projections",
        not bad,
        f"phi(c_{bad[0]}) is not the projection onto block {bad[0]}" if bad else "",
    )

    dual = A._dual_constants
    bad = None
    for a in range(A.dim):
        ea = la.unit(A.dim, a)
        lo, up = R.phi_lower(ea), R.phi_upper(ea)
        for b in range(A.dim):
            lhs = R.phi_of(dual[a, b])
            rhs = up @ R.phi[b] + R.phi[b] @ lo
            if not la.equal(lhs, rhs):
                bad = (a, b)
                break
        if bad:
            break
    rep.add("representation_law", bad is None,
            f"phi(e_{bad[0]} ⩔ e_{bad[1]}) violates the law" if bad else "")

    if samples and m:
        rng = random.Random(seed)
        bad_q = None
        for _ in range(samples):
            xi = random_vector(rng, m)
            if la.is_zero(xi):
                continue
            qx = R.q(xi)
            if la.is_zero(qx) or peel_membership(A, qx).status is Status.OUTSIDE:
                bad_q = xi
                break
        rep.add("positivity_samples", bad_q is None,
                f"certified on {samples} samples" if bad_q is None
                else f"Q[xi] outside the closed cone for xi={list(map(str, bad_q))}")
        bad_d = None
        for _ in range(samples):
            y = act_dual(A, random_group_element(A, rng), A.unit())
            if not la.is_psd(R.gram @ R.phi_of(y)):
                bad_d = y
                break
        rep.add("dual_cone_semidefinite", bad_d is None,
                f"phi(y) >= 0 on {samples} dual-cone samples" if bad_d is None
                else "phi(y) not semidefinite for some y in the dual cone")
    return rep


# ---------------------------------------------------------------------------
# W = E + V


@dataclass(frozen=True, eq=False)
class ExtendedAlgebra(Algebra):
    """``W = E + V`` with E coordinates first."""

    dimE: int = 0

    def split(self, w) -> tuple[np.ndarray, np.ndarray]:
        w = self._check(w)
        return w[: self.dimE], w[self.dimE:]

    def join(self, xi, x) -> np.ndarray:
        return np.concatenate([np.asarray(xi, dtype=object), np.asarray(x, dtype=object)])


def build_W(R: QuadraticRep) -> ExtendedAlgebra:
    """``(xi1 + x1)△(xi2 + x2) = lower(phi(x1)) xi2 + 2 Q(xi1, xi2) + x1△x2``."""
    A, m = R.clan, R.dimE
    n = A.dim
    N = m + n
    consts = la.zeros(N, N, N)
    for a in range(m):
        ea = la.unit(m, a)
        for b in range(a, m):
            q2 = 2 * R.q_bilinear(ea, la.unit(m, b))
            consts[a, b, m:] = q2
            consts[b, a, m:] = q2
    for x in range(n):
        lo = R.phi_lower(la.unit(n, x))
        for b in range(m):
            consts[m + x, b, :m] = lo[:, b]
        consts[m + x, m:, m:] = A.constants[x]
    s0 = np.concatenate([la.zeros(m), A.s0])
    return ExtendedAlgebra(consts, s0, m)


def w_regions(R: QuadraticRep) -> dict[str, list[int]]:
    """Index sets of ``E_1``, ``E'``, ``R c_1``, ``V^[1]``, ``V'`` inside W."""
    m = R.dimE
    c, first, rest = R.clan.level_indices(1)
    e1 = R.block_indices(1)
    return {
        "E1": e1,
        "E'": [a for a in range(m) if a not in e1],
        "c1": [m + c],
        "V1": [m + a for a in first],
        "V'": [m + a for a in rest],
    }


# left factor -> right factor -> region containing the product (None: zero)
MULTIPLICATION_TABLE = {
    "E1": {"E1": "c1", "E'": "V1", "V1": None},
    "E'": {"E1": "V1", "E'": "V'", "V1": None},
    "V1": {"E1": "E'", "E'": None, "V1": "V'"},
}


def table_violations(R: QuadraticRep, W: ExtendedAlgebra | None = None) -> list[tuple]:
    W = W or build_W(R)
    regions = w_regions(R)
    out = []
    for left, row in MULTIPLICATION_TABLE.items():
        for right, target in row.items():
            allowed = set(regions[target]) if target else set()
            for a in regions[left]:
                for b in regions[right]:
                    for c in range(W.dim):
                        if W.constants[a, b, c] != 0 and c not in allowed:
                            out.append((left, right, a, b, c))
    return out


# ---------------------------------------------------------------------------
# splitting along a nonzero xi in E_1


@dataclass
class SplitData:
    rep: QuadraticRep
    xi: np.ndarray
    r: np.ndarray  # V^[1] -> E'
    r_star: np.ndarray  # E' -> V^[1]
    scalar: Fraction  # r_star r = scalar * id
    image: np.ndarray  # columns in E coordinates
    kernel: np.ndarray  # columns in E coordinates, adapted to blocks 2..r
    restricted: QuadraticRep  # phi restricted to the kernel, over V'
    sub_indices: list[int] = field(default_factory=list)  # V' inside V
    checks: ValidationReport | None = None

    def decompose(self, nu) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``nu = xi_nu + a + b``; returns ``(xi_nu, a, b, coordinates of b)``."""
        nu = self.rep._e(nu)
        p1 = self.rep.projector(1)
        xi = p1 @ nu
        rest = nu - xi
        basis = np.concatenate([self.image, self.kernel], axis=1)
        coords = la.coordinates(basis, rest)
        if coords is None:
            raise RepresentationError("E' is not spanned by image and kernel")
        k = self.image.shape[1]
        a = self.image @ coords[:k]
        b = self.kernel @ coords[k:]
        return xi, a, b, coords[k:]

    def r_star_of(self, a) -> np.ndarray:
        """``a△xi = 2 Q(a, xi)`` as a vector of V."""
        return 2 * self.rep.q_bilinear(a, self.xi)


def restrict_to_subclan(R: QuadraticRep) -> QuadraticRep:
    """The same E viewed over ``V'`` (used when ``E_1 = 0``)."""
    sub, idx = subclan(R.clan, 2)
    m = R.dimE
    first = R.block_indices(1)
    keep = [a for a in range(m) if a not in first]
    phi = tuple(np.asarray(R.phi[a])[np.ix_(keep, keep)] for a in idx)
    return QuadraticRep(sub, phi, R.blocks[1:], R.gram[np.ix_(keep, keep)], f"{R.name}'")


def split(R: QuadraticRep, xi, revalidate: bool = True) -> SplitData:
    A, m = R.clan, R.dimE
    xi = R._e(xi)
    if la.is_zero(xi):
        raise RepresentationError("xi must be nonzero")
    if not la.equal(R.projector(1) @ xi, xi):
        raise RepresentationError("xi must lie in E_1")
    checks = ValidationReport("split")
    c1, first, rest = A.level_indices(1)
    e1 = R.block_indices(1)
    eprime = [a for a in range(m) if a not in e1]

    r = la.zeros(len(eprime), len(first))
    for col, v in enumerate(first):
        r[:, col] = (R.phi_lower(la.unit(A.dim, v)) @ xi)[eprime]
    r_star = la.zeros(len(first), len(eprime))
    outside = False
    for col, a in enumerate(eprime):
        y = 2 * R.q_bilinear(la.unit(m, a), xi)
        outside |= any(y[i] != 0 for i in range(A.dim) if i not in first)
        r_star[:, col] = y[first]
    checks.add("r_star_lands_in_V1", not outside)

    scalar = R.norm2(xi) / A.s0[c1]
    checks.add("scalar_identity", la.equal(r_star @ r, scalar * la.identity(len(first))),
               f"r* r = {scalar} id")

    img = la.colspace(r)
    ker = la.nullspace(r_star)
    checks.add("direct_sum",
               img.shape[1] + ker.shape[1] == len(eprime)
               and la.rank(np.concatenate([img, ker], axis=1)) == len(eprime),
               f"dim image {img.shape[1]} + dim kernel {ker.shape[1]} = {len(eprime)}")

    def embed(cols: np.ndarray) -> np.ndarray:
        out = la.zeros(m, cols.shape[1])
        out[eprime, :] = cols
        return out

    image, kernel = embed(img), embed(ker)
    zero_prod = all(
        la.is_zero(R.q_bilinear(image[:, i], kernel[:, j]))
        for i in range(image.shape[1])
        for j in range(kernel.shape[1])
    )
    checks.add("image_kernel_products_vanish", zero_prod)

    # kernel basis adapted to the blocks E_2, ..., E_r
    cols, sizes = [], []
    for k in range(2, A.rank + 1):
        part = la.colspace(R.projector(k) @ kernel) if kernel.shape[1] else la.zeros(m, 0)
        cols.append(part)
        sizes.append(part.shape[1])
    adapted = np.concatenate(cols, axis=1) if cols else la.zeros(m, 0)
    checks.add("kernel_block_adapted", adapted.shape[1] == kernel.shape[1])

    sub, idx = subclan(A, 2)
    gram_b = adapted.T @ R.gram @ adapted
    phi_t = []
    invariant = True
    for a in idx:
        image_b = np.asarray(R.phi[a]) @ adapted
        if adapted.shape[1]:
            coeff = la.solve(gram_b, adapted.T @ R.gram @ image_b)
            invariant &= la.equal(adapted @ coeff, image_b)
        else:
            coeff = la.zeros(0, 0)
        phi_t.append(coeff)
    checks.add("kernel_invariant", invariant, "phi(V') preserves Ker r*")
    restricted = QuadraticRep(sub, tuple(phi_t), tuple(sizes), gram_b, f"{R.name}~")
    if revalidate:
        sub_report = validate_rep(restricted, samples=0)
        checks.add("restricted_representation", sub_report.ok,
                   "; ".join(c.name for c in sub_report.failures()))
    if not checks.ok:
        raise RepresentationError(f"split failed: {[c.name for c in checks.failures()]}")
    return SplitData(R, xi, r, r_star, scalar, image, adapted, restricted, idx, checks)


# ---------------------------------------------------------------------------
# built-in representations


def sym_column_rep(m: int, cols: int = 1) -> QuadraticRep:
    """``phi(x) = x`` acting on ``cols`` columns: ``Q[N] = N N^T`` for ``N`` of size m x cols.

    E coordinates are ordered row by row, so block ``i`` is row ``i``.
    """
    from .builtins import build_sym_clan, coords_to_sym

    A = build_sym_clan(m)
    eye = la.identity(cols)
    phi = tuple(np.kron(coords_to_sym(la.unit(A.dim, a), m), eye) for a in range(A.dim))
    suffix = "col" if cols == 1 else f"{cols}col"
    return QuadraticRep(A, phi, (cols,) * m, la.identity(m * cols), f"sym{m}-{suffix}")


def zero_rep(A: Clan) -> QuadraticRep:
    return QuadraticRep(A, tuple(la.zeros(0, 0) for _ in range(A.dim)), (0,) * A.rank,
                        la.zeros(0, 0), "zero")


def subclan_square_rep(A: Clan) -> QuadraticRep:
    """``Q'[xi] = xi△xi`` on ``E = V^[1]``, a representation of the subclan ``V'``."""
    _, first, _ = A.level_indices(1)
    sub, idx = subclan(A, 2)
    gram_e = A.gram()[np.ix_(first, first)]
    gram_sub = sub.gram()
    m = len(first)
    qs = {}
    for i in range(m):
        for j in range(m):
            ei, ej = la.unit(A.dim, first[i]), la.unit(A.dim, first[j])
            sym = (A.product(ei, ej) + A.product(ej, ei)) / 2
            qs[i, j] = sym[idx]
    phi = []
    for s in range(sub.dim):
        row = gram_sub[s]
        M = la.zeros(m, m)
        for i in range(m):
            for j in range(m):
                M[i, j] = row @ qs[i, j]
        phi.append(la.solve(gram_e, M) if m else M)
    blocks = tuple(A.weight_dim(k, 1) for k in range(2, A.rank + 1))
    return QuadraticRep(sub, tuple(phi), blocks, gram_e, f"{A.name}-square")
