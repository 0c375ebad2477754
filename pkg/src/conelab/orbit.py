"""Orbit classification of the image of a quadratic map.

For a valid representation the image ``Q[E]`` is the closure of the orbit
``rho(H) c_eps``.  ``reconstruct`` produces, for a given ``nu``, either an
exact group element with ``rho(h) c_eps = Q[nu]`` or, when some leading
projection vanishes, a dyadic family ``h_s`` with ``rho(h_s) c_eps -> Q[nu]``.

Normalization: with ``xi△xi = 2 Q[xi]`` one has ``Q[xi] = |xi|^2 / s0(c_1) c_1``
on ``E_1``, so a level contributes ``h^2 = |xi|^2 / s0(c_1)`` and scaled
nilpotent part ``h u = a△xi``.  The doubled map ``nu -> nu△nu`` uses twice
these constants; :func:`doubled_form_holds` checks that variant separately.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg as la
from .clan import subclan
from .group import GroupElement, orbit_point
from .quadratic import (
    QuadraticRep,
    RepresentationError,
    random_vector,
    restrict_to_subclan,
    split,
    validate_rep,
)


class ClassificationError(ValueError):
    pass


def epsilon_by_dimension(d: Sequence[int], vdims: dict[tuple[int, int], int]) -> tuple[int, ...]:
    """``eps`` from ``d_j = dim phi(c_j) E`` and ``vdims[(k, j)] = dim V_kj`` (k > j).

    Whenever a level is occupied, ``dim V_kj`` is used up from each lower ``d_k``.
    """
    d = list(d)
    if any(x < 0 for x in d):
        raise ClassificationError("block dimensions must be nonnegative")
    r = len(d)
    eps = []
    for j in range(1, r + 1):
        e = int(d[j - 1] > 0)
        eps.append(e)
        if e:
            for k in range(j + 1, r + 1):
                d[k - 1] -= vdims.get((k, j), 0)
                if d[k - 1] < 0:
                    raise ClassificationError(
                        f"dim phi(c_{k})E - dim V_{k}{j} < 0: not a positive homogeneous map"
                    )
    return tuple(eps)


def rep_dimensions(R: QuadraticRep) -> tuple[list[int], dict[tuple[int, int], int]]:
    A = R.clan
    vdims = {(k, j): A.weight_dim(k, j) for k in range(1, A.rank + 1) for j in range(1, k)}
    return list(R.blocks), vdims


def _first_vector(R: QuadraticRep) -> np.ndarray:
    return la.unit(R.dimE, R.block_indices(1)[0])


def _random_chooser(rng: random.Random) -> Callable[[QuadraticRep], np.ndarray]:
    def choose(R: QuadraticRep) -> np.ndarray:
        while True:
            xi = la.zeros(R.dimE)
            for a in R.block_indices(1):
                xi[a] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if not la.is_zero(xi):
                return xi

    return choose


def _classify(R: QuadraticRep, choose) -> tuple[int, ...]:
    r = R.clan.rank
    if r == 0:
        return ()
    if r == 1:
        return (int(R.blocks[0] > 0),)
    if R.blocks[0] == 0:
        return (0,) + _classify(restrict_to_subclan(R), choose)
    sd = split(R, choose(R))
    return (1,) + _classify(sd.restricted, choose)


def classify(R: QuadraticRep, seed: int = 0, cross_check: bool = True) -> tuple[int, ...]:
    """``eps`` by the rank recursion through the split representations.

    With ``cross_check`` the result is compared against the dimension formula
    and against a second run using random choices of ``xi``.
    """
    eps = _classify(R, _first_vector)
    if cross_check:
        by_dim = epsilon_by_dimension(*rep_dimensions(R))
        if eps != by_dim:
            raise ClassificationError(f"recursion gives {eps}, dimensions give {by_dim}")
        again = _classify(R, _random_chooser(random.Random(seed)))
        if again != eps:
            raise ClassificationError(f"eps depends on the choice of xi: {eps} vs {again}")
    return eps


# ---------------------------------------------------------------------------
# reconstruction


@dataclass
class Level:
    eps: int
    h2: Fraction = Fraction(1)
    scaled: np.ndarray | None = None  # global coordinates
    boundary: bool = False


@dataclass
class OrbitCertificate:
    epsilon: tuple[int, ...]
    kind: str  # "exact" or "boundary"
    levels: list[Level]
    target: np.ndarray  # Q[nu]
    schedule: list[Fraction] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)

    def element(self, s: Fraction = Fraction(1)) -> GroupElement:
        """Group element of the family at parameter ``s`` (ignored when exact)."""
        h2s, scaled = [], []
        for lv in self.levels:
            factor = s if lv.boundary else Fraction(1)
            h2s.append(lv.h2 * factor * factor)
            scaled.append(lv.scaled * factor)
        return GroupElement(tuple(h2s), tuple(scaled[:-1]))

    @property
    def final_element(self) -> GroupElement:
        return self.element(self.schedule[-1] if self.schedule else Fraction(1))

    def residuals_decreasing(self, steps: int | None = None) -> bool:
        rs = self.residuals if steps is None else self.residuals[:steps]
        return all(b < a for a, b in zip(rs, rs[1:]))


def _plan(R: QuadraticRep, nu: np.ndarray, index: list[int], dim: int) -> list[Level]:
    A = R.clan
    if A.rank == 0:
        return []

    def embed(v: np.ndarray) -> np.ndarray:
        out = la.zeros(dim)
        out[index] = v
        return out

    if R.blocks[0] == 0:
        sub = restrict_to_subclan(R)
        _, idx = subclan(A, 2)
        return [Level(0, scaled=la.zeros(dim))] + _plan(sub, nu, [index[i] for i in idx], dim)

    xi = R.projector(1) @ nu
    boundary = la.is_zero(xi)
    direction = _first_vector(R) if boundary else xi
    sd = split(R, direction, revalidate=False)
    _, a, _, b_coords = sd.decompose(nu)
    c1 = A.idempotent_index(1)
    level = Level(1, R.norm2(direction) / A.s0[c1], embed(sd.r_star_of(a)), boundary)
    return [level] + _plan(sd.restricted, b_coords, [index[i] for i in sd.sub_indices], dim)


def v_norm(R: QuadraticRep, x) -> float:
    return math.sqrt(float(R.clan.inner(x, x)))


def reconstruct(
    R: QuadraticRep,
    nu,
    tol: float = 1e-9,
    max_steps: int = 64,
    min_steps: int = 4,
) -> OrbitCertificate:
    """Orbit certificate for ``Q[nu]``.

    When every level has a nonzero leading projection the certificate is
    exact.  Otherwise the vanishing projections are replaced by ``s * eta``
    along ``s = 1, 1/2, 1/4, ...`` until the residual drops below ``tol``.
    """
    A = R.clan
    nu = R._e(nu)
    eps = epsilon_by_dimension(*rep_dimensions(R))
    levels = _plan(R, nu, list(range(A.dim)), A.dim)
    plan_eps = tuple(lv.eps for lv in levels)
    if plan_eps != eps:
        raise ClassificationError(f"reconstruction levels give {plan_eps}, classification {eps}")
    target = R.q(nu)
    if not any(lv.boundary for lv in levels):
        cert = OrbitCertificate(eps, "exact", levels, target)
        if not la.equal(orbit_point(A, cert.element(), eps), target):
            raise ClassificationError("exact reconstruction failed")
        return cert

    cert = OrbitCertificate(eps, "boundary", levels, target)
    s = Fraction(1)
    for step in range(max_steps):
        diff = target - orbit_point(A, cert.element(s), eps)
        cert.schedule.append(s)
        cert.residuals.append(v_norm(R, diff))
        if step + 1 >= min_steps and cert.residuals[-1] < tol:
            break
        s /= 2
    return cert


def check_certificate(R: QuadraticRep, nu, cert: OrbitCertificate) -> bool:
    """Independent check of a certificate through the group action."""
    target = R.q(R._e(nu))
    if cert.kind == "exact":
        return la.equal(orbit_point(R.clan, cert.element(), cert.epsilon), target)
    recomputed = [
        v_norm(R, target - orbit_point(R.clan, cert.element(s), cert.epsilon))
        for s in cert.schedule
    ]
    return (
        len(recomputed) >= 4
        and all(b < a for a, b in zip(recomputed, recomputed[1:]))
        and np.allclose(recomputed, cert.residuals, rtol=1e-12, atol=0)
    )


def doubled_form_holds(R: QuadraticRep, nu) -> bool:
    """Level identity for the doubled map ``nu -> nu△nu = 2 Q[nu]``.

    ``nu△nu = e^t c_1 + e^{t/2} u + (u△u)/2 + b△b`` with ``e^t = 2|xi|^2/s0(c_1)``
    and ``e^{t/2} u = 2 a△xi``, checked at every level with ``xi != 0``.
    """
    A = R.clan
    nu = R._e(nu)
    if A.rank == 0 or R.dimE == 0:
        return True
    if R.blocks[0] == 0:
        return doubled_form_holds(restrict_to_subclan(R), nu)
    xi = R.projector(1) @ nu
    if la.is_zero(xi):
        return True
    sd = split(R, xi, revalidate=False)
    _, a, b, b_coords = sd.decompose(nu)
    et = 2 * R.norm2(xi) / A.s0[A.idempotent_index(1)]
    scaled_u = 2 * sd.r_star_of(a)
    lhs = 2 * R.q(nu)  # nu△nu in W
    rhs = et * A.idempotent(1) + scaled_u + A.product(scaled_u, scaled_u) / (2 * et) + 2 * R.q(b)
    return la.equal(lhs, rhs) and doubled_form_holds(sd.restricted, b_coords)


def verify_image(R: QuadraticRep, samples: int = 100, seed: int = 0, height: int = 9) -> dict:
    """Sampled check of ``Q[E]`` inside the closure of ``rho(H) c_eps``."""
    report = validate_rep(R, samples=10, seed=seed)
    if not report.ok:
        raise RepresentationError(f"refusing to verify an invalid representation: {report}")
    eps = classify(R, seed=seed)
    by_dim = epsilon_by_dimension(*rep_dimensions(R))
    rng = random.Random(seed)
    exact = boundary = failed = 0
    for _ in range(samples if R.dimE else 0):
        nu = random_vector(rng, R.dimE, height)
        cert = reconstruct(R, nu)
        ok = check_certificate(R, nu, cert) and cert.epsilon == eps
        if not ok:
            failed += 1
        elif cert.kind == "exact":
            exact += 1
        else:
            boundary += 1
    return {
        "epsilon": list(eps),
        "epsilon_by_dimension": list(by_dim),
        "samples": samples,
        "seed": seed,
        "exact": exact,
        "boundary": boundary,
        "failed": failed,
        "ok": failed == 0 and eps == by_dim,
    }
