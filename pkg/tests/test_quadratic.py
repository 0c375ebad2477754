import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conelab import io
from conelab import linalg as la
from conelab.builtins import build_sym_clan, builtin_clan
from conelab.group import Status, peel_membership
from conelab.quadratic import (
    RepresentationError,
    build_W,
    random_vector,
    split,
    subclan_square_rep,
    sym_column_rep,
    table_violations,
    validate_rep,
    w_regions,
    zero_rep,
)

import oracles

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def vec(n):
    return st.lists(rationals, min_size=n, max_size=n).map(la.vector)


def bundled_reps():
    return [sym_column_rep(2), sym_column_rep(3), sym_column_rep(4), sym_column_rep(3, 2),
            subclan_square_rep(builtin_clan("dual-vinberg"))]


# --- Q and phi -------------------------------------------------------------


@given(vec(3))
def test_column_model_q_is_outer_product(xi):
    R = sym_column_rep(3)
    want = np.outer(xi, xi)
    assert list(R.q(xi)) == oracles.to_coords(want)


@given(vec(6))
def test_two_column_model_q(nu):
    R = sym_column_rep(3, 2)
    n = nu.reshape(3, 2)
    assert list(R.q(nu)) == oracles.to_coords(n @ n.T)


@given(vec(3), vec(3), vec(6))
def test_polarization_and_adjoint(xi, eta, x):
    R = sym_column_rep(3)
    q = R.q_bilinear(xi, eta)
    assert la.equal(q, R.q_bilinear(eta, xi))
    assert la.equal(2 * q, R.q(xi + eta) - R.q(xi) - R.q(eta))
    # <x, Q(xi, eta)>_V = <phi(x) xi, eta>_E with the trace inner product
    xm = oracles.to_matrix(x, 3)
    assert oracles.trace_inner(xm, oracles.to_matrix(q, 3)) == eta @ xm @ xi


@pytest.mark.parametrize(
    "R,dims",
    [
        (sym_column_rep(3), (1, 1, 1)),
        (sym_column_rep(3, 2), (2, 2, 2)),
        (sym_column_rep(2), (1, 1)),
        (subclan_square_rep(builtin_clan("dual-vinberg")), (1, 1)),
    ],
    ids=lambda v: getattr(v, "name", str(v)),
)
def test_valid_reps(R, dims):
    report = validate_rep(R, samples=10)
    assert report.ok, str(report)
    assert tuple(la.rank(R.phi_of(R.clan.idempotent(j))) for j in range(1, R.clan.rank + 1)) == dims


def test_zero_rep_is_valid():
    assert validate_rep(zero_rep(build_sym_clan(2))).ok


def test_doubled_unit_fails():
    R = io.load_rep("bad-unit")
    report = validate_rep(R, samples=5)
    assert not report.ok
    assert not report.get("unit").passed
    assert "phi(e_V)" in report.get("unit").detail


def test_broken_law_names_pair():
    R = sym_column_rep(2)
    phi = list(R.phi)
    phi[1] = phi[1] * 2
    bad = type(R)(R.clan, tuple(phi), R.blocks, R.gram, "bad-law")
    check = validate_rep(bad, samples=0).get("representation_law")
    assert not check.passed and "e_" in check.detail


# --- W = E + V -------------------------------------------------------------


@pytest.mark.parametrize("R", bundled_reps(), ids=lambda R: R.name)
def test_w_is_left_symmetric(R):
    W = build_W(R)
    assert W.left_symmetry_violation() is None
    assert table_violations(R, W) == []


@given(vec(3), vec(3))
def test_w_products(xi, eta):
    R = sym_column_rep(3)
    W = build_W(R)
    x1, x2 = W.join(xi, la.zeros(6)), W.join(eta, la.zeros(6))
    p12, p21 = W.product(x1, x2), W.product(x2, x1)
    assert la.equal(p12, p21)
    assert la.equal(W.split(p12)[1], 2 * R.q_bilinear(xi, eta))
    assert W.inner(x1, x1) == 2 * R.norm2(xi)


def test_w_product_with_e1_vector():
    R = sym_column_rep(2)
    W = build_W(R)
    xi = W.join(la.unit(2, 0), la.zeros(3))
    assert list(W.split(W.product(xi, xi))[1]) == [2, 0, 0]


@pytest.mark.parametrize("R", bundled_reps(), ids=lambda R: R.name)
def test_e1_square_is_multiple_of_c1(R):
    W = build_W(R)
    rng = random.Random(3)
    e1 = R.block_indices(1)
    xi = la.zeros(R.dimE)
    for a in e1:
        xi[a] = Fraction(rng.randint(1, 7), rng.randint(1, 7))
    w = W.join(xi, la.zeros(R.clan.dim))
    c1 = R.clan.idempotent(1)
    assert la.equal(W.split(W.product(w, w))[1], 2 * R.norm2(xi) / (R.clan.s0 @ c1) * c1)


def test_w_regions_partition():
    R = sym_column_rep(3, 2)
    regions = w_regions(R)
    flat = sorted(i for v in regions.values() for i in v)
    assert flat == list(range(R.dimE + R.clan.dim))


# --- splitting -------------------------------------------------------------


@pytest.mark.parametrize("x", [1, -3, Fraction(2, 5)])
def test_sym2_split(x):
    R = sym_column_rep(2)
    sd = split(R, la.vector([x, 0]))
    assert sd.r.tolist() == [[x]]
    assert sd.image.shape[1] == 1 and la.coordinates(sd.image, la.vector([0, 1])) is not None
    assert sd.kernel.shape[1] == 0
    assert sd.scalar == Fraction(x) ** 2
    assert list(sd.r_star_of(la.vector([0, x]))) == [0, Fraction(x) ** 2, 0]


def test_sym3_two_column_split_dims():
    R = sym_column_rep(3, 2)
    sd = split(R, la.vector([1, 2, 0, 0, 0, 0]))
    assert sd.image.shape[1] == 2 and sd.kernel.shape[1] == 2
    assert sd.restricted.blocks == (1, 1)
    assert sd.checks.ok


@pytest.mark.parametrize("R", [sym_column_rep(2), sym_column_rep(3), sym_column_rep(3, 2)],
                         ids=lambda R: R.name)
@settings(max_examples=10)
@given(seed=st.integers(0, 10_000))
def test_split_identities(R, seed):
    rng = random.Random(seed)
    xi = la.zeros(R.dimE)
    while la.is_zero(xi):
        for a in R.block_indices(1):
            xi[a] = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
    sd = split(R, xi, revalidate=False)
    eprime = R.dimE - len(R.block_indices(1))
    img, ker = sd.image, sd.kernel
    assert img.shape[1] + ker.shape[1] == eprime
    assert la.rank(np.concatenate([img, ker], axis=1)) == eprime
    assert la.equal(sd.r_star @ sd.r, R.norm2(xi) / R.clan.s0[0] * la.identity(sd.r.shape[1]))
    for i in range(img.shape[1]):
        for j in range(ker.shape[1]):
            assert la.is_zero(R.q_bilinear(img[:, i], ker[:, j]))
    # Q restricted to the kernel is the restricted representation's Q
    b_coords = random_vector(rng, ker.shape[1])
    full = R.q(ker @ b_coords)
    assert la.is_zero(np.delete(full, sd.sub_indices))
    assert la.equal(full[sd.sub_indices], sd.restricted.q(b_coords))


def test_split_dims_do_not_depend_on_xi():
    R = sym_column_rep(3, 2)
    dims = {(split(R, la.vector(v), revalidate=False).image.shape[1])
            for v in ([1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [3, -2, 0, 0, 0, 0])}
    assert dims == {2}


def test_split_rejects_bad_xi():
    R = sym_column_rep(2)
    with pytest.raises(RepresentationError):
        split(R, la.vector([0, 0]))
    with pytest.raises(RepresentationError):
        split(R, la.vector([1, 1]))


@settings(max_examples=20)
@given(vec(6))
def test_image_in_closed_cone(nu):
    R = sym_column_rep(3, 2)
    assert peel_membership(R.clan, R.q(nu)).status is not Status.OUTSIDE
