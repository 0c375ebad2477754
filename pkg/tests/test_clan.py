from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conelab import linalg as la
from conelab.builtins import build_diagonal_clan, build_rank1_clan, build_sym_clan, builtin_clan
from conelab.clan import (
    Algebra,
    ClanError,
    DecompositionError,
    dual_algebra,
    dual_product,
    graded_clan,
    normal_decomposition,
    product_weight,
    subclan,
    validate_axioms,
)

import oracles

H = Fraction(1, 2)
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def coords(m):
    n = m * (m + 1) // 2
    return st.lists(rationals, min_size=n, max_size=n)


def e(A, a):
    return la.unit(A.dim, a)


# --- products --------------------------------------------------------------


def test_sym2_products_match_dense_oracle(sym2):
    c1, e21, c2 = (e(sym2, a) for a in range(3))
    assert la.equal(sym2.product(e21, e21), 2 * c2)
    assert la.equal(sym2.product(c1, e21), H * e21)
    assert la.equal(sym2.product(e21, c1), e21)
    for a in range(3):
        for b in range(3):
            x, y = oracles.to_matrix(e(sym2, a), 2), oracles.to_matrix(e(sym2, b), 2)
            want = oracles.to_coords(oracles.sym_product(x, y))
            assert list(sym2.product(e(sym2, a), e(sym2, b))) == want


@given(coords(3), coords(3))
def test_sym3_product_matches_oracle(x, y):
    A = build_sym_clan(3)
    want = oracles.sym_product(oracles.to_matrix(x, 3), oracles.to_matrix(y, 3))
    assert list(A.product(la.vector(x), la.vector(y))) == oracles.to_coords(want)


@pytest.mark.parametrize("name", ["sym:1", "sym:2", "sym:3", "dual-vinberg", "rank1", "diag:3"])
def test_unit_is_two_sided(name):
    A = builtin_clan(name)
    x = la.vector(range(1, A.dim + 1))
    assert la.equal(A.product(A.unit(), x), x)
    assert la.equal(A.product(x, A.unit()), x)


def test_left_mult_examples(sym2):
    lc1 = sym2.left_mult(e(sym2, 0))
    assert [lc1[i, i] for i in range(3)] == [1, H, 0]
    assert la.is_zero(lc1 - np.diag(np.diag(lc1)))
    assert la.equal(sym2.left_mult(sym2.unit()), la.identity(3))
    assert la.is_zero(sym2.left_mult(la.zeros(3)))


def test_product_weight_rules():
    assert product_weight((2, 1), (2, 1)) == (2, 2)
    assert product_weight((3, 1), (2, 1)) == (3, 2)
    assert product_weight((2, 1), (3, 2)) is None
    assert product_weight((3, 2), (2, 1)) == (3, 1)


# --- axioms ----------------------------------------------------------------


@pytest.mark.parametrize("name", ["sym:1", "sym:2", "sym:3", "dual-vinberg", "rank1", "diag:2"])
def test_builtins_pass_axioms(name):
    report = validate_axioms(builtin_clan(name))
    assert report.ok, str(report)


def test_broken_compactness(sym2):
    bad = sym2.with_constant(1, 1, 2, -2)
    report = validate_axioms(bad)
    assert not report.get("compactness").passed
    assert la.det(bad.gram()) < 0


def test_broken_left_symmetry(sym2):
    bad = sym2.with_constant(0, 1, 1, Fraction(1, 3))
    report = validate_axioms(bad)
    assert not report.ok


def test_rank1():
    A = build_rank1_clan()
    assert A.dim == 1 and A.rank == 1
    assert validate_axioms(A).ok
    assert normal_decomposition(A).dims() == {(1, 1): 1}


def test_inner_product_trace(sym2):
    x = e(sym2, 1)
    m = oracles.to_matrix(x, 2)
    assert sym2.inner(x, x) == oracles.trace_inner(m, m) == 2


# --- normal decomposition --------------------------------------------------


def test_sym3_decomposition(sym3):
    g = normal_decomposition(sym3)
    assert g.dims() == {(k, j): 1 for k in range(1, 4) for j in range(1, k + 1)}


def test_dual_vinberg_decomposition(dual_vinberg):
    dims = normal_decomposition(dual_vinberg).dims()
    order = [(1, 1), (2, 2), (3, 3), (2, 1), (3, 1), (3, 2)]
    assert [dims.get(w, 0) for w in order] == [1, 1, 1, 1, 1, 0]


def test_ungraded_input_is_regraded(sym3):
    # scramble the basis by an invertible change of coordinates
    n = sym3.dim
    rng = np.random.default_rng(4)
    while True:
        p = la.matrix(rng.integers(-2, 3, size=(n, n)).tolist())
        if la.det(p) != 0:
            break
    pinv = la.inverse(p)
    consts = la.zeros(n, n, n)
    for a in range(n):
        for b in range(n):
            consts[a, b] = pinv @ sym3.product(p[:, a], p[:, b])
    scrambled = Algebra(consts, p.T @ sym3.s0)
    cs = [pinv @ sym3.idempotent(j) for j in range(1, 4)]
    clan, g = graded_clan(scrambled, cs)
    assert clan.weights == sym3.weights
    assert validate_axioms(clan).ok


def test_ungraded_without_idempotents_is_rejected(sym2):
    with pytest.raises(DecompositionError):
        normal_decomposition(Algebra(sym2.constants, sym2.s0))


def test_mislabelled_basis_is_reported(sym2):
    bad = type(sym2)(sym2.constants, sym2.s0, ((1, 1), (2, 2), (2, 1)), "bad")
    report = validate_axioms(bad)
    assert not report.get("basis_order").passed
    with pytest.raises(ClanError):
        normal_decomposition(bad)


# --- dual ------------------------------------------------------------------


@pytest.mark.parametrize("name", ["sym:2", "sym:3", "dual-vinberg", "rank1", "diag:3"])
def test_commutator_relation(name):
    A = builtin_clan(name)
    for a in range(A.dim):
        for b in range(A.dim):
            x, y = e(A, a), e(A, b)
            lhs = A.product(x, y) - A.product(y, x)
            rhs = dual_product(A, y, x) - dual_product(A, x, y)
            assert la.equal(lhs, rhs)


@given(coords(3), coords(3))
def test_sym_dual_formula(x, y):
    A = build_sym_clan(3)
    want = oracles.sym_dual_product(oracles.to_matrix(x, 3), oracles.to_matrix(y, 3))
    assert list(dual_product(A, la.vector(x), la.vector(y))) == oracles.to_coords(want)


def test_diagonal_clan_is_self_dual():
    A = build_diagonal_clan(3)
    assert la.equal(dual_algebra(A).constants, A.constants)


@pytest.mark.parametrize("name", ["sym:2", "sym:3", "dual-vinberg"])
def test_double_dual(name):
    A = builtin_clan(name)
    D = dual_algebra(A)
    assert validate_axioms(D).ok
    assert dual_algebra(D) == A


def test_dual_vinberg_dual_relabels(dual_vinberg):
    D = dual_algebra(dual_vinberg)
    dims = normal_decomposition(D).dims()
    assert dims.get((3, 2)) == 1 and dims.get((3, 1)) == 1 and dims.get((2, 1), 0) == 0


def test_subclan(sym3):
    sub, idx = subclan(sym3, 2)
    assert idx == [2, 4, 5]
    assert sub.weights == build_sym_clan(2).weights
    assert la.equal(sub.constants, build_sym_clan(2).constants)
