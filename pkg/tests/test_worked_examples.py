"""Small hand-checkable examples, one assertion block per documented case."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from vermapde import oracle, weyl
from vermapde.operators import (
    apply_d,
    apply_eta,
    apply_eta_chain,
    apply_eta_power,
    apply_raising_composite,
    apply_zeta,
    check_pde,
)
from vermapde.series import (
    TruncatedSeries,
    agrees_above_frontier,
    derivative,
    is_polynomial,
    make_exponents,
    weight_of,
)

S = TruncatedSeries
V = oracle.VermaVector
LAMS = [(Fraction(2, 3), Fraction(5, 7)), (Fraction(-3, 2), Fraction(4)), (Fraction(0), Fraction(1))]


def x(n, i, j, p=1):
    return S.variable(n, i, j, p)


def exps_of(f):
    (e,) = f.terms
    return e


# -- series -------------------------------------------------------------------------

def test_addition_examples():
    assert (x(2, 2, 1) + (-x(2, 2, 1))).is_zero()
    assert len(S.one(2) + x(2, 2, 1)) == 2
    a = S(2, {}, frontier=(Fraction(-3),))
    assert (S.zero(2) + a).frontier == (Fraction(-3),)


def test_multiplication_examples():
    h = x(2, 2, 1, Fraction(1, 2))
    assert h * h == x(2, 2, 1)
    f = x(3, 3, 1) + x(3, 3, 2)
    assert S.one(3) * f == f
    assert f * x(3, 2, 1) == x(3, 3, 1) * x(3, 2, 1) + x(3, 3, 2) * x(3, 2, 1)


def test_derivative_examples():
    r = Fraction(5, 2)
    assert derivative((2, 1), x(2, 2, 1, r)) == x(2, 2, 1, r - 1) * r
    assert derivative((3, 1), x(3, 2, 1)).is_zero()
    assert derivative((2, 1), x(3, 2, 1, 2) * x(3, 3, 1)) == x(3, 2, 1) * x(3, 3, 1) * 2


@pytest.mark.parametrize("lam", LAMS)
def test_weight_examples(lam):
    l1, l2 = lam
    assert weight_of(exps_of(S.one(3)), lam) == lam
    assert weight_of(exps_of(x(3, 2, 1)), lam) == (l1 - 2, l2 + 1)
    assert weight_of(exps_of(x(3, 3, 2, l2 + 1)), lam) == (l1 + l2 + 1, -l2 - 2)


def test_polynomial_examples():
    assert is_polynomial(S.one(2))
    assert not is_polynomial(x(2, 2, 1, Fraction(3, 2)))
    assert is_polynomial(x(2, 2, 1, 4))


def test_agreement_examples():
    assert agrees_above_frontier(x(2, 2, 1) * 3, x(2, 2, 1) * 3)
    tail = S(2, {(Fraction(-7),): Fraction(1)}, frontier=(Fraction(-6),))
    assert agrees_above_frontier(S.zero(2), tail)
    a = S(2, {(Fraction(1),): Fraction(1)}, frontier=(Fraction(-5),))
    b = S(2, {(Fraction(1),): Fraction(1), (Fraction(-9),): Fraction(1)}, frontier=(Fraction(-5),))
    assert agrees_above_frontier(a, b)
    # the constructor already discards the term below the frontier
    assert b == a


# -- operators -------------------------------------------------------------------------

def test_eta_examples():
    assert apply_eta(1, S.one(2)) == x(2, 2, 1)
    assert apply_eta(2, S.one(3)) == x(3, 3, 2)
    assert apply_eta(2, x(3, 2, 1)) == x(3, 3, 2) * x(3, 2, 1) + x(3, 3, 1)
    assert apply_eta_power(1, Fraction(7, 3), S.one(2)) == x(2, 2, 1, Fraction(7, 3))
    two = apply_eta_power(2, 2, x(3, 2, 1))
    assert two == x(3, 3, 2, 2) * x(3, 2, 1) + x(3, 3, 1) * x(3, 3, 2) * 2
    assert two == apply_eta(2, apply_eta(2, x(3, 2, 1)))


@pytest.mark.parametrize("lam", LAMS)
def test_d_and_zeta_examples(lam):
    l1, l2 = lam
    assert apply_d(1, lam, S.one(3)).is_zero() and apply_d(2, lam, S.one(3)).is_zero()
    assert apply_d(1, lam, x(3, 2, 1)) == S.one(3) * l1
    assert apply_zeta(1, lam, S.one(3)) == S.one(3) * l1
    assert apply_zeta(2, lam, S.one(3)) == S.one(3) * l2
    assert apply_zeta(1, lam, x(3, 2, 1)) == x(3, 2, 1) * (l1 - 2)
    assert apply_zeta(2, lam, x(3, 2, 1)) == x(3, 2, 1) * (l2 + 1)


def test_classical_sl2_vector():
    assert apply_d(1, (3,), x(2, 2, 1, 4)).is_zero()
    assert all(r.is_zero() for r in check_pde((3,), x(2, 2, 1, 4)))


@pytest.mark.parametrize("lam", LAMS)
def test_composite_examples(lam):
    f = x(3, 2, 1) * x(3, 3, 2, 2) + x(3, 3, 1)
    assert apply_raising_composite(2, lam, f) == apply_d(2, lam, f)
    assert apply_raising_composite(1, lam, S.one(3)).is_zero()


def test_composite_kills_singular_vectors():
    for cert in weyl.singular_vectors((1, 1)):
        assert apply_raising_composite(2, (1, 1), cert.series).is_zero()
        assert apply_raising_composite(1, (1, 1), cert.series).is_zero()


@pytest.mark.parametrize("lam", LAMS)
def test_chain_examples(lam):
    l1, l2 = lam
    f = x(3, 3, 1) + 2
    assert apply_eta_chain([], f) == f
    a = Fraction(-5, 4)
    assert apply_eta_chain([(1, a)], S.one(3)) == x(3, 2, 1, a)
    got = apply_eta_chain([(1, l1 + l2 + 2), (2, l2 + 1)], S.one(3))
    assert got == x(3, 2, 1, l1 + l2 + 2) * x(3, 3, 2, l2 + 1)
    assert got == weyl.evaluate_word((1, 2), lam)


@pytest.mark.parametrize("lam", LAMS)
def test_pde_examples(lam):
    assert all(r.is_zero() for r in check_pde(lam, S.one(3)))
    res = check_pde(lam, x(3, 2, 1))
    assert res[0] == S.one(3) * lam[0]


# -- weyl action -------------------------------------------------------------------------

@pytest.mark.parametrize("lam", LAMS)
def test_decompose_examples(lam):
    assert len(weyl.decompose_weighted(x(3, 3, 1) * 4, lam)) == 1
    groups = dict(weyl.decompose_weighted(S.one(3) + x(3, 2, 1), lam))
    assert set(groups) == {lam, (lam[0] - 2, lam[1] + 1)}
    assert weyl.decompose_weighted(S.zero(3), lam) == []


@pytest.mark.parametrize("lam", LAMS)
def test_sigma_examples(lam):
    l1, l2 = lam
    assert weyl.apply_sigma(1, lam, S.one(3)) == x(3, 2, 1, l1 + 1)
    assert weyl.apply_sigma(2, lam, S.one(3)) == x(3, 3, 2, l2 + 1)
    assert weyl.evaluate_word((), lam) == S.one(3)
    assert weyl.evaluate_word((1,), lam) == x(3, 2, 1, l1 + 1)
    assert weyl.evaluate_word((1, 2), lam) == x(3, 2, 1, l1 + l2 + 2) * x(3, 3, 2, l2 + 1)


def test_canonical_word_examples():
    assert weyl.canonical_word((1, 2, 3)) == ()
    assert weyl.canonical_word((2, 1)) == (1,)
    assert weyl.canonical_word((3, 2, 1)) == (1, 2, 1)


def test_orbit_examples():
    certs = weyl.orbit((3,))
    assert [c.series for c in certs] == [S.one(2), x(2, 2, 1, 4)]
    assert all(c.polynomial and c.residual_norm_zero for c in certs)
    assert len(weyl.orbit((1, 1))) == 6
    half = weyl.orbit((Fraction(1, 2),))
    assert half[1].series == x(2, 2, 1, Fraction(3, 2)) and not half[1].polynomial


def test_singular_vector_examples():
    assert [c.series for c in weyl.singular_vectors((Fraction(-1, 2),))] == [S.one(2)]
    assert len(weyl.singular_vectors((1, 1))) == 6
    assert [c.series for c in weyl.singular_vectors((0,))] == [S.one(2), x(2, 2, 1)]


def test_mff_examples():
    assert weyl.mff_vector(1, 1, (2,)) == (x(2, 2, 1, 3), True)
    assert weyl.mff_vector(1, 2, (1, 1))[1]
    f, poly = weyl.mff_vector(1, 1, (Fraction(1, 3),))
    assert f == x(2, 2, 1, Fraction(4, 3)) and not poly


# -- oracle ----------------------------------------------------------------------------------

def test_basis_examples():
    assert oracle.enumerate_basis(2, (3,)) == [(3,)]
    assert oracle.enumerate_basis(3, (1, 0)) == [(1, 0, 0)]
    assert sorted(oracle.enumerate_basis(3, (1, 1))) == [(0, 1, 0), (1, 0, 1)]


def test_lower_examples():
    v = V.highest(3)
    assert oracle.lower(1, v) == V.basis_vector(3, {(2, 1): 1})
    w = oracle.lower(2, V.basis_vector(3, {(2, 1): 1}))
    assert w == V.basis_vector(3, {(2, 1): 1, (3, 2): 1}) + V.basis_vector(3, {(3, 1): 1})
    for alpha in oracle.enumerate_basis(3, (1, 2)):
        out = oracle.lower(1, V(3, {alpha: Fraction(1)}))
        assert out.degrees() == {(2, 2)}


@pytest.mark.parametrize("lam", LAMS)
def test_raise_examples(lam):
    assert oracle.raise_(1, lam, V.basis_vector(3, {(2, 1): 1})) == V.highest(3).scaled(lam[0])
    assert oracle.raise_(1, lam, V.highest(3)).is_zero()
    assert oracle.raise_(2, lam, V.highest(3)).is_zero()
    assert oracle.raise_(1, (3,), V.basis_vector(2, (4,))).is_zero()


def test_h_action_examples():
    lam = (Fraction(7, 3),)
    assert oracle.h_action(1, lam, (0,)) == lam[0]
    assert oracle.h_action(1, lam, (1,)) == lam[0] - 2


def test_h_action_matches_weight():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.choice((2, 3, 4, 5))
        lam = tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(n - 1))
        alpha = tuple(rng.randint(0, 3) for _ in range(n * (n - 1) // 2))
        (e,) = oracle.tau(V(n, {alpha: Fraction(1)})).terms
        assert weight_of(e, lam) == tuple(oracle.h_action(i, lam, alpha) for i in range(1, n))


def test_kernel_examples():
    assert oracle.singular_in_degree((3,), (4,)) == [V.basis_vector(2, (4,))]
    assert oracle.singular_in_degree((3,), (2,)) == []
    (v,) = oracle.singular_in_degree((1, 1), (2, 0))
    assert oracle.tau(v) == weyl.evaluate_word((1,), (1, 1))


def test_search_examples():
    assert oracle.search_singular((Fraction(1, 2),), 12) == []
    assert [k for k, _ in oracle.search_singular((3,), 12)] == [(4,)]
    degrees = {k for k, _ in oracle.search_singular((1, 1), 8)}
    orbit_degrees = {tuple(sum(a for a, c in zip(exps_lead, col) if c) for col in zip(*oracle._contents(3)))
                     for exps_lead in (tuple(int(t) for t in next(iter(cert.series.terms)))
                                       for cert in weyl.singular_vectors((1, 1)))} - {(0, 0)}
    assert degrees == orbit_degrees and len(degrees) == 5


def test_tau_examples():
    assert oracle.tau(V.highest(3)) == S.one(3)
    assert oracle.tau(V.basis_vector(3, {(2, 1): 1, (3, 2): 1})) == x(3, 2, 1) * x(3, 3, 2)
    rng = random.Random(9)
    for _ in range(20):
        v = V.make(4, {tuple(rng.randint(0, 2) for _ in range(6)): rng.randint(-3, 3) for _ in range(3)})
        assert oracle.tau_inverse(oracle.tau(v)) == v
    assert make_exponents(3, {}) == (0, 0, 0)
