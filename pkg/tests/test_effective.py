from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mshopf.algebra import convolve
from mshopf.effective import (
    CatalogDepthError,
    SeriesTuple,
    assigned_catalog,
    check_action_law,
    check_antimorphism,
    check_assigned_lemma,
    check_combinatorial_lemma,
    check_effective_corollary,
    check_scheme_covariance,
    compose,
    delta_character,
    lam,
    psi,
    random_delta_characters,
)
from mshopf.graphs import bubble
from mshopf.hopf import character, epsilon
from mshopf.polynomials import Poly
from mshopf.renorm import ToyAmplitude


def test_catalog_weights_match_oracle():
    for e in assigned_catalog(2, 3):
        assert e.weight == e.oracle_weight
    assert len(assigned_catalog(2, 3)) == 64


def test_catalog_depth():
    with pytest.raises(CatalogDepthError):
        assigned_catalog(1, 5)


def test_psi_of_counit_is_identity():
    assert psi(epsilon(), 2, 3) == SeriesTuple.identity(2, 3)


def test_psi_first_order():
    s = psi(character(lambda g: Fraction(1)), 1, 2)
    # bubble(1,1) is the only quadruped with i_G > 0 at two vertices, weight 3/2
    assert s[0].poly == Poly.var(lam(0)) + Fraction(3, 2) * Poly.var(lam(1), 2)


@settings(max_examples=10)
@given(st.integers(0, 1000), st.sampled_from([1, 2]))
def test_antimorphism(seed, rho):
    for (g1, a), (g2, b) in random_delta_characters(rho, 3, 2, seed):
        alpha, beta = delta_character(g1, a), delta_character(g2, b)
        assert check_antimorphism(alpha, beta, rho, 3)


def test_antimorphism_order_matters():
    pairs = random_delta_characters(1, 3, 10, 0)
    flipped = 0
    for (g1, a), (g2, b) in pairs:
        alpha, beta = delta_character(g1, a), delta_character(g2, b)
        lhs = compose(psi(alpha, 1, 3), psi(beta, 1, 3))
        flipped += lhs != psi(convolve(alpha, beta), 1, 3)
    assert flipped > 0


def test_combinatorial_lemma_bubble():
    for source in ("oracle", "core"):
        res = check_combinatorial_lemma(bubble(), bubble(), source=source)
        assert res.lhs == res.rhs == Fraction(9, 2)
        assert sorted((w, n) for _, w, n in res.terms) == [(Fraction(3, 4), 2), (Fraction(3), 1)]


@pytest.mark.parametrize("mu1, mu2", [((2, 2), (1, 1)), ((2, 2), (0, 1)), ((1, 2), (0, 0))])
def test_assigned_lemma(mu1, mu2):
    lhs, rhs = check_assigned_lemma(bubble().assign(mu1), bubble().assign(mu2), 2)
    assert lhs == rhs


@pytest.mark.parametrize("model", ["toy", "local", "symbols"])
def test_corollary(model):
    res = check_effective_corollary(ToyAmplitude(model), 1, 3)
    assert res.holds
    assert [n for n, _, _ in res.coefficients()] == [0, 1, 2, 3]


def test_action_law():
    gamma = character(lambda g: Fraction(len(g.edges), 3))
    assert check_action_law(gamma, ToyAmplitude("local"), 1, 3)


def test_scheme_covariance():
    alpha = character(lambda g: Poly.const(Fraction(1, 2) if len(g.edges) == 2 else 0), Poly.const(1))
    assert check_scheme_covariance(alpha, ToyAmplitude("local"), 1, 3)
