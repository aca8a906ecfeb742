from hypothesis import given

from mshopf.gntrees import (
    admissible_cuts,
    check_gn_grading,
    check_pi_gn_morphism,
    check_pi_rt_morphism,
    pi_rt,
)
from mshopf.graphs import chain
from mshopf.multiscale import gn_tree
from strategies import assigned


@given(assigned())
def test_pi_gn_intertwines(G):
    assert check_pi_gn_morphism(G)


@given(assigned(rho=2))
def test_pi_gn_intertwines_padded(G):
    assert check_pi_gn_morphism(G, 3)


@given(assigned())
def test_pi_rt_intertwines(G):
    assert check_pi_rt_morphism(gn_tree(G))


@given(assigned())
def test_grading(G):
    assert check_gn_grading(gn_tree(G))


def test_cuts_of_nested_chain():
    T = gn_tree(chain(2).assign((1, 1, 2, 2)))
    assert len(admissible_cuts(T)) == 1


def test_literal_contraction_is_not_a_morphism():
    T = gn_tree(chain(2).assign((0, 0, 0, 1)))
    assert check_pi_rt_morphism(T)
    assert not check_pi_rt_morphism(T, divergent_only=False)
    assert pi_rt(T) != pi_rt(T, divergent_only=False)
