import pytest
from hypothesis import given

from mshopf.graphs import bubble, chain, single_vertex, sunset, triangle_quadruped
from mshopf.hopf import (
    H,
    H_ALL,
    as_generator,
    check_antipode,
    check_coassociativity,
    check_counit,
    check_grading,
    check_pi_ck_morphism,
    pi_ck,
    pi_ck_report,
)
from mshopf.graphs import GraphError
from strategies import assigned


@given(assigned())
def test_axioms_hold(G):
    for h in (False, True):
        assert check_coassociativity(G, h)
        assert check_counit(G, h)
        assert check_antipode(G, h)
        assert check_grading(G, h)


@given(assigned(rho=2))
def test_recursive_antipode_equals_forest_sum(G):
    assert H.antipode(G) == H.antipode_by_forests(G)
    assert H_ALL.antipode(G) == H_ALL.antipode_by_forests(G)


def test_low_inside_high_is_primitive():
    assert len(H.coproduct(chain(2).assign((2, 2, 1, 1))).terms) == 3
    assert len(H.coproduct(bubble().assign((1, 1))).terms) == 2


def test_flat_chain_has_no_high_subgraph():
    G = chain(2).assign((1, 1, 1, 1))
    assert len(H.coproduct(G).terms) == 2
    assert len(H_ALL.coproduct(G).terms) == 3


def test_antipode_of_nested_chain():
    G = as_generator(chain(2).assign((1, 1, 2, 2)))
    S = H.antipode(G)
    assert len(S.terms) == 2


def test_single_vertex_is_not_a_generator():
    with pytest.raises(GraphError):
        as_generator(single_vertex().assign())


@pytest.mark.parametrize("rho, total", [(2, 27), (3, 64)])
def test_sunset_pi_ck(rho, total):
    rep = pi_ck_report(sunset(), rho)
    assert sorted((c for r in rep for c in r.coefficients), reverse=True) == [6, 3, 3, 1]
    assert sum(c for _, c in pi_ck(sunset(), rho).items()) == total


@pytest.mark.parametrize("g", [bubble(), sunset(), chain(2), triangle_quadruped()])
def test_pi_ck_intertwines(g):
    assert check_pi_ck_morphism(g, 2)
