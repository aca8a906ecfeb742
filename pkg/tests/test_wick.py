import pytest
from hypothesis import given
from hypothesis import strategies as st

from mshopf.graphs import automorphism_order, bubble, chain, external_labelings, sunset, triangle_quadruped
from mshopf.wick import (
    OracleError,
    biped_free_quadrupeds,
    catalog,
    count_keys,
    double_factorial,
    enumerate_pairings,
    oracle_N,
    oracle_insertions,
    oracle_sigma,
)

small = st.sampled_from([(v, n) for v in range(0, 3) for n in (0, 2, 4) if v or n])


def test_double_factorial():
    assert [double_factorial(n) for n in (-1, 1, 3, 5, 7)] == [1, 1, 3, 15, 105]


@given(small)
def test_totals_match_double_factorial(vn):
    v, n = vn
    u = enumerate_pairings(v, n)
    assert u.total == u.expected_total


@given(small)
def test_python_and_numba_kernels_agree(vn):
    v, n = vn
    assert count_keys(v, n, "python") == count_keys(v, n, "numba")


@pytest.mark.parametrize("g", [bubble(), sunset(), chain(2), triangle_quadruped()])
def test_oracle_matches_graph_core(g):
    assert oracle_sigma(g) == automorphism_order(g)
    assert oracle_N(g) == external_labelings(g)


def test_oracle_values_are_independent():
    assert (oracle_sigma(bubble()), oracle_N(bubble())) == (2, 3)
    assert (oracle_sigma(sunset()), oracle_N(sunset())) == (6, 1)


def test_insertion_counts():
    b = bubble()
    assert oracle_insertions(b, b, chain(2)) == 2
    assert oracle_insertions(b, b, triangle_quadruped()) == 1


def test_catalog_filters():
    bf = biped_free_quadrupeds(3)
    assert len(bf) == len(catalog(3, 4, "biped_free"))
    assert all(c.one_pi for c in catalog(3, 4, "biped_free"))
    assert len(catalog(2, 4, "biped_free")) == 2  # bare vertex and bubble
    assert catalog(0, 4) == []


def test_bounds():
    with pytest.raises(OracleError):
        enumerate_pairings(5, 4)
    with pytest.raises(OracleError):
        enumerate_pairings(1, 1)
