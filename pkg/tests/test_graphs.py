import pytest
from hypothesis import given
from hypothesis import strategies as st

from mshopf.graphs import (
    AssignedGraph,
    FeynmanGraph,
    GluingData,
    GraphError,
    Subgraph,
    automorphism_order,
    bubble,
    canonicalize,
    chain,
    external_labelings,
    glue,
    is_connected,
    is_one_pi,
    loop_number,
    shrink,
    single_vertex,
    sunset,
    triangle_quadruped,
)
from strategies import assigned


def relabel(G: AssignedGraph, perm) -> AssignedGraph:
    g = G.graph
    edges = tuple((perm[a], perm[b]) for a, b in g.edges)
    legs = tuple(perm[v] for v in g.legs)
    markers = tuple(g.markers[perm.index(k)] for k in range(g.num_vertices))
    return AssignedGraph(FeynmanGraph(g.num_vertices, edges, legs, g.valence, g.labeled, markers), G.scales)


@pytest.mark.parametrize(
    "g, sigma, N, loops",
    [
        (bubble(), 2, 3, 1),
        (sunset(), 6, 1, 2),
        (chain(2), 4, 3, 2),
        (triangle_quadruped(), 2, 6, 2),
    ],
)
def test_named_graph_invariants(g, sigma, N, loops):
    assert automorphism_order(g) == sigma
    assert external_labelings(g) == N
    assert loop_number(g) == loops
    assert is_one_pi(g) and is_connected(g)


def test_scales_break_symmetry():
    G = bubble().assign((1, 2))
    assert automorphism_order(G) == 1
    assert external_labelings(G) == 3
    assert automorphism_order(bubble().assign((2, 2))) == 2


def test_valence_enforced():
    with pytest.raises(GraphError):
        FeynmanGraph(2, ((0, 1),), (0, 0, 1, 1))


def test_wrong_scale_count():
    with pytest.raises(GraphError):
        bubble().assign((1,))


def test_negative_scale():
    with pytest.raises(GraphError):
        bubble().assign((1, -1))


def test_chain_not_one_pi_when_cut():
    g = FeynmanGraph(2, ((0, 1),), (0, 0, 0, 1, 1, 1))
    assert is_connected(g) and not is_one_pi(g)


@given(assigned(), st.randoms())
def test_canonical_form_is_relabeling_invariant(G, rnd):
    perm = list(range(G.num_vertices))
    rnd.shuffle(perm)
    H = relabel(G, perm)
    assert canonicalize(H).key == canonicalize(G).key
    assert H == G
    assert automorphism_order(H) == automorphism_order(G)


@given(assigned())
def test_scale_automorphisms_form_subgroup(G):
    assert automorphism_order(G.graph) % automorphism_order(G) == 0


@given(st.integers(0, 3), st.integers(0, 3), st.permutations(range(4)))
def test_glue_then_shrink_round_trip(a, b, bij):
    host = bubble().assign((a, a))
    ins = bubble().assign((b, b))
    G = glue(host, ins, GluingData(("vertex", 0), bij))
    assert loop_number(G) == 2
    assert is_one_pi(G)
    n = len(host.edges)
    assert shrink(G, range(n, len(G.edges))) == host
    sub = Subgraph.from_mask(G, sum(1 << e for e in range(n, len(G.edges))))
    assert sub.to_assigned().root() == ins


def test_glue_into_edge():
    host = bubble().assign((1, 1))
    ins = sunset().assign((2, 2, 2))
    G = glue(host, ins, GluingData(("edge", 0), (0, 1)))
    assert loop_number(G) == 3
    assert G.n_ext == 4


def test_glue_rejects_bad_arity():
    with pytest.raises(GraphError):
        glue(bubble().assign((1, 1)), bubble().assign((2, 2)), GluingData(("edge", 0), (0, 1, 2, 3)))


def test_single_vertex():
    v = single_vertex()
    assert v.n_ext == 4 and not v.edges
    assert automorphism_order(v) == 1


def test_glue_checks_interface_scales():
    host = chain(2).assign((1, 1, 1, 1))
    ok = glue(host, AssignedGraph(bubble(), (3, 3), (1, 1, 1, 1)), GluingData(("vertex", 1), (0, 1, 2, 3)))
    assert sorted(ok.scales) == [1, 1, 1, 1, 3, 3]
    with pytest.raises(GraphError):
        glue(host, AssignedGraph(bubble(), (3, 3), (2, 2, 2, 2)), GluingData(("vertex", 1), (0, 1, 2, 3)))
