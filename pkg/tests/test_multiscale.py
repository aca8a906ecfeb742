from hypothesis import given

from mshopf.graphs import Subgraph, bubble, chain
from mshopf.multiscale import atoms, check_forest, enumerate_high_divergent, gn_tree, indices, is_high
from strategies import assigned


@given(assigned())
def test_high_subgraphs_form_forest(G):
    assert check_forest(G)


@given(assigned())
def test_atoms_are_high_and_divergent(G):
    for g in enumerate_high_divergent(G):
        for c in g.components:
            assert is_high(c)
            assert c.n_external in (2, 4)


@given(assigned())
def test_all_divergent_contains_high(G):
    assert set(atoms(G)) <= set(atoms(G, all_divergent=True))


def test_indices_of_inner_bubble():
    G = chain(2).assign((1, 1, 2, 2))
    g = Subgraph.from_mask(G, 0b1100)
    ix = indices(g)
    assert (ix.internal_index, ix.external_index) == (2, 1)
    assert is_high(g)
    assert not is_high(Subgraph.from_mask(G, 0b0011))


@given(assigned())
def test_gn_tree_levels_nest(G):
    T = gn_tree(G)
    for n in T.nodes:
        if n.parent is not None:
            p = T.nodes[n.parent]
            assert n.depth == p.depth + 1
            assert n.mask & p.mask == n.mask
    assert T.grade >= 1


def test_gn_tree_shape():
    T = gn_tree(chain(2).assign((1, 1, 2, 2)))
    assert T.shape() == (0, 15, ((1, 15, ((2, 12, ()),)),))
    assert T.grade == 2


def test_padding_reaches_rho():
    T = gn_tree(bubble().assign((1, 1)), pad_to=3)
    assert max(n.depth for n in T.nodes) == 3
