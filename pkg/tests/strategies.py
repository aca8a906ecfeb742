"""Hypothesis strategies over small assigned graphs."""
from hypothesis import strategies as st

from mshopf.graphs import bubble, chain, sunset, triangle_quadruped

SHAPES = [bubble(), sunset(), chain(2), triangle_quadruped(), chain(3)]
QUADRUPEDS = [bubble(), chain(2), triangle_quadruped()]


@st.composite
def assigned(draw, shapes=SHAPES, rho=3):
    g = draw(st.sampled_from(shapes))
    mu = draw(st.lists(st.integers(0, rho), min_size=len(g.edges), max_size=len(g.edges)))
    return g.assign(mu)


@st.composite
def permutation(draw, n):
    return draw(st.permutations(list(range(n))))
