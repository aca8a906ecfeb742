from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from mshopf.algebra import AlgebraElement, conv_exp, conv_log, convolve, forms_agree
from mshopf.hopf import H, as_generator, character, epsilon, infinitesimal_character, inverse
from strategies import QUADRUPEDS, assigned

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def random_character(vals):
    return character(lambda g: vals[len(g.edges) % len(vals)])


@given(assigned(QUADRUPEDS), assigned(QUADRUPEDS))
def test_antipode_is_multiplicative(a, b):
    x = AlgebraElement.gen(as_generator(a)) * AlgebraElement.gen(as_generator(b))
    assert H.antipode(x) == H.antipode(AlgebraElement.gen(as_generator(a))) * H.antipode(
        AlgebraElement.gen(as_generator(b))
    )


@given(assigned(QUADRUPEDS))
def test_coproduct_is_multiplicative(a):
    g = AlgebraElement.gen(as_generator(a))
    assert H.coproduct(g * g) == H.coproduct(g) * H.coproduct(g)


@given(st.lists(small, min_size=1, max_size=3), assigned(QUADRUPEDS, rho=2))
def test_inverse_character(vals, G):
    a = random_character(vals)
    e = epsilon()
    assert convolve(a, inverse(a))(G) == e(G)
    assert convolve(inverse(a), a)(G) == e(G)


@given(st.lists(small, min_size=1, max_size=3), assigned(QUADRUPEDS, rho=2))
def test_exp_log_round_trip(vals, G):
    d = infinitesimal_character(lambda g: vals[len(g.edges) % len(vals)])
    a = conv_exp(d, 4)
    back = conv_log(a, 4)
    assert forms_agree(back, d, [as_generator(G)])
    assert isinstance(a(as_generator(G)), Fraction)


def test_element_arithmetic():
    one = AlgebraElement.one()
    assert (one + one).counit() == 2
    assert (one - one) == AlgebraElement()
