from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from mshopf.polynomials import Q, Poly, q_coefficients, q_power

X, Y = ("x",), ("y",)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw):
    p = Poly()
    for _ in range(draw(st.integers(0, 4))):
        c = draw(fracs)
        p = p + c * Poly.var(X, draw(st.integers(0, 3))) * Poly.var(Y, draw(st.integers(0, 2)))
    return p


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Poly()


@given(polys(), fracs, fracs)
def test_evaluate_is_homomorphism(a, x, y):
    vals = {X: x, Y: y}
    assert (a * a).evaluate(vals) == a.evaluate(vals) ** 2


@given(polys(), polys())
def test_substitute_respects_products(a, b):
    sub = {X: Poly.var(Y) + 1}
    assert (a * b).substitute(sub) == a.substitute(sub) * b.substitute(sub)


def test_truncate_and_degree():
    p = (1 + Poly.var(X)) ** 4
    t = p.truncate(lambda v: v == X, 2)
    assert t.degree() == 2
    assert t == 1 + 4 * Poly.var(X) + 6 * Poly.var(X, 2)


def test_q_helpers():
    p = 3 * q_power(2) + Fraction(1, 2)
    assert q_coefficients(p) == [Fraction(1, 2), 0, 3]
    assert Poly.var(Q) == q_power(1)


def test_equality_with_scalars():
    assert Poly.const(2) == 2
    assert not Poly()
