import pytest
from hypothesis import given
from hypothesis import strategies as st

from mshopf.algebra import convolve
from mshopf.graphs import GluingData, bubble, glue, sunset
from mshopf.hopf import H
from mshopf.polynomials import Poly, q_power
from mshopf.renorm import (
    X,
    ToyAmplitude,
    UnsupportedSector,
    check_coaction,
    counterterm_character,
    counterterms_by_forests,
    renormalized_amplitude,
    renormalized_by_forests,
    useful_counterterms,
)
from strategies import QUADRUPEDS, assigned

models = st.sampled_from(["toy", "symbols", "local"])


@given(assigned(QUADRUPEDS), models)
def test_counterterms_equal_tau_a_of_antipode(G, model):
    A = ToyAmplitude(model)
    assert useful_counterterms(G, A) == A.tau_amplitude()(H.antipode(G))
    assert useful_counterterms(G, A) == counterterms_by_forests(G, A)


@given(assigned(QUADRUPEDS), models)
def test_counterterms_invert_tau_a(G, model):
    A = ToyAmplitude(model)
    assert convolve(counterterm_character(A), A.tau_amplitude())(G) == Poly()


@given(assigned(QUADRUPEDS), models)
def test_renormalized_forms_agree(G, model):
    A = ToyAmplitude(model)
    assert renormalized_amplitude(G, A) == renormalized_by_forests(G, A)


@given(assigned(QUADRUPEDS))
def test_coaction_axioms(G):
    assert check_coaction(G)


@given(assigned(QUADRUPEDS))
def test_toy_model_subtracts_everything(G):
    assert renormalized_amplitude(G, ToyAmplitude("toy")) == Poly()


def test_local_model_keeps_nonlocal_part():
    A = ToyAmplitude("local")
    G = bubble().assign((1, 2))
    x = Poly.var(X)
    assert useful_counterterms(G, A) == -q_power(3)
    assert renormalized_amplitude(G, A) == q_power(3) * (2 * x + x * x)


def test_biped_sector_rejected():
    G = glue(bubble().assign((1, 1)), sunset().assign((2, 2, 2)), GluingData(("edge", 0), (0, 1)))
    with pytest.raises(UnsupportedSector):
        useful_counterterms(G)


def test_unknown_model():
    with pytest.raises(ValueError):
        ToyAmplitude("nope")
