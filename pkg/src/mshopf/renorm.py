"""Useful counterterms, the coaction on labeled graphs and renormalized amplitudes.

Analytic Feynman amplitudes are replaced by algebraic models with values in
:class:`~mshopf.polynomials.Poly`:

* ``toy``: A(G, μ) = q^{Σ scales}; τ is the identity.
* ``symbols``: an independent symbol per isomorphism class; τ is the identity.
* ``local``: A(G, μ) = q^{Σ scales} (1 + x)^{E}; τ sets x = 0, a genuine
  idempotent ring projection, so subtractions do not cancel identically.

Amplitudes ignore external labels, so values depend only on the class.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .algebra import ONE, AlgebraElement, Character, LinearForm, Tensor, apply_to_factor, mono
from .graphs import AssignedGraph, canonicalize, table
from .hopf import H, as_generator, character, forest_pieces
from .multiscale import atoms, divergent_families
from .polynomials import Poly, Q

X = ("x",)


class UnsupportedSector(ValueError):
    """Raised when a two-point (biped) divergence would need a renormalization rule."""


@dataclass(frozen=True)
class ToyAmplitude:
    model: str = "toy"

    def __post_init__(self):
        if self.model not in ("toy", "symbols", "local"):
            raise ValueError(f"unknown amplitude model {self.model!r}")

    def __call__(self, G: AssignedGraph) -> Poly:
        if not G.edges:
            return Poly.const(1)
        if self.model == "toy":
            return Poly.var(Q, sum(G.scales))
        if self.model == "local":
            return Poly.var(Q, sum(G.scales)) * (Poly.const(1) + Poly.var(X)) ** len(G.edges)
        return Poly.var(("a", canonicalize(G.root()).key))

    def tau(self, value: Poly) -> Poly:
        """Projection onto local (constant) parts; the identity except in ``local``."""
        if self.model == "local":
            return value.substitute({X: Poly.const(0)})
        return value

    def tau_amplitude(self) -> Character:
        """τA as a character of the Hopf algebra."""
        return _tau_chars.setdefault(
            self, character(lambda g: self.tau(self(g)), Poly.const(1), f"τA[{self.model}]")
        )


def tau(a: Poly, model: ToyAmplitude | None = None) -> Poly:
    return (model or ToyAmplitude()).tau(a)


_tau_chars: dict = {}
_cu_memo: dict = {}


def require_biped_free(G: AssignedGraph) -> None:
    """Reject graphs whose high divergent subgraphs include two-point ones."""
    for m in atoms(G):
        if table(G).piece(m).n_external == 2:
            raise UnsupportedSector("high two-point subgraph: biped renormalization is not implemented")
    if any(mk == 1 for mk in G.markers):
        raise UnsupportedSector("graph carries a shrunk two-point vertex")


def useful_counterterms(G: AssignedGraph, A: ToyAmplitude | None = None) -> Poly:
    """C_U(G) = -τA(G) - Σ_γ τA(G/γ) ∏ C_U(components of γ)."""
    A = A or ToyAmplitude()
    G = as_generator(G)
    key = (A, G)
    hit = _cu_memo.get(key)
    if hit is not None:
        return hit
    require_biped_free(G)
    out = -A.tau(A(G))
    for _, left, right in H.extraction_terms(G):
        c = Poly.const(1)
        for g in left:
            c = c * useful_counterterms(g, A)
        out = out - A.tau(A(right)) * c
    _cu_memo[key] = out
    return out


def counterterm_character(A: ToyAmplitude | None = None) -> Character:
    A = A or ToyAmplitude()
    return character(lambda g: useful_counterterms(g, A), Poly.const(1), f"C_U[{A.model}]")


# ---------------------------------------------------------------------------
# the coaction on labeled graphs


def labeled(G: AssignedGraph) -> AssignedGraph:
    """Canonical labeled form with sentinel leg scales (an element of 𝒦)."""
    if not G.labeled:
        G = G.with_labels(True)
    return canonicalize(AssignedGraph(G.graph, G.scales))


def coaction(G: AssignedGraph) -> Tensor:
    """Coaction 𝒦 → ℋ ⊗ 𝒦 on a connected labeled graph.

    Terms: 1 ⊗ G, one term per union of disjoint high divergent subgraphs γ
    (components ⊗ labeled G/γ), and Ḡ ⊗ (labeled single vertex) when G has
    internal edges.  Right factors keep the external labels.
    """
    G = labeled(G)
    terms = Counter()
    terms[(ONE, (G,))] += 1
    if not G.edges:
        return Tensor(dict(terms))
    t = table(G)
    for m in divergent_families(G):
        left = mono(*(canonicalize(t.standalone(c)) for c in t.split(m)))
        terms[(left, (canonicalize(t.shrink(m, check=False)),))] += 1
    terms[((as_generator(G),), (canonicalize(t.shrink(t.full, check=False)),))] += 1
    return Tensor(dict(terms))


def coaction_element(x: Tensor) -> Tensor:
    """Apply the coaction to the last factor of every term (id ⊗ δ)."""

    def on(y: AlgebraElement) -> Tensor:
        out = Tensor()
        for (g,), c in y.terms.items():
            out = out + coaction(g) * c
        return out

    return apply_to_factor(x, x.arity - 1, on)


def check_coaction(G: AssignedGraph) -> bool:
    """(Δ ⊗ id)∘δ = (id ⊗ δ)∘δ and the counit law m∘(ε ⊗ id)∘δ = id."""
    d = coaction(G)
    lhs = apply_to_factor(d, 0, H.coproduct)
    rhs = coaction_element(d)
    if lhs != rhs:
        return False
    back = Counter()
    for (l, r), c in d.terms.items():
        if not l:
            back[r] += c
    return {k: v for k, v in back.items() if v} == {(labeled(G),): 1}


def act(alpha: LinearForm, f: Callable[[AssignedGraph], object]) -> Callable[[AssignedGraph], object]:
    """α·f = m∘(α ⊗ f)∘δ, a new map on labeled graphs."""
    memo: dict = {}

    def value(G: AssignedGraph):
        G = labeled(G)
        if G in memo:
            return memo[G]
        total = alpha.zero
        for (l, (r,)), c in coaction(G).items():
            total = total + alpha.on_monomial(l) * f(r) * c
        memo[G] = total
        return total

    return value


def renormalized_amplitude(G: AssignedGraph, A: ToyAmplitude | None = None) -> Poly:
    """A_UR = C_U · A evaluated on a labeled graph."""
    A = A or ToyAmplitude()
    require_biped_free(canonicalize(G.root()))
    total = Poly()
    for (l, (r,)), c in coaction(G).items():
        v = Poly.const(1)
        for g in l:
            v = v * useful_counterterms(g, A)
        total = total + v * A(r) * c
    return total


def renormalized_by_forests(G: AssignedGraph, A: ToyAmplitude | None = None) -> Poly:
    """Σ over forests F (G allowed as the top element) of A(G/max F) ∏_{γ∈F} (-τA(γ/children))."""
    A = A or ToyAmplitude()
    G = labeled(G)
    require_biped_free(canonicalize(G.root()))
    t = table(G)
    total = Poly()
    for forest in H.forests(G):
        pieces = forest_pieces(G, forest)
        sub = Poly.const(1)
        for p in pieces[:-1]:
            sub = sub * (-A.tau(A(p)))
        union = 0
        for m in forest:
            union |= m
        total = total + sub * A(t.shrink(union, check=False) if union else G)
        total = total + sub * (-A.tau(A(pieces[-1])))
    return total


def counterterms_by_forests(G: AssignedGraph, A: ToyAmplitude | None = None) -> Poly:
    """(τA)∘S through the forest expansion of the antipode."""
    A = A or ToyAmplitude()
    return A.tau_amplitude()(H.antipode_by_forests(G))
