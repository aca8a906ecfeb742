"""Effective couplings: the series Ψ(α), composition, the combinatorial lemma
and the bare-versus-effective expansion.

Couplings are the variables ``("l", i)`` for i = -1..ρ.  Series are
:class:`~mshopf.polynomials.Poly` objects truncated by total degree in the
couplings (one power per vertex).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .algebra import Character, LinearForm, convolve
from .graphs import (
    AssignedGraph,
    FeynmanGraph,
    automorphism_order,
    canonicalize,
    external_labelings,
    single_vertex,
    table,
)
from .hopf import H, as_generator, character, inverse
from .multiscale import atoms
from .polynomials import Poly
from .renorm import ToyAmplitude, act, counterterm_character, renormalized_amplitude
from .wick import MAX_VERTICES, catalog, oracle_insertions


class CatalogDepthError(ValueError):
    pass


def lam(i: int) -> tuple:
    return ("l", i)


def is_coupling(v) -> bool:
    return v[0] == "l"


@dataclass
class FormalSeries:
    poly: Poly
    order: int

    def __post_init__(self):
        self.poly = Poly.lift(self.poly).truncate(is_coupling, self.order)

    def _check(self, other):
        if isinstance(other, FormalSeries) and other.order != self.order:
            raise ValueError("truncation mismatch")

    def __add__(self, other):
        self._check(other)
        o = other.poly if isinstance(other, FormalSeries) else other
        return FormalSeries(self.poly + o, self.order)

    def __sub__(self, other):
        self._check(other)
        o = other.poly if isinstance(other, FormalSeries) else other
        return FormalSeries(self.poly - o, self.order)

    def __mul__(self, other):
        self._check(other)
        o = other.poly if isinstance(other, FormalSeries) else other
        return FormalSeries(self.poly * o, self.order)

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.order == other.order and self.poly == other.poly

    def __repr__(self):
        return f"FormalSeries({self.poly!r}, order={self.order})"


@dataclass
class SeriesTuple:
    """One series per scale i = -1..ρ."""

    rho: int
    order: int
    comps: dict[int, FormalSeries]

    @classmethod
    def identity(cls, rho: int, order: int) -> SeriesTuple:
        return cls(rho, order, {i: FormalSeries(Poly.var(lam(i)), order) for i in range(-1, rho + 1)})

    def __getitem__(self, i: int) -> FormalSeries:
        return self.comps[i]

    def __eq__(self, other):
        if not isinstance(other, SeriesTuple):
            return NotImplemented
        return (self.rho, self.order, self.comps) == (other.rho, other.order, other.comps)

    def at_bare(self) -> dict[int, Poly]:
        """Every coupling set to the bare one λ_ρ."""
        sub = {lam(j): Poly.var(lam(self.rho)) for j in range(-1, self.rho + 1)}
        return {i: s.poly.substitute(sub, is_coupling, self.order) for i, s in self.comps.items()}

    def to_json(self) -> dict:
        return {str(i): self.comps[i].poly.to_json() for i in sorted(self.comps)}


# ---------------------------------------------------------------------------
# assigned catalogs


def vertex_scales(G: AssignedGraph) -> list[int]:
    """e_v: the highest scale on the internal edges at each vertex (-1 if none)."""
    out = [-1] * G.num_vertices
    for (a, b), s in zip(G.edges, G.scales):
        out[a] = max(out[a], s)
        out[b] = max(out[b], s)
    return out


def coupling_monomial(G: AssignedGraph) -> Poly:
    p = Poly.const(1)
    for e in vertex_scales(G):
        p = p * Poly.var(lam(e))
    return p


def weight(G: AssignedGraph) -> Fraction:
    """N(G,μ)/σ(G,μ) from graph-core."""
    return Fraction(external_labelings(G), automorphism_order(G))


@dataclass(frozen=True)
class CatalogEntry:
    graph: AssignedGraph  # canonical root form; the bare vertex has no edges
    weight: Fraction
    oracle_weight: Fraction  # oracle N/σ of the unassigned graph times the class size

    @property
    def vertices(self) -> int:
        return self.graph.num_vertices

    @property
    def internal_index(self) -> int:
        return min(self.graph.scales, default=-1)


@lru_cache(maxsize=None)
def assigned_catalog(rho: int, order: int) -> tuple[CatalogEntry, ...]:
    """Assigned biped-free connected quadrupeds with v ≤ order, scales ≤ ρ, plus the bare vertex."""
    if order > MAX_VERTICES:
        raise CatalogDepthError(f"order {order} exceeds the catalog depth {MAX_VERTICES}")
    vertex = canonicalize(single_vertex().assign())
    entries = [CatalogEntry(vertex, Fraction(1), Fraction(1))]
    for c in catalog(order, 4, "biped_free", v_min=2):
        g = c.graph.to_feynman()
        mult: dict = {}
        for mu in itertools.product(range(rho + 1), repeat=len(g.edges)):
            G = as_generator(g.assign(mu))
            mult[G] = mult.get(G, 0) + 1
        for G in sorted(mult, key=lambda x: x.key):
            entries.append(CatalogEntry(G, weight(G), c.weight * mult[G]))
    return tuple(entries)


# ---------------------------------------------------------------------------
# Ψ and composition


def psi(alpha: LinearForm, rho: int, order: int) -> SeriesTuple:
    """λ'_i = λ_i + Σ_{i_G > i} N/σ · α(G,μ) · ∏_v λ_{e_v}."""
    comps = {}
    entries = [e for e in assigned_catalog(rho, order) if e.graph.edges]
    values = [(e, e.weight * alpha(e.graph) * coupling_monomial(e.graph)) for e in entries]
    for i in range(-1, rho + 1):
        p = Poly.var(lam(i))
        for e, term in values:
            if e.internal_index > i:
                p = p + term
        comps[i] = FormalSeries(p, order)
    return SeriesTuple(rho, order, comps)


def compose(outer: SeriesTuple, inner: SeriesTuple, order: int | None = None) -> SeriesTuple:
    """outer ∘ inner: substitute the inner series for the couplings of the outer ones."""
    if outer.rho != inner.rho:
        raise ValueError("series tuples over different cutoffs")
    if outer.order != inner.order or (order is not None and order != outer.order):
        raise ValueError("truncation mismatch")
    sub = {lam(j): inner[j].poly for j in range(-1, inner.rho + 1)}
    comps = {
        i: FormalSeries(s.poly.substitute(sub, is_coupling, outer.order), outer.order)
        for i, s in outer.comps.items()
    }
    return SeriesTuple(outer.rho, outer.order, comps)


def delta_character(G: AssignedGraph, value, one=Fraction(1)) -> Character:
    """Character equal to ``value`` on the generator G and zero on every other generator."""
    g0 = as_generator(G)
    return character(lambda g: value * one if g == g0 else one * 0, one, f"δ[{value}]")


def random_delta_characters(rho: int, order: int, count: int, seed: int = 0):
    """``count`` pairs (G1, a), (G2, b) of delta-character data with random rational values.

    Every other pair is drawn from the actual extractions γ ⊗ G/γ of the
    catalog, so that the convolution of the two characters is not just their sum.
    """
    rng = random.Random(seed)
    gens = [e.graph for e in assigned_catalog(rho, order) if e.graph.edges]
    nested = sorted(
        {(left[0], right) for G in gens for _, left, right in H.extraction_terms(G) if len(left) == 1},
        key=lambda p: (p[0].key, p[1].key),
    )
    out = []
    for k in range(count):
        if k % 2 == 0 and nested:
            g1, g2 = rng.choice(nested)
        else:
            g1, g2 = rng.choice(gens), rng.choice(gens)
        vals = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for _ in range(2)]
        out.append(((g1, vals[0]), (g2, vals[1])))
    return out


def check_antimorphism(alpha: Character, beta: Character, rho: int, order: int) -> bool:
    """Ψ(β)∘Ψ(α) = Ψ(α∗β)."""
    lhs = compose(psi(beta, rho, order), psi(alpha, rho, order))
    return lhs == psi(convolve(alpha, beta), rho, order)


# ---------------------------------------------------------------------------
# combinatorial lemma


@dataclass
class LemmaResult:
    lhs: Fraction
    rhs: Fraction
    terms: list  # (graph, weight, insertions)

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _core_insertions(g1: FeynmanGraph, g2: FeynmanGraph, g: FeynmanGraph) -> int:
    G = canonicalize(g.assign())
    t = table(G)
    k1, k2 = as_generator(g1.assign()).key, as_generator(g2.assign()).key
    count = 0
    for m in atoms(G, all_divergent=True):
        if t.piece(m).n_external != len(g1.legs):
            continue
        if canonicalize(t.standalone(m)).key != k1:
            continue
        if canonicalize(t.shrink(m).root()).key == k2:
            count += 1
    return count


def check_combinatorial_lemma(
    G1: FeynmanGraph, G2: FeynmanGraph, max_v: int = MAX_VERTICES, source: str = "oracle"
) -> LemmaResult:
    """Σ_G N(G)/σ(G)·N(G1,G2,G) against N1/σ1 · N2/σ2 · v(G2).

    With ``source="oracle"`` every σ, N and insertion count comes from the
    Wick oracle; ``source="core"`` uses graph-core instead.
    """
    v = G1.num_vertices + G2.num_vertices - 1
    if v > max_v:
        raise CatalogDepthError(f"need graphs with {v} vertices, catalog stops at {max_v}")
    if source == "oracle":
        from .wick import oracle_weight as w_of

        ins = oracle_insertions
    else:
        w_of = lambda g: weight(g.assign())
        ins = _core_insertions

    def w(g):
        return Fraction(1) if not g.edges else w_of(g)

    terms = []
    lhs = Fraction(0)
    for c in catalog(v, 4, "biped_free", v_min=v):
        g = c.graph.to_feynman()
        if not G1.edges:
            n = g.num_vertices if as_generator(g.assign()) == as_generator(G2.assign()) else 0
        else:
            n = ins(G1, G2, g)
        if n:
            terms.append((g, w(g), n))
            lhs += w(g) * n
    rhs = w(G1) * w(G2) * G2.num_vertices
    return LemmaResult(lhs, rhs, terms)


def check_assigned_lemma(G1: AssignedGraph, G2: AssignedGraph, rho: int) -> tuple[Poly, Poly]:
    """Scale-refined lemma as a coupling polynomial identity.

    Left: Σ_G w(G)·#{high g ⊂ G : g ≅ G1, G/g ≅ G2}·λ^G.  Right: w(G1)·w(G2)
    times Σ over vertices v of G2 with e_v < i_{G1} of λ^{G2}·λ^{G1}/λ_{e_v}.
    """
    g1, g2 = as_generator(G1), as_generator(G2)
    v = g1.num_vertices + g2.num_vertices - 1
    lhs = Poly()
    for e in assigned_catalog(rho, v):
        G = e.graph
        if G.num_vertices != v:
            continue
        n = 0
        for _, left, right in H.extraction_terms(G):
            if left == (g1,) and right == g2:
                n += 1
        if n:
            lhs = lhs + e.weight * n * coupling_monomial(G)
    i1 = min(g1.scales)
    m1 = coupling_monomial(g1)
    rhs = Poly()
    for ev in vertex_scales(g2):
        if ev < i1:
            rest = _drop_one(coupling_monomial(g2), lam(ev))
            rhs = rhs + weight(g1) * weight(g2) * rest * m1
    return lhs, rhs


def _drop_one(p: Poly, var) -> Poly:
    out = Poly()
    for m, c in p.terms.items():
        d = dict(m)
        d[var] -= 1
        if not d[var]:
            del d[var]
        out._add_into(tuple(sorted(d.items())), c)
    return out


# ---------------------------------------------------------------------------
# bare versus effective expansion


def generating_function(f: Callable[[AssignedGraph], object], rho: int, order: int) -> Poly:
    """F_f(λ) = Σ_{(G,μ)} N/σ · f(G,μ) · ∏_v λ_{e_v}, the bare vertex included."""
    total = Poly()
    for e in assigned_catalog(rho, order):
        total = total + e.weight * f(e.graph) * coupling_monomial(e.graph)
    return total.truncate(is_coupling, order)


def substitute_couplings(p: Poly, series: SeriesTuple) -> Poly:
    sub = {lam(j): series[j].poly for j in range(-1, series.rho + 1)}
    return p.substitute(sub, is_coupling, series.order)


def check_action_law(gamma: Character, f: Callable, rho: int, order: int) -> bool:
    """F_f(Ψ(γ)(λ)) = F_{γ·f}(λ)."""
    lhs = substitute_couplings(generating_function(f, rho, order), psi(gamma, rho, order))
    rhs = generating_function(act(gamma, f), rho, order)
    return lhs == rhs


@dataclass
class CorollaryResult:
    bare: Poly
    effective: Poly
    rho: int
    order: int

    @property
    def holds(self) -> bool:
        return self.bare == self.effective

    def coefficients(self) -> list[tuple[int, Poly, Poly]]:
        """(power of λ_ρ, bare coefficient, effective coefficient)."""
        b = self.bare.split(is_coupling)
        e = self.effective.split(is_coupling)
        out = []
        for n in range(self.order + 1):
            key = ((lam(self.rho), n),) if n else ()
            out.append((n, b.get(key, Poly()), e.get(key, Poly())))
        return out


def _at_bare(p: Poly, rho: int, order: int) -> Poly:
    sub = {lam(j): Poly.var(lam(rho)) for j in range(-1, rho + 1)}
    return p.substitute(sub, is_coupling, order)


def check_effective_corollary(A: ToyAmplitude | None = None, rho: int = 1, order: int = 3) -> CorollaryResult:
    """Σ N/σ·A·λ_ρ^v against Σ N/σ·A_UR·∏ λ_{e_v}, couplings from Ψ(τA) at λ_ρ."""
    A = A or ToyAmplitude()
    bare = _at_bare(generating_function(A, rho, order), rho, order)
    couplings = psi(A.tau_amplitude(), rho, order).at_bare()
    f_ur = generating_function(lambda G: renormalized_amplitude(G, A), rho, order)
    effective = f_ur.substitute(
        {lam(j): couplings[j] for j in range(-1, rho + 1)}, is_coupling, order
    )
    return CorollaryResult(bare, effective, rho, order)


def check_scheme_covariance(alpha: Character, A: ToyAmplitude, rho: int, order: int) -> bool:
    """Counterterms α∗C_U with couplings from Ψ(τA∗α∘S) reproduce the bare series."""
    cu = counterterm_character(A)
    modified = convolve(alpha, cu)
    f = act(modified, A)
    couplings = psi(convolve(A.tau_amplitude(), inverse(alpha)), rho, order).at_bare()
    eff = generating_function(f, rho, order).substitute(
        {lam(j): couplings[j] for j in range(-1, rho + 1)}, is_coupling, order
    )
    bare = _at_bare(generating_function(A, rho, order), rho, order)
    return eff == bare
