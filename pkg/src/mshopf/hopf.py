"""The multiscale Hopf algebra of assigned graphs.

Generators are canonical connected 1PI assigned graphs with at least one
internal edge, stored in root form (unlabeled legs, sentinel leg scales).
The coproduct extracts unions of vertex-disjoint high 1PI subgraphs with two
or four external edges; ``all_divergent=True`` drops the high condition,
giving the Connes-Kreimer-type coproduct used as the target of π_CK.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .algebra import (
    ONE,
    AlgebraElement,
    Character,
    InfinitesimalCharacter,
    Tensor,
    apply_to_factor,
    extend_multiplicatively,
    mono,
    mono_grade,
    multiply_out,
)
from .graphs import (
    AssignedGraph,
    FeynmanGraph,
    GraphError,
    SubgraphTable,
    canonicalize,
    is_connected,
    is_one_pi,
    table,
)
from .multiscale import atoms, divergent_families


def as_generator(G: AssignedGraph) -> AssignedGraph:
    """Canonical root form of ``G``; rejects graphs that are not generators."""
    if not G.edges:
        raise GraphError("a graph without internal edges is not a generator")
    if not is_connected(G) or not is_one_pi(G):
        raise GraphError("generators must be connected and 1PI")
    return canonicalize(G.root())


def element(*gens: AssignedGraph, coeff=1) -> AlgebraElement:
    """The monomial ``coeff * g1 * g2 * ...`` (each factor made canonical)."""
    return AlgebraElement.monomial(mono(*(as_generator(g) for g in gens)), coeff)


def _gen(t: SubgraphTable, mask: int) -> AssignedGraph:
    return canonicalize(t.standalone(mask))


def _cograph(t: SubgraphTable, mask: int) -> AssignedGraph:
    return canonicalize(t.shrink(mask, check=False).root())


class HopfAlgebra:
    """Coproduct and antipode with per-generator memo tables.

    Two instances exist: :data:`H` (high subgraphs only) and :data:`H_ALL`
    (all divergent subgraphs).  Memo tables are keyed by canonical graphs, so
    results do not depend on call order.
    """

    def __init__(self, all_divergent: bool = False):
        self.all_divergent = all_divergent
        self._delta: dict[AssignedGraph, Tensor] = {}
        self._anti: dict[AssignedGraph, AlgebraElement] = {}
        self.gen_coproduct = self._gen_coproduct

    def extraction_terms(self, G: AssignedGraph) -> list[tuple[int, tuple, AssignedGraph]]:
        """(mask, left monomial, cograph) for every nontrivial coproduct term."""
        G = canonicalize(G)
        t = table(G)
        out = []
        for m in divergent_families(G, self.all_divergent):
            left = mono(*(_gen(t, c) for c in t.split(m)))
            out.append((m, left, _cograph(t, m)))
        return out

    def _gen_coproduct(self, G: AssignedGraph) -> Tensor:
        hit = self._delta.get(G)
        if hit is not None:
            return hit
        terms = Counter()
        terms[((G,), ONE)] += 1
        terms[(ONE, (G,))] += 1
        for _, left, right in self.extraction_terms(G):
            terms[(left, (right,))] += 1
        d = Tensor(dict(terms))
        self._delta[G] = d
        return d

    def coproduct(self, x) -> Tensor:
        if isinstance(x, AssignedGraph):
            x = AlgebraElement.gen(as_generator(x))
        return extend_multiplicatively(x, self.gen_coproduct, Tensor.unit())

    def antipode_gen(self, G: AssignedGraph) -> AlgebraElement:
        hit = self._anti.get(G)
        if hit is not None:
            return hit
        out = -AlgebraElement.gen(G)
        for (left, right), c in self.gen_coproduct(G).terms.items():
            if not left or not right:
                continue
            s_left = AlgebraElement.one()
            for g in left:
                s_left = s_left * self.antipode_gen(g)
            out = out - s_left * AlgebraElement.monomial(right) * c
        self._anti[G] = out
        return out

    def antipode(self, x) -> AlgebraElement:
        if isinstance(x, AssignedGraph):
            x = AlgebraElement.gen(as_generator(x))
        return extend_multiplicatively(x, self.antipode_gen, AlgebraElement.one())

    def antipode_by_forests(self, G: AssignedGraph) -> AlgebraElement:
        """Signed sum over forests of proper divergent subgraphs, G always included."""
        G = as_generator(G)
        out = AlgebraElement()
        for forest in self.forests(G):
            out = out + forest_term(G, forest) * (-1) ** (len(forest) + 1)
        return out

    def forests(self, G: AssignedGraph) -> list[tuple[int, ...]]:
        """All sets of atoms that are pairwise nested or vertex-disjoint."""
        t = table(G)
        ats = atoms(G, self.all_divergent)
        verts = [t.piece(m).vertices for m in ats]

        def compatible(a, b):
            x, y = ats[a], ats[b]
            return x & y in (x, y) or not (verts[a] & verts[b])

        out = []

        def rec(start, chosen):
            out.append(tuple(ats[k] for k in chosen))
            for k in range(start, len(ats)):
                if all(compatible(k, j) for j in chosen):
                    rec(k + 1, chosen + [k])

        rec(0, [])
        return out


def forest_pieces(G: AssignedGraph, forest: Iterable[int]) -> list[AssignedGraph]:
    """γ / (maximal elements of the forest inside γ), for γ in forest ∪ {G}."""
    t = table(G)
    forest = list(forest)
    out = []
    for gamma in forest + [t.full]:
        inside = [m for m in forest if m != gamma and m & gamma == m]
        maximal = [m for m in inside if not any(m != o and m & o == m for o in inside)]
        union = 0
        for m in maximal:
            union |= m
        if not union:
            out.append(_gen(t, gamma))
            continue
        quotient = t.shrink(union, check=False)
        keep = [i for i in range(t.E) if not union >> i & 1]
        new_mask = 0
        for j, i in enumerate(keep):
            if gamma >> i & 1:
                new_mask |= 1 << j
        qt = SubgraphTable(quotient)
        if new_mask == qt.full:
            out.append(canonicalize(quotient.root()))
        else:
            out.append(canonicalize(qt.standalone(new_mask)))
    return out


def forest_term(G: AssignedGraph, forest) -> AlgebraElement:
    return AlgebraElement.monomial(mono(*forest_pieces(G, forest)))


H = HopfAlgebra(all_divergent=False)
H_ALL = HopfAlgebra(all_divergent=True)


def hopf(all_divergent: bool = False) -> HopfAlgebra:
    return H_ALL if all_divergent else H


def coproduct(x, all_divergent: bool = False) -> Tensor:
    return hopf(all_divergent).coproduct(x)


def counit(x) -> Fraction:
    if isinstance(x, AssignedGraph):
        return Fraction(0)
    return x.counit()


def antipode(x, all_divergent: bool = False) -> AlgebraElement:
    return hopf(all_divergent).antipode(x)


def antipode_by_forests(G: AssignedGraph, all_divergent: bool = False) -> AlgebraElement:
    return hopf(all_divergent).antipode_by_forests(G)


# ---------------------------------------------------------------------------
# axiom checks


def _as_element(x) -> AlgebraElement:
    if isinstance(x, AssignedGraph):
        return AlgebraElement.gen(as_generator(x))
    return x


def check_coassociativity(x, all_divergent: bool = False) -> bool:
    h = hopf(all_divergent)
    d = h.coproduct(_as_element(x))
    lhs = apply_to_factor(d, 0, h.coproduct)
    rhs = apply_to_factor(d, 1, h.coproduct)
    return lhs == rhs


def _counit_map(y: AlgebraElement) -> AlgebraElement:
    return AlgebraElement.one() * y.counit()


def check_counit(x, all_divergent: bool = False) -> bool:
    x = _as_element(x)
    d = hopf(all_divergent).coproduct(x)
    left = multiply_out(apply_to_factor(d, 0, _counit_map))
    right = multiply_out(apply_to_factor(d, 1, _counit_map))
    return left == x and right == x


def check_antipode(x, all_divergent: bool = False) -> bool:
    h = hopf(all_divergent)
    x = _as_element(x)
    d = h.coproduct(x)
    expected = AlgebraElement.one() * x.counit()
    left = multiply_out(apply_to_factor(d, 0, h.antipode))
    right = multiply_out(apply_to_factor(d, 1, h.antipode))
    return left == expected and right == expected


def check_grading(x, all_divergent: bool = False) -> bool:
    x = _as_element(x)
    for m in x.terms:
        n = mono_grade(m)
        for l, r in hopf(all_divergent).coproduct(AlgebraElement.monomial(m)).terms:
            if mono_grade(l) + mono_grade(r) != n:
                return False
    return True


def hopf_axioms(G: AssignedGraph, all_divergent: bool = False) -> dict[str, bool]:
    return {
        "coassociativity": check_coassociativity(G, all_divergent),
        "counit": check_counit(G, all_divergent),
        "antipode": check_antipode(G, all_divergent),
        "grading": check_grading(G, all_divergent),
    }


# ---------------------------------------------------------------------------
# characters over this Hopf algebra


def character(on_generator: Callable, one=Fraction(1), name: str = "", all_divergent: bool = False) -> Character:
    return Character(on_generator, hopf(all_divergent).gen_coproduct, one, name)


def infinitesimal_character(on_generator: Callable, one=Fraction(1), name: str = "", all_divergent: bool = False):
    return InfinitesimalCharacter(on_generator, hopf(all_divergent).gen_coproduct, one, name)


def epsilon(one=Fraction(1), all_divergent: bool = False) -> Character:
    return character(lambda g: one * 0, one, "ε", all_divergent)


def inverse(a: Character, all_divergent: bool = False) -> Character:
    """α ∘ S, the convolution inverse of a character."""
    h = hopf(all_divergent)
    return Character(
        lambda g: a(h.antipode_gen(g)), a.coproduct, a.one, f"{a.name}∘S"
    )


# ---------------------------------------------------------------------------
# π_CK


def scale_assignments(n_edges: int, rho: int):
    return itertools.product(range(rho + 1), repeat=n_edges)


def pi_ck(G: FeynmanGraph | AssignedGraph, rho: int) -> AlgebraElement:
    """Σ over all (ρ+1)^E scale assignments, collected by isomorphism class."""
    graph = G.graph if isinstance(G, AssignedGraph) else G
    counts = Counter()
    for mu in scale_assignments(len(graph.edges), rho):
        counts[as_generator(AssignedGraph(graph, mu))] += 1
    return AlgebraElement({(g,): c for g, c in counts.items()})


def rank_pattern(scales: Iterable[int]) -> tuple[int, ...]:
    """Run lengths of the sorted scale list, e.g. (0, 1, 1) -> (1, 2)."""
    s = sorted(scales)
    return tuple(len(list(grp)) for _, grp in itertools.groupby(s))


@dataclass(frozen=True)
class PatternReport:
    pattern: tuple[int, ...]
    coefficients: tuple[int, ...]
    n_classes: int


def pi_ck_report(G: FeynmanGraph | AssignedGraph, rho: int) -> list[PatternReport]:
    """π_CK coefficients grouped by the equality pattern of the sorted scales."""
    x = pi_ck(G, rho)
    groups: dict[tuple, list[int]] = {}
    for (g,), c in x.items():
        groups.setdefault(rank_pattern(g.scales), []).append(int(c))
    out = []
    for pat in sorted(groups, key=lambda p: (-len(p), p)):
        cs = groups[pat]
        out.append(PatternReport(pat, tuple(sorted(set(cs))), len(cs)))
    return out


def pi_ck_graph(G: FeynmanGraph | AssignedGraph) -> AssignedGraph:
    """The unassigned graph viewed as a generator of the Connes-Kreimer side."""
    graph = G.graph if isinstance(G, AssignedGraph) else G
    return as_generator(AssignedGraph(graph, (0,) * len(graph.edges)))


def pi_ck_map(x: AlgebraElement, rho: int) -> AlgebraElement:
    """Algebra morphism extending π_CK; generators are read as unassigned graphs."""
    return extend_multiplicatively(x, lambda g: pi_ck(g.graph, rho), AlgebraElement.one())


def check_pi_ck_morphism(G: FeynmanGraph | AssignedGraph, rho: int) -> bool:
    """(π⊗π)∘Δ_CK = Δ̃∘π on ``G``, where Δ̃ extracts all divergent subgraphs."""
    g0 = pi_ck_graph(G)
    d = H_ALL.coproduct(g0)
    lhs = apply_to_factor(apply_to_factor(d, 0, lambda y: pi_ck_map(y, rho)), 1, lambda y: pi_ck_map(y, rho))
    rhs = H_ALL.coproduct(pi_ck_map(AlgebraElement.gen(g0), rho))
    return lhs == rhs
