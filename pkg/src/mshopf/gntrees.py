"""Hopf algebras of Gallavotti-Nicolò trees and of rooted trees, and the maps π_GN, π_RT."""
from __future__ import annotations

from collections import Counter
from functools import cached_property

from .algebra import ONE, AlgebraElement, Tensor, apply_to_factor, extend_multiplicatively, mono
from .graphs import AssignedGraph, canonicalize, table
from .hopf import H, as_generator
from .multiscale import GNTree, gn_tree


def _antichains(nodes: list[int], ancestors: dict[int, set]) -> list[tuple[int, ...]]:
    """Nonempty sets of nodes, no two on a common root-leaf path."""
    out = []

    def rec(start, chosen):
        for k in range(start, len(nodes)):
            n = nodes[k]
            if any(n in ancestors[c] or c in ancestors[n] for c in chosen):
                continue
            nxt = chosen + (n,)
            out.append(nxt)
            rec(k + 1, nxt)

    rec(0, ())
    return out


def _ancestors(parent_of: dict[int, int | None]) -> dict[int, set]:
    anc = {}
    for n in parent_of:
        s, p = set(), parent_of[n]
        while p is not None:
            s.add(p)
            p = parent_of[p]
        anc[n] = s
    return anc


# ---------------------------------------------------------------------------
# GN trees


def gn_generator(G: AssignedGraph, pad_to: int | None = None) -> GNTree:
    return gn_tree(as_generator(G), pad_to)


def admissible_cuts(T: GNTree) -> list[tuple[int, ...]]:
    """Cuts: arrows into cuttable nodes, at most one on each root-leaf path."""
    parent_of = {k: n.parent for k, n in enumerate(T.nodes)}
    anc = _ancestors(parent_of)
    cand = [k for k in range(1, len(T.nodes)) if T.cuttable(k)]
    return _antichains(cand, anc)


def gn_coproduct_gen(T: GNTree) -> Tensor:
    """T⊗1 + 1⊗T + Σ_C (∏ completions of the cut-off subtrees) ⊗ completion of the rest."""
    t = table(T.graph)
    terms = Counter()
    terms[((T,), ONE)] += 1
    terms[(ONE, (T,))] += 1
    for cut in admissible_cuts(T):
        union = 0
        lower = []
        for k in cut:
            m = T.nodes[k].mask
            union |= m
            lower.append(gn_tree(canonicalize(t.standalone(m)), T.pad_to))
        rest = gn_tree(canonicalize(t.shrink(union, check=False).root()), T.pad_to)
        terms[(mono(*lower), (rest,))] += 1
    return Tensor(dict(terms))


def gn_coproduct(x) -> Tensor:
    if isinstance(x, GNTree):
        return gn_coproduct_gen(x)
    return extend_multiplicatively(x, gn_coproduct_gen, Tensor.unit())


def pi_gn(x, pad_to: int | None = None):
    """G ↦ T_G on generators, extended multiplicatively to algebra elements."""
    if isinstance(x, AssignedGraph):
        return gn_generator(x, pad_to)
    return extend_multiplicatively(
        x, lambda g: AlgebraElement.gen(gn_tree(g, pad_to)), AlgebraElement.one()
    )


def check_pi_gn_morphism(G: AssignedGraph, pad_to: int | None = None) -> bool:
    g = as_generator(G)
    lhs = apply_to_factor(
        apply_to_factor(H.coproduct(g), 0, lambda y: pi_gn(y, pad_to)),
        1,
        lambda y: pi_gn(y, pad_to),
    )
    return lhs == gn_coproduct(gn_tree(g, pad_to))


def check_gn_grading(T: GNTree) -> bool:
    """A cut C drops exactly |C| differently-decorated arrows, so n is additive."""
    t = table(T.graph)
    for cut in admissible_cuts(T):
        union = 0
        for k in cut:
            union |= T.nodes[k].mask
        rest = gn_tree(canonicalize(t.shrink(union, check=False).root()), T.pad_to)
        lowers = [gn_tree(canonicalize(t.standalone(T.nodes[k].mask)), T.pad_to) for k in cut]
        arrows = (rest.grade - 1) + sum(x.grade - 1 for x in lowers)
        if arrows != T.grade - 1 - len(cut):
            return False
    return True


# ---------------------------------------------------------------------------
# rooted trees


class RootedTree:
    """Unlabeled rooted tree, canonical as a sorted nested tuple of children."""

    __slots__ = ("children", "sort_key", "_hash")

    def __init__(self, children=()):
        kids = tuple(sorted(children, key=lambda c: c.sort_key))
        self.children = kids
        self.sort_key = ("R", tuple(c.sort_key for c in kids))
        self._hash = hash(self.sort_key)

    @cached_property
    def grade(self) -> int:
        return 1 + sum(c.grade for c in self.children)

    def __eq__(self, other):
        return isinstance(other, RootedTree) and self.sort_key == other.sort_key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        def show(t):
            return "[" + "".join(show(c) for c in t.children) + "]"

        return "RT" + show(self)

    def nodes(self) -> tuple[list[int | None], list["RootedTree"]]:
        """Preorder parent list and subtree list."""
        parents: list[int | None] = []
        subs: list[RootedTree] = []

        def rec(t, p):
            k = len(subs)
            parents.append(p)
            subs.append(t)
            for c in t.children:
                rec(c, k)

        rec(self, None)
        return parents, subs


def _build(children_of: dict[int, list[int]], k: int) -> RootedTree:
    return RootedTree(_build(children_of, c) for c in children_of.get(k, []))


def rt_coproduct_gen(T: RootedTree) -> Tensor:
    """Admissible-cut coproduct on rooted trees."""
    parents, subs = T.nodes()
    parent_of = {k: p for k, p in enumerate(parents)}
    anc = _ancestors(parent_of)
    terms = Counter()
    terms[((T,), ONE)] += 1
    terms[(ONE, (T,))] += 1
    for cut in _antichains(list(range(1, len(parents))), anc):
        removed = set(cut)
        children_of: dict[int, list[int]] = {}
        for k, p in enumerate(parents):
            if p is None or k in removed or any(a in removed for a in anc[k]):
                continue
            children_of.setdefault(p, []).append(k)
        terms[(mono(*(subs[k] for k in cut)), (_build(children_of, 0),))] += 1
    return Tensor(dict(terms))


def rt_coproduct(x) -> Tensor:
    if isinstance(x, RootedTree):
        return rt_coproduct_gen(x)
    return extend_multiplicatively(x, rt_coproduct_gen, Tensor.unit())


def pi_rt(T: GNTree, divergent_only: bool = True) -> RootedTree:
    """Contract arrows between equally decorated nodes and forget decorations.

    With ``divergent_only`` only cuttable nodes (1PI, two or four external
    edges) survive besides the root, which makes the map intertwine the
    coproducts; ``divergent_only=False`` keeps every high subgraph.
    """
    if divergent_only:
        keep = [0] + [k for k in range(1, len(T.nodes)) if T.cuttable(k)]
    else:
        keep = [0] + [k for k in range(1, len(T.nodes)) if T.changes_decoration(k)]
    kept = set(keep)
    children_of: dict[int, list[int]] = {}
    for k in keep[1:]:
        p = T.nodes[k].parent
        while p not in kept:
            p = T.nodes[p].parent
        children_of.setdefault(p, []).append(k)
    return _build(children_of, 0)


def pi_rt_map(x, divergent_only: bool = True):
    if isinstance(x, GNTree):
        return pi_rt(x, divergent_only)
    return extend_multiplicatively(
        x, lambda T: AlgebraElement.gen(pi_rt(T, divergent_only)), AlgebraElement.one()
    )


def check_pi_rt_morphism(T: GNTree, divergent_only: bool = True) -> bool:
    f = lambda y: pi_rt_map(y, divergent_only)
    lhs = apply_to_factor(apply_to_factor(gn_coproduct(T), 0, f), 1, f)
    return lhs == rt_coproduct(pi_rt(T, divergent_only))
