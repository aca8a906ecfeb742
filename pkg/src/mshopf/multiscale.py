"""Scale indices, high subgraphs, the forest property and Gallavotti-Nicolò trees."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .graphs import (
    SENTINEL,
    AssignedGraph,
    GraphError,
    Subgraph,
    canonicalize,
    is_connected,
    table,
)


@dataclass(frozen=True)
class ScaleIndices:
    internal_index: int
    external_index: int


def indices(g: Subgraph) -> ScaleIndices:
    """Internal index (min internal scale) and external index (max external scale)."""
    if not g.internal_edge_subset:
        raise GraphError("indices need at least one internal edge")
    t = table(g.parent)
    mask = g.mask
    i_idx = min(t.scales[i] for i in g.internal_edge_subset)
    e_idx = SENTINEL
    for v in g.vertices:
        for i in t.incident[v]:
            if not mask >> i & 1:
                e_idx = max(e_idx, t.scales[i])
        for s in t.leg_scales_at[v]:
            e_idx = max(e_idx, s)
    return ScaleIndices(i_idx, e_idx)


def is_high(g: Subgraph) -> bool:
    """Connected and external index strictly below internal index."""
    if not g.is_connected:
        return False
    idx = indices(g)
    return idx.external_index < idx.internal_index


def atoms(G: AssignedGraph, all_divergent: bool = False) -> list[int]:
    """Edge masks of proper connected 1PI subgraphs with 2 or 4 external edges.

    Only high ones unless ``all_divergent`` is set.  Ascending mask order.
    """
    t = table(G)
    out = []
    for m in t.connected_masks:
        if m == t.full:
            continue
        p = t.piece(m)
        if p.n_external not in (2, 4) or not p.one_pi:
            continue
        if all_divergent or p.high:
            out.append(m)
    return out


def divergent_families(G: AssignedGraph, all_divergent: bool = False) -> list[int]:
    """Masks of all nonempty unions of pairwise vertex-disjoint atoms."""
    t = table(G)
    ats = atoms(G, all_divergent)
    verts = [t.piece(m).vertices for m in ats]
    out = []

    def rec(start, mask, used):
        for k in range(start, len(ats)):
            if used & verts[k]:
                continue
            m = mask | ats[k]
            out.append(m)
            rec(k + 1, m, used | verts[k])

    rec(0, 0, frozenset())
    return sorted(out)


def enumerate_high_divergent(G: AssignedGraph, all_divergent: bool = False) -> list[Subgraph]:
    """Proper subgraphs whose components are 1PI, high and 2- or 4-point.

    Components of a subgraph are vertex-disjoint by construction (a shared
    vertex would merge them into one connected component).
    """
    return [Subgraph.from_mask(G, m) for m in divergent_families(G, all_divergent)]


def high_connected_masks(G: AssignedGraph) -> list[int]:
    t = table(G)
    return [m for m in t.connected_masks if t.piece(m).high]


def check_forest(G: AssignedGraph) -> bool:
    """Every two connected high subgraphs are nested or vertex-disjoint."""
    t = table(G)
    hs = high_connected_masks(G)
    for a in range(len(hs)):
        va = t.piece(hs[a]).vertices
        for b in range(a + 1, len(hs)):
            x, y = hs[a], hs[b]
            if x & y == x or x & y == y:
                continue
            if va & t.piece(y).vertices:
                return False
    return True


@dataclass
class GNNode:
    depth: int
    mask: int
    parent: int | None
    children: list[int] = field(default_factory=list)


class GNTree:
    """Gallavotti-Nicolò tree of an assigned graph.

    Node ``k`` at depth ``i`` is a connected component of the edges of scale
    at least ``i``, stored as an edge mask of :attr:`graph`.  Node 0 is the
    root.  The tree is determined by (and identified with) its root graph.
    """

    def __init__(self, G: AssignedGraph, pad_to: int | None = None):
        if not is_connected(G):
            raise GraphError("GN trees need a connected graph")
        self.graph = canonicalize(G.root())
        self.pad_to = pad_to
        t = table(self.graph)
        self.nodes: list[GNNode] = [GNNode(0, t.full, None)]
        level = [0]
        top = self.graph.max_scale
        for i in range(1, top + 1):
            allowed = sum(1 << e for e, s in enumerate(t.scales) if s >= i)
            nxt = []
            for k in level:
                for c in t.split(allowed & self.nodes[k].mask):
                    self.nodes.append(GNNode(i, c, k))
                    self.nodes[k].children.append(len(self.nodes) - 1)
                    nxt.append(len(self.nodes) - 1)
            level = nxt
        if pad_to is not None:
            for k in list(range(len(self.nodes))):
                n = self.nodes[k]
                j = k
                if n.children:
                    continue
                for d in range(n.depth + 1, pad_to + 1):
                    self.nodes.append(GNNode(d, n.mask, j))
                    self.nodes[j].children.append(len(self.nodes) - 1)
                    j = len(self.nodes) - 1

    @property
    def root(self) -> GNNode:
        return self.nodes[0]

    def decoration(self, k: int) -> AssignedGraph:
        """Node decoration as a standalone assigned graph (legs carry host scales)."""
        return canonicalize(table(self.graph).standalone(self.nodes[k].mask, keep_leg_scales=True))

    def depth_levels(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for k, n in enumerate(self.nodes):
            out.setdefault(n.depth, []).append(k)
        return out

    def changes_decoration(self, k: int) -> bool:
        n = self.nodes[k]
        return n.parent is not None and self.nodes[n.parent].mask != n.mask

    def cuttable(self, k: int) -> bool:
        """Arrow into ``k`` may belong to an admissible cut."""
        if not self.changes_decoration(k):
            return False
        p = table(self.graph).piece(self.nodes[k].mask)
        return p.one_pi and p.n_external in (2, 4)

    @cached_property
    def grade(self) -> int:
        """Number of arrows between differently decorated nodes, plus one."""
        return sum(1 for k in range(1, len(self.nodes)) if self.changes_decoration(k)) + 1

    @property
    def sort_key(self):
        return ("T", self.pad_to) + self.graph.key

    def __eq__(self, other):
        if not isinstance(other, GNTree):
            return NotImplemented
        return self.sort_key == other.sort_key

    def __hash__(self):
        return hash(self.sort_key)

    def __repr__(self):
        return f"GNTree({self.graph!r}, nodes={len(self.nodes)})"

    def shape(self):
        """Nested (depth, mask, children) tuple, convenient for comparisons."""

        def rec(k):
            n = self.nodes[k]
            return (n.depth, n.mask, tuple(rec(c) for c in n.children))

        return rec(0)


def gn_tree(G: AssignedGraph, pad_to: int | None = None) -> GNTree:
    return GNTree(G, pad_to)
