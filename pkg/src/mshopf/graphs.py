"""Feynman graphs, scale assignments and the shrink/glue operations.

Graphs are stored as plain tuples: ``num_vertices`` interaction vertices, a
tuple of internal edges ``(u, v)`` and a tuple of external legs.  Leg ``k``
hangs off vertex ``legs[k]``; a negative entry ``-1 - j`` means leg ``k`` is
joined directly to leg ``j`` (a free propagator, which only occurs in the Wick
universes).  When ``labeled`` is true the leg index is its label x_{k+1};
otherwise the legs are interchangeable.

Isomorphism classes are handled through :func:`canonicalize`, an exhaustive
minimisation over vertex relabelings restricted to cells of equal refined
vertex invariants.  Equality and hashing of graphs go through that key.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

SENTINEL = -1

# vertex markers
VERTEX = 0  # ordinary interaction vertex, degree == valence
TWO_POINT = 1  # 2-valent vertex left by shrinking a biped (mass-type insertion)
RESIDUE = 2  # n-valent vertex left by shrinking a whole n-point graph


class GraphError(ValueError):
    """Malformed incidence structure or an invalid graph operation."""


class DisconnectedGraphError(GraphError):
    pass


def _check_structure(n, edges, legs, markers, valence):
    if n < 0:
        raise GraphError("negative vertex count")
    if len(markers) != n:
        raise GraphError("one marker per vertex required")
    degree = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) references a missing vertex")
        degree[u] += 1
        degree[v] += 1
    for k, x in enumerate(legs):
        if x >= 0:
            if x >= n:
                raise GraphError(f"leg {k} attached to missing vertex {x}")
            degree[x] += 1
        else:
            j = -1 - x
            if j == k or j >= len(legs) or legs[j] != -1 - k:
                raise GraphError(f"leg {k} has an inconsistent free-line partner")
    for v in range(n):
        m = markers[v]
        if m == VERTEX and degree[v] != valence:
            raise GraphError(f"vertex {v} has degree {degree[v]}, expected {valence}")
        if m == TWO_POINT and degree[v] != 2:
            raise GraphError(f"two-point vertex {v} has degree {degree[v]}")
        if m not in (VERTEX, TWO_POINT, RESIDUE):
            raise GraphError(f"unknown vertex marker {m}")
        if degree[v] == 0:
            raise GraphError(f"isolated vertex {v}")


def _canonical(n, markers, edges, scales, legs, leg_scales, labeled):
    """Return (key, order, automorphism_count).

    ``order`` lists old vertex ids in their canonical position.  The count is
    the number of vertex permutations fixing the encoding (node automorphisms
    that also respect legs).
    """
    inv = []
    nbrs = [[] for _ in range(n)]
    for v in range(n):
        inv.append([markers[v], [], []])
    for (u, v), s in zip(edges, scales):
        if u == v:
            inv[u][1].append((s, 1))
            inv[u][1].append((s, 1))
        else:
            inv[u][1].append((s, 0))
            inv[v][1].append((s, 0))
            nbrs[u].append((s, v))
            nbrs[v].append((s, u))
    for k, (x, s) in enumerate(zip(legs, leg_scales)):
        if x >= 0:
            inv[x][2].append((k, s) if labeled else (s,))
    base = [(m, tuple(sorted(a)), tuple(sorted(b))) for m, a, b in inv]
    refined = [(base[v], tuple(sorted((s, base[w]) for s, w in nbrs[v]))) for v in range(n)]

    verts = sorted(range(n), key=lambda v: refined[v])
    cells = [list(grp) for _, grp in itertools.groupby(verts, key=lambda v: refined[v])]

    if labeled:
        free = tuple(
            (k, -1 - x) for k, x in enumerate(legs) if x < 0 and k < -1 - x
        )
    else:
        free = sum(1 for x in legs if x < 0) // 2

    best = None
    best_perm = None
    count = 0
    pos = [0] * n
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for cell in choice for v in cell]
        for i, v in enumerate(order):
            pos[v] = i
        enc_e = []
        for (u, v), s in zip(edges, scales):
            a, b = pos[u], pos[v]
            enc_e.append((a, b, s) if a <= b else (b, a, s))
        enc_e.sort()
        if labeled:
            enc_l = tuple(
                (pos[x], s) if x >= 0 else (x, s) for x, s in zip(legs, leg_scales)
            )
        else:
            enc_l = tuple(sorted((pos[x], s) for x, s in zip(legs, leg_scales) if x >= 0))
        enc = (tuple(enc_e), enc_l)
        if best is None or enc < best:
            best, best_perm, count = enc, order, 1
        elif enc == best:
            count += 1
    if best is None:  # no vertices
        enc_l = (
            tuple((x, s) for x, s in zip(legs, leg_scales))
            if labeled
            else ()
        )
        best, best_perm, count = ((), enc_l), [], 1
    key = (
        bool(labeled),
        n,
        tuple(markers[v] for v in best_perm),
        best[0],
        best[1],
        free,
    )
    return key, best_perm, count


def _multiplicity_factor(edges, scales, legs, leg_scales, labeled):
    """Half-edge relabelings inducing the identity on vertices."""
    factor = 1
    groups: dict = {}
    for (u, v), s in zip(edges, scales):
        k = (min(u, v), max(u, v), s)
        groups[k] = groups.get(k, 0) + 1
    for (u, v, _), m in groups.items():
        factor *= math.factorial(m)
        if u == v:
            factor *= 2**m
    if not labeled:
        at: dict = {}
        for x, s in zip(legs, leg_scales):
            if x >= 0:
                at[(x, s)] = at.get((x, s), 0) + 1
        for m in at.values():
            factor *= math.factorial(m)
        f = sum(1 for x in legs if x < 0) // 2
        factor *= math.factorial(f) * 2**f
    return factor


@dataclass(frozen=True, eq=False)
class FeynmanGraph:
    """Half-edge incidence structure with external legs.

    Half-edges are implicit: vertex ``v`` owns one half-edge per incident
    edge end and per attached leg (see :meth:`half_edges`).
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    legs: tuple[int, ...]
    valence: int = 4
    labeled: bool = False
    markers: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "legs", tuple(self.legs))
        if not self.markers:
            object.__setattr__(self, "markers", (VERTEX,) * self.num_vertices)
        else:
            object.__setattr__(self, "markers", tuple(self.markers))
        _check_structure(self.num_vertices, self.edges, self.legs, self.markers, self.valence)

    @property
    def n_ext(self) -> int:
        return len(self.legs)

    def degree(self, v: int) -> int:
        d = sum((a == v) + (b == v) for a, b in self.edges)
        return d + sum(1 for x in self.legs if x == v)

    def half_edges(self, v: int) -> list[tuple]:
        """Half-edges at ``v``: ``("edge", i, end)`` or ``("leg", k)``."""
        out = []
        for i, (a, b) in enumerate(self.edges):
            if a == v:
                out.append(("edge", i, 0))
            if b == v:
                out.append(("edge", i, 1))
        out.extend(("leg", k) for k, x in enumerate(self.legs) if x == v)
        return out

    @cached_property
    def _canon(self):
        return _canonical(
            self.num_vertices,
            self.markers,
            self.edges,
            (0,) * len(self.edges),
            self.legs,
            (SENTINEL,) * len(self.legs),
            self.labeled,
        )

    @property
    def key(self):
        return ("G", self.valence) + self._canon[0]

    def __eq__(self, other):
        if not isinstance(other, FeynmanGraph):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def with_labels(self, labeled: bool = True) -> FeynmanGraph:
        return FeynmanGraph(self.num_vertices, self.edges, self.legs, self.valence, labeled, self.markers)

    def assign(self, scales: Sequence[int] | None = None) -> AssignedGraph:
        if scales is None:
            scales = (0,) * len(self.edges)
        return AssignedGraph(self, tuple(scales))


@dataclass(frozen=True)
class ScaleAssignment:
    scales: tuple[int, ...]
    rho: int

    def __post_init__(self):
        if self.rho < 0:
            raise GraphError("rho must be non-negative")
        for s in self.scales:
            if not 0 <= s <= self.rho:
                raise GraphError(f"scale {s} outside [0, {self.rho}]")


@dataclass(frozen=True, eq=False)
class AssignedGraph:
    """A Feynman graph with one integer scale per internal edge.

    ``leg_scales`` gives the scale carried by each external leg; root graphs
    and algebra generators use the sentinel -1 everywhere.  Two assigned
    graphs are equal iff isomorphic (scales, legs and labels respected).
    """

    graph: FeynmanGraph
    scales: tuple[int, ...]
    leg_scales: tuple[int, ...] = ()

    def __post_init__(self):
        if isinstance(self.scales, ScaleAssignment):
            object.__setattr__(self, "scales", self.scales.scales)
        object.__setattr__(self, "scales", tuple(int(s) for s in self.scales))
        if len(self.scales) != len(self.graph.edges):
            raise GraphError("one scale per internal edge required")
        if not self.leg_scales:
            object.__setattr__(self, "leg_scales", (SENTINEL,) * len(self.graph.legs))
        else:
            object.__setattr__(self, "leg_scales", tuple(self.leg_scales))
        if len(self.leg_scales) != len(self.graph.legs):
            raise GraphError("one scale per external leg required")
        if any(s < 0 for s in self.scales):
            raise GraphError("internal scales must be non-negative")

    # plain accessors
    @property
    def num_vertices(self) -> int:
        return self.graph.num_vertices

    @property
    def edges(self):
        return self.graph.edges

    @property
    def legs(self):
        return self.graph.legs

    @property
    def markers(self):
        return self.graph.markers

    @property
    def labeled(self) -> bool:
        return self.graph.labeled

    @property
    def valence(self) -> int:
        return self.graph.valence

    @property
    def n_ext(self) -> int:
        return len(self.graph.legs)

    @property
    def loops(self) -> int:
        return loop_number(self)

    @property
    def grade(self) -> int:
        return loop_number(self)

    @property
    def max_scale(self) -> int:
        return max(self.scales, default=SENTINEL)

    @cached_property
    def _canon(self):
        g = self.graph
        return _canonical(
            g.num_vertices, g.markers, g.edges, self.scales, g.legs, self.leg_scales, g.labeled
        )

    @cached_property
    def key(self):
        return ("A", self.graph.valence) + self._canon[0]

    @cached_property
    def _hash(self):
        return hash(self.key)

    @property
    def sort_key(self):
        return self.key

    def __eq__(self, other):
        if not isinstance(other, AssignedGraph):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        e = ",".join(f"{u}-{v}:{s}" for (u, v), s in zip(self.edges, self.scales))
        tag = "L" if self.labeled else ""
        return f"AssignedGraph{tag}(V={self.num_vertices}, E=[{e}], legs={list(self.legs)})"

    def root(self) -> AssignedGraph:
        """Forget labels and leg scales (the form used as an algebra generator)."""
        g = self.graph
        if not g.labeled and all(s == SENTINEL for s in self.leg_scales):
            return self
        return AssignedGraph(g.with_labels(False), self.scales)

    def with_labels(self, labeled: bool = True) -> AssignedGraph:
        return AssignedGraph(self.graph.with_labels(labeled), self.scales, self.leg_scales)

    def half_edge_scale(self, he: tuple) -> int:
        if he[0] == "edge":
            return self.scales[he[1]]
        return self.leg_scales[he[1]]


# ---------------------------------------------------------------------------
# canonical forms, automorphisms


_interned: dict = {}


def canonicalize(g: AssignedGraph) -> AssignedGraph:
    """Canonical representative of the isomorphism class of ``g``.

    The representative is interned, so repeated calls return the same object
    and the edge order (hence subgraph masks) is deterministic.
    """
    key = g.key
    hit = _interned.get(key)
    if hit is not None:
        return hit
    order = g._canon[1]
    pos = {v: i for i, v in enumerate(order)}
    gr = g.graph
    triples = []
    for (u, v), s in zip(gr.edges, g.scales):
        a, b = pos[u], pos[v]
        triples.append((min(a, b), max(a, b), s))
    triples.sort()
    legs = [(pos[x] if x >= 0 else x, s) for x, s in zip(gr.legs, g.leg_scales)]
    if not gr.labeled:
        attached = sorted(p for p in legs if p[0] >= 0)
        nfree = len(legs) - len(attached)
        legs = attached
        base = len(attached)
        for i in range(nfree // 2):
            a, b = base + 2 * i, base + 2 * i + 1
            legs.append((-1 - b, SENTINEL))
            legs.append((-1 - a, SENTINEL))
    markers = tuple(gr.markers[v] for v in order)
    graph = FeynmanGraph(
        gr.num_vertices,
        tuple((a, b) for a, b, _ in triples),
        tuple(x for x, _ in legs),
        gr.valence,
        gr.labeled,
        markers,
    )
    rep = AssignedGraph(graph, tuple(s for _, _, s in triples), tuple(s for _, s in legs))
    rep.__dict__["key"] = key
    _interned[key] = rep
    return rep


def canonical_graph(g: FeynmanGraph) -> FeynmanGraph:
    return canonicalize(g.assign()).graph


def are_isomorphic(a: AssignedGraph, b: AssignedGraph) -> bool:
    return a.key == b.key


def automorphism_order(g: AssignedGraph | FeynmanGraph) -> int:
    """Order of the scale- and label-preserving half-edge automorphism group.

    Unlabeled inputs are given the default labeling x_{k+1} on leg k first;
    every labeling yields a conjugate group, so the order is well defined.
    """
    if isinstance(g, FeynmanGraph):
        g = g.assign()
    if not g.labeled:
        g = g.with_labels(True)
    node_auts = g._canon[2]
    return node_auts * _multiplicity_factor(g.edges, g.scales, g.legs, g.leg_scales, True)


def unlabeled_automorphism_order(g: AssignedGraph | FeynmanGraph) -> int:
    """Order of the automorphism group when external points may be permuted."""
    if isinstance(g, FeynmanGraph):
        g = g.assign()
    if g.labeled:
        g = g.with_labels(False)
    return g._canon[2] * _multiplicity_factor(g.edges, g.scales, g.legs, g.leg_scales, False)


def relabel_legs(g: AssignedGraph, perm: Sequence[int]) -> AssignedGraph:
    """Labeled copy where label ``k`` is carried by the old leg ``perm[k]``."""
    inv = {old: new for new, old in enumerate(perm)}
    legs = []
    for k in range(len(perm)):
        x = g.legs[perm[k]]
        legs.append(x if x >= 0 else -1 - inv[-1 - x])
    gr = FeynmanGraph(g.num_vertices, g.edges, tuple(legs), g.valence, True, g.markers)
    return AssignedGraph(gr, g.scales, tuple(g.leg_scales[p] for p in perm))


def external_labelings(g: AssignedGraph | FeynmanGraph) -> int:
    """Number of pairwise non-isomorphic ways to put labels x_1..x_n on the legs."""
    if isinstance(g, FeynmanGraph):
        g = g.assign()
    n = g.n_ext
    seen = set()
    for perm in itertools.permutations(range(n)):
        seen.add(relabel_legs(g, perm).key)
    return len(seen)


def loop_number(g: AssignedGraph | FeynmanGraph) -> int:
    """Independent cycles E - V + c (c = number of components, 1 when connected)."""
    gr = g.graph if isinstance(g, AssignedGraph) else g
    return len(gr.edges) - gr.num_vertices + _count_components(gr.num_vertices, gr.edges)


def _count_components(n, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    c = n
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            c -= 1
    return c


def is_connected(g: AssignedGraph | FeynmanGraph) -> bool:
    gr = g.graph if isinstance(g, AssignedGraph) else g
    if any(x < 0 for x in gr.legs):
        return gr.num_vertices == 0 and len(gr.legs) == 2
    return gr.num_vertices > 0 and _count_components(gr.num_vertices, gr.edges) == 1


def is_one_pi(g: AssignedGraph | FeynmanGraph) -> bool:
    """True iff no single internal edge disconnects ``g``.

    Raises :class:`DisconnectedGraphError` for disconnected input.
    """
    gr = g.graph if isinstance(g, AssignedGraph) else g
    if not is_connected(gr):
        raise DisconnectedGraphError("1PI test needs a connected graph")
    for i in range(len(gr.edges)):
        rest = gr.edges[:i] + gr.edges[i + 1:]
        if _count_components(gr.num_vertices, rest) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# subgraphs


@dataclass(frozen=True)
class Piece:
    """Precomputed data for one connected edge subset of a host graph."""

    mask: int
    vertices: frozenset
    n_external: int
    internal_index: int
    external_index: int
    one_pi: bool

    @property
    def high(self) -> bool:
        return self.external_index < self.internal_index


class SubgraphTable:
    """Incidence data of a host graph with memoised per-subset analysis."""

    def __init__(self, g: AssignedGraph):
        self.g = g
        gr = g.graph
        self.n = gr.num_vertices
        self.ends = gr.edges
        self.scales = g.scales
        self.E = len(gr.edges)
        self.full = (1 << self.E) - 1
        self.degree = [0] * self.n
        self.incident: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(gr.edges):
            self.degree[u] += 1
            self.degree[v] += 1
            self.incident[u].append(i)
            if v != u:
                self.incident[v].append(i)
        self.leg_scales_at: list[list[int]] = [[] for _ in range(self.n)]
        for x, s in zip(gr.legs, g.leg_scales):
            if x >= 0:
                self.degree[x] += 1
                self.leg_scales_at[x].append(s)
        self._pieces: dict[int, Piece] = {}

    def vertices_of(self, mask: int) -> set:
        vs = set()
        i = 0
        while mask:
            if mask & 1:
                u, v = self.ends[i]
                vs.add(u)
                vs.add(v)
            mask >>= 1
            i += 1
        return vs

    def split(self, mask: int) -> list[int]:
        """Edge masks of the connected components of ``mask``."""
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        idx = [i for i in range(self.E) if mask >> i & 1]
        for i in idx:
            u, v = self.ends[i]
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
        comps: dict = {}
        for i in idx:
            r = find(self.ends[i][0])
            comps[r] = comps.get(r, 0) | (1 << i)
        return sorted(comps.values())

    def _connected_over(self, mask: int, vertices) -> bool:
        if len(vertices) <= 1:
            return True
        parent = {v: v for v in vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        c = len(vertices)
        for i in range(self.E):
            if mask >> i & 1:
                u, v = self.ends[i]
                a, b = find(u), find(v)
                if a != b:
                    parent[a] = b
                    c -= 1
        return c == 1

    def piece(self, mask: int) -> Piece:
        """Analysis of a connected edge subset."""
        p = self._pieces.get(mask)
        if p is not None:
            return p
        vs = frozenset(self.vertices_of(mask))
        n_int = bin(mask).count("1")
        ext = sum(self.degree[v] for v in vs) - 2 * n_int
        i_idx = min(self.scales[i] for i in range(self.E) if mask >> i & 1)
        e_idx = SENTINEL
        for v in vs:
            for i in self.incident[v]:
                if not mask >> i & 1:
                    e_idx = max(e_idx, self.scales[i])
            for s in self.leg_scales_at[v]:
                e_idx = max(e_idx, s)
        one_pi = all(
            self._connected_over(mask & ~(1 << i), vs)
            for i in range(self.E)
            if mask >> i & 1
        )
        p = Piece(mask, vs, ext, i_idx, e_idx, one_pi)
        self._pieces[mask] = p
        return p

    @cached_property
    def connected_masks(self) -> list[int]:
        out = []
        for mask in range(1, self.full + 1):
            vs = self.vertices_of(mask)
            if self._connected_over(mask, vs):
                out.append(mask)
        return out

    def standalone(self, mask: int, keep_leg_scales: bool = False) -> AssignedGraph:
        """The connected subgraph ``mask`` as a graph of its own.

        Host edges at its vertices that are not in ``mask`` become legs; with
        ``keep_leg_scales`` they carry the host scales, otherwise the sentinel.
        """
        vs = sorted(self.vertices_of(mask))
        pos = {v: i for i, v in enumerate(vs)}
        edges, scales, legs, leg_scales = [], [], [], []
        for i in range(self.E):
            if mask >> i & 1:
                u, v = self.ends[i]
                edges.append((pos[u], pos[v]))
                scales.append(self.scales[i])
        for v in vs:
            for i in self.incident[v]:
                if not mask >> i & 1:
                    u, w = self.ends[i]
                    times = (u == v) + (w == v)
                    legs.extend([pos[v]] * times)
                    leg_scales.extend([self.scales[i]] * times)
            legs.extend([pos[v]] * len(self.leg_scales_at[v]))
            leg_scales.extend(self.leg_scales_at[v])
        markers = tuple(self.g.markers[v] for v in vs)
        gr = FeynmanGraph(len(vs), tuple(edges), tuple(legs), self.g.valence, False, markers)
        if not keep_leg_scales:
            return AssignedGraph(gr, tuple(scales))
        return AssignedGraph(gr, tuple(scales), tuple(leg_scales))

    def shrink(self, mask: int, check: bool = True) -> AssignedGraph:
        """Collapse every component of ``mask`` to a single vertex."""
        comps = self.split(mask)
        where: dict[int, int] = {}
        markers = []
        for c in comps:
            vs = self.vertices_of(c)
            if check:
                p = self.piece(c)
                if p.n_external not in (2, 4):
                    raise GraphError(
                        f"cannot shrink a component with {p.n_external} external edges"
                    )
                if not p.one_pi:
                    raise GraphError("shrunk components must be 1PI")
            ext = sum(self.degree[v] for v in vs) - 2 * bin(c).count("1")
            new = len(markers)
            for v in vs:
                where[v] = new
            if ext == self.g.valence:
                markers.append(VERTEX)
            elif ext == 2:
                markers.append(TWO_POINT)
            else:
                markers.append(RESIDUE)
        for v in range(self.n):
            if v not in where:
                where[v] = len(markers)
                markers.append(self.g.markers[v])
        edges, scales = [], []
        for i in range(self.E):
            if not mask >> i & 1:
                u, v = self.ends[i]
                edges.append((where[u], where[v]))
                scales.append(self.scales[i])
        gr = self.g.graph
        legs = tuple(where[x] if x >= 0 else x for x in gr.legs)
        new = FeynmanGraph(len(markers), tuple(edges), legs, gr.valence, gr.labeled, tuple(markers))
        return AssignedGraph(new, tuple(scales), self.g.leg_scales)


_tables: dict = {}


def table(g: AssignedGraph) -> SubgraphTable:
    """Memoised :class:`SubgraphTable`, keyed by object identity of canonical graphs."""
    t = _tables.get(id(g))
    if t is not None and t.g is g:
        return t
    t = SubgraphTable(g)
    if g.key in _interned and _interned[g.key] is g:
        _tables[id(g)] = t
    return t


@dataclass(frozen=True)
class Subgraph:
    """An internal-edge subset of a host graph; vertices are induced."""

    parent: AssignedGraph
    internal_edge_subset: frozenset

    def __post_init__(self):
        s = frozenset(self.internal_edge_subset)
        object.__setattr__(self, "internal_edge_subset", s)
        if any(not 0 <= i < len(self.parent.edges) for i in s):
            raise GraphError("subgraph edges must be internal edges of the parent")

    @classmethod
    def from_mask(cls, parent: AssignedGraph, mask: int) -> Subgraph:
        return cls(parent, frozenset(i for i in range(len(parent.edges)) if mask >> i & 1))

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.internal_edge_subset)

    @property
    def vertices(self) -> frozenset:
        return frozenset(table(self.parent).vertices_of(self.mask))

    @property
    def components(self) -> list[Subgraph]:
        return [Subgraph.from_mask(self.parent, m) for m in table(self.parent).split(self.mask)]

    @property
    def is_connected(self) -> bool:
        return len(table(self.parent).split(self.mask)) == 1

    @property
    def n_external(self) -> int:
        t = table(self.parent)
        return sum(t.degree[v] for v in self.vertices) - 2 * len(self.internal_edge_subset)

    @property
    def scales(self) -> dict[int, int]:
        return {i: self.parent.scales[i] for i in sorted(self.internal_edge_subset)}

    def to_assigned(self) -> AssignedGraph:
        """Standalone copy with external legs carrying the parent's scales."""
        if not self.is_connected:
            raise GraphError("only connected subgraphs have a standalone form")
        return table(self.parent).standalone(self.mask, keep_leg_scales=True)


def shrink(G: AssignedGraph, g: Subgraph | Iterable[int]) -> AssignedGraph:
    """Assigned cograph G/g: each component of ``g`` becomes one vertex.

    A 4-point component leaves an ordinary vertex, a 2-point component a
    2-valent vertex marked :data:`TWO_POINT`.  Scales of surviving edges and
    the external structure of ``G`` are untouched.
    """
    if not isinstance(g, Subgraph):
        g = Subgraph(G, frozenset(g))
    elif g.parent is not G and g.parent != G:
        raise GraphError("subgraph belongs to a different graph")
    if not g.internal_edge_subset:
        return G
    return SubgraphTable(g.parent).shrink(g.mask)


@dataclass(frozen=True)
class GluingData:
    """Where and how to insert a 2- or 4-point graph.

    ``target`` is ``("vertex", v)`` or ``("edge", i)``; ``bijection[k]`` is the
    position, in the host's half-edge list at the target, matched with leg
    ``k`` of the insert.  For an edge the half-edges are its two ends.
    """

    target: tuple
    bijection: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bijection", tuple(self.bijection))
        if sorted(self.bijection) != list(range(len(self.bijection))):
            raise GraphError("gluing bijection must be a permutation")


def glue(host: AssignedGraph, insert: AssignedGraph, data: GluingData) -> AssignedGraph:
    """Insert ``insert`` at a vertex or propagator of ``host``.

    The insert's own edges come last in the result, in their original order,
    so ``Subgraph(result, range(E_host', E_result))`` is its image.  Leg scales
    of the insert, where assigned (not the sentinel), must agree with the host
    scale of the matched half-edge.
    """
    kind, where = data.target
    n_in = insert.n_ext
    if len(data.bijection) != n_in:
        raise GraphError("bijection size differs from the insert's leg count")
    if n_in not in (2, 4):
        raise GraphError(f"can only insert 2- or 4-point graphs, got {n_in}")
    if any(x < 0 for x in insert.legs):
        raise GraphError("insert has free lines")
    hg = host.graph
    off = hg.num_vertices
    new_edges = list(hg.edges)
    new_scales = list(host.scales)
    new_legs = list(hg.legs)
    markers = list(hg.markers) + list(insert.markers)

    if kind == "vertex":
        v = where
        hes = hg.half_edges(v)
        if len(hes) != n_in:
            raise GraphError(f"vertex {v} has {len(hes)} half-edges, insert has {n_in} legs")
        for k in range(n_in):
            he = hes[data.bijection[k]]
            s_host = host.half_edge_scale(he)
            s_ins = insert.leg_scales[k]
            if s_ins != SENTINEL and s_ins != s_host:
                raise GraphError(
                    f"interface scale mismatch: host {s_host}, insert leg {k} carries {s_ins}"
                )
            w = off + insert.legs[k]
            if he[0] == "edge":
                a, b = new_edges[he[1]]
                new_edges[he[1]] = (w, b) if he[2] == 0 else (a, w)
            else:
                new_legs[he[1]] = w
        # drop vertex v and renumber
        remap = {}
        for old in range(len(markers)):
            if old != v:
                remap[old] = len(remap)
        del markers[v]
        new_edges = [(remap[a], remap[b]) for a, b in new_edges]
        new_legs = [remap[x] if x >= 0 else x for x in new_legs]
        ins_edges = [(remap[off + a], remap[off + b]) for a, b in insert.edges]
    elif kind == "edge":
        if n_in != 2:
            raise GraphError("only 2-point graphs can be inserted into a propagator")
        i = where
        a, b = hg.edges[i]
        s = host.scales[i]
        for k in range(2):
            if insert.leg_scales[k] != SENTINEL and insert.leg_scales[k] != s:
                raise GraphError(
                    f"interface scale mismatch: propagator {s}, insert leg {k} carries "
                    f"{insert.leg_scales[k]}"
                )
        ends = (a, b)
        del new_edges[i]
        del new_scales[i]
        for k in range(2):
            new_edges.append((ends[data.bijection[k]], off + insert.legs[k]))
            new_scales.append(s)
        ins_edges = [(off + x, off + y) for x, y in insert.edges]
    else:
        raise GraphError(f"unknown gluing target {kind!r}")

    gr = FeynmanGraph(
        len(markers),
        tuple(new_edges) + tuple(ins_edges),
        tuple(new_legs),
        hg.valence,
        hg.labeled,
        tuple(markers),
    )
    return AssignedGraph(gr, tuple(new_scales) + insert.scales, host.leg_scales)


# ---------------------------------------------------------------------------
# small named graphs used throughout the tests and scripts


def single_vertex(n_ext: int = 4, valence: int = 4, labeled: bool = False) -> FeynmanGraph:
    marker = VERTEX if n_ext == valence else (TWO_POINT if n_ext == 2 else RESIDUE)
    return FeynmanGraph(1, (), (0,) * n_ext, valence, labeled, (marker,))


def bubble() -> FeynmanGraph:
    """Two vertices, two parallel edges, two legs on each vertex."""
    return FeynmanGraph(2, ((0, 1), (0, 1)), (0, 0, 1, 1))


def sunset() -> FeynmanGraph:
    """Two vertices joined by three parallel edges, one leg each."""
    return FeynmanGraph(2, ((0, 1), (0, 1), (0, 1)), (0, 1))


def chain(length: int = 2) -> FeynmanGraph:
    """``length`` bubbles in a row (the s-channel chain quadruped)."""
    edges = []
    for i in range(length):
        edges += [(i, i + 1), (i, i + 1)]
    return FeynmanGraph(length + 1, tuple(edges), (0, 0, length, length))


def triangle_quadruped() -> FeynmanGraph:
    """The other order-3 quadruped: a bubble on (1, 2) closed through vertex 0."""
    return FeynmanGraph(3, ((0, 1), (0, 2), (1, 2), (1, 2)), (0, 0, 1, 2))
