"""Brute-force Wick oracle.

Every perfect matching of the 4v vertex half-edges and n labeled external
points is enumerated.  A matching is reduced on the fly to an integer key
recording the multigraph it produces (edge multiplicities between vertex
pairs plus the partner of every external point), and keys are counted in a
hash table.  Afterwards keys are bucketed into labeled and unlabeled classes
by exhaustive minimisation over vertex permutations.  Nothing here uses the
graph-core canonical forms, so the two implementations check each other.

The pairing count of a labeled class is v!·24^v/σ, and N is the number of
labeled classes in an unlabeled class.
"""
from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

from .graphs import FeynmanGraph

VALENCE = 4
MAX_VERTICES = 4
CACHE_VERSION = 1


class OracleError(ValueError):
    pass


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


# ---------------------------------------------------------------------------
# key layout


@dataclass(frozen=True)
class KeyLayout:
    """Bit fields of a matching key.

    Each unordered vertex pair (a <= b) owns a 3-bit edge counter; each
    external point owns a 4-bit field holding (partner node + 1), where nodes
    v..v+n-1 are the external points themselves.
    """

    v: int
    n: int

    @property
    def pair_offset(self) -> dict[tuple[int, int], int]:
        out, pos = {}, 0
        for a in range(self.v):
            for b in range(a, self.v):
                out[(a, b)] = pos
                pos += 3
        return out

    @property
    def ext_offset(self) -> int:
        return 3 * self.v * (self.v + 1) // 2

    def weights(self) -> np.ndarray:
        v, n = self.v, self.n
        nn = v + n
        pairs = self.pair_offset
        W = np.zeros((nn, nn), np.int64)
        for a in range(nn):
            for b in range(nn):
                if a < v and b < v:
                    W[a, b] = 1 << pairs[(min(a, b), max(a, b))]
                elif a < v:
                    W[a, b] = (a + 1) << (self.ext_offset + 4 * (b - v))
                elif b < v:
                    W[a, b] = (b + 1) << (self.ext_offset + 4 * (a - v))
                else:
                    W[a, b] = ((b + 1) << (self.ext_offset + 4 * (a - v))) + (
                        (a + 1) << (self.ext_offset + 4 * (b - v))
                    )
        return W

    def node_of(self) -> np.ndarray:
        return np.array(
            [s // VALENCE for s in range(VALENCE * self.v)] + [self.v + k for k in range(self.n)],
            np.int64,
        )

    def decode(self, key: int) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
        edges = []
        for (a, b), off in self.pair_offset.items():
            edges += [(a, b)] * ((key >> off) & 7)
        legs = []
        for k in range(self.n):
            p = ((key >> (self.ext_offset + 4 * k)) & 15) - 1
            legs.append(p if p < self.v else -1 - (p - self.v))
        return tuple(edges), tuple(legs)


# ---------------------------------------------------------------------------
# enumeration kernels


def _count_keys_python(node_of, weight) -> dict[int, int]:
    """Reference enumerator (recursive), used for small universes and as a cross-check."""
    m = len(node_of)
    counts: dict[int, int] = {}
    matched = [False] * m

    def rec(key, remaining):
        if remaining == 0:
            counts[key] = counts.get(key, 0) + 1
            return
        f = matched.index(False)
        matched[f] = True
        for p in range(f + 1, m):
            if not matched[p]:
                matched[p] = True
                rec(key + int(weight[node_of[f], node_of[p]]), remaining - 2)
                matched[p] = False
        matched[f] = False

    rec(0, m)
    return counts


if njit is not None:

    @njit(cache=True)
    def _count_keys_numba(node_of, weight, cap):  # pragma: no cover - compiled
        m = node_of.shape[0]
        keys = np.full(cap, -1, np.int64)
        counts = np.zeros(cap, np.int64)
        matched = np.zeros(m, np.bool_)
        first = np.zeros(m // 2 + 1, np.int64)
        partner = np.zeros(m // 2 + 1, np.int64)
        keyacc = np.zeros(m // 2 + 2, np.int64)
        mask = cap - 1
        bits = 0
        while (1 << bits) < cap:
            bits += 1
        shift = 64 - bits
        nkeys = 0
        half = m // 2
        depth = 0
        first[0] = 0
        partner[0] = 0
        matched[0] = True
        while depth >= 0:
            f = first[depth]
            if partner[depth] > f:
                matched[partner[depth]] = False
            p = partner[depth] + 1
            while p < m and matched[p]:
                p += 1
            if p >= m:
                matched[f] = False
                depth -= 1
                continue
            partner[depth] = p
            matched[p] = True
            k = keyacc[depth] + weight[node_of[f], node_of[p]]
            if depth + 1 == half:
                h = np.int64((np.uint64(k) * np.uint64(0x9E3779B97F4A7C15)) >> np.uint64(shift))
                while True:
                    if keys[h] == k:
                        counts[h] += 1
                        break
                    if keys[h] == -1:
                        keys[h] = k
                        counts[h] = 1
                        nkeys += 1
                        if 2 * nkeys > cap:
                            return keys, counts, -1
                        break
                    h = (h + 1) & mask
                continue
            keyacc[depth + 1] = k
            nf = f + 1
            while matched[nf]:
                nf += 1
            depth += 1
            first[depth] = nf
            partner[depth] = nf
            matched[nf] = True
        return keys, counts, nkeys


def count_keys(v: int, n: int, backend: str = "auto") -> dict[int, int]:
    """Raw key -> number of matchings for the (v, n) universe."""
    layout = KeyLayout(v, n)
    m = VALENCE * v + n
    if m == 0:
        return {0: 1}
    node_of, W = layout.node_of(), layout.weights()
    if backend == "python" or (backend == "auto" and (njit is None or m <= 10)):
        return _count_keys_python(node_of, W)
    if njit is None:
        raise OracleError("numba backend requested but numba is unavailable")
    cap = 1 << 12
    while True:
        keys, counts, nk = _count_keys_numba(node_of, W, cap)
        if nk >= 0:
            break
        cap <<= 2
    sel = keys >= 0
    return {int(k): int(c) for k, c in zip(keys[sel], counts[sel])}


# ---------------------------------------------------------------------------
# the oracle's own graph representation and canonical forms


@dataclass(frozen=True)
class OGraph:
    """Multigraph on vertices 0..v-1; legs[k] is a vertex or -1-j for a line to point j."""

    v: int
    edges: tuple[tuple[int, int], ...]
    legs: tuple[int, ...]

    def relabel(self, perm) -> tuple:
        e = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in self.edges))
        l = tuple(perm[x] if x >= 0 else x for x in self.legs)
        return e, l

    def labeled_key(self) -> tuple:
        return min(self.relabel(p) for p in itertools.permutations(range(self.v))) if self.v else ((), self.legs)

    def unlabeled_key(self) -> tuple:
        free = sum(1 for x in self.legs if x < 0) // 2
        best = None
        for p in itertools.permutations(range(self.v)):
            e, l = self.relabel(p)
            enc = (e, tuple(sorted(x for x in l if x >= 0)), free)
            if best is None or enc < best:
                best = enc
        return best if best is not None else ((), (), free)

    def degree(self, x: int) -> int:
        return sum((a == x) + (b == x) for a, b in self.edges) + sum(1 for y in self.legs if y == x)

    def to_feynman(self) -> FeynmanGraph:
        return FeynmanGraph(self.v, self.edges, self.legs)

    @staticmethod
    def from_feynman(g: FeynmanGraph) -> "OGraph":
        if any(m != 0 for m in g.markers) or g.valence != VALENCE:
            raise OracleError("the oracle only knows ordinary four-valent vertices")
        return OGraph(g.num_vertices, tuple(tuple(sorted(e)) for e in g.edges), tuple(g.legs))


def _components(v: int, edges) -> int:
    parent = list(range(v))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    c = v
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            c -= 1
    return c


def o_connected(g: OGraph) -> bool:
    if g.v == 0:
        return len(g.legs) == 2
    return not any(x < 0 for x in g.legs) and _components(g.v, g.edges) == 1


def o_bridgeless(g: OGraph) -> bool:
    base = _components(g.v, g.edges)
    return all(
        _components(g.v, g.edges[:i] + g.edges[i + 1:]) == base for i in range(len(g.edges))
    )


def _edge_subsets(g: OGraph):
    """Connected bridgeless edge subsets as (index tuple, vertex set, external count)."""
    E = len(g.edges)
    for r in range(1, E + 1):
        for idx in itertools.combinations(range(E), r):
            sub = [g.edges[i] for i in idx]
            vs = sorted({x for e in sub for x in e})
            pos = {x: i for i, x in enumerate(vs)}
            local = [(pos[a], pos[b]) for a, b in sub]
            if _components(len(vs), local) != 1:
                continue
            if not all(_components(len(vs), local[:i] + local[i + 1:]) == 1 for i in range(r)):
                continue
            ext = sum(g.degree(x) for x in vs) - 2 * r
            yield idx, vs, ext


def o_biped_free(g: OGraph) -> bool:
    """No connected bridgeless edge subset with two external half-edges."""
    full = len(g.edges)
    for idx, vs, ext in _edge_subsets(g):
        if ext == 2 and not (len(idx) == full and len(g.legs) == 2 and len(vs) == g.v):
            return False
    return True


def o_standalone(g: OGraph, idx, vs) -> OGraph:
    pos = {x: i for i, x in enumerate(vs)}
    sub = set(idx)
    edges = tuple(tuple(sorted((pos[g.edges[i][0]], pos[g.edges[i][1]]))) for i in idx)
    legs = []
    for x in vs:
        for i, (a, b) in enumerate(g.edges):
            if i not in sub:
                legs += [pos[x]] * ((a == x) + (b == x))
        legs += [pos[x]] * sum(1 for y in g.legs if y == x)
    return OGraph(len(vs), edges, tuple(legs))


def o_quotient(g: OGraph, idx, vs) -> OGraph:
    sub, inside = set(idx), set(vs)
    outside = [x for x in range(g.v) if x not in inside]
    pos = {x: i + 1 for i, x in enumerate(outside)}
    for x in inside:
        pos[x] = 0
    edges = tuple(
        tuple(sorted((pos[a], pos[b]))) for i, (a, b) in enumerate(g.edges) if i not in sub
    )
    legs = tuple(pos[x] if x >= 0 else x for x in g.legs)
    return OGraph(len(outside) + 1, edges, legs)


# ---------------------------------------------------------------------------
# universes


@dataclass(frozen=True)
class OracleClass:
    """One unlabeled isomorphism class of a (v, n) universe."""

    graph: OGraph
    pairings: int
    n_labelings: int
    sigma: int

    @property
    def weight(self) -> Fraction:
        return Fraction(self.n_labelings, self.sigma)

    @property
    def connected(self) -> bool:
        return o_connected(self.graph)

    @property
    def one_pi(self) -> bool:
        return self.connected and o_bridgeless(self.graph)

    @property
    def self_loops(self) -> bool:
        return any(a == b for a, b in self.graph.edges)

    @property
    def biped_free(self) -> bool:
        return o_biped_free(self.graph)


@dataclass
class PairingUniverse:
    v: int
    n_ext: int
    labeled_counts: dict  # labeled key -> pairings
    classes: list[OracleClass]

    @property
    def total(self) -> int:
        return sum(self.labeled_counts.values())

    @property
    def expected_total(self) -> int:
        return double_factorial(VALENCE * self.v + self.n_ext - 1)

    def find(self, g: FeynmanGraph) -> OracleClass:
        og = OGraph.from_feynman(g)
        key = og.unlabeled_key()
        for c in self.classes:
            if c.graph.unlabeled_key() == key:
                return c
        raise OracleError("graph not in this universe")


def cache_dir() -> Path:
    return Path(os.environ.get("MSHOPF_CATALOG_DIR", Path.home() / ".cache" / "mshopf"))


def _check_bounds(v: int, n: int, max_vertices: int):
    if v < 0 or n < 0:
        raise OracleError("negative universe size")
    if (VALENCE * v + n) % 2:
        raise OracleError("odd number of half-edges has no perfect matching")
    if v > max_vertices:
        raise OracleError(f"v={v} exceeds the desk-scale bound {max_vertices}")
    if n > 6:
        raise OracleError("at most 6 external points are supported")


def _labeled_counts(v: int, n: int, backend: str, use_cache: bool) -> dict:
    path = cache_dir() / f"wick_v{v}_n{n}_r{CACHE_VERSION}.json"
    if use_cache and path.exists():
        try:
            data = json.loads(path.read_text())
            return {_untuple(k): c for k, c in data}
        except (OSError, ValueError):
            pass
    layout = KeyLayout(v, n)
    out: dict = {}
    for key, c in count_keys(v, n, backend).items():
        edges, legs = layout.decode(key)
        lk = OGraph(v, edges, legs).labeled_key()
        out[lk] = out.get(lk, 0) + c
    if use_cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            rows = sorted(([_unlist(k), c] for k, c in out.items()), key=repr)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(rows))
            tmp.replace(path)
        except OSError:
            pass
    return out


def _unlist(x):
    return [_unlist(y) for y in x] if isinstance(x, (tuple, list)) else x


def _untuple(x):
    return tuple(_untuple(y) for y in x) if isinstance(x, list) else x


_universes: dict = {}


def enumerate_pairings(
    v: int,
    n_ext: int,
    backend: str = "auto",
    use_cache: bool = True,
    max_vertices: int = MAX_VERTICES,
) -> PairingUniverse:
    """Classify every Wick matching of the (v, n_ext) universe."""
    _check_bounds(v, n_ext, max_vertices)
    memo = (v, n_ext)
    if memo in _universes and backend == "auto":
        return _universes[memo]
    labeled = _labeled_counts(v, n_ext, backend, use_cache and backend == "auto")
    groups: dict = {}
    reps: dict = {}
    for (edges, legs), c in labeled.items():
        og = OGraph(v, edges, legs)
        uk = og.unlabeled_key()
        groups.setdefault(uk, []).append(c)
        reps.setdefault(uk, og)
    full = math.factorial(v) * math.factorial(VALENCE) ** v
    classes = []
    for uk in sorted(groups):
        cs = groups[uk]
        if any(full % c for c in cs) or len(set(cs)) != 1:
            raise OracleError("labeled classes of one unlabeled class disagree")
        classes.append(OracleClass(reps[uk], sum(cs), len(cs), full // cs[0]))
    uni = PairingUniverse(v, n_ext, labeled, classes)
    if backend == "auto":
        _universes[memo] = uni
    return uni


def oracle_class(g: FeynmanGraph) -> OracleClass:
    return enumerate_pairings(g.num_vertices, g.n_ext).find(g)


def oracle_sigma(g: FeynmanGraph) -> int:
    return oracle_class(g).sigma


def oracle_N(g: FeynmanGraph) -> int:
    return oracle_class(g).n_labelings


def oracle_weight(g: FeynmanGraph) -> Fraction:
    return oracle_class(g).weight


FILTERS: dict[str, Callable[[OracleClass], bool]] = {
    "all": lambda c: True,
    "connected": lambda c: c.connected,
    "one_pi": lambda c: c.one_pi,
    "no_self_loops": lambda c: not c.self_loops,
    "biped_free": lambda c: c.one_pi and c.biped_free,
}


def catalog(
    v_max: int,
    n_ext: int,
    filter: Callable[[OracleClass], bool] | str | Iterable[str] = "all",
    v_min: int = 1,
) -> list[OracleClass]:
    """Classes with v_min ≤ v ≤ v_max passing ``filter``, ordered by (v, oracle key)."""
    if isinstance(filter, str):
        filter = [filter]
    if not callable(filter):
        names = list(filter)
        filter = lambda c: all(FILTERS[k](c) for k in names)
    out = []
    for v in range(v_min, v_max + 1):
        if (VALENCE * v + n_ext) % 2:
            continue
        out += [c for c in enumerate_pairings(v, n_ext).classes if filter(c)]
    return out


def biped_free_quadrupeds(v_max: int) -> list[FeynmanGraph]:
    return [c.graph.to_feynman() for c in catalog(v_max, 4, "biped_free")]


def oracle_insertions(g1: FeynmanGraph, g2: FeynmanGraph, g: FeynmanGraph) -> int:
    """Subgraphs of ``g`` isomorphic to ``g1`` whose quotient is isomorphic to ``g2``."""
    o1, o2, o = (OGraph.from_feynman(x) for x in (g1, g2, g))
    k1, k2 = o1.unlabeled_key(), o2.unlabeled_key()
    n1 = len(o1.legs)
    count = 0
    for idx, vs, ext in _edge_subsets(o):
        if ext != n1 or len(vs) != o1.v or len(idx) != len(o1.edges):
            continue
        if o_standalone(o, idx, vs).unlabeled_key() != k1:
            continue
        if o_quotient(o, idx, vs).unlabeled_key() == k2:
            count += 1
    return count
