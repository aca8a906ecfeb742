"""Graph-spec text format, JSON serialization and DOT output.

Graph specs have one declaration per line; ``#`` starts a comment::

    graph bubble valence 4
    vertex 0
    vertex 1
    internal a 0 1 scale 1
    internal b 0 1 scale 2
    external x1 0
    external x2 0
    external x3 1
    external x4 1

External legs are ordered by appearance.  A file may hold several graphs.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraElement, Tensor
from .graphs import AssignedGraph, FeynmanGraph, GraphError
from .multiscale import GNTree
from .polynomials import Poly


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class GraphSpec:
    name: str
    graph: AssignedGraph
    vertex_ids: list[str]
    edge_ids: list[str]
    leg_labels: list[str]


def _finish(name, valence, vertices, internals, externals, line) -> GraphSpec:
    index = {v: i for i, v in enumerate(vertices)}
    try:
        edges = [(index[a], index[b]) for _, a, b, _ in internals]
        legs = [index[v] for _, v in externals]
    except KeyError as exc:
        raise SpecError(f"graph {name!r} references undeclared vertex {exc.args[0]!r}", line) from None
    seen = [e for e, *_ in internals]
    if len(set(seen)) != len(seen):
        raise SpecError(f"graph {name!r} repeats an internal edge id", line)
    labels = [l for l, _ in externals]
    if len(set(labels)) != len(labels):
        raise SpecError(f"graph {name!r} repeats an external label", line)
    try:
        fg = FeynmanGraph(len(vertices), tuple(edges), tuple(legs), valence)
        ag = AssignedGraph(fg, tuple(s for *_, s in internals))
    except GraphError as exc:
        raise SpecError(f"graph {name!r}: {exc}", line) from None
    return GraphSpec(name, ag, list(vertices), seen, labels)


def parse_specs(text: str) -> list[GraphSpec]:
    out = []
    current = None

    def close():
        if current is not None:
            out.append(_finish(*current))

    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        kw = line[0]
        if kw == "graph":
            close()
            if len(line) not in (2, 4) or (len(line) == 4 and line[2] != "valence"):
                raise SpecError("expected: graph <name> [valence <k>]", n)
            try:
                valence = int(line[3]) if len(line) == 4 else 4
            except ValueError:
                raise SpecError("valence must be an integer", n) from None
            if valence <= 0:
                raise SpecError("valence must be positive", n)
            current = [line[1], valence, [], [], [], n]
            continue
        if current is None:
            raise SpecError(f"{kw!r} before any graph declaration", n)
        if kw == "vertex":
            if len(line) != 2:
                raise SpecError("expected: vertex <id>", n)
            if line[1] in current[2]:
                raise SpecError(f"vertex {line[1]!r} declared twice", n)
            current[2].append(line[1])
        elif kw == "internal":
            if len(line) not in (4, 6) or (len(line) == 6 and line[4] != "scale"):
                raise SpecError("expected: internal <id> <v1> <v2> scale <i>", n)
            try:
                scale = int(line[5]) if len(line) == 6 else 0
            except ValueError:
                raise SpecError("scale must be an integer", n) from None
            if scale < 0:
                raise SpecError("scales must be non-negative", n)
            current[3].append((line[1], line[2], line[3], scale))
        elif kw == "external":
            if len(line) != 3:
                raise SpecError("expected: external <label> <v>", n)
            current[4].append((line[1], line[2]))
        else:
            raise SpecError(f"unknown declaration {kw!r}", n)
    if current is None:
        raise SpecError("no graph declared")
    close()
    return out


def parse_spec(text: str) -> GraphSpec:
    specs = parse_specs(text)
    if len(specs) != 1:
        raise SpecError(f"expected one graph, found {len(specs)}")
    return specs[0]


def load_spec(path: str | Path) -> GraphSpec:
    try:
        return parse_spec(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None


def to_spec(G: AssignedGraph | FeynmanGraph, name: str = "g") -> str:
    if isinstance(G, FeynmanGraph):
        G = G.assign()
    lines = [f"graph {name} valence {G.valence}"]
    lines += [f"vertex {v}" for v in range(G.num_vertices)]
    lines += [f"internal e{i} {a} {b} scale {s}" for i, ((a, b), s) in enumerate(zip(G.edges, G.scales))]
    lines += [f"external x{k + 1} {v}" for k, v in enumerate(G.legs)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON


def frac(c: Fraction) -> list[str]:
    return [str(c.numerator), str(c.denominator)]


def graph_to_json(G: AssignedGraph) -> dict:
    return {
        "valence": G.valence,
        "labeled": G.labeled,
        "vertices": list(range(G.num_vertices)),
        "markers": list(G.markers),
        "internal": [{"id": i, "ends": [a, b], "scale": s} for i, ((a, b), s) in enumerate(zip(G.edges, G.scales))],
        "external": [
            {"label": f"x{k + 1}", "vertex": v, "scale": s} for k, (v, s) in enumerate(zip(G.legs, G.leg_scales))
        ],
    }


def monomial_to_json(m) -> list:
    return [graph_to_json(g) if isinstance(g, AssignedGraph) else repr(g) for g in m]


def element_to_json(x: AlgebraElement) -> list:
    return [{"monomial": monomial_to_json(m), "coeff": frac(c)} for m, c in x.items()]


def tensor_to_json(t: Tensor) -> list:
    return [{"factors": [monomial_to_json(m) for m in k], "coeff": frac(c)} for k, c in t.items()]


def value_to_json(v):
    if isinstance(v, Poly):
        return v.to_json()
    if isinstance(v, Fraction):
        return frac(v)
    return v


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------------------
# DOT


def decoration_hash(G: AssignedGraph) -> str:
    return hashlib.sha1(repr(G.key).encode()).hexdigest()[:8]


def gn_tree_to_dot(T: GNTree, name: str = "gn") -> str:
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for d, ks in sorted(T.depth_levels().items()):
        lines.append("  { rank=same; " + " ".join(f"n{k};" for k in ks) + " }")
    for k, n in enumerate(T.nodes):
        label = f"{n.depth}:{decoration_hash(T.decoration(k))}"
        lines.append(f'  n{k} [label="{label}"];')
    for k, n in enumerate(T.nodes):
        if n.parent is not None:
            style = "" if T.changes_decoration(k) else " [style=dashed]"
            lines.append(f"  n{n.parent} -> n{k}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def gn_tree_to_json(T: GNTree) -> dict:
    return {
        "graph": graph_to_json(T.graph),
        "grade": T.grade,
        "nodes": [
            {
                "id": k,
                "depth": n.depth,
                "parent": n.parent,
                "edges": [i for i in range(len(T.graph.edges)) if n.mask >> i & 1],
                "decoration": decoration_hash(T.decoration(k)),
                "cuttable": T.cuttable(k),
            }
            for k, n in enumerate(T.nodes)
        ],
    }
