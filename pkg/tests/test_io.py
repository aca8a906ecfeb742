import json
from pathlib import Path

import pytest
from hypothesis import given

from mshopf.graphs import bubble, sunset
from mshopf.hopf import H
from mshopf.io import (
    SpecError,
    dumps,
    gn_tree_to_dot,
    gn_tree_to_json,
    load_spec,
    parse_spec,
    parse_specs,
    tensor_to_json,
    to_spec,
)
from mshopf.multiscale import gn_tree
from strategies import assigned

DATA = Path(__file__).parent / "data"


def test_load_bubble():
    spec = load_spec(DATA / "bubble.graph")
    assert spec.name == "bubble"
    assert spec.graph == bubble().assign((1, 2))
    assert spec.leg_labels == ["x1", "x2", "x3", "x4"]


def test_named_vertices_and_comments():
    spec = load_spec(DATA / "sunset.graph")
    assert spec.graph == sunset().assign((0, 1, 2))
    assert spec.vertex_ids == ["a", "b"]


@given(assigned())
def test_spec_round_trip(G):
    assert parse_spec(to_spec(G)).graph == G


def test_several_graphs():
    text = to_spec(bubble(), "a") + to_spec(sunset(), "b")
    assert [s.name for s in parse_specs(text)] == ["a", "b"]
    with pytest.raises(SpecError):
        parse_spec(text)


@pytest.mark.parametrize(
    "text, line",
    [
        ("graph g\nvertex 0\ninternal a 0 9\n", 1),
        ("vertex 0\n", 1),
        ("graph g\nvertex 0\nvertex 0\n", 3),
        ("graph g\nvertex 0\nbogus 1\n", 3),
        ("graph g\nvertex 0\nvertex 1\ninternal a 0 1 scale -1\n", 4),
        ("graph g valence x\n", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert exc.value.line == line


def test_empty_and_unreadable():
    with pytest.raises(SpecError):
        parse_spec("# nothing\n")
    with pytest.raises(SpecError):
        load_spec(DATA / "missing.graph")


def test_valence_violation_is_spec_error():
    with pytest.raises(SpecError):
        parse_spec("graph g\nvertex 0\nvertex 1\ninternal a 0 1\n")


def test_json_outputs():
    G = bubble().assign((1, 2))
    out = json.loads(dumps({"c": tensor_to_json(H.coproduct(G))}))
    assert len(out["c"]) == 2
    T = gn_tree(load_spec(DATA / "chain.graph").graph)
    dot = gn_tree_to_dot(T)
    assert dot.startswith("digraph") and "rank=same" in dot
    assert len(gn_tree_to_json(T)["nodes"]) == len(T.nodes)
