import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from explicit import bfs, grid_adj, ladder_adj, p, path_adj, x
from nsgraph.catalog import builtin, builtin_names, envelope_radius, grid2d_edited, outside_envelope
from nsgraph.graphzero import (Edit, Family, GraphError, GraphPresentation, InvalidNode, NodeRef, Unresolved,
                               UnsupportedOperation, distance, distances_from, load_graph, parse_node, sphere)

coord = st.integers(min_value=-8, max_value=8)


# -- oracle and BFS against the hand-built truncations

@pytest.mark.parametrize("use_oracle", [True, False])
def test_endless_path(use_oracle):
    g = builtin("endless_path")
    ref = bfs(path_adj(-40, 40), x(-3))
    for k in range(-20, 21):
        assert distance(g, x(-3), x(k), use_oracle=use_oracle) == ref[x(k)]


@pytest.mark.parametrize("name,tail", [("grounded_ladder", 0), ("ladder_with_tail", 12)])
def test_ladders(name, tail):
    g = builtin(name)
    adj = ladder_adj(40, tail)
    nodes = [x(k) for k in range(10)] + [NodeRef("x_g")] + [NodeRef("t", (i,)) for i in range(tail)]
    for a in nodes:
        ref = bfs(adj, a)
        for b in nodes:
            assert distance(g, a, b) == ref[b]
            assert distance(g, a, b, use_oracle=False) == ref[b]


@settings(max_examples=60)
@given(coord, coord, coord, coord)
def test_grid(k1, l1, k2, l2):
    g = builtin("grid2d")
    ref = bfs(grid_adj(12), p(k1, l1))
    assert distance(g, p(k1, l1), p(k2, l2)) == ref[p(k2, l2)]


def test_grid_bfs_without_oracle():
    g = builtin("grid2d")
    ref = bfs(grid_adj(10), p(0, 0))
    for k in range(-4, 5):
        for l in range(-4, 5):
            assert distance(g, p(0, 0), p(k, l), use_oracle=False) == ref[p(k, l)]


def test_unresolved_when_budget_runs_out():
    g = builtin("endless_path")
    d = distance(g, x(0), x(100), budget=10, use_oracle=False)
    assert isinstance(d, Unresolved) and d.lower_bound <= 100


def test_disconnected_gives_none():
    g = GraphPresentation("two", (Family("a", ((0, 1),)),))
    assert distance(g, NodeRef("a", (0,)), NodeRef("a", (1,))) is None


# -- spheres

@pytest.mark.parametrize("name,x0", [("endless_path", x(2)), ("one_ended_path", x(2)), ("grid2d", p(1, -1))])
def test_sphere_matches_bfs(name, x0):
    g = builtin(name)
    plain = GraphPresentation(g.name, g.families, g.rules, flags=g.flags)
    for n in range(6):
        expected = frozenset(y for y, d in distances_from(plain, x0, n).items() if d == n)
        assert sphere(g, x0, n) == expected == sphere(plain, x0, n)


def test_sphere_requires_local_finiteness():
    with pytest.raises(UnsupportedOperation):
        sphere(builtin("grounded_ladder"), x(0), 2)


# -- edits

def test_edited_grid_against_hand_built():
    edits = (Edit("add", p(0, 0), p(3, 2)), Edit("delete", p(1, 1), p(1, 2)))
    ge = grid2d_edited(edits)
    adj = grid_adj(14, adds=[(p(0, 0), p(3, 2))], deletes=[(p(1, 1), p(1, 2))])
    for src in (p(0, 0), p(1, 1), p(-2, 3)):
        ref = bfs(adj, src)
        got = distances_from(ge, src, 8)
        assert got == {y: d for y, d in ref.items() if d <= 8}


@settings(max_examples=40)
@given(st.lists(st.tuples(st.sampled_from(["add", "delete"]), coord, coord, st.integers(0, 3)), max_size=3),
       coord, coord, coord, coord)
def test_envelope_is_sound(raw, k1, l1, k2, l2):
    edits, adds, dels = [], [], []
    for op, k, l, dirn in raw:
        a = p(k, l)
        if op == "add":
            b = p(k + 2 + dirn, l - dirn)
            adds.append((a, b))
        else:
            b = [p(k + 1, l), p(k, l + 1), p(k - 1, l), p(k, l - 1)][dirn]
            dels.append((a, b))
        edits.append(Edit(op, a, b))
    u, v = p(k1, l1), p(k2, l2)
    if outside_envelope(edits, u, v):
        ref = bfs(grid_adj(30, adds, dels), u)
        assert ref[v] == abs(k1 - k2) + abs(l1 - l2)


def test_envelope_radius():
    assert envelope_radius([]) == 1
    assert envelope_radius([Edit("add", p(0, 0), p(2, 1))]) == 1
    assert envelope_radius([Edit("add", p(0, 0), p(5, 0)), Edit("add", p(9, 9), p(9, 12))]) == 3


# -- serialization and errors

@pytest.mark.parametrize("name", [n for n in builtin_names()])
def test_json_round_trip(name, tmp_path):
    g = builtin(name)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_json()))
    h = load_graph(str(path))
    assert h.to_json() == g.to_json()


def test_parse_node():
    assert parse_node("p(-1, 2)") == p(-1, 2)
    assert parse_node("x_g") == NodeRef("x_g")
    assert str(p(-1, 2)) == "p(-1,2)"
    with pytest.raises(GraphError):
        parse_node("p(1")


def test_invalid_nodes_rejected():
    g = builtin("one_ended_path")
    with pytest.raises(InvalidNode):
        distance(g, x(-1), x(0))
    with pytest.raises(InvalidNode):
        distance(g, NodeRef("y", (0,)), x(0))


def test_bad_edits_rejected():
    with pytest.raises(GraphError):
        grid2d_edited([Edit("flip", p(0, 0), p(0, 1))])
    with pytest.raises(GraphError):
        grid2d_edited([Edit("add", p(0, 0), p(0, 0))])
    with pytest.raises(GraphError):
        builtin("endless_path", edits=[Edit("add", x(0), x(3))])


def test_hub_neighbors_are_cut_at_budget():
    g = builtin("grounded_ladder")
    nb = g.neighbors(NodeRef("x_g"), budget=5)
    assert nb.infinite and len(nb.nodes) == 5
    assert set(g.neighbors(x(3)).nodes) == {x(2), x(4), NodeRef("x_g")}
