import itertools
import json
from functools import lru_cache

import networkx as nx
import pytest

from flatwall.graph import (Multigraph, Separation, complete_graph, connected_components, cycle_graph,
                            enumerate_separations, find_minor, is_connected_set, is_planar, path_graph,
                            verify_separation)


def atlas(max_nodes):
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() > max_nodes:
            return
        yield Multigraph(list(h.nodes), list(h.edges))


def kuratowski_oracle(g: Multigraph) -> bool:
    """Planarity on at most six vertices by looking for K5, a once-split K5, or K3,3."""
    V = list(g.vertices)
    adj = {frozenset(p) for p in g.edges.values() if p[0] != p[1]}
    has = lambda u, v: frozenset((u, v)) in adj
    for five in itertools.combinations(V, 5):
        pairs = list(itertools.combinations(five, 2))
        missing = [p for p in pairs if not has(*p)]
        if not missing:
            return False
        if len(missing) == 1:
            u, v = missing[0]
            if any(has(x, u) and has(x, v) for x in V if x not in five):
                return False
    if len(V) == 6:
        for left in itertools.combinations(V, 3):
            right = [v for v in V if v not in left]
            if all(has(a, b) for a in left for b in right):
                return False
    return True


def contraction_oracle(g: Multigraph, t: int) -> bool:
    """K_t minor by trying every sequence of edge contractions."""
    start = frozenset(frozenset(p) for p in g.edges.values() if p[0] != p[1])

    @lru_cache(maxsize=None)
    def rec(edges):
        verts = set().union(*edges) if edges else set()
        if len(verts) < t:
            return False
        for S in itertools.combinations(sorted(verts, key=repr), t):
            if all(frozenset(p) in edges for p in itertools.combinations(S, 2)):
                return True
        for e in edges:
            u, v = sorted(e, key=repr)
            merged = frozenset(frozenset(u if x == v else x for x in f) for f in edges if f != e)
            if rec(frozenset(f for f in merged if len(f) == 2)):
                return True
        return False

    return rec(start)


def test_basic_queries():
    g = Multigraph("abc", [("a", "b"), ("a", "b"), ("b", "c")])
    assert g.num_edges() == 3 and len(g) == 3
    assert g.degree("b") == 3
    assert sorted(g.neighbors("b")) == ["a", "c"]
    assert len(g.edges_between("a", "b")) == 2
    assert not g.has_edge("a", "c")
    assert g.induced("ab").num_edges() == 2


def test_json_round_trip_keeps_tuple_vertices_and_ids():
    sv = ("s", (0, 1), 2)
    g = Multigraph([(0, 1), sv], [((0, 1), sv), (sv, (0, 1))]).without_edges([0])
    h = Multigraph.from_json(g.to_json())
    assert h == g and h.edge_ids() == g.edge_ids()
    assert json.loads(g.to_json())["edge_ids"] == [1]


def test_edges_bring_their_endpoints_and_loops_are_refused():
    assert Multigraph([1], [(1, 2)]).vertices == (1, 2)
    with pytest.raises(ValueError):
        Multigraph([1], [(1, 1)])


def test_components_and_connected_sets():
    g = Multigraph(range(5), [(0, 1), (1, 2), (3, 4)])
    assert sorted(sorted(c) for c in connected_components(g)) == [[0, 1, 2], [3, 4]]
    assert is_connected_set(g, {0, 1, 2})
    assert not is_connected_set(g, {0, 2})


@pytest.mark.parametrize("g, planar", [
    (complete_graph(4), True), (complete_graph(5), False), (cycle_graph(range(7)), True),
    (Multigraph(range(6), [(a, b) for a in range(3) for b in range(3, 6)]), False)])
def test_planarity_examples(g, planar):
    assert is_planar(g) is planar


def test_planarity_matches_kuratowski_on_all_small_graphs():
    n = 0
    for g in atlas(6):
        assert is_planar(g) == kuratowski_oracle(g), g.edges
        n += 1
    assert n == 209


def test_separations():
    g = path_graph(range(5))
    seps = list(enumerate_separations(g, 1, [2]))
    assert all(verify_separation(g, s) for s in seps)
    assert any(s.interface == {2} and 0 in s.sideA - s.sideB for s in seps) or \
        any(s.interface == {2} and 0 in s.sideB - s.sideA for s in seps)
    assert not verify_separation(g, Separation(frozenset({0, 1}), frozenset({2, 3, 4})))
    with pytest.raises(ValueError):
        list(enumerate_separations(g, 2, [2]))


def test_minor_models_verify():
    host = cycle_graph(range(8)).with_edges([(0, 4), (2, 6)])
    res = find_minor(host, complete_graph(4))
    assert res.status == "found"
    assert res.model.verify(host, complete_graph(4))
    assert find_minor(path_graph(range(6)), complete_graph(3)).status == "absent"


@pytest.mark.parametrize("t", [3, 4, 5])
def test_clique_minors_match_contraction_oracle(t):
    graphs = [g for g in atlas(7) if len(g) >= t][::7]
    for g in graphs:
        res = find_minor(g, complete_graph(t))
        assert res.status != "unknown"
        assert (res.status == "found") == contraction_oracle(g, t), g.edges
        if res.model is not None:
            assert res.model.verify(g, complete_graph(t))


def test_budget_exhaustion_reports_unknown():
    res = find_minor(complete_graph(7).with_edges([]), complete_graph(8), budget=1)
    assert res.status in ("absent", "unknown")
    big = Multigraph(range(14), [(i, j) for i in range(14) for j in range(i + 1, 14) if (i * j) % 3])
    assert find_minor(big, complete_graph(6), budget=1).status == "unknown"
