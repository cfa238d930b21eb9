import itertools
import random
from collections import deque

import networkx as nx
import pytest

from flatwall.graph import Multigraph, cycle_graph
from flatwall.rendition import STAR, Cell, Rendition, degree, trivial_rendition, validate
from flatwall.society import embed_society
from flatwall.tracks import (Walk, atomic_decomposition, clockwise, disk_partition, is_grounded, is_proper,
                             reroute_cycle, track, tracks_meet)
from flatwall.walls import elementary_wall

from .helpers import random_rural


def trivial(g, C):
    rot = embed_society(g, C)
    return None if rot is None else trivial_rendition(g, C, rot)


def parity_sides(t, rho):
    """Side of every cell by counting track crossings from the outside; None if inconsistent."""
    cut = set(t.arcs)
    faces = rho.faces()
    by_face = {}
    for ang, f in faces.items():
        by_face.setdefault(f, []).append(ang)
    side = {("c", STAR): 0}
    dq = deque([("c", STAR)])
    while dq:
        kind, x = dq.popleft()
        if kind == "c":
            steps = [(("f", faces[(x, i)]), (x, i) in cut) for i in range(len(rho.cell_nodes(x)))]
        else:
            steps = [(("c", c), (c, i) in cut) for c, i in by_face[x]]
        for y, flip in steps:
            s = side[(kind, x)] ^ flip
            if y in side:
                if side[y] != s:
                    return None
            else:
                side[y] = s
                dq.append(y)
    return {c: side.get(("c", c)) for c in rho.cells}


def test_trivial_rendition_of_a_four_cycle():
    g = cycle_graph("abcd")
    rho = trivial(g, list("abcd"))
    assert validate(g, list("abcd"), rho) == []
    assert degree(rho) == 8
    broken = rho.replace(cells={k: c for k, c in rho.cells.items() if k != 0})
    assert any("flap cover" in m for m in validate(g, list("abcd"), broken))


def test_small_trivial_renditions():
    g = Multigraph("ab", [("a", "b")])
    rho = trivial(g, ["a", "b"])
    assert len(rho.cells) == 1 and rho.cells[0].degree == 2
    tri = cycle_graph("xyz")
    assert len(trivial(tri, list("xyz")).cells) == 3
    assert degree(Rendition(Multigraph(), (), {}, {})) == 0


def test_wall_with_pegs_as_boundary():
    w = elementary_wall(3)
    g = w.graph()
    pegs = [v for v in w.boundary() if g.degree(v) == 2]
    rho = trivial(g, pegs)
    assert validate(g, pegs, rho) == []


def test_validate_reports_each_axiom():
    g = cycle_graph("abcd")
    rho = trivial(g, list("abcd"))
    assert any("external order" in m for m in validate(g, list("abdc"), rho))
    fat = dict(rho.cells)
    c0 = fat[0]
    fat[0] = type(c0)(c0.nodes + ("c", "d"), c0.edges, c0.verts | {"c", "d"})
    assert any("cell bound" in m for m in validate(g, list("abcd"), rho.replace(cells=fat)))
    twisted = dict(rho.rot)
    twisted["a"] = twisted["a"][::-1] + (99,)
    assert any("plane structure" in m for m in validate(g, list("abcd"), rho.replace(rot=twisted)))


def test_rural_witnesses_validate():
    rng = random.Random(50)
    for _ in range(50):
        rho = random_rural(rng)
        assert validate(rho.graph, rho.boundary, rho) == []
        assert tuple(reversed(rho.cell_nodes(STAR))) == rho.boundary


def test_json_round_trip():
    rho = random_rural(random.Random(1))
    back = Rendition.from_json(rho.to_json())
    assert back.to_json() == rho.to_json()
    assert validate(back.graph, back.boundary, back) == []
    assert "cluster" in rho.to_dot()


def random_planar_society(rng):
    while True:
        n = rng.randint(3, 8)
        es = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < 0.45]
        g = Multigraph(range(n), es)
        C = rng.sample(range(n), rng.randint(1, 3))
        rho = trivial(g, C)
        if rho is not None and g.num_edges() >= 3 and nx.is_connected(g.simple()):
            return g, rho


def test_disk_partition_matches_even_odd_oracle():
    rng = random.Random(8)
    checked = 0
    while checked < 150:
        g, rho = random_planar_society(rng)
        h = g.simple()
        for cyc in itertools.islice(nx.simple_cycles(h), 6):
            if len(cyc) < 3:
                continue
            D = Walk.from_vertices(g, cyc, closed=True)
            t = track(D, rho)
            part = disk_partition(t, rho)
            side = parity_sides(t, rho)
            assert side is not None
            assert part.inside == {c for c, s in side.items() if s == 1}
            homes = {c for c, _ in t.arcs}
            assert part.border == {c for c in homes if side[c] == 0}
            assert not part.inside & part.outside
            assert part.inside | part.outside == set(rho.cells)
            checked += 1


def test_grounding_and_factors():
    w = elementary_wall(3)
    g = w.graph()
    rho = trivial(g, [w.corners()[k] for k in ("tl", "tr", "br", "bl")])
    D = Walk.from_vertices(g, w.boundary(), closed=True)
    assert is_grounded(D, rho)
    fs = atomic_decomposition(D, rho)
    assert len(fs) == len(D.edges) and all(f.trivial for f in fs)
    assert track(D, rho).as_set() == track(D.reversed(), rho).as_set()
    # a cycle inside one flap is not grounded
    tri = cycle_graph("xyz")
    one = Rendition(tri, ["x"], {0: Cell(("x",), frozenset(tri.edge_ids()), frozenset("xyz"))}, {"x": (0, STAR)})
    assert validate(tri, ["x"], one) == []
    assert not is_grounded(Walk.from_vertices(tri, "xyz", closed=True), one)
    lone = Walk.from_vertices(g, w.boundary()[:1] + w.boundary()[1:2])
    assert len(atomic_decomposition(lone, rho)) == 1


def test_tracks_meet_iff_paths_meet():
    w = elementary_wall(3)
    g = w.graph()
    rho = trivial(g, [w.corners()[k] for k in ("tl", "tr", "br", "bl")])
    h = g.simple()
    rng = random.Random(3)
    nodes = list(g.vertices)
    for _ in range(200):
        a, b, c, d = rng.sample(nodes, 4)
        p = Walk.from_vertices(g, nx.shortest_path(h, a, b))
        q = Walk.from_vertices(g, nx.shortest_path(h, c, d))
        assert tracks_meet(track(p, rho), track(q, rho)) == bool(set(p.vertices) & set(q.vertices))


def test_properness_and_first_move():
    w = elementary_wall(3)
    g = w.graph()
    rho = trivial(g, [w.corners()[k] for k in ("tl", "tr", "br", "bl")])
    D = Walk.from_vertices(g, w.brick_cycle(1, 1), closed=True)
    if not clockwise(D, rho):
        D = D.reversed()
    part = disk_partition(track(D, rho), rho)
    # every border cell is a lone edge, so the brick cycle is not proper
    assert part.border and not is_proper(D, rho, part)
    cid = min(part.border)
    E, rho2 = reroute_cycle(D, rho, ("M1", cid))
    part2 = disk_partition(track(E, rho2), rho2)
    assert cid in part2.inside and cid not in part2.border
    assert set(E.vertices) <= set(D.vertices)
    assert validate(rho2.graph, rho2.boundary, rho2) == []
    with pytest.raises(ValueError):
        reroute_cycle(D, rho, ("M1", next(iter(part.inside)) if part.inside else 10 ** 6))
