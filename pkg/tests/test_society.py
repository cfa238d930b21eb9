import itertools
import random

import pytest

from flatwall.counterexample import full_brick
from flatwall.graph import Multigraph, complete_graph, cycle_graph
from flatwall.rendition import STAR, validate
from flatwall.society import Cross, augmented_planarity_oracle, find_cross, is_rural

BRICK_OUTLINE = ["tl", "tm", "omega", "br", "delta", "gamma", "beta", "alpha", "bm", "bl"]


def test_cycle_in_boundary_order_is_rural():
    g = cycle_graph(range(6))
    ok, rho = is_rural(g, list(range(6)))
    assert ok and validate(g, list(range(6)), rho) == []
    assert tuple(reversed(rho.cell_nodes(STAR))) == tuple(range(6))


def test_four_cycle_with_both_chords():
    g = cycle_graph("abcd").with_edges([("a", "c"), ("b", "d")])
    ok, rho = is_rural(g, list("abcd"))
    assert not ok and rho is None
    c = find_cross(g, list("abcd"))
    assert c is not None and c.failures(g, list("abcd")) == []
    assert {frozenset(c.path1[::len(c.path1) - 1]), frozenset(c.path2[::len(c.path2) - 1])} == \
        {frozenset("ac"), frozenset("bd")}


def test_outerplanar_graphs_have_no_cross():
    rng = random.Random(2)
    for n in range(4, 9):
        g = cycle_graph(range(n))
        # non-crossing chords: fan from vertex 0
        g = g.with_edges([(0, k) for k in range(2, n - 1) if rng.random() < 0.6])
        assert find_cross(g, list(range(n))) is None
        assert is_rural(g, list(range(n)))[0]


def test_full_brick_has_the_chord_cross():
    g = full_brick()
    chords = Cross(("alpha", "gamma"), ("beta", "delta"))
    assert chords.failures(g, BRICK_OUTLINE) == []
    assert find_cross(g, BRICK_OUTLINE) is not None
    assert not is_rural(g, BRICK_OUTLINE)[0]


def test_cross_checker_catches_bad_crosses():
    g = cycle_graph("abcd").with_edges([("a", "c"), ("b", "d")])
    assert Cross(("a", "b"), ("c", "d")).failures(g, list("abcd"))
    assert Cross(("a", "c"), ("c", "b")).failures(g, list("abcd"))
    assert Cross(("a", "d", "c"), ("b", "d")).failures(g, list("abcd"))


def test_find_cross_needs_four_boundary_vertices():
    with pytest.raises(ValueError):
        find_cross(cycle_graph("abc"), list("abc"))


def test_non_planar_flaps_on_three_nodes_are_allowed():
    # K5 hanging off three boundary vertices folds into one cell
    k5 = complete_graph(5, labels=["p", "q", "r", "s", "t"])
    g = k5.with_edges([("a", "b"), ("b", "c"), ("c", "a"), ("p", "a"), ("q", "b"), ("r", "c")])
    ok, rho = is_rural(g, list("abc"))
    assert ok and validate(g, list("abc"), rho) == []
    assert not augmented_planarity_oracle(g, list("abc"))
    # on four attachments it is a genuine obstruction
    g4 = g.with_edges([("s", "d"), ("a", "d")])
    assert not is_rural(g4, list("abcd"))[0]


def test_soundness_on_random_societies():
    rng = random.Random(11)
    crosses = 0
    for _ in range(300):
        n = rng.randint(4, 7)
        es = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        g = Multigraph(range(n), es)
        C = rng.sample(range(n), rng.randint(4, n))
        c = find_cross(g, C)
        if c is not None:
            crosses += 1
            assert c.failures(g, C) == []
            assert not is_rural(g, C)[0]
        else:
            # without a cross and with every vertex on the boundary the society is drawable
            if len(C) == n:
                assert is_rural(g, C)[0]
    assert crosses > 20
