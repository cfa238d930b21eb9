"""Deciding whether a society can be drawn in a disc, and finding crosses."""

from flatwall.counterexample import full_brick
from flatwall.graph import complete_graph, cycle_graph
from flatwall.rendition import validate
from flatwall.society import find_cross, is_rural

# a 4-cycle is rural; its two diagonals cross
C = list("abcd")
square = cycle_graph(C)
ok, rho = is_rural(square, C)
print("square:", ok, "cells:", len(rho.cells), "valid:", validate(square, C, rho) == [])

x = square.with_edges([("a", "c"), ("b", "d")])
print("with diagonals:", is_rural(x, C)[0], find_cross(x, C))

# the full brick read around its outline: the two chords form a cross
outline = ["tl", "tm", "omega", "br", "delta", "gamma", "beta", "alpha", "bm", "bl"]
print("full brick:", is_rural(full_brick(), outline)[0], find_cross(full_brick(), outline))

# a non-planar piece attached at three boundary vertices still fits in one cell
g = complete_graph(5, "pqrst").with_edges([("a", "b"), ("b", "c"), ("c", "a"),
                                            ("p", "a"), ("q", "b"), ("r", "c")])
ok, rho = is_rural(g, list("abc"))
big = max(rho.cells.values(), key=lambda c: len(c.edges))
print("K5 on three attachments:", ok, "largest flap has", len(big.edges), "edges on nodes", big.nodes)
