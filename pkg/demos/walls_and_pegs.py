"""Walls, their boundary, peg intervals and pegging paths."""

from flatwall.walls import corner_access_paths, elementary_wall, pegging_paths, subdivide, subwall

w = elementary_wall(4)
g = w.graph()
print(len(g), "vertices,", g.num_edges(), "edges,", len(w.boundary()), "on the boundary")

# brick kinds, row by row
for a in range(w.r):
    print("  ".join(f"{w.classify_brick(a, b):>20}" for b in range(w.r)))

# every border brick except the recessed sides carries one peg interval
for I in w.peg_intervals():
    sa, sb = pegging_paths(w, I)
    print(f"{I.kind:22} pegs {list(I.interior)}  meet at {sa[-1]}")

# subdividing edges keeps the interval structure
w2 = subdivide(w, {k: 1 for k in w.paths})
print(len(w2.peg_intervals()), "intervals after subdividing every edge, as before:", len(w.peg_intervals()))

# a small wall inside a bigger one, with routes from its intervals to the outer corners
outer = elementary_wall(7)
inner = subwall(outer, (2, 2), 3)
for path, route in corner_access_paths(outer, inner).items():
    print(f"{path[1]} -> {route[-1]} in {len(route) - 1} steps")

with open("wall4.dot", "w") as fh:
    fh.write(w.to_dot())
print("wrote wall4.dot")
