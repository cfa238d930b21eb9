"""Grow a wall boundary into a proper cycle inside a decorated host."""

from flatwall.flatness import _corner_paths, engine_failures, lemma51_engine
from flatwall.hosts import host_instance
from flatwall.tracks import Walk

inst = host_instance(7, 4, (1, 2), seed=3, subdivisions=6, n_chords=4, n_gadgets=4, extra_boundary=2)
print(len(inst.graph), "vertices in the host;", len(inst.boundary), "on the society boundary")
print("decorations:", inst.decorations)

paths = _corner_paths(inst.inner, inst.access, set(inst.boundary))
D = Walk.from_vertices(inst.graph, inst.inner.boundary(), closed=True)
res = lemma51_engine(inst.graph, inst.boundary, inst.inner.vertex_set(), D, paths)

print(len(res.moves), "moves:", [m for m, _ in res.moves])
print("E has", len(res.E.vertices), "vertices, D has", len(D.vertices))
print("|A| =", len(res.A), " |B| =", len(res.B), " |Ω| =", len(res.omega))
print("failed conclusions:", engine_failures(inst.graph, inst.inner.vertex_set(), D, res))
