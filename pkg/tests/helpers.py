"""Generators shared by the test modules."""

import itertools
import random

from flatwall.graph import Multigraph
from flatwall.rendition import STAR, Cell, validate
from flatwall.society import is_rural


def random_rural(rng: random.Random):
    """A random small rural society together with the witness is_rural gives."""
    while True:
        n = rng.randint(3, 9)
        p = rng.choice([0.3, 0.5, 0.7])
        es = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
        if es:
            es += [rng.choice(es) for _ in range(rng.randint(0, 2))]
        g = Multigraph(range(n), es)
        C = rng.sample(range(n), rng.randint(0, min(n, 6)))
        ok, rho = is_rural(g, C)
        if ok:
            return rho


def _face_angles(rho):
    by_face = {}
    for angle, f in rho.faces().items():
        by_face.setdefault(f, []).append(angle)
    return list(by_face.values())


def _merge(rho, parts, nodes):
    """Replace the cells in `parts` by one cell with the given clockwise nodes."""
    cells = dict(rho.cells)
    keep = parts[0]
    edges = frozenset().union(*(cells[c].edges for c in parts))
    verts = frozenset().union(*(cells[c].verts for c in parts))
    for c in parts:
        del cells[c]
    cells[keep] = Cell(tuple(nodes), edges, verts)
    rot = {}
    for n, ring in rho.rot.items():
        ring = [keep if c in parts else c for c in ring]
        # parts meet each shared node in consecutive positions, so collapse runs
        out = [c for i, c in enumerate(ring) if not (c == keep and ring[i - 1] == keep)]
        rot[n] = tuple(out or [keep])
    tau = {k: a for k, a in rho.tau.items() if k[0] not in parts}
    return rho.replace(cells=cells, rot=rot, tau=tau)


def coarsen_once(rho, rng: random.Random):
    """Merge cells across a digon or triangular face, or None when nothing fits."""
    options = []
    for angles in _face_angles(rho):
        cs = [c for c, _ in angles]
        if STAR in cs or len(set(cs)) != len(cs):
            continue
        if len(angles) == 2:
            a, b = cs
            if rho.cells[b].degree == 2:
                options.append(([a, b], rho.cells[a].nodes))
            if rho.cells[a].degree == 2:
                options.append(([b, a], rho.cells[b].nodes))
        elif len(angles) == 3 and all(rho.cells[c].degree == 2 for c in cs):
            ns = [rho.cell_nodes(c)[i] for c, i in angles]
            if len(set(ns)) == 3:
                options.append((cs, tuple(reversed(ns))))
    rng.shuffle(options)
    for parts, nodes in options:
        nxt = _merge(rho, parts, nodes)
        if not validate(nxt.graph, nxt.boundary, nxt):
            return nxt
    return None


def coarsen(rho, rng: random.Random, steps: int):
    for _ in range(steps):
        nxt = coarsen_once(rho, rng)
        if nxt is None:
            break
        rho = nxt
    return rho
