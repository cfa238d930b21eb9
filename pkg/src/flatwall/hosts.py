"""Rural host graphs for exercising the flatness machinery.

A host is a wall whose bricks are decorated with chords and with small
non-planar gadgets hanging off two or three brick vertices.  The boundary
of the society is a set of boundary vertices of the host wall, so the
result is rural by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .graph import Multigraph
from .walls import Wall, corner_access_paths, elementary_wall, subdivide, subwall


@dataclass
class HostInstance:
    graph: Multigraph
    boundary: Tuple
    outer: Wall
    inner: Wall
    access: dict
    decorations: List[Tuple[str, Tuple]]


def _gadget(tag, attach: Sequence, size: int) -> Tuple[list, list]:
    """A complete graph on `size` fresh vertices, each joined to every attachment."""
    fresh = [("g", tag, i) for i in range(size)]
    edges = [(fresh[i], fresh[j]) for i in range(size) for j in range(i + 1, size)]
    edges += [(x, a) for x in fresh for a in attach]
    return fresh, edges


def decorate(w: Wall, rng: random.Random, n_chords: int = 3, n_gadgets: int = 3,
             keep_out: Sequence[Tuple[int, int]] = ()) -> Tuple[Multigraph, List]:
    """The wall's graph plus chords and gadgets drawn inside randomly chosen bricks."""
    g = w.graph()
    verts = list(g.vertices)
    edges = [g.endpoints(e) for e in g.edge_ids()]
    bricks = [b for b in w.bricks() if b not in set(keep_out)]
    # one decoration per brick, so nothing crosses
    order = rng.sample(bricks, min(len(bricks), n_chords + n_gadgets))
    log = []
    for k in range(min(n_chords, len(order))):
        b = order.pop()
        cyc = w.brick_cycle(*b)
        n = len(cyc)
        i = rng.randrange(n)
        j = (i + rng.randrange(2, n - 1)) % n
        edges.append((cyc[i], cyc[j]))
        log.append(("chord", (cyc[i], cyc[j])))
    for k in range(min(n_gadgets, len(order))):
        b = order.pop()
        cyc = w.brick_cycle(*b)
        n = len(cyc)
        arity = rng.choice((2, 3))
        picks = sorted(rng.sample(range(n), arity))
        attach = [cyc[i] for i in picks]
        fresh, es = _gadget(k, attach, rng.choice((3, 4)))
        verts.extend(fresh)
        edges.extend(es)
        log.append(("gadget", tuple(attach)))
    return Multigraph(verts, edges), log


def host_instance(outer_r: int, inner_r: int, anchor: Tuple[int, int], seed: int = 0,
                  subdivisions: int = 0, n_chords: int = 3, n_gadgets: int = 3,
                  extra_boundary: int = 0) -> HostInstance:
    """An inner wall sitting inside a decorated outer wall, with corner access paths.

    Decorations stay out of the bricks that the access paths cross only in
    the sense that they never delete anything: chords and gadgets add edges,
    so every path of the bare wall survives.
    """
    rng = random.Random(seed)
    outer = elementary_wall(outer_r)
    if subdivisions:
        plan = {}
        keys = sorted(outer.paths, key=repr)
        for key in rng.sample(keys, min(subdivisions, len(keys))):
            plan[key] = 1
        outer = subdivide(outer, plan)
    inner = subwall(outer, anchor, inner_r)
    g, log = decorate(outer, rng, n_chords, n_gadgets)
    D = outer.boundary()
    corners = set(outer.corners().values())
    extra = [v for v in D if v not in corners]
    chosen = corners | set(rng.sample(extra, min(extra_boundary, len(extra))))
    C = tuple(v for v in D if v in chosen)
    return HostInstance(g, C, outer, inner, corner_access_paths(outer, inner), log)
