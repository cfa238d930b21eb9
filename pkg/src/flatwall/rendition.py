"""Combinatorial renditions of societies in a disk.

A rendition is stored as a plane map on nodes and cells.  Each cell lists its
nodes in clockwise order around its boundary; arc i of a cell runs clockwise
from node i to node i+1.  Each node lists its incident cells in clockwise
order.  The external cell STAR carries the boundary C; seen from outside the
disk its clockwise order is C reversed.  Faces of the map are the parts of
the disk covered by no cell; face tracing leaves a cell along arc i to node
i+1 and then turns clockwise to the next cell there.

Map components that cannot reach STAR (parts of the graph with no boundary
vertex) float next to STAR, i.e. on the outside of every closed track.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .graph import Multigraph, vkey, vsorted, _to_jsonable, _from_jsonable

STAR = -1


@dataclass(frozen=True)
class Cell:
    nodes: Tuple
    edges: FrozenSet[int]
    verts: FrozenSet

    @property
    def degree(self) -> int:
        return len(self.nodes)

    def arcs(self) -> List[Tuple[object, object]]:
        k = len(self.nodes)
        return [(self.nodes[i], self.nodes[(i + 1) % k]) for i in range(k)]

    def is_empty(self) -> bool:
        return not self.edges


class Rendition:
    """Immutable by convention; surgery returns new instances."""

    def __init__(self, graph: Multigraph, boundary, cells: Dict[int, Cell], rot: Dict[object, Tuple[int, ...]],
                 tau: Optional[Dict[Tuple[int, FrozenSet], int]] = None):
        self.graph = graph
        self.boundary = tuple(boundary)
        self.cells = dict(cells)
        self.rot = {n: tuple(cs) for n, cs in rot.items()}
        self.tau = dict(tau or {})
        self._faces = None

    # -- basic access -----------------------------------------------------
    @property
    def nodes(self) -> FrozenSet:
        return frozenset(self.rot)

    def cell_nodes(self, c: int) -> Tuple:
        if c == STAR:
            return tuple(reversed(self.boundary))
        return self.cells[c].nodes

    def all_cells(self) -> List[int]:
        return [STAR] + sorted(self.cells)

    def degree(self) -> int:
        return sum(c.degree for c in self.cells.values())

    def nonempty_count(self) -> int:
        return sum(1 for c in self.cells.values() if c.edges)

    def edge_home(self) -> Dict[int, int]:
        out = {}
        for cid, c in self.cells.items():
            for e in c.edges:
                out[e] = cid
        return out

    def cells_at(self, v) -> List[int]:
        return [cid for cid, c in self.cells.items() if v in c.verts]

    def new_id(self) -> int:
        return max(self.cells, default=-1) + 1

    def replace(self, cells=None, rot=None, tau=None) -> "Rendition":
        return Rendition(self.graph, self.boundary, self.cells if cells is None else cells,
                         self.rot if rot is None else rot, self.tau if tau is None else tau)

    # -- arcs and the tie-breaker -------------------------------------------
    def arc_between(self, c: int, u, v) -> int:
        """Index of the arc of cell c that the track uses between nodes u and v."""
        ns = self.cell_nodes(c)
        k = len(ns)
        iu, iv = ns.index(u), ns.index(v)
        if k == 2:
            return self.tau.get((c, frozenset((u, v))), 0)
        if (iu + 1) % k == iv:
            return iu
        if (iv + 1) % k == iu:
            return iv
        raise ValueError(f"nodes {u!r}, {v!r} are not adjacent on cell {c}")

    # -- faces --------------------------------------------------------------
    def next_angle(self, angle: Tuple[int, int]) -> Tuple[int, int]:
        c, i = angle
        ns = self.cell_nodes(c)
        n = ns[(i + 1) % len(ns)]
        ring = self.rot[n]
        c2 = ring[(ring.index(c) + 1) % len(ring)]
        return (c2, self.cell_nodes(c2).index(n))

    def faces(self) -> Dict[Tuple[int, int], int]:
        """Map each angle (cell, arc index) to the id of the face beside that arc."""
        if self._faces is None:
            out: Dict[Tuple[int, int], int] = {}
            fid = 0
            for c in self.all_cells():
                for i in range(len(self.cell_nodes(c))):
                    if (c, i) in out:
                        continue
                    a = (c, i)
                    while a not in out:
                        out[a] = fid
                        a = self.next_angle(a)
                    fid += 1
            self._faces = out
        return self._faces

    def map_components(self) -> List[Tuple[set, set]]:
        """Components of the node-cell incidence map as (nodes, cells)."""
        seen_n, seen_c = set(), set()
        comps = []
        for start in self.all_cells():
            if start in seen_c:
                continue
            ns, cs = set(), {start}
            stack = [("c", start)]
            seen_c.add(start)
            while stack:
                kind, x = stack.pop()
                if kind == "c":
                    for n in self.cell_nodes(x):
                        if n not in seen_n:
                            seen_n.add(n)
                            ns.add(n)
                            stack.append(("n", n))
                else:
                    for c in self.rot[x]:
                        if c not in seen_c:
                            seen_c.add(c)
                            cs.add(c)
                            stack.append(("c", c))
            comps.append((ns, cs))
        for n in self.rot:
            if n not in seen_n:
                comps.append(({n}, set()))
                seen_n.add(n)
        return comps

    def star_component_cells(self) -> set:
        for ns, cs in self.map_components():
            if STAR in cs:
                return cs
        return {STAR}

    # -- serialization --------------------------------------------------------
    def to_json(self) -> str:
        cells = []
        for cid in sorted(self.cells):
            c = self.cells[cid]
            cells.append({"id": cid, "nodes": [_to_jsonable(n) for n in c.nodes], "edges": sorted(c.edges),
                          "vertices": [_to_jsonable(v) for v in vsorted(c.verts)]})
        rot = [[_to_jsonable(n), list(self.rot[n])] for n in vsorted(self.rot)]
        tau = [[cid, [_to_jsonable(x) for x in vsorted(pair)], a] for (cid, pair), a in
               sorted(self.tau.items(), key=lambda kv: (kv[0][0], [vkey(x) for x in vsorted(kv[0][1])]))]
        return json.dumps({"graph": json.loads(self.graph.to_json()),
                           "boundary": [_to_jsonable(v) for v in self.boundary],
                           "cells": cells, "rotation": rot, "tieBreaker": tau}, sort_keys=True)

    @classmethod
    def from_json(cls, text) -> "Rendition":
        doc = json.loads(text) if isinstance(text, str) else text
        g = Multigraph.from_json(doc["graph"])
        cells = {}
        for c in doc["cells"]:
            cells[c["id"]] = Cell(tuple(_from_jsonable(n) for n in c["nodes"]), frozenset(c["edges"]),
                                  frozenset(_from_jsonable(v) for v in c["vertices"]))
        rot = {_from_jsonable(n): tuple(cs) for n, cs in doc["rotation"]}
        tau = {(cid, frozenset(_from_jsonable(x) for x in pair)): a for cid, pair, a in doc["tieBreaker"]}
        return cls(g, [_from_jsonable(v) for v in doc["boundary"]], cells, rot, tau)

    def to_dot(self) -> str:
        g = self.graph
        names = {v: f"v{i}" for i, v in enumerate(g.vertices)}
        lines = ["graph rendition {", "  compound=true;"]
        for cid in sorted(self.cells):
            c = self.cells[cid]
            inner = [v for v in vsorted(c.verts) if v not in c.nodes]
            members = " ".join(names[v] for v in inner)
            lines.append(f'  subgraph cluster_{cid} {{ label="cell {cid}"; {members} }}')
        for v in g.vertices:
            shape = "box" if v in self.rot else "ellipse"
            lines.append(f'  {names[v]} [label={json.dumps(json.dumps(_to_jsonable(v)))}, shape={shape}];')
        for e, (u, v) in g.edges.items():
            lines.append(f'  {names[u]} -- {names[v]} [id="{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- validation

def validate(g: Multigraph, C, rho: Rendition) -> List[str]:
    """Every violated rendition axiom, as human-readable strings; empty iff valid."""
    out: List[str] = []
    C = tuple(C)
    nodes = set(rho.rot)
    V = set(g.vertices)
    if tuple(rho.boundary) != C:
        out.append("external order: rendition boundary differs from C")
    if len(set(C)) != len(C):
        out.append("external order: repeated boundary vertex")
    for v in C:
        if v not in nodes:
            out.append(f"external order: boundary vertex {v!r} is not a node")
    if not nodes <= V:
        out.append("nodes: some node is not a vertex of G")
    # cells
    seen_edges: Dict[int, int] = {}
    where: Dict[object, List[int]] = {}
    for cid, c in rho.cells.items():
        if cid == STAR:
            out.append("cells: internal cell uses the external id")
        if c.degree > 3:
            out.append(f"cell bound: cell {cid} has {c.degree} nodes")
        if len(set(c.nodes)) != len(c.nodes):
            out.append(f"cell {cid}: repeated node")
        for e in c.edges:
            if e not in g._edges:
                out.append(f"flap cover: cell {cid} holds unknown edge {e}")
                continue
            if e in seen_edges:
                out.append(f"flap intersection: edge {e} in cells {seen_edges[e]} and {cid}")
            seen_edges[e] = cid
            a, b = g.endpoints(e)
            if a not in c.verts or b not in c.verts:
                out.append(f"flap cover: cell {cid} holds edge {e} without its ends")
        if not c.verts <= V:
            out.append(f"flap cover: cell {cid} holds unknown vertices")
        if set(c.verts) & nodes != set(c.nodes):
            out.append(f"flap nodes: cell {cid} has sigma(c) and N differing from its boundary nodes")
        for v in c.verts:
            where.setdefault(v, []).append(cid)
    for e in g._edges:
        if e not in seen_edges:
            out.append(f"flap cover: edge {e} lies in no cell")
    for v in V:
        if v not in nodes and v not in where:
            out.append(f"flap cover: vertex {v!r} lies in no cell and is no node")
    for v, cs in where.items():
        if len(cs) > 1 and v not in nodes:
            out.append(f"flap intersection: non-node {v!r} shared by cells {cs}")
    # rotation system
    incid: Dict[object, List[int]] = {n: [] for n in nodes}
    for cid, c in rho.cells.items():
        for n in c.nodes:
            if n in incid:
                incid[n].append(cid)
    for n in C:
        if n in incid:
            incid[n].append(STAR)
    for n in nodes:
        if sorted(rho.rot[n]) != sorted(incid[n]):
            out.append(f"plane structure: rotation at {n!r} does not match incident cells")
    # tie-breaker
    for (cid, pair), a in rho.tau.items():
        c = rho.cells.get(cid)
        if c is None:
            out.append(f"tie-breaker: unknown cell {cid}")
        elif c.degree != 2 or set(pair) != set(c.nodes) or a not in (0, 1):
            out.append(f"tie-breaker: bad entry for cell {cid}")
    if out:
        return out
    # genus: every component of the map is a sphere
    faces = rho.faces()
    for ns, cs in rho.map_components():
        inc = sum(len(rho.cell_nodes(c)) for c in cs)
        fs = {faces[(c, i)] for c in cs for i in range(len(rho.cell_nodes(c)))}
        nf = len(fs) if inc else 1
        if len(ns) + len(cs) - inc + nf != 2:
            out.append(f"plane structure: component with {len(cs)} cells is not planar")
    return out


# ---------------------------------------------------------------- construction

def trivial_rendition(g: Multigraph, C, rotation: Dict[object, List]) -> Rendition:
    """Every edge its own cell, every vertex a node.

    `rotation` gives, for every vertex, its incident edge ids in clockwise
    order; boundary vertices also list STAR once, where the outside is.
    """
    C = tuple(C)
    cells = {}
    for e, (u, v) in g.edges.items():
        cells[e] = Cell((u, v), frozenset([e]), frozenset([u, v]))
    rot = {}
    for v in g.vertices:
        rv = list(rotation.get(v, []))
        if (STAR in rv) != (v in C):
            raise ValueError(f"rotation at {v!r} misplaces the outside")
        rot[v] = tuple(rv)
    rho = Rendition(g, C, cells, rot, {})
    bad = validate(g, C, rho)
    if bad:
        raise ValueError("embedding does not give a rendition: " + "; ".join(bad[:3]))
    return rho


def degree(rho: Rendition) -> int:
    return rho.degree()
