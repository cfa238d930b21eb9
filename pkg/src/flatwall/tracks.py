"""Grounded paths and cycles, their tracks, and cutting the disk along a track."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .graph import Multigraph
from .rendition import STAR, Rendition


@dataclass(frozen=True)
class Walk:
    """A path or cycle of G: vertices in order plus the edge ids between them.

    For a cycle the last edge joins the last vertex back to the first.
    """
    vertices: Tuple
    edges: Tuple[int, ...]
    closed: bool = False

    def __post_init__(self):
        want = len(self.vertices) if self.closed else len(self.vertices) - 1
        if len(self.edges) != max(want, 0):
            raise ValueError("edge count does not match the vertex sequence")

    @classmethod
    def from_vertices(cls, g: Multigraph, vs: Sequence, closed: bool = False) -> "Walk":
        vs = tuple(vs)
        pairs = list(zip(vs, vs[1:])) + ([(vs[-1], vs[0])] if closed and len(vs) > 1 else [])
        used: Set[int] = set()
        es = []
        for u, v in pairs:
            cand = [e for e in g.edges_between(u, v) if e not in used]
            if not cand:
                raise ValueError(f"no edge between {u!r} and {v!r}")
            es.append(min(cand))
            used.add(es[-1])
        return cls(vs, tuple(es), closed)

    def reversed(self) -> "Walk":
        if not self.closed:
            return Walk(self.vertices[::-1], self.edges[::-1], False)
        vs = (self.vertices[0],) + self.vertices[:0:-1]
        es = self.edges[::-1]
        return Walk(vs, es, True)

    def rotated_to(self, v) -> "Walk":
        i = self.vertices.index(v)
        return Walk(self.vertices[i:] + self.vertices[:i], self.edges[i:] + self.edges[:i], True)

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices) and len(set(self.edges)) == len(self.edges)

    def check(self, g: Multigraph) -> bool:
        n = len(self.vertices)
        for i, e in enumerate(self.edges):
            if e not in g._edges:
                return False
            if {self.vertices[i], self.vertices[(i + 1) % n]} != set(g.endpoints(e)):
                return False
        return True


@dataclass(frozen=True)
class AtomicFactor:
    vertices: Tuple
    edges: Tuple[int, ...]
    home: int

    @property
    def ends(self):
        return self.vertices[0], self.vertices[-1]

    @property
    def trivial(self) -> bool:
        return len(self.edges) == 1


@dataclass(frozen=True)
class Track:
    """Nodes alternating with arcs (cell, index); closed tracks end on an arc."""
    items: Tuple
    closed: bool

    @property
    def nodes(self) -> Tuple:
        return self.items[0::2]

    @property
    def arcs(self) -> Tuple[Tuple[int, int], ...]:
        return self.items[1::2]

    def as_set(self) -> FrozenSet:
        return frozenset(self.items)


@dataclass(frozen=True)
class DiskPartition:
    inside: FrozenSet[int]
    outside: FrozenSet[int]
    border: FrozenSet[int]


# ---------------------------------------------------------------- grounding

def is_grounded(x: Walk, rho: Rendition) -> bool:
    if not x.closed:
        return bool(x.vertices) and x.vertices[0] in rho.rot and x.vertices[-1] in rho.rot
    home = rho.edge_home()
    return len({home[e] for e in x.edges}) >= 2


def atomic_decomposition(x: Walk, rho: Rendition) -> List[AtomicFactor]:
    if not is_grounded(x, rho):
        raise ValueError("walk is not grounded")
    nodes = rho.rot
    home = rho.edge_home()
    if x.closed:
        first = next(v for v in x.vertices if v in nodes)
        x = x.rotated_to(first)
        vs = x.vertices + (x.vertices[0],)
    else:
        vs = x.vertices
    out = []
    start = 0
    for i in range(1, len(vs)):
        if vs[i] in nodes:
            es = x.edges[start:i]
            cells = {home[e] for e in es}
            if len(cells) != 1:
                raise AssertionError("atomic path spans several cells")
            out.append(AtomicFactor(tuple(vs[start:i + 1]), tuple(es), cells.pop()))
            start = i
    return out


def track(x: Walk, rho: Rendition) -> Track:
    fs = atomic_decomposition(x, rho)
    if not fs:
        return Track((x.vertices[0],), False)
    items: List = []
    for q in fs:
        u, v = q.ends
        items.append(u)
        items.append((q.home, rho.arc_between(q.home, u, v)))
    if not x.closed:
        items.append(fs[-1].ends[1])
    return Track(tuple(items), x.closed)


def tracks_meet(t1: Track, t2: Track) -> bool:
    return bool(set(t1.nodes) & set(t2.nodes))


# ---------------------------------------------------------------- cutting the disk

def disk_partition(t: Track, rho: Rendition) -> DiskPartition:
    """Classify internal cells by the side of a closed track they lie on."""
    if not t.closed:
        raise ValueError("disk partition needs a closed track")
    cut = set(t.arcs)
    faces = rho.faces()
    seen = {("c", STAR)}
    dq = deque([("c", STAR)])
    by_face: Dict[int, List[Tuple[int, int]]] = {}
    for ang, f in faces.items():
        by_face.setdefault(f, []).append(ang)
    while dq:
        kind, x = dq.popleft()
        if kind == "c":
            nbrs = [("f", faces[(x, i)]) for i in range(len(rho.cell_nodes(x))) if (x, i) not in cut]
        else:
            nbrs = [("c", c) for (c, i) in by_face[x] if (c, i) not in cut]
        for y in nbrs:
            if y not in seen:
                seen.add(y)
                dq.append(y)
    main = rho.star_component_cells()
    inside = frozenset(c for c in rho.cells if c in main and ("c", c) not in seen)
    outside = frozenset(c for c in rho.cells if c not in inside)
    homes = {c for c, i in t.arcs}
    return DiskPartition(inside, outside, frozenset(outside & homes))


def clockwise(x: Walk, rho: Rendition, part: Optional[DiskPartition] = None) -> bool:
    """Whether the given direction of a grounded cycle is its clockwise one."""
    fs = atomic_decomposition(x, rho)
    part = part or disk_partition(track(x, rho), rho)
    q = fs[0]
    u, v = q.ends
    a = rho.arc_between(q.home, u, v)
    forward = rho.cell_nodes(q.home)[a] == u
    return forward != (q.home in part.outside)


def is_proper(d: Walk, rho: Rendition, part: Optional[DiskPartition] = None) -> bool:
    part = part or disk_partition(track(d, rho), rho)
    on = set(d.vertices)
    for c in part.border:
        ns = rho.cells[c].nodes
        if len(ns) != 3 or sum(1 for n in ns if n in on) != 2:
            return False
    return True


def side_sets(e: Walk, rho: Rendition, d_vertices, part: Optional[DiskPartition] = None):
    """The two sides (A, B) cut out by the track of a grounded cycle."""
    part = part or disk_partition(track(e, rho), rho)
    out_nodes = set()
    for c in part.outside:
        out_nodes |= set(rho.cells[c].nodes)
    out_nodes |= set(rho.boundary)
    out_nodes |= set(e.vertices) & set(rho.rot)
    A = set(out_nodes)
    for c in part.outside:
        A |= rho.cells[c].verts
    B = set(d_vertices) & set(e.vertices)
    for c in part.inside:
        B |= rho.cells[c].verts
    # nodes touching no cell at all float outside
    for n, ring in rho.rot.items():
        if not ring:
            A.add(n)
    return A, B


# ---------------------------------------------------------------- surgery on E

def _segment(x: Walk, a, b) -> Tuple[Tuple, Tuple]:
    """Vertices and edges of the closed walk x from a forward to b."""
    y = x.rotated_to(a)
    j = y.vertices.index(b)
    return y.vertices[:j + 1], y.edges[:j]


def _flap_path(rho: Rendition, cid: int, s, t, avoid) -> Optional[Tuple[Tuple, Tuple]]:
    g = rho.graph
    c = rho.cells[cid]
    adj: Dict = {v: [] for v in c.verts if v not in avoid}
    for e in sorted(c.edges):
        a, b = g.endpoints(e)
        if a in adj and b in adj:
            adj[a].append((e, b))
            adj[b].append((e, a))
    if s not in adj or t not in adj:
        return None
    prev = {s: None}
    dq = deque([s])
    while dq:
        x = dq.popleft()
        if x == t:
            break
        for e, y in adj[x]:
            if y not in prev:
                prev[y] = (x, e)
                dq.append(y)
    if t not in prev:
        return None
    vs, es = [t], []
    while prev[vs[-1]] is not None:
        x, e = prev[vs[-1]]
        es.append(e)
        vs.append(x)
    return tuple(vs[::-1]), tuple(es[::-1])


def _acceptable(e: Walk, rho: Rendition, e2: Walk, rho2: Rendition, cid: int) -> Optional[DiskPartition]:
    if not e2.is_simple() or not e2.check(rho2.graph) or not is_grounded(e2, rho2):
        return None
    before = disk_partition(track(e, rho), rho)
    after = disk_partition(track(e2, rho2), rho2)
    if cid not in after.inside or not before.inside <= after.inside:
        return None
    if not clockwise(e2, rho2, after):
        return None
    return after


def reroute_cycle(e: Walk, rho: Rendition, move: Tuple[str, int]) -> Tuple[Walk, Rendition]:
    """Apply one properness move to a clockwise grounded cycle.

    M1 flips the arc of a degree-2 border cell.  M2 short-cuts a degree-3
    border cell whose three nodes all lie on the cycle.  M3 swaps a stretch of
    the cycle for the single edge of a trivial outside cell joining two of its
    nodes.  Each returns a cycle whose inside strictly contains the old one.
    """
    kind, cid = move
    part = disk_partition(track(e, rho), rho)
    if not clockwise(e, rho, part):
        raise ValueError("cycle must be given in its clockwise direction")
    c = rho.cells.get(cid)
    if c is None:
        raise ValueError(f"no cell {cid}")
    on = set(e.vertices)
    if kind == "M1":
        if cid not in part.border or c.degree != 2:
            raise ValueError("M1 needs a degree-2 border cell")
        key = (cid, frozenset(c.nodes))
        tau = dict(rho.tau)
        tau[key] = 1 - rho.tau.get(key, 0)
        rho2 = rho.replace(tau=tau)
        if _acceptable(e, rho, e, rho2, cid) is None:
            raise AssertionError("flipping the arc did not pull the cell inside")
        return e, rho2
    if kind == "M2":
        if cid not in part.border or c.degree != 3 or not set(c.nodes) <= on:
            raise ValueError("M2 needs a degree-3 border cell with all nodes on the cycle")
        for n in c.nodes:
            m_, p_ = [x for x in c.nodes if x != n]
            for m, p in ((m_, p_), (p_, m_)):
                seg_v, _ = _segment(e, m, p)
                if n not in seg_v:
                    continue
                r = _flap_path(rho, cid, m, p, {n})
                if r is None:
                    continue
                rest_v, rest_e = _segment(e, p, m)
                e2 = Walk(rest_v[:-1] + r[0][:-1], rest_e + r[1], True)
                if _acceptable(e, rho, e2, rho, cid) is not None:
                    return e2, rho
        raise AssertionError("no short-cut through the cell enlarges the inside")
    if kind == "M3":
        if cid in part.outside and cid not in part.border and c.degree == 2 and len(c.edges) == 1:
            (edge,) = tuple(c.edges)
            s0, t0 = rho.graph.endpoints(edge)
            if s0 in on and t0 in on:
                key = (cid, frozenset(c.nodes))
                for s, t in ((s0, t0), (t0, s0)):
                    keep_v, keep_e = _segment(e, s, t)
                    e2 = Walk(keep_v, keep_e + (edge,), True)
                    for arc in (rho.tau.get(key, 0), 1 - rho.tau.get(key, 0)):
                        tau = dict(rho.tau)
                        tau[key] = arc
                        rho2 = rho.replace(tau=tau)
                        if _acceptable(e, rho, e2, rho2, cid) is not None:
                            return e2, rho2
                raise AssertionError("no way to absorb the edge enlarges the inside")
        raise ValueError("M3 needs a trivial outside non-border cell joining two cycle nodes")
    raise ValueError(f"unknown move {kind!r}")
