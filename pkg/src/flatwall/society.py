"""Societies, crosses and rurality.

Rurality is decided in two stages.  Parts of the graph hanging off at most
three vertices and avoiding the boundary are folded into single star
vertices (they will become cells of a rendition), then the folded graph is
tested for a plane drawing with the boundary on the outer face in order.
A plane drawing of the folded graph unfolds into a rendition of the original.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from .graph import Multigraph, vkey
from .rendition import STAR, Cell, Rendition, trivial_rendition, validate


@dataclass(frozen=True)
class Society:
    graph: Multigraph
    boundary: Tuple

    def __post_init__(self):
        b = tuple(self.boundary)
        object.__setattr__(self, "boundary", b)
        if len(set(b)) != len(b):
            raise ValueError("boundary repeats a vertex")
        for v in b:
            if v not in self.graph:
                raise ValueError(f"boundary vertex {v!r} is not in the graph")


# ---------------------------------------------------------------- crosses

@dataclass(frozen=True)
class Cross:
    """Disjoint paths a..c and b..d with a, b, c, d in this cyclic order on C."""
    path1: Tuple
    path2: Tuple

    def failures(self, g: Multigraph, C: Sequence) -> List[str]:
        out = []
        pos = {v: i for i, v in enumerate(C)}
        for name, p in (("path1", self.path1), ("path2", self.path2)):
            if len(p) < 2 or len(set(p)) != len(p):
                out.append(f"{name} is not a simple path")
            elif any(not g.edges_between(x, y) for x, y in zip(p, p[1:])):
                out.append(f"{name} uses a missing edge")
            elif p[0] not in pos or p[-1] not in pos:
                out.append(f"{name} does not end on the boundary")
        if out:
            return out
        if set(self.path1) & set(self.path2):
            out.append("the paths meet")
        a, c = sorted((pos[self.path1[0]], pos[self.path1[-1]]))
        inside = [a < pos[x] < c for x in (self.path2[0], self.path2[-1])]
        if inside[0] == inside[1]:
            out.append("the endpoints do not interleave")
        return out

    def ends(self) -> Tuple:
        return self.path1[0], self.path2[0], self.path1[-1], self.path2[-1]


def find_cross(g: Multigraph, C: Sequence) -> Optional[Cross]:
    """Two disjoint paths joining interleaved boundary pairs, or None.

    Exhaustive; intended for small graphs.
    """
    C = list(C)
    if len(C) < 4:
        raise ValueError("a cross needs at least four boundary vertices")
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    for i, j, k, l in combinations(range(len(C)), 4):
        got = _disjoint_pair(adj, C[i], C[k], C[j], C[l])
        if got:
            return Cross(tuple(got[0]), tuple(got[1]))
    return None


def _reach_avoiding(adj, s, t, banned) -> Optional[List]:
    if s in banned or t in banned:
        return None
    prev = {s: None}
    dq = deque([s])
    while dq:
        x = dq.popleft()
        if x == t:
            path = [x]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for y in adj[x]:
            if y not in prev and y not in banned:
                prev[y] = x
                dq.append(y)
    return None


def _disjoint_pair(adj, a, c, b, d):
    path = [a]
    on = {a}

    def rec():
        x = path[-1]
        if x == c:
            q = _reach_avoiding(adj, b, d, on)
            return (list(path), q) if q else None
        if _reach_avoiding(adj, b, d, on) is None:
            return None
        for y in sorted(adj[x], key=vkey):
            if y in on or y == b or y == d:
                continue
            path.append(y)
            on.add(y)
            r = rec()
            if r:
                return r
            path.pop()
            on.discard(y)
        return None

    if a in (b, d) or c in (b, d):
        return None
    return rec()


# ---------------------------------------------------------------- plane drawings

class _Hub:
    def __repr__(self):
        return "<hub>"


def _augmented(g: Multigraph, C) -> Tuple[nx.Graph, object]:
    h = g.simple()
    hub = _Hub()
    h.add_node(hub)
    for v in C:
        h.add_edge(hub, v)
    if len(C) >= 3:
        for i in range(len(C)):
            mid = ("__rim__", i, id(hub))
            h.add_edge(C[i], mid)
            h.add_edge(mid, C[(i + 1) % len(C)])
    return h, hub


def augmented_planarity_oracle(g: Multigraph, C) -> bool:
    """Plain test: G plus a boundary cycle plus a hub on C is planar."""
    h, _ = _augmented(g, list(C))
    return nx.check_planarity(h)[0]


def embed_society(g: Multigraph, C) -> Optional[Dict[object, List]]:
    """Clockwise edge rotations of a drawing with C around the outside, or None.

    Boundary vertices carry STAR where the outside sits.
    """
    C = list(C)
    h, hub = _augmented(g, C)
    ok, emb = nx.check_planarity(h)
    if not ok:
        return None
    hub_order = list(emb.neighbors_cw_order(hub)) if C else []
    mirror = False
    if len(C) >= 3:
        want = list(reversed(C))
        k = hub_order.index(want[0])
        mirror = hub_order[k:] + hub_order[:k] != want
    par: Dict[Tuple, List[int]] = {}
    for e, (u, v) in g.edges.items():
        par.setdefault(frozenset((u, v)), []).append(e)
    rot = {}
    for v in g.vertices:
        seq = []
        for w in emb.neighbors_cw_order(v) if v in emb else []:
            if w is hub:
                seq.append(STAR)
            elif frozenset((v, w)) in par:
                ids = sorted(par[frozenset((v, w))])
                seq.extend(ids if vkey(v) < vkey(w) else ids[::-1])
        rot[v] = seq[::-1] if mirror else seq
    return rot


# ---------------------------------------------------------------- folding pieces

class _Folder:
    """Fold boundary-free pieces with at most three attachments into stars."""

    def __init__(self, g: Multigraph, C):
        self.orig = g
        self.C = set(C)
        self.adj: Dict[object, Dict[object, List[int]]] = {v: {} for v in g.vertices}
        self.ends: Dict[int, Tuple] = {}
        for e, (u, v) in g.edges.items():
            self._add_edge(e, u, v)
        self.next_eid = max(g.edges, default=-1) + 1
        self.content: Dict[object, Tuple[FrozenSet, FrozenSet]] = {}
        self.count = 0
        self.safe = set()

    def _add_edge(self, e, u, v):
        self.ends[e] = (u, v)
        self.adj[u].setdefault(v, []).append(e)
        self.adj[v].setdefault(u, []).append(e)

    def is_center(self, v) -> bool:
        return v in self.content

    def nbrs(self, v):
        return self.adj[v].keys()

    def fold(self, K: set, S: FrozenSet):
        verts, edges = set(S), set()
        for v in K:
            if v in self.content:
                cv, ce = self.content[v]
                verts |= cv
                edges |= ce
            else:
                verts.add(v)
            for w, es in self.adj[v].items():
                for e in es:
                    if e in self.orig._edges:
                        edges.add(e)
        for v in K:
            for w in list(self.adj[v]):
                if w not in K:
                    for e in self.adj[w].pop(v):
                        self.ends.pop(e, None)
                else:
                    for e in self.adj[v][w]:
                        self.ends.pop(e, None)
            del self.adj[v]
            self.content.pop(v, None)
        z = ("__piece__", self.count)
        self.count += 1
        self.adj[z] = {}
        self.content[z] = (frozenset(verts), frozenset(edges))
        for s in sorted(S, key=vkey):
            self._add_edge(self.next_eid, z, s)
            self.next_eid += 1
        return z

    def weight(self, K) -> int:
        inc = set()
        for v in K:
            for es in self.adj[v].values():
                inc.update(es)
        return len(K) + len(inc)

    def components_without(self, S) -> List[set]:
        seen = set(S)
        out = []
        for v in self.adj:
            if v in seen:
                continue
            comp = {v}
            seen.add(v)
            dq = deque([v])
            while dq:
                x = dq.popleft()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        dq.append(y)
            out.append(comp)
        return out

    def attachments(self, K) -> FrozenSet:
        return frozenset(w for v in K for w in self.adj[v] if w not in K)

    def fold_at(self, S: FrozenSet) -> bool:
        # attachments become nodes, so they must be genuine vertices
        if any(v in self.content for v in S):
            return False
        K = set()
        for comp in self.components_without(S):
            if not (comp & self.C) and self.attachments(comp) == S:
                K |= comp
        if not K or self.weight(K) <= 1 + len(S):
            return False
        self.fold(K, S)
        return True

    def run(self):
        while self._step():
            pass

    def _step(self) -> bool:
        # boundary-free components
        if self.fold_at(frozenset()):
            return True
        # twins and multi-edges on at most three attachments
        groups: Dict[FrozenSet, int] = {}
        for v in list(self.adj):
            if v in self.C:
                continue
            S = frozenset(self.adj[v])
            if len(S) <= 3:
                groups[S] = groups.get(S, 0) + 1
                deg = sum(len(es) for es in self.adj[v].values())
                if (groups[S] > 1 or deg > len(S)) and self.fold_at(S):
                    return True
        # pieces containing an edge
        for e, (u, v) in list(self.ends.items()):
            if u in self.C or v in self.C or e in self.safe:
                continue
            cut = _small_cut(self.adj, {u, v}, self.C, 3, uncut=self.content)
            if cut is None:
                # folding never raises connectivity to C, so this stays true
                self.safe.add(e)
                continue
            comp = next(c for c in self.components_without(cut) if u in c)
            if self.fold_at(self.attachments(comp)):
                return True
        return False


def _small_cut(adj, sources: set, sinks: set, limit: int, uncut=()) -> Optional[FrozenSet]:
    """A vertex set of size <= limit separating sources from sinks, or None.

    Sink vertices may themselves be cut; vertices in `uncut` may not.  Unit vertex capacities, augmenting
    paths on the split graph.
    """
    flow: Dict[Tuple, int] = {}

    def f(a, b):
        return flow.get((a, b), 0)

    def push(a, b):
        if flow.get((b, a), 0) > 0:
            flow[(b, a)] -= 1
        else:
            flow[(a, b)] = flow.get((a, b), 0) + 1

    def arcs(x):
        v, side = x
        if side == "i":
            if v not in sources and (v in uncut or f(x, (v, "o")) < 1):
                yield (v, "o")
            for w in adj[v]:
                if f((w, "o"), x) > 0:
                    yield (w, "o")
        else:
            if v in sinks:
                yield "T"
            for w in adj[v]:
                if w not in sources:
                    yield (w, "i")
            if f((v, "i"), x) > 0:
                yield (v, "i")

    def bfs():
        prev = {}
        dq = deque()
        for s in sources:
            prev[(s, "o")] = None
            dq.append((s, "o"))
        while dq:
            x = dq.popleft()
            for y in arcs(x):
                if y in prev:
                    continue
                prev[y] = x
                if y == "T":
                    return prev
                dq.append(y)
        return prev

    total = 0
    if sources & sinks:
        return None
    while True:
        prev = bfs()
        if "T" not in prev:
            break
        total += 1
        if total > limit:
            return None
        y = "T"
        while prev[y] is not None:
            x = prev[y]
            if y != "T":
                push(x, y)
            y = x
        # arcs into T carry unbounded flow, nothing to record
    cut = frozenset(v for (v, side) in prev if side == "i" and (v, "o") not in prev)
    return cut


# ---------------------------------------------------------------- rurality

def is_rural(g: Multigraph, C, *, with_witness: bool = True) -> Tuple[bool, Optional[Rendition]]:
    """Decide whether (G, C) has a vortex-free rendition in a disk."""
    C = list(C)
    rot = embed_society(g, C)
    if rot is not None:
        return True, (trivial_rendition(g, C, rot) if with_witness else None)
    fold = _Folder(g, C)
    fold.run()
    verts = list(fold.adj)
    edges = dict(fold.ends)
    folded = Multigraph(verts, edges)
    rot = embed_society(folded, C)
    if rot is None:
        return False, None
    if not with_witness:
        return True, None
    return True, _unfold(g, C, folded, rot, fold.content)


def _unfold(g, C, folded, rot, content) -> Rendition:
    base = trivial_rendition(folded, C, rot)
    cells = {e: c for e, c in base.cells.items()}
    rot2 = {n: list(cs) for n, cs in base.rot.items()}
    # fresh ids for original edge cells are their edge ids; star cells get new ones
    nid = max(list(cells) + list(g.edges) + [-1]) + 1
    for z, (verts, edges) in content.items():
        ring = rot2.pop(z)
        nodes = []
        for e in ring:
            s = folded.other(e, z)
            nodes.append(s)
            rs = rot2[s]
            rs[rs.index(e)] = nid
            del cells[e]
        cells[nid] = Cell(tuple(nodes), frozenset(edges), frozenset(verts))
        nid += 1
    rho = Rendition(g, C, cells, rot2, {})
    bad = validate(g, C, rho)
    if bad:
        raise AssertionError("unfolded witness is not a rendition: " + "; ".join(bad[:3]))
    return rho
