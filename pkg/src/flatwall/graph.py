"""Multigraphs, planarity, minor search and separations."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

Vertex = Hashable


def vkey(v: Any):
    """Total order on the vertex ids used in this package (ints, strings, tuples)."""
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(vkey(x) for x in v))
    return (3, repr(v))


def vsorted(vs: Iterable[Vertex]) -> List[Vertex]:
    return sorted(vs, key=vkey)


class Multigraph:
    """Undirected multigraph with stable integer edge ids.

    Parallel edges are kept; self-loops are rejected.  Instances are treated
    as immutable: every operation returns a new graph.
    """

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, vertices: Iterable[Vertex] = (), edges=()):
        vs: Dict[Vertex, None] = dict.fromkeys(vertices)
        if isinstance(edges, dict):
            items = list(edges.items())
        else:
            items = list(enumerate(edges))
        emap: Dict[int, Tuple[Vertex, Vertex]] = {}
        for eid, (u, v) in items:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if eid in emap:
                raise ValueError(f"duplicate edge id {eid}")
            vs.setdefault(u)
            vs.setdefault(v)
            emap[eid] = (u, v)
        self._vertices = tuple(vs)
        self._edges = emap
        adj: Dict[Vertex, List[Tuple[int, Vertex]]] = {v: [] for v in self._vertices}
        for eid, (u, v) in emap.items():
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        self._adj = adj

    # basic queries
    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> Dict[int, Tuple[Vertex, Vertex]]:
        return dict(self._edges)

    def edge_ids(self) -> List[int]:
        return list(self._edges)

    def endpoints(self, e: int) -> Tuple[Vertex, Vertex]:
        return self._edges[e]

    def other(self, e: int, v: Vertex) -> Vertex:
        a, b = self._edges[e]
        return b if v == a else a

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def incident(self, v: Vertex) -> List[Tuple[int, Vertex]]:
        return list(self._adj[v])

    def neighbors(self, v: Vertex) -> List[Vertex]:
        seen: Dict[Vertex, None] = {}
        for _, w in self._adj[v]:
            seen.setdefault(w)
        return list(seen)

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def edges_between(self, u: Vertex, v: Vertex) -> List[int]:
        return [e for e, w in self._adj[u] if w == v]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return any(w == v for _, w in self._adj.get(u, ()))

    # derived graphs
    def induced(self, vs: Iterable[Vertex]) -> "Multigraph":
        keep = set(vs)
        order = [v for v in self._vertices if v in keep]
        es = {e: uv for e, uv in self._edges.items() if uv[0] in keep and uv[1] in keep}
        return Multigraph(order, es)

    def edge_subgraph(self, eids: Iterable[int], extra_vertices: Iterable[Vertex] = ()) -> "Multigraph":
        es = {e: self._edges[e] for e in eids}
        used = set(extra_vertices)
        for u, v in es.values():
            used.add(u)
            used.add(v)
        order = [v for v in self._vertices if v in used]
        return Multigraph(order, es)

    def without_vertices(self, vs: Iterable[Vertex]) -> "Multigraph":
        drop = set(vs)
        return self.induced(v for v in self._vertices if v not in drop)

    def without_edges(self, eids: Iterable[int]) -> "Multigraph":
        drop = set(eids)
        return Multigraph(self._vertices, {e: uv for e, uv in self._edges.items() if e not in drop})

    def with_edges(self, pairs: Iterable[Tuple[Vertex, Vertex]]) -> "Multigraph":
        es = dict(self._edges)
        nxt = max(es, default=-1) + 1
        for u, v in pairs:
            es[nxt] = (u, v)
            nxt += 1
        return Multigraph(self._vertices, es)

    def union(self, other: "Multigraph") -> "Multigraph":
        """Union; edges with the same id must agree."""
        es = dict(self._edges)
        for e, uv in other._edges.items():
            if e in es and set(es[e]) != set(uv):
                raise ValueError(f"edge id {e} clashes")
            es[e] = uv
        return Multigraph(list(self._vertices) + [v for v in other._vertices if v not in self._adj], es)

    def simple(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(self._vertices)
        h.add_edges_from(self._edges.values())
        return h

    def relabel(self, f) -> "Multigraph":
        return Multigraph([f(v) for v in self._vertices], {e: (f(u), f(v)) for e, (u, v) in self._edges.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Multigraph) and set(self._vertices) == set(other._vertices)
                and {e: frozenset(uv) for e, uv in self._edges.items()}
                == {e: frozenset(uv) for e, uv in other._edges.items()})

    def __hash__(self):
        return hash((frozenset(self._vertices), len(self._edges)))

    def __repr__(self) -> str:
        return f"Multigraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    # serialization
    def to_json(self) -> str:
        ids = list(self._edges)
        doc: Dict[str, Any] = {"vertices": [_to_jsonable(v) for v in self._vertices],
                               "edges": [[_to_jsonable(u), _to_jsonable(v)] for u, v in self._edges.values()]}
        if ids != list(range(len(ids))):
            doc["edge_ids"] = ids
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text) -> "Multigraph":
        doc = json.loads(text) if isinstance(text, str) else text
        vs = [_from_jsonable(v) for v in doc["vertices"]]
        pairs = [(_from_jsonable(u), _from_jsonable(v)) for u, v in doc["edges"]]
        ids = doc.get("edge_ids", list(range(len(pairs))))
        return cls(vs, dict(zip(ids, pairs)))

    def to_dot(self, name: str = "G", highlight: Iterable[int] = (), pos=None) -> str:
        hl = set(highlight)
        names = {v: f"v{i}" for i, v in enumerate(self._vertices)}
        lines = [f"graph {name} {{"]
        for v in self._vertices:
            attrs = [f'label="{_dot_escape(json.dumps(_to_jsonable(v)))}"']
            if pos is not None and v in pos:
                x, y = pos[v]
                attrs.append(f'pos="{x},{y}!"')
            lines.append(f"  {names[v]} [{', '.join(attrs)}];")
        for e, (u, v) in self._edges.items():
            style = ', color="red", penwidth=2' if e in hl else ""
            lines.append(f'  {names[u]} -- {names[v]} [id="{e}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dot(cls, text: str) -> "Multigraph":
        """Parse DOT produced by `to_dot`."""
        import re
        names = {}
        for m in re.finditer(r'^\s*(v\d+) \[label="((?:[^"\\]|\\.)*)"', text, re.M):
            names[m.group(1)] = _from_jsonable(json.loads(m.group(2).replace('\\"', '"')))
        es = {}
        for m in re.finditer(r'^\s*(v\d+) -- (v\d+) \[id="(-?\d+)"', text, re.M):
            es[int(m.group(3))] = (names[m.group(1)], names[m.group(2)])
        return cls(list(names.values()), es)


def _dot_escape(s: str) -> str:
    return s.replace('"', '\\"')


def _to_jsonable(v):
    if isinstance(v, tuple):
        return [_to_jsonable(x) for x in v]
    return v


def _from_jsonable(v):
    if isinstance(v, list):
        return tuple(_from_jsonable(x) for x in v)
    return v


def complete_graph(n: int, labels=None) -> Multigraph:
    labels = list(range(n)) if labels is None else list(labels)
    return Multigraph(labels, list(itertools.combinations(labels, 2)))


def cycle_graph(vs) -> Multigraph:
    vs = list(vs)
    return Multigraph(vs, [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))])


def path_graph(vs) -> Multigraph:
    vs = list(vs)
    return Multigraph(vs, list(zip(vs, vs[1:])))


# ---------------------------------------------------------------- components

def connected_components(g: Multigraph) -> List[List[Vertex]]:
    seen = set()
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        i = 0
        while i < len(comp):
            for _, w in g._adj[comp[i]]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
            i += 1
        out.append(comp)
    return out


def is_connected_set(g: Multigraph, vs) -> bool:
    vs = set(vs)
    if not vs:
        return False
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for _, w in g._adj[x]:
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


# ---------------------------------------------------------------- planarity

def is_planar(g: Multigraph) -> bool:
    return nx.check_planarity(g.simple())[0]


# ---------------------------------------------------------------- separations

@dataclass(frozen=True)
class Separation:
    sideA: FrozenSet[Vertex]
    sideB: FrozenSet[Vertex]

    @property
    def interface(self) -> FrozenSet[Vertex]:
        return self.sideA & self.sideB


def verify_separation(g: Multigraph, s: Separation) -> bool:
    A, B = set(s.sideA), set(s.sideB)
    if A | B != set(g.vertices):
        return False
    for u, v in g._edges.values():
        if (u in A and u not in B and v in B and v not in A) or (v in A and v not in B and u in B and u not in A):
            return False
    return True


def enumerate_separations(g: Multigraph, interface_bound: int, interface_universe) -> Iterator[Separation]:
    """Every separation with interface inside the universe, one per orientation pair."""
    universe = vsorted(set(interface_universe))
    if interface_bound > len(universe):
        raise ValueError("interface_bound exceeds the universe size")
    V = frozenset(g.vertices)
    for k in range(interface_bound + 1):
        for S in itertools.combinations(universe, k):
            S = frozenset(S)
            comps = connected_components(g.without_vertices(S))
            comps = [frozenset(c) for c in comps]
            # fix the first component on side B to skip mirror images
            n = len(comps)
            if n == 0:
                yield Separation(S, V)
                continue
            for mask in range(1 << (n - 1)):
                a = set(S)
                for i in range(n - 1):
                    if mask >> i & 1:
                        a |= comps[i + 1]
                yield Separation(frozenset(a), V - (frozenset(a) - S))


# ---------------------------------------------------------------- minors

@dataclass
class MinorModel:
    branch_sets: Dict[Vertex, FrozenSet[Vertex]]
    model_edges: Dict[Tuple[Vertex, Vertex], int] = field(default_factory=dict)

    def verify(self, host: Multigraph, target: Multigraph) -> bool:
        used = set()
        for t in target.vertices:
            bs = self.branch_sets.get(t)
            if not bs or used & bs or not is_connected_set(host, bs):
                return False
            used |= bs
        for u, v in target.edges.values():
            e = self.model_edges.get((u, v), self.model_edges.get((v, u)))
            if e is None or e not in host._edges:
                return False
            a, b = host.endpoints(e)
            if not ((a in self.branch_sets[u] and b in self.branch_sets[v])
                    or (b in self.branch_sets[u] and a in self.branch_sets[v])):
                return False
        return True


@dataclass
class MinorResult:
    status: str  # "found" | "absent" | "unknown"
    model: Optional[MinorModel] = None
    steps: int = 0
    note: str = ""


class _Budget:
    def __init__(self, n):
        self.left = n
        self.used = 0

    def tick(self, k=1):
        self.used += k
        self.left -= k
        if self.left < 0:
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


def _is_complete(t: Multigraph) -> bool:
    h = t.simple()
    n = h.number_of_nodes()
    return h.number_of_edges() == n * (n - 1) // 2


def find_minor(host: Multigraph, target: Multigraph, budget: int = 10 ** 6) -> MinorResult:
    """Search for a `target` minor in `host`.

    Outcome is "found" with a verified model, "absent" when the search space
    was exhausted (possibly through exact reductions), or "unknown" when the
    step budget ran out.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    b = _Budget(budget)
    tgt = target.simple()
    try:
        if tgt.number_of_nodes() == 0:
            return MinorResult("found", MinorModel({}, {}), b.used)
        if _is_complete(target):
            res = _complete_minor(host, tgt.number_of_nodes(), b)
        else:
            res = _generic_minor(host.simple(), tgt, b)
    except _OutOfBudget:
        return MinorResult("unknown", None, b.used, "budget exhausted")
    if res is None:
        return MinorResult("absent", None, b.used)
    model = _finish_model(host, target, res)
    assert model.verify(host, target)
    return MinorResult("found", model, b.used)


def _finish_model(host: Multigraph, target: Multigraph, sets) -> MinorModel:
    tv = list(target.vertices)
    bsets = {tv[i]: frozenset(s) for i, s in enumerate(sets)} if not isinstance(sets, dict) else sets
    where = {}
    for t, s in bsets.items():
        for x in s:
            where[x] = t
    medges = {}
    for e, (a, b) in host._edges.items():
        ta, tb = where.get(a), where.get(b)
        if ta is None or tb is None or ta == tb:
            continue
        medges.setdefault((ta, tb), e)
        medges.setdefault((tb, ta), e)
    wanted = {}
    for u, v in target.edges.values():
        wanted[(u, v)] = medges[(u, v)]
    return MinorModel(bsets, wanted)


def _generic_minor(h: nx.Graph, tgt: nx.Graph, b: _Budget):
    adj = {v: set(h[v]) for v in h}
    tverts = list(tgt)
    tedges = [(tverts.index(u), tverts.index(v)) for u, v in tgt.edges()]
    res = _branch_and_bound(adj, len(tverts), tedges, symmetric=False, budget=b)
    return None if res is None else [set(s) for s in res]


# Complete targets get exact reductions first, then the search on what is left.
def _complete_minor(host: Multigraph, t: int, b: _Budget):
    h = host.simple()
    if t <= 1:
        if h.number_of_nodes() >= t:
            return [{next(iter(h))}] if t == 1 else []
        return None
    groups = {v: {v} for v in h}  # reduced vertex -> original vertices contracted into it
    h = _reduce_for_clique(h, groups, t, b)
    if isinstance(h, list):
        return h
    if h.number_of_nodes() < t:
        return None
    if _separation_proves_absent(h, t, b, depth=0):
        return None
    adj = {v: set(h[v]) for v in h}
    tedges = list(itertools.combinations(range(t), 2))
    res = _branch_and_bound(adj, t, tedges, symmetric=True, budget=b)
    if res is None:
        return None
    return [set().union(*(groups[x] for x in s)) for s in res]


def _planar_nx(h) -> bool:
    return nx.check_planarity(h)[0]


def _reduce_for_clique(h: nx.Graph, groups, t, b):
    """Exact reductions for K_t minors (t >= 4).

    Deletes vertices of degree <= 1, contracts degree-2 vertices, deletes
    simplicial vertices of degree <= t - 2.  Returns either the reduced graph
    or a list of branch sets when a K_t subgraph shows up on the way.
    """
    h = nx.Graph(h)
    if t < 4:
        return h
    changed = True
    while changed:
        changed = False
        for v in sorted(h, key=vkey):
            b.tick()
            d = h.degree(v)
            nb = list(h[v])
            if d <= 1:
                h.remove_node(v)
                groups.pop(v, None)
                changed = True
            elif d == 2:
                a = nb[0] if vkey(nb[0]) <= vkey(nb[1]) else nb[1]
                c = nb[1] if a == nb[0] else nb[0]
                groups[a] |= groups.pop(v)
                h.remove_node(v)
                h.add_edge(a, c)
                changed = True
            elif all(h.has_edge(x, y) for x, y in itertools.combinations(nb, 2)):
                if d >= t - 1:
                    clique = [v] + nb[: t - 1]
                    return [set(groups[x]) for x in clique]
                h.remove_node(v)
                groups.pop(v, None)
                changed = True
            if changed:
                break
    return h


def _separation_proves_absent(h: nx.Graph, t: int, b: _Budget, depth: int) -> bool:
    """True when a chain of small separations shows there is no K_t minor.

    For a separation of order < t, a K_t minor of the graph is a minor of one
    of the two torsos (the sides with the interface made a clique).  So if
    every torso is free of K_t then so is the graph.  Only absence is ever
    concluded here.
    """
    if h.number_of_nodes() < t:
        return True
    if h.number_of_edges() < t * (t - 1) // 2:
        return True
    if t >= 5 and _planar_nx(h):
        return True
    if t >= 6 and any(_planar_nx(nx.restricted_view(h, [v], [])) for v in h):
        return True
    if depth > 60:
        return False
    verts = sorted(h, key=vkey)
    for k in range(1, min(3, t - 2) + 1):
        for S in itertools.combinations(verts, k):
            b.tick()
            rest = h.subgraph([v for v in verts if v not in S])
            comps = list(nx.connected_components(rest))
            if len(comps) < 2:
                continue
            comps.sort(key=len)
            small = comps[0]
            big = set(h) - small
            torsos = []
            for side in (small | set(S), big):
                tg = nx.Graph(h.subgraph(side))
                tg.add_edges_from(itertools.combinations(S, 2))
                torsos.append(tg)
            return all(_separation_proves_absent(tg, t, b, depth + 1) for tg in torsos)
    return False


def _branch_and_bound(adj, k, tedges, symmetric, budget):
    """Assign each host vertex a label in -1..k-1 (-1 = unused).

    Labels are target vertices; a model needs each label class non-empty and
    connected and an edge between classes for every target edge.  With a
    symmetric (complete) target, new labels are opened in increasing order.
    """
    order = _bfs_order(adj)
    n = len(order)
    if n < k:
        return None
    label = {}
    tadj = [set() for _ in range(k)]
    for a, c in tedges:
        tadj[a].add(c)
        tadj[c].add(a)

    def feasible(pos):
        unassigned = set(order[pos:])
        used = set(label[v] for v in order[:pos] if label[v] >= 0)
        if k - len(used) > len(unassigned):
            return False
        regions = {}
        for L in used:
            members = [v for v in order[:pos] if label[v] == L]
            allowed = unassigned | set(members)
            reach = _reach(adj, members[0], allowed)
            if not all(m in reach for m in members):
                return False
            regions[L] = reach
        for a, c in tedges:
            if a in regions and c in regions:
                ra, rc = regions[a], regions[c]
                ok = False
                for x in ra:
                    if label.get(x, None) not in (a, None):
                        continue
                    for y in adj[x]:
                        if y in rc and y != x and label.get(y, None) in (c, None):
                            ok = True
                            break
                    if ok:
                        break
                if not ok:
                    return False
        if symmetric and used:
            # each used class must be able to reach k-1 other classes
            for L in used:
                ra = regions[L]
                if len(ra) < 1:
                    return False
        return True

    def complete(pos):
        classes = [[] for _ in range(k)]
        for v in order[:pos]:
            if label[v] >= 0:
                classes[label[v]].append(v)
        if any(not c for c in classes):
            return None
        for c in classes:
            if not _connected(adj, c):
                return None
        for a, c in tedges:
            sc = set(classes[c])
            if not any(y in sc for x in classes[a] for y in adj[x]):
                return None
        return classes

    def rec(pos, top):
        budget.tick()
        got = complete(pos)
        if got is not None:
            return got
        if pos == n:
            return None
        v = order[pos]
        choices = list(range(min(top + 1, k))) if symmetric else list(range(k))
        choices.append(-1)
        for L in choices:
            label[v] = L
            if feasible(pos + 1):
                r = rec(pos + 1, max(top, L + 1) if symmetric else top)
                if r is not None:
                    return r
            del label[v]
        return None

    return rec(0, 0)


def _bfs_order(adj):
    order = []
    seen = set()
    for s in sorted(adj, key=lambda v: (-len(adj[v]), vkey(v))):
        if s in seen:
            continue
        seen.add(s)
        q = [s]
        i = 0
        while i < len(q):
            x = q[i]
            i += 1
            order.append(x)
            for y in sorted(adj[x], key=lambda v: (-len(adj[v]), vkey(v))):
                if y not in seen:
                    seen.add(y)
                    q.append(y)
    return order


def _reach(adj, s, allowed):
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _connected(adj, vs):
    return bool(vs) and len(_reach(adj, vs[0], set(vs))) == len(vs)
