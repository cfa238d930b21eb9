"""Local surgery that drives a rendition towards tightness.

Four rewrites, tried in a fixed priority and restarted after every hit:

* split-flap: a flap falling apart into pieces that each touch a node and
  carry an edge becomes one cell per piece;
* split-at-node: a degree-3 cell whose middle node separates the other two
  becomes two degree-2 cells;
* home-alone: an edge joining two nodes is moved into a fresh cell of its own
  beside the arc the track would use;
* trim: a node with no flap edge is cut out of the cell boundary.

A fixpoint satisfies the three properties checked by check_tight_properties.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, List, Optional, Set, Tuple

from .graph import vkey, vsorted
from .rendition import STAR, Cell, Rendition, validate


def _flap_components(rho: Rendition, c: Cell, removed=()) -> List[Tuple[set, set]]:
    """Components of sigma(c) minus `removed`, as (vertices, edge ids)."""
    g = rho.graph
    adj: Dict[object, List[Tuple[int, object]]] = {v: [] for v in c.verts if v not in removed}
    for e in c.edges:
        a, b = g.endpoints(e)
        if a in adj and b in adj:
            adj[a].append((e, b))
            adj[b].append((e, a))
    seen: Set = set()
    out = []
    for s in vsorted(adj):
        if s in seen:
            continue
        vs, es = {s}, set()
        seen.add(s)
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for e, y in adj[x]:
                es.add(e)
                if y not in seen:
                    seen.add(y)
                    vs.add(y)
                    dq.append(y)
        out.append((vs, es))
    return out


def _drop_tau(tau, cid):
    return {k: a for k, a in tau.items() if k[0] != cid}


def _split_flap(rho: Rendition, cid: int) -> Optional[Rendition]:
    c = rho.cells[cid]
    if c.degree < 2:
        return None
    comps = _flap_components(rho, c)
    live = [(vs, es) for vs, es in comps if es and vs & set(c.nodes)]
    if len(live) < 2:
        return None
    first = live[0]
    rest_v = set().union(*(vs for vs, es in live[1:]))
    rest_e = set().union(*(es for vs, es in live[1:]))
    m_v = set(c.verts) - rest_v
    m_e = set(c.edges) - rest_e
    nodes_m = tuple(n for n in c.nodes if n in m_v)
    nodes_p = tuple(n for n in c.nodes if n in rest_v)
    cells = dict(rho.cells)
    new = rho.new_id()
    cells[cid] = Cell(nodes_m, frozenset(m_e), frozenset(m_v))
    cells[new] = Cell(nodes_p, frozenset(rest_e), frozenset(rest_v))
    rot = dict(rho.rot)
    for n in nodes_p:
        rot[n] = tuple(new if x == cid else x for x in rot[n])
    return rho.replace(cells=cells, rot=rot, tau=_drop_tau(rho.tau, cid))


def _split_at_node(rho: Rendition, cid: int) -> Optional[Rendition]:
    c = rho.cells[cid]
    if c.degree != 3 or not c.edges:
        return None
    comps = _flap_components(rho, c)
    if not any(set(c.nodes) <= vs for vs, es in comps):
        return None
    g = rho.graph
    for i, n in enumerate(c.nodes):
        x, y = c.nodes[(i + 1) % 3], c.nodes[(i + 2) % 3]
        parts = _flap_components(rho, c, removed={n})
        px = next(vs for vs, es in parts if x in vs)
        if y in px:
            continue
        # the side of x keeps px; everything else (y's side, loose bits) goes with y
        ex = {e for e in c.edges if set(g.endpoints(e)) & px}
        vx = px | {n}
        vy = (set(c.verts) - px)
        ey = set(c.edges) - ex
        cells = dict(rho.cells)
        new = rho.new_id()
        cells[cid] = Cell((n, x), frozenset(ex), frozenset(vx))
        cells[new] = Cell((y, n), frozenset(ey), frozenset(vy))
        rot = dict(rho.rot)
        ring = list(rot[n])
        k = ring.index(cid)
        ring[k:k + 1] = [cid, new]
        rot[n] = tuple(ring)
        rot[y] = tuple(new if z == cid else z for z in rot[y])
        return rho.replace(cells=cells, rot=rot, tau=_drop_tau(rho.tau, cid))
    return None


def _home_alone(rho: Rendition, cid: int) -> Optional[Rendition]:
    c = rho.cells[cid]
    g = rho.graph
    nodes = set(c.nodes)
    for e in sorted(c.edges):
        u, v = g.endpoints(e)
        if u not in nodes or v not in nodes:
            continue
        if c.degree == 2 and c.edges == {e}:
            if c.verts == {u, v}:
                continue
            # only stray isolated vertices keep it company: float them away
            cells = dict(rho.cells)
            new = rho.new_id()
            cells[cid] = Cell(c.nodes, c.edges, frozenset((u, v)))
            cells[new] = Cell((), frozenset(), frozenset(c.verts - {u, v}))
            return rho.replace(cells=cells)
        if c.edges == {e}:
            continue
        a = rho.arc_between(cid, u, v)
        na, nb = c.nodes[a], c.nodes[(a + 1) % c.degree]
        cells = dict(rho.cells)
        new = rho.new_id()
        rest = c.edges - {e}
        cells[cid] = Cell(c.nodes, frozenset(rest), c.verts)
        cells[new] = Cell((na, nb), frozenset([e]), frozenset((na, nb)))
        rot = dict(rho.rot)
        ring = list(rot[na])
        k = ring.index(cid)
        ring[k:k] = [new]
        rot[na] = tuple(ring)
        ring = list(rot[nb])
        k = ring.index(cid)
        ring[k + 1:k + 1] = [new]
        rot[nb] = tuple(ring)
        return rho.replace(cells=cells, rot=rot)
    return None


def _trim(rho: Rendition, cid: int) -> Optional[Rendition]:
    c = rho.cells[cid]
    if not c.edges:
        return None
    g = rho.graph
    touched = {x for e in c.edges for x in g.endpoints(e)}
    for m in c.nodes:
        if m in touched or len(rho.rot[m]) < 2:
            continue
        cells = dict(rho.cells)
        cells[cid] = Cell(tuple(n for n in c.nodes if n != m), c.edges, c.verts - {m})
        rot = dict(rho.rot)
        rot[m] = tuple(z for z in rot[m] if z != cid)
        return rho.replace(cells=cells, rot=rot, tau=_drop_tau(rho.tau, cid))
    return None


RULES = (("T2b", _split_flap), ("T3", _split_at_node), ("T1", _home_alone), ("T2a", _trim))


def tighten_step(rho: Rendition) -> Optional[Tuple[str, int, Rendition]]:
    for name, rule in RULES:
        for cid in sorted(rho.cells):
            out = rule(rho, cid)
            if out is not None:
                return name, cid, out
    return None


def tighten(rho: Rendition, *, log: Optional[list] = None, check: bool = False) -> Rendition:
    """Apply the rewrites until none fires; `log` collects (rule, cell)."""
    bad = validate(rho.graph, rho.boundary, rho)
    if bad:
        raise ValueError("invalid rendition: " + "; ".join(bad[:3]))
    while True:
        step = tighten_step(rho)
        if step is None:
            return rho
        name, cid, nxt = step
        if nxt.nonempty_count() < rho.nonempty_count():
            raise AssertionError(f"{name} lost a non-empty cell")
        if check:
            bad = validate(nxt.graph, nxt.boundary, nxt)
            if bad:
                raise AssertionError(f"{name} on cell {cid} broke the rendition: {bad[:3]}")
        if log is not None:
            log.append((name, cid))
        rho = nxt


def check_tight_properties(rho: Rendition) -> List[str]:
    """Violations of the home-alone, connected-nodes and no-separating-node properties."""
    g = rho.graph
    out = []
    nodes = rho.nodes
    home = rho.edge_home()
    for e, (u, v) in g.edges.items():
        if u in nodes and v in nodes:
            c = rho.cells[home[e]]
            if c.edges != {e} or c.verts != {u, v} or set(c.nodes) != {u, v}:
                out.append(f"property 1: edge {e} between nodes is not alone in cell {home[e]}")
    for cid in sorted(rho.cells):
        c = rho.cells[cid]
        if not c.edges:
            continue
        live = [n for n in c.nodes if g.degree(n) > 0]
        comps = _flap_components(rho, c)
        whole = [vs for vs, es in comps if set(live) <= vs]
        if live and not whole:
            out.append(f"property 2: nodes of cell {cid} lie in different flap components")
            continue
        if c.degree == 3 and len(live) == 3:
            for n in c.nodes:
                others = [x for x in c.nodes if x != n]
                parts = _flap_components(rho, c, removed={n})
                if not any(set(others) <= vs for vs, es in parts):
                    out.append(f"property 3: node {n!r} separates cell {cid}")
                    break
    return out
