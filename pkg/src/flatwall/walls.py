"""Elementary walls, subdivisions, subwalls, brick kinds and peg intervals.

Conventions.  The elementary wall of height r has vertices (i, j) with
row i = 0..r (row 0 on top) and column j = 0..2r+1.  Consecutive columns of a
row are joined; (i, j) and (i+1, j) are joined when j and i have the same
parity.  The three resulting degree-1 end vertices are dropped.  Brick (i, k)
has top-left corner (i, 2k + i % 2) and spans three columns.

Every wall also remembers, for each of its elementary vertices, the lattice
coordinate of that vertex in the root wall it was cut from.  All geometric
notions (left, right, up, clockwise) are taken in that root lattice, drawn
with x = column and y = -row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .graph import Multigraph, vkey

Elem = Tuple[int, int]
EKey = Tuple[Elem, Elem]

SIDE_KINDS = ("left-side-bulging", "right-side-bulging")
CORNERS = ("tl", "tr", "br", "bl")
PEG_COUNT = {"top": 1, "bottom": 1, "left-side-bulging": 2, "right-side-bulging": 2}
for _c in CORNERS:
    PEG_COUNT["bulging-corner-" + _c] = 3
    PEG_COUNT["recessed-corner-" + _c] = 2


def ekey(u: Elem, v: Elem) -> EKey:
    return (u, v) if u <= v else (v, u)


def _elementary_skeleton(r: int):
    verts = [(i, j) for i in range(r + 1) for j in range(2 * r + 2)]
    drop = {(0, 2 * r + 1), (r, 2 * r + 1) if r % 2 else (r, 0)}
    verts = [v for v in verts if v not in drop]
    vs = set(verts)
    edges = []
    for i, j in verts:
        if (i, j + 1) in vs:
            edges.append(((i, j), (i, j + 1)))
        if j % 2 == i % 2 and (i + 1, j) in vs:
            edges.append(((i, j), (i + 1, j)))
    return verts, edges


def brick_cycle_elem(a: int, b: int) -> List[Elem]:
    """Clockwise (in the standard frame) vertex cycle of brick (a, b)."""
    s = 2 * b + a % 2
    return [(a, s), (a, s + 1), (a, s + 2), (a + 1, s + 2), (a + 1, s + 1), (a + 1, s)]


@dataclass(frozen=True)
class PegInterval:
    path: Tuple  # host vertices, clockwise along D, alpha first
    brick: Tuple[int, int]
    kind: str

    @property
    def ends(self):
        return self.path[0], self.path[-1]

    @property
    def alpha(self):
        return self.path[0]

    @property
    def beta(self):
        return self.path[-1]

    @property
    def interior(self) -> Tuple:
        return self.path[1:-1]

    @property
    def terminus_slot(self):
        inner = self.interior
        return inner[(len(inner) - 1) // 2]


class Wall:
    """A subdivision of an elementary wall realized on host vertices."""

    def __init__(self, r: int, place: Dict[Elem, object], paths: Dict[EKey, Tuple], lattice: Dict[Elem, Elem],
                 flip: bool = False, anchor: Optional[Tuple[int, int]] = None, subdivisions=None):
        self.r = r
        self.place = dict(place)
        self.paths = dict(paths)
        self.lattice = dict(lattice)
        self.flip = flip
        self.anchor = anchor
        self.subdivisions = dict(subdivisions or {})
        self._graph = None
        self._boundary = None
        self._pegs = None

    # -- skeleton -------------------------------------------------------
    def elementary_vertices(self) -> List[Elem]:
        return list(self.place)

    def elementary_edges(self) -> List[EKey]:
        return list(self.paths)

    def path_of(self, u: Elem, v: Elem) -> Tuple:
        p = self.paths[ekey(u, v)]
        return p if ekey(u, v)[0] == u else tuple(reversed(p))

    def bricks(self) -> List[Tuple[int, int]]:
        return [(a, b) for a in range(self.r) for b in range(self.r)]

    def brick_cycle(self, a: int, b: int) -> List:
        """Host vertices around brick (a, b), clockwise in the drawing."""
        cyc = brick_cycle_elem(a, b)
        out = []
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            out.extend(self.path_of(u, v)[:-1])
        return out if not self.flip else [out[0]] + out[:0:-1]

    def graph(self) -> Multigraph:
        if self._graph is None:
            vs = [self.place[v] for v in self.place]
            es = []
            for p in self.paths.values():
                vs.extend(p[1:-1])
                es.extend(zip(p, p[1:]))
            self._graph = Multigraph(vs, es)
        return self._graph

    def vertex_set(self) -> frozenset:
        return frozenset(self.graph().vertices)

    def pos(self) -> Dict[object, Tuple[float, float]]:
        """Drawing coordinates (root lattice, x = 5 * column) for every host vertex."""
        out = {}
        for u in self.place:
            i, j = self.lattice[u]
            out[self.place[u]] = (5.0 * j, -5.0 * i)
        for (u, v), p in self.paths.items():
            (x0, y0), (x1, y1) = out[p[0]], out[p[-1]]
            n = len(p) - 1
            for t, w in enumerate(p[1:-1], start=1):
                out[w] = (x0 + (x1 - x0) * t / n, y0 + (y1 - y0) * t / n)
        return out

    # -- boundary -------------------------------------------------------
    def boundary(self) -> List:
        """The boundary cycle D, clockwise, starting at the top-left corner."""
        if self._boundary is None:
            count: Dict[EKey, int] = {}
            for a, b in self.bricks():
                cyc = brick_cycle_elem(a, b)
                for u, v in zip(cyc, cyc[1:] + cyc[:1]):
                    count[ekey(u, v)] = count.get(ekey(u, v), 0) + 1
            bedges = [k for k, c in count.items() if c == 1]
            nbr: Dict[Elem, List[Elem]] = {}
            for u, v in bedges:
                nbr.setdefault(u, []).append(v)
                nbr.setdefault(v, []).append(u)
            start = (0, 0)
            cyc = [start, (0, 1)]
            while True:
                a, b = nbr[cyc[-1]]
                nxt = a if a != cyc[-2] else b
                if nxt == start:
                    break
                cyc.append(nxt)
            host = []
            for u, v in zip(cyc, cyc[1:] + cyc[:1]):
                host.extend(self.path_of(u, v)[:-1])
            pos = self.pos()
            if _signed_area([pos[v] for v in host]) > 0:
                host = [host[0]] + host[:0:-1]
            k = host.index(self.corners()["tl"])
            self._boundary = host[k:] + host[:k]
        return list(self._boundary)

    def corners(self) -> Dict[str, object]:
        """The four corner vertices of the wall, by physical position."""
        r = self.r
        std = {"tl": (0, 0), "tr": (0, 2 * r),
               "bl": (r, 0) if (r, 0) in self.place else (r, 1),
               "br": (r, 2 * r + 1) if (r, 2 * r + 1) in self.place else (r, 2 * r)}
        if self.flip:
            std = {"tl": std["tr"], "tr": std["tl"], "bl": std["br"], "br": std["bl"]}
        return {k: self.place[v] for k, v in std.items()}

    # -- bricks ---------------------------------------------------------
    def classify_brick(self, a: int, b: int) -> str:
        r = self.r
        if not (0 <= a < r and 0 <= b < r):
            raise ValueError(f"brick {(a, b)} outside a height-{r} wall")
        kind = _std_kind(r, a, b)
        if self.flip:
            kind = _mirror_kind(kind)
        return kind

    def peg_intervals(self) -> List[PegInterval]:
        if self.r < 2:
            raise ValueError("peg intervals need height at least 2")
        if self._pegs is None:
            g = self.graph()
            D = self.boundary()
            n = len(D)
            deg3 = [i for i, v in enumerate(D) if g.degree(v) == 3]
            branch = set(self.place.values())
            brick_sets = {br: set(self.brick_cycle(*br)) for br in self.bricks()}
            out = []
            for t, i in enumerate(deg3):
                j = deg3[(t + 1) % len(deg3)]
                length = (j - i) % n
                path = tuple(D[(i + s) % n] for s in range(length + 1))
                # a subdivided single elementary edge is not an interval
                if not any(v in branch for v in path[1:-1]):
                    continue
                owner = [br for br, vs in brick_sets.items() if all(v in vs for v in path)]
                assert len(owner) == 1, (path, owner)
                out.append(PegInterval(path, owner[0], self.classify_brick(*owner[0])))
            self._pegs = out
        return list(self._pegs)

    def to_json(self) -> str:
        subs = {f"{u[0]},{u[1]}-{v[0]},{v[1]}": k for (u, v), k in sorted(self.subdivisions.items())}
        return json.dumps({"r": self.r, "subdivisions": subs, "anchor": list(self.anchor) if self.anchor else None},
                          sort_keys=True)

    def to_dot(self) -> str:
        return self.graph().to_dot("wall", pos=self.pos())


def _signed_area(pts) -> float:
    s = 0.0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        s += x0 * y1 - x1 * y0
    return s / 2


def _std_kind(r: int, a: int, b: int) -> str:
    last = r - 1
    if (a, b) == (0, 0):
        return "bulging-corner-tl"
    if (a, b) == (0, last):
        return "recessed-corner-tr"
    if (a, b) == (last, 0):
        return "bulging-corner-bl" if last % 2 == 0 else "recessed-corner-bl"
    if (a, b) == (last, last):
        return "bulging-corner-br" if last % 2 == 1 else "recessed-corner-br"
    if a == 0:
        return "top"
    if a == last:
        return "bottom"
    if b == 0:
        return "left-side-bulging" if a % 2 == 0 else "recessed-side"
    if b == last:
        return "right-side-bulging" if a % 2 == 1 else "recessed-side"
    return "interior"


def _mirror_kind(kind: str) -> str:
    swap = {"tl": "tr", "tr": "tl", "bl": "br", "br": "bl"}
    if kind.startswith(("bulging-corner-", "recessed-corner-")):
        head, pos = kind.rsplit("-", 1)
        return f"{head}-{swap[pos]}"
    return {"left-side-bulging": "right-side-bulging", "right-side-bulging": "left-side-bulging"}.get(kind, kind)


def elementary_wall(r: int) -> Wall:
    if r < 1:
        raise ValueError("wall height must be at least 1")
    verts, edges = _elementary_skeleton(r)
    place = {v: v for v in verts}
    paths = {ekey(u, v): ekey(u, v) for u, v in edges}
    return Wall(r, place, paths, {v: v for v in verts})


def classify_brick(w: Wall, b: Tuple[int, int]) -> str:
    return w.classify_brick(*b)


def boundary(w: Wall) -> List:
    return w.boundary()


def peg_intervals(w: Wall) -> List[PegInterval]:
    return w.peg_intervals()


def subdivide(w: Wall, plan: Dict) -> Wall:
    """Insert plan[e] new vertices into the path replacing elementary edge e."""
    paths = dict(w.paths)
    subs = dict(w.subdivisions)
    for e, k in plan.items():
        key = ekey(*e)
        if key not in paths:
            raise KeyError(f"{e} is not an elementary edge")
        if k <= 0:
            continue
        p = paths[key]
        new = tuple(("s", p[0], p[1], t) for t in range(k))
        paths[key] = (p[0],) + new + p[1:]
        subs[key] = subs.get(key, 0) + k
    return Wall(w.r, w.place, paths, w.lattice, w.flip, w.anchor, subs)


def subwall(w: Wall, anchor: Tuple[int, int], height: int) -> Wall:
    """The height-`height` subwall whose top-left brick (in w's frame) is `anchor`."""
    i0, k0 = anchor
    if height < 1 or i0 < 0 or k0 < 0 or i0 + height > w.r or k0 + height > w.r:
        raise ValueError(f"subwall at {anchor} of height {height} does not fit in height {w.r}")
    verts, edges = _elementary_skeleton(height)
    flip = i0 % 2 == 1
    if flip:
        def to_parent(v):
            a, j = v
            return (i0 + a, 2 * k0 + 2 * height + 1 - j)
    else:
        def to_parent(v):
            a, j = v
            return (i0 + a, 2 * k0 + j)
    place = {}
    lattice = {}
    for v in verts:
        pv = to_parent(v)
        if pv not in w.place:
            raise ValueError(f"subwall vertex {pv} missing from parent")
        place[v] = w.place[pv]
        lattice[v] = w.lattice[pv]
    paths = {}
    for u, v in edges:
        k = ekey(u, v)
        paths[k] = w.path_of(to_parent(k[0]), to_parent(k[1]))
    return Wall(height, place, paths, lattice, flip != w.flip, anchor)


def subwall_bricks(w: Wall, sub: Wall) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """Map each brick of `sub` (its own frame) to the brick of `w` it occupies."""
    out = {}
    wb = {frozenset(w.brick_cycle(*b)): b for b in w.bricks()}
    for b in sub.bricks():
        out[b] = wb[frozenset(sub.brick_cycle(*b))]
    return out


# ---------------------------------------------------------------- pegging paths

def pegging_paths(w: Wall, I: PegInterval, m=None):
    """The two pegging paths of a peg interval, from terminus m to omega."""
    if I.kind in ("interior", "recessed-side"):
        raise ValueError(f"brick kind {I.kind} carries no peg interval")
    if m is None:
        m = I.terminus_slot
    if m not in I.interior:
        raise ValueError("terminus must be an interior vertex of the interval")
    D = set(w.boundary())
    cyc = w.brick_cycle(*I.brick)
    # the brick cycle with the interval's interior removed, read from beta to alpha
    n = len(cyc)
    bi = cyc.index(I.beta)
    forward = [cyc[(bi + s) % n] for s in range(n)]
    if forward[1] in I.interior:
        forward = [forward[0]] + forward[:0:-1]
    K = forward[: forward.index(I.alpha) + 1]
    omega_idx = next(i for i, v in enumerate(K) if v not in D)
    k = I.path.index(m)
    s_alpha = list(reversed(I.path[: k + 1])) + list(reversed(K[omega_idx:]))[1:]
    s_beta = list(I.path[k:]) + K[1: omega_idx + 1]
    return s_alpha, s_beta


# ---------------------------------------------------------------- access paths

class _Lattice:
    """The elementary skeleton of a wall addressed by root-lattice coordinates."""

    def __init__(self, w: Wall):
        self.w = w
        self.at = {w.lattice[v]: v for v in w.place}
        self.adj: Dict[Elem, set] = {c: set() for c in self.at}
        for u, v in w.paths:
            a, b = w.lattice[u], w.lattice[v]
            self.adj[a].add(b)
            self.adj[b].add(a)
        D = w.boundary()
        inv = {w.place[v]: w.lattice[v] for v in w.place}
        self.boundary = [inv[v] for v in D if v in inv]
        self.on_boundary = set(self.boundary)
        self.corner = {k: inv[v] for k, v in w.corners().items()}

    def realize(self, coords: List[Elem]) -> List:
        out = [self.w.place[self.at[coords[0]]]]
        for a, b in zip(coords, coords[1:]):
            out.extend(self.w.path_of(self.at[a], self.at[b])[1:])
        return out

    def along_boundary(self, v: Elem, corner: str) -> List[Elem]:
        """Boundary arc from v to the named corner avoiding the other corners."""
        B = self.boundary
        n = len(B)
        i, j = B.index(v), B.index(self.corner[corner])
        others = {self.corner[c] for c in CORNERS if c != corner}
        for step in (1, -1):
            arc = [B[(i + step * s) % n] for s in range(((j - i) * step) % n + 1)]
            if not others & set(arc[:-1]) - {v}:
                return arc
        raise ValueError("no corner-free boundary arc")


def _physical_brick_corners(w: Wall, b) -> Dict[str, Elem]:
    cyc = brick_cycle_elem(*b)
    coords = [w.lattice[v] for v in cyc]
    top = min(c[0] for c in coords)
    bot = max(c[0] for c in coords)
    tops = sorted(c for c in coords if c[0] == top)
    bots = sorted(c for c in coords if c[0] == bot)
    return {"tl": tops[0], "tr": tops[-1], "bl": bots[0], "br": bots[-1]}


def _interval_lattice_interior(w: Wall, I: PegInterval) -> set:
    inv = {w.place[v]: w.lattice[v] for v in w.place}
    return {inv[v] for v in I.interior if v in inv}


def access_route(L: _Lattice, inner: Wall, I: PegInterval, stop=None) -> List[Elem]:
    """Lattice route for one peg interval of `inner`, following the kind of its brick.

    The route starts inside I and runs until it meets the boundary of the
    outer wall; there it continues to the proper corner, or hands over to
    `stop(route)` when given.
    """
    kind = I.kind
    bc = _physical_brick_corners(inner, I.brick)
    inside = _interval_lattice_interior(inner, I)
    if kind in ("top", "bottom"):
        up = -1 if kind == "top" else 1
        mids = sorted(inside)
        start = mids[len(mids) // 2]
        if (start[0] + up, start[1]) not in L.adj.get(start, ()):
            start = next(c for c in mids if (c[0] + up, c[1]) in L.adj.get(c, ()))
        route = [start]
        cur = start
        side = 1
        while True:
            nxt = (cur[0] + up, cur[1])
            if nxt not in L.adj[cur]:
                nxt = (cur[0], cur[1] + side)
                side = -side
            route.append(nxt)
            cur = nxt
            if cur in L.on_boundary:
                break
        corner = "tr" if kind == "top" else "br"
    else:
        if kind in ("right-side-bulging",) or kind.endswith("corner-tr"):
            start, dx, corner = bc["tr"], 1, "tr"
        elif kind in ("left-side-bulging",) or kind.endswith("corner-bl"):
            start, dx, corner = bc["bl"], -1, "bl"
        elif kind.endswith("corner-br"):
            start, dx, corner = bc["br"], 1, "br"
        elif kind.endswith("corner-tl"):
            start, dx, corner = bc["tl"], -1, "tl"
        else:
            raise ValueError(f"no access route for kind {kind}")
        assert start in inside, (kind, start)
        route = [start]
        cur = start
        while cur not in L.on_boundary or cur == start:
            cur = (cur[0], cur[1] + dx)
            route.append(cur)
    if stop is not None:
        return route + stop(route)[1:]
    return route + L.along_boundary(route[-1], corner)[1:]


def corner_access_paths(outer: Wall, inner: Wall) -> Dict[Tuple, List]:
    """Access paths R_I from the corners of `outer` to every peg interval of `inner`."""
    outer_D = set(outer.boundary())
    if outer_D & inner.vertex_set():
        raise ValueError("inner wall touches the outer boundary")
    L = _Lattice(outer)
    for v in inner.place:
        if inner.lattice[v] not in L.at:
            raise ValueError("inner wall is not drawn in the outer wall's lattice")
    out = {}
    for I in inner.peg_intervals():
        out[I.path] = L.realize(access_route(L, inner, I))
    return out
