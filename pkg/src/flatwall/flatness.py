"""Flat walls: certificates, verifiers, search, and the constructive engine.

A certificate is a separation (A, B) together with a cyclically ordered
vertex set omega.  Two acceptance rules are offered.  The relaxed rule asks
omega to hit the interior of every peg interval; the strict rule takes omega
to be all of A & B and asks for a full quota of pegs on every border brick.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .graph import Multigraph, Separation, is_connected_set, verify_separation, vkey, vsorted, _to_jsonable, _from_jsonable
from .rendition import STAR, Cell, Rendition, validate
from .society import Society, is_rural
from .tighten import tighten
from .tracks import (Walk, _segment, atomic_decomposition, clockwise, disk_partition, is_grounded, is_proper,
                     reroute_cycle, side_sets, track)
from .walls import PEG_COUNT, PegInterval, Wall, pegging_paths


@dataclass(frozen=True)
class FlatnessCertificate:
    A: FrozenSet
    B: FrozenSet
    omega: Tuple
    peg_choice: Optional[FrozenSet] = None
    witness: Optional[Rendition] = field(default=None, compare=False)

    @property
    def separation(self) -> Separation:
        return Separation(frozenset(self.A), frozenset(self.B))

    def to_json(self) -> str:
        doc = {"A": [_to_jsonable(v) for v in vsorted(self.A)],
               "B": [_to_jsonable(v) for v in vsorted(self.B)],
               "omega": [_to_jsonable(v) for v in self.omega],
               "pegChoice": None if self.peg_choice is None else [_to_jsonable(v) for v in vsorted(self.peg_choice)]}
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text) -> "FlatnessCertificate":
        doc = json.loads(text) if isinstance(text, str) else text
        conv = lambda xs: [_from_jsonable(v) for v in xs]
        pc = doc.get("pegChoice")
        return cls(frozenset(conv(doc["A"])), frozenset(conv(doc["B"])), tuple(conv(doc["omega"])),
                   None if pc is None else frozenset(conv(pc)))


def _d_index(w: Wall) -> Dict:
    return {v: i for i, v in enumerate(w.boundary())}


def order_along(w: Wall, vs: Iterable) -> Tuple:
    """Vertices of the wall boundary sorted in its clockwise order."""
    idx = _d_index(w)
    return tuple(sorted(vs, key=lambda v: idx[v]))


def _cyclically_sorted(seq: Sequence, idx: Dict) -> bool:
    pos = [idx[v] for v in seq]
    if len(pos) <= 2:
        return True
    k = pos.index(min(pos))
    rot = pos[k:] + pos[:k]
    return all(a < b for a, b in zip(rot, rot[1:]))


def _common_checks(g: Multigraph, w: Wall, cert: FlatnessCertificate, out: List[str]):
    A, B = set(cert.A), set(cert.B)
    if not verify_separation(g, cert.separation):
        out.append("separation: (A, B) is not a separation of G")
    missing = w.vertex_set() - B
    if missing:
        out.append(f"condition 1: {len(missing)} wall vertices lie outside B")
    D = set(w.boundary())
    if not (A & B) <= D:
        out.append("condition 2: A and B meet off the wall boundary")


def verify_flat_new(g: Multigraph, w: Wall, cert: FlatnessCertificate) -> List[str]:
    """Failures of the relaxed flatness rule; empty when the certificate is good."""
    out: List[str] = []
    _common_checks(g, w, cert, out)
    A, B = set(cert.A), set(cert.B)
    om = list(cert.omega)
    idx = _d_index(w)
    if not set(om) <= A & B:
        out.append("omega: not contained in A and B")
    if any(v not in idx for v in om) or not _cyclically_sorted(om, idx):
        out.append("omega: order is not the clockwise boundary order")
        return out
    for I in w.peg_intervals():
        if not set(I.interior) & set(om):
            out.append(f"condition 3: omega misses the interior of the {I.kind} interval at brick {I.brick}")
    ok, _ = is_rural(g.induced(B), om, with_witness=False)
    if not ok:
        out.append("condition 4: (G[B], omega) is not rural")
    if cert.witness is not None:
        bad = validate(g.induced(B), om, cert.witness)
        if bad:
            out.append("witness: " + bad[0])
    return out


def peg_quota_failures(w: Wall, pegs: Iterable) -> List[str]:
    pegs = set(pegs)
    out = []
    for I in w.peg_intervals():
        need = PEG_COUNT[I.kind]
        have = len(pegs & set(I.interior))
        if have < need:
            out.append(f"peg choice: {I.kind} interval at brick {I.brick} has {have} of {need} pegs")
    return out


def verify_flat_old(g: Multigraph, w: Wall, cert: FlatnessCertificate) -> List[str]:
    """Failures of the strict rule, where the whole interface is the boundary of the society."""
    out: List[str] = []
    _common_checks(g, w, cert, out)
    A, B = set(cert.A), set(cert.B)
    idx = _d_index(w)
    inter = A & B
    if not inter <= set(idx):
        return out
    out.extend(peg_quota_failures(w, inter))
    om = order_along(w, inter)
    ok, _ = is_rural(g.induced(B), om, with_witness=False)
    if not ok:
        out.append("rurality: (G[B], A and B) is not rural")
    return out


# ---------------------------------------------------------------- search

@dataclass
class SearchResult:
    status: str               # found, absent, unknown
    certificate: Optional[FlatnessCertificate]
    tried: int
    note: str = ""


def canonical_sides(g: Multigraph, w: Wall, S: Iterable) -> Tuple[FrozenSet, FrozenSet]:
    """Smallest B with interface S holding the wall, and the matching A."""
    S = set(S)
    keep = w.vertex_set() - S
    B = set(S)
    seen = set(S)
    for v in vsorted(keep):
        if v in seen:
            continue
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            B.add(x)
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    A = (set(g.vertices) - B) | S
    return frozenset(A), frozenset(B)


def _peg_preference(g: Multigraph, I: PegInterval) -> List:
    mid = len(I.interior) // 2
    return sorted(I.interior, key=lambda v: (g.degree(v), abs(I.interior.index(v) - mid), vkey(v)))


def search_certificate(g: Multigraph, w: Wall, definition: str = "new", budget: int = 10_000,
                       extra_interface: int = 0) -> SearchResult:
    """Look for a flatness certificate by enumeration.

    New rule: taking the whole boundary as interface loses nothing (B only
    shrinks to an induced subgraph, and dropping boundary vertices from a
    rural society keeps it rural), and one peg per interval suffices, so the
    search ranges over one peg per interval.

    Old rule: the interface is an exact peg quota per interval plus up to
    `extra_interface` further boundary vertices, each with its smallest B.
    """
    D = w.boundary()
    intervals = w.peg_intervals()
    tried = 0
    if definition == "new":
        A, B = canonical_sides(g, w, D)
        GB = g.induced(B)
        choices = [_peg_preference(g, I) for I in intervals]
        for pick in itertools.product(*choices):
            if tried >= budget:
                return SearchResult("unknown", None, tried, "budget exhausted")
            tried += 1
            om = order_along(w, set(pick))
            ok, wit = is_rural(GB, om)
            if ok:
                cert = FlatnessCertificate(A, B, om, frozenset(pick), wit)
                return SearchResult("found", cert, tried)
        return SearchResult("absent", None, tried, "every one-peg-per-interval choice fails")
    if definition != "old":
        raise ValueError("definition must be 'old' or 'new'")
    pools = [list(itertools.combinations(sorted(I.interior, key=vkey), PEG_COUNT[I.kind])) for I in intervals]
    others = [v for v in D]
    for pick in itertools.product(*pools):
        base = set().union(*map(set, pick))
        rest = [v for v in others if v not in base]
        for k in range(extra_interface + 1):
            for more in itertools.combinations(rest, k):
                if tried >= budget:
                    return SearchResult("unknown", None, tried, "budget exhausted")
                tried += 1
                S = base | set(more)
                A, B = canonical_sides(g, w, S)
                cert = FlatnessCertificate(A, B, order_along(w, S), frozenset(base))
                if not verify_flat_old(g, w, cert):
                    return SearchResult("found", cert, tried)
    return SearchResult("absent", None, tried,
                        f"no interface of exact peg quotas plus {extra_interface} boundary vertices works")


# ---------------------------------------------------------------- the engine

@dataclass
class EngineResult:
    rho: Rendition
    E: Walk
    A: FrozenSet
    B: FrozenSet
    omega: Tuple
    moves: List[Tuple[str, int]]
    mirrored: bool


def mirror(rho: Rendition) -> Rendition:
    """The same rendition seen from the other side of the disk.

    Node rings and cell boundaries reverse; the arc indices of two-node cells
    still name the same physical arcs, so the tie-breaker carries over.
    """
    cells = {cid: Cell(tuple(reversed(c.nodes)), c.edges, c.verts) for cid, c in rho.cells.items()}
    rot = {n: tuple(reversed(r)) for n, r in rho.rot.items()}
    return Rendition(rho.graph, tuple(reversed(rho.boundary)), cells, rot, rho.tau)


def _check_hypotheses(g: Multigraph, C, W: Iterable, D: Walk, paths: Sequence[Sequence]):
    if len(C) < 4:
        raise ValueError("hypothesis: the society boundary needs at least 4 vertices")
    if not D.closed or not D.is_simple() or not D.check(g):
        raise ValueError("hypothesis: D must be a simple directed cycle of G")
    inner = set(W) - set(D.vertices)
    if not inner or not is_connected_set(g, inner):
        raise ValueError("hypothesis 1: W minus V(D) is not connected")
    if len(paths) != 4:
        raise ValueError("hypothesis 2: exactly four paths are needed")
    cset, dset = set(C), set(D.vertices)
    for i, p in enumerate(paths):
        if len(set(p)) != len(p) or any(not g.edges_between(a, b) for a, b in zip(p, p[1:])):
            raise ValueError(f"hypothesis 2: path {i + 1} is not a simple path of G")
        if p[0] not in cset or p[-1] not in inner:
            raise ValueError(f"hypothesis 2: path {i + 1} does not run from C to W minus V(D)")
        hits = [k for k, v in enumerate(p) if v in dset]
        if not hits or hits != list(range(hits[0], hits[-1] + 1)):
            raise ValueError(f"hypothesis 2: path {i + 1} meets D in something other than one path")
        pos = {v: k for k, v in enumerate(D.vertices)}
        n = len(D.vertices)
        for a, b in zip(hits, hits[1:]):
            if (pos[p[a]] - pos[p[b]]) % n not in (1, n - 1):
                raise ValueError(f"hypothesis 2: path {i + 1} leaves D between two of its vertices")
    for i in range(4):
        for j in range(i + 1, 4):
            common = set(paths[i][:-1]) & set(paths[j][:-1])
            if common:
                raise ValueError(f"hypothesis 2: paths {i + 1} and {j + 1} share a vertex off W minus V(D)")


def _b_content(E: Walk, rho: Rendition, D: Walk, part) -> Tuple[FrozenSet, FrozenSet]:
    vs = set(D.vertices) & set(E.vertices)
    es = set()
    for c in part.inside:
        vs |= rho.cells[c].verts
        es |= rho.cells[c].edges
    return frozenset(vs), frozenset(es)


def _next_move(E: Walk, rho: Rendition, part) -> Optional[Tuple[str, int]]:
    on = set(E.vertices)
    for cid in sorted(part.border):
        if rho.cells[cid].degree == 2:
            return "M1", cid
    for cid in sorted(part.border):
        c = rho.cells[cid]
        if c.degree == 3 and set(c.nodes) <= on:
            return "M2", cid
    for cid in sorted(part.outside - part.border):
        c = rho.cells[cid]
        if c.degree == 2 and len(c.edges) == 1:
            (e,) = tuple(c.edges)
            if set(rho.graph.endpoints(e)) <= on and e not in E.edges:
                return "M3", cid
    return None


def choose_pegs(rho: Rendition, D: Walk, border_both: Iterable[int]) -> FrozenSet:
    """One non-node vertex of D per shared border cell, the first met clockwise."""
    nodes = rho.nodes
    P = set()
    for cid in sorted(border_both):
        verts = rho.cells[cid].verts
        for v in D.vertices:
            if v in verts and v not in nodes:
                P.add(v)
                break
    return frozenset(P)


def lemma51_engine(g: Multigraph, C: Sequence, W: Iterable, D: Walk, paths: Sequence[Sequence],
                   *, check: bool = True) -> EngineResult:
    """Grow a proper cycle E around D and read off the separation it cuts.

    Starts from E = D on a tight rendition turned so that D runs clockwise,
    then applies the three enlarging moves until none is available.
    """
    C = list(C)
    W = set(W)
    _check_hypotheses(g, C, W, D, paths)
    ok, rho = is_rural(g, C)
    if not ok:
        raise ValueError("hypothesis: the society is not rural")
    rho = tighten(rho)
    if not is_grounded(D, rho):
        raise AssertionError("D is not grounded in the tight rendition")
    part_d = disk_partition(track(D, rho), rho)
    mirrored = False
    if not clockwise(D, rho, part_d):
        rho = mirror(rho)
        mirrored = True
        part_d = disk_partition(track(D, rho), rho)
        if not clockwise(D, rho, part_d):
            raise AssertionError("mirroring did not turn D clockwise")
    E = D
    part = part_d
    size = _b_content(E, rho, D, part)
    moves: List[Tuple[str, int]] = []
    while True:
        mv = _next_move(E, rho, part)
        if mv is None:
            break
        E, rho = reroute_cycle(E, rho, mv)
        part = disk_partition(track(E, rho), rho)
        grown = _b_content(E, rho, D, part)
        if not (size[0] <= grown[0] and size[1] <= grown[1]) or grown == size:
            raise AssertionError(f"move {mv} did not enlarge B")
        size = grown
        moves.append(mv)
    A, B = side_sets(E, rho, D.vertices, part)
    part_d = disk_partition(track(D, rho), rho)
    both = part.border & part_d.border
    P = choose_pegs(rho, D, both)
    nE = [v for v in E.vertices if v in rho.nodes]
    idx = {v: i for i, v in enumerate(D.vertices)}
    omega = tuple(sorted(set(nE) | P, key=lambda v: idx[v]))
    res = EngineResult(rho, E, frozenset(A), frozenset(B), omega, moves, mirrored)
    if check:
        bad = engine_failures(g, W, D, res)
        if bad:
            raise AssertionError("engine postcondition failed: " + "; ".join(bad))
    return res


def engine_failures(g: Multigraph, W: Iterable, D: Walk, res: EngineResult) -> List[str]:
    """Machine check of the engine's conclusions; empty when all hold."""
    rho, E = res.rho, res.E
    out = []
    nodes = rho.nodes
    part_e = disk_partition(track(E, rho), rho)
    part_d = disk_partition(track(D, rho), rho)
    if not clockwise(D, rho, part_d):
        out.append("D does not run clockwise")
    if not clockwise(E, rho, part_e):
        out.append("E does not run clockwise")
    if not is_proper(E, rho, part_e):
        out.append("E is not proper")
    nE = [v for v in E.vertices if v in nodes]
    nD = [v for v in D.vertices if v in nodes]
    idx = {v: i for i, v in enumerate(D.vertices)}
    if not set(nE) <= set(nD):
        out.append("N(E) is not inside N(D)")
    elif not _cyclically_sorted(nE, idx):
        out.append("N(E) and N(D) disagree on circular order")
    else:
        d_next = {m: nD[(i + 1) % len(nD)] for i, m in enumerate(nD)}
        for i, m in enumerate(nE):
            n = nE[(i + 1) % len(nE)]
            if d_next.get(m) == n and _segment(E, m, n) != _segment(D, m, n):
                out.append(f"E and D differ between consecutive nodes {m!r} and {n!r}")
    if not part_d.inside <= part_e.inside:
        out.append("inside of E does not contain inside of D")
    A, B = set(res.A), set(res.B)
    if not verify_separation(g, Separation(frozenset(A), frozenset(B))):
        out.append("(A, B) is not a separation")
    if not set(W) <= B:
        out.append("V(W) is not inside B")
    if not set(res.omega) <= A & B:
        out.append("omega is not inside A and B")
    if not A & B <= set(D.vertices):
        out.append("A and B meet off D")
    ok, _ = is_rural(g.induced(B), res.omega, with_witness=False)
    if not ok:
        out.append("(G[B], omega) is not rural")
    return out


# ---------------------------------------------------------------- walls in rural societies

def _oriented_access(R: Sequence, C: set) -> List:
    R = list(R)
    if R[0] in C:
        return R
    if R[-1] in C:
        return R[::-1]
    raise ValueError("access path does not end on the society boundary")


def _corner_paths(w: Wall, access: Dict[Tuple, Sequence], C: set) -> List[List]:
    """P_i for the four corner intervals: access path, then the alpha pegging path."""
    wv = w.vertex_set()
    out, used = [], []
    for I in w.peg_intervals():
        R = access.get(I.path)
        if R is None:
            if "corner" in I.kind:
                raise ValueError(f"no access path for the {I.kind} interval")
            continue
        R = _oriented_access(R, C)
        m = R[-1]
        if m not in I.interior or set(R) & wv != {m}:
            raise ValueError(f"access path for the {I.kind} interval meets the wall off its terminus")
        if "corner" not in I.kind:
            continue
        for other in used:
            if set(other) & set(R):
                raise ValueError("access paths of two corner intervals intersect")
        used.append(R)
        s_alpha, _ = pegging_paths(w, I, m)
        out.append(R + s_alpha[1:])
    if len(out) != 4:
        raise ValueError(f"expected four corner intervals, found {len(out)}")
    return out


def prove_wall_flat(g: Multigraph, C: Sequence, w: Wall, access: Dict[Tuple, Sequence]) -> FlatnessCertificate:
    """Certificate that a wall of a rural society is flat.

    `access` maps each peg interval (by its path) to a path between the
    society boundary and a vertex of the interval's interior that otherwise
    avoids the wall.
    """
    paths = _corner_paths(w, access, set(C))
    D = Walk.from_vertices(g, w.boundary(), closed=True)
    res = lemma51_engine(g, C, w.vertex_set(), D, paths)
    ok, wit = is_rural(g.induced(res.B), res.omega)
    cert = FlatnessCertificate(res.A, res.B, res.omega, frozenset(res.omega), wit)
    bad = verify_flat_new(g, w, cert)
    if bad:
        raise AssertionError("certificate does not verify: " + "; ".join(bad))
    return cert


def _continue_to_peg(W: Wall, v, omega: set, avoid: set) -> List:
    """From a boundary vertex v of W along a peg interval of W to a vertex of omega."""
    if v in omega:
        return [v]
    cands = [I for I in W.peg_intervals() if v in I.path and set(I.interior) & omega]
    # an end of the interval first, then the brick further left
    cands.sort(key=lambda I: (v not in I.ends, I.brick[1], I.brick[0]))
    for I in cands:
        k = I.path.index(v)
        for step in (1, -1):
            walk = [v]
            j = k
            while 0 <= j + step < len(I.path):
                j += step
                x = I.path[j]
                if x in avoid:
                    break
                walk.append(x)
                if x in omega and x in I.interior:
                    return walk
    raise ValueError(f"no peg of omega reachable from {v!r} along the boundary")


def subwall_routes(g: Multigraph, W: Wall, omega: Sequence, Wsub: Wall) -> Dict[Tuple, List]:
    """Paths from omega to the peg intervals of a subwall, following the wall's rows."""
    from .walls import _Lattice, access_route
    om = set(omega)
    sub_v = Wsub.vertex_set()
    L = _Lattice(W)
    out = {}
    for I in Wsub.peg_intervals():
        hit = [v for v in I.interior if v in om]
        if hit:
            out[I.path] = [hit[(len(hit) - 1) // 2]]
            continue
        lat = access_route(L, Wsub, I, stop=lambda route: [route[-1]])
        head = L.realize(lat)
        # the route may run along the subwall before leaving it; keep the last visit
        k = max(i for i, x in enumerate(head) if x in sub_v)
        head = head[k:]
        tail = _continue_to_peg(W, head[-1], om, sub_v | set(head[:-1]))
        R = head + tail[1:]
        out[I.path] = R[::-1]
    return out


def subwall_flatness(g: Multigraph, W: Wall, cert: FlatnessCertificate, Wsub: Wall) -> FlatnessCertificate:
    """Flatness of a subwall of height at least 3, derived from a certificate for W."""
    if Wsub.r < 3:
        raise ValueError("subwall height must be at least 3")
    bad = verify_flat_new(g, W, cert)
    if bad:
        raise ValueError("certificate for W does not verify: " + bad[0])
    GB = g.induced(cert.B)
    omega = list(cert.omega)
    access = subwall_routes(GB, W, omega, Wsub)
    paths = _corner_paths(Wsub, access, set(omega))
    D = Walk.from_vertices(GB, Wsub.boundary(), closed=True)
    res = lemma51_engine(GB, omega, Wsub.vertex_set(), D, paths)
    A = frozenset(cert.A | res.A)
    B = frozenset(cert.B & res.B)
    ok, wit = is_rural(g.induced(B), res.omega)
    out = FlatnessCertificate(A, B, res.omega, frozenset(res.omega), wit)
    bad = verify_flat_new(g, Wsub, out)
    if bad:
        raise AssertionError("subwall certificate does not verify: " + "; ".join(bad))
    return out
