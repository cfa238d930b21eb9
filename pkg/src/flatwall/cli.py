"""Command-line entry point.

Exit status: 0 verified or constructed, 1 refuted or absent, 2 unknown
(budget ran out), 64 usage or input error.  With --json every report is a
single JSON document with sorted keys, so identical runs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Dict, List, Optional, Tuple

from . import __version__
from .counterexample import (BRICK_KINDS, CounterwallSpec, build_counterwall, check_no_k6, counterwall_dot,
                             counterwall_pos, exhibit_cross, reproduce_appendix, sub_wall, wall_of,
                             window_intervals, window_peg_choices)
from .flatness import (FlatnessCertificate, engine_failures, lemma51_engine, order_along, prove_wall_flat,
                       search_certificate, subwall_flatness, verify_flat_new, verify_flat_old, _corner_paths)
from .graph import Multigraph, _from_jsonable, _to_jsonable, vsorted
from .hosts import host_instance
from .rendition import Rendition
from .society import find_cross, is_rural
from .tighten import check_tight_properties, tighten
from .tracks import Walk
from .walls import Wall, elementary_wall, ekey, subdivide, subwall

OK, NO, UNKNOWN, USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(USAGE)


# ---------------------------------------------------------------- instance files

def _j(v):
    return _to_jsonable(v)


def _jl(vs):
    return [_j(v) for v in vs]


def load_doc(path: str) -> Dict[str, Any]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}")


def _need(doc, key, path):
    if key not in doc:
        raise UsageError(f"{path}: missing field {key!r}")
    return doc[key]


def _plan_from_json(subs: Dict[str, int]) -> Dict:
    plan = {}
    for key, k in subs.items():
        a, b = key.split("-")
        u = tuple(int(x) for x in a.split(","))
        v = tuple(int(x) for x in b.split(","))
        plan[ekey(u, v)] = k
    return plan


def wall_from_recipe(recipe: Dict[str, Any]) -> Tuple[Wall, Optional[Dict]]:
    """Rebuild a wall (and access paths, for hosts) from its recipe."""
    kind = recipe.get("kind")
    access = None
    if kind == "elementary":
        w = elementary_wall(recipe["r"])
        if recipe.get("subdivisions"):
            w = subdivide(w, _plan_from_json(recipe["subdivisions"]))
    elif kind == "counterwall":
        spec = CounterwallSpec(recipe["R"], {tuple(map(int, k.split(","))): v
                                             for k, v in recipe.get("kinds", {}).items()})
        w = wall_of(build_counterwall(spec))
    elif kind == "host":
        inst = _host_from_recipe(recipe)
        return inst.inner, inst.access
    else:
        raise UsageError(f"unknown wall recipe kind {kind!r}")
    sub = recipe.get("sub")
    if sub:
        w = subwall(w, tuple(sub["anchor"]), sub["r"])
    return w, access


def _host_from_recipe(recipe):
    return host_instance(recipe["outer"], recipe["inner"], tuple(recipe["anchor"]), seed=recipe["seed"],
                         subdivisions=recipe.get("subdivisions", 0), n_chords=recipe.get("chords", 3),
                         n_gadgets=recipe.get("gadgets", 3), extra_boundary=recipe.get("extraBoundary", 0))


def read_instance(path: str):
    doc = load_doc(path)
    try:
        g = Multigraph.from_json(_need(doc, "graph", path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: field 'graph': {exc}")
    boundary = [_from_jsonable(v) for v in doc.get("boundary", [])]
    for v in boundary:
        if v not in g:
            raise UsageError(f"{path}: field 'boundary': {v!r} is not a vertex")
    wall, access = (None, None)
    if "wall" in doc:
        try:
            wall, access = wall_from_recipe(doc["wall"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{path}: field 'wall': {exc}")
        missing = wall.vertex_set() - set(g.vertices)
        if missing:
            raise UsageError(f"{path}: field 'wall': {len(missing)} wall vertices are not in the graph")
    return doc, g, boundary, wall, access


def _instance_doc(g: Multigraph, boundary, recipe) -> Dict[str, Any]:
    return {"graph": json.loads(g.to_json()), "boundary": _jl(boundary), "wall": recipe}


def _cert_doc(cert: FlatnessCertificate) -> Dict[str, Any]:
    return json.loads(cert.to_json())


# ---------------------------------------------------------------- commands

def cmd_gen_wall(a) -> Tuple[int, Dict]:
    rng = random.Random(a.seed)
    if a.host:
        anchor = tuple(a.anchor) if a.anchor else (1, 1)
        recipe = {"kind": "host", "outer": a.host, "inner": a.r, "anchor": list(anchor), "seed": a.seed,
                  "subdivisions": a.subdivide, "chords": a.chords, "gadgets": a.gadgets,
                  "extraBoundary": a.extra_boundary}
        inst = _host_from_recipe(recipe)
        return OK, _instance_doc(inst.graph, inst.boundary, recipe)
    w = elementary_wall(a.r)
    subs = {}
    if a.subdivide:
        keys = sorted(w.paths, key=repr)
        for key in rng.sample(keys, min(a.subdivide, len(keys))):
            subs[key] = rng.randint(1, 2)
        w = subdivide(w, subs)
    recipe = json.loads(w.to_json())
    recipe.pop("anchor", None)
    recipe["kind"] = "elementary"
    return OK, _instance_doc(w.graph(), w.boundary(), recipe)


def _spec_from_args(a) -> CounterwallSpec:
    if a.bricks == "mixed":
        rng = random.Random(a.seed)
        return CounterwallSpec(a.R, {(i, j): rng.choice(BRICK_KINDS) for i in range(a.R) for j in range(a.R)})
    return CounterwallSpec.uniform(a.R, a.bricks)


def cmd_gen_counterwall(a) -> Tuple[int, Dict]:
    spec = _spec_from_args(a)
    cw = build_counterwall(spec)
    recipe = {"kind": "counterwall", "R": a.R,
              "kinds": {f"{i},{j}": k for (i, j), k in sorted(spec.kinds.items())}}
    w = wall_of(cw)
    if a.anchor:
        recipe["sub"] = {"anchor": list(a.anchor), "r": a.r}
        w = subwall(w, tuple(a.anchor), a.r)
    return OK, _instance_doc(cw.graph, w.boundary(), recipe)


def cmd_check_rural(a) -> Tuple[int, Dict]:
    _, g, C, _, _ = read_instance(a.file)
    ok, wit = is_rural(g, C)
    rep: Dict[str, Any] = {"rural": ok, "boundary": _jl(C)}
    if ok:
        rep["witness"] = json.loads(wit.to_json())
        return OK, rep
    if len(C) >= 4 and len(g) <= a.cross_limit:
        c = find_cross(g, C)
        rep["cross"] = None if c is None else {"path1": _jl(c.path1), "path2": _jl(c.path2)}
    return NO, rep


def _need_wall(w, path):
    if w is None:
        raise UsageError(f"{path}: the instance has no 'wall' recipe")
    return w


def cmd_check_flat(a) -> Tuple[int, Dict]:
    _, g, _, w, _ = read_instance(a.file)
    w = _need_wall(w, a.file)
    verify = verify_flat_new if a.definition == "new" else verify_flat_old
    if a.cert:
        try:
            cert = FlatnessCertificate.from_json(load_doc(a.cert))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"{a.cert}: not a certificate: {exc}")
        bad = verify(g, w, cert)
        return (OK if not bad else NO), {"definition": a.definition, "verified": not bad, "failures": bad}
    res = search_certificate(g, w, a.definition, budget=a.budget, extra_interface=a.extra_interface)
    rep = {"definition": a.definition, "status": res.status, "tried": res.tried, "note": res.note,
           "certificate": _cert_doc(res.certificate) if res.certificate else None}
    return {"found": OK, "absent": NO}.get(res.status, UNKNOWN), rep


def cmd_tighten(a) -> Tuple[int, Dict]:
    _, g, C, _, _ = read_instance(a.file)
    ok, rho = is_rural(g, C)
    if not ok:
        return NO, {"rural": False}
    log: List = []
    tight = tighten(rho, log=log, check=True)
    bad = check_tight_properties(tight)
    return (OK if not bad else NO), {"rural": True, "steps": [[r, c] for r, c in log], "violations": bad,
                                     "rendition": json.loads(tight.to_json())}


def cmd_lemma51(a) -> Tuple[int, Dict]:
    _, g, C, w, access = read_instance(a.file)
    w = _need_wall(w, a.file)
    if access is None:
        raise UsageError(f"{a.file}: lemma51 needs a host instance (see gen-wall --host)")
    paths = _corner_paths(w, access, set(C))
    D = Walk.from_vertices(g, w.boundary(), closed=True)
    res = lemma51_engine(g, C, w.vertex_set(), D, paths, check=False)
    bad = engine_failures(g, w.vertex_set(), D, res)
    rep = {"moves": [[m, c] for m, c in res.moves], "mirrored": res.mirrored, "failures": bad,
           "A": len(res.A), "B": len(res.B), "omega": _jl(res.omega), "E": _jl(res.E.vertices)}
    return (OK if not bad else NO), rep


def cmd_subwall_flat(a) -> Tuple[int, Dict]:
    _, g, C, w, access = read_instance(a.file)
    w = _need_wall(w, a.file)
    if a.cert:
        cert = FlatnessCertificate.from_json(load_doc(a.cert))
    elif access is not None:
        cert = prove_wall_flat(g, C, w, access)
    else:
        res = search_certificate(g, w, "new", budget=a.budget)
        if res.status != "found":
            return (NO if res.status == "absent" else UNKNOWN), {"status": res.status, "stage": "wall"}
        cert = res.certificate
    if a.height < 3:
        raise UsageError("--height must be at least 3")
    sub = subwall(w, tuple(a.anchor), a.height)
    out = subwall_flatness(g, w, cert, sub)
    return OK, {"verified": True, "certificate": _cert_doc(out)}


def cmd_check_k6(a) -> Tuple[int, Dict]:
    spec = _spec_from_args(a)
    res = check_no_k6(spec, budget=a.budget)
    rep = {"R": a.R, "bricks": a.bricks, "status": res.status, "steps": res.steps, "note": res.note}
    if res.model is not None:
        rep["model"] = {str(k): _jl(vsorted(v)) for k, v in res.model.branch_sets.items()}
    # the claim is "no K6 minor": absent verifies it, found refutes it
    return {"absent": OK, "found": NO}.get(res.status, UNKNOWN), rep


def _window_pegs(cw, anchor, r, index: int):
    for k, P in enumerate(window_peg_choices(window_intervals(cw, anchor, r))):
        if k == index:
            return P
    raise UsageError(f"--peg-index {index} is past the last window peg choice")


def cmd_exhibit_cross(a) -> Tuple[int, Dict]:
    cw = build_counterwall(CounterwallSpec.uniform(a.R))
    anchor = tuple(a.anchor)
    P = _window_pegs(cw, anchor, a.r, a.peg_index)
    c = exhibit_cross(cw, anchor, a.r, (), P, a.case)
    w = sub_wall(cw, anchor, a.r)
    order = order_along(w, set(P) | set(c.ends()))
    bad = c.failures(cw.graph, order)
    return (OK if not bad else NO), {"case": a.case, "pegs": _jl(vsorted(P)), "path1": _jl(c.path1),
                                     "path2": _jl(c.path2), "failures": bad}


def cmd_reproduce(a) -> Tuple[int, Dict]:
    rep = reproduce_appendix(a.R, a.r, budget=a.budget, full_check_every=a.full_check_every)
    return (OK if rep["ok"] else NO), rep


def cmd_export_dot(a) -> Tuple[int, str]:
    if a.counterwall:
        cw = build_counterwall(CounterwallSpec.uniform(a.counterwall))
        hl = []
        if a.cross:
            anchor = tuple(a.anchor)
            c = exhibit_cross(cw, anchor, a.r, (), _window_pegs(cw, anchor, a.r, a.peg_index), a.cross)
            for p in (c.path1, c.path2):
                for x, y in zip(p, p[1:]):
                    hl.append(min(cw.graph.edges_between(x, y)))
        return OK, counterwall_dot(cw, hl)
    if not a.file:
        raise UsageError("export-dot needs FILE or --counterwall")
    doc, g, C, w, _ = read_instance(a.file)
    if a.what == "rendition":
        ok, rho = is_rural(g, C)
        if not ok:
            return NO, ""
        return OK, rho.to_dot()
    pos = w.pos() if (w is not None and a.what == "wall") else None
    if pos is not None and set(pos) != set(g.vertices):
        pos = {v: p for v, p in pos.items() if v in g}
    return OK, g.to_dot(pos=pos)


# ---------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flatwall", description="Walls, societies and flatness certificates.")
    p.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=10_000)
    common.add_argument("--out", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    s = sub.add_parser("gen-wall", parents=[common], help="generate a wall, optionally inside a host")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--subdivide", type=int, default=0)
    s.add_argument("--host", type=int, help="height of a decorated outer wall")
    s.add_argument("--anchor", type=int, nargs=2)
    s.add_argument("--chords", type=int, default=3)
    s.add_argument("--gadgets", type=int, default=3)
    s.add_argument("--extra-boundary", type=int, default=0)
    s.set_defaults(fn=cmd_gen_wall)

    s = sub.add_parser("gen-counterwall", parents=[common], help="generate a counterwall")
    s.add_argument("--R", type=int, required=True)
    s.add_argument("--bricks", choices=BRICK_KINDS + ("mixed",), default="full")
    s.add_argument("--anchor", type=int, nargs=2, help="cut out the sub-wall with this top-left brick")
    s.add_argument("--r", type=int, default=3)
    s.set_defaults(fn=cmd_gen_counterwall)

    s = sub.add_parser("check-rural", parents=[common], help="decide rurality of a society")
    s.add_argument("file")
    s.add_argument("--cross-limit", type=int, default=30, help="largest graph searched for a cross")
    s.set_defaults(fn=cmd_check_rural)

    s = sub.add_parser("check-flat", parents=[common], help="verify or search a flatness certificate")
    s.add_argument("file")
    s.add_argument("--definition", choices=("new", "old"), default="new")
    s.add_argument("--cert")
    s.add_argument("--extra-interface", type=int, default=0)
    s.set_defaults(fn=cmd_check_flat)

    s = sub.add_parser("tighten", parents=[common], help="tighten a rendition of a rural society")
    s.add_argument("file")
    s.set_defaults(fn=cmd_tighten)

    s = sub.add_parser("lemma51", parents=[common], help="run the engine on a host instance")
    s.add_argument("file")
    s.set_defaults(fn=cmd_lemma51)

    s = sub.add_parser("subwall-flat", parents=[common], help="certify a subwall of a flat wall")
    s.add_argument("file")
    s.add_argument("--anchor", type=int, nargs=2, required=True)
    s.add_argument("--height", type=int, default=3)
    s.add_argument("--cert")
    s.set_defaults(fn=cmd_subwall_flat)

    s = sub.add_parser("check-k6", parents=[common], help="search a counterwall for a K6 minor")
    s.add_argument("--R", type=int, required=True)
    s.add_argument("--bricks", choices=BRICK_KINDS + ("mixed",), default="full")
    s.set_defaults(fn=cmd_check_k6, budget=10 ** 6)

    s = sub.add_parser("exhibit-cross", parents=[common], help="show a cross above a sub-counterwall")
    s.add_argument("--R", type=int, default=6)
    s.add_argument("--r", type=int, default=3)
    s.add_argument("--anchor", type=int, nargs=2, default=[1, 1])
    s.add_argument("--case", choices=("A", "B"), required=True)
    s.add_argument("--peg-index", type=int, default=0)
    s.set_defaults(fn=cmd_exhibit_cross)

    s = sub.add_parser("reproduce-appendix", parents=[common], help="the counterexample at desk scale")
    s.add_argument("--R", type=int, default=6)
    s.add_argument("--r", type=int, default=3)
    s.add_argument("--full-check-every", type=int, default=500)
    s.set_defaults(fn=cmd_reproduce, budget=2000)

    s = sub.add_parser("export-dot", parents=[common], help="DOT drawing of an instance or counterwall")
    s.add_argument("file", nargs="?")
    s.add_argument("--what", choices=("graph", "wall", "rendition"), default="wall")
    s.add_argument("--counterwall", type=int, help="draw the full counterwall of this height")
    s.add_argument("--cross", choices=("A", "B"), help="highlight a cross")
    s.add_argument("--anchor", type=int, nargs=2, default=[1, 1])
    s.add_argument("--r", type=int, default=3)
    s.add_argument("--peg-index", type=int, default=0)
    s.set_defaults(fn=cmd_export_dot)
    return p


def _human(rep: Dict[str, Any]) -> str:
    lines = []
    for k in sorted(rep):
        v = rep[k]
        if isinstance(v, (dict, list)) and len(json.dumps(v)) > 120:
            v = f"<{type(v).__name__} of {len(v)}>"
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if not getattr(a, "cmd", None):
        parser.print_usage(sys.stderr)
        return USAGE
    try:
        code, rep = a.fn(a)
    except UsageError as exc:
        sys.stderr.write(f"flatwall {a.cmd}: {exc}\n")
        return USAGE
    except ValueError as exc:
        sys.stderr.write(f"flatwall {a.cmd}: {exc}\n")
        return USAGE
    if isinstance(rep, str):
        text = rep
    elif a.json or a.cmd in ("gen-wall", "gen-counterwall"):
        text = json.dumps(rep, sort_keys=True) + "\n"
    else:
        text = _human(rep)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
