"""Command line interface.

Exit codes: 0 when the verification passes, 1 when it runs and fails, 2 for
input errors (unreadable or malformed documents, invalid geometry).
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys

import numpy as np

from . import __version__
from .congruences import (
    check_congruence_consistency,
    complete_congruence,
    meet_residual,
    random_congruence_cube,
)
from .elements import Plane, Point
from .exceptions import GeometryError, SchemaError
from .generators import revolution_net, sphere_net, torus_net
from .grid import Grid, fill_by_hexahedra, shift
from .io import NetDocument, VerificationReport, doc_to_grid, grid_to_doc, load_net, obj_text, save_net
from .laguerre import conical_residual
from .lie import contact_element
from .moebius import concircularity_residual
from .principal import (
    ContactElementNet,
    conical_complete,
    edge_residuals,
    miquel_complete,
    ribaucour_spheres,
    ribaucour_transform,
    synthesize_from_r_congruence,
)
from .pseudo_euclid import DEFAULT_TOL
from .qnets import check_consistency, complete_qnet, dehomogenize, homogenize, planarity_residual, random_qnet_cube
from .sphere_congruences import (
    OrthogonalCircle,
    PointPair,
    SinglePoint,
    classify_q_quad,
    q_residual,
    r_residual,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
CONSISTENCY_THRESHOLDS = {("qnet", 4): 1e-8, ("qnet", 5): 1e-7, ("congruence", 4): 1e-7, ("congruence", 5): 1e-7}


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def _floats(text: str, n: int, flag: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise InputError(f"{flag}: expected {n} comma-separated numbers") from exc
    if len(vals) != n:
        raise InputError(f"{flag}: expected {n} comma-separated numbers, got {len(vals)}")
    return vals


def _load(path: str) -> NetDocument:
    return load_net(path)


def _require(doc: NetDocument, *kinds: str) -> None:
    if doc.kind not in kinds:
        raise InputError(f"document kind is '{doc.kind}', expected {' or '.join(kinds)}")


def _require_complete(doc: NetDocument) -> None:
    if any(e is None for e in doc.entries):
        raise InputError("document has absent cells")


def _quad_residuals(grid: Grid, fn) -> dict:
    out = {}
    for i, j in itertools.combinations(range(grid.dims), 2):
        for u in grid.quads(i, j):
            out[(u, i, j)] = fn(*grid.quad(u, i, j))
    return out


def _points_of(doc: NetDocument) -> Grid:
    _require(doc, "points", "contact_elements")
    _require_complete(doc)
    g = doc_to_grid(doc)
    if doc.kind == "contact_elements":
        g = g.map(lambda pair: pair[0])
    return g.map(Point)


def _planes_of(doc: NetDocument) -> Grid:
    _require(doc, "planes", "contact_elements")
    _require_complete(doc)
    g = doc_to_grid(doc)
    if doc.kind == "contact_elements":
        g = g.map(lambda pair: pair[1])
    return g


def _contact_net(doc: NetDocument, tol: float) -> ContactElementNet:
    _require(doc, "contact_elements")
    _require_complete(doc)
    return ContactElementNet.from_pairs(doc_to_grid(doc), tol)


def _net_to_doc(net: ContactElementNet, tol: float, metadata=None) -> NetDocument:
    pairs = net.pairs(tol)
    for u, (x, P) in pairs.items():
        if P is None:
            raise GeometryError(f"cell {u}: contact element at infinity cannot be serialized")
    return grid_to_doc(pairs.map(lambda xp: (xp[0].xyz, xp[1])), "contact_elements", metadata)


def _emit(report: VerificationReport, args) -> int:
    print(report.to_json() if args.report == "json" else report.to_text())
    return EXIT_PASS if report.passed else EXIT_FAIL


def _finish(doc: NetDocument, report: VerificationReport, args) -> int:
    """Write ``doc`` to ``--output`` and print the report, or the document to stdout and the report to stderr."""
    if args.output:
        save_net(doc, args.output)
        return _emit(report, args)
    sys.stdout.write(doc.to_json())
    print(report.to_json() if args.report == "json" else report.to_text(), file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _write_doc(doc: NetDocument, args) -> None:
    if args.output:
        save_net(doc, args.output)
    else:
        sys.stdout.write(doc.to_json())


def _principal_residuals(net: ContactElementNet, tol: float) -> dict:
    out = {}
    for i in range(len(net.extents)):
        for u, r in edge_residuals(net, i, tol).items():
            out[(u, i)] = float(r)
    return out


# ---------------------------------------------------------------------------
# commands

def cmd_check(args) -> int:
    doc = _load(args.net)
    tol = args.tol
    if args.kind == "circular":
        res = _quad_residuals(_points_of(doc), concircularity_residual)
    elif args.kind == "conical":
        res = _quad_residuals(_planes_of(doc), conical_residual)
    elif args.kind == "principal":
        res = _principal_residuals(_contact_net(doc, tol), tol)
    else:
        _require(doc, "spheres")
        _require_complete(doc)
        fn = q_residual if args.kind == "q-congruence" else r_residual
        res = _quad_residuals(doc_to_grid(doc), fn)
    return _emit(VerificationReport(f"check {args.kind}", res, tol), args)


def _complete_report(kind: str, grid: Grid, tol: float, fn) -> VerificationReport:
    return VerificationReport(f"complete {kind}", _quad_residuals(grid, fn), tol)


def cmd_complete(args) -> int:
    doc = _load(args.net)
    tol = args.tol
    if args.kind == "qnet":
        _require(doc, "points")
        g = doc_to_grid(doc).map(homogenize)
        out = complete_qnet(g, tol)
        report = _complete_report("qnet", out, tol, planarity_residual)
        new_doc = grid_to_doc(out.map(dehomogenize), "points", doc.metadata)
    elif args.kind == "miquel":
        _require(doc, "points")
        g = doc_to_grid(doc).map(Point)
        fill_by_hexahedra(g, lambda *p: miquel_complete(*p, tol=tol))
        report = _complete_report("miquel", g, tol, concircularity_residual)
        new_doc = grid_to_doc(g, "points", doc.metadata)
    elif args.kind == "conical":
        _require(doc, "planes")
        if doc.dims != 2:
            raise InputError("conical completion works on two-dimensional nets")
        normals = doc.metadata.get("normals")
        if not isinstance(normals, list) or len(normals) != len(doc.entries):
            raise InputError("metadata 'normals' must list one unit normal per cell")
        g = doc_to_grid(doc)
        nrm = Grid.from_flat(doc.extents, normals)
        n0, n1 = doc.extents
        for b in range(n1):
            for a in range(n0):
                if g[a, b] is not None:
                    continue
                if a == 0 or b == 0 or None in (g[a - 1, b - 1], g[a, b - 1], g[a - 1, b]):
                    raise InputError(f"cell {(a, b)} is not determined by the known cells")
                g[a, b] = conical_complete(g[a - 1, b - 1], g[a, b - 1], g[a - 1, b], nrm[a, b], tol)
        report = _complete_report("conical", g, tol, conical_residual)
        new_doc = grid_to_doc(g, "planes", doc.metadata)
    else:
        _require(doc, "lines")
        out = complete_congruence(doc_to_grid(doc), tol)
        res = {}
        for i in range(out.dims):
            for u in out.edges(i):
                res[(u, i)] = meet_residual(out[u], out[shift(u, i)])
        report = VerificationReport("complete congruence", res, tol)
        new_doc = grid_to_doc(out, "lines", doc.metadata)
    return _finish(new_doc, report, args)


def cmd_synthesize(args) -> int:
    doc = _load(args.net)
    _require(doc, "spheres")
    _require_complete(doc)
    tol = args.tol
    S = doc_to_grid(doc)
    if S.dims != 2:
        raise InputError("synthesis needs a two-dimensional sphere net")
    s00 = S[0, 0]
    if args.contact:
        vals = _floats(args.contact, 7, "--contact")
        seed = contact_element(vals[:3], Plane(vals[3:6], vals[6]), tol)
    elif args.plane:
        if not isinstance(s00, Point):
            raise InputError("--plane needs a point (radius 0) at cell (0, 0)")
        vals = _floats(args.plane, 4, "--plane")
        seed = contact_element(s00.xyz, Plane(vals[:3], vals[3]), tol)
    elif args.point:
        raise InputError("--point needs a plane at cell (0, 0); spheres documents hold spheres and points only")
    else:
        raise InputError("one of --contact, --plane, --point is required")
    net = synthesize_from_r_congruence(S, seed, tol)
    report = VerificationReport("synthesize (principal check)", _principal_residuals(net, tol), tol)
    return _finish(_net_to_doc(net, tol, {"source": "synthesize"}), report, args)


def cmd_ribaucour(args) -> int:
    tol = args.tol
    net = _contact_net(_load(args.net), tol)
    seeds_doc = _load(args.seeds)
    _require(seeds_doc, "contact_elements")
    if seeds_doc.extents != net.extents:
        raise InputError("seed document must have the extents of the net")
    seeds = doc_to_grid(seeds_doc).map(lambda xp: contact_element(xp[0], xp[1], tol))
    plus = ribaucour_transform(net, seeds, tol)
    spheres = ribaucour_spheres(net, plus, tol)
    report = VerificationReport("ribaucour (R-congruence of shared spheres)", _quad_residuals(spheres, r_residual), tol)
    return _finish(_net_to_doc(plus, tol, {"source": "ribaucour"}), report, args)


def _fmt(x) -> str:
    return "(" + ", ".join(f"{t:.12g}" for t in x) + ")"


def cmd_classify(args) -> int:
    doc = _load(args.net)
    _require(doc, "spheres")
    _require_complete(doc)
    if len(doc.entries) != 4:
        raise InputError("classify needs exactly four spheres (one quad)")
    g = doc_to_grid(doc)
    quad = g.quad((0,) * g.dims, 0, 1) if g.dims == 2 else tuple(g.values())
    res = q_residual(*quad)
    if res > args.tol:
        body = {"classification": None, "q_residual": res}
        print(json.dumps(body) if args.report == "json" else f"not a Q-congruence quad (residual {res:.3e})")
        return EXIT_FAIL
    c = classify_q_quad(*quad, tol=args.tol)
    if isinstance(c, PointPair):
        text = f"PointPair {_fmt(c.p_plus)} {_fmt(c.p_minus)}"
        body = {"classification": "PointPair", "p_plus": c.p_plus, "p_minus": c.p_minus}
    elif isinstance(c, OrthogonalCircle):
        text = f"OrthogonalCircle center {_fmt(c.center)} radius {c.radius:.12g} normal {_fmt(c.normal)}"
        body = {"classification": "OrthogonalCircle", "center": c.center, "radius": c.radius, "normal": c.normal}
    else:
        assert isinstance(c, SinglePoint)
        text = f"SinglePoint {_fmt(c.point)}"
        body = {"classification": "SinglePoint", "point": c.point}
    body["common_value"] = c.common_value
    print(json.dumps(body) if args.report == "json" else f"{text}\n  common value: {c.common_value:.12g}")
    return EXIT_PASS


def cmd_consistency(args) -> int:
    rng = np.random.default_rng(args.seed)
    threshold = args.threshold or CONSISTENCY_THRESHOLDS[(args.system, args.dim)]
    res = {}
    for k in range(args.instances):
        if args.system == "qnet":
            out = check_consistency(random_qnet_cube(args.dim, rng), args.dim, args.tol)
        else:
            out = check_congruence_consistency(random_congruence_cube(args.dim, rng, ambient=args.dim + 2), args.dim, args.tol)
        res[k] = out.deviation
    report = VerificationReport(f"consistency-test {args.system} --dim {args.dim}", res, threshold, "consistency")
    report.notes.append(f"routes per instance: {len(list(itertools.combinations(range(args.dim), 3)))}")
    return _emit(report, args)


def cmd_generate(args) -> int:
    if args.surface == "torus":
        g = torus_net(args.a, args.b, args.n0, args.n1)
    elif args.surface == "sphere":
        g = sphere_net(args.radius, args.n0, args.n1)
    else:
        z = np.linspace(-1.0, 1.0, args.n1)
        profile = np.stack([2.0 + 0.5 * np.cos(1.3 * z), z], axis=1)
        g = revolution_net(profile, n_theta=args.n0)
    meta = {"surface": args.surface}
    if args.kind == "points":
        doc = grid_to_doc(g.map(lambda xp: xp[0]), "points", meta)
    elif args.kind == "planes":
        doc = grid_to_doc(g.map(lambda xp: xp[1]), "planes", meta)
    else:
        doc = grid_to_doc(g, "contact_elements", meta)
    _write_doc(doc, args)
    return EXIT_PASS


def cmd_export_obj(args) -> int:
    doc = _load(args.net)
    if doc.kind == "contact_elements":
        doc = grid_to_doc(_points_of(doc).map(lambda p: p.xyz), "points", doc.metadata)
    text = obj_text(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numerical tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--output", "-o", help="output path")
    common.add_argument("--report", choices=("text", "json"), default="text", help="report format")

    p = argparse.ArgumentParser(prog="spherenets", description="Verify and construct discrete curvature-line nets.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verify a net")
    c.add_argument("kind", choices=("circular", "conical", "principal", "q-congruence", "r-congruence"))
    c.add_argument("net")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("complete", parents=[common], help="fill absent cells of a net")
    c.add_argument("kind", choices=("qnet", "miquel", "conical", "congruence"))
    c.add_argument("net")
    c.set_defaults(func=cmd_complete)

    c = sub.add_parser("synthesize", parents=[common], help="principal net through an R-congruence")
    c.add_argument("net", help="spheres document over Z^2")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--contact", help="x,y,z,vx,vy,vz,d: contact element at cell (0, 0)")
    g.add_argument("--plane", help="vx,vy,vz,d: tangent plane at the point of cell (0, 0)")
    g.add_argument("--point", help="x,y,z: contact point on the plane of cell (0, 0)")
    c.set_defaults(func=cmd_synthesize)

    c = sub.add_parser("ribaucour", parents=[common], help="Ribaucour transform from axis seeds")
    c.add_argument("net", help="contact_elements document")
    c.add_argument("--seeds", required=True, help="contact_elements document with the axis cells filled")
    c.set_defaults(func=cmd_ribaucour)

    c = sub.add_parser("classify", parents=[common], help="classify a Q-congruence quad")
    c.add_argument("net", help="spheres document with four entries")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("consistency-test", parents=[common], help="random multidimensional consistency experiment")
    c.add_argument("system", choices=("qnet", "congruence"))
    c.add_argument("--dim", type=int, choices=(4, 5), default=4)
    c.add_argument("--instances", type=int, default=20)
    c.add_argument("--threshold", type=float, default=None, help="override the deviation threshold")
    c.set_defaults(func=cmd_consistency)

    c = sub.add_parser("generate", parents=[common], help="sample a principal net on a surface of revolution")
    c.add_argument("surface", choices=("torus", "sphere", "revolution"))
    c.add_argument("--kind", choices=("contact_elements", "points", "planes"), default="contact_elements")
    c.add_argument("--n0", type=int, default=6, help="samples along the parallels")
    c.add_argument("--n1", type=int, default=5, help="samples along the meridians")
    c.add_argument("--a", type=float, default=2.0, help="torus: distance of the tube center from the axis")
    c.add_argument("--b", type=float, default=1.0, help="torus: tube radius")
    c.add_argument("--radius", type=float, default=1.0, help="sphere radius")
    c.set_defaults(func=cmd_generate)

    c = sub.add_parser("export-obj", parents=[common], help="write a 2D point net as an OBJ quad mesh")
    c.add_argument("net")
    c.set_defaults(func=cmd_export_obj)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SchemaError, GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
