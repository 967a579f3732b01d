"""Command line interface (console script ``goepel``)."""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import mpmath
import numpy as np

from . import characteristics as ch
from . import pipeline
from . import relations as rel
from . import theta as th
from .io import format_ideal, read_ideal, write_ideal


def _dump(obj, path) -> None:
    text = json.dumps(pipeline._plain(obj), indent=1, sort_keys=True) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_run(args) -> int:
    cfg = pipeline.Config(Path(args.out_dir), args.prime, args.precision, args.seed, args.reselect)
    stages = pipeline.STAGES if args.stage == "all" else args.stage.split(",")
    ctx = pipeline.Context(cfg)
    failed = 0
    for s in stages:
        claims = pipeline.run_stage(s, cfg, ctx)
        for c in claims:
            print(f"{c.status.upper():4}  {s:13} {c.id}: {json.dumps(c.computed)}")
        failed += sum(not c.passed for c in claims)
    return failed


def cmd_report(args) -> int:
    print(pipeline.format_report(args.dir))
    rows = pipeline.collect(args.dir)
    report = {"claims": rows, "failed": sum(r["status"] != "pass" for r in rows)}
    _dump(report, Path(args.dir) / "report.json")
    return report["failed"]


def cmd_enumerate(args) -> int:
    groups = ch.enumerate_gopel_groups(args.genus)
    out = {"genus": args.genus, "count": len(groups), "groups": []}
    for G in groups:
        item = {"elements": [list(ch.unpack(m, args.genus)) for m in sorted(G.elements)]}
        if args.even_cosets:
            item["even_coset"] = list(G.coset_indices)
        out["groups"].append(item)
    _dump(out, args.out)
    return 0


def cmd_theta(args) -> int:
    rng = np.random.default_rng(args.seed)
    pts = []
    for _ in range(args.points):
        P = th.random_siegel_point(args.genus, rng, args.precision)
        if args.precision < th.DOUBLE_EPS:
            vals = [th.theta_nullwert(m, P) for m in ch.even_characteristics(args.genus)]
            digits = int(-math.log10(args.precision)) + 5
            vals = [[mpmath.nstr(v.real, digits), mpmath.nstr(v.imag, digits)] for v in vals]
        else:
            vals = [[repr(v.real), repr(v.imag)] for v in th.theta_vector(P, args.precision)]
        pts.append({"Z_real": P.Z.real.tolist(), "Z_imag": P.Z.imag.tolist(), "theta": vals})
    _dump({"genus": args.genus, "precision": args.precision, "seed": args.seed,
           "characteristics": [list(ch.unpack(m, args.genus)) for m in ch.even_characteristics(args.genus)],
           "samples": pts}, args.out)
    return 0


def cmd_relations(args) -> int:
    g = args.genus
    R = rel.relations(args.kind, g)
    table = rel.monomial_table(g)
    n = table.size
    names = [f"Y{i}" for i in range(1, n + 1)]
    polys = []
    if args.kind == "linear":
        for row in R.rows:
            nz = np.nonzero(row)[0]
            e = np.zeros((len(nz), n), dtype=np.int8)
            e[np.arange(len(nz)), nz] = 1
            polys.append((e, row[nz]))
    else:
        for A, B in R.binomials:
            e = np.zeros((2, n), dtype=np.int8)
            for i in A:
                e[0, i] += 1
            for i in B:
                e[1, i] += 1
            polys.append((e, np.array([1, -1])))
    meta = {"kind": args.kind, "genus": g, "groups_by_even_coset": [list(c) for c in table.cosets]}
    if R.provenance and isinstance(R.provenance[0], dict):
        meta.update(R.provenance[0])
    text = format_ideal(polys, names, None, meta)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def cmd_ideals(args) -> int:
    m = pipeline.write_ideals(Path(args.out_dir), args.prime)
    print(json.dumps(m["counts"], sort_keys=True))
    return 0


def cmd_ideal(args) -> int:
    from .groebner.f4 import groebner_basis, interreduce
    from .groebner.hilbert import hilbert_data
    p = args.prime
    ideals = [read_ideal(f) for f in args.inp]
    header, gens = ideals[0]
    n = len(header["variables"])
    task = args.task
    if task == "gb":
        G = interreduce(groebner_basis(gens, n, p))
        write_ideal(args.out, G.polys, header["variables"], p, {"task": "gb", "complete": G.complete})
        return 0
    if task == "hilbert":
        G = groebner_basis(gens, n, p)
        H = hilbert_data(G.leading_exponents, n)
        _dump({**H.as_dict(), "projective_dimension": H.projective_dimension}, args.out)
        return 0
    if task == "quotient":
        if len(ideals) != 2:
            raise SystemExit("quotient needs two inputs: the smaller ideal, then the larger")
        from .colon import certify_zero_dimensional
        others = ideals[1][1]
        top = max(int(np.asarray(e)[0].sum()) for e, _ in others) + args.colon_degree
        Ga = interreduce(groebner_basis(gens, n, p, top))
        cert = certify_zero_dimensional(Ga, gens, others, args.colon_degree, seed=0)
        _dump({"colon_degree": args.colon_degree, "colon_dimension": len(cert.piece.polys),
               "verified": cert.piece.verified, "hilbert": cert.hilbert.as_dict(),
               "zero_dimensional_colon": cert.zero_dimensional, "degree_bound": cert.degree_bound}, args.out)
        return 0
    from .cluster import cluster_slice, eliminant, orbit_points, regularity
    chg, sl = cluster_slice(gens, p, n)
    el = eliminant(sl)
    if task == "cluster":
        _dump({"hilbert": sl.hilbert.as_dict(), "eliminant_degree": el.degree, "squarefree": el.squarefree,
               "orbit_degrees": el.orbit_degrees()}, args.out)
        return 0
    if task == "smooth":
        checks = regularity(gens, orbit_points(el, chg, n))
        _dump([{"orbit_degree": c.orbit_degree, "on_variety": c.vanishes, "jacobian_rank": c.jacobian_rank}
               for c in checks], args.out)
        return 0
    raise SystemExit(f"unknown task {task}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="goepel", description="Goepel variety verification toolkit")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run verification stages and write claims")
    r.add_argument("--stage", required=True, help=f"one of {', '.join(pipeline.STAGES)}, a comma list, or all")
    r.add_argument("--prime", type=int, default=rel.DEFAULT_PRIME)
    r.add_argument("--precision", type=float, default=1e-20)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out-dir", required=True)
    r.add_argument("--reselect", action="store_true", help="also check an independently selected basis")
    r.set_defaults(func=cmd_run)

    r = sub.add_parser("report", help="summarize the claims in a run directory")
    r.add_argument("--dir", required=True)
    r.set_defaults(func=cmd_report)

    r = sub.add_parser("enumerate", help="list Goepel groups")
    r.add_argument("--genus", type=int, required=True)
    r.add_argument("--even-cosets", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=cmd_enumerate)

    t = sub.add_parser("theta", help="theta constants")
    tsub = t.add_subparsers(dest="theta_command", required=True)
    r = tsub.add_parser("sample", help="theta null values at random points")
    r.add_argument("--genus", type=int, required=True)
    r.add_argument("--points", type=int, required=True)
    r.add_argument("--precision", type=float, default=1e-15)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_theta)

    r = sub.add_parser("relations", help="linear, cubic or quartic relations among the Y_G")
    r.add_argument("--genus", type=int, default=3)
    r.add_argument("--kind", choices=("linear", "cubic", "quartic"), required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_relations)

    r = sub.add_parser("ideals", help="write a.ideal, b.ideal and manifest.json")
    r.add_argument("--out-dir", required=True)
    r.add_argument("--prime", type=int, default=rel.DEFAULT_PRIME)
    r.set_defaults(func=cmd_ideals)

    r = sub.add_parser("ideal", help="computations on an ideal file over F_p")
    r.add_argument("--task", choices=("gb", "hilbert", "quotient", "cluster", "smooth"), required=True)
    r.add_argument("--prime", type=int, default=rel.DEFAULT_PRIME)
    r.add_argument("--in", dest="inp", nargs="+", required=True)
    r.add_argument("--colon-degree", type=int, default=2, help="degree of the colon piece used by --task quotient")
    r.add_argument("--out")
    r.set_defaults(func=cmd_ideal)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return int(args.func(args) or 0)


if __name__ == "__main__":
    sys.exit(main())
