"""Command-line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 bad input,
3 solver failure (or a failed row under ``--strict``).
"""

import argparse
import concurrent.futures as cf
import json
import logging
import multiprocessing
import os
import sys

import numpy as np

from .errors import ConvergenceError, InvalidArgumentError, LpStatusError, MongefoilError
from .extremal import solve_extremal
from .geometry import symmetrize
from .io import (body_to_dict, fmt, leaf_record, load_body,
                 parse_complex_vector, parse_range, read_vectors)
from .robin import robin_value
from .verify import SUITES, run_suite
from .vk import vk_eval

EXIT_OK, EXIT_FAILED_CHECK, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3

_WORKER = {}


class _ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParseError(message)


def _common(p):
    p.add_argument("body", help="JSON body file")
    p.add_argument("--output", "-o", help="write here instead of stdout")
    p.add_argument("--tol", type=float, default=1e-10, help="solver tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true",
                   help="exit 3 if any row fails")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for grids")


def build_parser():
    parser = _Parser(prog="mongefoil", description="Extremal disks, Robin functions "
                     "and extremal functions of real convex bodies.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extremal", help="extremal disk for a direction")
    _common(p)
    p.add_argument("--dir", required=True, help='direction as "re,im re,im ..."')

    p = sub.add_parser("vk", help="evaluate V_K at points")
    _common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", help="file with one point per line")
    g.add_argument("--point", action="append", help='single point "re,im re,im"')
    g.add_argument("--grid", help='ranges "a:b:n" for re z1, im z1, re z2, im z2')

    p = sub.add_parser("robin", help="Robin function of directions")
    _common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--dirs", help="file with one direction per line")
    g.add_argument("--dir", action="append", help='single direction "re,im re,im"')

    p = sub.add_parser("indicatrix-slice", help="Robin function on a complex 2-plane")
    _common(p)
    p.add_argument("--plane", required=True, help='"e1 | e2", each as "re,im re,im"')
    p.add_argument("--s", default="-2:2:21", help="range a:b:n for s")
    p.add_argument("--t", default="-2:2:21", help="range a:b:n for t")

    p = sub.add_parser("symmetrize", help="difference body (K - K)/2")
    _common(p)

    p = sub.add_parser("foliate", help="export N barycentric leaves")
    _common(p)
    p.add_argument("--n", type=int, default=16, help="number of leaves")

    p = sub.add_parser("verify", help="run an invariant suite")
    _common(p)
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    return parser


# -- commands -----------------------------------------------------------------

def cmd_extremal(args, body):
    v = parse_complex_vector(args.dir)
    return json.dumps(leaf_record(solve_extremal(body, v)), indent=2) + "\n"


def _vk_row(z):
    body, tol = _WORKER["body"], _WORKER["tol"]
    try:
        r = vk_eval(body, z, tol=tol)
        return r.value, r.status, r.residual
    except ConvergenceError as exc:
        return float("nan"), "failed", exc.residual if exc.residual is not None else np.nan


def _grid_points(spec):
    parts = spec.split()
    if len(parts) % 2:
        raise InvalidArgumentError("grid needs an (re, im) range per coordinate")
    axes = [parse_range(p) for p in parts]
    mesh = np.meshgrid(*axes, indexing="ij")
    flat = np.column_stack([m.ravel() for m in mesh])
    return list(flat[:, 0::2] + 1j * flat[:, 1::2])


def cmd_vk(args, body):
    if args.points:
        pts = read_vectors(args.points)
    elif args.point:
        pts = [parse_complex_vector(p) for p in args.point]
    else:
        pts = _grid_points(args.grid)
    for z in pts:
        if z.size != body.dim:
            raise InvalidArgumentError(f"point of dimension {z.size} for a {body.dim}-D body")
    _WORKER.update(body=body, tol=args.tol)
    if args.jobs > 1:
        ctx = multiprocessing.get_context("fork")
        with cf.ProcessPoolExecutor(args.jobs, mp_context=ctx) as pool:
            rows = list(pool.map(_vk_row, pts, chunksize=8))
    else:
        rows = [_vk_row(z) for z in pts]
    header = []
    for k in range(body.dim):
        header += [f"re_z{k + 1}", f"im_z{k + 1}"]
    lines = [",".join(header + ["V", "status", "residual"])]
    failed = False
    for z, (val, status, res) in zip(pts, rows):
        failed |= status == "failed"
        coords = [fmt(c) for x in z for c in (x.real, x.imag)]
        lines.append(",".join(coords + [fmt(val), status, fmt(res)]))
    return "\n".join(lines) + "\n", failed


def cmd_robin(args, body):
    dirs = read_vectors(args.dirs) if args.dirs else [parse_complex_vector(d) for d in args.dir]
    header = []
    for k in range(body.dim):
        header += [f"re_v{k + 1}", f"im_v{k + 1}"]
    lines = [",".join(header + ["rho_K", "boundary_scale", "status"])]
    failed = False
    for v in dirs:
        coords = [fmt(c) for x in v for c in (x.real, x.imag)]
        try:
            if v.size != body.dim:
                raise InvalidArgumentError("dimension mismatch")
            r = robin_value(body, v)
            lines.append(",".join(coords + [fmt(r), fmt(np.exp(-r)), "ok"]))
        except MongefoilError as exc:
            failed = True
            msg = str(exc).replace(",", ";")
            lines.append(",".join(coords + ["nan", "nan", f"error: {msg}"]))
    return "\n".join(lines) + "\n", failed


def cmd_indicatrix_slice(args, body):
    parts = args.plane.split("|")
    if len(parts) != 2:
        raise InvalidArgumentError('plane must be "e1 | e2"')
    e1, e2 = (parse_complex_vector(p) for p in parts)
    if e1.size != body.dim or e2.size != body.dim:
        raise InvalidArgumentError("plane vectors have the wrong dimension")
    lines = ["s,t,rho_K"]
    for s in parse_range(args.s):
        for t in parse_range(args.t):
            w = s * e1 + t * e2
            val = -np.inf if not np.any(w) else robin_value(body, w)
            lines.append(f"{fmt(s)},{fmt(t)},{fmt(val)}")
    return "\n".join(lines) + "\n"


def cmd_symmetrize(args, body):
    return json.dumps(body_to_dict(symmetrize(body)), indent=2) + "\n"


def cmd_foliate(args, body):
    if args.n < 1:
        raise InvalidArgumentError("--n must be positive")
    rng = np.random.default_rng(args.seed)
    V = rng.normal(size=(args.n, body.dim)) + 1j * rng.normal(size=(args.n, body.dim))
    leaves = [leaf_record(solve_extremal(body, v)) for v in V]
    return json.dumps({"body": body_to_dict(body), "leaves": leaves}, indent=2) + "\n"


def cmd_verify(args, body):
    report = run_suite(body, args.suite, seed=args.seed)
    return json.dumps(report, indent=2) + "\n", not report["passed"]


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    level = os.environ.get("MONGEFOIL_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except _ParseError as exc:
        print(f"mongefoil: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "verify" and args.suite not in SUITES + ("all",):
        print(f"mongefoil: unknown suite {args.suite!r}", file=sys.stderr)
        return EXIT_INPUT
    handlers = {"extremal": cmd_extremal, "vk": cmd_vk, "robin": cmd_robin,
                "indicatrix-slice": cmd_indicatrix_slice, "symmetrize": cmd_symmetrize,
                "foliate": cmd_foliate, "verify": cmd_verify}
    try:
        body = load_body(args.body)
        out = handlers[args.command](args, body)
    except (LpStatusError, ConvergenceError) as exc:
        print(f"mongefoil: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (OSError, ValueError, TypeError, MongefoilError) as exc:
        print(f"mongefoil: {exc}", file=sys.stderr)
        return EXIT_INPUT
    flag = False
    if isinstance(out, tuple):
        out, flag = out
    _emit(out, args.output)
    if flag:
        if args.command == "verify":
            return EXIT_FAILED_CHECK
        if args.strict:
            return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
