"""Command-line entry point: ``homkernel {apply,verify,bounds}``.

Exit status: 0 success, 1 a verification suite or bound failed, 2 usage or
parameter error (raised before any computation), 3 numerical domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from importlib import metadata

import numpy as np

from . import bounds as bd
from . import circle_ops as co
from . import funcspace as fs
from . import plane_ops as po
from . import verify as vf
from .pvquad import PVQuadratureConfig, pv_line_hilbert

APPLY_OPS = ("k1", "k2", "calK", "k-est1", "k-stepanov", "k-radon", "hilbert-line",
             "hilbert-circle", "j")
BOUNDS = ("est3", "k2", "j", "k1-holder", "riesz-table", "sharpness")
SCHEMA_VERSION = 1

EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    subcommand: str
    families: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)
    quadrature: dict = field(default_factory=dict)
    format: str = "csv"
    output: str | None = None
    seed: int = 0

    def to_dict(self) -> dict:
        return {"command": self.command, "subcommand": self.subcommand,
                "families": self.families, "grid": self.grid,
                "quadrature": self.quadrature, "format": self.format,
                "output": self.output, "seed": self.seed,
                "version": _version()}


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


# ----------------------------------------------------------------------------
# argument parsing helpers
# ----------------------------------------------------------------------------

def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _point(text: str) -> po.PlanePoint:
    v = _floats(text)
    if len(v) != 2:
        raise UsageError(f"a point needs two coordinates, got {text!r}")
    return po.PlanePoint(*v)


def _points(text: str | None, xs: list[str] | None) -> list[po.PlanePoint]:
    pts = [_point(x) for x in xs or ()]
    if text:
        m = re.fullmatch(r"grid(\d+)", text)
        if m:
            n = int(m.group(1))
            vals = np.geomspace(0.5, 2.0, n) if n > 1 else np.array([1.0])
            pts += [po.PlanePoint(float(a), float(b)) for a in vals for b in vals]
        else:
            pts += [_point(p) for p in text.split(";") if p.strip()]
    if not pts:
        raise UsageError("no evaluation points: use --x X1,X2 or --points")
    return pts


def split_specs(text: str) -> list[str]:
    """``"gaussian:0.3,1,gaussian"`` -> ``["gaussian:0.3,1", "gaussian"]``.

    A token that starts with a letter opens a new family spec; numeric
    tokens continue the parameter list of the previous one.
    """
    out: list[str] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok[0].isalpha():
            out.append(tok)
        elif out:
            out[-1] += ("," if ":" in out[-1] else ":") + tok
        else:
            raise UsageError(f"family list must start with a name: {text!r}")
    return out


def _function(spec: str) -> fs.Function1D:
    try:
        return fs.from_spec(spec)
    except (ValueError, TypeError, KeyError) as e:
        raise UsageError(f"bad function spec {spec!r}: {e}") from None


def _circle_function(args) -> tuple[fs.Function1D, str]:
    name = args.family
    if name is None:
        raise UsageError("--family is required")
    if name == "trigpoly":
        if not args.coeffs:
            raise UsageError("trigpoly needs --coeffs, e.g. k=1:1,k=-3:0.5")
        try:
            return fs.trigpoly(fs.parse_coeffs(args.coeffs)), f"trigpoly:{args.coeffs}"
        except ValueError as e:
            raise UsageError(str(e)) from None
    if name == "holder-cusp":
        spec = f"holder-cusp:{args.gamma if args.gamma is not None else 0.5}"
    elif args.params:
        spec = f"{name}:{args.params}"
    else:
        spec = name
    f = _function(spec)
    if f.kind != "periodic" and name != "const":
        raise UsageError(f"family {name!r} is not 2pi-periodic")
    return f, spec


def _alphas(args, default: int) -> np.ndarray:
    m = args.alpha_grid if args.alpha_grid is not None else default
    if m < 8 or m % 2:
        raise UsageError("--alpha-grid must be an even integer >= 8")
    return fs.circle_nodes(m)


def _cfg(args) -> PVQuadratureConfig:
    try:
        return PVQuadratureConfig(n=args.quad_n, R=args.R, tail_policy=args.tail_policy)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _check_n(n: int):
    if n < 8 or n % 2:
        raise UsageError("--n must be an even integer >= 8")


# ----------------------------------------------------------------------------
# output
# ----------------------------------------------------------------------------

def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def _finite(v):
    return float(v) if math.isfinite(v) else None


def table_document(cfg: RunConfig, columns: list[str], rows: list[list[float]]) -> dict:
    return {"schema": "homkernel.apply", "schema_version": SCHEMA_VERSION,
            "config": cfg.to_dict(), "columns": columns,
            "rows": [[_finite(float(v)) for v in r] for r in rows]}


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(float(v)) for v in r])
    return buf.getvalue()


def _emit_table(cfg: RunConfig, columns, rows):
    if cfg.format == "json":
        text = json.dumps(table_document(cfg, columns, rows), sort_keys=True, indent=2,
                          ensure_ascii=False, default=_json_default) + "\n"
    else:
        # the config rides along as a comment line so the file reruns exactly
        head = "# " + json.dumps(cfg.to_dict(), sort_keys=True, default=_json_default)
        text = head + "\r\n" + _csv(columns, rows)
    _write(text, cfg.output)


def _complex_rows(prefix_cols, values):
    values = np.asarray(values, dtype=complex).ravel()
    return [list(p) + [v.real, v.imag] for p, v in zip(prefix_cols, values)]


# ----------------------------------------------------------------------------
# apply
# ----------------------------------------------------------------------------

def _prepare_apply(args):
    """Validate every parameter and return a zero-argument compute closure."""
    op = args.op
    cfg = _cfg(args)
    _check_n(args.n)
    run = RunConfig("apply", op, format=args.format, output=args.output, seed=args.seed,
                    grid={"N": args.n, "alpha_grid": args.alpha_grid, "K_max": args.kmax},
                    quadrature=cfg.to_dict())

    if op in ("k1", "hilbert-circle", "j"):
        phi, spec = _circle_function(args)
        run.families["phi"] = spec
        alphas = _alphas(args, args.n if op != "j" else 256)
        run.grid["alpha_grid"] = alphas.size
        backend = args.backend
        if op == "k1":
            compute = lambda: co.k1_apply(phi, args.n, alphas=alphas, backend=backend)
        elif op == "hilbert-circle":
            compute = lambda: co.hilbert_circle(phi, args.n, alphas=alphas, backend=backend)
        else:
            witness = _witness(phi, args)
            run.families["witness"] = {"gamma": witness.gamma, "seminorm": witness.seminorm,
                                       "provenance": witness.provenance}
            compute = lambda: co.j_apply(phi, witness, alphas=alphas, N=args.n)
        if backend not in ("quadrature", "spectral", "regularized"):
            raise UsageError(f"unknown backend {backend!r}")
        return run, ["alpha", "re", "im"], lambda: _complex_rows([[a] for a in alphas],
                                                                 compute())

    if op in ("k2", "calK"):
        if not (args.radial and args.angular):
            raise UsageError(f"{op} needs --radial and --angular")
        a, b = _function(args.radial), _function(args.angular)
        try:
            phi = fs.PolarTensorSum([(a, b)])
        except ValueError as e:
            raise UsageError(str(e)) from None
        run.families.update(radial=args.radial, angular=args.angular)
        alphas = _alphas(args, 64)
        run.grid["alpha_grid"] = alphas.size
        if op == "k2":
            return run, ["alpha", "re", "im"], lambda: _complex_rows(
                [[x] for x in alphas], co.k2_apply(phi, alphas, args.n, args.backend, cfg))
        rs = _floats(args.r) if args.r else [1.0]
        if any(r <= 0 for r in rs):
            raise UsageError("--r must be positive")
        run.grid["r"] = rs

        def calk():
            k2 = co.k2_apply(phi, alphas, args.n, args.backend, cfg)
            return [[r, al, v.real, v.imag] for r in rs
                    for al, v in zip(alphas, np.asarray(k2 / r, dtype=complex))]
        return run, ["r", "alpha", "re", "im"], calk

    if op in ("k-est1", "k-stepanov", "k-radon"):
        if not (args.f1 and args.f2):
            raise UsageError(f"{op} needs --f1 and --f2")
        f = fs.TensorSum2D([(_function(args.f1), _function(args.f2))])
        run.families.update(f1=args.f1, f2=args.f2)
        pts = _points(args.points, args.x)
        for x in pts:
            if x.x1 == 0 or x.x2 == 0:
                raise UsageError("evaluation points must lie off the coordinate axes")
        run.grid["points"] = [[x.x1, x.x2] for x in pts]
        ev = {"k-est1": po.k_apply_est1, "k-stepanov": po.k_apply_stepanov,
              "k-radon": po.k_apply_radon}[op]
        return run, ["x1", "x2", "re", "im"], lambda: _complex_rows(
            [[x.x1, x.x2] for x in pts], [ev(f, x, cfg) for x in pts])

    if op == "hilbert-line":
        spec = args.f2 or args.f1 or (f"{args.family}:{args.params}" if args.params
                                      else args.family)
        if spec is None:
            raise UsageError("hilbert-line needs --family (or --f1)")
        g = _function(spec)
        if g.kind == "periodic":
            raise UsageError("hilbert-line needs a function on the line")
        run.families["g"] = spec
        if not args.x:
            raise UsageError("hilbert-line needs --x values")
        xs = [v for x in args.x for v in _floats(x)]
        run.grid["x"] = xs
        return run, ["x", "re", "im"], lambda: _complex_rows(
            [[x] for x in xs], [pv_line_hilbert(g, x, cfg) for x in xs])

    raise UsageError(f"unknown operator {op!r}")


def _witness(phi: fs.Function1D, args) -> fs.HolderWitness:
    gamma = args.gamma if args.gamma is not None else 0.5
    if not 0.0 < gamma < 1.0:
        raise UsageError("--gamma must lie in (0, 1)")
    if phi.name == "holder-cusp" and args.seminorm == "analytic":
        return fs.HolderWitness(gamma, fs.holder_cusp_seminorm(phi.params[0]))
    return fs.holder_seminorm_estimate(phi, gamma, args.holder_points)


# ----------------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------------

def _prepare_verify(args):
    if args.suite not in vf.SUITES + ("all",):
        raise UsageError(f"unknown suite {args.suite!r}; choose from "
                         f"{', '.join(vf.SUITES + ('all',))}")
    _check_n(args.n)
    if args.kmax < 0 or args.n < 2 * args.kmax + 2:
        raise UsageError("need 0 <= kmax and n >= 2 kmax + 2")
    if args.cases is not None and args.cases < 1:
        raise UsageError("--cases must be positive")
    cfg = _cfg(args)
    run = RunConfig("verify", args.suite, output=args.output, seed=args.seed, format="json",
                    grid={"N": args.n, "K_max": args.kmax, "cases": args.cases},
                    quadrature=cfg.to_dict())
    return run, lambda: vf.run_suite(args.suite, args.seed, args.cases, args.kmax, args.n, cfg)


# ----------------------------------------------------------------------------
# bounds
# ----------------------------------------------------------------------------

def _prepare_bounds(args):
    name = args.bound
    cfg = _cfg(args)
    run = RunConfig("bounds", name, format=args.format, output=args.output, seed=args.seed,
                    quadrature=cfg.to_dict(), grid={"N": args.n})
    if name == "riesz-table":
        ps = _floats(args.p) if args.p else [1.25, 1.5, 2.0, 3.0, 4.0]
        if any(not 1 < p < math.inf for p in ps):
            raise UsageError("Riesz exponents must satisfy 1 < p < inf")
        run.grid["p"] = ps
        return run, lambda: [bd.BoundReport("riesz", c, c, 1.0, {"p": p, "C_p": c})
                             for p, c in bd.riesz_table(ps)]
    if name == "est3":
        p = _single_p(args)
        specs = split_specs(args.f or "gaussian:0.3,1,gaussian:-0.4,0.8")
        if len(specs) % 2:
            raise UsageError("--f needs factor pairs f1,f2[,f1,f2...]")
        fns = [_function(s) for s in specs]
        f = fs.TensorSum2D(list(zip(fns[::2], fns[1::2])), p / (p - 1), p)
        pts = _points(args.points or ("grid3" if not args.x else None), args.x)
        run.families["f"] = specs
        run.grid.update(p=p, points=[[x.x1, x.x2] for x in pts])
        return run, lambda: bd.check_est3(f, pts, p, cfg)
    if name == "sharpness":
        p = _single_p(args)
        x2 = _floats(args.x2) if args.x2 else [1.0, 4.0, 16.0]
        run.grid.update(p=p, x2=x2)
        return run, lambda: bd.sharpness_profile(x2, p, cfg=cfg)
    if name == "k2":
        radial = args.radial or "indicator:0,1"
        angular = args.angular or "trigpoly:1:1"
        try:
            phi = fs.PolarTensorSum([(_function(radial), _function(angular))])
        except ValueError as e:
            raise UsageError(str(e)) from None
        alphas = _alphas(args, 64)
        run.families.update(radial=radial, angular=angular)
        return run, lambda: [bd.check_k2_bound(phi, alphas, args.n, args.backend, cfg)]
    if name in ("j", "k1-holder"):
        if args.family is None:
            args.family = "holder-cusp"
        phi, spec = _circle_function(args)
        witness = _witness(phi, args)
        alphas = _alphas(args, 256)
        run.families.update(phi=spec, witness={"gamma": witness.gamma,
                                               "seminorm": witness.seminorm,
                                               "provenance": witness.provenance})
        if name == "j":
            return run, lambda: [bd.check_j_bound(phi, witness, alphas, args.n)]
        if args.hilbert_norm is not None and args.hilbert_norm < 0:
            raise UsageError("--hilbert-norm must be nonnegative")
        if not bd.is_even(phi):
            raise UsageError("k1-holder needs an even function")
        run.grid["hilbert_holder_norm"] = args.hilbert_norm
        return run, lambda: [bd.check_k1_even_holder(phi, witness, alphas,
                                                     args.hilbert_norm, args.n)]
    raise UsageError(f"unknown bound {name!r}; choose from {', '.join(BOUNDS)}")


def _single_p(args) -> float:
    ps = _floats(args.p) if args.p else [2.0]
    if len(ps) != 1 or not 1 < ps[0] < math.inf:
        raise UsageError("--p must be a single exponent in (1, inf)")
    return ps[0]


def _emit_reports(run: RunConfig, reports):
    if run.format == "json":
        text = bd.reports_to_json(reports, schema="homkernel.bounds",
                                  schema_version=SCHEMA_VERSION, config=run.to_dict(),
                                  all_passed=all(r.passed for r in reports)) + "\n"
    else:
        head = "# " + json.dumps(run.to_dict(), sort_keys=True, default=_json_default)
        text = head + "\r\n" + bd.reports_to_csv(reports)
    _write(text, run.output)


# ----------------------------------------------------------------------------
# parser and main
# ----------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=2048, help="circle node count N")
    p.add_argument("--R", type=float, default=None, help="truncation radius")
    p.add_argument("--quad-n", type=int, default=24, help="Gauss nodes per panel")
    p.add_argument("--tail-policy", choices=("power", "ignore"), default="power")
    p.add_argument("--kmax", type=int, default=16)


def _functions(p: argparse.ArgumentParser):
    p.add_argument("--family", help="registry name (trigpoly, holder-cusp, cos, const, ...)")
    p.add_argument("--params", help="comma-separated family parameters")
    p.add_argument("--coeffs", help="trigpoly coefficients, e.g. k=1:1,k=-3:0.5")
    p.add_argument("--gamma", type=float, default=None, help="Hoelder exponent")
    p.add_argument("--seminorm", choices=("analytic", "grid"), default="analytic")
    p.add_argument("--holder-points", type=int, default=1024)
    p.add_argument("--alpha-grid", type=int, default=None, help="number of output angles")
    p.add_argument("--backend", choices=("quadrature", "spectral", "regularized"),
                   default="quadrature")
    p.add_argument("--radial", help="radial factor spec, e.g. exp:1")
    p.add_argument("--angular", help="angular factor spec, e.g. const or trigpoly:k=1:1")
    p.add_argument("--r", help="radii for calK (comma-separated)")
    p.add_argument("--f1", help="first tensor factor spec, e.g. indicator:0,1")
    p.add_argument("--f2", help="second tensor factor spec, e.g. power:0.5")
    p.add_argument("--x", action="append", help="evaluation point X1,X2 (repeatable)")
    p.add_argument("--points", help="gridN or 'x1,x2;x1,x2;...'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homkernel",
        description="Antisymmetric GL+(2)-homogeneous operator on the plane and its "
                    "circle companions.")
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True)

    ap = sub.add_parser("apply", help="apply an operator and tabulate the values")
    ap.add_argument("op", choices=APPLY_OPS)
    _common(ap)
    _functions(ap)

    vp = sub.add_parser("verify", help="run property suites")
    vp.add_argument("suite", help=f"one of {', '.join(vf.SUITES + ('all',))}")
    _common(vp)
    vp.add_argument("--cases", type=int, default=None)

    bp = sub.add_parser("bounds", help="check norm bounds")
    bp.add_argument("bound", choices=BOUNDS)
    _common(bp)
    _functions(bp)
    bp.add_argument("--p", help="exponent(s), comma-separated")
    bp.add_argument("--f", help="tensor factor pairs, e.g. gaussian,gaussian")
    bp.add_argument("--x2", help="x2 values for the sharpness profile")
    bp.add_argument("--hilbert-norm", type=float, default=None,
                    help="Hoelder norm of the conjugate function (k1-holder)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "apply":
            run, columns, compute = _prepare_apply(args)
        elif args.command == "verify":
            run, compute = _prepare_verify(args)
        else:
            run, compute = _prepare_bounds(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"homkernel: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        result = compute()
    except (ValueError, ZeroDivisionError, FloatingPointError, OverflowError) as e:
        print(f"homkernel: numerical domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN

    if args.command == "apply":
        _emit_table(run, columns, result)
        return 0
    if args.command == "verify":
        text = vf.results_to_json(result, schema="homkernel.verify",
                                  schema_version=SCHEMA_VERSION, config=run.to_dict())
        _write(text + "\n", run.output)
        return 0 if all(r.passed for r in result) else EXIT_FAIL
    _emit_reports(run, result)
    return 0 if all(r.passed for r in result) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
