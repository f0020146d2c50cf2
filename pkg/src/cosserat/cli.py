"""Command line front end: ``cosserat {interval,scan2d,cone,fem,bounds}``.

Exit codes: 0 on success, 2 for invalid input, 3 when a numerical method
did not converge. The default worker count for grid scans is read from the
environment variable ``COSSERAT_WORKERS`` (default 1).
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import bounds as bnd
from . import cone3d, io, mellin2d
from .legendre import SeriesDivergence

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
WORKERS_ENV = "COSSERAT_WORKERS"

SCAN2D_COLUMNS = ("omega_rad", "sigma", "branch", "kind", "root_re", "root_im", "status")
CONE_COLUMNS = ("m", "omega_deg", "sigma", "in_region", "num_roots", "min_abs_det",
                "first_root_t", "status")
EIG_COLUMNS = ("a", "level", "deg_u", "deg_p", "j", "sigma")


class InputError(ValueError):
    pass


class NumericalError(RuntimeError):
    pass


_ANGLE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(deg|rad|pi)\s*$")


def parse_angle(text: str) -> float:
    """``"90deg"``, ``"1.5708rad"`` or ``"0.5pi"`` to radians; a unit is mandatory."""
    m = _ANGLE.match(text)
    if not m:
        raise InputError(f"angle {text!r} needs a unit suffix: deg, rad or pi")
    v, unit = float(m.group(1)), m.group(2)
    if unit == "deg":
        return math.radians(v)
    if unit == "pi":
        return v * math.pi
    return v


def parse_range(text: str, n_default: int | None = None, angle: bool = False):
    """``lo:hi[:n]`` to a grid; angles keep their unit on each end."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise InputError(f"range {text!r} must read lo:hi or lo:hi:n")
    conv = parse_angle if angle else _float
    lo, hi = conv(parts[0]), conv(parts[1])
    n = int(parts[2]) if len(parts) == 3 else n_default
    if n is None or n < 1:
        raise InputError(f"range {text!r} needs a positive point count")
    if hi < lo:
        raise InputError(f"range {text!r} is decreasing")
    return np.linspace(lo, hi, n)


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise InputError(f"not a number: {text!r}") from None


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        w = int(raw)
    except ValueError:
        raise InputError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, w)


# ---------------------------------------------------------------- interval

def cmd_interval(args) -> int:
    if (args.omega is None) == (args.polygon is None):
        raise InputError("give exactly one of --omega and --polygon")
    if args.omega is not None:
        omegas = [parse_angle(args.omega)]
    else:
        omegas = []
        for item in args.polygon.split(","):
            item = item.strip()
            omegas.append(parse_angle(item) if _ANGLE.match(item) else math.radians(_float(item)))
    for w in omegas:
        if not 0.0 < w <= 2 * math.pi * (1 + 1e-14):
            raise InputError(f"corner opening {w!r} rad outside (0, 2pi]")
    spec = mellin2d.essential_spectrum_polygon(omegas)
    beta = mellin2d.lbb_upper_bound(omegas)
    ivs = [{"lo": iv.lo, "hi": iv.hi, "degenerate": iv.degenerate} for iv in spec.intervals]
    if args.format == "json":
        io.write_json({"omegas_rad": omegas, "intervals": ivs, "points": list(spec.points),
                       "beta_upper": beta}, args.out)
    else:
        lines = [f"interval lo={iv['lo']:.10f} hi={iv['hi']:.10f}"
                 + (" (degenerate)" if iv["degenerate"] else "") for iv in ivs]
        lines.append(f"beta_upper={beta:.7f}")
        io.write_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------- scan2d

def _scan2d_chunk(omega, sigmas, t_max, kind):
    return mellin2d.scan_rows([omega], sigmas, t_max, kind)


def cmd_scan2d(args) -> int:
    steps = [int(s) for s in args.steps.split(",")]
    if len(steps) == 1:
        steps *= 2
    if len(steps) != 2 or min(steps) < 1:
        raise InputError("--steps takes N or Nomega,Nsigma with positive counts")
    omegas = parse_range(args.omega_range, steps[0], angle=True)
    sigmas = parse_range(args.sigma_range, steps[1])
    if omegas[0] <= 0 or omegas[-1] > 2 * math.pi:
        raise InputError("openings must lie in (0, 2pi]")
    rows = _map(_scan2d_chunk, [(w, sigmas, args.tmax, args.kind) for w in omegas], args.workers)
    rows = [r for chunk in rows for r in chunk]
    _emit(rows, SCAN2D_COLUMNS, args)
    return EXIT_OK


# ---------------------------------------------------------------- cone

def cmd_cone(args) -> int:
    omegas = parse_range(args.omega_grid, 179)
    sigmas = parse_range(args.sigma_grid, 101)
    if omegas[0] <= 0 or omegas[-1] >= 180:
        raise InputError("cone openings (degrees) must lie in (0, 180)")
    if sigmas[0] < 0 or sigmas[-1] > 1:
        raise InputError("sigma grid must lie in [0, 1]")
    rows = []
    for m in args.m:
        grid = cone3d.region_membership_grid(m, omegas, sigmas, t_max=args.tmax,
                                             workers=args.workers)
        rows.extend(grid.rows())
    _emit(rows, CONE_COLUMNS, args)
    return EXIT_OK


# ---------------------------------------------------------------- fem

def cmd_fem(args) -> int:
    from .fem.assembly import assemble
    from .fem.eigen import EigenSolverError, cosserat_eigs
    from .fem.mesh import MeshSpecError, box_extents, build_mesh, parse_mesh_spec
    from .fem.spaces import FeSpacePair, SpaceError
    from .fem.study import analyse

    dim = 2 if args.shape == "rect" else 3
    try:
        spaces = FeSpacePair(args.deg_u, args.deg_p)
        extents = box_extents(args.a, dim)
        if args.levels:
            levels = [int(v) for v in args.levels.split(",")]
            recipes = [parse_mesh_spec(f"uniform:{n}") for n in levels]
        else:
            levels = [None]
            recipes = [parse_mesh_spec(args.mesh)]
    except (SpaceError, MeshSpecError) as exc:
        raise InputError(str(exc)) from exc

    reports, rows = [], []
    for n, recipe in zip(levels, recipes):
        t0 = time.perf_counter()
        ops = assemble(build_mesh(extents, recipe), spaces)
        t1 = time.perf_counter()
        try:
            rep = cosserat_eigs(ops, args.num_eigs, method=args.method, seed=args.seed, a=args.a)
        except (EigenSolverError, ArithmeticError) as exc:
            raise NumericalError(str(exc)) from exc
        t2 = time.perf_counter()
        if args.timings:
            rep.timings = {"assembly_s": t1 - t0, "eigen_s": t2 - t1}
        if not rep.converged:
            raise NumericalError(f"eigen residuals {rep.residuals.max():.2e} above tolerance")
        reports.append(rep)
        for j, s in enumerate(rep.sigma):
            rows.append({"a": args.a, "level": "" if n is None else n, "deg_u": spaces.deg_u,
                         "deg_p": spaces.deg_p, "j": j + 1, "sigma": float(s)})

    if args.format == "csv":
        io.write_csv(rows, EIG_COLUMNS, args.out)
    elif len(reports) == 1:
        io.write_json(reports[0].to_dict(), args.out)
    else:
        out = {"levels": levels, "reports": [r.to_dict() for r in reports]}
        if len(levels) >= 3:
            res = analyse(levels, np.array([r.sigma for r in reports]))
            out["study"] = {"rate": _nan_none(res.rate), "extrapolated": _nan_none(res.extrapolated),
                            "flags": res.flags}
        io.write_json(out, args.out)

    if args.export_field:
        from .fem.export import export_eigenfunction, sample_grid
        counts = [int(c) for c in args.samples.split("x")]
        if len(counts) != dim:
            raise InputError(f"--samples needs {dim} counts")
        fields = export_eigenfunction(ops, reports[-1].vectors[:, args.field_index - 1],
                                      sample_grid(ops.mesh, counts))
        cols = list(fields)
        n = len(fields["p"])
        io.write_csv(({c: float(fields[c][i]) for c in cols} for i in range(n)), cols,
                     args.export_field)
    return EXIT_OK


def _nan_none(values):
    return [None if not np.isfinite(v) else float(v) for v in values]


# ---------------------------------------------------------------- bounds

def cmd_bounds(args) -> int:
    grid = parse_range(args.a_grid, 20)
    if grid[0] <= 0 or grid[-1] > 1:
        raise InputError("aspect parameters must lie in (0, 1]")
    rows = bnd.bound_rows(grid, args.shape)
    _emit(rows, bnd.BOUND_COLUMNS, args)
    if args.svg:
        if args.shape == "rect":
            names = ("lower_hp", "upper_rect", "upper_co")
        else:
            names = ("upper_cuboid", "upper_dobrowolski")
        series = {k: (list(grid), [r[k] for r in rows]) for k in names}
        io.write_text(io.svg_polylines(series, title=f"bounds ({args.shape})"), args.svg)
    return EXIT_OK


# ---------------------------------------------------------------- plumbing

def _map(fn, arglist, workers):
    if workers > 1 and len(arglist) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(fn, *zip(*arglist)))
    return [fn(*a) for a in arglist]


def _emit(rows, columns, args):
    if getattr(args, "format", "csv") == "json":
        io.write_json([{c: r.get(c, "") for c in columns} for r in rows], args.out)
    else:
        io.write_csv(rows, columns, args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cosserat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("csv", "json")):
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--format", choices=fmt, default=fmt[0])

    s = sub.add_parser("interval", help="essential-spectrum interval of corners")
    s.add_argument("--omega", help="single opening with unit, e.g. 90deg")
    s.add_argument("--polygon", help="comma-separated openings (degrees unless suffixed)")
    common(s, ("text", "json"))
    s.set_defaults(func=cmd_interval)

    s = sub.add_parser("scan2d", help="roots of the sector characteristic equation on a grid")
    s.add_argument("--omega-range", default="1deg:359deg", help="lo:hi with angle units")
    s.add_argument("--sigma-range", default="0:1")
    s.add_argument("--steps", default="50", help="N or Nomega,Nsigma")
    s.add_argument("--kind", choices=("imaginary", "real", "both"), default="imaginary")
    s.add_argument("--tmax", type=float, default=None,
                   help="upper end of the search window for imaginary roots (default: unbounded)")
    s.add_argument("--workers", type=int, default=None)
    common(s)
    s.set_defaults(func=cmd_scan2d)

    s = sub.add_parser("cone", help="critical-line roots for axisymmetric cones")
    s.add_argument("--m", type=int, nargs="+", default=[0])
    s.add_argument("--omega-grid", default="1:179:179", help="lo:hi:n in degrees")
    s.add_argument("--sigma-grid", default="0:1:101", help="lo:hi:n")
    s.add_argument("--tmax", type=float, default=1000.0,
                   help="end of the sampled part of the critical line")
    s.add_argument("--workers", type=int, default=None)
    common(s)
    s.set_defaults(func=cmd_cone)

    s = sub.add_parser("fem", help="discrete Cosserat eigenvalues on rectangles and cuboids")
    s.add_argument("--shape", choices=("rect", "cuboid"), default="rect")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--mesh", default="uniform:2", help="uniform:N | cells:40x4 | refined:L,q")
    s.add_argument("--levels", default=None, help="comma-separated uniform levels (study)")
    s.add_argument("--deg-u", type=int, default=2)
    s.add_argument("--deg-p", type=int, default=1)
    s.add_argument("--num-eigs", type=int, default=6)
    s.add_argument("--method", choices=("auto", "dense", "lanczos"), default="auto")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--timings", action="store_true", help="record wall-clock timings")
    s.add_argument("--export-field", default=None, help="CSV file for eigenfunction samples")
    s.add_argument("--field-index", type=int, default=1)
    s.add_argument("--samples", default="101x11", help="sample counts per axis, e.g. 201x21")
    common(s, ("json", "csv"))
    s.set_defaults(func=cmd_fem)

    s = sub.add_parser("bounds", help="explicit bounds on a grid of aspect parameters")
    s.add_argument("--shape", choices=("rect", "cuboid"), default="rect")
    s.add_argument("--a-grid", default="0.05:1:20", help="lo:hi:n")
    s.add_argument("--svg", default=None, help="optional SVG line plot")
    common(s)
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "workers") and args.workers is None:
            args.workers = default_workers()
        if hasattr(args, "workers") and args.workers < 1:
            raise InputError("--workers must be positive")
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"cosserat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, SeriesDivergence, ArithmeticError) as exc:
        print(f"cosserat: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
