"""Command-line driver: ``berezinlab eval | verify | plotdata``.

Exit codes: 0 success (all gate reports pass), 1 identity failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from . import deform as D
from . import halfplane as hp
from . import modular as mf
from .config import ConfigError, RunConfig, load_config
from .quadrature import QuadratureSpec
from .reports import write_csv
from .suites import SuiteOptions, gate_reports, resolve_suites, run_suite, suite_passed
from .symbols import ConstantKernel, Kernel, LogPhiKernel, PhiPowerKernel, PointCloud, star_product

BRANCH = "log q = 2 pi i z, principal log(1 - q^n)"
BRANCH_REDUCED = "series at reduced point minus 12 Log(cz + d), modulo 2 pi i"


class UsageError(ValueError):
    pass


# ----------------------------------------------------------------- parsing


def parse_points(text: str) -> np.ndarray:
    """Semicolon-separated complex numbers in Python syntax, e.g. '1j; 0.3+1.2j'."""
    pts = []
    col = 1
    for token in text.split(";"):
        stripped = token.strip()
        if stripped:
            try:
                pts.append(complex(stripped.replace(" ", "")))
            except ValueError:
                offset = col + len(token) - len(token.lstrip())
                raise UsageError(f"points: line 1, column {offset}: cannot parse {stripped!r} as a complex number")
        col += len(token) + 1
    if not pts:
        raise UsageError("points: no points given")
    arr = np.asarray(pts, dtype=complex)
    if np.any(arr.imag <= 0):
        raise UsageError("points: every point needs positive imaginary part")
    return arr


def parse_grid(text: str) -> np.ndarray:
    """'x0,x1,nx,y0,y1,ny' -> nx * ny grid points (x varies slowest)."""
    parts = text.split(",")
    if len(parts) != 6:
        raise UsageError("grid: expected x0,x1,nx,y0,y1,ny")
    try:
        x0, x1, y0, y1 = (float(parts[i]) for i in (0, 1, 3, 4))
        nx, ny = int(parts[2]), int(parts[5])
    except ValueError as exc:
        raise UsageError(f"grid: {exc}") from exc
    if nx < 1 or ny < 1 or y0 <= 0 or y1 <= 0:
        raise UsageError("grid: counts must be positive and heights above zero")
    xs, ys = np.linspace(x0, x1, nx), np.linspace(y0, y1, ny)
    return (xs[:, None] + 1j * ys[None, :]).ravel()


def parse_kernel(label: str) -> Kernel:
    """'1', 'phi^EPS', 'log_phi' or 'theta_g'."""
    label = label.strip()
    if label == "1":
        return ConstantKernel(1.0)
    if label.startswith("phi^"):
        try:
            return PhiPowerKernel(float(label[4:]))
        except ValueError as exc:
            raise UsageError(f"kernel: bad exponent in {label!r}") from exc
    if label == "log_phi":
        return LogPhiKernel(ConstantKernel(1.0), 1.0, 0.0)
    if label == "theta_g":
        return D.theta_general(D.default_g_log)
    raise UsageError(f"kernel: unknown label {label!r}; use 1, phi^EPS, log_phi or theta_g")


# ----------------------------------------------------------------- eval


def cmd_eval(args) -> int:
    cfg = mf.QSeriesConfig(truncation_order=args.truncation)
    if args.points is None and args.grid is None:
        raise UsageError("eval: give --points or --grid")
    z = parse_points(args.points) if args.points is not None else parse_grid(args.grid)
    xi = complex(parse_points(args.xi)[0]) if args.xi else None
    rows = []
    if args.object in ("delta", "log_delta"):
        if args.reduce:
            vals = mf.log_delta_via_reduction(z, cfg)
        else:
            vals = mf.log_delta(z, cfg)
        if args.object == "delta":
            vals = np.exp(vals)
        for p, v in zip(z, np.atleast_1d(vals)):
            branch = BRANCH_REDUCED if args.reduce else BRANCH
            rows.append([args.object, p.real, p.imag, "", "", v.real, v.imag, branch, cfg.truncation_order])
    else:
        if xi is None:
            raise UsageError(f"eval {args.object}: give the second argument with --xi")
        if args.object == "phi":
            k: Kernel = PhiPowerKernel(1.0, 1.0, cfg)
            name = "phi"
        else:
            if args.label is None:
                raise UsageError("eval kernel: give a kernel label")
            k = parse_kernel(args.label)
            name = k.label
        vals = np.atleast_1d(k(z, np.full_like(z, xi)))
        for p, v in zip(z, vals):
            rows.append([name, p.real, p.imag, xi.real, xi.imag, v.real, v.imag, BRANCH, cfg.truncation_order])
    header = ["object", "z_re", "z_im", "xi_re", "xi_im", "value_re", "value_im", "branch", "truncation_order"]
    _emit(write_csv(rows, header), args.out)
    return 0


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ----------------------------------------------------------------- verify


def _options(cfg: RunConfig) -> SuiteOptions:
    quad = tuple((k, v) for k, v in vars(cfg.quadrature).items() if v is not None)
    return SuiteOptions(cfg.budget, cfg.seed, cfg.t, cfg.s, cfg.epsilon, cfg.h, quad)


def _run_one(args: tuple) -> tuple[str, list]:
    name, opt = args
    return name, run_suite(name, opt)


def suite_document(name: str, opt: SuiteOptions, reports) -> str:
    doc = {"suite": name, "budget": opt.budget, "seed": opt.seed,
           "passed": suite_passed(reports), "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def run_verify(cfg: RunConfig, stream=None) -> int:
    stream = sys.stdout if stream is None else stream
    names = resolve_suites(cfg.suites)
    opt = _options(cfg)
    os.makedirs(cfg.out, exist_ok=True)
    with open(os.path.join(cfg.out, "config.ini"), "w", encoding="utf-8") as fh:
        fh.write(cfg.to_ini())
    tasks = [(n, opt) for n in names]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    ok = True
    rows = []
    for name, reports in results:
        with open(os.path.join(cfg.out, f"{name}.json"), "w", encoding="utf-8") as fh:
            fh.write(suite_document(name, opt, reports))
        for r in reports:
            role = r.details.get("role", "gate")
            print(f"[{name}] {r.summary_line()}" + ("" if role == "gate" else " [diagnostic]"), file=stream)
            rows.append([name, r.identity_id, role, "PASS" if r.passed else "FAIL", r.max_residual, r.tolerance])
        ok = ok and all(r.passed for r in gate_reports(reports))
    with open(os.path.join(cfg.out, "summary.csv"), "w", encoding="utf-8", newline="") as fh:
        fh.write(write_csv(rows, ["suite", "identity_id", "role", "status", "max_residual", "tolerance"]))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    suites = None
    if args.suite:
        suites = tuple(s.strip() for item in args.suite for s in item.split(",") if s.strip())
    overrides = {("run", "suites"): suites, ("run", "budget"): args.budget, ("run", "seed"): args.seed,
                 ("run", "jobs"): args.jobs, ("run", "out"): args.out, ("deformation", "t"): args.t,
                 ("deformation", "s"): args.s, ("deformation", "epsilon"): args.epsilon}
    cfg = load_config(args.config, overrides)
    try:
        resolve_suites(cfg.suites)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from exc
    return run_verify(cfg)


# ----------------------------------------------------------------- plotdata


def cmd_plotdata(args) -> int:
    t = 8.0 if args.t is None else args.t
    eps = 0.1 if args.epsilon is None else args.epsilon
    if args.kind == "kernel-heatmap":
        xi = complex(parse_points(args.xi)[0]) if args.xi else 2j
        n = args.n
        xs = np.linspace(-0.5, 0.5, n)
        ys = np.linspace(np.sqrt(3.0) / 2.0, 2.5, n)
        z = (xs[:, None] + 1j * ys[None, :]).ravel()
        absphi = np.abs(mf.phi(z, np.full_like(z, xi)))
        inside = hp.in_fundamental_domain(z)
        rows = [[p.real, p.imag, xi.real, xi.imag, v, bool(f)] for p, v, f in zip(z, absphi, inside)]
        text = write_csv(rows, ["z_re", "z_im", "xi_re", "xi_im", "abs_phi", "in_F"])
    elif args.kind == "residual-vs-budget":
        # a separated probe pair keeps the reproducing residual above roundoff on small rules
        z, xi = 1j, 3.0 + 0.5j
        one = ConstantKernel(1.0)
        rows = []
        for nr in (4, 6, 8, 12, 16, 24):
            spec = QuadratureSpec(n_radial=nr, n_angular=4 * nr)
            res = abs(complex(star_product(one, one, t, spec)(z, xi)) - 1.0)
            rows.append([nr, spec.n_angular, t, res])
        text = write_csv(rows, ["n_radial", "n_angular", "t", "abs_residual"])
    else:
        rng = np.random.default_rng([args.seed, 7])
        cloud = PointCloud.random(rng, 6, (-1.0, 1.0), (0.5, 2.0))
        k = D.shifted_log_phi_kernel(t, eps)
        ev = np.sort(np.linalg.eigvalsh(D.normalized_gram(k, t, cloud)))
        text = write_csv([[i, t, eps, v] for i, v in enumerate(ev)], ["index", "t", "epsilon", "eigenvalue"])
    _emit(text, args.out)
    return 0


# ----------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="berezinlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="tabulate delta, log_delta, phi or a kernel as CSV")
    e.add_argument("object", choices=["delta", "log_delta", "phi", "kernel"])
    e.add_argument("label", nargs="?", help="kernel label: 1, phi^EPS, log_phi or theta_g")
    e.add_argument("--points", help="semicolon-separated complex points, e.g. '1j;0.3+1.2j'")
    e.add_argument("--grid", help="x0,x1,nx,y0,y1,ny")
    e.add_argument("--xi", help="second argument for two-point objects")
    e.add_argument("--reduce", action="store_true", help="q-series at the reduced point with the closed-form automorphy factor")
    e.add_argument("--truncation", type=int, default=mf.DEFAULT_QSERIES.truncation_order)
    e.add_argument("--out", help="CSV output file (default stdout)")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run verification suites and write JSON reports")
    v.add_argument("--suite", action="append", help="suite name (repeatable or comma-separated)")
    v.add_argument("--config", help="INI configuration file")
    v.add_argument("--t", type=float)
    v.add_argument("--s", type=float)
    v.add_argument("--epsilon", type=float)
    v.add_argument("--budget", choices=["low", "med", "high"])
    v.add_argument("--jobs", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--out", help="report directory")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("plotdata", help="plot-ready CSV tables")
    d.add_argument("kind", choices=["kernel-heatmap", "residual-vs-budget", "eigen-spectrum"])
    d.add_argument("--t", type=float)
    d.add_argument("--epsilon", type=float)
    d.add_argument("--xi")
    d.add_argument("--n", type=int, default=10)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out")
    d.set_defaults(func=cmd_plotdata)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
