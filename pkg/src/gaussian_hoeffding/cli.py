"""Command-line interface: ``gaussian-hoeffding {qhb,overlap,grid,validate}``.

Exit codes: 0 success, 2 bad input, 3 numerical failure, 4 unwritable
output, 5 unphysical state (``validate`` only).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import statefile
from .catalog import SqueezedThermal, Thermal, UnphysicalSpec, build, two_mode_cov
from .errors import GaussianError, InvalidSpec
from .grids import Axis, Figure, GridJob, compute_grid, default_job, grid_csv
from .hoeffding import OptimizerOptions, hoeffding_bound
from .overlap import log_overlap
from .symplectic import GaussianState, validate_state

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_IO, EXIT_UNPHYSICAL = 0, 2, 3, 4, 5


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _num(x: Optional[float]):
    if x is None:
        return None
    x = float(x)
    return "inf" if math.isinf(x) else x


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


def _load_state(path: str, role: str) -> GaussianState:
    try:
        spec = statefile.load(path)
    except OSError as exc:
        raise _CliError(EXIT_INPUT, f"{role}: cannot read {path}: {exc.strerror}") from exc
    except statefile.StateFileError as exc:
        raise _CliError(EXIT_INPUT, f"{role}: {path}: field {exc}") from exc
    try:
        return build(spec)
    except GaussianError as exc:
        raise _CliError(EXIT_INPUT, f"{role}: {path}: {exc}") from exc


def _options(args) -> OptimizerOptions:
    try:
        return OptimizerOptions(
            grid_size=args.grid_size, eps_s=args.eps_s, p_cap=args.p_cap, s_tol=args.s_tol
        )
    except GaussianError as exc:
        raise _CliError(EXIT_INPUT, f"optimizer options: {exc}") from exc


def cmd_qhb(args) -> int:
    rho0 = _load_state(args.null, "--null")
    rho1 = _load_state(args.alt, "--alt")
    res = hoeffding_bound(rho0, rho1, args.r, _options(args), with_bounds=True)
    comp = res.companion
    _emit({
        "H": _num(res.value),
        "s_star": res.s_star,
        "method": res.method.value,
        "bounds": {"H_M": _num(comp.H_M), "H_Y": _num(comp.H_Y), "H_F": _num(comp.H_F)},
    })
    return EXIT_OK


def cmd_overlap(args) -> int:
    rho0 = _load_state(args.null, "--null")
    rho1 = _load_state(args.alt, "--alt")
    if not 0.0 < args.s < 1.0:
        raise _CliError(EXIT_INPUT, f"--s: must lie strictly inside (0, 1), got {args.s!r}")
    rep = log_overlap(rho0, rho1, args.s)
    _emit({"C_s": rep.C_s, "ln_C_s": rep.log_C_s, "M_s": rep.M_s, "Y_s": rep.Y_s})
    return EXIT_OK


def _grid_job(args) -> GridJob:
    base = default_job(args.figure, steps=args.steps)
    x = base.x if args.x is None else Axis(base.x.name, args.x[0], args.x[1], args.steps)
    y = base.y if args.y is None else Axis(base.y.name, args.y[0], args.y[1], args.steps)
    r = base.r if args.r is None else args.r
    mu = base.mu if args.mu is None else args.mu
    if args.mu is not None and base.figure is Figure.ST_CORRELATIONS and args.y is None and args.x is None:
        c_max = math.sqrt(max(mu * mu - 1.0, 0.0))
        x, y = Axis("c0", 0.0, c_max, args.steps), Axis("c1", 0.0, c_max, args.steps)
    try:
        return GridJob(base.figure, x, y, r=r, mu=mu, opts=_options(args))
    except InvalidSpec as exc:
        raise _CliError(EXIT_INPUT, str(exc)) from exc


def cmd_grid(args) -> int:
    job = _grid_job(args)
    out = Path(args.out)
    parent = out.parent if str(out.parent) else Path(".")
    if out.is_dir() or not parent.is_dir() or not os.access(parent, os.W_OK):
        raise _CliError(EXIT_IO, f"--out: cannot write to {out}")
    text = grid_csv(job, compute_grid(job))
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _CliError(EXIT_IO, f"--out: cannot write to {out}: {exc.strerror}") from exc
    return EXIT_OK


def _raw_for_validation(spec) -> Optional[GaussianState]:
    """Covariance of a family spec whose parameters are out of range, for reporting."""
    if isinstance(spec, Thermal) and math.isfinite(spec.nu):
        return GaussianState(np.zeros(2), spec.nu * np.eye(2))
    if isinstance(spec, SqueezedThermal) and math.isfinite(spec.mu) and math.isfinite(spec.c):
        return GaussianState(np.zeros(4), two_mode_cov(spec.mu, abs(spec.c)))
    return None


def cmd_validate(args) -> int:
    try:
        spec = statefile.load(args.file)
    except OSError as exc:
        raise _CliError(EXIT_INPUT, f"cannot read {args.file}: {exc.strerror}") from exc
    except statefile.StateFileError as exc:
        raise _CliError(EXIT_INPUT, f"{args.file}: field {exc}") from exc

    try:
        state = build(spec)
    except UnphysicalSpec:
        state = _raw_for_validation(spec)
    except InvalidSpec as exc:
        state = _raw_for_validation(spec)
        if state is None:
            raise _CliError(EXIT_INPUT, f"{args.file}: {exc}") from exc
    except GaussianError as exc:
        # only a non-symmetric raw covariance gets here
        print("symmetric: no\nphysical: no\npure: no\nspectrum: n/a")
        print(f"unphysical: {exc}")
        return EXIT_UNPHYSICAL

    rep = validate_state(state, strict=False)
    spectrum = "n/a" if rep.spectrum is None else "[" + ", ".join(f"{v:.12g}" for v in rep.spectrum) + "]"
    yes = {True: "yes", False: "no"}
    print(f"symmetric: {yes[rep.symmetric]}")
    print(f"physical: {yes[rep.physical]}")
    print(f"pure: {yes[rep.pure]}")
    print(f"spectrum: {spectrum}")
    if not rep.physical:
        print(f"unphysical: {rep.message}")
        return EXIT_UNPHYSICAL
    print(f"{'pure' if rep.pure else 'mixed'}, spectrum {spectrum}")
    return EXIT_OK


def _add_opts(p: argparse.ArgumentParser) -> None:
    d = OptimizerOptions()
    g = p.add_argument_group("optimizer")
    g.add_argument("--grid-size", type=int, default=d.grid_size, help="coarse s-grid points (default %(default)s)")
    g.add_argument("--eps-s", type=float, default=d.eps_s, help="distance of the s-grid from 0 and 1")
    g.add_argument("--p-cap", type=float, default=d.p_cap, help="divergence threshold on the objective")
    g.add_argument("--s-tol", type=float, default=d.s_tol, help="golden-section tolerance in s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussian-hoeffding",
        description="Hoeffding bound and s-overlaps for Gaussian states (vacuum covariance = identity).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qhb", help="Hoeffding bound H(r) with companion bounds, as JSON")
    p.add_argument("--null", required=True, metavar="FILE", help="state file of the null hypothesis")
    p.add_argument("--alt", required=True, metavar="FILE", help="state file of the alternative")
    p.add_argument("--r", required=True, type=float, help="false-positive exponent r > 0")
    _add_opts(p)
    p.set_defaults(func=cmd_qhb)

    p = sub.add_parser("overlap", help="s-overlap and its spectral upper bounds, as JSON")
    p.add_argument("--null", required=True, metavar="FILE")
    p.add_argument("--alt", required=True, metavar="FILE")
    p.add_argument("--s", required=True, type=float, help="0 < s < 1")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("grid", help="sweep H over a figure's axes and write CSV")
    p.add_argument("figure", choices=[f.value for f in Figure])
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--steps", type=int, default=41, help="points per axis (default %(default)s)")
    p.add_argument("--x", nargs=2, type=float, metavar=("LO", "HI"), help="range of the outer axis")
    p.add_argument("--y", nargs=2, type=float, metavar=("LO", "HI"), help="range of the inner axis")
    p.add_argument("--r", type=float, help="false-positive exponent (thermal-grid, st-correlations)")
    p.add_argument("--mu", type=float, help="thermal variance (st-correlations)")
    _add_opts(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("validate", help="check symmetry, physicality and purity of a state file")
    p.add_argument("file", metavar="FILE")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GaussianError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
