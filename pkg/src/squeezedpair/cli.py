"""Command line front end: single points, parameter grids, time evolution
and the preset data grids behind the survey figures.

Exit codes: 0 success, 2 usage problem, 3 I/O problem, 4 numerical failure.
CSV output is deterministic for a given invocation: fixed column order,
12 significant digits, LF line endings.
"""

import argparse
import configparser
import contextlib
import itertools
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dynamics import relax_to_steady, steady_identical, steady_nonidentical
from .geometry import AtomPairConfig, gamma12, omega12
from .lindblad import (DegenerateSteadyStateError, PropagationError,
                       build_liouvillian, propagate_path, steady_state)
from .metrics import entanglement_report
from .states import BathParams, CollectivePopulations, DensityMatrix


class UsageError(Exception):
    """Bad flag combination or malformed input."""


COLUMNS = [
    "r12_over_lambda", "mu_hat_dot_r_hat", "delta_over_gamma",
    "n_mean", "m_abs", "phi_s", "variant", "engine",
    "gamma12", "omega12",
    "rho_gg", "rho_ee", "rho_ss", "rho_aa", "rho_u",
    "concurrence", "c1", "c2",
    "fidelity_plus", "fidelity_minus", "purity", "tc",
]

AXIS_NAMES = ("r12_over_lambda", "n_mean", "delta_over_gamma", "m_abs", "phi_s")

_ENGINES_FOR_VARIANT = {
    "identical": ("analytic", "reduced_ode", "liouvillian"),
    "nonidentical": ("analytic", "reduced_ode"),
    "full": ("liouvillian",),
}

_INITIAL_STATES = {
    "gg": DensityMatrix.ground,
    "ee": DensityMatrix.doubly_excited,
    "ge": lambda: DensityMatrix(np.diag([0, 0, 1, 0]).astype(complex), check=False),
    "eg": lambda: DensityMatrix(np.diag([0, 0, 0, 1]).astype(complex), check=False),
    "s": DensityMatrix.symmetric,
    "a": DensityMatrix.antisymmetric,
    "mixed": DensityMatrix.maximally_mixed,
}


# ----------------------------------------------------------------------
# point evaluation (top level so a process pool can pickle it)

@dataclass(frozen=True)
class PointJob:
    r12: float
    mu: float
    delta: float
    n_mean: float
    m_abs: float
    phi_s: float
    carrier: float
    variant: str
    engine: str
    gamma12_override: float | None = None
    omega12_override: float | None = None


def evaluate_point(job: PointJob) -> dict:
    """One steady-state evaluation, returned as a column -> value dict."""
    cfg = AtomPairConfig(1.0, job.r12, job.mu, job.delta)
    bath = BathParams(job.n_mean, job.m_abs, job.phi_s, job.carrier)
    g12 = job.gamma12_override if job.gamma12_override is not None else gamma12(cfg)
    if job.omega12_override is not None:
        om12 = job.omega12_override
    else:
        om12 = omega12(cfg) if job.r12 > 0 else math.nan

    if job.engine == "analytic":
        steady = steady_identical if job.variant == "identical" else steady_nonidentical
        pops = steady(g12, bath)
        dm = pops.to_density_matrix(bath.phi_s)
    elif job.engine == "reduced_ode":
        pops = relax_to_steady(job.variant, g12, bath)
        dm = pops.to_density_matrix(bath.phi_s)
    else:
        liou = build_liouvillian(cfg, bath, gamma12=job.gamma12_override,
                                 omega12=job.omega12_override)
        dm = steady_state(liou)
        pops = CollectivePopulations.from_density_matrix(dm, bath.phi_s)

    report = entanglement_report(dm, bath)
    return {
        "r12_over_lambda": job.r12,
        "mu_hat_dot_r_hat": job.mu,
        "delta_over_gamma": job.delta,
        "n_mean": job.n_mean,
        "m_abs": job.m_abs,
        "phi_s": job.phi_s,
        "variant": job.variant,
        "engine": job.engine,
        "gamma12": g12,
        "omega12": om12,
        "rho_gg": pops.rho_gg,
        "rho_ee": pops.rho_ee,
        "rho_ss": pops.rho_ss,
        "rho_aa": pops.rho_aa,
        "rho_u": pops.rho_u,
        "concurrence": report.concurrence,
        "c1": report.c1,
        "c2": report.c2,
        "fidelity_plus": report.fidelity_plus,
        "fidelity_minus": report.fidelity_minus,
        "purity": report.purity,
        "tc": report.tc,
    }


def _evaluate_rows(jobs, n_workers):
    if n_workers <= 1 or len(jobs) < 2:
        return [evaluate_point(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        chunk = max(1, len(jobs) // (n_workers * 8))
        # map keeps submission order, so rows stay in grid order
        return list(pool.map(evaluate_point, jobs, chunksize=chunk))


# ----------------------------------------------------------------------
# output

def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return "%.12g" % value


def _write_csv(stream, rows, columns):
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(row[c]) for c in columns) + "\n")


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


# ----------------------------------------------------------------------
# shared option resolution

def _load_config(path):
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if not parser.read(path):
        raise OSError(f"cannot read config file: {path}")
    return parser


def _resolve_common(args):
    """Merge CLI flags, config file and defaults into one parameter dict."""
    conf = _load_config(args.config) if args.config else None

    def pick(cli_value, section, key, default, cast):
        if cli_value is not None:
            return cli_value
        if conf is not None and conf.has_option(section, key):
            return cast(conf.get(section, key))
        return default

    params = {
        "r12": pick(args.r12, "atoms", "r12_over_lambda", 0.05, float),
        "mu": pick(args.mu, "atoms", "mu_hat_dot_r_hat", 0.0, float),
        "delta": pick(args.delta, "atoms", "delta_over_gamma", 0.0, float),
        "n_mean": pick(args.n, "bath", "n_mean", 0.1, float),
        "m_mode": pick(args.m, "bath", "m_abs", "max", str),
        "phi_s": pick(args.phi_s, "bath", "phi_s", 0.0, float),
        "carrier": pick(getattr(args, "carrier", None), "bath",
                        "carrier_detuning_over_gamma", 0.0, float),
        "variant": pick(getattr(args, "variant", None), "sweep", "variant",
                        "identical", str),
        "engine": pick(getattr(args, "engine", None), "sweep", "engine",
                       "analytic", str),
        "jobs": pick(getattr(args, "jobs", None), "sweep", "jobs", 1, int),
        "gamma12_override": args.gamma12,
        "omega12_override": args.omega12,
        "config": conf,
    }
    if params["variant"] not in _ENGINES_FOR_VARIANT:
        raise UsageError(f"unknown variant '{params['variant']}'")
    return params


def _resolve_m(m_mode, n_mean):
    if m_mode == "max":
        return math.sqrt(n_mean * (n_mean + 1.0))
    try:
        return float(m_mode)
    except ValueError:
        raise UsageError(f"--m must be a number or 'max', got '{m_mode}'") from None


def _check_compat(params):
    variant, engine = params["variant"], params["engine"]
    if engine not in _ENGINES_FOR_VARIANT[variant]:
        allowed = ", ".join(_ENGINES_FOR_VARIANT[variant])
        raise UsageError(
            f"engine '{engine}' is not available for variant '{variant}' "
            f"(allowed: {allowed})")
    if variant == "identical" and params["delta"] != 0.0:
        raise UsageError(
            "variant 'identical' means equal frequencies; drop --delta or "
            "use variant 'full'")
    if variant == "nonidentical" and 0.0 < params["delta"] < 10.0:
        warnings.warn(
            f"secular description assumes delta >> 1 (got "
            f"{params['delta']}); results are the large-splitting limit",
            stacklevel=2)
    if (engine == "liouvillian" and params["r12"] == 0.0
            and params["omega12_override"] is None):
        raise UsageError(
            "the full generator needs the exchange shift, which diverges at "
            "zero separation; use a positive --r12 or pass --omega12")


def _job_for(params, **overrides):
    merged = dict(params)
    merged.update(overrides)
    return PointJob(
        r12=merged["r12"], mu=merged["mu"], delta=merged["delta"],
        n_mean=merged["n_mean"], m_abs=merged["m_abs"], phi_s=merged["phi_s"],
        carrier=merged["carrier"], variant=merged["variant"],
        engine=merged["engine"],
        gamma12_override=merged["gamma12_override"],
        omega12_override=merged["omega12_override"])


# ----------------------------------------------------------------------
# sweep grids

@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int
    spacing: str = "lin"

    def values(self):
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


def parse_axis(spec: str) -> SweepAxis:
    parts = spec.split(":")
    if len(parts) not in (4, 5):
        raise UsageError(
            f"axis '{spec}' is not of the form name:min:max:count[:lin|log]")
    name = parts[0]
    if name not in AXIS_NAMES:
        raise UsageError(
            f"unknown axis '{name}' (choose from {', '.join(AXIS_NAMES)})")
    try:
        lo, hi, count = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError:
        raise UsageError(f"axis '{spec}' has non-numeric bounds") from None
    spacing = parts[4] if len(parts) == 5 else "lin"
    if spacing not in ("lin", "log"):
        raise UsageError(f"axis spacing must be lin or log, got '{spacing}'")
    if count < 2:
        raise UsageError("each axis needs at least 2 points")
    if not lo < hi:
        raise UsageError("axis min must be strictly below max")
    if spacing == "log" and lo <= 0:
        raise UsageError("log spacing needs a positive range")
    return SweepAxis(name, lo, hi, count, spacing)


_AXIS_TO_PARAM = {
    "r12_over_lambda": "r12",
    "n_mean": "n_mean",
    "delta_over_gamma": "delta",
    "m_abs": "m_abs",
    "phi_s": "phi_s",
}


def _grid_jobs(params, axes):
    if not 1 <= len(axes) <= 2:
        raise UsageError("a sweep takes one or two --axis definitions")
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise UsageError("sweep axes must differ")
    if "delta_over_gamma" in names and params["variant"] != "full":
        raise UsageError(
            "a delta_over_gamma axis needs variant 'full' (the reduced "
            "variants fix the splitting)")
    jobs = []
    for combo in itertools.product(*(a.values() for a in axes)):
        point = dict(params)
        for axis, value in zip(axes, combo):
            point[_AXIS_TO_PARAM[axis.name]] = float(value)
        if "m_abs" not in names:
            point["m_abs"] = _resolve_m(point["m_mode"], point["n_mean"])
        jobs.append(_job_for(point))
    return jobs


# ----------------------------------------------------------------------
# figure presets; grid bounds are part of the external contract

_FIG_GRIDS = {
    1: dict(variant="identical"),
    2: dict(variant="nonidentical"),
}


def _figure_jobs(fig_id):
    if fig_id in (1, 2):
        variant = _FIG_GRIDS[fig_id]["variant"]
        r_axis = np.linspace(0.01, 1.2, 120)
        n_axis = np.linspace(0.005, 0.5, 100)
        return [
            PointJob(float(r), 0.0, 0.0, float(n),
                     math.sqrt(n * (n + 1.0)), 0.0, 0.0, variant, "analytic")
            for r in r_axis for n in n_axis
        ], []
    if fig_id == 3:
        delta_axis = np.linspace(0.0, 20.0, 81)
        jobs = [
            PointJob(0.05, 0.0, float(d), 0.1, math.sqrt(0.1 * 1.1), 0.0,
                     0.0, "full", "liouvillian")
            for d in delta_axis
        ]
        return jobs, ["rho_ss_plus_aa", "rho_gg_plus_ee"]
    if fig_id in (4, 5):
        n_axis = np.linspace(0.02, 2.0, 100)
        return [
            PointJob(0.05, 0.0, 0.0, float(n), math.sqrt(n * (n + 1.0)),
                     0.0, 0.0, variant, "analytic")
            for variant in ("identical", "nonidentical") for n in n_axis
        ], []
    raise UsageError(f"unknown figure id {fig_id}")


def _append_derived(rows, extra):
    for row in rows:
        if "rho_ss_plus_aa" in extra:
            row["rho_ss_plus_aa"] = row["rho_ss"] + row["rho_aa"]
        if "rho_gg_plus_ee" in extra:
            row["rho_gg_plus_ee"] = row["rho_gg"] + row["rho_ee"]
    return rows


# ----------------------------------------------------------------------
# subcommand handlers

def cmd_point(args):
    params = _resolve_common(args)
    params["m_abs"] = _resolve_m(params["m_mode"], params["n_mean"])
    _check_compat(params)
    row = evaluate_point(_job_for(params))
    with _open_out(args.out) as fh:
        _write_csv(fh, [row], COLUMNS)
    return 0


def cmd_sweep(args):
    params = _resolve_common(args)
    specs = args.axis
    if not specs and params["config"] is not None:
        conf = params["config"]
        specs = [conf.get("sweep", key)
                 for key in ("axis1", "axis2")
                 if conf.has_option("sweep", key)]
    if not specs:
        raise UsageError("a sweep needs at least one --axis definition")
    axes = [parse_axis(s) for s in specs]
    _check_compat(params)
    jobs = _grid_jobs(params, axes)
    rows = _evaluate_rows(jobs, params["jobs"])
    with _open_out(args.out) as fh:
        _write_csv(fh, rows, COLUMNS)
    return 0


def cmd_evolve(args):
    params = _resolve_common(args)
    params["m_abs"] = _resolve_m(params["m_mode"], params["n_mean"])
    if args.t_max <= 0:
        raise UsageError("--t-max must be positive")
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    if params["r12"] == 0.0 and params["omega12_override"] is None:
        raise UsageError(
            "time evolution runs on the full generator; use a positive "
            "--r12 or pass --omega12")
    cfg = AtomPairConfig(1.0, params["r12"], params["mu"], params["delta"])
    bath = BathParams(params["n_mean"], params["m_abs"], params["phi_s"],
                      params["carrier"])
    liou = build_liouvillian(cfg, bath,
                             gamma12=params["gamma12_override"],
                             omega12=params["omega12_override"])
    rho0 = _INITIAL_STATES[args.rho0]()
    times = np.linspace(0.0, args.t_max, args.samples)
    states = propagate_path(liou, rho0, [float(t) for t in times])
    rows = []
    for t, dm in zip(times, states):
        pops = CollectivePopulations.from_density_matrix(dm, bath.phi_s)
        report = entanglement_report(dm, bath)
        rows.append({
            "t": float(t),
            "r12_over_lambda": params["r12"],
            "mu_hat_dot_r_hat": params["mu"],
            "delta_over_gamma": params["delta"],
            "n_mean": params["n_mean"],
            "m_abs": params["m_abs"],
            "phi_s": params["phi_s"],
            "variant": "full",
            "engine": "liouvillian",
            "gamma12": liou.gamma12,
            "omega12": liou.omega12,
            "rho_gg": pops.rho_gg,
            "rho_ee": pops.rho_ee,
            "rho_ss": pops.rho_ss,
            "rho_aa": pops.rho_aa,
            "rho_u": pops.rho_u,
            "concurrence": report.concurrence,
            "c1": report.c1,
            "c2": report.c2,
            "fidelity_plus": report.fidelity_plus,
            "fidelity_minus": report.fidelity_minus,
            "purity": report.purity,
            "tc": report.tc,
        })
    with _open_out(args.out) as fh:
        _write_csv(fh, rows, ["t"] + COLUMNS)
    return 0


def cmd_figure(args):
    jobs, extra = _figure_jobs(args.fig_id)
    rows = _append_derived(_evaluate_rows(jobs, args.jobs or 1), extra)
    with _open_out(args.out) as fh:
        _write_csv(fh, rows, COLUMNS + extra)
    return 0


# ----------------------------------------------------------------------
# parser

def _add_common(parser, with_engine=True):
    parser.add_argument("--r12", type=float, default=None,
                        help="separation in wavelengths (default 0.05)")
    parser.add_argument("--mu", type=float, default=None,
                        help="dipole projection on the axis (default 0)")
    parser.add_argument("--delta", type=float, default=None,
                        help="half frequency splitting in rate units (default 0)")
    parser.add_argument("--n", type=float, default=None,
                        help="mean photon number (default 0.1)")
    parser.add_argument("--m", type=str, default=None,
                        help="two-photon correlation magnitude, a number or "
                             "'max' for sqrt(N(N+1)) (default max)")
    parser.add_argument("--phi-s", dest="phi_s", type=float, default=None,
                        help="squeezing phase (default 0)")
    parser.add_argument("--gamma12", type=float, default=None,
                        help="override the collective damping rate")
    parser.add_argument("--omega12", type=float, default=None,
                        help="override the exchange shift")
    parser.add_argument("--config", type=str, default=None,
                        help="key = value file with [atoms]/[bath]/[sweep] sections")
    parser.add_argument("--out", type=str, default=None,
                        help="output CSV path ('-' or omitted for stdout)")
    if with_engine:
        parser.add_argument("--variant", choices=list(_ENGINES_FOR_VARIANT),
                            default=None)
        parser.add_argument("--engine",
                            choices=["analytic", "reduced_ode", "liouvillian"],
                            default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="squeezedpair",
        description="Steady states and entanglement of two collectively "
                    "damped atoms in a broadband squeezed vacuum.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate a single parameter point")
    _add_common(p_point)
    p_point.set_defaults(handler=cmd_point)

    p_sweep = sub.add_parser("sweep", help="evaluate a 1D or 2D grid")
    _add_common(p_sweep)
    p_sweep.add_argument("--axis", action="append", default=[],
                         metavar="NAME:MIN:MAX:COUNT[:lin|log]",
                         help="sweep axis, repeatable up to twice; the first "
                              "axis is the slow (outer) one")
    p_sweep.add_argument("--jobs", type=int, default=None,
                         help="worker processes (default 1)")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_evolve = sub.add_parser("evolve", help="integrate the full generator in time")
    _add_common(p_evolve, with_engine=False)
    p_evolve.add_argument("--rho0", choices=sorted(_INITIAL_STATES),
                          default="gg", help="initial state (default gg)")
    p_evolve.add_argument("--t-max", dest="t_max", type=float, default=100.0,
                          help="final time in units of 1/Gamma (default 100)")
    p_evolve.add_argument("--samples", type=int, default=101,
                          help="number of uniformly spaced samples (default 101)")
    p_evolve.set_defaults(handler=cmd_evolve)

    p_fig = sub.add_parser("figure", help="write a preset survey data grid")
    p_fig.add_argument("fig_id", type=int, choices=[1, 2, 3, 4, 5],
                       help="preset id")
    p_fig.add_argument("--jobs", type=int, default=None)
    p_fig.add_argument("--out", type=str, default=None)
    p_fig.set_defaults(handler=cmd_figure)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (None, 0) else int(exc.code)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateSteadyStateError, PropagationError,
            np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
