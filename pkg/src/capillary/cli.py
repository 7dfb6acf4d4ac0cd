"""Command-line front end.

Every subcommand writes one table, as CSV (header row, 17 significant
digits) or JSON.  Errors go to stderr as a JSON record
``{"error": kind, "message": text}`` with exit status 2 for bad arguments,
3 for domain errors and 4 for convergence failures.  ``verify`` exits with
status 1 when any check fails.
"""

import argparse
from concurrent.futures import ThreadPoolExecutor
import csv
import io
import json
import math
import sys

import numpy as np

from . import coexistence, dynamics, geometry, interface
from .config import ENV_VAR, load_fluid
from .errors import ConvergenceError, DomainError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _real(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if math.isnan(value):
        raise argparse.ArgumentTypeError("nan is not allowed")
    return value


def _finite(text):
    value = _real(text)
    if math.isinf(value):
        raise argparse.ArgumentTypeError("value must be finite")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("value must be at least 1")
    return value


def _add_temp(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--temp-reduced", type=_finite, help="T / T_c")
    g.add_argument("--temp", type=_finite, help="absolute temperature")


def _common(default):
    # accepted before or after the subcommand; subparsers must not reset them
    p = _Parser(add_help=False)
    p.add_argument("--fluid", default=default,
                   help=f"fluid JSON path or built-in name (water, reduced); "
                        f"defaults to ${ENV_VAR}, then 'reduced'")
    p.add_argument("--output", choices=("csv", "json"), default=default or "csv")
    p.add_argument("--out", default=default, help="write the table to this file")
    return p


def build_parser():
    parser = _Parser(prog="capillary", parents=[_common(None)],
                     description="Capillary layer of a van der Waals fluid.")
    shared = _common(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coexist", parents=[shared],
                       help="coexisting densities and pressure")
    _add_temp(p)

    p = sub.add_parser("profile", parents=[shared], help="planar density profile")
    _add_temp(p)
    p.add_argument("--points", type=_positive_int, default=2001)
    p.add_argument("--tail-cut", type=_finite, default=1e-6)

    p = sub.add_parser("tension", parents=[shared], help="static surface tension")
    _add_temp(p)

    p = sub.add_parser("laplace", parents=[shared],
                       help="pressure jump with mass transfer")
    p.add_argument("--q", type=_finite, required=True, help="mass flux")
    p.add_argument("--rm", type=_real, default=math.inf,
                   help="mean curvature radius, inf for planar")
    _add_temp(p, required=False)
    p.add_argument("--rho-v", type=_finite)
    p.add_argument("--rho-l", type=_finite)
    p.add_argument("--h", type=_finite, help="static tension (default: computed or 0)")
    p.add_argument("--eta-mode", choices=("fluid", "stokes", "explicit"), default="fluid")
    p.add_argument("--mu-v", type=_finite)
    p.add_argument("--mu-l", type=_finite)
    p.add_argument("--eta-v", type=_finite)
    p.add_argument("--eta-l", type=_finite)

    p = sub.add_parser("marangoni", parents=[shared],
                       help="tangential shear from a temperature gradient")
    _add_temp(p)
    p.add_argument("--dtds", type=_finite, nargs="+", required=True,
                   help="dT/ds along the interface (one or two components)")
    p.add_argument("--dtemp", type=_finite, default=None,
                   help="finite-difference step in T (default 1e-3 T_c)")

    p = sub.add_parser("verify", parents=[shared],
                       help="run residual checks and print a pass/fail table")
    _add_temp(p, required=False)
    p.add_argument("--points", type=_positive_int, default=2001)

    p = sub.add_parser("sweep", parents=[shared],
                       help="coexistence or tension over a temperature range")
    p.add_argument("--tmin", type=_finite, required=True, help="lowest T / T_c")
    p.add_argument("--tmax", type=_finite, required=True, help="highest T / T_c")
    p.add_argument("--steps", type=_positive_int, default=10)
    p.add_argument("--what", choices=("coexist", "tension"), default="coexist")
    p.add_argument("--workers", type=_positive_int, default=4)
    return parser


class Table:
    """Rows for CSV plus the JSON payload of the same result."""

    def __init__(self, header, rows, payload):
        self.header = header
        self.rows = rows
        self.payload = payload

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self):
        return json.dumps(self.payload, indent=1) + "\n"


def _fmt(v):
    if isinstance(v, (bool, str)):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def _temperature(args, fluid):
    if args.temp is not None:
        return args.temp
    return fluid.temp(args.temp_reduced)


COEX_HEADER = ["temp", "rho_v", "rho_l", "p0", "spinodal_low", "spinodal_high"]


def _coex_row(c):
    return [c.temp, c.rho_v, c.rho_l, c.p0, c.spinodal[0], c.spinodal[1]]


def cmd_coexist(args, fluid):
    c = coexistence.maxwell_construction(_temperature(args, fluid), fluid)
    return Table(COEX_HEADER, [_coex_row(c)], c.to_dict())


def cmd_profile(args, fluid):
    c = coexistence.maxwell_construction(_temperature(args, fluid), fluid)
    prof = interface.build_profile(c, fluid, n_points=args.points, tail_cut=args.tail_cut)
    h = interface.surface_tension(c, fluid).h_static
    prof = interface.InterfaceProfile(**{**prof.__dict__, "h_static": h})
    rows = list(zip(prof.z, prof.rho, prof.drho_dz))
    return Table(["z", "rho", "drho_dz"], rows, prof.to_dict())


TENSION_HEADER = ["temp", "h_static", "branch_v", "branch_l"]


def _tension_row(t):
    return [t.temp, t.h_static, t.branch_v, t.branch_l]


def cmd_tension(args, fluid):
    c = coexistence.maxwell_construction(_temperature(args, fluid), fluid)
    t = interface.surface_tension(c, fluid)
    return Table(TENSION_HEADER, [_tension_row(t)], t.to_dict())


JUMP_HEADER = ["q", "r_m", "h", "k", "dp", "inertial_term", "capillary_term"]


def jump_record(inputs, result):
    """Serialized laplace row; :func:`jump_from_record` inverts it."""
    return {"q": inputs.q, "r_m": inputs.r_m, "h": inputs.h_static, "k": result.k_dyn,
            "dp": result.dp, "inertial_term": result.inertial_term,
            "capillary_term": result.capillary_term}


def jump_from_record(rec):
    return dynamics.JumpResult(k_dyn=rec["k"], dp=rec["dp"],
                               inertial_term=rec["inertial_term"],
                               capillary_term=rec["capillary_term"])


def cmd_laplace(args, fluid):
    rho_v, rho_l, h = args.rho_v, args.rho_l, args.h
    if args.temp is not None or args.temp_reduced is not None:
        c = coexistence.maxwell_construction(_temperature(args, fluid), fluid)
        rho_v = c.rho_v if rho_v is None else rho_v
        rho_l = c.rho_l if rho_l is None else rho_l
        if h is None:
            h = interface.surface_tension(c, fluid).h_static
    if rho_v is None or rho_l is None:
        raise UsageError("laplace needs --rho-v and --rho-l, or a temperature")
    h = 0.0 if h is None else h
    mu_v = float(fluid.visc_mu(rho_v)) if args.mu_v is None else args.mu_v
    mu_l = float(fluid.visc_mu(rho_l)) if args.mu_l is None else args.mu_l
    if args.eta_mode == "explicit":
        if args.eta_v is None or args.eta_l is None:
            raise UsageError("--eta-mode explicit needs --eta-v and --eta-l")
        eta_v, eta_l = args.eta_v, args.eta_l
    elif args.eta_mode == "stokes":
        eta_v, eta_l = -2.0 / 3.0 * mu_v, -2.0 / 3.0 * mu_l
    else:
        eta_v, eta_l = float(fluid.visc_eta(rho_v)), float(fluid.visc_eta(rho_l))
    inputs = dynamics.JumpInputs(q=args.q, r_m=args.rm, rho_v=rho_v, rho_l=rho_l,
                                 eta_v=eta_v, eta_l=eta_l, mu_l=mu_l, h_static=h)
    rec = jump_record(inputs, dynamics.laplace_jump(inputs))
    return Table(JUMP_HEADER, [[rec[k] for k in JUMP_HEADER]], rec)


MARANGONI_HEADER = ["temp", "dh_dt", "mu_l", "grad_h_1", "grad_h_2", "d13", "d23"]


def cmd_marangoni(args, fluid):
    if len(args.dtds) > 2:
        raise UsageError("--dtds takes one or two components")
    temp = _temperature(args, fluid)
    dtemp = 1e-3 * fluid.t_crit if args.dtemp is None else args.dtemp
    slope = dynamics.tension_temperature_gradient(temp, dtemp, fluid)
    c = coexistence.maxwell_construction(temp, fluid)
    mu_l = float(fluid.visc_mu(c.rho_l))
    dtds = list(args.dtds) + [0.0] * (2 - len(args.dtds))
    grad = [slope * g for g in dtds]
    shear = dynamics.marangoni_shear(grad, mu_l)
    rec = dict(zip(MARANGONI_HEADER, [temp, slope, mu_l, grad[0], grad[1],
                                      float(shear[0]), float(shear[1])]))
    return Table(MARANGONI_HEADER, [[rec[k] for k in MARANGONI_HEADER]], rec)


def verification_checks(temp, fluid, points=2001):
    """Residual checks on one temperature; rows of (name, value, limit)."""
    c = coexistence.maxwell_construction(temp, fluid)
    checks = []
    res = coexistence.maxwell_residual(c.rho_v, c.rho_l, c.p0, c.p0, temp, fluid)
    checks.append(("maxwell_residual", abs(res) * fluid.rho_crit / fluid.p_crit, 1e-10))

    prof = interface.build_profile(c, fluid, n_points=points)
    w = np.where(prof.rho <= c.rho_i,
                 interface.excess_w(prof.rho, interface.VAPOUR, c, fluid),
                 interface.excess_w(prof.rho, interface.LIQUID, c, fluid))
    first = np.abs(0.5 * fluid.lam * prof.drho_dz ** 2 - w).max() / w.max()
    checks.append(("first_integral", first, 1e-8))

    h = interface.surface_tension(c, fluid).h_static
    checks.append(("tension_consistency",
                   abs(interface.profile_tension(prof) - h) / h, 1e-5))

    interior = (np.abs(interface.interior_residual(prof, fluid)).max()
                / interface.chemical_potential_scale(prof, fluid))
    checks.append(("interior_balance", interior, 1e-4))

    eta = fluid.visc_eta(prof.rho)
    mu = fluid.visc_mu(prof.rho)
    r2, rhs2 = geometry.verify_property2(prof.z, prof.rho, eta, mu, 1.0, math.inf)
    # the profile grid is non-uniform, so this is a discretisation error
    checks.append(("normal_stress_identity", r2[-1] / np.abs(rhs2).max(), 1e-4))

    lhs6, rhs6 = geometry.verify_property6(prof.z, prof.rho, 1.0)
    checks.append(("inertia_identity", abs(lhs6[-1] - rhs6[-1]) / abs(rhs6[-1]), 1e-6))

    fine = interface.build_profile(c, fluid, n_points=points, tail_cut=1e-8)
    e12 = dynamics.eq12_interior(fine, 1.0, math.inf, fluid)
    checks.append(("bulk_brackets", max(e12.capillary_ratio, e12.viscous_ratio), 1e-6))
    return checks


def cmd_verify(args, fluid):
    if args.temp is None and args.temp_reduced is None:
        temp = fluid.temp(0.9)
    else:
        temp = _temperature(args, fluid)
    rows = [[name, value, limit, bool(value < limit)]
            for name, value, limit in verification_checks(temp, fluid, args.points)]
    payload = [dict(zip(("check", "value", "limit", "passed"), r)) for r in rows]
    table = Table(["check", "value", "limit", "passed"], rows, payload)
    table.failed = not all(r[3] for r in rows)
    return table


def cmd_sweep(args, fluid):
    if not 0.0 < args.tmin <= args.tmax < 1.0:
        raise DomainError("sweep needs 0 < tmin <= tmax < 1 in reduced temperature")
    temps = np.linspace(args.tmin, args.tmax, args.steps) * fluid.t_crit
    if args.what == "coexist":
        def work(t):
            return coexistence.maxwell_construction(t, fluid)
        header, to_row = COEX_HEADER, _coex_row
    else:
        def work(t):
            return interface.surface_tension(coexistence.maxwell_construction(t, fluid), fluid)
        header, to_row = TENSION_HEADER, _tension_row
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(work, temps))
    results.sort(key=lambda r: r.temp)
    return Table(header, [to_row(r) for r in results], [r.to_dict() for r in results])


COMMANDS = {
    "coexist": cmd_coexist,
    "profile": cmd_profile,
    "tension": cmd_tension,
    "laplace": cmd_laplace,
    "marangoni": cmd_marangoni,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def _fail(kind, message, status, stderr):
    stderr.write(json.dumps({"error": kind, "message": str(message)}) + "\n")
    return status


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, run the subcommand and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        fluid = load_fluid(args.fluid)
        table = COMMANDS[args.command](args, fluid)
    except UsageError as exc:
        return _fail("parse", exc, EXIT_PARSE, stderr)
    except ConvergenceError as exc:
        return _fail("convergence", exc, EXIT_CONVERGENCE, stderr)
    except DomainError as exc:
        return _fail("domain", exc, EXIT_DOMAIN, stderr)
    text = table.to_json() if args.output == "json" else table.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_CHECK_FAILED if getattr(table, "failed", False) else EXIT_OK


def main():
    sys.exit(run())
