"""Command-line front end: ``ntnvec {solve,sweep,validate,budget}``."""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .channel import platform_capacities
from .errors import ConfigError, DomainError, InstabilityError, SolverError
from .latency import avg_distance
from .optimizer import eta_max, solve
from .scenario import (AXIS_UNITS, Direction, Kind, Scheme, SweepAxis, apply_overrides,
                       link_key, load_config)
from .sweep import SweepSpec, emit_csv, emit_plotdata, run_sweep

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SOLVER = 2
EXIT_IO = 3

ENV_CONFIG = "NTNVEC_CONFIG"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def g4(x):
    return f"{x:.4g}"


def build_parser():
    parser = _Parser(prog="ntnvec",
                     description="Optimal offloading for UAV/HAP-assisted vehicular edge computing.")
    common = _Parser(add_help=False)
    common.add_argument("--config", help=f"config file, or 'default' for the bundled one "
                                         f"(falls back to ${ENV_CONFIG})")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="override a config key in file units, e.g. scenario.k=25")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for every bisection iterate")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="solve one or all schemes")
    p.add_argument("--scheme", choices=["local", "so-uav", "so-hap", "ho"],
                   help="scheme to solve (default: all)")
    p.add_argument("--hybrid-method", choices=["equalize", "two_step"], default="equalize")

    p = sub.add_parser("sweep", parents=[common], help="run a parameter sweep")
    p.add_argument("--axis", choices=[a.value for a in SweepAxis])
    p.add_argument("--values", help="comma-separated axis values in file units "
                                    "(Mb for n_ul, GFLOP/s for capacities)")
    p.add_argument("--scheme", action="append", choices=["local", "so-uav", "so-hap", "ho"],
                   help="restrict to this scheme (repeatable)")
    p.add_argument("--output", help="CSV path; plot data goes next to it with a .dat suffix "
                                    "(default: CSV on stdout)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--hybrid-method", choices=["equalize", "two_step"], default="equalize")

    sub.add_parser("validate", parents=[common], help="check a config and print derived values")
    sub.add_parser("budget", parents=[common], help="print the link budget of every link")
    return parser


def _load(args):
    path = args.config or os.environ.get(ENV_CONFIG)
    if not path:
        raise _UsageError(f"no config given: pass --config PATH or set ${ENV_CONFIG}")
    config = load_config(path)
    if args.overrides:
        config = apply_overrides(config, args.overrides)
    return config


def _print_solution(sol, out):
    print(f"scheme: {sol.scheme}", file=out)
    print(f"binding: {sol.binding} (iterations: {sol.iterations})", file=out)
    if sol.eta_star:
        for kind, eta in sol.eta_star.items():
            print(f"eta_{kind}: {g4(eta)}", file=out)
    else:
        print("eta: 0 (fully local)", file=out)
    print(f"objective: {g4(sol.objective_value)} s", file=out)
    print(f"t_lp: {g4(sol.t_lp)} s", file=out)
    for kind, b in sol.breakdowns.items():
        print(f"{kind} breakdown:", file=out)
        for name in ("t_prop", "t_ul", "t_dl", "t_queue_wait", "t_service", "t_vec"):
            print(f"  {name}: {g4(getattr(b, name))} s", file=out)


def cmd_solve(args, out):
    config = _load(args)
    schemes = [Scheme.parse(args.scheme)] if args.scheme else list(Scheme)
    for i, scheme in enumerate(schemes):
        if i:
            print(file=out)
        sol = solve(config, scheme, hybrid_method=args.hybrid_method)
        _print_solution(sol, out)
    return EXIT_OK


def cmd_sweep(args, out):
    config = _load(args)
    axis = SweepAxis(args.axis) if args.axis else None
    values = None
    if args.values:
        unit = AXIS_UNITS[axis or config.sweep.axis]
        try:
            values = [float(v) * unit for v in args.values.split(",")]
        except ValueError:
            raise _UsageError(f"--values: not a number list: {args.values!r}") from None
    schemes = [Scheme.parse(s) for s in args.scheme] if args.scheme else None
    spec = SweepSpec.from_config(config, axis=axis, values=values, schemes=schemes,
                                 hybrid_method=args.hybrid_method)
    records = run_sweep(spec, workers=args.workers)
    if args.output:
        emit_csv(records, args.output)
        root, _ = os.path.splitext(args.output)
        emit_plotdata(records, root + ".dat")
        logging.getLogger(__name__).info("wrote %s and %s.dat", args.output, root)
    else:
        emit_csv(records, out)
    return EXIT_OK


def cmd_validate(args, out):
    config = _load(args)
    sc = config.scenario
    print("config: ok", file=out)
    print(f"k: {g4(sc.k)} GV/km^2  A: {g4(sc.A)} km^2  r: {g4(sc.r)} fps", file=out)
    print(f"n_ul: {g4(sc.n_ul)} bit  n_dl: {g4(sc.n_dl)} bit  C: {g4(sc.C)} FLOP  "
          f"xi: {g4(sc.xi)}", file=out)
    print(f"lambda: {g4(sc.arrival_rate)} tasks/s", file=out)
    print(f"local time (eta=0): {g4(sc.C / config.platform(Kind.GV).capacity)} s", file=out)
    for kind in (Kind.UAV, Kind.HAP):
        p = config.platform(kind)
        bound = eta_max(p.servers, p.capacity, sc.C, sc.k, sc.A, sc.r)
        print(f"eta_max({kind}): {g4(bound)}" + (" (clamped to 1)" if bound > 1 else ""),
              file=out)
    return EXIT_OK


def cmd_budget(args, out):
    config = _load(args)
    sc = config.scenario
    for kind in (Kind.UAV, Kind.HAP):
        platform = config.platform(kind)
        d = avg_distance(sc.A, platform.altitude)
        ul, dl = platform_capacities(sc, platform, config.links)
        for direction, cap in ((Direction.UL, ul), (Direction.DL, dl)):
            link = config.links[link_key(kind, direction)]
            print(f"{kind} {direction}: d={g4(d)} km  EIRP={g4(link.tx.resolved_eirp())} dBW  "
                  f"G/T={g4(link.rx.resolved_g_over_t())} dB/K  PL={g4(cap.pl_used)} dB  "
                  f"SNR={g4(cap.snr_db)} dB  R={g4(cap.rate)} bit/s", file=out)
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "validate": cmd_validate,
            "budget": cmd_budget}


def main(argv=None, out=None):
    out = out or sys.stdout
    err = sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"ntnvec: error: {exc}", file=err)
        return EXIT_VALIDATION
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=err)
    logging.getLogger("ntnvec").setLevel(level)
    try:
        return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        print(f"ntnvec: error: {exc}", file=err)
        return EXIT_VALIDATION
    except ConfigError as exc:
        print(f"ntnvec: invalid config: {exc}", file=err)
        return EXIT_VALIDATION
    except (SolverError, InstabilityError, DomainError) as exc:
        print(f"ntnvec: solver failure: {exc}", file=err)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"ntnvec: I/O error: {exc}", file=err)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
