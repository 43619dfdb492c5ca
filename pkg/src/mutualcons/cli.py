"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 infeasible problem, 4 solver failure.
"""

import argparse
import csv
import dataclasses
import sys

from .exceptions import InfeasibleError, SolverError, ValidationError
from .io import load_instance, write_csv, write_json
from .mcmc import solve_mcmc
from .measures import diagnostics, membership
from .owamcc import (
    ap_owamcc,
    cost_bounds,
    delta_bounds,
    solve_exact_enum,
    solve_symmetric_linear,
)
from .simulation import (
    COST_MODES,
    MODES,
    REPORT_COLUMNS,
    SimulationConfig,
    point_rows,
    run_simulation,
    sample_region,
)
from .validation import check_opinions

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_SOLVER = 0, 2, 3, 4


def _instance(args):
    inst = load_instance(args.instance)
    updates = {}
    if getattr(args, "epsilon", None) is not None:
        updates["epsilon"] = args.epsilon
    if getattr(args, "delta", None) is not None:
        updates["delta"] = args.delta
    return dataclasses.replace(inst, **updates) if updates else inst


def _vector(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def cmd_measures(args):
    inst = _instance(args)
    x = inst.o if args.x is None else check_opinions(args.x, "x")
    return {"x": x, "measures": diagnostics(x, inst), "membership": membership(x, inst)}


def cmd_solve_mcmc(args):
    inst = _instance(args)
    if inst.delta is None:
        raise ValidationError("solve-mcmc needs a delta (instance field or --delta)")
    res = solve_mcmc(inst.o, inst.c, inst.delta)
    return {
        "x": res.x,
        "cost": res.cost,
        "interval": list(res.interval),
        "delta": res.delta,
        "breakpoints_examined": res.breakpoints_examined,
    }


def cmd_bounds(args):
    inst = _instance(args)
    db = delta_bounds(inst.epsilon, inst.omega)
    lower, upper = cost_bounds(inst)
    return {
        "delta_minus": db.delta_minus,
        "delta_plus": db.delta_plus,
        "cost_lower": lower,
        "cost_upper": upper,
    }


def cmd_approx(args):
    inst = _instance(args)
    res = ap_owamcc(inst, max_iters=args.max_iters, tau=args.tau)
    out = dataclasses.asdict(res)
    out["trace"] = [list(t) for t in res.trace]
    return out


def cmd_exact(args):
    res = solve_exact_enum(_instance(args))
    return dataclasses.asdict(res)


def cmd_symmetric(args):
    return dataclasses.asdict(solve_symmetric_linear(_instance(args)))


def cmd_simulate(args):
    config = SimulationConfig(
        n=args.n, trials=args.trials, epsilon=args.epsilon if args.epsilon is not None else 0.15,
        seed=args.seed, mode=args.mode, cost_mode=args.cost_mode,
        max_iters=args.max_iters, tau=args.tau,
    )
    report = run_simulation(config, n_jobs=args.jobs)
    if args.format == "csv":
        return ("csv", report.rows(), list(REPORT_COLUMNS))
    return report.to_dict()


def cmd_sample_region(args):
    inst = _instance(args)
    X, inside = sample_region(inst, args.region, args.count, seed=args.seed)
    rows, columns = point_rows(X, inside)
    if args.format == "csv":
        return ("csv", rows, columns)
    return {"region": args.region, "points": rows}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mutualcons", description="Minimum cost consensus solvers."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, instance=True):
        p = sub.add_parser(name, help=help_)
        if instance:
            p.add_argument("--instance", required=True, help="JSON instance file")
        p.add_argument("--out", help="write the result here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.set_defaults(func=func)
        return p

    p = add("measures", cmd_measures, "consensus measures and region membership")
    p.add_argument("--x", type=_vector, help="comma-separated point (default: the opinions)")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)

    p = add("solve-mcmc", cmd_solve_mcmc, "minimum cost under mutual consensus")
    p.add_argument("--delta", type=float)

    p = add("bounds", cmd_bounds, "delta and cost bounds for OWA-MCC")
    p.add_argument("--epsilon", type=float)

    p = add("approx", cmd_approx, "approximate OWA-MCC by radius interpolation")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--max-iters", type=int, default=10)
    p.add_argument("--tau", type=float, default=0.01)

    p = add("exact", cmd_exact, "exact OWA-MCC by ordering enumeration (n <= 9)")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)

    p = add("symmetric", cmd_symmetric, "exact OWA-MCC for uniform costs (single LP)")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)

    p = add("simulate", cmd_simulate, "randomized approximation-vs-exact batch", instance=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="symmetric-linear")
    p.add_argument("--cost-mode", choices=COST_MODES, default=None)
    p.add_argument("--max-iters", type=int, default=10)
    p.add_argument("--tau", type=float, default=0.01)
    p.add_argument("--jobs", type=int, default=1)

    p = add("sample-region", cmd_sample_region, "label uniform samples by region membership")
    p.add_argument("--region", required=True, choices=("delta", "epsilon", "gamma1", "gamma2"))
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.cost_mode is None:
        args.cost_mode = "uniform" if args.mode == "symmetric-linear" else "random"
    try:
        result = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    if isinstance(result, tuple) and result[0] == "csv":
        _, rows, columns = result
        if args.out is None:
            writer = csv.DictWriter(sys.stdout, fieldnames=columns, extrasaction="ignore")
            writer.writeheader()
            writer.writerows(rows)
        else:
            write_csv(rows, columns, args.out)
        return EXIT_OK
    if args.format == "csv":
        print("error: this command only produces JSON", file=sys.stderr)
        return EXIT_INVALID
    text = write_json(result, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
