"""Command-line harness.

Subcommands: generate, solve, oracle, experiment, mutation-stats.
Exit codes: 0 success, 1 usage or parse errors, 2 generation or oracle
infeasibility.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    CollinearTripleError,
    DuplicatePointError,
    GenerationExhaustedError,
    ParseError,
    TooLargeError,
    TooSmallError,
)
from .experiment import (
    CSV_COLUMNS,
    make_instance,
    parse_config,
    run_experiment,
    run_single,
    strongest_oracle,
    write_csv,
)
from .instance import read_instance, write_instance, write_tour
from .oracle import brute_force_optimum, held_karp_optimum, hull_order_optimum
from .search import mutation_statistics


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1, not argparse's default 2
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="tsplab", description="Euclidean TSP search laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate an instance file")
    p.add_argument("--family", required=True, choices=["grid", "convex", "inner"])
    p.add_argument("--n", type=int, help="point count (grid, convex)")
    p.add_argument("--h", type=int, help="hull point count (inner)")
    p.add_argument("--k", type=int, help="interior point count (inner)")
    p.add_argument("--m", type=int, required=True, help="grid side length")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="instance file to write")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="run one search on an instance file")
    p.add_argument("instance", help="instance file")
    p.add_argument("--algorithm", required=True, choices=["rls", "ea"])
    p.add_argument("--budget", type=int, required=True, help="max steps/generations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mu", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--mutation", choices=["two_opt", "mixed"], default="two_opt")
    p.add_argument("--optimum", type=float, default=None, help="known optimum value")
    p.add_argument("--no-oracle", action="store_true", help="skip automatic oracle lookup")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact optimum of an instance file")
    p.add_argument("instance", help="instance file")
    p.add_argument("--method", required=True, choices=["brute", "held_karp", "hull_order"])
    p.add_argument("--tour-out", default=None, help="write the optimal tour here")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("experiment", help="run a batch experiment from a config file")
    p.add_argument("config", help="flat key = value config file")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("mutation-stats", help="empirical mutation distribution report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_mutation_stats)

    return parser


def cmd_generate(args) -> int:
    if args.family == "inner":
        if args.h is None or args.k is None:
            raise _UsageError("family 'inner' needs --h and --k")
        params = {"h": args.h, "k": args.k}
    else:
        if args.n is None:
            raise _UsageError(f"family {args.family!r} needs --n")
        params = {"n": args.n}
    _, inst = make_instance(args.family, params, args.m, args.seed)
    write_instance(inst, args.out)
    metrics = inst.metrics
    print(
        f"n={inst.n} k={inst.inner_count} m={inst.grid_size} "
        f"epsilon={metrics.epsilon!r} gamma={metrics.gamma!r}"
    )
    return 0


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    if args.optimum is not None:
        optimum = args.optimum
    elif args.no_oracle:
        optimum = None
    else:
        res = strongest_oracle(inst)
        optimum = None if res is None else res.optimum_value
    instance_id = args.instance
    record = run_single(
        inst, instance_id, args.algorithm, args.mu, args.lam, args.mutation,
        args.budget, args.seed, optimum,
    )
    print(",".join(CSV_COLUMNS))
    print(",".join(record.row()))
    return 0


def cmd_oracle(args) -> int:
    inst = read_instance(args.instance)
    fn = {
        "brute": brute_force_optimum,
        "held_karp": held_karp_optimum,
        "hull_order": hull_order_optimum,
    }[args.method]
    result = fn(inst)
    print(f"optimum={result.optimum_value!r} method={result.method}")
    if args.tour_out:
        write_tour(result.optimum_tour, args.tour_out)
    return 0


def cmd_experiment(args) -> int:
    cfg = parse_config(args.config)
    records, summary = run_experiment(cfg)
    write_csv(records, cfg.out)
    print(f"wrote {len(records)} runs to {cfg.out}")
    print(summary)
    return 0


def cmd_mutation_stats(args) -> int:
    stats = mutation_statistics(args.n, args.samples, args.seed)
    e = stats
    print(f"n={e['n']} samples={e['samples']} seed={e['seed']}")
    for name in ("p_one_inversion", "p_two_inversions", "p_four_inversions", "mixed_inversion_branch"):
        target = e[f"{name}_target"]
        dev = abs(e[name] - target)
        print(f"{name}={e[name]!r} target={target!r} abs_dev={dev!r}")
    print(
        f"chi_square_stat={e['chi_square_stat']!r} df={e['chi_square_df']} "
        f"pvalue={e['chi_square_pvalue']!r} single_inversion_samples={e['single_inversion_samples']}"
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, TooSmallError, DuplicatePointError, CollinearTripleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GenerationExhaustedError, TooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
