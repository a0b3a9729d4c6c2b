"""Command line: ``lowcross {gen,partition,eval,approx,bench} ...``."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .core import crossing_number, validate_partition
from .evaluation import (BenchDescriptor, ConfigError, bench_suite, eps_approx_from_partition,
                         uniform_sample, write_csv)
from .fileio import FormatError, load_partition, load_setsystem, save_partition, save_setsystem
from .generators import FAMILIES, GenSpec, GraphFormatError, generate
from .partitioner import ALGORITHMS, PotentialConfig, partition, search_d

DETERMINISTIC_FAMILIES = ("projective-plane", "graph-neighborhood")


class CLIError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lowcross", description="Low-crossing partitions of set systems.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a set system file")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--beta", type=float)
    g.add_argument("--r", type=int)
    g.add_argument("--order", type=int)
    g.add_argument("--circles", type=int)
    g.add_argument("--in", dest="inp", help="SNAP edge list (graph-neighborhood family)")
    g.add_argument("--seed", type=int)
    g.add_argument("--out", required=True)

    q = sub.add_parser("partition", help="partition a set system file")
    q.add_argument("--in", dest="inp", required=True)
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--algo", choices=ALGORITHMS, default="minweight")
    q.add_argument("--d", type=float, default=2.0, help="potential exponent")
    q.add_argument("--mode", choices=("practical", "theoretical"), default="practical")
    q.add_argument("--w", type=int)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--d-search", dest="d_search", nargs="*", type=float,
                   help="search d over these candidates (none given: log2(n) geometric values)")
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--out", help="partition file to write")
    q.add_argument("--report", help="CSV file for the run's report row")
    q.add_argument("--timing", action="store_true", help="include wall time in the report row")

    e = sub.add_parser("eval", help="crossing number of a partition")
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--partition", required=True)

    a = sub.add_parser("approx", help="ε of partition-based and uniform samples")
    a.add_argument("--in", dest="inp", required=True)
    a.add_argument("--partition", required=True)
    a.add_argument("--seed", type=int, required=True)

    b = sub.add_parser("bench", help="run a JSON experiment descriptor")
    b.add_argument("--in", dest="inp", required=True)
    b.add_argument("--out", help="CSV output (default stdout)")
    b.add_argument("--timing", action="store_true", help="keep wall times in the CSV")
    return p


def _gen(args) -> None:
    fam = args.family
    if args.order is not None and fam != "projective-plane":
        raise CLIError("--order is only valid with --family projective-plane")
    if args.inp is not None and fam != "graph-neighborhood":
        raise CLIError("--in is only valid with --family graph-neighborhood")
    if args.seed is None and fam not in DETERMINISTIC_FAMILIES:
        raise CLIError(f"--seed is required for family {fam}")
    spec = GenSpec(fam, n=args.n, d=args.d, m=args.m, beta=args.beta,
                   r=1 if args.r is None else args.r, a=args.order, circles=args.circles,
                   seed=args.seed or 0, edgelist=args.inp)
    system = generate(spec)
    save_setsystem(system, args.out)
    print(f"wrote {args.out}: n={system.n} m={system.m}")


def _partition(args) -> None:
    system = load_setsystem(args.inp)
    if not 1 <= args.t <= system.n:
        raise CLIError(f"--t must lie in [1, {system.n}], got {args.t}")
    if args.d_search is not None:
        d, part, rep = search_d(system, args.t, args.algo, args.d_search or None, args.seed,
                                args.mode, args.w, args.threads)
    else:
        d = args.d
        part, rep = partition(system, args.t, PotentialConfig(d, args.mode, args.t), args.algo,
                              args.w, args.seed, args.threads)
    if args.out:
        save_partition(part, args.out)
    row = {"family": system.family, "n": system.n, "m": system.m, "d": d, "t": args.t,
           "algo": args.algo, "w": rep.params["w"], "seed": args.seed, "kappa": rep.kappa,
           "violations_practical": rep.total_practical, "violations_theoretical": rep.total_theoretical,
           "runtime_ms": rep.runtime_s * 1e3 if args.timing else None, "epsilon": None}
    if args.report:
        with open(args.report, "w") as fh:
            write_csv([row], fh)
    print(f"kappa={rep.kappa} d={d:g} violations_practical={rep.total_practical} "
          f"violations_theoretical={rep.total_theoretical}")


def _load_pair(args):
    system = load_setsystem(args.inp)
    part = load_partition(args.partition)
    if part.n != system.n:
        raise CLIError(f"partition covers {part.n} elements, system has {system.n}")
    return system, part


def _eval(args) -> None:
    system, part = _load_pair(args)
    rep = crossing_number(system, part)
    print(f"kappa={rep.kappa}")
    print(f"argmax_range={rep.argmax_range}")
    if rep.per_range.size:
        print(f"per_range_mean={rep.per_range.mean():.4f}")
    problems = validate_partition(system, part)
    print("valid=yes" if not problems else "valid=no")
    for msg in problems:
        print(f"  {msg}")


def _approx(args) -> None:
    system, part = _load_pair(args)
    ps = eps_approx_from_partition(system, part, args.seed)
    us = uniform_sample(system, part.t, args.seed)
    print(f"epsilon_partition={ps.epsilon:.6g}")
    print(f"epsilon_uniform={us.epsilon:.6g}")


def _bench(args) -> None:
    desc = BenchDescriptor.load(args.inp)
    rows = bench_suite(desc)
    if not args.timing:
        for r in rows:
            r["runtime_ms"] = None
    if args.out:
        with open(args.out, "w") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)


COMMANDS = {"gen": _gen, "partition": _partition, "eval": _eval, "approx": _approx, "bench": _bench}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (CLIError, ConfigError, FormatError, GraphFormatError, ValueError, OSError) as exc:
        print(f"lowcross {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
