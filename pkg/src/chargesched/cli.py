"""Command-line interface.

Exit codes: 0 solved, 2 input error, 3 guard refusal, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import generators as gen
from .jsonio import emit_instance, number_out, parse_instance, solution_to_dict
from .model import GuardError, InputError, InvariantError, VariantError
from .online import POLICIES, ratio_batch
from .runner import FAMILIES, Guards, bench, dispatch
from .vcg import vcg_solve

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_INTERNAL = 0, 2, 3, 4


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _guards(args) -> Guards:
    return Guards(states=args.guard_states, cells=args.guard_cells, oracle_bits=args.oracle_bits)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _summary(stream, report, sol) -> None:
    print(f"method:  {report.method}  ({report.rule})", file=stream)
    print(f"welfare: {number_out(sol.welfare)}", file=stream)
    print(f"time:    {report.wall_time:.4f}s   digest {report.digest}", file=stream)
    for key in ("states", "state_bound", "cells", "cell_bound", "checks", "subsets"):
        if key in report.stats:
            print(f"{key}: {report.stats[key]}", file=stream)
    for i, (row, flags) in enumerate(zip(sol.allocation.amounts, sol.satisfied)):
        print(f"  agent {i}: {list(row)}  satisfied={[int(f) for f in flags]}", file=stream)


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    report, sol = dispatch(inst, args.method, _guards(args))
    doc = solution_to_dict(sol)
    doc["report"] = {
        "method": report.method, "rule": report.rule, "wall_time": report.wall_time,
        "digest": report.digest,
        "stats": {k: v for k, v in report.stats.items() if isinstance(v, int)},
    }
    _write(args.out, json.dumps(doc))
    _summary(sys.stdout if args.out not in (None, "-") else sys.stderr, report, sol)
    return EXIT_OK


def _parse_sets(text: str) -> list[tuple[int, ...]]:
    return [tuple(_int_list(chunk)) for chunk in text.split(";") if chunk.strip()]


def cmd_generate(args) -> int:
    if args.family == "knapsack":
        if args.items:
            items = [tuple(int(x) for x in pair.split(":")) for pair in args.items.split(",")]
            k = gen.KnapsackInput(args.capacity, items)
        else:
            k = gen.gen_random_knapsack(args.seed, n_items=args.n)
        inst = gen.gen_knapsack(k)
    elif args.family in ("x3c-gaps", "x3c-multi"):
        if args.sets is None:
            raise InputError("x3c families need --sets, e.g. '1,2,3;4,5,6'", "--sets")
        x = gen.X3CInput(args.q, _parse_sets(args.sets))
        inst = gen.gen_x3c_gaps(x) if args.family == "x3c-gaps" else gen.gen_x3c_multi(x)
    else:
        inst = gen.gen_random(args.seed, args.n, args.periods, args.max_supply, args.max_demand,
                              args.max_value, args.speed, args.max_triples)
    _write(args.out, emit_instance(inst))
    return EXIT_OK


def cmd_bench(args) -> int:
    methods = [args.method] if args.method else None
    rows = bench(args.family, _int_list(args.sizes), range(args.seed, args.seed + args.seeds), methods, _guards(args))
    print(f"{'family':<10} {'size':>4} {'seed':>4} {'method':<11} {'n':>3} {'T':>3} "
          f"{'welfare':>8} {'cells':>8} {'bound':>10} {'time[s]':>8}")
    for r in rows:
        print(f"{r['family']:<10} {r['size']:>4} {r['seed']:>4} {r['method']:<11} {r['n']:>3} {r['periods']:>3} "
              f"{str(number_out(r['welfare'])):>8} {r['cells']:>8} {r['bound']:>10} {r['wall_time']:>8.4f}")
    if args.out:
        _write(args.out, json.dumps([{**r, "welfare": number_out(r["welfare"])} for r in rows]))
    return EXIT_OK


def cmd_online(args) -> int:
    res = ratio_batch(args.policy, range(args.seed, args.seed + args.seeds), n=args.n, periods=args.periods,
                      max_supply=args.max_supply, max_demand=args.max_demand, max_value=args.max_value,
                      speed_kind=args.speed, max_triples=args.max_triples)
    print(f"{'seed':>6} {'ratio':>10}")
    for r in res["rows"]:
        print(f"{r['seed']:>6} {float(r['ratio']):>10.4f}")
    if res["rows"]:
        print(f"policy={res['policy']} instances={len(res['rows'])} skipped={res['skipped']} "
              f"min={float(res['min']):.4f} mean={float(res['mean']):.4f} median={float(res['median']):.4f}")
    else:
        print(f"policy={res['policy']} no instance with positive offline optimum (skipped={res['skipped']})")
    if args.out:
        doc = {k: (float(v) if v is not None and k in ("min", "mean", "median") else v)
               for k, v in res.items() if k != "rows"}
        doc["rows"] = [{"seed": r["seed"], "ratio": float(r["ratio"]),
                        "ratio_exact": f"{r['ratio'].numerator}/{r['ratio'].denominator}"} for r in res["rows"]]
        _write(args.out, json.dumps(doc))
    return EXIT_OK


def cmd_vcg(args) -> int:
    inst = parse_instance(_read(args.instance))
    out = vcg_solve(inst, args.method, _guards(args))
    sol = out.solution
    print(f"welfare: {number_out(sol.welfare)}")
    print(f"{'agent':>5} {'value':>8} {'payment':>8} {'utility':>8}  allocation")
    for i in range(inst.n):
        v = sol.agent_value(inst, i)
        print(f"{i:>5} {str(number_out(v)):>8} {str(number_out(out.payments[i])):>8} "
              f"{str(number_out(v - out.payments[i])):>8}  {list(sol.allocation[i])}")
    if args.out:
        doc = solution_to_dict(sol)
        doc["payments"] = [number_out(p) for p in out.payments]
        _write(args.out, json.dumps(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chargesched", description="Exact charge scheduling solvers.")
    sub = p.add_subparsers(dest="command", required=True)

    def guard_flags(sp):
        sp.add_argument("--guard-states", type=int, default=Guards.states, help="dp-exact state-space bound")
        sp.add_argument("--guard-cells", type=int, default=Guards.cells, help="dp-deadline table bound")
        sp.add_argument("--oracle-bits", type=int, default=Guards.oracle_bits, help="oracle triple-count bound")

    def random_flags(sp, n=5, periods=4):
        sp.add_argument("--n", type=int, default=n)
        sp.add_argument("--periods", type=int, default=periods)
        sp.add_argument("--max-supply", type=int, default=3)
        sp.add_argument("--max-demand", type=int, default=4)
        sp.add_argument("--max-value", type=int, default=20)
        sp.add_argument("--speed", choices=gen.SPEED_KINDS, default="unbounded")
        sp.add_argument("--max-triples", type=int, default=1)

    sp = sub.add_parser("solve", help="solve an instance file ('-' for stdin)")
    sp.add_argument("instance")
    sp.add_argument("--method", choices=("auto", "oracle", "dp-exact", "dp-deadline"), default="auto")
    sp.add_argument("--out", help="write solution JSON here (default: stdout)")
    guard_flags(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("generate", help="emit an instance as JSON")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--capacity", type=int, default=10, help="knapsack capacity (with --items)")
    sp.add_argument("--items", help="knapsack items 'value:weight,...'")
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--sets", help="X3C subsets, e.g. '1,2,3;4,5,6'")
    sp.add_argument("--out")
    random_flags(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("bench", help="runtime and memo-size sweep")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--sizes", default="5,10,15", help="comma-separated sizes (items, q, or agents)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--seeds", type=int, default=3)
    sp.add_argument("--method", choices=("oracle", "dp-exact", "dp-deadline"))
    sp.add_argument("--out")
    guard_flags(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("online", help="empirical competitive ratios on random instances")
    sp.add_argument("--policy", choices=sorted(POLICIES), default="greedy")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--seeds", type=int, default=20)
    sp.add_argument("--out")
    random_flags(sp)
    sp.set_defaults(func=cmd_online)

    sp = sub.add_parser("vcg", help="efficient allocation and VCG payments")
    sp.add_argument("instance")
    sp.add_argument("--method", choices=("dp-exact", "dp-deadline"), default="dp-exact")
    sp.add_argument("--out")
    guard_flags(sp)
    sp.set_defaults(func=cmd_vcg)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, VariantError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
