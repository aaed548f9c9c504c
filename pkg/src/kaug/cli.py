"""Command-line front end: ``kaug <command> ...``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .errors import Infeasible, KaugError, RegimeViolation
from .graph import is_k_connected
from .instance import (
    Solution, dumps_instance, dumps_solution, gen_random, loads_solution, read_instance,
)
from .lp import LPVCSolver
from .oracle import exact_opt
from .outconnect import rooted
from .pipeline import augment, verify

EXIT_OK, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_REGIME = 0, 1, 2, 3


def _load(args):
    inst = read_instance(args.instance)
    if getattr(args, "k", None) is not None:
        inst = replace(inst, k=args.k)
    return inst


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _solution(inst, F, cost) -> str:
    H = inst.graph.with_edges(F)
    ok = H.n >= inst.k + 1 and is_k_connected(H, inst.k)
    return dumps_solution(Solution(tuple(sorted(F)), cost, inst.k, ok))


def cmd_solve(args) -> int:
    inst = _load(args)
    rep = augment(inst.graph, inst.k, inst.costs, mode=args.mode, seed=args.seed, branch=args.branch)
    if args.trace:
        for line in rep.trace:
            print(line, file=sys.stderr)
    if args.report:
        Path(args.report).write_text(rep.to_text())
    _emit(_solution(inst, rep.edges, rep.cost), args.out)
    return EXIT_OK


def cmd_exact(args) -> int:
    inst = _load(args)
    res = exact_opt(inst, max_candidates=args.budget, mode=args.mode)
    if not res.feasible:
        print("infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    _emit(_solution(inst, res.edges, res.cost), args.out)
    print(f"explored {res.explored} ({res.mode})", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    inst = _load(args)
    F = loads_solution(Path(args.solution).read_text()).edges if args.solution else ()
    rep = verify(inst.graph, inst.k, F, inst.costs,
                 oracle_candidates=args.oracle_budget if args.oracle_budget > 0 else None)
    sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.connected else EXIT_FAIL


def cmd_lp(args) -> int:
    inst = _load(args)
    solver = LPVCSolver(inst.graph, inst.k, inst.costs)
    res = solver.solve()
    if args.rows:
        sys.stdout.write(solver.dump_lp())
    for (u, v), val in sorted(res.x.values.items()):
        if val:
            print(f"x {u} {v} {val.numerator}/{val.denominator}")
    print(f"objective {res.objective.numerator}/{res.objective.denominator}")
    print(f"rows {len(res.rows)}")
    return EXIT_OK


def cmd_rooted(args) -> int:
    inst = _load(args)
    R = [int(t) for t in args.terminals.split(",") if t.strip()]
    res = rooted(inst.graph, inst.costs, R, inst.k)
    _emit(_solution(inst, res.edges, res.cost), args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    inst = gen_random(args.n, args.k, args.density, (args.cost_min, args.cost_max), seed=args.seed,
                      purchasable=args.purchasable)
    _emit(dumps_instance(inst), args.out)
    return EXIT_OK


def cmd_harness(args) -> int:
    from .harness import SUITES, harness_run
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        if name not in SUITES:
            print(f"unknown suite {name!r}; choose from: all, {', '.join(SUITES)}", file=sys.stderr)
            return EXIT_FAIL
        res = harness_run(name, count=args.count, jobs=args.jobs, dump_dir=args.dump_dir)
        print(res.table(), flush=True)
        ok &= res.passed
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kaug", description="Minimum-cost k-node-connectivity augmentation.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_instance(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("instance", help="instance file (kaug 1 format)")
        sp.add_argument("--k", type=int, help="override the instance's k")
        return sp

    sp = with_instance("solve", "run the augmentation pipeline")
    sp.add_argument("--mode", choices=("guaranteed", "best-effort"), default="guaranteed")
    sp.add_argument("--seed", type=int, help="randomise terminal choices")
    sp.add_argument("--branch", choices=("auto", "small", "large"), default="auto")
    sp.add_argument("--trace", action="store_true", help="print phase and rounding trace to stderr")
    sp.add_argument("--report", help="write the phase report to this file")
    sp.add_argument("--out", help="write the solution here instead of stdout")
    sp.set_defaults(func=cmd_solve)

    sp = with_instance("exact", "exact optimum by branch-and-bound or exhaustion")
    sp.add_argument("--mode", choices=("auto", "bnb", "exhaustive"), default="auto")
    sp.add_argument("--budget", type=int, default=25, help="maximum candidate edges")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_exact)

    sp = with_instance("check", "check k-connectivity of G (+ a solution)")
    sp.add_argument("solution", nargs="?", help="solution file to add to the graph")
    sp.add_argument("--oracle-budget", type=int, default=20,
                    help="compute the exact optimum up to this many candidates (0 disables)")
    sp.set_defaults(func=cmd_check)

    sp = with_instance("lp", "basic optimum of the set-pair cut LP")
    sp.add_argument("--rows", action="store_true", help="also dump the generated LP")
    sp.set_defaults(func=cmd_lp)

    sp = with_instance("rooted", "rooted k-outconnectivity step for a terminal set")
    sp.add_argument("--terminals", required=True, help="comma-separated list of k nodes")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_rooted)

    sp = sub.add_parser("gen", help="random instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--density", type=float, default=0.3)
    sp.add_argument("--cost-min", type=int, default=1)
    sp.add_argument("--cost-max", type=int, default=10)
    sp.add_argument("--purchasable", type=int, help="keep only this many purchasable pairs")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("harness", help="run a property suite ('all' for every suite)")
    sp.add_argument("suite")
    sp.add_argument("--count", type=int, help="number of cases (suite default otherwise)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--dump-dir", help="where failing instances are written")
    sp.set_defaults(func=cmd_harness)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except RegimeViolation as exc:
        print(f"regime violation: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (KaugError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
