"""Command-line surface.

Subcommands: ``play`` (one game), ``explore`` (asynchronous run), ``sync``
(synchronous run), ``solve`` (exact small-game oracle), ``ck`` (coefficient
table), ``bench`` (corpus sweep), ``verify-trace`` (replay and re-check a
trace file).  Exit codes: 0 clean, 1 invariant violation, 2 usage error.
``TREEMINE_SEED`` overrides the default seeds.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .adversaries import parse_adversary
from .analysis import ak, bk, ck, growth_ratio, minimax_value
from .bench import BoundViolation, bench, default_corpus
from .exploration import (
    ExplorationTrace,
    is_locally_greedy,
    parse_scheduler,
    run_acte,
    run_cte_sync,
    verify_targets_inequality,
)
from .game import GameTrace, StopRule, StrategyFault, run_game, verify_game_trace
from .generators import generate, parse_tree_spec
from .players import parse_player
from .trees import RootedTree


def _seed_default() -> int:
    return int(os.environ.get("TREEMINE_SEED", "0"))


def cmd_play(args) -> int:
    player = parse_player(args.player, args.k)
    adversary = parse_adversary(args.adversary)
    mode = args.mode
    horizon = args.horizon
    if horizon is not None and mode != "horizon":
        mode = "horizon"
    start = args.k if args.start_full or mode == "plain" else 1
    trace = run_game(player, adversary, args.k,
                     StopRule.for_depth(args.k, args.depth),
                     mode=mode, horizon=horizon, start_miners=start)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(trace.to_json())
    print(f"rounds={len(trace.rounds)} cost={trace.final_cost()} "
          f"cost_at_depth({args.depth})={trace.cost_at_depth(args.depth)}")
    return 0


def cmd_explore(args) -> int:
    tree = _load_tree(args)
    n, depth = len(tree), max(tree.depth)
    k = args.k
    bound = 2 * n + ck(k) * depth
    res = run_acte(parse_player(args.player, k), tree, parse_scheduler(args.scheduler),
                   k, env_seed=args.seed, record=bool(args.out), move_cap=bound)
    print(f"n={n} depth={depth} k={k} moves={res.moves} bound={bound} "
          f"c_rounds={res.c_rounds} game_cost={res.game_cost}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(res.trace.to_json())
    return 0 if res.complete and res.moves <= bound else 1


def cmd_sync(args) -> int:
    tree = _load_tree(args)
    n, depth = len(tree), max(tree.depth)
    k = args.k
    res = run_cte_sync(parse_player(args.player, k), tree, k, env_seed=args.seed)
    bound = -(-(2 * n + ck(k) * depth) // k) + depth
    print(f"n={n} depth={depth} k={k} rounds={res.rounds} bound={bound}")
    return 0 if res.rounds <= bound else 1


def cmd_solve(args) -> int:
    res = minimax_value(args.k, args.depth, args.cap, args.rounds)
    print(f"value={res.value} states={res.states_visited}")
    for line in res.principal_variation:
        print("  " + line)
    return 0


def cmd_ck(args) -> int:
    print("k,c_k,a_k,b_k,ratio")
    for k in range(2, args.max + 1):
        a = ak(k) if k >= 3 else ""
        b = bk(k) if k >= 3 else ""
        print(f"{k},{ck(k)},{a},{b},{growth_ratio(k):.6f}")
    return 0


def cmd_bench(args) -> int:
    corpus = ([parse_tree_spec(s) for s in args.corpus]
              if args.corpus else default_corpus(args.scale))
    ks = [int(x) for x in args.ks.split(",")]
    schedulers = args.schedulers.split(",")
    try:
        report = bench(corpus, ks, schedulers, player_sel=args.player,
                       env_seed=args.seed, workers=args.workers)
    except BoundViolation as e:
        print(f"bound violation: {e}", file=sys.stderr)
        return 1
    csv_text = report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(report.to_json())
    else:
        sys.stdout.write(csv_text)
    worst = report.worst_margins()
    print(f"rows={len(report.rows)} worst_move_margin={worst['move_margin']} "
          f"worst_round_margin={worst['round_margin']}")
    return 0


def cmd_verify_trace(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "rounds" in data:
        errors = verify_game_trace(GameTrace.from_dict(data))
        for e in errors:
            print(e, file=sys.stderr)
        if not errors:
            print("game trace ok")
        return 1 if errors else 0
    trace = ExplorationTrace(**data)
    report = verify_targets_inequality(trace)
    greedy = is_locally_greedy(trace)
    if report.ok and greedy:
        print("exploration trace ok")
        return 0
    print(report.first_violation or "locally-greedy check failed", file=sys.stderr)
    return 1


def _load_tree(args) -> RootedTree:
    if args.tree_file:
        with open(args.tree_file, "r", encoding="utf-8") as fh:
            return RootedTree.from_json(fh.read())
    return generate(parse_tree_spec(args.tree))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treemine",
                                description="tree-mining games and collective "
                                            "tree exploration")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("play", help="run one tree-mining game")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--player", required=True)
    sp.add_argument("--adversary", required=True)
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("--mode", choices=("plain", "extended", "horizon"),
                    default="plain")
    sp.add_argument("--horizon", type=int)
    sp.add_argument("--start-full", action="store_true",
                    help="extended mode starts with all miners present")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_play)

    for name, fn in (("explore", cmd_explore), ("sync", cmd_sync)):
        sp = sub.add_parser(name, help=f"{name} a hidden tree")
        sp.add_argument("--tree", help="generator spec, e.g. binary:4")
        sp.add_argument("--tree-file", help="parent-array JSON file")
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--player", default="recursive")
        sp.add_argument("--seed", type=int, default=_seed_default())
        if name == "explore":
            sp.add_argument("--scheduler", default="rr")
            sp.add_argument("--out")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("solve", help="exact value of a small truncated game")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--cap", type=int, required=True)
    sp.add_argument("--rounds", type=int, default=10)
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("ck", help="coefficient table as CSV")
    sp.add_argument("--max", type=int, required=True)
    sp.set_defaults(fn=cmd_ck)

    sp = sub.add_parser("bench", help="corpus sweep with bound checks")
    sp.add_argument("--corpus", nargs="*")
    sp.add_argument("--scale", type=int, default=1000)
    sp.add_argument("--ks", default="2,3,4,8")
    sp.add_argument("--schedulers", default="rr,single,deepest,random@seed=1")
    sp.add_argument("--player", default="recursive")
    sp.add_argument("--seed", type=int, default=_seed_default())
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")
    sp.add_argument("--json")
    sp.set_defaults(fn=cmd_bench)

    sp = sub.add_parser("verify-trace", help="replay a trace file and re-check")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_verify_trace)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (StrategyFault, BoundViolation, AssertionError) as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
