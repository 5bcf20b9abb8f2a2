"""Experiment runner: sweeps corpora, verifies every bound, emits CSV/JSON.

Each row runs one (tree, k, scheduler) combination through the asynchronous
and synchronous drivers and records the observed quantities next to the
bounds they were checked against.  Any bound violation aborts the sweep with
the offending trace persisted for inspection.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .analysis import ck
from .exploration import parse_scheduler, run_acte, run_cte_sync
from .generators import TreeSpec, generate
from .players import parse_player


DEFAULT_SEED = int(os.environ.get("TREEMINE_SEED", "0"))


class BoundViolation(RuntimeError):
    def __init__(self, row: dict, trace_path: Optional[str]) -> None:
        super().__init__(f"bound violated: {row}"
                         + (f" (trace at {trace_path})" if trace_path else ""))
        self.row = row
        self.trace_path = trace_path


@dataclass
class BenchReport:
    rows: List[dict] = field(default_factory=list)

    FIELDS = ("tree", "n", "depth", "k", "scheduler", "player", "moves",
              "move_bound", "move_margin", "rounds", "round_bound",
              "round_margin", "c_rounds", "game_cost", "s_refined")

    def worst_margins(self) -> Dict[str, int]:
        if not self.rows:
            return {"move_margin": 0, "round_margin": 0}
        return {
            "move_margin": min(r["move_margin"] for r in self.rows),
            "round_margin": min(r["round_margin"] for r in self.rows),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: row[k] for k in self.FIELDS})
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"rows": self.rows, "worst": self.worst_margins()},
                          indent=0, sort_keys=True)


def run_one(spec: TreeSpec, k: int, scheduler_sel: str, player_sel: str,
            env_seed: int = DEFAULT_SEED) -> dict:
    """One corpus cell: explore asynchronously and synchronously, check bounds."""
    tree = generate(spec)
    n = len(tree)
    depth = max(tree.depth)
    bound_moves = 2 * n + ck(k) * depth
    res = run_acte(parse_player(player_sel, k), tree, parse_scheduler(scheduler_sel),
                   k, env_seed=env_seed, move_cap=bound_moves)
    sync = run_cte_sync(parse_player(player_sel, k), tree, k, env_seed=env_seed)
    bound_rounds = -(-(2 * n + ck(k) * depth) // k) + depth
    row = {
        "tree": str(spec),
        "n": n,
        "depth": depth,
        "k": k,
        "scheduler": scheduler_sel,
        "player": player_sel,
        "moves": res.moves,
        "move_bound": bound_moves,
        "move_margin": bound_moves - res.moves,
        "rounds": sync.rounds,
        "round_bound": bound_rounds,
        "round_margin": bound_rounds - sync.rounds,
        "c_rounds": res.c_rounds,
        "game_cost": res.game_cost,
        "s_refined": res.s_refined,
        "complete": res.complete,
        "frontier_violations": res.frontier_violations,
    }
    return row


def default_corpus(scale: int = 1000) -> List[TreeSpec]:
    """Mixed-shape corpus near the requested node budget."""
    depth = max(2, scale.bit_length() - 1)
    return [
        TreeSpec("path", (scale,)),
        TreeSpec("star", (scale,)),
        TreeSpec("binary", (depth,)),
        TreeSpec("caterpillar", (scale, 2)),
        TreeSpec("spider", (5, max(2, scale // 5))),
        TreeSpec("random", (scale, 7, 3)),
    ]


def bench(corpus: Sequence[TreeSpec], ks: Sequence[int], schedulers: Sequence[str],
          player_sel: str = "recursive", env_seed: int = DEFAULT_SEED,
          workers: int = 1, trace_dir: Optional[str] = None) -> BenchReport:
    """Full sweep; raises BoundViolation (persisting the run) on any failure."""
    jobs = [(spec, k, sched) for spec in corpus for k in ks for sched in schedulers]
    report = BenchReport()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_one, spec, k, sched, player_sel, env_seed)
                       for spec, k, sched in jobs]
            rows = [f.result() for f in futures]
    else:
        rows = [run_one(spec, k, sched, player_sel, env_seed)
                for spec, k, sched in jobs]
    for row in rows:
        if (row["move_margin"] < 0 or row["round_margin"] < 0
                or not row["complete"] or row["frontier_violations"]):
            path = None
            if trace_dir:
                path = os.path.join(trace_dir, "violation.json")
                with open(path, "w", encoding="utf-8") as fh:
                    json.dump(row, fh)
            raise BoundViolation(row, path)
        report.rows.append(row)
    return report
