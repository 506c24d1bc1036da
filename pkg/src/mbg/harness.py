"""Experiment harness and command line interface.

Subcommands: ``simulate`` (one game, optional trace file), ``sweep`` (bias
sweep with empirical threshold estimate and CSV output), ``boxgame`` (bound
evaluation, exhaustive solving, grids), ``oracle`` (graph checks on an edge
list), and ``verify`` (replay-audit of traces or freshly generated games).

Per-trial randomness comes from counter-based streams: each trial seed is a
hash of (master seed, bias index, trial index), so results do not depend on
scheduling and any cell can be reproduced in isolation.  MBG_THREADS > 1
runs sweep trials in a process pool.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .audit import (audit_game, canonical_audit_point, check_potential_lemmas,
                    reconstruct_multisets)
from .board import GOALS, GameParams, Player, normalize_goal, parse_edge_list
from .boxgame import (SOLVER_MAX_BALLS, SOLVER_MAX_BOXES, BoxInstance,
                      BoxPlayer, f_box, f_lower_bound, boxmaker_sufficient,
                      canonical_instance, solve_exhaustive)
from .breaker_strategies import BREAKER_STRATEGIES, make_breaker
from .engine import play_game, read_trace, write_trace
from .errors import MBGError, StrategyInfeasible
from .maker_strategies import MAKER_STRATEGIES, make_maker
from .oracles import (SimpleGraph, boosters, is_hamiltonian, is_k_expander,
                      longest_path_order)


def trial_seed(master_seed: int, b_index: int, trial: int) -> int:
    """Derived per-trial seed, stable across runs and schedulers."""
    text = f"{master_seed}:{b_index}:{trial}"
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def worker_count() -> int:
    raw = os.environ.get("MBG_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def reference_threshold(n: int, a: int) -> float:
    """Asymptotic threshold-bias formula a*n / (a + ln n), context only."""
    return a * n / (a + math.log(n))


# ---------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class SweepSpec:
    n: int
    a: int
    k: int
    goal: str
    b_values: tuple[int, ...]
    trials: int
    maker: str = "min-deg"
    breaker: str = "random"
    master_seed: int = 0
    out_path: str | None = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise MBGError(f"trials must be >= 1, got {self.trials}")
        if not self.b_values:
            raise MBGError("at least one bias value is required")
        if list(self.b_values) != sorted(self.b_values):
            raise MBGError("bias values must be sorted ascending")


@dataclass
class CellResult:
    b: int
    trials: int
    maker_wins: int = 0
    infeasible: int = 0
    total_rounds: int = 0
    total_maker_claims: int = 0

    @property
    def decided(self) -> int:
        return self.trials - self.infeasible

    @property
    def win_rate(self) -> float:
        return self.maker_wins / self.decided if self.decided else 0.0

    @property
    def mean_rounds(self) -> float:
        return self.total_rounds / self.decided if self.decided else 0.0

    @property
    def mean_maker_claims(self) -> float:
        return self.total_maker_claims / self.decided if self.decided else 0.0


@dataclass
class SweepResult:
    spec: SweepSpec
    cells: list[CellResult] = field(default_factory=list)
    estimated_threshold: int | None = None
    interpolated_threshold: float | None = None
    reference_curve: float = 0.0


def _run_trial(task: tuple) -> tuple[bool, int, int, bool]:
    n, a, b, k, goal, maker_name, breaker_name, seed = task
    params = GameParams(n=n, a=a, b=b, k=k, goal=goal)
    try:
        maker = make_maker(maker_name, params)
        breaker = make_breaker(breaker_name, params)
        outcome, trace = play_game(params, maker, breaker, seed=seed)
    except StrategyInfeasible:
        return False, 0, 0, True
    won = outcome.winner is Player.MAKER
    return won, trace.rounds_played(), trace.maker_claims(), False


def run_sweep(spec: SweepSpec) -> SweepResult:
    tasks = []
    for b_index, b in enumerate(spec.b_values):
        for trial in range(spec.trials):
            tasks.append((spec.n, spec.a, b, spec.k, spec.goal, spec.maker,
                          spec.breaker, trial_seed(spec.master_seed, b_index,
                                                   trial)))
    workers = worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, tasks, chunksize=16))
    else:
        results = [_run_trial(t) for t in tasks]

    cells = [CellResult(b=b, trials=spec.trials) for b in spec.b_values]
    for index, (won, rounds, claims, infeasible) in enumerate(results):
        cell = cells[index // spec.trials]
        if infeasible:
            cell.infeasible += 1
        else:
            cell.maker_wins += int(won)
            cell.total_rounds += rounds
            cell.total_maker_claims += claims
    result = SweepResult(spec=spec, cells=cells,
                         reference_curve=reference_threshold(spec.n, spec.a))
    result.estimated_threshold, result.interpolated_threshold = \
        _estimate_threshold(cells)
    if spec.out_path:
        write_sweep_csv(result, spec.out_path)
    return result


def _estimate_threshold(cells: list[CellResult]
                        ) -> tuple[int | None, float | None]:
    last = None
    for index, cell in enumerate(cells):
        if cell.win_rate >= 0.5:
            last = index
    if last is None:
        return None, None
    estimated = cells[last].b
    interpolated = None
    if last + 1 < len(cells):
        lo, hi = cells[last], cells[last + 1]
        if lo.win_rate != hi.win_rate:
            frac = (lo.win_rate - 0.5) / (lo.win_rate - hi.win_rate)
            interpolated = lo.b + frac * (hi.b - lo.b)
    return estimated, interpolated


def write_sweep_csv(result: SweepResult, path: str) -> None:
    """CSV with one row per bias; a timestamp comment precedes the header."""
    spec = result.spec
    lines = [f"# generated {datetime.now(timezone.utc).isoformat()}"]
    lines.append("n,a,b,k,goal,maker,breaker,trials,maker_wins,win_rate,"
                 "mean_rounds,mean_maker_claims,infeasible")
    for cell in result.cells:
        lines.append(
            f"{spec.n},{spec.a},{cell.b},{spec.k},{spec.goal},{spec.maker},"
            f"{spec.breaker},{cell.trials},{cell.maker_wins},"
            f"{cell.win_rate:.6f},{cell.mean_rounds:.4f},"
            f"{cell.mean_maker_claims:.4f},{cell.infeasible}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Configuration files (plain key=value; command-line flags win)


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise MBGError(f"bad config line (want key=value): {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(args: argparse.Namespace,
             schema: dict[str, tuple]) -> dict[str, object]:
    """Fill each option from flag, then config file, then builtin default."""
    config = _load_config(args.config) if getattr(args, "config", None) else {}
    out: dict[str, object] = {}
    for key, (builtin, cast) in schema.items():
        value = getattr(args, key, None)
        if value is None and key in config:
            value = cast(config[key])
        if value is None:
            value = builtin
        out[key] = value
    return out


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


# ---------------------------------------------------------------------------
# Subcommands


def cmd_simulate(args: argparse.Namespace) -> int:
    schema = {
        "n": (20, int), "a": (1, int), "b": (1, int), "k": (1, int),
        "goal": ("min-degree", str), "maker": ("min-deg", str),
        "breaker": ("random", str), "seed": (0, int),
    }
    opts = _resolve(args, schema)
    params = GameParams(n=opts["n"], a=opts["a"], b=opts["b"], k=opts["k"],
                        goal=normalize_goal(opts["goal"]))
    maker = make_maker(opts["maker"], params)
    breaker = make_breaker(opts["breaker"], params)
    outcome, trace = play_game(params, maker, breaker, seed=opts["seed"],
                               early_stop=not args.no_early_stop)
    if args.trace_out:
        write_trace(args.trace_out, trace, outcome=outcome)
    print(f"winner={outcome.winner.value} rounds={trace.rounds_played()} "
          f"reason={outcome.reason}")
    if outcome.flags:
        print("flags=" + ",".join(outcome.flags))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    schema = {
        "n": (40, int), "a": (1, int), "k": (1, int),
        "goal": ("min-degree", str), "maker": ("min-deg", str),
        "breaker": ("random", str), "seed": (0, int), "trials": (100, int),
        "b_min": (1, int), "b_max": (20, int), "b_values": (None, _int_list),
        "out": (None, str),
    }
    opts = _resolve(args, schema)
    b_values = opts["b_values"] or tuple(range(opts["b_min"],
                                               opts["b_max"] + 1))
    spec = SweepSpec(n=opts["n"], a=opts["a"], k=opts["k"],
                     goal=normalize_goal(opts["goal"]), b_values=b_values,
                     trials=opts["trials"], maker=opts["maker"],
                     breaker=opts["breaker"], master_seed=opts["seed"],
                     out_path=opts["out"])
    result = run_sweep(spec)
    for cell in result.cells:
        print(f"b={cell.b} win_rate={cell.win_rate:.6f} "
              f"infeasible={cell.infeasible}")
    est = result.estimated_threshold
    interp = result.interpolated_threshold
    print(f"estimated_threshold={est if est is not None else 'none'} "
          f"interpolated={f'{interp:.4f}' if interp is not None else 'none'} "
          f"reference_curve={result.reference_curve:.4f}")
    return 0


def cmd_boxgame(args: argparse.Namespace) -> int:
    if args.mode == "f":
        value = f_box(args.k, args.p, args.q)
        print(value)
        if args.lower:
            bound = f_lower_bound(args.k, args.p, args.q)
            print(f"lower_bound={float(bound):.4f}")
        return 0
    if args.mode == "solve":
        sizes = _int_list(args.sizes)
        if not sizes:
            raise MBGError("mode solve needs --sizes, e.g. --sizes 2,2,3")
        first = (BoxPlayer.BOXMAKER if args.first == "boxmaker"
                 else BoxPlayer.BOXBREAKER)
        if args.canonical:
            inst = canonical_instance(len(sizes), sum(sizes), p=args.p,
                                      q=args.q, first_mover=first)
        else:
            inst = BoxInstance(sizes=tuple(sorted(sizes, reverse=True)),
                               p=args.p, q=args.q, first_mover=first)
        winner = solve_exhaustive(inst)
        print(winner.value)
        return 0
    # grid
    max_k = min(args.max_k, SOLVER_MAX_BOXES)
    max_t = min(args.max_t, SOLVER_MAX_BALLS)
    print("k,t,p,q,f_value,sufficient,winner")
    for k in range(1, max_k + 1):
        for t in range(k, max_t + 1):
            inst = canonical_instance(k, t, p=args.p, q=args.q)
            value = f_box(k, args.p, args.q)
            sufficient = boxmaker_sufficient(k, t, args.p, args.q)
            winner = solve_exhaustive(inst)
            print(f"{k},{t},{args.p},{args.q},{value},"
                  f"{str(sufficient).lower()},{winner.value}")
    return 0


def _load_graph(args: argparse.Namespace) -> SimpleGraph:
    if args.edges == "-":
        text = sys.stdin.read()
    else:
        with open(args.edges, encoding="utf-8") as handle:
            text = handle.read()
    graph = SimpleGraph(args.n)
    for edge in parse_edge_list(text):
        graph.add_edge(*edge)
    return graph


def cmd_oracle(args: argparse.Namespace) -> int:
    graph = _load_graph(args)
    if args.check == "hamiltonian":
        print(f"hamiltonian={str(is_hamiltonian(graph)).lower()}")
    elif args.check == "longest-path":
        print(f"longest_path_order={longest_path_order(graph)}")
    elif args.check == "boosters":
        found = boosters(graph)
        print(f"already_hamiltonian={str(found.already_hamiltonian).lower()} "
              f"boosters={len(found.edges)}")
        for u, v in sorted(found.edges):
            print(f"{u} {v}")
    else:
        check = is_k_expander(graph, args.k)
        witness = ("none" if check.witness is None
                   else ",".join(map(str, sorted(check.witness))))
        print(f"expander={str(check.holds).lower()} "
              f"exhaustive={str(check.exhaustive).lower()} witness={witness}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.trace:
        trace, _ = read_trace(args.trace)
        if args.round is not None and args.vertex is not None:
            audit = reconstruct_multisets(trace, args.round, args.vertex,
                                          r=args.r)
            report = check_potential_lemmas(audit)
        else:
            point = canonical_audit_point(trace)
            if point is None:
                print("no foreclosure point in trace; nothing to audit")
                return 0
            audit = reconstruct_multisets(trace, *point, r=args.r)
            report = check_potential_lemmas(audit)
        print(report.as_text())
        return 0 if report.passed else 1

    failures = 0
    audited = 0
    breaker_wins = 0
    for index in range(args.random_games):
        seed = trial_seed(args.seed, 0, index)
        params = GameParams(n=args.n, a=args.a, b=args.b, k=args.k)
        maker = make_maker("min-deg", params)
        breaker = make_breaker("random", params)
        outcome, trace = play_game(params, maker, breaker, seed=seed)
        if outcome.winner is Player.BREAKER:
            breaker_wins += 1
            audited_pair = audit_game(trace, r=args.r)
            if audited_pair is None:
                continue
            audited += 1
            _, report = audited_pair
            failures += len(report.failures())
            for failure in report.failures():
                print(failure.line(), file=sys.stderr)
    print(f"games={args.random_games} breaker_wins={breaker_wins} "
          f"audited={audited} failures={failures}")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbg",
        description="Biased Maker-Breaker games on complete graphs: "
                    "simulation, sweeps, box games, graph oracles, audits.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="play one game")
    for flag in ("n", "a", "b", "k", "seed"):
        sim.add_argument(f"--{flag}", type=int)
    sim.add_argument("--goal", choices=GOALS + ("min-degree-k", "mindeg"))
    sim.add_argument("--maker", choices=MAKER_STRATEGIES)
    sim.add_argument("--breaker", choices=BREAKER_STRATEGIES)
    sim.add_argument("--trace-out", help="write the game trace to this file")
    sim.add_argument("--no-early-stop", action="store_true",
                     help="play to exhaustion even after the game is decided")
    sim.add_argument("--config", help="key=value defaults file")
    sim.set_defaults(func=cmd_simulate)

    sweep = sub.add_parser("sweep", help="bias sweep with CSV output")
    for flag in ("n", "a", "k", "seed", "trials", "b-min", "b-max"):
        sweep.add_argument(f"--{flag}", type=int)
    sweep.add_argument("--goal", choices=GOALS + ("min-degree-k", "mindeg"))
    sweep.add_argument("--maker", choices=MAKER_STRATEGIES)
    sweep.add_argument("--breaker", choices=BREAKER_STRATEGIES)
    sweep.add_argument("--b-values", type=_int_list,
                       help="comma-separated biases; overrides --b-min/max")
    sweep.add_argument("--out", help="CSV output path")
    sweep.add_argument("--config", help="key=value defaults file")
    sweep.set_defaults(func=cmd_sweep)

    box = sub.add_parser("boxgame", help="box game bounds and solving")
    box.add_argument("mode", choices=("f", "solve", "grid"))
    box.add_argument("--k", type=int, default=1)
    box.add_argument("--p", type=int, default=1)
    box.add_argument("--q", type=int, default=1)
    box.add_argument("--lower", action="store_true",
                     help="with mode f, also print the lower bound")
    box.add_argument("--sizes", default="",
                     help="with mode solve, comma-separated box sizes")
    box.add_argument("--canonical", action="store_true",
                     help="with mode solve, rebalance sizes canonically")
    box.add_argument("--first", choices=("boxmaker", "boxbreaker"),
                     default="boxmaker")
    box.add_argument("--max-k", type=int, default=SOLVER_MAX_BOXES)
    box.add_argument("--max-t", type=int, default=SOLVER_MAX_BALLS)
    box.set_defaults(func=cmd_boxgame)

    oracle = sub.add_parser("oracle", help="graph checks on an edge list")
    oracle.add_argument("--n", type=int, required=True)
    oracle.add_argument("--edges", required=True,
                        help="edge list file, '-' for stdin")
    oracle.add_argument("--check", required=True,
                        choices=("hamiltonian", "longest-path", "boosters",
                                 "expander"))
    oracle.add_argument("--k", type=int, default=1,
                        help="expansion parameter for --check expander")
    oracle.set_defaults(func=cmd_oracle)

    verify = sub.add_parser("verify", help="audit traces or fresh games")
    verify.add_argument("--trace", help="trace file to audit")
    verify.add_argument("--round", type=int)
    verify.add_argument("--vertex", type=int)
    verify.add_argument("--r", type=int, help="override the split parameter")
    verify.add_argument("--random-games", type=int, default=0)
    verify.add_argument("--n", type=int, default=20)
    verify.add_argument("--a", type=int, default=1)
    verify.add_argument("--b", type=int, default=3)
    verify.add_argument("--k", type=int, default=1)
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MBGError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
