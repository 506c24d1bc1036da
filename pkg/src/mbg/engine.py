"""Game engine: alternating biased moves, early win detection, traces.

A round is one Breaker move (b edge claims) followed by one Maker move
(a edge claims); Breaker moves first.  Strategies hand the engine one edge
per step and the board is updated between steps, so a strategy always sees
the live position.  The engine stops a game the moment its outcome is
certain and records every claim in a replayable trace.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable

from .board import Board, Edge, GameParams, Player
from .errors import InvalidParams, MBGError, StageBlocked, StrategyViolation
from .oracles import (HAMILTONIAN_CAP, SimpleGraph, is_connected,
                      is_hamiltonian, min_degree)

REASON_GOAL_ACHIEVED = "goal-achieved"
REASON_GOAL_IMPOSSIBLE = "goal-impossible"
REASON_BOARD_EXHAUSTED = "board-exhausted"


@dataclass(frozen=True)
class MoveRecord:
    round: int
    step: int
    player: Player
    edge: Edge
    target: int | None = None


@dataclass
class GameTrace:
    params: GameParams
    seed: int
    moves: list[MoveRecord] = field(default_factory=list)

    def maker_targets(self) -> dict[int, list[int | None]]:
        """Per round, the vertices Maker's strategy aimed at, in step order."""
        out: dict[int, list[int | None]] = {}
        for mv in self.moves:
            if mv.player is Player.MAKER:
                out.setdefault(mv.round, []).append(mv.target)
        return out

    def maker_claims(self) -> int:
        return sum(1 for mv in self.moves if mv.player is Player.MAKER)

    def rounds_played(self) -> int:
        return self.moves[-1].round if self.moves else 0


@dataclass(frozen=True)
class GameOutcome:
    winner: Player
    decisive_round: int
    reason: str
    flags: tuple[str, ...] = ()


def detect_breaker_win_mindeg(board: Board, k: int) -> int | None:
    """Lowest vertex that can no longer reach Maker degree k, if any.

    A vertex is dead once dB(v) > n - 1 - k, i.e. its Maker degree plus its
    free degree fall short of k.
    """
    limit = board.n - 1 - k
    for v in range(board.n):
        if board.dB[v] > limit:
            return v
    return None


def detect_maker_win(board: Board, goal: str, k: int = 1) -> bool:
    """Has Maker's graph already met the goal predicate?"""
    if goal == "min-degree":
        return min(board.dM) >= k
    g = SimpleGraph.from_board(board, Player.MAKER)
    if goal == "connectivity":
        return is_connected(g)
    if goal == "hamiltonicity":
        return is_hamiltonian(g)
    raise InvalidParams(f"unknown goal {goal!r}")


class _DSU:
    """Union-find over Maker's vertices for incremental connectivity."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.components = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry
            self.components -= 1


def play_game(params: GameParams, maker, breaker, seed: int,
              early_stop: bool = True) -> tuple[GameOutcome, GameTrace]:
    """Play one game to its decision.

    ``maker`` and ``breaker`` are fresh single-game strategy objects
    exposing ``begin_move(board, rng)`` and ``step(board, rng) -> (edge,
    target)``.  The outcome is deterministic in (params, strategies, seed).

    A Maker win is detected incrementally after each Maker claim; a Breaker
    win the moment some vertex can no longer reach the obstruction degree.
    Hamiltonicity, being expensive, is only tested when the Maker strategy
    reports it is in its endgame stage and at board exhaustion; by
    monotonicity this never changes the verdict.  With ``early_stop=False``
    the board is played out fully and only the final predicate decides,
    which exists so tests can confirm the shortcuts are sound.
    """
    import random

    if params.goal == "hamiltonicity" and params.n > HAMILTONIAN_CAP:
        raise InvalidParams(
            f"hamiltonicity games need n <= {HAMILTONIAN_CAP} for exact detection")
    rng = random.Random(seed)
    board = Board(params.n)
    trace = GameTrace(params=params, seed=seed)
    keff = params.threshold_degree()
    goal = params.goal

    deficient = params.n  # vertices with dM < k (min-degree goal)
    dsu = _DSU(params.n) if goal == "connectivity" else None

    max_rounds = math.ceil(board.m / (params.a + params.b)) + 1
    decided: GameOutcome | None = None
    round_no = 0

    def maker_won_now() -> bool:
        if goal == "min-degree":
            return deficient == 0
        if goal == "connectivity":
            return dsu.components == 1
        stage = getattr(maker, "stage", None)
        if stage in ("III", "done"):
            return is_hamiltonian(SimpleGraph.from_board(board, Player.MAKER))
        return False

    while decided is None:
        round_no += 1
        if round_no > max_rounds:
            raise MBGError("round limit exceeded; engine or strategy bug")
        for player, bias, strategy in (
            (Player.BREAKER, params.b, breaker),
            (Player.MAKER, params.a, maker),
        ):
            if board.free_count == 0:
                break
            strategy.begin_move(board, rng)
            for step_no in range(1, bias + 1):
                if board.free_count == 0:
                    break
                try:
                    edge, target = strategy.step(board, rng)
                except StageBlocked:
                    if player is Player.MAKER:
                        # Maker's own plan proves the goal unreachable
                        # (e.g. all crossing edges between his components
                        # are gone), so the game is over.
                        decided = GameOutcome(Player.BREAKER, round_no,
                                              REASON_GOAL_IMPOSSIBLE)
                        break
                    raise
                if not board.is_free(edge):
                    raise StrategyViolation(
                        f"{player.value} returned non-free edge {edge!r}")
                board.claim(player, edge)
                trace.moves.append(MoveRecord(round_no, step_no, player, edge, target))
                u, v = edge
                if player is Player.MAKER:
                    if goal == "min-degree":
                        if board.dM[u] == params.k:
                            deficient -= 1
                        if board.dM[v] == params.k:
                            deficient -= 1
                    elif goal == "connectivity":
                        dsu.union(u, v)
                    if early_stop and maker_won_now():
                        decided = GameOutcome(Player.MAKER, round_no,
                                              REASON_GOAL_ACHIEVED)
                        break
                else:
                    if early_stop and (board.dB[u] > board.n - 1 - keff
                                       or board.dB[v] > board.n - 1 - keff):
                        decided = GameOutcome(Player.BREAKER, round_no,
                                              REASON_GOAL_IMPOSSIBLE)
                        break
            if decided is not None:
                break
        if decided is None and board.free_count == 0:
            achieved = detect_maker_win(board, goal, params.k)
            decided = GameOutcome(
                Player.MAKER if achieved else Player.BREAKER,
                round_no, REASON_BOARD_EXHAUSTED)

    flags = []
    for strat in (maker, breaker):
        reason = getattr(strat, "infeasible_reason", None)
        if reason:
            flags.append("strategy-infeasible")
    decided = GameOutcome(decided.winner, decided.decisive_round,
                          decided.reason, tuple(flags))
    return decided, trace


def replay_trace(trace: GameTrace) -> Board:
    """Apply every recorded claim on a fresh board; validates legality."""
    board = Board(trace.params.n)
    for mv in trace.moves:
        board.claim(mv.player, mv.edge)
    return board


def trace_to_json(trace: GameTrace, outcome: GameOutcome | None = None) -> str:
    doc = {
        "params": trace.params.as_dict(),
        "seed": trace.seed,
        "moves": [
            {
                "round": mv.round,
                "step": mv.step,
                "player": mv.player.value,
                "u": mv.edge[0],
                "v": mv.edge[1],
                "target": mv.target,
            }
            for mv in trace.moves
        ],
    }
    if outcome is not None:
        doc["outcome"] = {
            "winner": outcome.winner.value,
            "decisiveRound": outcome.decisive_round,
            "reason": outcome.reason,
            "flags": list(outcome.flags),
        }
    return json.dumps(doc, indent=2) + "\n"


def trace_from_json(text: str) -> tuple[GameTrace, GameOutcome | None]:
    doc = json.loads(text)
    params = GameParams.from_dict(doc["params"])
    trace = GameTrace(params=params, seed=doc["seed"])
    for m in doc["moves"]:
        trace.moves.append(MoveRecord(
            round=m["round"],
            step=m["step"],
            player=Player(m["player"]),
            edge=(m["u"], m["v"]),
            target=m.get("target"),
        ))
    outcome = None
    if "outcome" in doc:
        o = doc["outcome"]
        outcome = GameOutcome(
            winner=Player(o["winner"]),
            decisive_round=o["decisiveRound"],
            reason=o["reason"],
            flags=tuple(o.get("flags", ())),
        )
    return trace, outcome


def write_trace(path, trace: GameTrace, outcome: GameOutcome | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(trace_to_json(trace, outcome))


def read_trace(path) -> tuple[GameTrace, GameOutcome | None]:
    with open(path, encoding="utf-8") as fh:
        return trace_from_json(fh.read())
