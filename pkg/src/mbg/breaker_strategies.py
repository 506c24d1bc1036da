"""Breaker-side strategies.

``IsolateBreaker`` is the trivial high-bias play: bury one untouched vertex
under n - k Breaker edges on the opening move.  ``CliqueBoxBreaker`` is the
two-phase plan that works at much lower bias: grow a Breaker clique of
untouched vertices, then treat the free edges at each clique vertex as boxes
and win the resulting box game.  ``RandomBreaker`` is the noise baseline.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .board import Board, Edge, GameParams, Player
from .boxgame import BoxPlayState, boxmaker_balancing_move
from .errors import (BoxesExhausted, InvalidParams, NoFreeEdge,
                     StrategyInfeasible)
from .maker_strategies import GameStrategy


@dataclass
class IsolateState:
    target: int | None = None
    quota: int = 0


def isolate_move(board: Board, params: GameParams, state: IsolateState) -> Edge:
    """One claim of the isolation plan.

    The first call locks onto the lowest Maker-untouched vertex and budgets
    n - k edges for it; those claims leave the target unable to ever reach
    Maker degree k.  Calls beyond the quota claim the lowest free edge.
    """
    if state.target is None:
        untouched = [v for v in range(board.n) if board.dM[v] == 0]
        state.target = untouched[0] if untouched else 0
        state.quota = board.n - params.threshold_degree()
    if state.quota > 0:
        edge = board.lowest_free_incident_edge(state.target)
        if edge is not None:
            state.quota -= 1
            return edge
        state.quota = 0
    edge = board.lowest_free_edge()
    if edge is None:
        raise NoFreeEdge("board exhausted")
    return edge


class IsolateBreaker(GameStrategy):
    def __init__(self, params: GameParams):
        needed = params.n - params.threshold_degree()
        if params.b < needed:
            raise StrategyInfeasible(
                f"isolation needs bias >= {needed}, got {params.b}")
        self.params = params
        self.state = IsolateState()

    def step(self, board: Board, rng) -> tuple[Edge, int | None]:
        return isolate_move(board, self.params, self.state), None


def clique_size_target(n: int, a: int) -> int:
    """Size at which the Breaker clique switches to box play."""
    return math.ceil(n / (2 * (a + math.log(n))))


@dataclass
class CliquePlanState:
    """Plan state of the clique-then-boxes Breaker.

    ``clique`` holds the current candidate vertices (Maker-untouched, pairwise
    joined by Breaker edges).  Once it reaches ``h`` vertices the plan freezes
    ``v_star`` (the h - a lowest candidates) and a box of free edges per
    chosen vertex; emptying any box forecloses that vertex.
    """

    h: int
    stage: str = "clique"
    clique: list[int] = field(default_factory=list)
    v_star: list[int] | None = None
    boxes: dict[int, list[Edge]] | None = None
    finished_vertex: int | None = None


def clique_building_move(board: Board, params: GameParams,
                         state: CliquePlanState) -> list[Edge]:
    """Plan one clique-growing move (up to b edges).

    Candidates Maker has touched since the last move are pruned first; Maker
    can touch at most one candidate per claimed edge (candidate pairs are all
    Breaker edges), so adding a + 1 fresh vertices grows the clique by at
    least one per move.  When the clique reaches h vertices the move is
    handed to box play instead.
    """
    a, b = params.a, params.b
    state.clique = [v for v in state.clique if board.dM[v] == 0]
    if len(state.clique) >= state.h:
        _freeze_boxes(board, params, state)
        state.stage = "box"
        return box_playing_move(board, params, state)
    members = set(state.clique)
    fresh: list[int] = []
    for v in range(board.n):
        if board.dM[v] == 0 and v not in members:
            fresh.append(v)
            if len(fresh) == a + 1:
                break
    if len(fresh) < a + 1:
        raise StrategyInfeasible(
            f"only {len(fresh)} untouched vertices left, need {a + 1}")
    wanted = [tuple(sorted(e)) for e in combinations(fresh, 2)]
    wanted += [tuple(sorted((u, v))) for v in fresh for u in state.clique]
    plan = [e for e in sorted(wanted) if board.is_free(e)]
    if len(plan) > b:
        raise StrategyInfeasible(
            f"joining {a + 1} vertices needs {len(plan)} edges, bias is {b}")
    state.clique.extend(fresh)
    if len(plan) < b:
        members.update(fresh)
        planned = set(plan)
        spare = sorted(e for e in board.free_edges()
                       if e[0] not in members and e[1] not in members
                       and e not in planned)
        plan.extend(spare[:b - len(plan)])
    if len(plan) < b:
        used = set(plan)
        extra = sorted(e for e in board.free_edges() if e not in used)
        plan.extend(extra[:b - len(plan)])
    return plan


def _freeze_boxes(board: Board, params: GameParams,
                  state: CliquePlanState) -> None:
    a = params.a
    keep = state.h - a
    if keep < 1 or len(state.clique) < keep:
        raise StrategyInfeasible(
            f"cannot keep {keep} of {len(state.clique)} clique vertices")
    state.v_star = sorted(state.clique)[:keep]
    box_size = board.n - params.threshold_degree() - state.h + 1
    if box_size < 1:
        raise StrategyInfeasible(
            f"box size {box_size} is empty for n={board.n}, h={state.h}")
    members = set(state.clique)
    boxes: dict[int, list[Edge]] = {}
    for v in state.v_star:
        edges = [e for e in board.free_incident_edges(v)
                 if (e[0] if e[0] != v else e[1]) not in members]
        if len(edges) < box_size:
            raise StrategyInfeasible(
                f"vertex {v} has {len(edges)} free edges outside the clique, "
                f"box needs {box_size}")
        boxes[v] = edges[:box_size]
    state.boxes = boxes


def box_playing_move(board: Board, params: GameParams,
                     state: CliquePlanState) -> list[Edge]:
    """Plan one box-game move with the balancing rule, bias b as the budget.

    A box is destroyed the moment Maker owns any edge in it.  Emptying a box
    pushes its vertex to Breaker degree n - k, which forecloses min-degree k
    for Maker; the engine's detection ends the game on that claim.
    """
    boxes = state.boxes
    assert boxes is not None
    for v in sorted(boxes):
        if any(board.state_of(e) == Player.MAKER for e in boxes[v]):
            del boxes[v]
    if not boxes:
        raise BoxesExhausted("Maker holds an edge in every remaining box")
    order = sorted(boxes)
    play = BoxPlayState(remaining=[len(boxes[v]) for v in order])
    plan: list[Edge] = []
    for idx, count in boxmaker_balancing_move(play, params.b):
        v = order[idx]
        take, boxes[v] = boxes[v][:count], boxes[v][count:]
        plan.extend(take)
    if play.won is not None:
        state.finished_vertex = order[play.won]
        state.stage = "done"
    return plan


class CliqueBoxBreaker(GameStrategy):
    """Clique growth followed by box play.

    Moves are planned as a whole in ``begin_move`` and dealt out one edge per
    ``step``.  If the plan ever becomes impossible (untouched vertices run
    out, a move exceeds the bias, every box is destroyed) the strategy
    records why, flags the game, and plays random edges from then on.
    """

    def __init__(self, params: GameParams):
        a, b, n = params.a, params.b, params.n
        h = clique_size_target(n, a)
        join_cost = a * (a + 1) // 2
        if h <= a:
            raise StrategyInfeasible(
                f"clique target {h} must exceed a={a} to leave box vertices")
        if b < join_cost:
            raise StrategyInfeasible(
                f"bias {b} cannot pay the {join_cost}-edge opening join")
        if n - params.threshold_degree() - h + 1 < 1:
            raise StrategyInfeasible(
                f"boxes would be empty at n={n}, h={h}, k={params.k}")
        self.params = params
        self.state = CliquePlanState(h=h)
        self.infeasible_reason: str | None = None
        self._queue: deque[Edge] = deque()

    def begin_move(self, board: Board, rng) -> None:
        self._queue.clear()
        state = self.state
        if state.stage not in ("clique", "box"):
            return
        try:
            if state.stage == "clique":
                plan = clique_building_move(board, self.params, state)
            else:
                plan = box_playing_move(board, self.params, state)
        except (StrategyInfeasible, BoxesExhausted) as exc:
            state.stage = "fallback"
            self.infeasible_reason = str(exc)
            return
        self._queue.extend(plan)

    def step(self, board: Board, rng) -> tuple[Edge, int | None]:
        while self._queue:
            edge = self._queue.popleft()
            if board.is_free(edge):
                return edge, None
        if self.state.stage == "fallback":
            return board.random_free_edge(rng), None
        edge = board.lowest_free_edge()
        if edge is None:
            raise NoFreeEdge("board exhausted")
        return edge, None


class RandomBreaker(GameStrategy):
    def __init__(self, params: GameParams):
        self.params = params

    def step(self, board: Board, rng) -> tuple[Edge, int | None]:
        return board.random_free_edge(rng), None


BREAKER_STRATEGIES = ("isolate", "clique-box", "random")


def make_breaker(name: str, params: GameParams, **options) -> GameStrategy:
    if name == "isolate":
        return IsolateBreaker(params, **options)
    if name == "clique-box":
        return CliqueBoxBreaker(params, **options)
    if name == "random":
        return RandomBreaker(params, **options)
    raise InvalidParams(
        f"unknown breaker strategy {name!r}; expected one of {BREAKER_STRATEGIES}")
