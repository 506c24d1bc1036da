"""The box game: BoxMaker pulls balls out of boxes, BoxBreaker destroys boxes.

An instance B(k, t, p, q) has k disjoint boxes holding t balls in total.
BoxMaker claims p balls per move and wins by emptying some box; BoxBreaker
destroys up to q boxes per move and wins by destroying every box first.

The module provides the classical threshold function ``f_box`` with a matching
lower bound, a balancing move rule for BoxMaker, and an exhaustive minimax
solver for small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import BoxesExhausted, InvalidParams, PreconditionFailed, TooLarge

SOLVER_MAX_BALLS = 12
SOLVER_MAX_BOXES = 5


class BoxPlayer(Enum):
    BOXMAKER = "BoxMaker"
    BOXBREAKER = "BoxBreaker"


@lru_cache(maxsize=None)
def f_box(k: int, p: int, q: int) -> int:
    """Threshold value f(k; p, q) of the box game, exact integer.

    f(k) = (k-1)(p+1)                       for 1 <= k <= q,
    f(k) = k*p                              for q < k <= 2q,
    f(k) = floor(k * (f(k-q) + p - q) / (k-q))  otherwise.
    """
    if k < 1 or p < 1 or q < 1:
        raise InvalidParams(f"f_box needs k, p, q >= 1, got ({k}, {p}, {q})")
    if k <= q:
        return (k - 1) * (p + 1)
    if k <= 2 * q:
        return k * p
    return k * (f_box(k - q, p, q) + p - q) // (k - q)


# Cached partial sums of 1/j starting at j=2, used by f_lower_bound.
_RECIP_SUMS: list[Fraction] = [Fraction(0), Fraction(0)]


def _reciprocal_sum(limit: int) -> Fraction:
    """Exact sum of 1/j for j in [2, limit]; zero when limit < 2."""
    if limit < 2:
        return Fraction(0)
    while len(_RECIP_SUMS) <= limit:
        j = len(_RECIP_SUMS)
        _RECIP_SUMS.append(_RECIP_SUMS[-1] + Fraction(1, j))
    return _RECIP_SUMS[limit]


def f_lower_bound(k: int, p: int, q: int) -> Fraction:
    """Closed-form lower bound on f(k; p, q), exact rational.

    Valid for k > q and p - q - 1 >= 0:
        k*p - 1 + (k*(p-q-1)/q) * sum_{j=2}^{ceil(k/q)-1} 1/j
    """
    if k < 1 or p < 1 or q < 1:
        raise InvalidParams(f"f_lower_bound needs k, p, q >= 1, got ({k}, {p}, {q})")
    if k <= q:
        raise PreconditionFailed(f"f_lower_bound needs k > q, got k={k}, q={q}")
    if p - q - 1 < 0:
        raise PreconditionFailed(f"f_lower_bound needs p - q - 1 >= 0, got p={p}, q={q}")
    limit = math.ceil(k / q) - 1
    return k * p - 1 + Fraction(k * (p - q - 1), q) * _reciprocal_sum(limit)


def boxmaker_sufficient(k: int, t: int, p: int, q: int) -> bool:
    """True when t <= f(k; p, q) + p, a sufficient ball budget for BoxMaker."""
    if t < 0:
        raise InvalidParams(f"t must be >= 0, got {t}")
    return t <= f_box(k, p, q) + p


@dataclass(frozen=True)
class BoxInstance:
    """A concrete box game position (box sizes plus play parameters)."""

    sizes: tuple[int, ...]
    p: int = 1
    q: int = 1
    first_mover: BoxPlayer = BoxPlayer.BOXMAKER

    def __post_init__(self) -> None:
        if not self.sizes:
            raise InvalidParams("an instance needs at least one box")
        if any(s < 1 for s in self.sizes):
            raise InvalidParams(f"box sizes must be >= 1, got {self.sizes}")
        if self.p < 1 or self.q < 1:
            raise InvalidParams(f"biases must be >= 1, got p={self.p}, q={self.q}")

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def t(self) -> int:
        return sum(self.sizes)

    @property
    def canonical(self) -> bool:
        return max(self.sizes) - min(self.sizes) <= 1


def canonical_instance(k: int, t: int, p: int = 1, q: int = 1,
                       first_mover: BoxPlayer = BoxPlayer.BOXMAKER) -> BoxInstance:
    """The balanced instance: t mod k boxes of ceil(t/k), the rest floor(t/k)."""
    if k < 1:
        raise InvalidParams(f"k must be >= 1, got {k}")
    if t < k:
        raise InvalidParams(f"need t >= k so every box is nonempty, got t={t}, k={k}")
    big, rem = divmod(t, k)
    sizes = tuple([big + 1] * rem + [big] * (k - rem))
    return BoxInstance(sizes, p=p, q=q, first_mover=first_mover)


@dataclass
class BoxPlayState:
    """Mutable play state: remaining ball counts, destroyed and won boxes."""

    remaining: list[int]
    destroyed: set[int] = field(default_factory=set)
    won: int | None = None

    @classmethod
    def from_instance(cls, inst: BoxInstance) -> "BoxPlayState":
        return cls(remaining=list(inst.sizes))

    def surviving(self) -> list[int]:
        return [i for i in range(len(self.remaining))
                if i not in self.destroyed and self.remaining[i] > 0]

    def destroy(self, box: int) -> None:
        if not (0 <= box < len(self.remaining)):
            raise InvalidParams(f"box {box} out of range")
        self.destroyed.add(box)


def boxmaker_balancing_move(state: BoxPlayState, p: int) -> list[tuple[int, int]]:
    """BoxMaker's balancing move: claim up to p balls, largest boxes first.

    When even the largest surviving box holds at most p balls, BoxMaker takes
    that whole box and wins (play stops there, possibly under budget).
    Otherwise the p claims are made one at a time, each from a currently
    largest surviving box, lowest index on ties; a balanced ("canonical")
    profile stays balanced.  Returns per-box claim counts in claim order.
    """
    if p < 1:
        raise InvalidParams(f"p must be >= 1, got {p}")
    alive = state.surviving()
    if not alive:
        raise BoxesExhausted("no surviving box to claim from")
    rem = state.remaining
    largest = max(alive, key=lambda i: (rem[i], -i))
    if rem[largest] <= p:
        count = rem[largest]
        rem[largest] = 0
        state.won = largest
        return [(largest, count)]
    claims: list[tuple[int, int]] = []
    for _ in range(p):
        target = max(alive, key=lambda i: (rem[i], -i))
        rem[target] -= 1
        if claims and claims[-1][0] == target:
            claims[-1] = (target, claims[-1][1] + 1)
        else:
            claims.append((target, 1))
    return claims


def solve_exhaustive(inst: BoxInstance) -> BoxPlayer:
    """Exact minimax winner of a small instance under optimal play.

    BoxMaker distributes exactly p claims over surviving boxes (all of the
    remainder when fewer balls are left) and wins the moment a box he drained
    hits zero.  BoxBreaker destroys up to q surviving boxes, fewer allowed,
    and wins once no box survives.  Capped to keep the state space tiny.
    """
    if inst.t > SOLVER_MAX_BALLS:
        raise TooLarge(f"solver capped at t <= {SOLVER_MAX_BALLS}, got t={inst.t}")
    if inst.k > SOLVER_MAX_BOXES:
        raise TooLarge(f"solver capped at k <= {SOLVER_MAX_BOXES}, got k={inst.k}")
    p, q = inst.p, inst.q

    memo: dict[tuple[tuple[int, ...], BoxPlayer], bool] = {}

    def maker_wins(sizes: tuple[int, ...], mover: BoxPlayer) -> bool:
        # `sizes` holds the surviving boxes only, sorted ascending.
        if not sizes:
            return False
        key = (sizes, mover)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if mover is BoxPlayer.BOXMAKER:
            if sizes[0] <= p:
                memo[key] = True
                return True
            result = any(
                maker_wins(after, BoxPlayer.BOXBREAKER)
                for after in _distributions(sizes, p)
            )
        else:
            result = True
            for after in _destruction_outcomes(sizes, q):
                if not maker_wins(after, BoxPlayer.BOXMAKER):
                    result = False
                    break
        memo[key] = result
        return result

    start = tuple(sorted(inst.sizes))
    return BoxPlayer.BOXMAKER if maker_wins(start, inst.first_mover) else BoxPlayer.BOXBREAKER


def _distributions(sizes: tuple[int, ...], p: int):
    """Distinct surviving profiles after BoxMaker claims p balls.

    Every box keeps at least one ball here: profiles that empty a box are
    handled by the immediate-win shortcut before this is called.
    """
    out = set()

    def rec(idx: int, budget: int, acc: list[int]):
        if idx == len(sizes):
            if budget == 0:
                out.add(tuple(sorted(acc)))
            return
        max_take = min(budget, sizes[idx] - 1)
        for take in range(max_take + 1):
            rec(idx + 1, budget - take, acc + [sizes[idx] - take])

    rec(0, p, [])
    return out


def _destruction_outcomes(sizes: tuple[int, ...], q: int):
    """Distinct surviving profiles after BoxBreaker destroys up to q boxes."""
    out = set()
    k = len(sizes)
    for count in range(0, min(q, k) + 1):
        from itertools import combinations
        for gone in combinations(range(k), count):
            out.add(tuple(s for i, s in enumerate(sizes) if i not in gone))
    return out
