"""Exact graph-property oracles used for win detection and verification.

All heavy oracles are exponential-time exact algorithms with explicit size
caps; they are meant for desk-scale verification, not production graph work.
Graphs are simple and undirected, stored as per-vertex adjacency bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidParams, NotConnected, TooLarge

HAMILTONIAN_CAP = 24
LONGEST_PATH_CAP = 20
EXPANDER_SUBSET_CAP = 10**7


class SimpleGraph:
    """Undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges=()):
        if n < 1:
            raise InvalidParams(f"graph needs n >= 1, got {n}")
        self.n = n
        self.adj: list[int] = [0] * n
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise InvalidParams(f"loop edge at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidParams(f"edge ({u}, {v}) out of range for n={self.n}")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n)
                for v in _bits(self.adj[u]) if u < v]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if not self.adj[u] >> v & 1]

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def with_edge(self, u: int, v: int) -> "SimpleGraph":
        g = SimpleGraph(self.n)
        g.adj = list(self.adj)
        g.add_edge(u, v)
        return g

    @classmethod
    def from_board(cls, board, player) -> "SimpleGraph":
        return cls(board.n, board.edges_of(player))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def min_degree(g: SimpleGraph) -> int:
    return min(g.degree(v) for v in range(g.n))


def is_connected(g: SimpleGraph) -> bool:
    """Spanning connectivity: every vertex reachable from vertex 0."""
    full = (1 << g.n) - 1
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def connected_components(g: SimpleGraph) -> list[list[int]]:
    comps = []
    unseen = (1 << g.n) - 1
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        comps.append(_bits(seen))
        unseen &= ~seen
    return comps


def is_hamiltonian(g: SimpleGraph) -> bool:
    """Exact Hamiltonian-cycle test via subset DP over (visited set, endpoint).

    Cycles need at least 3 vertices, so n <= 2 is never Hamiltonian.
    """
    n = g.n
    if n > HAMILTONIAN_CAP:
        raise TooLarge(f"is_hamiltonian capped at n <= {HAMILTONIAN_CAP}, got {n}")
    if n <= 2:
        return False
    if not is_connected(g) or min_degree(g) < 2:
        return False
    adj = g.adj
    full = (1 << n) - 1
    # dp[mask] = bitmask of endpoints v such that a path over exactly `mask`
    # starts at 0 and ends at v.  Only masks containing vertex 0 are live.
    dp = [0] * (1 << n)
    dp[1] = 1
    for mask in range(1, 1 << n, 2):
        ends = dp[mask]
        if not ends:
            continue
        rest = ~mask
        while ends:
            low = ends & -ends
            ends ^= low
            v = low.bit_length() - 1
            ext = adj[v] & rest
            while ext:
                wlow = ext & -ext
                ext ^= wlow
                dp[mask | wlow] |= wlow
    closing = dp[full] & adj[0]
    return closing != 0


def longest_path_order(g: SimpleGraph) -> int:
    """Number of vertices on a longest simple path (exact subset DP)."""
    n = g.n
    if n > LONGEST_PATH_CAP:
        raise TooLarge(f"longest_path_order capped at n <= {LONGEST_PATH_CAP}, got {n}")
    adj = g.adj
    dp = [0] * (1 << n)
    for v in range(n):
        dp[1 << v] = 1 << v
    best = 1
    for mask in range(1, 1 << n):
        ends = dp[mask]
        if not ends:
            continue
        size = mask.bit_count()
        if size > best:
            best = size
            if best == n:
                break
        rest = ~mask
        while ends:
            low = ends & -ends
            ends ^= low
            v = low.bit_length() - 1
            ext = adj[v] & rest
            while ext:
                wlow = ext & -ext
                ext ^= wlow
                dp[mask | wlow] |= wlow
    return best


def external_neighborhood(g: SimpleGraph, vertices) -> set[int]:
    """N(U): vertices outside U with at least one neighbor inside U."""
    umask = 0
    for v in vertices:
        if not (0 <= v < g.n):
            raise InvalidParams(f"vertex {v} out of range")
        umask |= 1 << v
    nb = 0
    for v in _bits(umask):
        nb |= g.adj[v]
    return set(_bits(nb & ~umask))


@dataclass(frozen=True)
class ExpanderCheck:
    holds: bool
    witness: frozenset[int] | None
    exhaustive: bool


def is_k_expander(g: SimpleGraph, k: int, mode: str = "auto",
                  samples: int = 20000, rng=None) -> ExpanderCheck:
    """Check |N(U)| >= 2|U| for every vertex set U with 1 <= |U| <= k.

    Exhaustive enumeration when the subset count fits under the cap;
    otherwise a one-sided random sample ("no violation found").
    """
    if not (1 <= k):
        raise InvalidParams(f"k must be >= 1, got {k}")
    n = g.n
    total = 0
    for size in range(1, min(k, n) + 1):
        total += _ncr(n, size)
    if mode not in ("auto", "exhaustive", "sample"):
        raise InvalidParams(f"unknown mode {mode!r}")
    if mode == "exhaustive" and total > EXPANDER_SUBSET_CAP:
        raise TooLarge(
            f"{total} subsets exceed exhaustive cap {EXPANDER_SUBSET_CAP}")
    exhaustive = mode == "exhaustive" or (mode == "auto" and total <= EXPANDER_SUBSET_CAP)
    adj = g.adj
    if exhaustive:
        for size in range(1, min(k, n) + 1):
            need = 2 * size
            for combo in combinations(range(n), size):
                umask = 0
                nb = 0
                for v in combo:
                    umask |= 1 << v
                    nb |= adj[v]
                if (nb & ~umask).bit_count() < need:
                    return ExpanderCheck(False, frozenset(combo), True)
        return ExpanderCheck(True, None, True)
    import random as _random
    rng = rng or _random.Random(0)
    for _ in range(samples):
        size = rng.randint(1, min(k, n))
        combo = rng.sample(range(n), size)
        umask = 0
        nb = 0
        for v in combo:
            umask |= 1 << v
            nb |= adj[v]
        if (nb & ~umask).bit_count() < 2 * size:
            return ExpanderCheck(False, frozenset(combo), False)
    return ExpanderCheck(True, None, False)


def _ncr(n: int, r: int) -> int:
    import math
    return math.comb(n, r) if 0 <= r <= n else 0


@dataclass(frozen=True)
class BoosterSet:
    """Non-edges whose addition lengthens a longest path or closes a cycle."""

    edges: frozenset[tuple[int, int]]
    already_hamiltonian: bool


def boosters(g: SimpleGraph) -> BoosterSet:
    """All boosters of a connected graph.

    A non-edge e is a booster when G+e is Hamiltonian or has a strictly
    longer longest path than G.  A Hamiltonian input has no boosters by
    convention; the flag says why the set is empty.
    """
    if not is_connected(g):
        raise NotConnected("boosters are defined for connected graphs only")
    if g.n > LONGEST_PATH_CAP:
        raise TooLarge(f"boosters capped at n <= {LONGEST_PATH_CAP}, got {g.n}")
    if is_hamiltonian(g):
        return BoosterSet(frozenset(), True)
    base = longest_path_order(g)
    found = []
    for u, v in g.non_edges():
        g2 = g.with_edge(u, v)
        if is_hamiltonian(g2) or longest_path_order(g2) > base:
            found.append((u, v))
    return BoosterSet(frozenset(found), False)


def petersen_graph() -> SimpleGraph:
    """The Petersen graph: outer 5-cycle, inner 5-star, spokes."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return SimpleGraph(10, outer + inner + spokes)
