"""Trace auditing for the min-degree strategy's potential analysis.

The analysis behind the min-degree Maker works with the danger potential
D(v) = dB(v) - (2b/a) dM(v) averaged over rolling multisets of the targeted
vertices.  Given a finished game this module replays the trace, rebuilds
those multisets and the degree snapshots at their defining instants, and
re-checks every inequality the analysis proves about them.  A failure is an
implementation bug, never expected behaviour, which is exactly what makes
the checks useful.

Danger sums are exact rationals throughout.  Only the logarithmic ceilings
are evaluated in floating point, compared with a one-sided slack.

Also here: exact harmonic numbers and the log-sandwich bounds on them that
the ceilings rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .board import Player, new_board
from .engine import GameTrace
from .errors import InvalidParams, TraceIncompatible

# One-sided slack for comparisons against float logarithms.
LOG_TOLERANCE = 1e-9

# Guard for the harmonic-number bound checks.
HARMONIC_GUARD = 1e-12


# ---------------------------------------------------------------------------
# Harmonic numbers


def harmonic(m: int) -> Fraction:
    """Exact H_m = 1 + 1/2 + ... + 1/m.

    Summed by halving so the single reduction happens at the end; a naive
    Fraction loop reduces after every addition and crawls for large m.
    """
    if m < 1:
        raise InvalidParams(f"harmonic number needs m >= 1, got {m}")

    def merge(lo: int, hi: int) -> tuple[int, int]:
        if lo == hi:
            return 1, lo
        mid = (lo + hi) // 2
        n1, d1 = merge(lo, mid)
        n2, d2 = merge(mid + 1, hi)
        return n1 * d2 + n2 * d1, d1 * d2

    return Fraction(*merge(1, m))


def harmonic_bounds_ok(m: int, guard: float = HARMONIC_GUARD) -> bool:
    """ln(m+1) <= H_m <= ln(m) + 1, exact H against guarded float logs."""
    value = float(harmonic(m))
    return (math.log(m + 1) <= value + guard
            and value <= math.log(m) + 1.0 + guard)


def harmonic_bounds_sweep(limit: int, guard: float = HARMONIC_GUARD) -> list[str]:
    """Check the harmonic log-sandwich up to ``limit``; returns violations.

    Exact harmonic numbers are impractical at 10^5 (the reduced numerator has
    tens of thousands of digits), so the sweep leans on telescoping: both
    endpoint bounds and every difference bound H_j - H_i <= ln j - ln i
    (i <= j) are sums of the per-step facts

        1/(m+1) <= ln(m+1) - ln(m) <= 1/m.

    Checking those two for every m < limit, plus the m=1 base cases, covers
    the whole family.  The true per-step slack is about 1/(2 m^2), far above
    float noise at this range, so a guarded float comparison is conclusive.
    The running H_m is also tracked in compensated floating point and the
    endpoint bounds re-checked directly as a belt-and-braces measure.
    """
    if limit < 1:
        raise InvalidParams(f"sweep limit must be >= 1, got {limit}")
    problems: list[str] = []
    if not harmonic_bounds_ok(1, guard):
        problems.append("endpoint bounds fail at m=1")
    total = 1.0
    comp = 0.0
    for m in range(1, limit):
        step = math.log1p(1.0 / m)
        if step > 1.0 / m + guard:
            problems.append(f"ln(1+1/m) <= 1/m fails at m={m}")
        if 1.0 / (m + 1) > step + guard:
            problems.append(f"1/(m+1) <= ln(1+1/m) fails at m={m}")
        term = 1.0 / (m + 1)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if math.log(m + 2) > total + 1e-9:
            problems.append(f"ln(m+1) <= H_m fails at m={m + 1}")
        if total > math.log(m + 1) + 1.0 + 1e-9:
            problems.append(f"H_m <= ln(m)+1 fails at m={m + 1}")
    return problems


# ---------------------------------------------------------------------------
# Reconstruction


@dataclass(frozen=True)
class DegreeSnapshot:
    """Per-vertex Maker/Breaker degrees at one instant of the game."""

    dM: tuple[int, ...]
    dB: tuple[int, ...]


def default_split_point(n: int, a: int) -> int:
    """Analysis split parameter: floor(n / (a^2 ln n)), at least 1."""
    return max(1, math.floor(n / (a * a * math.log(n))))


@dataclass
class PotentialAudit:
    """Everything reconstructed from a trace for one audited round.

    ``s`` is the audited round and ``vS`` the vertex whose foreclosure is
    analysed.  ``multisets[j]`` (round labels j = s-i) holds the distinct
    vertices among the targets of rounds j..s-1 plus vS whose Maker degree
    was still below the goal just before Maker's move of round j.  A vertex
    targeted in several rounds appears once: the within-round rise bound
    (at most 2b across the pool, two endpoints per Breaker edge) is only a
    theorem when each vertex carries unit weight.  ``snap_b[j]`` is taken
    immediately before round j (before Breaker's move), ``snap_m[j]`` just
    before Maker's first claim of round j.  ``avg_m``/``avg_b`` are keyed by
    the offset i of A_{s-i}; ``g_values`` by round label.
    """

    trace: GameTrace
    s: int
    vS: int
    r: int
    k: int
    multisets: dict[int, tuple[int, ...]] = field(default_factory=dict)
    snap_b: dict[int, DegreeSnapshot] = field(default_factory=dict)
    snap_m: dict[int, DegreeSnapshot] = field(default_factory=dict)
    g_values: dict[int, int] = field(default_factory=dict)
    avg_m: dict[int, Fraction] = field(default_factory=dict)
    avg_b: dict[int, Fraction] = field(default_factory=dict)


def _take_snapshots(trace: GameTrace, s: int
                    ) -> tuple[dict[int, DegreeSnapshot], dict[int, DegreeSnapshot]]:
    board = new_board(trace.params.n)
    snap_b: dict[int, DegreeSnapshot] = {}
    snap_m: dict[int, DegreeSnapshot] = {}

    def shot() -> DegreeSnapshot:
        return DegreeSnapshot(tuple(board.dM), tuple(board.dB))

    for mv in trace.moves:
        if mv.round > s:
            break
        if mv.round not in snap_b:
            snap_b[mv.round] = shot()
        if mv.player is Player.MAKER and mv.round not in snap_m:
            snap_m[mv.round] = shot()
        board.claim(mv.player, mv.edge)
    if s in snap_b and s not in snap_m:
        # Round s ended during Breaker's claims; the final position doubles
        # as the "before Maker" instant since Maker never got to move.
        snap_m[s] = shot()
    return snap_b, snap_m


def reconstruct_multisets(trace: GameTrace, s: int, vS: int,
                          r: int | None = None) -> PotentialAudit:
    """Rebuild the audit state for round ``s`` and vertex ``vS``.

    For each round label j the pool is the distinct vertices targeted in
    rounds j..s-1, plus vS, restricted to those still under the degree goal
    just before Maker's move of round j.  Requires a trace with recorded
    per-claim targets for every Maker move of rounds 1..s-1 (the min-degree
    strategy records them; a fallback claim or a different strategy leaves
    them as None and the trace cannot be audited).
    """
    params = trace.params
    if not (1 <= s <= trace.rounds_played()):
        raise InvalidParams(
            f"audited round {s} outside trace range 1..{trace.rounds_played()}")
    if not (0 <= vS < params.n):
        raise InvalidParams(f"vertex {vS} out of range for n={params.n}")
    k = params.threshold_degree()
    if r is None:
        r = default_split_point(params.n, params.a)
    if r < 1:
        raise InvalidParams(f"split parameter must be >= 1, got {r}")

    snap_b, snap_m = _take_snapshots(trace, s)
    if snap_b[s].dM[vS] > k - 1:
        raise InvalidParams(
            f"vertex {vS} already has Maker degree {snap_b[s].dM[vS]} in "
            f"round {s}; nothing to audit")

    audit = PotentialAudit(trace=trace, s=s, vS=vS, r=r, k=k,
                           snap_b=snap_b, snap_m=snap_m)
    targets = trace.maker_targets()
    audit.multisets[s] = (vS,)
    pool: list[int] = [vS]
    for i in range(1, s):
        j = s - i
        round_targets = targets.get(j, [])
        if len(round_targets) < params.a or any(t is None for t in round_targets):
            raise TraceIncompatible(
                f"round {j} lacks recorded targets; audit needs the "
                f"min-degree strategy's target log")
        pool = list(round_targets) + pool
        before_maker = snap_m[j].dM
        audit.multisets[j] = tuple(sorted(
            {v for v in pool if before_maker[v] <= k - 1}))
    for j in range(1, s + 1):
        audit.g_values[j] = compute_g(audit, j)
    for i in range(0, s):
        audit.avg_b[i] = avg_danger(audit, i, "B")
        audit.avg_m[i] = avg_danger(audit, i, "M")
    return audit


def compute_g(audit: PotentialAudit, round_label: int) -> int:
    """Breaker edges inside the multiset's support, claimed before the round.

    Counts distinct Breaker edges claimed strictly before Breaker's move of
    round ``round_label`` whose endpoints both lie in the support of the
    multiset with that label.
    """
    if round_label not in audit.multisets:
        raise InvalidParams(f"no multiset with round label {round_label}")
    support = set(audit.multisets[round_label])
    count = 0
    for mv in audit.trace.moves:
        if mv.round >= round_label:
            break
        if mv.player is Player.BREAKER:
            u, v = mv.edge
            if u in support and v in support:
                count += 1
    return count


def avg_danger(audit: PotentialAudit, i: int, side: str) -> Fraction:
    """Average danger of A_{s-i}, exact.

    ``side`` "B" evaluates immediately before round s-i, "M" just before
    Maker's move of that round.  Each qualifying vertex contributes once,
    and the divisor is the nominal size a*i + 1 regardless of how many
    vertices survived the dangerousness filter.
    """
    if side not in ("M", "B"):
        raise InvalidParams(f"side must be 'M' or 'B', got {side!r}")
    j = audit.s - i
    if j not in audit.multisets:
        raise InvalidParams(f"offset {i} has no reconstructed multiset")
    snap = audit.snap_m[j] if side == "M" else audit.snap_b[j]
    a, b = audit.trace.params.a, audit.trace.params.b
    total = sum(a * snap.dB[v] - 2 * b * snap.dM[v]
                for v in audit.multisets[j])
    return Fraction(total, a * (a * i + 1))


# ---------------------------------------------------------------------------
# Inequality checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    index: int
    lhs: Fraction
    rhs: Fraction | float
    passed: bool

    def line(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return (f"{self.name} i={self.index} lhs={self.lhs} "
                f"rhs={self.rhs} {verdict}")


@dataclass
class AuditReport:
    s: int
    vS: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_text(self) -> str:
        lines = [f"audit round={self.s} vertex={self.vS} "
                 f"checks={len(self.checks)}"]
        lines += [c.line() for c in self.checks]
        lines.append("result=" + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def check_potential_lemmas(audit: PotentialAudit) -> AuditReport:
    """Check every proved inequality about the reconstructed averages.

    Per offset 1 <= i <= s-1, with exact rationals:
      * Breaker's claims cannot lower a danger average
        (avg_danger_maker_ge_breaker), and Maker's own claims cannot raise
        the next one (avg_danger_maker_ge_next_breaker).
      * The within-round rise of the average is at most 2b/(ai+1)
        (gap_le_bias_share) and at most
        (b - a^2 + a + C(a,2) + g(s-i+1) - g(s-i)) / (ai) + a
        (gap_le_adjacency_share).
    For s >= 2, the final average D(vS) before round s is compared against
    the harmonic ceiling (2b/a)(ln(s-1) + 1) (final_danger_log_bound) and
    the split ceiling parameterised by r (final_danger_split_bound), both in
    floats with LOG_TOLERANCE of slack.
    """
    params = audit.trace.params
    a, b, s, r = params.a, params.b, audit.s, audit.r
    report = AuditReport(s=s, vS=audit.vS)
    pair_bonus = a - a * a + a * (a - 1) // 2
    for i in range(1, s):
        avg_m = audit.avg_m[i]
        avg_b = audit.avg_b[i]
        avg_b_next = audit.avg_b[i - 1]
        report.checks.append(CheckResult(
            "avg_danger_maker_ge_breaker", i, avg_m, avg_b, avg_m >= avg_b))
        report.checks.append(CheckResult(
            "avg_danger_maker_ge_next_breaker", i, avg_m, avg_b_next,
            avg_m >= avg_b_next))
        gap = avg_m - avg_b
        bias_share = Fraction(2 * b, a * i + 1)
        report.checks.append(CheckResult(
            "gap_le_bias_share", i, gap, bias_share, gap <= bias_share))
        g_next = audit.g_values[s - i + 1]
        g_here = audit.g_values[s - i]
        adjacency = Fraction(b + pair_bonus + g_next - g_here, a * i) + a
        report.checks.append(CheckResult(
            "gap_le_adjacency_share", i, gap, adjacency, gap <= adjacency))
    if s >= 2:
        final = audit.avg_b[0]
        log_bound = (2 * b / a) * (math.log(s - 1) + 1.0)
        report.checks.append(CheckResult(
            "final_danger_log_bound", 0, final, log_bound,
            float(final) <= log_bound + LOG_TOLERANCE))
        if s > r:
            split = ((b / a) * (2 * math.log(s - 1) - math.log(r) + 1.0)
                     - (a - 1) / 2 * math.log(r) + r * a)
        else:
            split = ((b / a) * (1.0 + math.log(r))
                     - (a - 1) / 2 * math.log(r) + r * a)
        report.checks.append(CheckResult(
            "final_danger_split_bound", 0, final, split,
            float(final) <= split + LOG_TOLERANCE))
    return report


# ---------------------------------------------------------------------------
# Trace-level helpers


def canonical_audit_point(trace: GameTrace) -> tuple[int, int] | None:
    """First (round, vertex) where Breaker forecloses the degree goal.

    A vertex is foreclosed once dB(v) > n - 1 - k: even claiming every
    remaining edge at v would leave Maker under degree k.  Returns None if
    the trace never forecloses anything (Maker won or the game was cut
    short).
    """
    params = trace.params
    k = params.threshold_degree()
    limit = params.n - 1 - k
    board = new_board(params.n)
    for mv in trace.moves:
        board.claim(mv.player, mv.edge)
        if mv.player is Player.BREAKER:
            for v in mv.edge:
                if board.dB[v] > limit:
                    return mv.round, v
    return None


def audit_game(trace: GameTrace, r: int | None = None
               ) -> tuple[PotentialAudit, AuditReport] | None:
    """Audit a finished game at its canonical foreclosure point."""
    point = canonical_audit_point(trace)
    if point is None:
        return None
    s, vS = point
    audit = reconstruct_multisets(trace, s, vS, r=r)
    return audit, check_potential_lemmas(audit)


def losing_round_bound_ok(trace: GameTrace, s: int) -> bool:
    """Round-count cap on audited losses: a * (s - 1) < k * n."""
    params = trace.params
    return params.a * (s - 1) < params.threshold_degree() * params.n


def foreclosed_degree_floor_ok(audit: PotentialAudit) -> bool:
    """Entering round s the audited vertex already carries most of the load:
    dB(vS) >= n - k - b just before Breaker's final move."""
    params = audit.trace.params
    d_before = audit.snap_b[audit.s].dB[audit.vS]
    return d_before >= params.n - audit.k - params.b


def degree_cap_exceptions(trace: GameTrace, delta: float
                          ) -> list[tuple[int, int, int]]:
    """Rounds where a still-deficient vertex exceeds the (1-delta)n cap.

    The cap is an asymptotic statement, so overshoots at small n are
    recorded (first offence per vertex) rather than treated as failures;
    they should thin out as n grows.
    """
    if not (0.0 < delta < 1.0):
        raise InvalidParams(f"delta must be in (0,1), got {delta}")
    params = trace.params
    k = params.threshold_degree()
    cap = (1.0 - delta) * params.n
    board = new_board(params.n)
    seen: set[int] = set()
    exceptions: list[tuple[int, int, int]] = []
    for mv in trace.moves:
        board.claim(mv.player, mv.edge)
        if mv.player is Player.BREAKER:
            for v in mv.edge:
                if v not in seen and board.dM[v] < k and board.dB[v] > cap:
                    seen.add(v)
                    exceptions.append((mv.round, v, board.dB[v]))
    return exceptions
