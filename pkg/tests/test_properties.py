"""Randomised invariant checks (hypothesis)."""

import random
from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from mbg.audit import audit_game, harmonic
from mbg.board import Board, GameParams, Player
from mbg.boxgame import (BoxPlayState, boxmaker_balancing_move,
                         canonical_instance, f_box, f_lower_bound)
from mbg.breaker_strategies import make_breaker
from mbg.engine import play_game, trace_from_json, trace_to_json
from mbg.maker_strategies import make_maker

SLOW = settings(max_examples=25, deadline=None)
FAST = settings(max_examples=60, deadline=None)


@FAST
@given(n=st.integers(4, 10), seed=st.integers(0, 10**6),
       claims=st.integers(0, 45))
def test_board_degree_accounting(n, seed, claims):
    board = Board(n)
    m = board.free_count
    rng = random.Random(seed)
    made = 0
    for i in range(min(claims, m)):
        player = Player.MAKER if i % 2 == 0 else Player.BREAKER
        edge = board.random_free_edge(rng)
        board.claim(player, edge)
        made += 1
    assert board.free_count == m - made
    assert sum(board.dM) + sum(board.dB) == 2 * made
    assert sum(board.free_degree(v) for v in range(n)) == 2 * board.free_count


@FAST
@given(k=st.integers(1, 30), p=st.integers(1, 20), q=st.integers(1, 6))
def test_f_box_is_monotone_in_p(k, p, q):
    assert f_box(k, p, q) <= f_box(k, p + 1, q)


@FAST
@given(k=st.integers(2, 60), q=st.integers(1, 6), extra=st.integers(0, 10))
def test_f_box_dominates_its_lower_bound(k, q, extra):
    assume(k > q)
    p = q + 1 + extra
    assert f_lower_bound(k, p, q) <= f_box(k, p, q)


@FAST
@given(k=st.integers(1, 5), base=st.integers(1, 6), p=st.integers(1, 6),
       bump=st.integers(0, 4))
def test_balancing_move_keeps_profiles_balanced(k, base, p, bump):
    sizes = [base] * k
    for i in range(min(bump, k)):
        sizes[i] += 1
    state = BoxPlayState(remaining=list(sizes))
    claims = boxmaker_balancing_move(state, p)
    assert all(count >= 1 for _, count in claims)
    if state.won is not None:
        assert state.remaining[state.won] == 0
        assert sum(count for _, count in claims) <= p
    else:
        assert sum(count for _, count in claims) == p
        alive = [state.remaining[i] for i in state.surviving()]
        assert alive and max(alive) - min(alive) <= 1
    assert all(r >= 0 for r in state.remaining)


@FAST
@given(k=st.integers(1, 4), t=st.integers(4, 12), p=st.integers(1, 3),
       q=st.integers(1, 3))
def test_canonical_instance_is_balanced_and_sized(k, t, p, q):
    assume(t >= k)
    inst = canonical_instance(k, t, p=p, q=q)
    assert inst.canonical
    assert inst.t == t and inst.k == k


@SLOW
@given(n=st.integers(5, 12), a=st.integers(1, 2), b=st.integers(1, 3),
       seed=st.integers(0, 10**6))
def test_play_game_is_deterministic(n, a, b, seed):
    params = GameParams(n=n, a=a, b=b)
    runs = []
    for _ in range(2):
        maker = make_maker("min-deg", params)
        breaker = make_breaker("random", params)
        runs.append(play_game(params, maker, breaker, seed=seed))
    assert runs[0][0] == runs[1][0]
    assert runs[0][1].moves == runs[1][1].moves


@SLOW
@given(n=st.integers(5, 9), b=st.integers(1, 2), seed=st.integers(0, 10**5))
def test_early_stop_never_changes_the_winner(n, b, seed):
    params = GameParams(n=n, b=b)
    outcomes = []
    for early in (True, False):
        maker = make_maker("min-deg", params)
        breaker = make_breaker("random", params)
        outcome, _ = play_game(params, maker, breaker, seed=seed,
                               early_stop=early)
        outcomes.append(outcome.winner)
    assert outcomes[0] == outcomes[1]


@SLOW
@given(n=st.integers(5, 10), seed=st.integers(0, 10**6))
def test_trace_json_round_trip(n, seed):
    params = GameParams(n=n, b=2)
    maker = make_maker("random", params)
    breaker = make_breaker("random", params)
    outcome, trace = play_game(params, maker, breaker, seed=seed)
    text = trace_to_json(trace, outcome)
    back, back_outcome = trace_from_json(text)
    assert back.moves == trace.moves
    assert back.params == trace.params
    assert back_outcome == outcome


@FAST
@given(m=st.integers(2, 400))
def test_harmonic_steps_by_reciprocals(m):
    assert harmonic(m) - harmonic(m - 1) == Fraction(1, m)


@SLOW
@given(seed=st.integers(0, 10**6))
def test_audit_pools_nest(seed):
    params = GameParams(n=16, a=1, b=5, k=2)
    maker = make_maker("min-deg", params)
    breaker = make_breaker("random", params)
    outcome, trace = play_game(params, maker, breaker, seed=seed)
    assume(outcome.winner is Player.BREAKER)
    result = audit_game(trace)
    assume(result is not None)
    audit, report = result
    labels = sorted(audit.multisets)
    for earlier, later in zip(labels, labels[1:]):
        assert set(audit.multisets[earlier]) >= set(audit.multisets[later])
    assert report.passed, report.as_text()
