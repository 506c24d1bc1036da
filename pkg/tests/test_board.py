import random

import pytest

from mbg.board import (Board, GameParams, Player, edge_index, edge_list_text,
                       new_board, normalize_goal, parse_edge_list)
from mbg.errors import EdgeAlreadyClaimed, InvalidParams


class TestGameParams:
    def test_defaults(self):
        p = GameParams(n=10)
        assert (p.a, p.b, p.k, p.goal) == (1, 1, 1, "min-degree")
        assert p.edge_total == 45

    @pytest.mark.parametrize("kwargs", [
        dict(n=2),
        dict(n=5, a=0),
        dict(n=5, b=11),  # more than the edge count
        dict(n=5, k=0),
        dict(n=5, k=5),
        dict(n=5, goal="domination"),
        dict(n=5, epsilon=1.5),
        dict(n=5, delta=0.0),
        dict(n=5, epsilon=0.1, delta=0.2),
    ])
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(InvalidParams):
            GameParams(**kwargs)

    def test_threshold_degree_by_goal(self):
        assert GameParams(n=9, k=3).threshold_degree() == 3
        assert GameParams(n=9, k=3, goal="connectivity").threshold_degree() == 1
        assert GameParams(n=9, k=3, goal="hamiltonicity").threshold_degree() == 1

    def test_dict_round_trip(self):
        p = GameParams(n=12, a=2, b=5, k=2, goal="min-degree", epsilon=0.3,
                       delta=0.1)
        assert GameParams.from_dict(p.as_dict()) == p

    def test_goal_aliases(self):
        assert normalize_goal("mindeg") == "min-degree"
        assert normalize_goal("min-degree-k") == "min-degree"
        assert GameParams(n=5, goal="mindeg").goal == "min-degree"


def test_edge_index_matches_enumeration_order():
    n = 7
    board = Board(n)
    expected = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for i, (u, v) in enumerate(expected):
        assert edge_index(n, u, v) == i
    assert board.free_edges() == expected


class TestBoard:
    def test_claim_updates_state_and_degrees(self):
        board = Board(5)
        board.claim(Player.MAKER, (1, 3))
        board.claim(Player.BREAKER, (0, 3))
        assert board.state_of((1, 3)) is Player.MAKER
        assert board.state_of((0, 3)) is Player.BREAKER
        assert board.state_of((0, 1)) is None
        assert board.dM == [0, 1, 0, 1, 0]
        assert board.dB == [1, 0, 0, 1, 0]
        assert board.free_count == board.m - 2

    def test_double_claim_rejected_and_board_untouched(self):
        board = Board(4)
        board.claim(Player.MAKER, (0, 1))
        before = board.snapshot()
        with pytest.raises(EdgeAlreadyClaimed):
            board.claim(Player.BREAKER, (0, 1))
        assert board.snapshot() == before
        assert board.dB == [0, 0, 0, 0]

    @pytest.mark.parametrize("edge", [(1, 0), (0, 0), (0, 9), (-1, 2)])
    def test_malformed_edges_rejected(self, edge):
        with pytest.raises(InvalidParams):
            Board(5).claim(Player.MAKER, edge)

    def test_free_incident_edges_ascend_by_other_endpoint(self):
        board = Board(5)
        board.claim(Player.BREAKER, (2, 3))
        assert board.free_incident_edges(3) == [(0, 3), (1, 3), (3, 4)]
        assert board.lowest_free_incident_edge(3) == (0, 3)
        assert board.free_degree(3) == 3

    def test_lowest_free_incident_edge_none_when_saturated(self):
        board = Board(3)
        board.claim(Player.BREAKER, (0, 1))
        board.claim(Player.BREAKER, (0, 2))
        assert board.lowest_free_incident_edge(0) is None
        assert board.free_degree(0) == 0

    def test_lowest_free_edge_scans_lexicographically(self):
        board = Board(4)
        assert board.lowest_free_edge() == (0, 1)
        board.claim(Player.MAKER, (0, 1))
        board.claim(Player.BREAKER, (0, 2))
        assert board.lowest_free_edge() == (0, 3)

    def test_random_free_edge_is_free_and_seeded(self):
        board = Board(6)
        board.claim(Player.MAKER, (0, 1))
        picks = [board.random_free_edge(random.Random(9)) for _ in range(5)]
        assert picks == [board.random_free_edge(random.Random(9))
                         for _ in range(5)]
        assert all(board.is_free(e) for e in picks)

    def test_edges_of_sorted_by_owner(self):
        board = Board(5)
        for e in [(2, 4), (0, 3), (1, 2)]:
            board.claim(Player.MAKER, e)
        board.claim(Player.BREAKER, (0, 4))
        assert board.edges_of(Player.MAKER) == [(0, 3), (1, 2), (2, 4)]
        assert board.edges_of(Player.BREAKER) == [(0, 4)]

    def test_clone_is_independent(self):
        board = Board(5)
        board.claim(Player.MAKER, (0, 1))
        twin = board.clone()
        twin.claim(Player.BREAKER, (0, 2))
        assert board.is_free((0, 2))
        assert not twin.is_free((0, 2))
        assert board.free_count == twin.free_count + 1

    def test_exhaustion_bookkeeping(self):
        board = Board(3)
        board.claim(Player.MAKER, (0, 1))
        board.claim(Player.BREAKER, (0, 2))
        board.claim(Player.MAKER, (1, 2))
        assert board.free_count == 0
        assert board.free_edges() == []
        with pytest.raises(InvalidParams):
            board.random_free_edge(random.Random(0))

    def test_new_board_small_n_rejected(self):
        with pytest.raises(InvalidParams):
            new_board(2)


class TestEdgeListText:
    def test_round_trip(self):
        edges = [(0, 2), (1, 4), (0, 1)]
        text = edge_list_text(edges)
        assert text == "0 1\n0 2\n1 4\n"
        assert parse_edge_list(text) == sorted(edges)

    def test_comments_blanks_and_swapped_endpoints(self):
        text = "# header\n\n3 1\n"
        assert parse_edge_list(text) == [(1, 3)]

    @pytest.mark.parametrize("text", ["1 2 3\n", "5 5\n", "a b\n"])
    def test_bad_lines_rejected(self, text):
        with pytest.raises((InvalidParams, ValueError)):
            parse_edge_list(text)
