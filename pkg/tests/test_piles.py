"""Pile-game rules, closed forms, and scaled-down oracle checks.

Full-size closed-form-vs-oracle sweeps live in test_acceptance.py;
these tests pin the documented examples and run the same checks at
desk scale.
"""

import pytest

from impartial.engine import Outcome, Solver
from impartial.piles import (
    ChocolatePosition,
    DemonPosition,
    NoFactorPosition,
    SfpPosition,
    bertrand_holds_through,
    chocolate_moves,
    chocolate_outcome_closed,
    chocolate_value,
    demon_interval,
    demon_move_count,
    demon_moves,
    demon_outcome_closed,
    nofactor_moves,
    nofactor_outcome,
    nofactor_outcome_closed,
    nofactor_removable,
    sfp_classify_range,
    sfp_moves,
    sieve,
)


# --- Chocolate Stones -------------------------------------------------------


def test_chocolate_moves_examples():
    assert chocolate_moves(ChocolatePosition(2, 5)) == [1, 2]
    assert chocolate_moves(ChocolatePosition(2, 4)) == [2]
    assert chocolate_moves(ChocolatePosition(3, 2)) == [2]  # capped at n


def test_chocolate_moves_nonempty_for_positive_piles():
    for m in range(1, 8):
        for n in range(1, 100):
            moves = chocolate_moves(ChocolatePosition(m, n))
            assert moves
            assert all(1 <= t <= n for t in moves)


def test_chocolate_value_examples():
    assert chocolate_value(0, 7) == 0
    assert chocolate_value(5, 2) == 3
    assert chocolate_value(6, 3) == 2


def test_chocolate_outcome_examples():
    assert chocolate_outcome_closed(0, 5) is Outcome.P
    assert chocolate_outcome_closed(3, 2) is Outcome.P
    assert chocolate_outcome_closed(7, 3) is Outcome.N


def test_chocolate_closed_form_matches_search_oracle():
    solver = Solver()
    for m in range(1, 6):
        for n in range(0, 300):
            assert chocolate_outcome_closed(n, m) is solver.outcome(
                ChocolatePosition(m, n)
            ), (m, n)


def test_chocolate_value_drops_by_one_per_move():
    for m in range(1, 7):
        for n in range(1, 500):
            value = chocolate_value(n, m)
            for t in chocolate_moves(ChocolatePosition(m, n)):
                assert chocolate_value(n - t, m) == value - 1, (m, n, t)


def test_chocolate_forced_line():
    # m=2, N=4: single legal move chain, second player makes the last move.
    solver = Solver()
    assert solver.best_move(ChocolatePosition(2, 4)) == 2
    assert len(solver.play_out(ChocolatePosition(2, 4))) == 2


# --- Demon Money ------------------------------------------------------------


def test_demon_moves_examples():
    assert demon_moves(DemonPosition(9)) == [3]
    assert demon_moves(DemonPosition(5)) == [2, 3]
    assert demon_moves(DemonPosition(1)) == [1]


def test_demon_outcome_examples():
    assert demon_outcome_closed(0) is Outcome.P
    for n in (1, 2, 5, 6, 7, 11):
        assert demon_outcome_closed(n) is Outcome.N, n
    for n in (3, 4, 8, 9, 10):
        assert demon_outcome_closed(n) is Outcome.P, n


def test_demon_intervals_tile_the_integers():
    # consecutive intervals must chain without gaps or overlaps
    for k in range(1, 200):
        assert demon_interval(k * k - 1) == (k, "P")
        assert demon_interval(k * k + k - 2) == (k, "P")
        assert demon_interval(k * k + k - 1) == (k, "N")
        assert demon_interval((k + 1) * (k + 1) - 2) == (k, "N")
    for n in range(0, 5000):
        demon_interval(n)  # raises if the scan misses


def test_demon_closed_form_matches_search_oracle():
    solver = Solver()
    for n in range(0, 3000):
        assert demon_outcome_closed(n) is solver.outcome(DemonPosition(n)), n


def test_demon_best_move_from_five():
    assert Solver().best_move(DemonPosition(5)) == 2


def test_demon_move_count_examples():
    assert demon_move_count(0) == 0
    assert demon_move_count(1) == 1
    assert demon_move_count(8) == 4


def test_demon_move_count_matches_optimal_playout():
    solver = Solver()
    for n in range(0, 500):
        assert len(solver.play_out(DemonPosition(n))) == demon_move_count(n), n


def exhaustive_demon_lengths(n, solver, memo):
    """All playout lengths from n when the winning side plays to P."""
    if n in memo:
        return memo[n]
    if n == 0:
        memo[n] = {0}
        return memo[n]
    takes = demon_moves(DemonPosition(n))
    if demon_outcome_closed(n) is Outcome.N:
        takes = [t for t in takes if demon_outcome_closed(n - t) is Outcome.P]
    lengths = set()
    for t in takes:
        lengths |= {1 + l for l in exhaustive_demon_lengths(n - t, solver, memo)}
    memo[n] = lengths
    return lengths


def test_demon_length_fixed_even_when_loser_deviates():
    solver = Solver()
    memo = {}
    for n in range(0, 300):
        lengths = exhaustive_demon_lengths(n, solver, memo)
        assert lengths == {demon_move_count(n)}, (n, lengths)


# --- Sum-from-Product -------------------------------------------------------


def test_sfp_moves_examples():
    assert sfp_moves(SfpPosition(4)) == []
    assert sfp_moves(SfpPosition(6)) == [1]
    assert sfp_moves(SfpPosition(13)) == []


def test_sfp_successor_takes():
    # n=12: 2*6 -> 4, 3*4 -> 5 ; 1*12 rejected (negative result)
    assert sfp_moves(SfpPosition(12)) == [4, 5]
    assert [(take, child.n) for take, child in SfpPosition(12).successors()] == [
        (8, 4),
        (7, 5),
    ]


def test_sfp_classify_range_matches_printed_lists():
    p_list, n_list = sfp_classify_range(30)
    assert p_list == [1, 2, 3, 4, 5, 7, 11, 13, 16, 17, 19, 22, 23, 25, 27, 29]
    assert n_list == [6, 8, 9, 10, 12, 14, 15, 18, 20, 21, 24, 26, 28, 30]


def test_sfp_classify_range_limit_one():
    assert sfp_classify_range(1) == ([1], [])


def test_sfp_terminals_are_one_four_and_primes():
    limit = 10_000
    primes = sieve(limit)
    for n in range(1, limit + 1):
        terminal = SfpPosition(n).is_terminal()
        assert terminal == (n in (1, 4) or bool(primes[n])), n


# --- No-Factor --------------------------------------------------------------


def test_nofactor_removable_examples():
    assert nofactor_removable(NoFactorPosition(6)) == {1}
    pos = NoFactorPosition(4, mask=(1 << 1) | (1 << 3))  # {2, 4}
    assert nofactor_removable(pos) == {2}
    pos = NoFactorPosition(9, mask=(1 << 3) | (1 << 8))  # {4, 9}
    assert nofactor_removable(pos) == {4, 9}


def test_nofactor_moves_examples():
    assert len(nofactor_moves(NoFactorPosition(6))) == 1  # only {1}
    pos = NoFactorPosition(9, mask=(1 << 3) | (1 << 8))  # {4, 9}
    moves = nofactor_moves(pos)
    assert [m for m, _ in moves] == [(4,), (9,), (4, 9)]
    full2 = NoFactorPosition(2)
    moves = nofactor_moves(full2)
    assert len(moves) == 1
    assert moves[0][0] == (1,)
    assert moves[0][1].remaining == {2}


def test_nofactor_first_move_is_always_one():
    for n in range(1, 13):
        moves = nofactor_moves(NoFactorPosition(n))
        assert [m for m, _ in moves] == [(1,)], n


def test_nofactor_outcomes():
    solver = Solver()
    assert nofactor_outcome(1, solver) is Outcome.N
    assert nofactor_outcome(2, solver) is Outcome.P
    assert nofactor_outcome(6, solver) is Outcome.P
    assert nofactor_outcome(0, solver) is Outcome.P
    for n in range(0, 10):
        assert nofactor_outcome(n, solver) is nofactor_outcome_closed(n), n


def test_nofactor_rejects_negative():
    with pytest.raises(ValueError):
        NoFactorPosition(-1)


# --- Prime support ----------------------------------------------------------


def test_bertrand_support():
    assert bertrand_holds_through(1_000_000)


def test_sieve_small():
    flags = sieve(30)
    assert [n for n in range(31) if flags[n]] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
