"""Line-removal and square-removal game tests at desk scale."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from impartial.engine import Outcome, Solver
from impartial.grids import (
    CellConfig,
    LineMove,
    SquareMove,
    StrategyError,
    TokenConfig,
    cross_config,
    diamond_config,
    diamond_moves,
    diamond_outcome_closed,
    diamond_reply,
    mirror_strategy,
    parse_points,
    ras_grundy_2xn,
    ras_moves,
    ras_p_positions,
    rect_cells,
    rect_config,
    render_points,
    symmetric_axis_free_configs,
    verify_diamond_strategy,
    verify_mirror_strategy,
)

TABLE_ROW_1 = [0, 2, 2, 1, 4, 3, 3, 1, 4, 2, 6, 5]


# --- Token configuration builders -------------------------------------------


def test_diamond_config_sizes():
    assert len(diamond_config(0).tokens) == 1
    assert len(diamond_config(1).tokens) == 5
    assert len(diamond_config(2).tokens) == 13
    for c in range(6):
        assert len(diamond_config(c).tokens) == 2 * c * c + 2 * c + 1
    # the widest row of the c=2 diamond holds 5 tokens
    assert len(diamond_config(2).row(0)) == 5


def test_cross_and_rect_builders():
    assert cross_config(3, 3).tokens == diamond_config(1).tokens
    assert len(rect_config(1, 5).tokens) == 5
    assert len({y for _, y in rect_config(1, 5).tokens}) == 1
    assert len(rect_config(2, 2).tokens) == 4
    with pytest.raises(ValueError):
        cross_config(0, 3)
    with pytest.raises(ValueError):
        rect_config(2, 0)


def test_diamond_moves_order_and_count():
    single = TokenConfig([(2, 5)])
    assert diamond_moves(single) == [LineMove("row", 5), LineMove("col", 2)]
    assert len(diamond_moves(rect_config(2, 2))) == 4
    assert len(diamond_moves(diamond_config(2))) == 10


def test_single_token_grundy_is_one():
    # one successor (empty board, value 0), so mex {0} = 1
    assert Solver().grundy(TokenConfig([(0, 0)])) == 1


# --- Closed forms vs the general solver --------------------------------------


def test_diamond_closed_form_examples():
    assert diamond_outcome_closed("diamond", 0) is Outcome.N
    assert diamond_outcome_closed("rect", 2, 2) is Outcome.P
    assert diamond_outcome_closed("cross", 2, 3) is Outcome.N


def test_diamond_closed_vs_solver():
    solver = Solver()
    for c in range(0, 3):
        assert solver.outcome(diamond_config(c)) is diamond_outcome_closed(
            "diamond", c
        ), c


def test_cross_closed_vs_solver():
    solver = Solver()
    for m in range(1, 5):
        for n in range(1, 5):
            assert solver.outcome(cross_config(m, n)) is diamond_outcome_closed(
                "cross", m, n
            ), (m, n)


def test_rect_closed_vs_solver():
    solver = Solver()
    for m in range(1, 5):
        for n in range(1, 5):
            assert solver.outcome(rect_config(m, n)) is diamond_outcome_closed(
                "rect", m, n
            ), (m, n)
    for n in range(1, 8):
        assert solver.outcome(rect_config(2, n)) is diamond_outcome_closed(
            "rect", 2, n
        ), n


def test_canonical_key_merges_relabelings():
    a = TokenConfig([(0, 0), (1, 1)])
    b = TokenConfig([(10, -3), (42, 7)])  # same two-row two-column pattern
    assert a.canonical_key() == b.canonical_key()
    c = TokenConfig([(0, 0), (1, 0)])  # one row, different game
    assert a.canonical_key() != c.canonical_key()


# --- Strategies ---------------------------------------------------------------


def test_mirror_strategy_reflects():
    pos = TokenConfig([(1, 2), (1, -2), (-1, 2), (-1, -2)])
    assert mirror_strategy(pos, LineMove("row", 2)) == LineMove("row", -2)
    assert mirror_strategy(pos, LineMove("col", -1)) == LineMove("col", 1)


def test_mirror_strategy_four_token_playout():
    pos = TokenConfig([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    reply = mirror_strategy(pos, LineMove("row", 1))
    assert reply == LineMove("row", -1)
    after = pos.apply(LineMove("row", 1)).apply(reply)
    assert after.is_terminal()


def test_mirror_strategy_preconditions():
    with pytest.raises(StrategyError):
        mirror_strategy(TokenConfig([(0, 1), (0, -1)]), LineMove("row", 1))
    with pytest.raises(StrategyError):
        mirror_strategy(TokenConfig([(1, 1), (1, -1)]), LineMove("row", 1))
    pos = TokenConfig([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    with pytest.raises(StrategyError):
        mirror_strategy(pos, LineMove("row", 3))


def test_mirror_strategy_never_loses_small():
    for config in symmetric_axis_free_configs(max_tokens=8, coord_bound=2):
        assert verify_mirror_strategy(config) is None, sorted(config.tokens)


def test_diamond_reply_takes_other_axis():
    pos = diamond_config(2).apply(LineMove("row", 0))
    assert diamond_reply(pos, LineMove("row", 0)) == LineMove("col", 0)


def test_diamond_reply_takes_single_line():
    pos = TokenConfig([(-1, 0), (0, 0), (1, 0)])
    assert diamond_reply(pos, LineMove("row", 1)) == LineMove("row", 0)


def test_diamond_reply_mirrors_off_axis_lines():
    pos = diamond_config(3).apply(LineMove("row", 1))
    assert diamond_reply(pos, LineMove("row", 1)) == LineMove("row", -1)


def test_diamond_strategy_wins_c1_and_c2():
    assert verify_diamond_strategy(1) is None
    assert verify_diamond_strategy(2) is None


def test_diamond_strategy_rejects_c0():
    with pytest.raises(ValueError):
        verify_diamond_strategy(0)


# --- Square removal -----------------------------------------------------------


def test_ras_moves_counts():
    assert len(ras_moves(rect_cells(3, 3))) == 14
    assert len(ras_moves(rect_cells(2, 3))) == 8
    assert len(ras_moves(CellConfig([(4, 4)]))) == 1


def test_ras_moves_order():
    moves = ras_moves(rect_cells(2, 2))
    assert moves == [
        SquareMove(0, 0, 1),
        SquareMove(0, 1, 1),
        SquareMove(1, 0, 1),
        SquareMove(1, 1, 1),
        SquareMove(0, 0, 2),
    ]


def test_ras_grundy_table_prefix():
    table = ras_grundy_2xn(15)
    assert table.values[0] == 0 and table.values[1] == 0
    assert table.values[1:13] == TABLE_ROW_1
    assert table[15] == 7


def test_ras_grundy_matches_general_solver():
    solver = Solver()
    table = ras_grundy_2xn(6)
    for n in range(0, 7):
        assert solver.grundy(rect_cells(2, n)) == table[n], n


def test_ras_p_positions():
    assert ras_p_positions(40) == [1, 13, 25, 37]


def test_two_by_two_grundy_is_two():
    assert Solver().grundy(rect_cells(2, 2)) == 2


def test_three_by_three_center_playout_runs_nine_moves():
    solver = Solver()
    start = rect_cells(3, 3)
    assert solver.outcome(start) is Outcome.N
    after_center = start.apply(SquareMove(1, 1, 1))
    assert all(move.k == 1 for move in ras_moves(after_center))
    assert len(solver.play_out(after_center)) == 8  # 9 moves in total


def test_two_by_three_square_first_playout_runs_three_moves():
    solver = Solver()
    start = rect_cells(2, 3)
    best = solver.best_move(start)
    assert best.k == 2
    after = start.apply(best)
    assert len(solver.play_out(after)) == 2  # 3 moves in total


def test_decomposition_matches_flat_solve():
    class FlatCellConfig(CellConfig):
        def components(self):
            return None

    solver = Solver()
    flat_solver = Solver()
    fragments = [
        rect_cells(2, 2).cells,
        rect_cells(1, 3).cells,
        rect_cells(2, 3).cells,
        {(0, 0), (1, 0), (1, 1)},
    ]
    for i, a in enumerate(fragments):
        for b in fragments[i:]:
            shifted = {(x + 100, y + 100) for x, y in b}
            combined = set(a) | shifted
            split = solver.grundy(CellConfig(combined))
            flat = flat_solver.grundy(FlatCellConfig(combined))
            parts = solver.grundy(CellConfig(a)) ^ solver.grundy(CellConfig(shifted))
            assert split == flat == parts


@settings(max_examples=60, deadline=None)
@given(
    st.sets(
        st.tuples(
            st.integers(min_value=0, max_value=5),
            st.integers(min_value=0, max_value=5),
        ),
        max_size=12,
    )
)
def test_no_two_by_two_means_parity_grundy(cells):
    config = CellConfig(cells)
    has_block = any(move.k >= 2 for move in ras_moves(config))
    if not has_block:
        assert Solver().grundy(config) == len(config.cells) % 2


def test_point_round_trip():
    points = [(0, 0), (2, -1), (-3, 4)]
    assert parse_points(render_points(points)) == sorted(points)
    with pytest.raises(ValueError):
        parse_points("1 2 3")
