"""Closed-form facts about the counting polynomial read off from the move set."""
from fractions import Fraction
from math import comb
from typing import Optional, Union

import numpy as np

from core.pluspoly import DensePolynomial
from pieces.board import BoardSpec, check_board
from pieces.moveset import MoveSet


def attack_counts(ms: MoveSet, board: BoardSpec) -> np.ndarray:
    """a[i, j] for rows i < j: squares of row j attacked from one square of row i.

    Counted on an unlimited board, so every distinct dx counts once.
    """
    m = board.rows
    moves = ms.moves_within(m)
    a = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            a[i, j] = len({dx for dx, dy in moves if dy == j - i})
    return a


def _check_second_coefficient(ms: MoveSet, board: BoardSpec) -> None:
    check_board(ms, board)
    if any(q > 1 for q in board.occupancy) and not ms.has_origin:
        raise ValueError(
            f"{ms.name} lacks the (0, 0) move; the second coefficient needs at most one piece per row"
        )


def second_coefficient(ms: MoveSet, board: BoardSpec) -> int:
    """c1, minus the coefficient of n^(q-1) in the labelled eventual polynomial.

    Each pair in one row counts once per horizontal move (only (0, 0) for
    most pieces), each pair across rows i < j counts a[i, j].
    """
    _check_second_coefficient(ms, board)
    q = np.array(board.occupancy, dtype=np.int64)
    a = attack_counts(ms, board)
    same_row = sum(comb(int(qi), 2) for qi in q) * len(ms.horizontal_moves())
    return int(same_row + q @ a @ q)


def asymptotic_probability(ms: MoveSet, board: BoardSpec, distinct_positions: bool = False) -> int:
    """K with P(nonattacking) ~ 1 - K/n for a random placement.

    One piece per row gives K = c1. With ``distinct_positions`` the pieces of
    each row are placed on distinct squares and only cross-row attacks count.
    """
    if not distinct_positions:
        return second_coefficient(ms, board)
    _check_second_coefficient(ms, board)
    q = np.array(board.occupancy, dtype=np.int64)
    return int(q @ attack_counts(ms, board) @ q)


def sufficient_width_bound(ms: MoveSet, board: BoardSpec) -> int:
    """(q - 1) * max |dx| over moves with 0 <= dy < m.

    Horizontal moves are left out when they are unbounded or no row holds
    two pieces.
    """
    low = 1 if ms.horizontal_unbounded or all(q <= 1 for q in board.occupancy) else 0
    widths = [abs(dx) for dx, dy in ms.moves_within(board.rows) if low <= dy < board.rows]
    return max(board.q - 1, 0) * max(widths, default=0)


def _path_steps(m: int) -> int:
    return max(0, (m * m - 2) // 2)


def slope_threshold(b: int, m: int) -> int:
    """b * floor((m^2 - 2) / 2), the exact threshold for slope-b line pieces."""
    return b * _path_steps(m)


def improved_bound(alpha_inverse: Union[int, Fraction], m: int) -> Fraction:
    alpha_inverse = Fraction(alpha_inverse)
    if alpha_inverse <= 0:
        raise ValueError(f"alpha must be positive, got 1/{alpha_inverse}")
    return alpha_inverse * _path_steps(m)


# Published nightrider eventual polynomials, one piece per row, lowest degree
# first. From three rows on they disagree with brute-force counts.
PUBLISHED_NIGHTRIDER = {
    3: (-56, 34, -8, 1),
    4: (1016, -566, 132, -16, 1),
    5: (-25676, 13600, -3100, 390, -28, 1),
    6: (730408, -374678, 84720, -10974, 876, -42, 1),
}


def published_divergence(ms: MoveSet, board: BoardSpec, eventual: DensePolynomial) -> Optional[str]:
    """A note when the eventual polynomial differs from the published nightrider table."""
    if ms.name != "nightrider" or any(q != 1 for q in board.occupancy):
        return None
    published = PUBLISHED_NIGHTRIDER.get(board.rows)
    if published is None or eventual.coefficients == published:
        return None
    return f"differs from the published nightrider table, which gives {DensePolynomial(published).format()}"
