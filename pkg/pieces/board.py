"""Board specifications and the gain graph of a piece on an m-row strip."""
import logging
from dataclasses import dataclass
from math import factorial, prod
from typing import List, Optional, Sequence, Tuple

from core.chromatic import ChromaticEngine, integral_chromatic
from core.gaingraph import GainGraph, new_graph
from core.pluspoly import ZERO, PluspartExpression, evaluate
from pieces.moveset import MoveSet
from utils.errors import IdenticallyZeroCount, InternalConsistencyError, UnlabelledCountError


@dataclass(frozen=True)
class BoardSpec:
    rows: int
    occupancy: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1:
            raise ValueError(f"a board needs at least one row, got {self.rows}")
        occupancy = tuple(self.occupancy)
        if len(occupancy) != self.rows:
            raise ValueError(f"occupancy {list(occupancy)} does not match {self.rows} rows")
        if any(q < 0 for q in occupancy):
            raise ValueError(f"occupancy must be nonnegative, got {list(occupancy)}")
        object.__setattr__(self, "occupancy", occupancy)

    @classmethod
    def one_per_row(cls, rows: int) -> "BoardSpec":
        return cls(rows, (1,) * rows)

    @classmethod
    def from_args(cls, rows: int, occupancy: Optional[Sequence[int]] = None) -> "BoardSpec":
        return cls.one_per_row(rows) if occupancy is None else cls(rows, tuple(occupancy))

    @property
    def q(self) -> int:
        return sum(self.occupancy)

    @property
    def divisor(self) -> int:
        return prod(factorial(q) for q in self.occupancy)

    def slots(self) -> List[Tuple[int, int]]:
        """(row, slot) pairs in vertex order, rows from 0."""
        return [(row, slot) for row, count in enumerate(self.occupancy) for slot in range(count)]


def check_board(ms: MoveSet, board: BoardSpec) -> None:
    crowded = [row for row, q in enumerate(board.occupancy) if q > 1]
    if ms.horizontal_unbounded and crowded:
        raise IdenticallyZeroCount(
            f"{ms.name} attacks whole rows, so row {crowded[0] + 1} cannot hold "
            f"{board.occupancy[crowded[0]]} pieces"
        )


def build_gain_graph(ms: MoveSet, board: BoardSpec) -> GainGraph:
    """One vertex per piece, one edge x_b != x_a + dx per move reaching b from a."""
    check_board(ms, board)
    moves = ms.moves_within(board.rows)
    slots = board.slots()

    edges = []
    for a, (row_a, _) in enumerate(slots):
        for b in range(a + 1, len(slots)):
            rise = slots[b][0] - row_a
            gains = sorted({dx for dx, dy in moves if dy == rise})
            edges.extend((a, b, gain) for gain in gains)

    g = new_graph([0] * len(slots), edges)
    logging.info(f"{ms.name} on {board.rows} rows {list(board.occupancy)}: {g.vertex_count} vertices, {g.edge_count} edges")
    return g


@dataclass(frozen=True)
class CountFormula:
    """Labelled count lambda(n) and the number of labellings per configuration.

    ``stacking`` marks boards where pieces of one row may share a square; the
    labelled count is then not a multiple of the configuration count.
    """

    labelled: PluspartExpression
    divisor: int
    stacking: bool = False

    def count(self, n: int) -> int:
        if self.stacking:
            raise UnlabelledCountError(
                "pieces in one row may share a square, the labelled count does not divide into configurations"
            )
        value = evaluate(self.labelled, n)
        if value % self.divisor:
            raise InternalConsistencyError(f"labelled count {value} at n={n} is not divisible by {self.divisor}")
        return value // self.divisor


def is_stacking(ms: MoveSet, board: BoardSpec) -> bool:
    return not ms.has_origin and any(q > 1 for q in board.occupancy)


def count_formula(ms: MoveSet, board: BoardSpec, engine: Optional[ChromaticEngine] = None) -> CountFormula:
    labelled = integral_chromatic(build_gain_graph(ms, board), engine)
    return CountFormula(labelled, board.divisor, is_stacking(ms, board))


def zero_formula(board: BoardSpec) -> CountFormula:
    return CountFormula(ZERO, board.divisor)
