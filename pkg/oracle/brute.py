"""Brute-force counts of nonattacking placements, straight from the attack rules."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import log2
from typing import Iterator, List, Tuple

from pieces.board import BoardSpec, is_stacking
from pieces.moveset import MoveSet
from utils.config import CFG
from utils.errors import InternalConsistencyError, OracleCapExceeded


@dataclass(frozen=True)
class LabelledConfiguration:
    """Columns 1..n of every piece slot, in board slot order."""

    columns: Tuple[int, ...]

    def by_row(self, board: BoardSpec) -> List[Tuple[int, ...]]:
        rows, start = [], 0
        for count in board.occupancy:
            rows.append(self.columns[start:start + count])
            start += count
        return rows


class _Search:
    """Depth-first placement, one slot at a time, pruning on the first attack."""

    def __init__(self, ms: MoveSet, board: BoardSpec, n: int, sorted_rows: bool):
        self.rows = [row for row, _ in board.slots()]
        self.moves = ms.moves_within(board.rows)
        self.unbounded = ms.horizontal_unbounded
        self.n = n
        self.sorted_rows = sorted_rows

    def safe(self, prefix: List[int], x: int) -> bool:
        row = self.rows[len(prefix)]
        for slot, placed in enumerate(prefix):
            rise = row - self.rows[slot]
            if rise == 0 and self.unbounded:
                return False
            if (x - placed, rise) in self.moves:
                return False
        return True

    def first_column(self, prefix: List[int]) -> int:
        depth = len(prefix)
        if self.sorted_rows and depth and self.rows[depth] == self.rows[depth - 1]:
            return prefix[-1]
        return 1

    def extend(self, prefix: List[int]) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == len(self.rows):
            yield tuple(prefix)
            return
        for x in range(self.first_column(prefix), self.n + 1):
            if self.safe(prefix, x):
                prefix.append(x)
                yield from self.extend(prefix)
                prefix.pop()

    def count_from(self, first: int) -> int:
        return sum(1 for _ in self.extend([first]))


def _check_cap(board: BoardSpec, n: int, force: bool, cap_bits: int) -> None:
    if n < 0:
        raise ValueError(f"board width must be nonnegative, got {n}")
    bits = board.q * log2(n + 1)
    if bits > cap_bits and not force:
        raise OracleCapExceeded(
            f"{board.q} pieces on {n} columns is 2^{bits:.1f} placements, above the 2^{cap_bits} cap"
        )


def labelled_configurations(ms: MoveSet, board: BoardSpec, n: int) -> Iterator[LabelledConfiguration]:
    for columns in _Search(ms, board, n, sorted_rows=False).extend([]):
        yield LabelledConfiguration(columns)


def _count(ms: MoveSet, board: BoardSpec, n: int, sorted_rows: bool, workers: int) -> int:
    search = _Search(ms, board, n, sorted_rows)
    if workers <= 1 or board.q == 0 or n == 0:
        return sum(1 for _ in search.extend([]))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(search.count_from, range(1, n + 1)))


def brute_labelled_count(
    ms: MoveSet,
    board: BoardSpec,
    n: int,
    force: bool = False,
    workers: int = 1,
    cap_bits: int = CFG.oracle_cap_bits,
) -> int:
    _check_cap(board, n, force, cap_bits)
    total = _count(ms, board, n, sorted_rows=False, workers=workers)
    logging.debug(f"oracle: {total} labelled placements of {ms.name} at n={n}")
    return total


def brute_count(
    ms: MoveSet,
    board: BoardSpec,
    n: int,
    force: bool = False,
    workers: int = 1,
    cap_bits: int = CFG.oracle_cap_bits,
) -> int:
    """Configurations of identical pieces.

    When pieces of a row may share a square, placements with weakly
    increasing columns per row are counted directly.
    """
    if is_stacking(ms, board):
        _check_cap(board, n, force, cap_bits)
        return _count(ms, board, n, sorted_rows=True, workers=workers)
    labelled = brute_labelled_count(ms, board, n, force, workers, cap_bits)
    if labelled % board.divisor:
        raise InternalConsistencyError(
            f"{labelled} labelled placements do not split into groups of {board.divisor}"
        )
    return labelled // board.divisor
