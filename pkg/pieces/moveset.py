"""Attack move sets of chess and fairy pieces, and the piece-definition file format.

A move (dx, dy) means a piece on (column x, row y) attacks (x + dx, y + dy).
Line pieces keep their moves as generators, expanded to every positive
multiple that fits on the board.
"""
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import FrozenSet, List, Optional, Tuple, Union

from utils.config import CFG
from utils.errors import PieceDefinitionError

Move = Tuple[int, int]

DEFS_DIR = Path(__file__).resolve().parent / "defs"


@dataclass(frozen=True)
class MoveSet:
    name: str
    vectors: FrozenSet[Move] = field(default_factory=frozenset)
    generators: FrozenSet[Move] = field(default_factory=frozenset)
    horizontal_unbounded: bool = False
    slope: Optional[int] = None

    def __post_init__(self):
        vectors = frozenset(self.vectors)
        if self.horizontal_unbounded:
            # the whole row is attacked, explicit horizontal moves add nothing
            vectors = frozenset(v for v in vectors if v[1] != 0)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "generators", frozenset(self.generators))
        for dx, dy in self.generators:
            if dy == 0:
                raise PieceDefinitionError(
                    f"{self.name}: generator ({dx}, {dy}) is horizontal, use unbounded horizontal moves"
                )

    @property
    def has_origin(self) -> bool:
        """True when two pieces of one row can never share a square."""
        return self.horizontal_unbounded or (0, 0) in self.vectors

    def moves_within(self, rows: int) -> FrozenSet[Move]:
        """All explicit and generated moves with |dy| < rows."""
        moves = {v for v in self.vectors if abs(v[1]) < rows}
        for dx, dy in self.generators:
            multiple = 1
            while abs(multiple * dy) < rows:
                moves.add((multiple * dx, multiple * dy))
                multiple += 1
        return frozenset(moves)

    def horizontal_moves(self) -> FrozenSet[int]:
        return frozenset(dx for dx, dy in self.vectors if dy == 0)

    def is_symmetric(self) -> bool:
        return all((-dx, -dy) in self.vectors for dx, dy in self.vectors) and all(
            (-dx, -dy) in self.generators for dx, dy in self.generators
        )

    def __str__(self) -> str:
        return self.name


def symmetric_closure(ms: MoveSet) -> MoveSet:
    return replace(
        ms,
        vectors=ms.vectors | {(-dx, -dy) for dx, dy in ms.vectors},
        generators=ms.generators | {(-dx, -dy) for dx, dy in ms.generators},
    )


def union(name: str, *parts: MoveSet, slope: Optional[int] = None) -> MoveSet:
    return MoveSet(
        name=name,
        vectors=frozenset().union(*(p.vectors for p in parts)),
        generators=frozenset().union(*(p.generators for p in parts)),
        horizontal_unbounded=any(p.horizontal_unbounded for p in parts),
        slope=slope,
    )


def _signs(dx: int, dy: int) -> FrozenSet[Move]:
    return frozenset((sx * dx, sy * dy) for sx in (1, -1) for sy in (1, -1))


def builtin(name: str) -> MoveSet:
    if name == "rook":
        return MoveSet("rook", generators=frozenset({(0, 1), (0, -1)}), horizontal_unbounded=True)
    if name == "bishop":
        return MoveSet("bishop", generators=_signs(1, 1), slope=1)
    if name == "queen":
        return union("queen", builtin("rook"), builtin("bishop"), slope=1)
    if name == "knight":
        return MoveSet("knight", vectors=_signs(1, 2) | _signs(2, 1))
    if name == "nightrider":
        return MoveSet("nightrider", generators=_signs(1, 2) | _signs(2, 1), slope=2)
    raise PieceDefinitionError(f"unknown piece {name!r}, built-ins are {', '.join(CFG.builtin_pieces)}")


_SINGLE_KEYS = ("name", "symmetric", "horizontal", "slope")
_REPEATED_KEYS = ("move", "generator")


def _parse_pair(value: str, line: int) -> Move:
    parts = value.split()
    if len(parts) != 2:
        raise PieceDefinitionError(f"expected '<dx> <dy>', got {value!r}", line)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise PieceDefinitionError(f"non-integer displacement in {value!r}", line) from None


def parse_piece(text: str) -> MoveSet:
    """Read a piece definition.

    One ``key: value`` per line; ``#`` starts a comment. Keys: name, move,
    generator, symmetric (true|false), horizontal (none|unbounded), slope.
    """
    single = {}
    vectors, generators = set(), set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PieceDefinitionError(f"expected 'key: value', got {raw.strip()!r}", number)
        key, value = (part.strip() for part in line.split(":", 1))

        if key in _REPEATED_KEYS:
            pair = _parse_pair(value, number)
            if key == "generator":
                if pair[1] == 0:
                    raise PieceDefinitionError("generator needs a vertical component", number)
                generators.add(pair)
            else:
                vectors.add(pair)
        elif key in _SINGLE_KEYS:
            if key in single:
                raise PieceDefinitionError(f"duplicate key {key!r}", number)
            single[key] = (value, number)
        else:
            raise PieceDefinitionError(f"unknown key {key!r}", number)

    if "name" not in single or not single["name"][0]:
        raise PieceDefinitionError("piece definition has no name")

    symmetric, line = single.get("symmetric", ("true", None))
    if symmetric not in ("true", "false"):
        raise PieceDefinitionError(f"symmetric must be true or false, got {symmetric!r}", line)
    horizontal, line = single.get("horizontal", ("none", None))
    if horizontal not in ("none", "unbounded"):
        raise PieceDefinitionError(f"horizontal must be none or unbounded, got {horizontal!r}", line)
    slope = None
    if "slope" in single:
        value, line = single["slope"]
        if not value.isdigit() or int(value) <= 0:
            raise PieceDefinitionError(f"slope must be a positive integer, got {value!r}", line)
        slope = int(value)

    ms = MoveSet(
        name=single["name"][0],
        vectors=frozenset(vectors),
        generators=frozenset(generators),
        horizontal_unbounded=horizontal == "unbounded",
        slope=slope,
    )
    if symmetric == "true":
        ms = symmetric_closure(ms)
    elif not ms.is_symmetric():
        raise PieceDefinitionError(f"{ms.name}: move set is not centrally symmetric")
    logging.debug(
        f"parsed piece {ms.name}: {len(ms.vectors)} moves, {len(ms.generators)} generators"
    )
    return ms


def load_piece(spec: Union[str, Path]) -> MoveSet:
    """A built-in name, a bundled definition name, or a path to a piece file."""
    spec = str(spec)
    if spec in CFG.builtin_pieces:
        return builtin(spec)
    path = Path(spec)
    if not path.is_file():
        bundled = DEFS_DIR / f"{spec}{CFG.piece_suffix}"
        if not bundled.is_file():
            raise PieceDefinitionError(f"no built-in piece or piece file named {spec!r}")
        path = bundled
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise PieceDefinitionError(f"cannot read {path}: {exc}") from exc
    return parse_piece(text)


def list_pieces() -> List[MoveSet]:
    pieces = [builtin(name) for name in CFG.builtin_pieces]
    for path in sorted(DEFS_DIR.glob(f"*{CFG.piece_suffix}")):
        pieces.append(load_piece(path))
    return pieces
