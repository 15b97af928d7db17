"""Command-line frontend: formulas, counts, generating functions, checks and bounds.

    python -m script.nonattack formula --piece queen --rows 3
    python -m script.nonattack count --piece knight --rows 2 --cols 3
    python -m script.nonattack verify --piece pieces/defs/amazon.piece --rows 3 --max-cols 6
"""
import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

from tqdm import tqdm

from core.chromatic import ChromaticEngine
from core.gaingraph import max_path_gain
from core.genfunc import RationalCountSeries, divide_exact, expression_gf, format_gf, series
from core.pluspoly import eventual_polynomial, format_expression, polynomial_threshold, to_json
from oracle.brute import brute_count, brute_labelled_count
from pieces.board import BoardSpec, CountFormula, build_gain_graph, count_formula, zero_formula
from pieces.formulas import (
    asymptotic_probability,
    published_divergence,
    second_coefficient,
    slope_threshold,
    sufficient_width_bound,
)
from pieces.moveset import MoveSet, list_pieces, load_piece
from utils.config import CFG
from utils.errors import IdenticallyZeroCount, NonattackError, UnlabelledCountError
from utils.logger import setup_logging

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


@dataclass
class OutputReport:
    piece: str
    rows: int
    occupancy: List[int]
    formula: Optional[str] = None
    terms: Optional[List[dict]] = None
    divisor: Optional[int] = None
    stacking: Optional[bool] = None
    eventual: Optional[List[int]] = None
    eventual_text: Optional[str] = None
    threshold: Optional[int] = None
    c1: Optional[int] = None
    probability_constant: Optional[int] = None
    cols: Optional[int] = None
    count: Optional[int] = None
    gf_numerator: Optional[List[int]] = None
    gf_denominator_exponent: Optional[int] = None
    gf_text: Optional[str] = None
    sufficient_bound: Optional[int] = None
    max_path_gain: Optional[int] = None
    slope_threshold: Optional[int] = None
    max_cols: Optional[int] = None
    mismatches: Optional[List[dict]] = None
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {key: value for key, value in asdict(self).items() if value is not None and not (key == "notes" and not value)}

    def to_text(self) -> str:
        data = self.to_json()
        lines = [f"piece: {self.piece}", f"rows: {self.rows}", f"occupancy: {','.join(map(str, self.occupancy))}"]
        labels = [
            ("formula", "labelled count"),
            ("divisor", "divisor"),
            ("eventual_text", "eventual polynomial"),
            ("threshold", "polynomial for n >="),
            ("c1", "second coefficient c1"),
            ("probability_constant", "P(nonattacking) ~ 1 - K/n, K"),
            ("count", f"count at n={self.cols}"),
            ("gf_text", "generating function"),
            ("sufficient_bound", "sufficient width bound"),
            ("max_path_gain", "max path gain"),
            ("slope_threshold", "slope formula threshold"),
        ]
        for key, label in labels:
            if key in data:
                lines.append(f"{label}: {data[key]}")
        if self.max_cols is not None:
            status = "all agree" if not self.mismatches else f"{len(self.mismatches)} mismatches"
            lines.append(f"verified n = 0..{self.max_cols}: {status}")
            for row in self.mismatches or []:
                lines.append(f"  n={row['n']}: symbolic {row['symbolic']}, oracle {row['oracle']}, series {row['series']}")
        lines.extend(f"note: {note}" for note in self.notes)
        return "\n".join(lines)


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def occupancy_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"occupancy must look like 1,1,2, got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"occupancy must be nonnegative, got {text!r}")
    return values


def nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def positive_int(text: str) -> int:
    value = nonnegative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return value


def build_parser() -> ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=CFG.output_format, help="Output format")
    common.add_argument("--verbose", action="store_true", help="Log progress at INFO level")
    common.add_argument("--debug", action="store_true", help="Log recursion details at DEBUG level")
    common.add_argument("--log-file", type=str, default=CFG.log_file, help="Also write the log to this file")

    board = argparse.ArgumentParser(add_help=False)
    board.add_argument("--piece", type=str, required=True, help="Built-in name or path to a .piece file")
    board.add_argument("--rows", type=positive_int, required=True, help="Board height m")
    board.add_argument("--occupancy", type=occupancy_list, default=None, help="Pieces per row, e.g. 1,1,2 (default all 1)")
    board.add_argument("--parallel", action="store_true", help="Run deletion-contraction branches on a thread pool")
    board.add_argument("--force", action="store_true", help=f"Allow more than {CFG.max_rows} rows and large oracle runs")

    parser = ArgumentParser(description="Nonattacking chess pieces on boards of fixed height")
    commands = parser.add_subparsers(dest="command", required=True)

    formula = commands.add_parser("formula", parents=[common, board], help="Piecewise formula and eventual polynomial")
    formula.set_defaults(handler=cmd_formula)

    count = commands.add_parser("count", parents=[common, board], help="Exact count at one board width")
    count.add_argument("--cols", type=nonnegative_int, required=True, help="Board width n")
    count.set_defaults(handler=cmd_count)

    gf = commands.add_parser("gf", parents=[common, board], help="Generating function over (1-t)^(q+1)")
    gf.set_defaults(handler=cmd_gf)

    verify = commands.add_parser("verify", parents=[common, board], help="Compare formula, brute force and series")
    verify.add_argument("--max-cols", type=nonnegative_int, default=CFG.verify_max_cols, help="Largest width to check")
    verify.set_defaults(handler=cmd_verify)

    bound = commands.add_parser("bound", parents=[common, board], help="Width bounds for polynomiality")
    bound.set_defaults(handler=cmd_bound)

    listing = commands.add_parser("pieces-list", parents=[common], help="Built-in and bundled pieces")
    listing.set_defaults(handler=cmd_pieces_list)
    return parser


def _board(args) -> BoardSpec:
    if args.rows > CFG.max_rows and not args.force:
        raise ValueError(f"{args.rows} rows is above the limit of {CFG.max_rows}; pass --force to run anyway")
    return BoardSpec.from_args(args.rows, args.occupancy)


def _setup(args):
    ms = load_piece(args.piece)
    board = _board(args)
    report = OutputReport(piece=ms.name, rows=board.rows, occupancy=list(board.occupancy))
    return ms, board, report


def _formula(ms: MoveSet, board: BoardSpec, args, report: OutputReport) -> CountFormula:
    try:
        return count_formula(ms, board, ChromaticEngine(parallel=args.parallel))
    except IdenticallyZeroCount as exc:
        logging.warning(f"{exc}")
        report.notes.append(f"identically zero: {exc}")
        return zero_formula(board)


def _unlabelled_gf(formula: CountFormula, board: BoardSpec) -> RationalCountSeries:
    return divide_exact(expression_gf(formula.labelled, board.q), formula.divisor)


def _note_divergence(ms: MoveSet, board: BoardSpec, formula: CountFormula, report: OutputReport) -> None:
    note = published_divergence(ms, board, eventual_polynomial(formula.labelled))
    if note:
        logging.warning(f"{ms.name} on {board.rows} rows: {note}")
        report.notes.append(note)


def _emit(report: OutputReport, args) -> None:
    if args.format == "json":
        print(json.dumps(report.to_json(), sort_keys=True, indent=2))
    else:
        print(report.to_text())


def cmd_formula(args) -> int:
    ms, board, report = _setup(args)
    formula = _formula(ms, board, args, report)
    poly = eventual_polynomial(formula.labelled)
    report.formula = format_expression(formula.labelled)
    report.terms = to_json(formula.labelled)["terms"]
    report.divisor = formula.divisor
    report.stacking = formula.stacking
    report.eventual = list(poly.coefficients)
    report.eventual_text = poly.format()
    report.threshold = polynomial_threshold(formula.labelled)
    if formula.stacking:
        report.notes.append("pieces in one row may share a square; the labelled count is not divided")
    _note_divergence(ms, board, formula, report)
    try:
        report.c1 = second_coefficient(ms, board)
        report.probability_constant = asymptotic_probability(ms, board, distinct_positions=any(q > 1 for q in board.occupancy))
    except (ValueError, IdenticallyZeroCount) as exc:
        logging.info(f"no second coefficient: {exc}")
    _emit(report, args)
    return EXIT_OK


def cmd_count(args) -> int:
    ms, board, report = _setup(args)
    formula = _formula(ms, board, args, report)
    report.cols = args.cols
    report.count = formula.count(args.cols)
    if args.format == "json":
        _emit(report, args)
    else:
        print(report.count)
    return EXIT_OK


def cmd_gf(args) -> int:
    ms, board, report = _setup(args)
    formula = _formula(ms, board, args, report)
    if formula.stacking:
        raise UnlabelledCountError("pieces in one row may share a square, there is no unlabelled generating function")
    gf = _unlabelled_gf(formula, board)
    report.gf_numerator = list(gf.numerator.coefficients)
    report.gf_denominator_exponent = gf.denominator_exponent
    report.gf_text = format_gf(gf)
    _emit(report, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    ms, board, report = _setup(args)
    formula = _formula(ms, board, args, report)
    labelled_only = formula.stacking
    if labelled_only:
        report.notes.append("pieces in one row may share a square; labelled counts are compared")
        gf = expression_gf(formula.labelled, board.q)
    else:
        gf = _unlabelled_gf(formula, board)

    expansion = series(gf, args.max_cols + 1)
    mismatches = []
    for n in tqdm(range(args.max_cols + 1), desc=f"verify {ms.name}", disable=args.format == "json"):
        if labelled_only:
            symbolic = formula.labelled(n)
            oracle = brute_labelled_count(ms, board, n, force=args.force)
        else:
            symbolic = formula.count(n)
            oracle = brute_count(ms, board, n, force=args.force)
        if not symbolic == oracle == expansion[n]:
            mismatches.append({"n": n, "symbolic": symbolic, "oracle": oracle, "series": expansion[n]})

    report.max_cols = args.max_cols
    report.mismatches = mismatches
    logging.info(f"verified {ms.name} on {board.rows} rows up to n={args.max_cols}: {len(mismatches)} mismatches")
    _emit(report, args)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_bound(args) -> int:
    ms, board, report = _setup(args)
    formula = _formula(ms, board, args, report)
    report.sufficient_bound = sufficient_width_bound(ms, board)
    if board.q and not formula.labelled.is_zero():
        report.max_path_gain = max_path_gain(build_gain_graph(ms, board))
    report.threshold = polynomial_threshold(formula.labelled)
    if ms.slope is not None:
        report.slope_threshold = slope_threshold(ms.slope, board.rows)
    _note_divergence(ms, board, formula, report)
    _emit(report, args)
    return EXIT_OK


def cmd_pieces_list(args) -> int:
    pieces = [{"name": ms.name, **({"slope": ms.slope} if ms.slope else {})} for ms in list_pieces()]
    if args.format == "json":
        print(json.dumps({"pieces": pieces}, sort_keys=True, indent=2))
    else:
        for item in pieces:
            slope = f"  slope {item['slope']}" if "slope" in item else ""
            print(f"{item['name']}{slope}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = "DEBUG" if args.debug else "INFO" if args.verbose else CFG.log_level
    setup_logging(level, args.log_file)

    try:
        return args.handler(args)
    except (NonattackError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
