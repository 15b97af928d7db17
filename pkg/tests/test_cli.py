import json

import pytest

from core.genfunc import RationalCountSeries, series
from core.pluspoly import DensePolynomial
from script import nonattack
from script.nonattack import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def walk(value):
    if isinstance(value, dict):
        for item in value.values():
            yield from walk(item)
    elif isinstance(value, list):
        for item in value:
            yield from walk(item)
    else:
        yield value


def test_formula_queen_two_rows(capsys):
    code, out = run(capsys, "formula", "--piece", "queen", "--rows", "2")
    assert code == 0
    assert "labelled count: n^2 - n - 2(n-1)^+" in out
    assert "eventual polynomial: n^2 - 3n + 2" in out
    assert "polynomial for n >=: 1" in out


def test_formula_bishop_three_rows_json(capsys):
    code, report = run_json(capsys, "formula", "--piece", "bishop", "--rows", "3")
    assert code == 0
    assert report["eventual"] == [-22, 18, -6, 1]
    assert report["threshold"] == 3
    assert report["divisor"] == 1
    assert report["c1"] == 6
    assert "count" not in report
    assert "notes" not in report


def test_formula_rook_one_row(capsys):
    code, report = run_json(capsys, "formula", "--piece", "rook", "--rows", "1")
    assert code == 0
    assert report["eventual"] == [0, 1]
    assert report["threshold"] == 0
    assert report["terms"] == [{"coeff": 1, "shifts": [0]}]


@pytest.mark.parametrize(
    "piece, rows, cols, expected",
    [("queen", "3", "4", 4), ("queen", "3", "3", 0), ("knight", "2", "3", 7)],
)
def test_count(capsys, piece, rows, cols, expected):
    code, out = run(capsys, "count", "--piece", piece, "--rows", rows, "--cols", cols)
    assert code == 0
    assert out.strip() == str(expected)


@pytest.mark.parametrize(
    "piece, rows, text",
    [
        ("queen", "2", "2t^3 / (1-t)^3"),
        ("bishop", "2", "(2t^3 - t^2 + t) / (1-t)^3"),
        ("rook", "3", "6t^3 / (1-t)^4"),
    ],
)
def test_gf(capsys, piece, rows, text):
    code, out = run(capsys, "gf", "--piece", piece, "--rows", rows)
    assert code == 0
    assert f"generating function: {text}" in out


def test_gf_json(capsys):
    code, report = run_json(capsys, "gf", "--piece", "rook", "--rows", "3")
    assert code == 0
    assert report["gf_numerator"] == [0, 0, 0, 6]
    assert report["gf_denominator_exponent"] == 4


@pytest.mark.parametrize("piece, rows", [("queen", "3"), ("knight", "4")])
def test_verify_agrees(capsys, piece, rows):
    code, out = run(capsys, "verify", "--piece", piece, "--rows", rows, "--max-cols", "8")
    assert code == 0
    assert "verified n = 0..8: all agree" in out


def test_verify_reports_mismatch(capsys, monkeypatch):
    monkeypatch.setattr(nonattack, "brute_count", lambda *args, **kwargs: -1)
    code, report = run_json(capsys, "verify", "--piece", "bishop", "--rows", "2", "--max-cols", "3")
    assert code == 2
    assert len(report["mismatches"]) == 4
    assert report["mismatches"][0] == {"n": 0, "symbolic": 0, "oracle": -1, "series": 0}


def test_verify_json_without_mismatches(capsys):
    code, report = run_json(capsys, "verify", "--piece", "knight", "--rows", "2", "--max-cols", "4")
    assert code == 0
    assert report["mismatches"] == []
    assert report["max_cols"] == 4


@pytest.mark.parametrize(
    "piece, rows, expected",
    [
        ("queen", "3", {"sufficient_bound": 4, "max_path_gain": 3, "threshold": 3, "slope_threshold": 3}),
        ("knight", "3", {"max_path_gain": 4, "threshold": 4}),
        ("bishop", "1", {"sufficient_bound": 0, "max_path_gain": 0, "threshold": 0, "slope_threshold": 0}),
    ],
)
def test_bound(capsys, piece, rows, expected):
    code, report = run_json(capsys, "bound", "--piece", piece, "--rows", rows)
    assert code == 0
    for key, value in expected.items():
        assert report[key] == value
    if piece == "knight":
        assert "slope_threshold" not in report


def test_pieces_list(capsys):
    code, out = run(capsys, "pieces-list")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "rook"
    assert "bishop  slope 1" in lines
    assert "amazon" in lines
    code, listing = run_json(capsys, "pieces-list")
    assert {"name": "nightrider", "slope": 2} in listing["pieces"]


@pytest.mark.parametrize(
    "argv",
    [
        ["formula", "--piece", "queen", "--rows", "3", "--format", "json"],
        ["gf", "--piece", "bishop", "--rows", "3", "--format", "json"],
        ["bound", "--piece", "nightrider", "--rows", "3", "--format", "json"],
    ],
)
def test_json_is_canonical_and_exact(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0
    report = json.loads(out)
    assert json.dumps(report, sort_keys=True, indent=2) == out.rstrip("\n")
    assert not any(isinstance(value, float) for value in walk(report))
    assert None not in walk(report)


@pytest.mark.parametrize("piece, rows", [("queen", "3"), ("nightrider", "2"), ("solid-knight", "2")])
def test_count_matches_series(capsys, piece, rows):
    _, report = run_json(capsys, "gf", "--piece", piece, "--rows", rows)
    gf = RationalCountSeries(DensePolynomial(tuple(report["gf_numerator"])), report["gf_denominator_exponent"])
    expansion = series(gf, 9)
    for n in range(9):
        _, out = run(capsys, "count", "--piece", piece, "--rows", rows, "--cols", str(n))
        assert int(out) == expansion[n]


@pytest.mark.parametrize(
    "argv",
    [
        ["formula", "--piece", "queen"],
        ["formula", "--piece", "queen", "--rows", "0"],
        ["count", "--piece", "queen", "--rows", "2", "--cols", "-1"],
        ["formula", "--piece", "queen", "--rows", "2", "--occupancy", "1,x"],
        ["gf", "--piece", "queen", "--rows", "2", "--format", "yaml"],
        ["solve"],
    ],
)
def test_usage_errors_exit_with_one(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 1


def test_row_guard(capsys):
    assert main(["formula", "--piece", "queen", "--rows", "9"]) == 1
    assert "--force" in capsys.readouterr().err


def test_unknown_piece(capsys):
    assert main(["formula", "--piece", "archbishop", "--rows", "2"]) == 1


def test_occupancy_must_match_rows(capsys):
    assert main(["formula", "--piece", "queen", "--rows", "2", "--occupancy", "1,1,1"]) == 1


def test_corrupted_piece_file(capsys, tmp_path):
    path = tmp_path / "lopsided.piece"
    path.write_text("name: lopsided\nsymmetric: false\nmove: 1 2\n", encoding="utf-8")
    assert main(["verify", "--piece", str(path), "--rows", "2"]) == 1
    assert "not centrally symmetric" in capsys.readouterr().err


def test_custom_piece_file(capsys, tmp_path):
    path = tmp_path / "wazir.piece"
    path.write_text("name: wazir\nmove: 0 1\nmove: 1 0\n", encoding="utf-8")
    code, report = run_json(capsys, "formula", "--piece", str(path), "--rows", "2")
    assert code == 0
    assert report["piece"] == "wazir"
    assert report["eventual"] == [0, -1, 1]


def test_identically_zero_count(capsys):
    code, out = run(capsys, "count", "--piece", "rook", "--rows", "2", "--occupancy", "2,1", "--cols", "5")
    assert code == 0
    assert out.strip() == "0"


def test_identically_zero_formula_notes(capsys):
    code, report = run_json(capsys, "formula", "--piece", "rook", "--rows", "2", "--occupancy", "2,1")
    assert code == 0
    assert report["terms"] == []
    assert report["notes"][0].startswith("identically zero")


def test_stacking_gf_is_refused(capsys):
    assert main(["gf", "--piece", "bishop", "--rows", "1", "--occupancy", "2"]) == 1


def test_stacking_count_is_refused(capsys):
    assert main(["count", "--piece", "bishop", "--rows", "1", "--occupancy", "2", "--cols", "3"]) == 1


def test_stacking_verify_compares_labelled_counts(capsys):
    code, report = run_json(capsys, "verify", "--piece", "bishop", "--rows", "2", "--occupancy", "2,1", "--max-cols", "6")
    assert code == 0
    assert report["mismatches"] == []
    assert "labelled counts are compared" in report["notes"][0]


def test_crowded_rows_formula(capsys):
    code, report = run_json(capsys, "formula", "--piece", "solid-bishop", "--rows", "2", "--occupancy", "2,1")
    assert code == 0
    assert report["divisor"] == 2
    assert report["c1"] == 5
    assert report["probability_constant"] == 4


def test_nightrider_formula_notes_published_table(capsys):
    code, report = run_json(capsys, "formula", "--piece", "nightrider", "--rows", "3")
    assert code == 0
    assert report["eventual"] == [-64, 36, -8, 1]
    assert report["c1"] == 8
    assert report["notes"] == ["differs from the published nightrider table, which gives n^3 - 8n^2 + 34n - 56"]


def test_nightrider_bound_notes_published_table(capsys):
    code, out = run(capsys, "bound", "--piece", "nightrider", "--rows", "4")
    assert code == 0
    assert "note: differs from the published nightrider table" in out


def test_no_note_where_tables_agree(capsys):
    _, report = run_json(capsys, "formula", "--piece", "nightrider", "--rows", "2")
    assert "notes" not in report
