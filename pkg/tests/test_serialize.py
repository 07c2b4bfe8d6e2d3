"""JSON round trips for pieces, windows, point sets, and reports."""

from fractions import Fraction

from qc1d import (
    ColoredDeloneSet,
    MeasureWindow,
    Piece,
    PieceContent,
    PieceSet,
    as_length,
    golden_basis,
    serialize,
)


def _sample_piece():
    b = golden_basis()
    content = PieceContent(
        atoms=[(b.zero, Fraction(3, 2)), (as_length("golden", b), Fraction(-1))],
        steps=[(as_length(1, b), as_length("golden", b), Fraction(2, 7))],
    )
    return Piece(as_length("1 + golden", b), content, "cell")


def test_piece_round_trip():
    p = _sample_piece()
    assert serialize.piece_from_json(serialize.piece_to_json(p)) == p


def test_round_trip_keeps_label():
    p = _sample_piece()
    q = serialize.piece_from_json(serialize.piece_to_json(p))
    assert q.label == "cell"


def test_window_round_trip():
    p = _sample_piece()
    b = p.basis
    w = MeasureWindow(as_length("golden", b), as_length("1 + 2*golden", b), p.content)
    again = serialize.window_from_json(serialize.window_to_json(w))
    assert again == w


def test_delone_set_round_trip():
    b = golden_basis()
    pts = (b.zero, as_length(1, b), as_length("1 + golden", b))
    D = ColoredDeloneSet(pts, (0, 1, 0))
    assert serialize.delone_set_from_json(serialize.delone_set_to_json(D)) == D


def test_piece_set_round_trip():
    p = _sample_piece()
    q = Piece(p.basis.one, PieceContent(), "gap")
    ps = PieceSet([p, q])
    d = serialize.piece_set_to_dict(ps)
    back = serialize.piece_set_from_dict(d)
    assert list(back) == list(ps)


def test_rationals_are_num_den_pairs():
    d = serialize.length_to_dict(as_length("1/2 + golden", golden_basis()))
    assert d["coeffs"] == [{"num": 1, "den": 2}, {"num": 1, "den": 1}]


def test_dumps_is_canonical():
    a = serialize.dumps({"b": 1, "a": [2, 3]})
    b = serialize.dumps({"a": [2, 3], "b": 1})
    assert a == b == '{"a":[2,3],"b":1}'
    assert serialize.loads(a) == {"a": [2, 3], "b": 1}


def test_checker_report_shape():
    p = _sample_piece()
    b = p.basis
    w = MeasureWindow(b.zero, p.length, p.content)
    rep = serialize.checker_report("sfdp", w, True, {"ell": 2})
    assert rep["property"] == "sfdp"
    assert rep["verdict"] is True
    assert rep["ell"] == 2
    assert rep["window_approx"][0] == 0.0
    # the whole report must be JSON-encodable as-is
    assert serialize.loads(serialize.dumps(rep))["property"] == "sfdp"
