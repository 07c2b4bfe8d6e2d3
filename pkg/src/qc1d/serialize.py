"""Canonical JSON for pieces, windows, point sets and checker reports.

The encoding is deterministic (sorted keys, fixed separators) and rationals
are spelled out as {"num": .., "den": ..} pairs, so serialising a canonical
object, parsing it back and serialising again is byte-for-byte stable.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .exact import Basis, ExactLength
from .measures import ColoredDeloneSet, MeasureWindow, Piece, PieceContent


def _rat(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def _unrat(d) -> Fraction:
    return Fraction(d["num"], d["den"])


def _coeffs(el: ExactLength) -> list:
    return [_rat(c) for c in el.coeffs]


def _uncoeffs(basis: Basis, data) -> ExactLength:
    return ExactLength(basis, tuple(_unrat(d) for d in data))


def basis_to_dict(basis: Basis) -> dict:
    return {"names": list(basis.names), "values": list(basis.values)}


def basis_from_dict(d) -> Basis:
    return Basis(d["names"], d["values"])


def _content_to_dict(content: PieceContent) -> dict:
    return {
        "atoms": [{"offset": _coeffs(o), "weight": _rat(w)} for o, w in content.atoms],
        "steps": [
            {"start": _coeffs(s), "end": _coeffs(e), "value": _rat(v)}
            for s, e, v in content.steps
        ],
    }


def _content_from_dict(basis: Basis, d) -> PieceContent:
    atoms = [(_uncoeffs(basis, a["offset"]), _unrat(a["weight"])) for a in d["atoms"]]
    steps = [
        (_uncoeffs(basis, s["start"]), _uncoeffs(basis, s["end"]), _unrat(s["value"]))
        for s in d["steps"]
    ]
    return PieceContent(atoms, steps)


def _piece_body(p: Piece) -> dict:
    body = {"length": _coeffs(p.length), "label": p.label}
    body.update(_content_to_dict(p.content))
    return body


def _piece_from_body(basis: Basis, d) -> Piece:
    return Piece(_uncoeffs(basis, d["length"]), _content_from_dict(basis, d), d.get("label"))


def piece_to_dict(p: Piece) -> dict:
    d = {"kind": "piece", "basis": basis_to_dict(p.basis)}
    d.update(_piece_body(p))
    return d


def piece_from_dict(d) -> Piece:
    if d.get("kind") != "piece":
        raise ValueError(f"expected kind 'piece', got {d.get('kind')!r}")
    return _piece_from_body(basis_from_dict(d["basis"]), d)


def window_to_dict(w: MeasureWindow) -> dict:
    d = {
        "kind": "measure_window",
        "basis": basis_to_dict(w.basis),
        "origin": _coeffs(w.origin),
        "end": _coeffs(w.end),
    }
    d.update(_content_to_dict(w.content))
    return d


def window_from_dict(d) -> MeasureWindow:
    if d.get("kind") != "measure_window":
        raise ValueError(f"expected kind 'measure_window', got {d.get('kind')!r}")
    basis = basis_from_dict(d["basis"])
    return MeasureWindow(
        _uncoeffs(basis, d["origin"]),
        _uncoeffs(basis, d["end"]),
        _content_from_dict(basis, d),
    )


def delone_set_to_dict(D: ColoredDeloneSet) -> dict:
    return {
        "kind": "colored_delone_set",
        "basis": basis_to_dict(D.basis),
        "points": [_coeffs(p) for p in D.points],
        "colors": list(D.colors),
    }


def delone_set_from_dict(d) -> ColoredDeloneSet:
    if d.get("kind") != "colored_delone_set":
        raise ValueError(f"expected kind 'colored_delone_set', got {d.get('kind')!r}")
    basis = basis_from_dict(d["basis"])
    return ColoredDeloneSet(
        tuple(_uncoeffs(basis, c) for c in d["points"]), tuple(d["colors"])
    )


def piece_set_to_dict(pieces) -> dict:
    """Pieces share one basis block; labels must be present and unique."""
    pieces = list(pieces)
    if not pieces:
        raise ValueError("empty piece collection")
    basis = pieces[0].basis
    labels = [p.label for p in pieces]
    if any(l is None for l in labels) or len(set(labels)) != len(labels):
        raise ValueError("piece sets need unique non-empty labels")
    return {
        "kind": "piece_set",
        "basis": basis_to_dict(basis),
        "pieces": [_piece_body(p) for p in pieces],
    }


def piece_set_from_dict(d) -> list:
    if d.get("kind") != "piece_set":
        raise ValueError(f"expected kind 'piece_set', got {d.get('kind')!r}")
    basis = basis_from_dict(d["basis"])
    return [_piece_from_body(basis, b) for b in d["pieces"]]


def dumps(obj: dict) -> str:
    """Canonical JSON text: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> dict:
    return json.loads(text)


# convenience string-level helpers


def piece_to_json(p: Piece) -> str:
    return dumps(piece_to_dict(p))


def piece_from_json(s: str) -> Piece:
    return piece_from_dict(loads(s))


def window_to_json(w: MeasureWindow) -> str:
    return dumps(window_to_dict(w))


def window_from_json(s: str) -> MeasureWindow:
    return window_from_dict(loads(s))


def delone_set_to_json(D: ColoredDeloneSet) -> str:
    return dumps(delone_set_to_dict(D))


def delone_set_from_json(s: str) -> ColoredDeloneSet:
    return delone_set_from_dict(loads(s))


def length_to_dict(el: ExactLength) -> dict:
    return {"basis": basis_to_dict(el.basis), "coeffs": _coeffs(el)}


def length_from_dict(d) -> ExactLength:
    basis = basis_from_dict(d["basis"])
    return _uncoeffs(basis, d["coeffs"])


def checker_report(property_name: str, w: MeasureWindow, verdict, payload=None) -> dict:
    """Uniform JSON shape for window-verdict checkers."""
    report = {
        "property": property_name,
        "window": [_coeffs(w.origin), _coeffs(w.end)],
        "window_approx": [w.origin.value, w.end.value],
        "basis": basis_to_dict(w.basis),
        "verdict": verdict,
    }
    if payload is not None:
        report.update(payload)
    return report
