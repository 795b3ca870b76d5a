"""JSON formats for tensors, pencils and concision results.

Rationals are written as strings ("3", "-1/2"). Readers accept ints or
strings and refuse floats.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import LengthMismatch, Rank3Error, ShapeMismatch
from .linalg import QMatrix
from .pencil import Pencil
from .tensor import ConcisionResult, Tensor


class FormatError(Rank3Error):
    pass


def read_rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"entry {x!r} is not an integer or a 'p/q' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"cannot read {x!r} as a rational: {exc}") from None


def _int_list(xs, what: str) -> list[int]:
    if not isinstance(xs, list) or not all(isinstance(n, int) and not isinstance(n, bool) for n in xs):
        raise FormatError(f"{what} must be a list of integers")
    return xs


def _entries(xs) -> list[Fraction]:
    if not isinstance(xs, list):
        raise FormatError("entries must be a list")
    return [read_rational(x) for x in xs]


def tensor_from_json(obj) -> Tensor:
    if not isinstance(obj, dict) or "shape" not in obj or "entries" not in obj:
        raise FormatError('tensor JSON needs "shape" and "entries"')
    shape = _int_list(obj["shape"], "shape")
    if not shape:
        raise ShapeMismatch("a tensor needs at least one factor")
    return Tensor(tuple(shape), tuple(_entries(obj["entries"])))


def tensor_to_json(T: Tensor) -> dict:
    return {"shape": list(T.shape), "entries": [str(x) for x in T.entries]}


def matrix_to_json(M: QMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in M.to_rows()]


def pencil_from_json(obj) -> Pencil:
    if not isinstance(obj, dict) or not {"rows", "cols", "A0", "A1"} <= obj.keys():
        raise FormatError('pencil JSON needs "rows", "cols", "A0" and "A1"')
    m, n = obj["rows"], obj["cols"]
    _int_list([m, n], "rows and cols")
    mats = []
    for key in ("A0", "A1"):
        e = _entries(obj[key])
        if len(e) != m * n:
            raise LengthMismatch(f"{key} needs {m * n} entries, got {len(e)}")
        mats.append(QMatrix(m, n, tuple(e)))
    return Pencil(*mats)


def pencil_to_json(P: Pencil) -> dict:
    return {"rows": P.rows, "cols": P.cols,
            "A0": [str(x) for x in P.A0.entries], "A1": [str(x) for x in P.A1.entries]}


def concision_to_json(c: ConcisionResult) -> dict:
    return {
        "concise_shape": list(c.concise_shape),
        "core": tensor_to_json(c.core),
        "factor_map": list(c.factor_map),
        "dropped_factors": list(c.dropped_factors),
        "injections": [matrix_to_json(B) for B in c.injections],
    }


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)
