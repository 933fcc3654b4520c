"""JSON readers and writers for matrices, weights and multiplicity maps."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .exact import Field, Matrix
from .weights import Weight


def scalar_to_json(x) -> str:
    return str(x)


def matrix_to_json(A: Matrix) -> dict:
    if A.field.is_rational:
        entries = [[str(x.numerator), str(x.denominator)] for x in A.entries]
    else:
        entries = [x.residue for x in A.entries]
    return {"rows": A.rows, "cols": A.cols, "field": str(A.field), "entries": entries}


def _read_entry(field: Field, e):
    if isinstance(e, (list, tuple)):
        if len(e) != 2:
            raise ValueError(f"rational entry must be [num, den], got {e!r}")
        num, den = int(e[0]), int(e[1])
        if den == 0:
            raise ValueError("zero denominator")
        return field(Fraction(num, den))
    if isinstance(e, bool) or not isinstance(e, (int, str)):
        raise ValueError(f"bad matrix entry {e!r}")
    return field(Fraction(e) if isinstance(e, str) else e)


def matrix_from_json(obj: Mapping) -> Matrix:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        field = Field.parse(obj.get("field", "q"))
        entries = obj["entries"]
    except KeyError as exc:
        raise ValueError(f"matrix JSON is missing {exc.args[0]!r}") from None
    return Matrix(rows, cols, field, tuple(_read_entry(field, e) for e in entries))


def weight_to_json(w: Weight) -> dict:
    return w.to_json()


def weight_from_json(obj: Mapping) -> Weight:
    try:
        return Weight.from_json(obj)
    except KeyError as exc:
        raise ValueError(f"weight JSON is missing {exc.args[0]!r}") from None


def multiplicities_to_json(mult: Mapping[Weight, int]) -> list[dict]:
    return [{"weight": w.to_json(), "mult": m} for w, m in sorted(mult.items())]


def multiplicities_from_json(items) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for item in items:
        m = int(item["mult"])
        if m < 0:
            raise ValueError("multiplicities must be nonnegative")
        out[weight_from_json(item["weight"])] = m
    return out
