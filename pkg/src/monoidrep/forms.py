"""Gram matrices of the split symmetric and alternating forms on K^n."""

from __future__ import annotations

import enum
from typing import Sequence

from .exact import DimensionMismatch, Field, Matrix, Q


class FormKind(enum.Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"


def check_form_constraints(kind: FormKind, n: int, field: Field = Q) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if kind is FormKind.SYMPLECTIC and n % 2:
        raise ValueError(f"symplectic form needs even n, got n={n}")
    if kind is FormKind.ORTHOGONAL and field.characteristic == 2:
        raise ValueError("orthogonal form needs characteristic != 2")


def partner(i: int, n: int) -> int:
    """The paired index of ``i`` (0-based): i <-> n-1-i."""
    return n - 1 - i


def form_sign(kind: FormKind, i: int, n: int) -> int:
    """Entry of J in row ``i`` (0-based), column ``partner(i)``."""
    if kind is FormKind.ORTHOGONAL:
        return 1
    return 1 if i < n // 2 else -1


def gram_matrix(kind: FormKind, n: int, field: Field = Q) -> Matrix:
    check_form_constraints(kind, n, field)
    zero = field.zero
    entries = [zero] * (n * n)
    for i in range(n):
        entries[i * n + partner(i, n)] = field(form_sign(kind, i, n))
    return Matrix(n, n, field, tuple(entries))


def form_eval(kind: FormKind, n: int, v: Sequence, w: Sequence, field: Field = Q):
    """Evaluate <v, w> = v^T J w."""
    check_form_constraints(kind, n, field)
    if len(v) != n or len(w) != n:
        raise DimensionMismatch(f"vectors of length {len(v)}, {len(w)} for n={n}")
    s = field.zero
    for i in range(n):
        a = field(v[i])
        if a:
            s = s + a * form_sign(kind, i, n) * field(w[partner(i, n)])
    return s
