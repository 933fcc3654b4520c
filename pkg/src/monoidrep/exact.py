"""Exact scalars (rationals and prime fields) and dense exact linear algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "Field",
    "Fp",
    "Q",
    "Matrix",
    "FieldMismatch",
    "DimensionMismatch",
    "mat_mul",
    "transpose",
    "rank",
    "det",
    "invert",
    "IntegerEchelon",
    "rank_mod_p",
]

MAX_MODULUS = 2**31


class FieldMismatch(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for p < 3.4e14
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, slots=True)
class Fp:
    """Element of the prime field with modulus ``p``."""

    residue: int
    p: int

    def _other(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"cannot mix F_{self.p} and F_{other.p}")
            return other.residue
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp((self.residue + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp((self.residue - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp((o - self.residue) % self.p, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(self.residue * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.residue % self.p, self.p)

    def inverse(self) -> Fp:
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * Fp(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.residue, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, (int, Fraction)):
            return self.residue == self._other(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"Fp({self.residue}, {self.p})"

    def __str__(self):
        return str(self.residue)


Scalar = Union[Fraction, Fp]


@dataclass(frozen=True, slots=True)
class Field:
    """Field descriptor: ``p is None`` means the rationals, else F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 <= self.p < MAX_MODULUS) or not _is_prime(self.p):
                raise ValueError(f"modulus must be a prime below 2^31, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> Field:
        text = text.strip().lower()
        if text == "q":
            return cls(None)
        if text.startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError(f"bad field descriptor {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field descriptor {text!r}; expected 'q' or 'fp:<p>'")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return "q" if self.p is None else f"fp:{self.p}"

    def __call__(self, x) -> Scalar:
        """Coerce ``x`` (int, Fraction, str, or scalar) into this field."""
        if self.p is None:
            if isinstance(x, Fp):
                raise FieldMismatch("cannot coerce an F_p element to Q")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatch(f"cannot mix F_{x.p} and F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator vanishes in F_{self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p) % self.p, self.p)
        return Fp(int(x) % self.p, self.p)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)


Q = Field(None)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over a single field, row-major."""

    rows: int
    cols: int
    field: Field
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = Q) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, field, tuple(field(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int, field: Field = Q) -> Matrix:
        one, zero = field.one, field.zero
        return cls(n, n, field, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, field: Field = Q) -> Matrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, field, (field.zero,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence, field: Field = Q) -> Matrix:
        n = len(values)
        zero = field.zero
        vals = [field(v) for v in values]
        return cls(n, n, field, tuple(vals[i] if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence, field: Field = Q) -> Matrix:
        return cls(len(values), 1, field, tuple(field(v) for v in values))

    # access

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def diagonal(self) -> list:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_diagonal(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(self.cols) if i != j)

    @property
    def T(self) -> Matrix:
        return transpose(self)

    # arithmetic

    def _check_same(self, other: Matrix):
        if self.field != other.field:
            raise FieldMismatch(f"field {self.field} vs {other.field}")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"shape {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(self.rows, self.cols, self.field,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(self.rows, self.cols, self.field,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, self.field, tuple(-a for a in self.entries))

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix(self.rows, self.cols, self.field, tuple(c * a for a in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __repr__(self):
        return f"Matrix({self.to_rows()!r}, field={self.field})"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise FieldMismatch(f"field {a.field} vs {b.field}")
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    zero = a.field.zero
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            s = zero
            for x, y in zip(r, c):
                if x and y:
                    s = s + x * y
            out.append(s)
    return Matrix(a.rows, b.cols, a.field, tuple(out))


def transpose(a: Matrix) -> Matrix:
    return Matrix(a.cols, a.rows, a.field, tuple(a[i, j] for j in range(a.cols) for i in range(a.rows)))


def _integer_rows(a: Matrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row of a rational matrix to integers.

    Returns the integer rows and the product of the row scale factors.
    """
    rows = []
    scale = 1
    for i in range(a.rows):
        r = a.row(i)
        l = reduce(math.lcm, (x.denominator for x in r), 1)
        rows.append([x.numerator * (l // x.denominator) for x in r])
        scale *= l
    return rows, Fraction(scale)


def _bareiss(m: list[list[int]], want_det: bool = False) -> tuple[int, int]:
    """Fraction-free elimination in place on integer rows.

    Returns ``(rank, det)``; ``det`` is meaningful only for square input
    with ``want_det``.
    """
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            if want_det:
                return r, 0
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        pr = m[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f == 0:
                for j in range(c + 1, ncols):
                    row[j] = row[j] * p // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * p - f * pr[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    det = sign * prev if (want_det and r == ncols == nrows) else 0
    return r, det


def _gauss_fp(rows: list[list[int]], p: int) -> tuple[int, int]:
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    det = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if piv is None:
            det = 0
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            det = -det
        pr = rows[r]
        det = det * pr[c] % p
        inv = pow(pr[c], -1, p)
        for i in range(r + 1, nrows):
            f = rows[i][c] % p
            if f:
                f = f * inv % p
                row = rows[i]
                for j in range(c, ncols):
                    row[j] = (row[j] - f * pr[j]) % p
        r += 1
    if r < ncols or nrows != ncols:
        det = 0
    return r, det % p


def rank(a: Matrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    if a.field.is_rational:
        rows, _ = _integer_rows(a)
        return _bareiss(rows)[0]
    return _gauss_fp([[x.residue for x in a.row(i)] for i in range(a.rows)], a.field.p)[0]


def det(a: Matrix) -> Scalar:
    if not a.is_square:
        raise DimensionMismatch(f"determinant of a non-square {a.rows}x{a.cols} matrix")
    if a.rows == 0:
        return a.field.one
    if a.field.is_rational:
        rows, scale = _integer_rows(a)
        return Fraction(_bareiss(rows, want_det=True)[1]) / scale
    d = _gauss_fp([[x.residue for x in a.row(i)] for i in range(a.rows)], a.field.p)[1]
    return Fp(d, a.field.p)


def invert(a: Matrix) -> Matrix | None:
    """Exact inverse by Gauss-Jordan, or ``None`` when ``a`` is singular."""
    if not a.is_square:
        raise DimensionMismatch(f"inverse of a non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    one, zero = a.field.one, a.field.zero
    m = [list(a.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = one / m[c][c]
        m[c] = [x * inv for x in m[c]]
        pr = m[c]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
    return Matrix(n, n, a.field, tuple(x for r in m for x in r[n:]))


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot column indices."""
    m = a.to_rows()
    one = a.field.one
    pivots = []
    r = 0
    for c in range(a.cols):
        piv = next((i for i in range(r, a.rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == a.rows:
            break
    return Matrix(a.rows, a.cols, a.field, tuple(x for row in m for x in row)), pivots


def hstack(blocks: Iterable[Matrix]) -> Matrix:
    blocks = list(blocks)
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise DimensionMismatch("row counts differ")
    field = blocks[0].field
    out = []
    for i in range(rows):
        for b in blocks:
            out.extend(b.row(i))
    return Matrix(rows, sum(b.cols for b in blocks), field, tuple(out))


class IntegerEchelon:
    """Incremental fraction-free row echelon basis over the integers.

    Rows are pushed one at a time; each is reduced against the stored
    pivot rows by cross-multiplication and divided by its content, so the
    rank over Q is maintained without rational arithmetic.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def add(self, row: Sequence[int]) -> bool:
        """Reduce ``row`` against the basis; return True if it raised the rank."""
        if len(row) != self.ncols:
            raise DimensionMismatch(f"row of length {len(row)}, expected {self.ncols}")
        v = list(row)
        for c, prow in self._pivots:
            f = v[c]
            if f:
                p = prow[c]
                g = math.gcd(p, f)
                a, b = p // g, f // g
                v = [a * x - b * y for x, y in zip(v, prow)]
                g = reduce(math.gcd, v, 0)
                if g > 1:
                    v = [x // g for x in v]
        c = next((j for j, x in enumerate(v) if x), None)
        if c is None:
            return False
        self._pivots.append((c, v))
        return True


def rank_mod_p(rows: Sequence[Sequence[int]], p: int = 2147483647) -> int:
    """Rank of an integer matrix reduced mod p (p < 2^31, so products fit in int64).

    This is a lower bound for the rank over Q: a minor that is nonzero
    mod p is a nonzero integer.
    """
    if p >= MAX_MODULUS:
        raise ValueError("modulus must be below 2^31")
    if not rows:
        return 0
    a = np.array([[x % p for x in r] for r in rows], dtype=np.int64)
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        below = a[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            a[idx] = (a[idx] - np.outer(below[mask], a[r]) % p) % p
        r += 1
    return r
