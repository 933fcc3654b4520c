"""The coordinate bialgebra of M_n and an evaluation-rank oracle for dim K[M]_d.

Polynomials live in the n^2 entry variables x_ij; a monomial is the tuple
of its n^2 exponents (row-major), so ``x_ij`` has a 1 at ``i*n + j``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Mapping

from .exact import IntegerEchelon, Matrix, rank_mod_p
from .monoid import Kind, MonoidSpec, sample_unit
from .repdim import graded_square_sum

Monomial = tuple[int, ...]


class OracleNotStable(RuntimeError):
    """The point budget ran out before the evaluation rank settled."""

    def __init__(self, rank: int, points_used: int):
        super().__init__(f"rank {rank} still changing after {points_used} points")
        self.rank = rank
        self.points_used = points_used


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class SparsePoly:
    """Polynomial in the entries of an n x n matrix, with exact coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        for m in self.terms:
            if len(m) != n * n:
                raise ValueError(f"monomial {m} has wrong length for n={n}")

    @classmethod
    def one(cls, n: int) -> SparsePoly:
        return cls(n, {(0,) * (n * n): Fraction(1)})

    @classmethod
    def var(cls, n: int, i: int, j: int) -> SparsePoly:
        """The coordinate function x_ij (0-based)."""
        e = [0] * (n * n)
        e[i * n + j] = 1
        return cls(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, m: Monomial, coeff=1) -> SparsePoly:
        return cls(n, {tuple(m): Fraction(coeff) if isinstance(coeff, int) else coeff})

    def __add__(self, other: SparsePoly) -> SparsePoly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePoly(self.n, out)

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + other.scale(-1)

    def scale(self, c) -> SparsePoly:
        return SparsePoly(self.n, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return SparsePoly(self.n, out)

    def __eq__(self, other):
        return isinstance(other, SparsePoly) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        return f"SparsePoly({self.n}, {self.terms!r})"

    def evaluate(self, A: Matrix):
        vals = A.entries
        s = A.field.zero
        for m, c in self.terms.items():
            t = A.field(c)
            for v, e in zip(vals, m):
                if e:
                    t = t * v ** e
            s = s + t
        return s


class TensorPoly:
    """Element of K[M_n] (x) K[M_n], keyed by pairs of monomials."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[Monomial, Monomial], object] | None = None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __mul__(self, other: TensorPoly) -> TensorPoly:
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (_mono_mul(a1, a2), _mono_mul(b1, b2))
                out[key] = out.get(key, 0) + c1 * c2
        return TensorPoly(self.n, out)

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.n == other.n and self.terms == other.terms

    def evaluate(self, A: Matrix, B: Matrix):
        s = A.field.zero
        for (a, b), c in self.terms.items():
            s = s + A.field(c) * SparsePoly.monomial(self.n, a).evaluate(A) \
                * SparsePoly.monomial(self.n, b).evaluate(B)
        return s


@lru_cache(maxsize=None)
def _delta_monomial(n: int, m: Monomial) -> TensorPoly:
    zero = (0,) * (n * n)
    out = TensorPoly(n, {(zero, zero): Fraction(1)})
    for idx, e in enumerate(m):
        if e:
            i, j = divmod(idx, n)
            dx = _delta_var(n, i, j)
            for _ in range(e):
                out = out * dx
    return out


@lru_cache(maxsize=None)
def _delta_var(n: int, i: int, j: int) -> TensorPoly:
    terms = {}
    for k in range(n):
        a = [0] * (n * n)
        b = [0] * (n * n)
        a[i * n + k] = 1
        b[k * n + j] = 1
        terms[(tuple(a), tuple(b))] = Fraction(1)
    return TensorPoly(n, terms)


def comultiply(n: int, p: SparsePoly) -> TensorPoly:
    """Delta(x_ij) = sum_k x_ik (x) x_kj, extended multiplicatively and linearly."""
    out: dict = {}
    for m, c in p.terms.items():
        for key, v in _delta_monomial(n, m).terms.items():
            out[key] = out.get(key, 0) + c * v
    return TensorPoly(n, out)


def _counit_monomial(n: int, m: Monomial) -> int:
    # x_ij(I) = [i == j]
    return int(all(e == 0 or idx // n == idx % n for idx, e in enumerate(m)))


def counit(n: int, p: SparsePoly):
    """Evaluation at the identity matrix."""
    return sum((c * _counit_monomial(n, m) for m, c in p.terms.items()), Fraction(0))


def monomials(n: int, d: int) -> list[Monomial]:
    """All degree-d monomials in the n^2 entry variables, in a fixed order."""
    nv = n * n
    out = []
    for combo in itertools.combinations_with_replacement(range(nv), d):
        e = [0] * nv
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def check_bialgebra_axioms(n: int, max_degree: int) -> bool:
    """Coassociativity and both counit laws on every monomial of degree <= max_degree."""
    for d in range(max_degree + 1):
        for m in monomials(n, d):
            f = SparsePoly.monomial(n, m)
            delta = comultiply(n, f)
            left: dict = {}
            right: dict = {}
            for (a, b), c in delta.terms.items():
                # (id (x) Delta) Delta
                for (b1, b2), c2 in _delta_monomial(n, b).terms.items():
                    key = (a, b1, b2)
                    left[key] = left.get(key, 0) + c * c2
                # (Delta (x) id) Delta
                for (a1, a2), c1 in _delta_monomial(n, a).terms.items():
                    key = (a1, a2, b)
                    right[key] = right.get(key, 0) + c * c1
            if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
                return False
            eps_id: dict = {}
            id_eps: dict = {}
            for (a, b), c in delta.terms.items():
                eps_id[b] = eps_id.get(b, 0) + c * _counit_monomial(n, a)
                id_eps[a] = id_eps.get(a, 0) + c * _counit_monomial(n, b)
            if SparsePoly(n, eps_id) != f or SparsePoly(n, id_eps) != f:
                return False
    return True


# -- evaluation-rank oracle ----------------------------------------------

def _integral_point(A: Matrix) -> list[int]:
    """Entries of a nonzero rational multiple of A that is integral."""
    l = reduce(math.lcm, (x.denominator for x in A.entries), 1)
    return [x.numerator * (l // x.denominator) for x in A.entries]


def _evaluation_row(args) -> list[int]:
    point, cols = args
    row = []
    for m in cols:
        t = 1
        for v, e in zip(point, m):
            if e:
                t *= v ** e
        row.append(t)
    return row


@dataclass(frozen=True)
class OracleResult:
    rank: int
    points_used: int
    columns: int


def _oracle_point(spec: MonoidSpec, seed, i: int, entry_bound: int, plus_only: bool) -> Matrix:
    component = 1
    if spec.kind is Kind.ORTHOGONAL and not plus_only:
        component = 1 if i % 2 == 0 else -1
    return sample_unit(spec, f"{seed}/{i}", entry_bound, component=component)


def _batches(spec, cols, seed, point_budget, batch, entry_bound, plus_only, pool):
    used = 0
    while used < point_budget:
        size = min(batch, point_budget - used)
        points = [_integral_point(_oracle_point(spec, seed, used + t, entry_bound, plus_only))
                  for t in range(size)]
        args = [(p, cols) for p in points]
        yield list(pool.map(_evaluation_row, args)) if pool else [_evaluation_row(a) for a in args]
        used += size


def _modular_full_rank(spec, cols, seed, point_budget, batch, entry_bound, plus_only, pool):
    """Points needed for full column rank mod p, or None if the mod-p rank stalls."""
    rows: list[list[int]] = []
    quiet, last = 0, -1
    for chunk in _batches(spec, cols, seed, point_budget, batch, entry_bound, plus_only, pool):
        rows.extend(chunk)
        r = rank_mod_p(rows)
        if r == len(cols):
            return len(rows)
        quiet = quiet + 1 if r == last else 0
        last = r
        if quiet >= 2:
            return None
    return None


def graded_dim(spec: MonoidSpec, d: int, seed: int = 0, point_budget: int | None = None,
               batch: int = 32, entry_bound: int = 3, plus_only: bool = False,
               jobs: int = 1, modular_filter: bool = True) -> OracleResult:
    """Rank of the (points x degree-d monomials) evaluation matrix on sampled units.

    Homogeneous monomials let every point be rescaled to an integer matrix
    without changing the rank.  Points are added in batches until two
    consecutive batches leave the rank unchanged (or the rank hits the
    column count).  With ``modular_filter`` a rank mod p is tried first; it
    only ever settles the answer when it proves full column rank, since the
    mod-p rank is a lower bound for the rank over Q.  Otherwise the rank is
    computed exactly over Q.
    """
    if not spec.field.is_rational:
        raise ValueError("the evaluation oracle runs over Q only")
    cols = monomials(spec.n, d)
    if point_budget is None:
        point_budget = 4 * len(cols)
    stream = (spec, cols, seed, point_budget, batch, entry_bound, plus_only)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        if modular_filter:
            used = _modular_full_rank(*stream, pool)
            if used is not None:
                return OracleResult(len(cols), used, len(cols))
        ech = IntegerEchelon(len(cols))
        used = 0
        quiet = 0
        for rows in _batches(*stream, pool):
            before = ech.rank
            for row in rows:
                ech.add(row)
                if ech.rank == len(cols):
                    break
            used += len(rows)
            if ech.rank == len(cols):
                return OracleResult(ech.rank, used, len(cols))
            quiet = quiet + 1 if ech.rank == before else 0
            if quiet >= 2:
                return OracleResult(ech.rank, used, len(cols))
    finally:
        if pool:
            pool.shutdown()
    raise OracleNotStable(ech.rank, used)


def verify_hwc_identity(spec: MonoidSpec, d: int, seed: int = 0, **oracle_kw) -> dict:
    """Compare dim K[M]_d from the oracle with the square sum of Weyl dimensions."""
    square_sum = graded_square_sum(spec, d)
    res = graded_dim(spec, d, seed, **oracle_kw)
    return {
        "spec": {"kind": spec.kind.value, "n": spec.n, "field": str(spec.field)},
        "degree": d,
        "graded_dim": res.rank,
        "square_sum": square_sum,
        "equal": res.rank == square_sum,
        "points_used": res.points_used,
        "seed": seed,
    }
