"""Weight lattices of types A and C, the weight monoid X(D), dominance and saturation.

Type C weights are written ``(a_1..a_m; k)``: the character
``diag(t_1..t_m, c/t_m..c/t_1) -> prod t_i^{a_i} * c^k`` of the similitude
torus.  The diagonal coordinates of the symplectic monoid are then
``(e_i; 0)`` and ``(-e_i; 1)``, every root has degree zero, and the last
simple root is ``(2 e_m; -1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import Matrix, rref
from .monoid import Kind, MonoidSpec


class ShapeMismatch(ValueError):
    pass


class UnsupportedKind(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Weight:
    type: str
    a: tuple[int, ...]
    k: int = 0

    def __post_init__(self):
        if self.type not in ("A", "C"):
            raise ValueError(f"weight type must be 'A' or 'C', got {self.type!r}")
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.type == "A" and self.k:
            raise ValueError("type A weights carry no similitude coordinate")

    @classmethod
    def A(cls, *a: int) -> Weight:
        return cls("A", a)

    @classmethod
    def C(cls, a: Iterable[int], k: int = 0) -> Weight:
        return cls("C", tuple(a), k)

    @property
    def degree(self) -> int:
        return sum(self.a) + (2 * self.k if self.type == "C" else 0)

    @property
    def coords(self) -> tuple[int, ...]:
        """Flat integer coordinates; type C appends k."""
        return self.a + ((self.k,) if self.type == "C" else ())

    @classmethod
    def from_coords(cls, type_: str, coords) -> Weight:
        coords = tuple(coords)
        if type_ == "C":
            return cls("C", coords[:-1], coords[-1])
        return cls("A", coords)

    def __add__(self, other: Weight) -> Weight:
        _same_shape(self, other)
        return Weight.from_coords(self.type, (x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: Weight) -> Weight:
        _same_shape(self, other)
        return Weight.from_coords(self.type, (x - y for x, y in zip(self.coords, other.coords)))

    def scale(self, t: int) -> Weight:
        return Weight.from_coords(self.type, (t * x for x in self.coords))

    def to_json(self) -> dict:
        out = {"type": self.type, "a": list(self.a)}
        if self.type == "C":
            out["k"] = self.k
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> Weight:
        return cls(obj["type"], tuple(obj["a"]), int(obj.get("k", 0)))

    def __str__(self):
        body = ",".join(map(str, self.a))
        return f"({body};{self.k})" if self.type == "C" else f"({body})"


def _same_shape(x: Weight, y: Weight) -> None:
    if x.type != y.type or len(x.a) != len(y.a):
        raise ShapeMismatch(f"weights {x} and {y} have different shapes")


@dataclass(frozen=True)
class RootDatum:
    """Root datum of GL_n (type A) or GSp_{2m} (type C) in weight coordinates.

    Roots are stored as flat coordinate vectors (including the k-part for
    type C); coroots as integer functionals on the ``a`` coordinates.
    """

    type: str
    rank: int
    simple_roots: tuple[tuple[int, ...], ...] = field(repr=False)
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)
    positive_coroots: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def type_a(cls, n: int) -> RootDatum:
        def e(i):
            return tuple(int(t == i) for t in range(n))

        def diff(i, j):
            return tuple(x - y for x, y in zip(e(i), e(j)))

        simple = tuple(diff(i, i + 1) for i in range(n - 1))
        pos = tuple(diff(i, j) for i in range(n) for j in range(i + 1, n))
        return cls("A", n, simple, pos, pos)

    @classmethod
    def type_c(cls, m: int) -> RootDatum:
        def vec(coeffs: dict, k=0):
            return tuple(coeffs.get(t, 0) for t in range(m)) + (k,)

        def functional(coeffs: dict):
            return tuple(coeffs.get(t, 0) for t in range(m))

        simple = [vec({i: 1, i + 1: -1}) for i in range(m - 1)] + [vec({m - 1: 2}, -1)]
        pos, co = [], []
        for i in range(m):
            for j in range(i + 1, m):
                pos.append(vec({i: 1, j: -1}))
                co.append(functional({i: 1, j: -1}))
                pos.append(vec({i: 1, j: 1}, -1))
                co.append(functional({i: 1, j: 1}))
            pos.append(vec({i: 2}, -1))
            co.append(functional({i: 1}))
        return cls("C", m, tuple(simple), tuple(pos), tuple(co))

    @classmethod
    def for_spec(cls, spec: MonoidSpec) -> RootDatum:
        if spec.kind is Kind.FULL:
            return cls.type_a(spec.n)
        if spec.kind is Kind.SYMPLECTIC:
            return cls.type_c(spec.n // 2)
        raise UnsupportedKind("weight combinatorics is not provided for the orthogonal monoid")

    @classmethod
    def for_weight(cls, lam: Weight) -> RootDatum:
        return cls.type_a(len(lam.a)) if lam.type == "A" else cls.type_c(len(lam.a))

    @property
    def simple_coroots(self) -> tuple[tuple[int, ...], ...]:
        if self.type == "A":
            return self.simple_roots
        m = self.rank
        return tuple(tuple(int(t == i) - int(t == i + 1) for t in range(m)) for i in range(m - 1)) + (
            tuple(int(t == m - 1) for t in range(m)),)

    @property
    def two_rho(self) -> tuple[int, ...]:
        """Sum of the positive roots (twice the Weyl vector), full coordinates."""
        width = len(self.positive_roots[0]) if self.positive_roots else self._width
        return tuple(sum(r[t] for r in self.positive_roots) for t in range(width))

    @property
    def _width(self) -> int:
        return self.rank + (1 if self.type == "C" else 0)

    def zero(self) -> Weight:
        return Weight.from_coords(self.type, (0,) * self._width)

    def check(self, lam: Weight) -> None:
        if lam.type != self.type or len(lam.a) != self.rank:
            raise ShapeMismatch(f"weight {lam} does not match root datum {self.type}{self.rank}")

    def pairing(self, lam: Weight, coroot: tuple[int, ...]) -> int:
        return sum(x * y for x, y in zip(lam.a, coroot))

    def simple_root_weights(self) -> list[Weight]:
        return [Weight.from_coords(self.type, r) for r in self.simple_roots]


def is_dominant(rd: RootDatum, lam: Weight) -> bool:
    rd.check(lam)
    return all(rd.pairing(lam, c) >= 0 for c in rd.simple_coroots)


def simple_root_coefficients(rd: RootDatum, delta: Weight) -> list[Fraction] | None:
    """Solve delta = sum c_i alpha_i exactly; None when delta is outside the root span."""
    rd.check(delta)
    coords = delta.coords
    # augmented system: columns are simple roots, rows are coordinates
    rows = [[r[t] for r in rd.simple_roots] + [coords[t]] for t in range(len(coords))]
    ncols = len(rd.simple_roots)
    if ncols == 0:
        return [] if not any(coords) else None
    R, pivots = rref(Matrix.from_rows(rows))
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = R[i, ncols]
    return sol


def dominance_leq(rd: RootDatum, lam: Weight, mu: Weight) -> bool:
    """lam <= mu iff mu - lam is a nonnegative integer sum of simple roots."""
    rd.check(lam)
    rd.check(mu)
    coeffs = simple_root_coefficients(rd, mu - lam)
    if coeffs is None:
        return False
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


def xd_contains(spec: MonoidSpec, lam: Weight) -> bool:
    """Membership in the character monoid of the diagonal closure."""
    rd = RootDatum.for_spec(spec)
    rd.check(lam)
    if spec.kind is Kind.FULL:
        return all(x >= 0 for x in lam.a)
    return lam.k >= sum(max(0, -x) for x in lam.a) and lam.degree >= 0


def _partitions(total: int, parts: int, largest: int | None = None):
    """Weakly decreasing nonnegative tuples of length ``parts`` summing to ``total``, descending lex."""
    largest = total if largest is None else min(largest, total)
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(largest, -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def xd_dominant_enumerate(spec: MonoidSpec, d: int) -> list[Weight]:
    rd = RootDatum.for_spec(spec)
    if d < 0:
        return []
    if spec.kind is Kind.FULL:
        return [Weight("A", p) for p in _partitions(d, rd.rank)]
    return [Weight("C", p, k)
            for k in range(d // 2 + 1)
            for p in _partitions(d - 2 * k, rd.rank)]


def _dominant_box(rd: RootDatum, degree: int, bound: int):
    """Dominant weights of the given degree with |a_i| <= bound."""
    if rd.type == "A":
        for a in itertools.product(range(bound, -bound - 1, -1), repeat=rd.rank):
            lam = Weight("A", a)
            if lam.degree == degree and is_dominant(rd, lam):
                yield lam
        return
    for a in itertools.product(range(bound, -1, -1), repeat=rd.rank):
        rest = degree - sum(a)
        if rest % 2 == 0:
            lam = Weight("C", a, rest // 2)
            if is_dominant(rd, lam):
                yield lam


def dominant_predecessors(rd: RootDatum, spec: MonoidSpec | None, mu: Weight) -> list[Weight]:
    """All dominant lam <= mu, sorted in descending order.

    Dominant predecessors lie in the convex hull of the Weyl orbit of mu,
    so every coordinate is bounded by max |mu_i|.
    """
    rd.check(mu)
    if not is_dominant(rd, mu):
        raise ValueError(f"{mu} is not dominant")
    bound = max((abs(x) for x in mu.a), default=0)
    out = [lam for lam in _dominant_box(rd, mu.degree, bound) if dominance_leq(rd, lam, mu)]
    return sorted(out, key=lambda w: (w.k, tuple(-x for x in w.a)))


def is_saturated(rd: RootDatum, spec: MonoidSpec | None, pi: Iterable[Weight]) -> bool:
    pi = set(pi)
    for mu in pi:
        if not is_dominant(rd, mu):
            raise ValueError(f"{mu} is not dominant")
    return all(lam in pi for mu in pi for lam in dominant_predecessors(rd, spec, mu))


def check_xd_plus_saturated(spec: MonoidSpec, d: int) -> bool:
    """Brute-force check that X(D)^+ is closed under dominant predecessors in degree d."""
    rd = RootDatum.for_spec(spec)
    for mu in xd_dominant_enumerate(spec, d):
        for lam in dominant_predecessors(rd, spec, mu):
            if not xd_contains(spec, lam):
                return False
    return True


def truncate_multiplicities(pi: Iterable[Weight], mult: Mapping[Weight, int]) -> dict[Weight, int]:
    """Keep multiplicities indexed by pi; all others become zero."""
    pi = set(pi)
    return {lam: (m if lam in pi else 0) for lam, m in mult.items()}
