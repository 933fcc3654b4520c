"""Dimensions of induced modules: Weyl's formula and a tableau-counting check."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .monoid import Kind, MonoidSpec
from .weights import (RootDatum, UnsupportedKind, Weight, is_dominant,
                      xd_dominant_enumerate)


def dim_nabla(rd: RootDatum, lam: Weight) -> int:
    """prod over positive coroots of <lam + rho, a^v> / <rho, a^v>.

    Pairings are taken against 2*rho so everything stays integral.
    """
    if not is_dominant(rd, lam):
        raise ValueError(f"{lam} is not dominant")
    two_rho = rd.two_rho
    rho_part = Weight.from_coords(rd.type, two_rho)
    num, den = 1, 1
    for co in rd.positive_coroots:
        r2 = rd.pairing(rho_part, co)
        num *= 2 * rd.pairing(lam, co) + r2
        den *= r2
    q, rem = divmod(num, den)
    assert rem == 0, f"Weyl quotient for {lam} is not integral"
    return q


def ssyt_count(n: int, partition) -> int:
    """Number of semistandard tableaux of the given shape with entries 1..n."""
    shape = [p for p in partition if p > 0]
    if len(shape) > n:
        raise ValueError(f"partition {tuple(partition)} has more than {n} parts")
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
        raise ValueError(f"{tuple(partition)} is not a partition")
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    filling: dict[tuple[int, int], int] = {}

    def fill(idx: int) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = filling[i, j - 1]
        if i > 0:
            lo = max(lo, filling[i - 1, j] + 1)
        # room is needed below for the rest of the column
        hi = n - (len([r for r in shape if r > j]) - 1 - i)
        total = 0
        for v in range(lo, hi + 1):
            filling[i, j] = v
            total += fill(idx + 1)
        filling.pop((i, j), None)
        return total

    return fill(0)


@dataclass(frozen=True)
class DimTable:
    spec: MonoidSpec
    degree: int
    entries: tuple[tuple[Weight, int], ...]

    @classmethod
    def build(cls, spec: MonoidSpec, degree: int, jobs: int = 1) -> DimTable:
        rd = RootDatum.for_spec(spec)
        weights = xd_dominant_enumerate(spec, degree)
        if jobs > 1:
            with ThreadPoolExecutor(jobs) as pool:
                dims = list(pool.map(lambda w: dim_nabla(rd, w), weights))
        else:
            dims = [dim_nabla(rd, w) for w in weights]
        return cls(spec, degree, tuple(zip(weights, dims)))

    def to_json(self) -> dict:
        return {
            "spec": {"kind": self.spec.kind.value, "n": self.spec.n, "field": str(self.spec.field)},
            "degree": self.degree,
            "entries": [{"weight": w.to_json(), "dim": d} for w, d in self.entries],
        }


def graded_square_sum(spec: MonoidSpec, d: int) -> int:
    """Sum of dim(nabla(lam))^2 over the dominant weights of X(D) in degree d."""
    if spec.kind not in (Kind.FULL, Kind.SYMPLECTIC):
        raise UnsupportedKind(f"no highest-weight theory shipped for {spec.kind.value}")
    return sum(dim * dim for _, dim in DimTable.build(spec, d).entries)
