"""The full, orthogonal and symplectic matrix monoids.

Membership uses the two-sided similitude test ``A^T J A = cJ = A J A^T``;
``c = 0`` is allowed and singles out the non-units.  Singular elements are
brought to a diagonal idempotent by form-preserving elimination
(transvections, reflections and a Levi correction).
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass

from . import exact
from .exact import DimensionMismatch, Field, FieldMismatch, Matrix, Q
from .forms import FormKind, check_form_constraints, form_sign, gram_matrix, partner


class Kind(enum.Enum):
    FULL = "full"
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"

    @property
    def form(self) -> FormKind | None:
        return {Kind.ORTHOGONAL: FormKind.ORTHOGONAL,
                Kind.SYMPLECTIC: FormKind.SYMPLECTIC}.get(self)


class NotAMember(ValueError):
    pass


class SamplingError(RuntimeError):
    pass


class WitnessError(RuntimeError):
    pass


@dataclass(frozen=True)
class MonoidSpec:
    kind: Kind
    n: int
    field: Field = Q

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.kind.form is not None:
            check_form_constraints(self.kind.form, self.n, self.field)

    @property
    def J(self) -> Matrix:
        return gram_matrix(self.kind.form, self.n, self.field)

    @property
    def max_singular_rank(self) -> int:
        return self.n if self.kind is Kind.FULL else self.n // 2

    def __str__(self):
        return f"{self.kind.value}:{self.n}:{self.field}"


@dataclass(frozen=True)
class OrbitClass:
    unit: bool
    component: int = 1
    rank: int = 0

    @classmethod
    def unit_class(cls, component: int = 1) -> OrbitClass:
        return cls(True, component=component, rank=0)

    @classmethod
    def singular(cls, rank: int) -> OrbitClass:
        return cls(False, component=0, rank=rank)

    def to_json(self) -> dict:
        if self.unit:
            return {"class": "unit", "component": self.component}
        return {"class": "singular", "rank": self.rank}

    @classmethod
    def from_json(cls, obj: dict) -> OrbitClass:
        if obj["class"] == "unit":
            return cls.unit_class(int(obj["component"]))
        return cls.singular(int(obj["rank"]))


def _check(spec: MonoidSpec, A: Matrix) -> None:
    if A.field != spec.field:
        raise FieldMismatch(f"matrix over {A.field}, monoid over {spec.field}")
    if (A.rows, A.cols) != (spec.n, spec.n):
        raise DimensionMismatch(f"expected {spec.n}x{spec.n}, got {A.rows}x{A.cols}")


def similitude_factor(spec: MonoidSpec, A: Matrix):
    """The scalar c with A^T J A = cJ = A J A^T, or None if there is none."""
    if spec.kind is Kind.FULL:
        raise ValueError("the full monoid has no similitude factor")
    _check(spec, A)
    J = spec.J
    left = A.T @ J @ A
    right = A @ J @ A.T
    c = left[0, spec.n - 1] / J[0, spec.n - 1]
    cJ = J.scale(c)
    if left != cJ or right != cJ:
        return None
    return c


def is_member(spec: MonoidSpec, A: Matrix) -> bool:
    if spec.kind is Kind.FULL:
        _check(spec, A)
        return True
    return similitude_factor(spec, A) is not None


def is_unit(spec: MonoidSpec, A: Matrix) -> bool:
    if spec.kind is Kind.FULL:
        _check(spec, A)
        return bool(exact.det(A))
    c = similitude_factor(spec, A)
    return c is not None and bool(c)


def _pair_avoiding(S, n: int) -> bool:
    return all(partner(i, n) not in S for i in S)


def idempotent(spec: MonoidSpec, S) -> Matrix:
    S = set(S)
    return Matrix.diag([1 if i in S else 0 for i in range(spec.n)], spec.field)


def idempotents_in_torus_closure(spec: MonoidSpec) -> list[Matrix]:
    """Diagonal 0/1 members, ordered by support size then lexicographically; I last."""
    n = spec.n
    out = []
    for r in range(n + 1):
        for S in itertools.combinations(range(n), r):
            if spec.kind is Kind.FULL or _pair_avoiding(S, n):
                if r < n:
                    out.append(idempotent(spec, S))
    out.append(Matrix.identity(n, spec.field))
    return out


def torus_closure_contains(spec: MonoidSpec, d: Matrix) -> bool:
    _check(spec, d)
    if not d.is_diagonal():
        raise ValueError("torus_closure_contains expects a diagonal matrix")
    if spec.kind is Kind.FULL:
        return True
    n = spec.n
    vals = d.diagonal()
    products = {vals[i] * vals[partner(i, n)] for i in range(n)}
    return len(products) == 1


def classify_orbit(spec: MonoidSpec, A: Matrix) -> OrbitClass:
    _check(spec, A)
    if spec.kind is Kind.FULL:
        if exact.det(A):
            return OrbitClass.unit_class(1)
        return OrbitClass.singular(exact.rank(A))
    c = similitude_factor(spec, A)
    if c is None:
        raise NotAMember(f"matrix is not in {spec.kind.value} monoid of size {spec.n}")
    if not c:
        return OrbitClass.singular(exact.rank(A))
    if spec.kind is Kind.ORTHOGONAL and spec.n % 2 == 0:
        d = exact.det(A)
        target = c ** (spec.n // 2)
        return OrbitClass.unit_class(1 if d == target else -1)
    return OrbitClass.unit_class(1)


# -- elimination ---------------------------------------------------------

def _pair(spec: MonoidSpec, x: list, y: list):
    n = spec.n
    s = spec.field.zero
    for i in range(n):
        if x[i]:
            s = s + x[i] * form_sign(spec.kind.form, i, n) * y[partner(i, n)]
    return s


def _outer_form(spec: MonoidSpec, w: list, coeff) -> Matrix:
    """I + coeff * w (J w)^T, i.e. v -> v + coeff * <v, w> w."""
    n = spec.n
    J = spec.J
    Jw = [sum((J[j, i] * w[i] for i in range(n)), spec.field.zero) for j in range(n)]
    one, zero = spec.field.one, spec.field.zero
    return Matrix(n, n, spec.field, tuple(
        (one if i == j else zero) + coeff * w[i] * Jw[j]
        for i in range(n) for j in range(n)))


def _move(spec: MonoidSpec, x: list, y: list) -> Matrix:
    """Isometry sending isotropic x to isotropic y; needs <x, y> != 0."""
    xy = _pair(spec, x, y)
    if spec.kind is Kind.SYMPLECTIC:
        # transvection along y - x
        w = [b - a for a, b in zip(x, y)]
        return _outer_form(spec, w, spec.field.one / xy)
    # reflection in x - y, which is anisotropic since <x-y, x-y> = -2<x, y>
    w = [a - b for a, b in zip(x, y)]
    return _outer_form(spec, w, spec.field(-2) / _pair(spec, w, w))


def _apply(g: Matrix, v: list) -> list:
    return [sum((g[i, j] * v[j] for j in range(g.cols) if v[j]), g.field.zero)
            for i in range(g.rows)]


def _to_basis_vector(spec: MonoidSpec, x: list, k: int, rng: random.Random, retries: int) -> Matrix:
    """Isometry supported on the window k..n-1-k sending isotropic x to e_k."""
    n, F = spec.n, spec.field
    e_k = [F(int(i == k)) for i in range(n)]
    if x == e_k:
        return Matrix.identity(n, F)
    if _pair(spec, x, e_k):
        return _move(spec, x, e_k)
    p = partner(k, n)
    window = range(k, n - k)

    def candidates():
        yield [F(int(i == p)) for i in range(n)]
        for j in window:
            if j != k:
                yield [F(int(i == p) + int(i == j)) for i in range(n)]
        for _ in range(retries):
            yield [F(rng.randint(-3, 3)) if i in window and i != k else F(int(i == p))
                   for i in range(n)]

    for y in candidates():
        # add a multiple of e_k to make y isotropic
        q = _pair(spec, y, y)
        b = _pair(spec, e_k, y) + _pair(spec, y, e_k)
        if q:
            if not b:
                continue
            y = [yi - (q / b) * ei for yi, ei in zip(y, e_k)]
        if _pair(spec, x, y) and _pair(spec, y, e_k):
            return _move(spec, y, e_k) @ _move(spec, x, y)
    raise WitnessError(f"no intermediate isotropic vector found in window {k}")


def _levi(spec: MonoidSpec, P: Matrix) -> Matrix:
    """Isometry acting as P on span(e_0..e_{r-1}), identity on the middle."""
    n, r, F = spec.n, P.rows, spec.field
    Pinv_T = exact.invert(P).T
    # R = F P^{-T} F, F the r x r anti-identity
    R = [[Pinv_T[r - 1 - i, r - 1 - j] for j in range(r)] for i in range(r)]
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(r):
        for j in range(r):
            rows[i][j] = P[i, j]
            rows[n - r + i][n - r + j] = R[i][j]
    for i in range(r, n - r):
        rows[i][i] = F.one
    return Matrix.from_rows(rows, F)


def _isotropic_frame(spec: MonoidSpec, U: Matrix, rng: random.Random, retries: int) -> Matrix:
    """Isometry g with g U = [e_0 .. e_{r-1}] for U with independent isotropic columns."""
    n, r, F = spec.n, U.cols, spec.field
    g = Matrix.identity(n, F)
    for k in range(r):
        cur = [_apply(g, list(U.col(i))) for i in range(r)]
        x = None
        for v in cur[k:]:
            proj = [v[i] if k <= i < n - k else F.zero for i in range(n)]
            if any(proj):
                x = proj
                break
        if x is None:
            raise WitnessError("columns are not independent")
        g = _to_basis_vector(spec, x, k, rng, retries) @ g
    gU = g @ U
    P = Matrix.from_rows([gU.row(i) for i in range(r)], F)
    if any(gU.row(i)[j] for i in range(r, n) for j in range(r)):
        raise WitnessError("image is not the standard isotropic subspace")
    return _levi(spec, exact.invert(P)) @ g


def _gl_frame(U: Matrix) -> Matrix:
    """Invertible g with g U = [e_0 .. e_{r-1}] (classical elimination)."""
    n, r, F = U.rows, U.cols, U.field
    cols = [list(U.col(j)) for j in range(r)]
    for i in range(n):
        e = [F(int(t == i)) for t in range(n)]
        trial = Matrix.from_rows(list(zip(*(cols + [e]))), F)
        if exact.rank(trial) == len(cols) + 1:
            cols.append(e)
        if len(cols) == n:
            break
    X = Matrix.from_rows(list(zip(*cols)), F)
    return exact.invert(X)


def _rank_factor(A: Matrix) -> tuple[Matrix, Matrix]:
    """A = U @ W.T with U the pivot columns of A and W.T the nonzero rows of rref(A)."""
    R, pivots = exact.rref(A)
    r = len(pivots)
    U = Matrix.from_rows([[A[i, j] for j in pivots] for i in range(A.rows)], A.field)
    Wt = Matrix.from_rows([R.row(i) for i in range(r)], A.field)
    return U, Wt.T


def orbit_witness(spec: MonoidSpec, A: Matrix, retries: int = 64):
    """Units g, h and a canonical idempotent e with g @ A @ h == e."""
    _check(spec, A)
    F = spec.field
    I = Matrix.identity(spec.n, F)
    if spec.kind is not Kind.FULL:
        c = similitude_factor(spec, A)
        if c is None:
            raise NotAMember(f"matrix is not in {spec.kind.value} monoid of size {spec.n}")
        if c:
            raise ValueError("orbit_witness needs a singular element; use classify_orbit for units")
    if A in idempotents_in_torus_closure(spec):
        return I, I, A
    r = exact.rank(A)
    e = idempotent(spec, range(r))
    if r == 0:
        return I, I, e
    U, W = _rank_factor(A)
    rng = random.Random(f"witness:{spec}:{r}")
    if spec.kind is Kind.FULL:
        g, h = _gl_frame(U), _gl_frame(W).T
    else:
        g = _isotropic_frame(spec, U, rng, retries)
        h = _isotropic_frame(spec, W, rng, retries).T
    if g @ A @ h != e or not is_unit(spec, g) or not is_unit(spec, h):
        raise WitnessError("elimination did not produce a valid witness")
    return g, h, e


# -- sampling ------------------------------------------------------------

def reflection(spec: MonoidSpec) -> Matrix:
    """The permutation matrix swapping e_1 and e_n."""
    n, F = spec.n, spec.field
    perm = list(range(n))
    perm[0], perm[n - 1] = n - 1, 0
    return Matrix.from_rows([[int(perm[i] == j) for j in range(n)] for i in range(n)], F)


def _skew_generator(spec: MonoidSpec, rng: random.Random, bound: int) -> Matrix:
    """Random S with S^T J + J S = 0."""
    n, F = spec.n, spec.field
    K = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-bound, bound)
            if spec.kind is Kind.ORTHOGONAL:
                if i != j:
                    K[i][j], K[j][i] = v, -v
            else:
                K[i][j] = K[j][i] = v
    # S = J^{-1} K with K antisymmetric (orthogonal) or symmetric (symplectic)
    J = spec.J
    return exact.invert(J) @ Matrix.from_rows(K, F)


def sample_unit(spec: MonoidSpec, seed: int | str, entry_bound: int = 3,
                component: int | None = 1, max_attempts: int = 1000) -> Matrix:
    """Seeded random unit of the monoid.

    Form kinds use a scaled Cayley transform of a random form-skew matrix.
    For the orthogonal kind, ``component=-1`` lands in the other component
    and ``component=None`` picks one at random.
    """
    rng = random.Random(f"unit:{spec}:{seed}:{entry_bound}")
    n, F = spec.n, spec.field
    I = Matrix.identity(n, F)
    for _ in range(max_attempts):
        if spec.kind is Kind.FULL:
            A = Matrix.from_rows([[rng.randint(-entry_bound, entry_bound) for _ in range(n)]
                                  for _ in range(n)], F)
            if exact.det(A):
                return A
            continue
        S = _skew_generator(spec, rng, entry_bound)
        inv = exact.invert(I - S)
        z = F(rng.choice([v for v in range(-entry_bound, entry_bound + 1) if v]))
        if inv is None or not z:
            continue
        A = (inv @ (I + S)).scale(z)
        if spec.kind is Kind.ORTHOGONAL:
            comp = rng.choice((1, -1)) if component is None else component
            if comp == -1:
                A = A @ reflection(spec)
        return A
    raise SamplingError(f"no unit found for {spec} after {max_attempts} attempts")


def sample_member(spec: MonoidSpec, seed: int, rank_choice: int | None = None,
                  entry_bound: int = 3) -> Matrix:
    """g @ e @ h for sampled units g, h and an idempotent e."""
    if rank_choice is not None:
        if not 0 <= rank_choice <= spec.max_singular_rank:
            raise ValueError(
                f"rank_choice {rank_choice} outside 0..{spec.max_singular_rank} for {spec.kind.value}")
        e = idempotent(spec, range(rank_choice))
    else:
        rng = random.Random(f"member:{spec}:{seed}")
        e = rng.choice(idempotents_in_torus_closure(spec))
    g = sample_unit(spec, 2 * seed, entry_bound, component=None)
    h = sample_unit(spec, 2 * seed + 1, entry_bound, component=None)
    return g @ e @ h
