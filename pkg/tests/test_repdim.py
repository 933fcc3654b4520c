import itertools
from collections import Counter
from math import comb

import pytest

from monoidrep.monoid import Kind, MonoidSpec
from monoidrep.repdim import DimTable, dim_nabla, graded_square_sum, ssyt_count
from monoidrep.weights import RootDatum, Weight, xd_dominant_enumerate

A2 = RootDatum.type_a(2)
C2 = RootDatum.type_c(2)
SP4 = MonoidSpec(Kind.SYMPLECTIC, 4)


def partitions_upto(cells, parts):
    for size in range(cells + 1):
        for p in itertools.product(range(size, -1, -1), repeat=parts):
            if sum(p) == size and all(p[i] >= p[i + 1] for i in range(parts - 1)):
                yield p


def test_dim_examples():
    assert dim_nabla(A2, Weight.A(1, 0)) == 2
    assert dim_nabla(A2, Weight.A(2, 0)) == 3
    assert dim_nabla(C2, Weight.C((1, 1), 0)) == 5
    assert dim_nabla(C2, Weight.C((0, 0), 7)) == 1


def test_sp4_exterior_square_by_weights():
    # weights of the natural module in (a; k) coordinates
    natural = [Weight.C((1, 0), 0), Weight.C((0, 1), 0), Weight.C((0, -1), 1), Weight.C((-1, 0), 1)]
    ext2 = Counter(x + y for x, y in itertools.combinations(natural, 2))
    assert sum(ext2.values()) == 6
    # the trivial-on-Sp summand is the similitude character (0,0;1)
    ext2[Weight.C((0, 0), 1)] -= 1
    assert sum(ext2.values()) == dim_nabla(C2, Weight.C((1, 1), 0)) == 5
    assert dim_nabla(C2, Weight.C((1, 0), 0)) == len(natural)


def test_non_dominant():
    with pytest.raises(ValueError):
        dim_nabla(A2, Weight.A(0, 1))


def test_ssyt_examples():
    assert ssyt_count(2, (1,)) == 2
    assert ssyt_count(2, (2,)) == 3
    assert ssyt_count(3, (1, 1)) == 3
    with pytest.raises(ValueError):
        ssyt_count(1, (1, 1))


def brute_ssyt(n, shape):
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    count = 0
    for vals in itertools.product(range(1, n + 1), repeat=len(cells)):
        f = dict(zip(cells, vals))
        if all(f[i, j] <= f[i, j + 1] for i, j in cells if (i, j + 1) in f) and \
                all(f[i, j] < f[i + 1, j] for i, j in cells if (i + 1, j) in f):
            count += 1
    return count


def test_ssyt_against_brute_force():
    for n in range(1, 4):
        for p in partitions_upto(5, n):
            assert ssyt_count(n, p) == brute_ssyt(n, [x for x in p if x])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weyl_matches_tableaux(n):
    rd = RootDatum.type_a(n)
    for p in partitions_upto(8, n):
        assert dim_nabla(rd, Weight("A", p)) == ssyt_count(n, p)


def test_central_shift_invariance():
    rd = RootDatum.type_a(3)
    for p in partitions_upto(5, 3):
        lam = Weight("A", p)
        assert dim_nabla(rd, lam + Weight.A(1, 1, 1)) == dim_nabla(rd, lam)
    for mu in xd_dominant_enumerate(SP4, 4):
        assert dim_nabla(C2, mu + Weight.C((0, 0), 1)) == dim_nabla(C2, mu)
    assert dim_nabla(C2, C2.zero()) == 1 == dim_nabla(A2, A2.zero())


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", range(5))
def test_schur_identity(n, d):
    total = sum(ssyt_count(n, p) ** 2 for p in partitions_upto(d, n) if sum(p) == d)
    assert total == comb(n * n + d - 1, d) == graded_square_sum(MonoidSpec(Kind.FULL, n), d)


def test_square_sum_examples():
    assert graded_square_sum(MonoidSpec(Kind.FULL, 2), 2) == 10
    assert graded_square_sum(SP4, 1) == 16
    assert graded_square_sum(SP4, 2) == 126
    with pytest.raises(ValueError):
        graded_square_sum(MonoidSpec(Kind.ORTHOGONAL, 4), 1)


def test_dim_table():
    t = DimTable.build(SP4, 2)
    assert [w for w, _ in t.entries] == xd_dominant_enumerate(SP4, 2)
    assert [d for _, d in t.entries] == [10, 5, 1]
    assert DimTable.build(SP4, 3, jobs=3) == DimTable.build(SP4, 3)
    obj = t.to_json()
    assert obj["degree"] == 2 and obj["entries"][0] == {"weight": {"type": "C", "a": [2, 0], "k": 0}, "dim": 10}
