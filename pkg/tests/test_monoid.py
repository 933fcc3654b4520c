import random
from fractions import Fraction

import pytest

from monoidrep import exact
from monoidrep.exact import Field, Matrix, Q
from monoidrep.forms import form_eval
from monoidrep.monoid import (
    Kind, MonoidSpec, NotAMember, OrbitClass, classify_orbit, idempotent,
    idempotents_in_torus_closure, is_member, is_unit, orbit_witness, reflection,
    sample_member, sample_unit, similitude_factor, torus_closure_contains,
    _skew_generator,
)

from oracles import diagonal_idempotent_members, one_sided_counterexamples

SP4 = MonoidSpec(Kind.SYMPLECTIC, 4)
FORM_KINDS = [Kind.ORTHOGONAL, Kind.SYMPLECTIC]


def D(*vals, field=Q):
    return Matrix.diag(vals, field)


class TestSimilitude:
    def test_examples(self):
        assert similitude_factor(SP4, Matrix.identity(4)) == 1
        assert similitude_factor(SP4, Matrix.zeros(4)) == 0
        assert similitude_factor(SP4, Matrix.identity(4).scale(2)) == 4

    def test_one_sided_condition_not_enough(self):
        A = next(one_sided_counterexamples("symplectic", 4))
        A = Matrix.from_rows(A)
        J = SP4.J
        assert (A.T @ J @ A).is_zero() and not (A @ J @ A.T).is_zero()
        assert similitude_factor(SP4, A) is None

    def test_full_has_no_factor(self):
        with pytest.raises(ValueError):
            similitude_factor(MonoidSpec(Kind.FULL, 2), Matrix.identity(2))

    def test_shape_checked(self):
        with pytest.raises(exact.DimensionMismatch):
            similitude_factor(SP4, Matrix.identity(2))
        with pytest.raises(exact.FieldMismatch):
            similitude_factor(SP4, Matrix.identity(4, Field(7)))


class TestMembership:
    def test_full(self):
        assert is_member(MonoidSpec(Kind.FULL, 3), Matrix.from_rows([[1, 2, 3], [0, 0, 0], [5, 5, 5]]))

    def test_symplectic_diagonals(self):
        assert is_member(SP4, D(1, 0, 0, 0))
        assert similitude_factor(SP4, D(1, 0, 0, 0)) == 0
        assert not is_member(SP4, D(1, 0, 0, 1))

    def test_units(self):
        assert is_unit(SP4, Matrix.identity(4))
        assert not is_unit(SP4, Matrix.zeros(4))
        assert is_unit(SP4, SP4.J)
        assert similitude_factor(SP4, SP4.J) == 1
        assert is_unit(MonoidSpec(Kind.FULL, 2), Matrix.from_rows([[1, 1], [0, 1]]))

    def test_sp2_is_everything(self):
        spec = MonoidSpec(Kind.SYMPLECTIC, 2)
        rng = random.Random(0)
        for _ in range(50):
            A = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
            assert similitude_factor(spec, A) == exact.det(A)


class TestIdempotents:
    def test_examples(self):
        sp2 = idempotents_in_torus_closure(MonoidSpec(Kind.SYMPLECTIC, 2))
        assert sp2 == [D(0, 0), D(1, 0), D(0, 1), D(1, 1)]
        assert len(idempotents_in_torus_closure(SP4)) == 10
        assert len(idempotents_in_torus_closure(MonoidSpec(Kind.FULL, 2))) == 4

    @pytest.mark.parametrize("kind", [Kind.FULL, Kind.ORTHOGONAL, Kind.SYMPLECTIC])
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_matches_brute_force(self, kind, n):
        if kind is Kind.SYMPLECTIC and n % 2:
            pytest.skip("symplectic needs even n")
        spec = MonoidSpec(kind, n)
        got = idempotents_in_torus_closure(spec)
        supports = [frozenset(i for i, x in enumerate(e.diagonal()) if x) for e in got]
        assert sorted(map(sorted, supports)) == sorted(map(sorted, diagonal_idempotent_members(kind.value, n)))
        assert len(set(supports)) == len(supports)
        m = n // 2
        assert len(got) == (2 ** n if kind is Kind.FULL else 3 ** m + 1)
        for e in got:
            assert e @ e == e
            assert is_member(spec, e)
            if kind is not Kind.FULL:
                assert similitude_factor(spec, e) in (0, 1)
        assert got[-1] == Matrix.identity(n)
        sizes = [len(s) for s in supports[:-1]]
        assert sizes == sorted(sizes)


class TestTorusClosure:
    def test_examples(self):
        assert torus_closure_contains(MonoidSpec(Kind.SYMPLECTIC, 2), D(2, 3))
        assert not torus_closure_contains(SP4, D(1, 1, 1, 2))
        assert torus_closure_contains(SP4, D(1, 0, 0, 0))
        assert torus_closure_contains(MonoidSpec(Kind.FULL, 3), D(0, 5, 7))

    def test_non_diagonal(self):
        with pytest.raises(ValueError):
            torus_closure_contains(SP4, SP4.J)

    @pytest.mark.parametrize("kind", FORM_KINDS)
    def test_agrees_with_membership_on_diagonals(self, kind):
        spec = MonoidSpec(kind, 4)
        rng = random.Random(9)
        for _ in range(200):
            d = D(*[rng.choice([0, 1, 2, -1, 3]) for _ in range(4)])
            assert torus_closure_contains(spec, d) == is_member(spec, d)


class TestOrbits:
    def test_examples(self):
        assert classify_orbit(SP4, Matrix.identity(4)) == OrbitClass.unit_class(1)
        for e in idempotents_in_torus_closure(SP4)[:-1]:
            r = sum(1 for x in e.diagonal() if x)
            assert classify_orbit(SP4, e) == OrbitClass.singular(r)

    def test_non_member(self):
        with pytest.raises(NotAMember):
            classify_orbit(SP4, D(1, 0, 0, 1))

    def test_orthogonal_components(self):
        spec = MonoidSpec(Kind.ORTHOGONAL, 4)
        assert classify_orbit(spec, Matrix.identity(4)).component == 1
        assert classify_orbit(spec, reflection(spec)).component == -1
        for s in range(10):
            assert classify_orbit(spec, sample_unit(spec, s, component=1)).component == 1
            assert classify_orbit(spec, sample_unit(spec, s, component=-1)).component == -1

    @pytest.mark.parametrize("kind", [Kind.FULL, Kind.ORTHOGONAL, Kind.SYMPLECTIC])
    def test_invariance_under_units(self, kind):
        spec = MonoidSpec(kind, 4)
        for s in range(15):
            A = sample_member(spec, s)
            g, h = sample_unit(spec, 100 + s), sample_unit(spec, 200 + s)
            assert classify_orbit(spec, g @ A @ h) == classify_orbit(spec, A)

    def test_orthogonal_component_is_multiplicative(self):
        spec = MonoidSpec(Kind.ORTHOGONAL, 4)
        for s in range(15):
            A = sample_member(spec, s)
            g, h = sample_unit(spec, 100 + s, component=None), sample_unit(spec, 200 + s, component=None)
            before, after = classify_orbit(spec, A), classify_orbit(spec, g @ A @ h)
            if before.unit:
                sign = classify_orbit(spec, g).component * classify_orbit(spec, h).component
                assert after == OrbitClass.unit_class(before.component * sign)
            else:
                assert after == before

    def test_json(self):
        assert OrbitClass.unit_class(-1).to_json() == {"class": "unit", "component": -1}
        assert OrbitClass.singular(2).to_json() == {"class": "singular", "rank": 2}
        assert OrbitClass.from_json({"class": "singular", "rank": 2}) == OrbitClass.singular(2)


class TestWitness:
    def test_canonical_input(self):
        e = idempotent(SP4, [1])
        g, h, out = orbit_witness(SP4, e)
        assert (g, h, out) == (Matrix.identity(4), Matrix.identity(4), e)

    def test_full_rank_normal_form(self):
        spec = MonoidSpec(Kind.FULL, 4)
        A = Matrix.from_rows([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1], [1, 3, 3, 5]])
        g, h, e = orbit_witness(spec, A)
        assert g @ A @ h == e
        assert sum(1 for x in e.diagonal() if x) == exact.rank(A) == 2

    @pytest.mark.parametrize("kind,n", [(Kind.SYMPLECTIC, 4), (Kind.SYMPLECTIC, 6),
                                        (Kind.ORTHOGONAL, 4), (Kind.ORTHOGONAL, 5),
                                        (Kind.ORTHOGONAL, 3), (Kind.FULL, 3)])
    def test_round_trip(self, kind, n):
        spec = MonoidSpec(kind, n)
        for s in range(6):
            for r in range(spec.max_singular_rank + (0 if kind is Kind.FULL else 1)):
                A = sample_member(spec, s, r)
                g, h, e = orbit_witness(spec, A)
                assert g @ A @ h == e
                assert is_unit(spec, g) and is_unit(spec, h)
                assert e in idempotents_in_torus_closure(spec)
                assert classify_orbit(spec, e) == classify_orbit(spec, A)

    def test_round_trip_over_fp(self):
        spec = MonoidSpec(Kind.SYMPLECTIC, 4, Field(101))
        for s in range(5):
            A = sample_member(spec, s, 1 + s % 2)
            g, h, e = orbit_witness(spec, A)
            assert g @ A @ h == e

    def test_rejects_units_and_non_members(self):
        with pytest.raises(ValueError):
            orbit_witness(SP4, Matrix.identity(4))
        with pytest.raises(NotAMember):
            orbit_witness(SP4, D(1, 0, 0, 1))


class TestSampling:
    @pytest.mark.parametrize("kind,n", [(Kind.ORTHOGONAL, 2), (Kind.ORTHOGONAL, 5),
                                        (Kind.SYMPLECTIC, 2), (Kind.SYMPLECTIC, 6)])
    def test_skew_generator(self, kind, n):
        spec = MonoidSpec(kind, n)
        S = _skew_generator(spec, random.Random(1), 3)
        J = spec.J
        assert (S.T @ J + J @ S).is_zero()

    @pytest.mark.parametrize("kind", [Kind.FULL, Kind.ORTHOGONAL, Kind.SYMPLECTIC])
    def test_units(self, kind):
        spec = MonoidSpec(kind, 4)
        for s in range(10):
            A = sample_unit(spec, s, component=None)
            assert is_unit(spec, A)
            assert sample_unit(spec, s, component=None) == A

    def test_fp_units(self):
        spec = MonoidSpec(Kind.ORTHOGONAL, 4, Field(5))
        for s in range(10):
            assert is_unit(spec, sample_unit(spec, s))

    def test_member_rank_choice(self):
        assert sample_member(SP4, 3, 0) == Matrix.zeros(4)
        for s in range(5):
            for r in range(3):
                A = sample_member(SP4, s, r)
                assert is_member(SP4, A)
                assert classify_orbit(SP4, A) == OrbitClass.singular(r)
        with pytest.raises(ValueError):
            sample_member(SP4, 0, 3)


@pytest.mark.parametrize("kind", FORM_KINDS)
@pytest.mark.parametrize("n", [2, 4, 6])
def test_multiplicative_closure(kind, n):
    spec = MonoidSpec(kind, n)
    for s in range(10):
        A, B = sample_member(spec, s), sample_member(spec, 1000 + s)
        cA, cB = similitude_factor(spec, A), similitude_factor(spec, B)
        assert similitude_factor(spec, A @ B) == cA * cB


@pytest.mark.parametrize("kind", FORM_KINDS)
def test_singular_members_are_totally_isotropic(kind):
    spec = MonoidSpec(kind, 6)
    for s in range(5):
        A = sample_member(spec, s, 1 + s % 3)
        cols = [list(A.col(j)) for j in range(6)]
        rows = [list(A.row(i)) for i in range(6)]
        for vecs in (cols, rows):
            for v in vecs:
                for w in vecs:
                    assert form_eval(kind.form, 6, v, w) == 0
