import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoalg import ActionTensor, FiniteAlgebra, LinearMap, check_action, check_algebra, check_morphism
from twoalg.algebra import check_algebra_exhaustive, mul
from twoalg.errors import DomainError
from twoalg.oracle import enumerate_algebra_morphisms, enumerate_algebras


@st.composite
def raw_tables(draw, moduli=(2, 3, 4), max_rank=2):
    m = draw(st.sampled_from(moduli))
    d = draw(st.integers(1, max_rank))
    entries = draw(st.lists(st.integers(0, m - 1), min_size=d**3, max_size=d**3))
    return FiniteAlgebra(m, np.array(entries).reshape(d, d, d))


class TestProduct:
    def test_x_squared_vanishes(self, D):
        x = D.gen(1)
        assert mul(D, x, x).is_zero()

    def test_one_plus_x_squared(self, D):
        y = D.element([1, 1])
        assert mul(D, y, y) == D.one()

    def test_zero_annihilates(self, D):
        for y in D.elements():
            assert mul(D, D.zero(), y).is_zero()

    def test_parent_mismatch(self, D, Z2):
        with pytest.raises(DomainError):
            mul(D, D.gen(0), Z2.gen(0))

    def test_element_arithmetic(self, Z4):
        a = Z4.element([3])
        assert (a + a).coords == (2,)
        assert (-a).coords == (1,)
        assert (a * a).coords == (1,)
        assert (2 * a).coords == (2,)


class TestCheckAlgebra:
    def test_dual_numbers(self, D):
        assert check_algebra(D).ok

    def test_scalars(self, Z2):
        assert check_algebra(Z2).ok

    def test_noncommutative_table(self):
        c = np.zeros((2, 2, 2), dtype=np.int64)
        c[0, 1, 0] = 1
        c[1, 0, 1] = 1
        rep = check_algebra(FiniteAlgebra(2, c))
        assert rep.failed("COMM")
        assert rep.get("COMM").witness == (0, 1)

    def test_wrong_unit(self, D):
        rep = check_algebra(FiniteAlgebra(2, D.mul_table, unit=[0, 1]))
        assert rep.failed("UNIT")

    def test_non_associative(self):
        # e0 e0 = e1, everything else zero except e1 e0 = e0 e1 = e0
        c = np.zeros((2, 2, 2), dtype=np.int64)
        c[0, 0, 1] = 1
        c[0, 1, 0] = c[1, 0, 0] = 1
        rep = check_algebra(FiniteAlgebra(2, c))
        assert rep.passed("COMM") and rep.failed("ASSOC")

    @settings(max_examples=120, deadline=None)
    @given(raw_tables())
    def test_basis_check_agrees_with_elementwise(self, A):
        basis = check_algebra(A)
        full = check_algebra_exhaustive(A)
        assert basis.passed("COMM") == full.passed("COMM")
        assert basis.passed("ASSOC") == full.passed("ASSOC")

    def test_element_laws_on_enumerated_algebras(self):
        for A in enumerate_algebras(2, 2):
            xs = list(A.elements())
            for x in xs:
                for y in xs:
                    assert x * y == y * x
                    for z in xs:
                        assert (x * y) * z == x * (y * z)

    def test_shape_validation(self):
        with pytest.raises(DomainError):
            FiniteAlgebra(2, np.zeros((2, 2, 3)))
        with pytest.raises(DomainError):
            FiniteAlgebra(1, [[[1]]])


class TestCheckMorphism:
    def test_identity(self, D):
        assert check_morphism(LinearMap.identity(2, 2), D, D, unital=True).ok

    def test_quotient_by_nilpotent(self, D, Z2):
        assert check_morphism(LinearMap(2, [[1, 0]]), D, Z2, unital=True).ok

    def test_unit_to_nilpotent(self, D, Z2):
        rep = check_morphism(LinearMap(2, [[0], [1]]), Z2, D)
        assert not rep.ok
        assert rep.failures()[0].witness == (0, 0)

    def test_composites_of_morphisms(self, D):
        homs = enumerate_algebra_morphisms(D, D, unital=True)
        assert homs
        for f in homs:
            for g in homs:
                assert check_morphism(f @ g, D, D, unital=True).ok

    def test_shape_mismatch(self, D, Z2):
        with pytest.raises(DomainError):
            check_morphism(LinearMap.identity(2, 2), Z2, D)


class TestCheckAction:
    def test_scalars_on_nilpotent_ideal(self, Z2):
        C = FiniteAlgebra.zero_mult(2, 1)
        assert check_action(ActionTensor(Z2, C, [[[1]]])).ok

    def test_zero_action_is_not_unital(self, D):
        C = FiniteAlgebra.zero_mult(2, 2)
        rep = check_action(ActionTensor(D, C, np.zeros((2, 2, 2))))
        assert rep.failed("ACT_UNIT")
        assert rep.get("ACT_UNIT").witness == (0,)
        assert check_action(ActionTensor(D, C, np.zeros((2, 2, 2))), unital=False).ok

    def test_count_of_unital_actions_by_filtering(self, Z2):
        C = FiniteAlgebra.zero_mult(2, 1)
        passing = [v for v in (0, 1) if check_action(ActionTensor(Z2, C, [[[v]]])).ok]
        assert passing == [1]

    def test_action_must_respect_c_product(self, Z2):
        rep = check_action(ActionTensor(Z2, Z2, [[[0]]]), unital=False)
        assert rep.ok
        # the nilpotent x of D acting as zero on Z2 is fine, acting as identity is not
        D = FiniteAlgebra.truncated_poly(2, 2)
        bad = ActionTensor(D, Z2, [[[1]], [[1]]])
        assert check_action(bad).failed("ACT_ASSOC")
