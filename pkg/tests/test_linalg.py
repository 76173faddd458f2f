import numpy as np
import pytest
from helpers import span_of
from hypothesis import given, settings
from hypothesis import strategies as st

from twoalg import LinearMap, NotFreeError, Submodule, howell_form, kernel
from twoalg.errors import DomainError
from twoalg.linalg import all_vectors, coordinates, free_basis, solve_left


def matrices(moduli=(2, 4, 6), max_rows=4, max_cols=3):
    @st.composite
    def build(draw):
        m = draw(st.sampled_from(moduli))
        r = draw(st.integers(0, max_rows))
        c = draw(st.integers(1, max_cols))
        entries = draw(st.lists(st.integers(0, m - 1), min_size=r * c, max_size=r * c))
        return m, np.array(entries, dtype=np.int64).reshape(r, c)
    return build()


class TestHowell:
    def test_single_generator_already_canonical(self):
        assert howell_form([[2]], 4).tolist() == [[2]]

    def test_span_of_two_rows_over_z4(self):
        h = howell_form([[1, 1], [0, 2]], 4)
        assert span_of(h, 4, 2) == span_of([[1, 1], [0, 2]], 4, 2)
        assert len(span_of(h, 4, 2)) == 8

    def test_empty_input(self):
        assert howell_form(np.zeros((0, 3), dtype=np.int64), 5, 3).shape == (0, 3)

    def test_zero_rows_are_dropped(self):
        assert howell_form([[0, 0], [0, 0]], 6).shape[0] == 0

    def test_howell_property_needs_extra_row(self):
        # (2, 1) over Z4 generates (0, 2) = 2 * (2, 1); the form must expose it
        h = howell_form([[2, 1]], 4)
        sub = Submodule(4, 2, [[2, 1]])
        assert sub.contains([0, 2])
        assert any(row[0] == 0 and row[1] == 2 for row in h)

    @settings(max_examples=150, deadline=None)
    @given(matrices())
    def test_idempotent_and_span_exact(self, data):
        m, a = data
        n = a.shape[1]
        h = howell_form(a, m, n)
        assert np.array_equal(howell_form(h, m, n), h)
        assert span_of(h, m, n) == span_of(a, m, n)

    @settings(max_examples=80, deadline=None)
    @given(matrices())
    def test_membership_matches_brute_force(self, data):
        m, a = data
        n = a.shape[1]
        sub = Submodule(m, n, a)
        members = span_of(a, m, n)
        for v in all_vectors(m, n):
            assert sub.contains(v) == (tuple(v) in members)
        assert sub.order() == len(members)

    def test_order_equality_is_canonical(self):
        assert Submodule(6, 2, [[2, 0], [0, 3]]) == Submodule(6, 2, [[2, 3]])


class TestKernel:
    def test_multiplication_by_two_on_z4(self):
        k = kernel(LinearMap(4, [[2]]))
        assert k.rows.tolist() == [[2]]

    def test_identity_has_zero_kernel(self):
        for m, d in ((2, 3), (4, 2), (6, 1)):
            assert kernel(LinearMap.identity(m, d)).is_zero()

    def test_zero_map_has_full_kernel(self):
        assert kernel(LinearMap.zero(2, 2, 2)).rows.tolist() == [[1, 0], [0, 1]]

    @settings(max_examples=100, deadline=None)
    @given(matrices(max_rows=3))
    def test_kernel_is_exact(self, data):
        m, a = data
        f = LinearMap(m, a)
        k = kernel(f)
        for v in all_vectors(m, f.dom):
            assert k.contains(v) == (not f(v).any())


class TestBases:
    def test_free_basis_via_crt(self):
        # over Z6 the span of (2) and (3) is everything; a single generator suffices
        b = free_basis([[2], [3]], 6, 1)
        assert b.shape == (1, 1)
        assert span_of(b, 6, 1) == span_of([[1]], 6, 1)

    def test_non_free_submodule_is_refused(self):
        with pytest.raises(NotFreeError):
            free_basis([[2]], 4, 1)

    def test_solve_left(self):
        basis = np.array([[1, 1, 0], [0, 1, 1]])
        y = solve_left(basis, [1, 0, 1], 2)
        assert y is not None and np.array_equal((y @ basis) % 2, [1, 0, 1])
        assert solve_left(basis, [1, 0, 0], 2) is None

    def test_coordinates_outside_span(self):
        with pytest.raises(DomainError):
            coordinates(np.array([[1, 0]]), [0, 1], 3)


class TestLinearMap:
    def test_composition_order(self):
        f = LinearMap(5, [[1, 2], [0, 1]])
        g = LinearMap(5, [[0, 1], [1, 0]])
        v = np.array([3, 4])
        assert np.array_equal((f @ g)(v), f(g(v)))

    def test_entries_are_reduced(self):
        assert LinearMap(4, [[-1, 9]]).matrix.tolist() == [[3, 1]]

    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            LinearMap.identity(2, 2) @ LinearMap.identity(2, 3)

    def test_moduli_must_agree(self):
        with pytest.raises(DomainError):
            LinearMap.identity(2, 1) + LinearMap.identity(3, 1)

    def test_batched_application(self):
        f = LinearMap(3, [[1, 2]])
        vs = np.array([[1, 0], [0, 1], [1, 1]])
        assert f(vs).tolist() == [[1], [2], [0]]
