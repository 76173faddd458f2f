import itertools
import warnings

import numpy as np
import pytest

from twoalg import (ActionTensor, CrossedModule, FiniteAlgebra, LinearMap, PreconditionError, PreCrossedWarning,
                    TwoAlgebra, TwoAlgMorphism, XModMorphism, check_crossed_module, check_two_alg_morphism,
                    check_two_algebra, check_xmod_morphism, from_ideal, from_multiplication, gamma, gamma_mor,
                    multiplication_two_algebra, phi_iso, psi, psi_mor, roundtrip_xmod)
from twoalg.corpus import build, two_algebras, zero_crossed_module
from twoalg.linalg import all_vectors
from twoalg.oracle import enumerate_xmod_morphisms, xmod_population

CORPUS = two_algebras()
XMODS = [X for X in build().values() if isinstance(X, CrossedModule) and check_crossed_module(X).ok]


@pytest.fixture(scope="module")
def population():
    return xmod_population()


def is_iso(f: LinearMap) -> bool:
    return f.dom == f.cod and f.kernel().is_zero()


class TestGamma:
    def test_discrete_gives_zero_module(self, D):
        X = gamma(TwoAlgebra.discrete(D))
        assert X.C.rank == 0 and X.R == D
        assert check_crossed_module(X).ok

    def test_multiplication_two_algebra_recovers_multiplication_module(self, D):
        X = gamma(multiplication_two_algebra(D))
        Y = from_multiplication(D)
        isos = [f for f in enumerate_xmod_morphisms(X, Y) if is_iso(f.f1) and is_iso(f.f0)]
        assert isos
        assert check_xmod_morphism(isos[0]).ok

    @pytest.mark.parametrize("X", XMODS, ids=lambda X: f"C{X.C.rank}R{X.R.rank}")
    def test_kernel_of_semidirect_is_original(self, X):
        Y = gamma(psi(X))
        assert np.array_equal(Y.C.mul_table, X.C.mul_table)
        assert Y.action == X.action
        assert Y.boundary == X.boundary

    @pytest.mark.parametrize("A", CORPUS, ids=lambda A: f"{A.A0.rank}x{A.A1.rank}")
    def test_peiffer_holds_in_kernel(self, A):
        X = gamma(A)
        rep = check_crossed_module(X)
        assert rep.passed("CM2") and rep.ok


class TestPsi:
    def test_zero_module_gives_discrete(self, D):
        assert psi(zero_crossed_module(D)) == TwoAlgebra.discrete(D)

    def test_ideal_inclusion(self, ideal_xmod):
        A = psi(ideal_xmod)
        assert (A.A0.rank, A.A1.rank) == (2, 3)
        assert check_two_algebra(A, exhaustive=True).ok

    def test_displayed_semidirect_product(self, ideal_xmod):
        X = ideal_xmod
        A = psi(X)
        g, r = X.C.rank, X.R.rank
        for u, v in itertools.product(all_vectors(2, g + r), repeat=2):
            (x, c), (y, d) = (u[:g], u[g:]), (v[:g], v[g:])
            expect_g = (X.act(c, y) + X.act(d, x) + X.C.prod(x, y)) % 2
            expect_r = X.R.prod(c, d)
            assert np.array_equal(A.hprod(u, v), np.concatenate([expect_g, expect_r]))

    def test_precrossed_warns(self, specimen):
        with pytest.warns(PreCrossedWarning):
            A = psi(specimen)
        assert not check_two_algebra(A).ok

    def test_invalid_refused(self, Z2):
        M = FiniteAlgebra.zero_mult(2, 1)
        X = CrossedModule(M, Z2, LinearMap.identity(2, 1), ActionTensor(Z2, M, [[[1]]]))
        with pytest.raises(PreconditionError):
            psi(X)

    def test_unchecked_construction_is_silent(self, specimen):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            psi(specimen, check=False)


class TestMorphismFunctors:
    def test_identities(self, ideal_xmod):
        A = psi(ideal_xmod)
        assert gamma_mor(TwoAlgMorphism.identity(A)) == XModMorphism.identity(gamma(A))
        assert psi_mor(XModMorphism.identity(ideal_xmod)) == TwoAlgMorphism.identity(A)

    def test_round_trip_on_enumerated_morphisms(self, ideal_xmod, D):
        targets = [ideal_xmod, from_multiplication(D), zero_crossed_module(D)]
        for X, Y in itertools.product(targets, repeat=2):
            for f in enumerate_xmod_morphisms(X, Y):
                F = psi_mor(f)
                assert check_two_alg_morphism(F).ok
                assert gamma_mor(F) == f

    def test_composition_preserved(self, ideal_xmod, D):
        X, Y = ideal_xmod, from_multiplication(D)
        for f in enumerate_xmod_morphisms(X, Y):
            for g in enumerate_xmod_morphisms(Y, Y):
                assert psi_mor(g.after(f)) == psi_mor(g).after(psi_mor(f))
                assert gamma_mor(psi_mor(g).after(psi_mor(f))) == g.after(f)

    def test_quotient_onto_zero_module_is_not_a_morphism(self, ideal_xmod, zero_over_dual):
        # f0 o boundary is the inclusion, never zero: the target square fails after transport too
        f = XModMorphism(ideal_xmod, zero_over_dual, LinearMap.zero(2, 0, 1), LinearMap.identity(2, 2))
        rep = check_two_alg_morphism(psi_mor(f))
        assert rep.failed("TGT")
        assert rep.get("TGT").witness == (0,)

    def test_horizontal_products_preserved(self, ideal_xmod, D):
        Y = from_multiplication(D)
        for f in enumerate_xmod_morphisms(ideal_xmod, Y):
            F = psi_mor(f)
            A, B = F.source, F.target
            for a, b in itertools.product(all_vectors(2, A.A1.rank), repeat=2):
                assert np.array_equal(F.F1(A.hprod(a, b)), B.hprod(F.F1(a), F.F1(b)))


class TestPhi:
    def test_discrete(self, D):
        w = phi_iso(TwoAlgebra.discrete(D))
        assert w.ok
        assert w.forward[0] == LinearMap.identity(2, 2)

    def test_multiplication_of_scalars(self, Z2):
        A = multiplication_two_algebra(Z2)
        w = phi_iso(A)
        assert w.ok
        fwd, bwd = w.forward[0], w.backward[0]
        for a in all_vectors(2, 2):
            assert np.array_equal(bwd(fwd(a)), a)
            assert np.array_equal(fwd(bwd(a)), a)

    @pytest.mark.parametrize("A", CORPUS, ids=lambda A: f"{A.A0.rank}x{A.A1.rank}")
    def test_corpus(self, A):
        w = phi_iso(A)
        assert w.ok, str(w.report)
        target = psi(gamma(A))
        fwd = w.forward[0]
        for a, b in itertools.product(np.eye(A.A1.rank, dtype=np.int64), repeat=2):
            assert np.array_equal(fwd(A.hprod(a, b)), target.hprod(fwd(a), fwd(b)))


class TestRoundTripXMod:
    def test_zero_module(self, D):
        w = roundtrip_xmod(zero_crossed_module(D))
        assert w.ok and w.forward[1] == LinearMap.identity(2, 2)

    def test_ideal(self, ideal_xmod):
        w = roundtrip_xmod(ideal_xmod)
        assert w.ok and w.report.passed("EXACT")
        assert w.forward[0] == LinearMap.identity(2, 1)

    def test_multiplication_of_scalars(self, Z2):
        assert roundtrip_xmod(from_multiplication(Z2)).ok

    def test_ideal_over_z4(self):
        X = from_ideal(FiniteAlgebra.truncated_poly(4, 2), [[0, 1]])
        assert roundtrip_xmod(X).ok

    def test_population_samples(self, population):
        for X in population.crossed[::5]:
            assert roundtrip_xmod(X).ok


def test_labels_survive_an_equal_unlabelled_conversion(D):
    bare = FiniteAlgebra(2, D.mul_table)
    labelled = FiniteAlgebra(2, D.mul_table, labels=["1", "x"])
    assert bare == labelled
    gamma(psi(from_multiplication(bare)))
    assert gamma(psi(from_multiplication(labelled))).C.labels == ("1", "x")
