"""Crossed modules of commutative algebras and their morphisms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ActionTensor, FiniteAlgebra, _first, check_action, check_algebra, check_morphism
from .errors import DomainError, IntegrityError, PreconditionError
from .linalg import LinearMap, Submodule, coordinates
from .report import Report


@dataclass(frozen=True, eq=True)
class CrossedModule:
    """Boundary C -> R with an action of R on C.

    A value of this type is only a candidate; :func:`check_crossed_module`
    decides whether it is crossed, merely pre-crossed, or invalid.
    """

    C: FiniteAlgebra
    R: FiniteAlgebra
    boundary: LinearMap
    action: ActionTensor

    @property
    def modulus(self) -> int:
        return self.R.modulus

    def act(self, r, c) -> np.ndarray:
        return self.action.act(r, c)

    def status(self) -> str:
        return check_crossed_module(self).label


@dataclass(frozen=True, eq=True)
class XModMorphism:
    source: CrossedModule
    target: CrossedModule
    f1: LinearMap
    f0: LinearMap

    @classmethod
    def identity(cls, X: CrossedModule) -> XModMorphism:
        m = X.modulus
        return cls(X, X, LinearMap.identity(m, X.C.rank), LinearMap.identity(m, X.R.rank))

    def after(self, other: XModMorphism) -> XModMorphism:
        """Composite self o other (apply ``other`` first)."""
        if other.target != self.source:
            raise DomainError("morphisms are not composable")
        return XModMorphism(other.source, self.target, self.f1 @ other.f1, self.f0 @ other.f0)


def _shape_check(X: CrossedModule):
    if X.C.modulus != X.R.modulus or X.boundary.modulus != X.R.modulus:
        raise DomainError("components of the crossed module use different moduli")
    if X.boundary.shape != (X.R.rank, X.C.rank):
        raise DomainError(f"boundary shape {X.boundary.shape} != {(X.R.rank, X.C.rank)}")
    if X.action.acting != X.R or X.action.acted != X.C:
        raise DomainError("action tensor is not an action of R on C")


def check_crossed_module(X: CrossedModule, subject: str = "crossed module") -> Report:
    """Validate algebras, boundary, action, CM1 and CM2 on basis pairs.

    ``label`` is ``"crossed"``, ``"pre-crossed"`` (everything but CM2
    holds) or ``"invalid"``.
    """
    _shape_check(X)
    rep = Report(subject)
    rep.extend(check_algebra(X.C), "C.")
    rep.extend(check_algebra(X.R), "R.")
    rep.add("R.UNITAL", X.R.unit is not None, (), "" if X.R.unit is not None else "R has no unit")
    rep.extend(check_morphism(X.boundary, X.C, X.R), "boundary.")
    rep.extend(check_action(X.action, unital=True), "")
    m = X.modulus
    d, a = X.boundary.matrix, X.action.tensor
    # CM1: d(r_i > c_j) = r_i d(c_j)
    lhs = np.einsum("ijp,lp->ijl", a, d) % m
    rhs = np.einsum("pj,ipl->ijl", d, X.R.mul_table) % m
    w = _first((lhs != rhs).any(axis=2))
    rep.add("CM1", w is None, w or (), "" if w is None else
            f"d(r{w[0]}>c{w[1]}) = {X.R.fmt(lhs[w])} but r{w[0]}*d(c{w[1]}) = {X.R.fmt(rhs[w])}")
    # CM2: d(c_i) > c_j = c_i c_j
    lhs = np.einsum("pi,pjl->ijl", d, a) % m
    rhs = X.C.mul_table
    w = _first((lhs != rhs).any(axis=2))
    rep.add("CM2", w is None, w or (), "" if w is None else
            f"d(c{w[0]})>c{w[1]} = {X.C.fmt(lhs[w])} but c{w[0]}*c{w[1]} = {X.C.fmt(rhs[w])}")
    others_ok = all(c.passed for c in rep.entries if c.axiom != "CM2")
    if rep.ok:
        rep.label = "crossed"
    elif others_ok:
        rep.label = "pre-crossed"
    else:
        rep.label = "invalid"
    return rep


def check_xmod_morphism(F: XModMorphism, subject: str = "crossed module morphism") -> Report:
    X, Y = F.source, F.target
    if F.f1.shape != (Y.C.rank, X.C.rank) or F.f0.shape != (Y.R.rank, X.R.rank):
        raise DomainError("morphism components do not match source/target ranks")
    m = X.modulus
    rep = Report(subject)
    rep.extend(check_morphism(F.f1, X.C, Y.C), "f1.")
    rep.extend(check_morphism(F.f0, X.R, Y.R, unital=True), "f0.")
    lhs = (Y.boundary @ F.f1).matrix
    rhs = (F.f0 @ X.boundary).matrix
    bad = np.flatnonzero((lhs != rhs).any(axis=0))
    rep.add("BOUNDARY", len(bad) == 0, (int(bad[0]),) if len(bad) else (), "" if not len(bad) else
            f"d'(f1(c{bad[0]})) = {Y.R.fmt(lhs[:, bad[0]])} but f0(d(c{bad[0]})) = {Y.R.fmt(rhs[:, bad[0]])}")
    lhs = np.einsum("ijp,lp->ijl", X.action.tensor, F.f1.matrix) % m
    rhs = np.einsum("pi,qj,pql->ijl", F.f0.matrix, F.f1.matrix, Y.action.tensor) % m
    w = _first((lhs != rhs).any(axis=2))
    rep.add("EQUIVARIANCE", w is None, w or (), "" if w is None else
            f"f1(r{w[0]}>c{w[1]}) = {Y.C.fmt(lhs[w])} but f0(r{w[0]})>f1(c{w[1]}) = {Y.C.fmt(rhs[w])}")
    return rep


def ideal_closure(R: FiniteAlgebra, gens) -> Submodule:
    """Smallest submodule containing ``gens`` and closed under multiplication by R."""
    m, d = R.modulus, R.rank
    span = Submodule(m, d, np.asarray(gens, dtype=np.int64).reshape(-1, d))
    while True:
        prods = [R.prod(e, g) for e in R.basis_vectors() for g in span.rows]
        bigger = span + Submodule(m, d, np.array(prods).reshape(-1, d)) if prods else span
        if bigger == span:
            return span
        span = bigger


def subalgebra_on_basis(A: FiniteAlgebra, basis: np.ndarray) -> FiniteAlgebra:
    """Structure constants of the multiplicatively closed span of ``basis`` rows."""
    k = basis.shape[0]
    c = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            c[i, j] = coordinates(basis, A.prod(basis[i], basis[j]), A.modulus)
    return FiniteAlgebra(A.modulus, c)


def from_ideal(R: FiniteAlgebra, gens) -> CrossedModule:
    """Inclusion of the ideal generated by ``gens`` into R, acted on by multiplication."""
    if R.unit is None:
        raise PreconditionError("from_ideal needs a unital R")
    gens = [g.vec if hasattr(g, "vec") else np.asarray(g) for g in gens]
    ideal = ideal_closure(R, np.array(gens, dtype=np.int64).reshape(-1, R.rank))
    basis = ideal.basis()
    C = subalgebra_on_basis(R, basis)
    act = ActionTensor.by_multiplication(R, basis, C)
    X = CrossedModule(C, R, LinearMap(R.modulus, basis.T), act)
    rep = check_crossed_module(X)
    if not rep.ok:
        raise IntegrityError("ideal inclusion failed the crossed module check", rep)
    return X


def from_module(M: FiniteAlgebra, R: FiniteAlgebra, act: ActionTensor) -> CrossedModule:
    """The zero boundary M -> R for an R-module M (an algebra with zero product)."""
    if M.mul_table.any():
        raise DomainError("from_module needs M with zero multiplication")
    if act.acting != R or act.acted != M:
        raise DomainError("action is not an action of R on M")
    return CrossedModule(M, R, LinearMap.zero(R.modulus, R.rank, M.rank), act)


def from_multiplication(C: FiniteAlgebra) -> CrossedModule:
    """The multiplication crossed module (C, M(C), mu) with lambda > c = lambda(c).

    The C of the result carries no unit, like every C built in this package.
    """
    from .multipliers import multipliers, mu

    M = multipliers(C)
    C = FiniteAlgebra(C.modulus, C.mul_table, labels=C.labels)
    R = M.as_algebra
    t = np.zeros((R.rank, C.rank, C.rank), dtype=np.int64)
    for i, lam in enumerate(M.basis_maps):
        t[i] = lam.matrix.T
    return CrossedModule(C, R, mu(C, M), ActionTensor(R, C, t))


def image_is_ideal(X: CrossedModule) -> bool:
    image = X.boundary.image()
    return ideal_closure(X.R, image.rows) == image


def kernel_of_boundary(X: CrossedModule) -> Submodule:
    return X.boundary.kernel()
