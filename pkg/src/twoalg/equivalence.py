"""The functors between crossed modules and 2-algebras, and round-trip witnesses.

``gamma`` sends a 2-algebra to (Ker s, A0, t|Ker s) with x > q = e(x) q.
``psi`` sends a crossed module to the semidirect product G x| R, laid
out on the G-basis followed by the R-basis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import ActionTensor, FiniteAlgebra
from .errors import DomainError, IntegrityError, PreconditionError
from .linalg import LinearMap, coordinate_matrix
from .report import Report
from .twocat import TwoAlgebra, TwoAlgMorphism, check_two_alg_morphism
from .xmod import CrossedModule, XModMorphism, check_crossed_module, check_xmod_morphism


class PreCrossedWarning(UserWarning):
    """Psi applied to a pre-crossed module: the interchange law is not guaranteed."""


@lru_cache(maxsize=4096)
def _kernel_basis(A: TwoAlgebra) -> np.ndarray:
    B = A.s.kernel().basis()
    B.flags.writeable = False
    return B


def kernel_basis(A: TwoAlgebra) -> np.ndarray:
    """Canonical basis of Ker s, one A1-vector per row."""
    return _kernel_basis(A)


def _kernel_labels(A: TwoAlgebra, B: np.ndarray):
    """Names for the Ker s basis when it consists of basis cells labelled "(name,0)"."""
    if A.A1.labels is None:
        return None
    out = []
    for row in B:
        hits = np.flatnonzero(row)
        if len(hits) != 1 or row[hits[0]] != 1:
            return None
        name = A.A1.labels[hits[0]]
        if not (name.startswith("(") and name.endswith(",0)")):
            return None
        out.append(name[1:-3])
    return out


def _labels(*algebras) -> tuple:
    # equality ignores basis labels, so cached results are also keyed on them
    return tuple(A.labels for A in algebras)


def gamma(A: TwoAlgebra) -> CrossedModule:
    return _gamma(A, _labels(A.A0, A.A1))


@lru_cache(maxsize=4096)
def _gamma(A: TwoAlgebra, _key) -> CrossedModule:
    m = A.modulus
    B = kernel_basis(A)
    k, r = B.shape[0], A.A0.rank
    prods = A.hprod(np.repeat(B, k, axis=0), np.tile(B, (k, 1))) if k else B
    acts = A.hprod(np.repeat(A.e.matrix.T, k, axis=0), np.tile(B, (r, 1))) if k else B
    try:
        table = coordinate_matrix(B, prods, m).T.reshape(k, k, k)
        action = coordinate_matrix(B, acts, m).T.reshape(r, k, k)
    except DomainError as exc:
        raise IntegrityError("Ker s is not closed under the cell product") from exc
    C = FiniteAlgebra(m, table, labels=_kernel_labels(A, B))
    boundary = LinearMap(m, A.t.matrix @ B.T) if k else LinearMap.zero(m, r, 0)
    return CrossedModule(C, A.A0, boundary, ActionTensor(A.A0, C, action))


def psi(X: CrossedModule, check: bool = True) -> TwoAlgebra:
    """Semidirect-product 2-algebra: (g,c)(g',c') = (c>g' + c'>g + g'g, cc').

    s(g,c) = c, t(g,c) = d(g) + c, e(c) = (0,c). A pre-crossed input is
    still built, with a :class:`PreCrossedWarning`.
    """
    if check:
        status = check_crossed_module(X)
        if status.label == "invalid":
            raise PreconditionError(f"psi needs a (pre-)crossed module\n{status}")
        if status.label == "pre-crossed":
            warnings.warn("interchange not guaranteed: input is only pre-crossed", PreCrossedWarning,
                          stacklevel=2)
    return _semidirect(X, _labels(X.C, X.R))


@lru_cache(maxsize=4096)
def _semidirect(X: CrossedModule, _key) -> TwoAlgebra:
    m = X.modulus
    g, r = X.C.rank, X.R.rank
    n = g + r
    a = X.action.tensor
    table = np.zeros((n, n, n), dtype=np.int64)
    table[:g, :g, :g] = X.C.mul_table
    table[:g, g:, :g] = a.transpose(1, 0, 2)
    table[g:, :g, :g] = a
    table[g:, g:, g:] = X.R.mul_table
    unit = None
    if X.R.unit is not None:
        unit = np.concatenate([np.zeros(g, dtype=np.int64), X.R.unit])
    labels = [f"({X.C.label(i)},0)" for i in range(g)] + [f"(0,{X.R.label(j)})" for j in range(r)]
    A1 = FiniteAlgebra(m, table, unit=unit, labels=labels)
    s = np.hstack([np.zeros((r, g), dtype=np.int64), np.eye(r, dtype=np.int64)])
    t = np.hstack([X.boundary.matrix, np.eye(r, dtype=np.int64)])
    e = np.vstack([np.zeros((g, r), dtype=np.int64), np.eye(r, dtype=np.int64)])
    return TwoAlgebra(X.R, A1, LinearMap(m, s), LinearMap(m, t), LinearMap(m, e))


def gamma_mor(F: TwoAlgMorphism) -> XModMorphism:
    return _gamma_mor(F, _labels(F.source.A0, F.source.A1, F.target.A0, F.target.A1))


@lru_cache(maxsize=1 << 16)
def _gamma_mor(F: TwoAlgMorphism, _key) -> XModMorphism:
    m = F.source.modulus
    B, B2 = kernel_basis(F.source), kernel_basis(F.target)
    images = F.F1(B) if B.shape[0] else B.reshape(0, F.F1.cod)
    for j, v in enumerate(np.atleast_2d(images) if B.shape[0] else []):
        if F.target.s(v).any():
            raise IntegrityError(f"F1 sends Ker s generator {j} outside Ker s'")
    f1 = coordinate_matrix(B2, images, m) if B.shape[0] else np.zeros((B2.shape[0], 0), dtype=np.int64)
    return XModMorphism(gamma(F.source), gamma(F.target), LinearMap(m, f1), F.F0)


def psi_mor(f: XModMorphism) -> TwoAlgMorphism:
    """F1(g, c) = (f1(g), f0(c)), F0 = f0."""
    return _psi_mor(f, _labels(f.source.C, f.source.R, f.target.C, f.target.R))


@lru_cache(maxsize=1 << 16)
def _psi_mor(f: XModMorphism, _key) -> TwoAlgMorphism:
    m = f.source.modulus
    F1 = np.block([
        [f.f1.matrix, np.zeros((f.f1.cod, f.f0.dom), dtype=np.int64)],
        [np.zeros((f.f0.cod, f.f1.dom), dtype=np.int64), f.f0.matrix],
    ])
    return TwoAlgMorphism(psi(f.source, check=False), psi(f.target, check=False), LinearMap(m, F1), f.f0)


@dataclass
class RoundTripWitness:
    direction: str
    forward: tuple[LinearMap, LinearMap]
    backward: tuple[LinearMap, LinearMap]
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.ok


def _identity_checks(rep: Report, fwd, bwd):
    for level, (f, b) in enumerate(zip(fwd, bwd)):
        name = ("LEVEL1", "LEVEL0")[level]
        d = f.dom
        rep.add(f"{name}_BACK_FORWARD", (b @ f) == LinearMap.identity(f.modulus, d))
        rep.add(f"{name}_FORWARD_BACK", (f @ b) == LinearMap.identity(f.modulus, f.cod))


def phi_iso(A: TwoAlgebra) -> RoundTripWitness:
    """phi(a) = (a - e(s(a)), s(a)) into Psi(Gamma(A)), inverse (q, x) -> q + e(x)."""
    m = A.modulus
    B = kernel_basis(A)
    target = psi(gamma(A), check=False)
    proj = LinearMap.identity(m, A.A1.rank) - A.e @ A.s
    q_part = coordinate_matrix(B, proj.matrix.T, m) if B.shape[0] else np.zeros((0, A.A1.rank), dtype=np.int64)
    fwd1 = LinearMap(m, np.vstack([q_part, A.s.matrix]))
    bwd1 = LinearMap(m, np.hstack([B.T, A.e.matrix]))
    ident0 = LinearMap.identity(m, A.A0.rank)
    rep = Report("phi: A1 -> Ker s x| A0")
    rep.extend(check_two_alg_morphism(TwoAlgMorphism(A, target, fwd1, ident0)), "phi.")
    rep.extend(check_two_alg_morphism(TwoAlgMorphism(target, A, bwd1, ident0)), "phi_inv.")
    _identity_checks(rep, (fwd1, ident0), (bwd1, ident0))
    return RoundTripWitness("2Alg->2Alg", (fwd1, ident0), (bwd1, ident0), rep)


def roundtrip_xmod(X: CrossedModule) -> RoundTripWitness:
    """Witness X ~ Gamma(Psi(X)) via g -> (g, 0), plus exact coordinate equality."""
    m = X.modulus
    A = psi(X, check=False)
    Y = gamma(A)
    B = kernel_basis(A)
    g = X.C.rank
    embed = np.vstack([np.eye(g, dtype=np.int64), np.zeros((X.R.rank, g), dtype=np.int64)])
    fwd1 = LinearMap(m, coordinate_matrix(B, embed.T, m)) if g else LinearMap.zero(m, B.shape[0], 0)
    bwd1 = LinearMap(m, B[:, :g].T)
    ident0 = LinearMap.identity(m, X.R.rank)
    rep = Report("X -> Gamma(Psi(X))")
    rep.extend(check_xmod_morphism(XModMorphism(X, Y, fwd1, ident0)), "forward.")
    rep.extend(check_xmod_morphism(XModMorphism(Y, X, bwd1, ident0)), "backward.")
    _identity_checks(rep, (fwd1, ident0), (bwd1, ident0))
    exact = (np.array_equal(Y.C.mul_table, X.C.mul_table)
             and np.array_equal(Y.action.tensor, X.action.tensor)
             and Y.boundary == X.boundary and Y.R == X.R)
    rep.add("EXACT", exact, (), "" if exact else "Gamma(Psi(X)) differs from X in coordinates")
    return RoundTripWitness("XMod->XMod", (fwd1, ident0), (bwd1, ident0), rep)
