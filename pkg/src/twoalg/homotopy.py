"""Homotopies: derivations between crossed module morphisms and 2-algebra homotopies.

A derivation over a morphism ``f: X -> X'`` is a linear map ``d: R -> C'`` with

    d(r r') = f0(r) > d(r') + f0(r') > d(r) + d(r) d(r')

and it moves ``f`` to ``g`` with ``g0 = f0 + bd' d`` and ``g1 = f1 + d bd``.
On the 2-algebra side a homotopy ``F => G`` is a unital algebra map
``delta: A0 -> A1'`` with source ``F0``, target ``G0`` and a naturality square
in the vertical composition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import _first, check_morphism
from .equivalence import gamma_mor, kernel_basis, psi_mor
from .errors import ComposabilityError, DomainError, IntegrityError
from .linalg import LinearMap, coordinate_matrix
from .report import Report
from .twocat import TwoAlgMorphism, check_two_alg_morphism, compose_cells
from .xmod import XModMorphism, check_xmod_morphism


@dataclass(frozen=True, eq=True)
class Derivation:
    """Linear map R -> C' that is a derivation along ``base.f0``."""

    base: XModMorphism
    map: LinearMap


@dataclass(frozen=True, eq=True)
class XModHomotopy:
    f: XModMorphism
    d: Derivation
    g: XModMorphism


@dataclass(frozen=True, eq=True)
class TwoAlgHomotopy:
    F: TwoAlgMorphism
    G: TwoAlgMorphism
    delta: LinearMap


def check_derivation(d: Derivation, subject: str = "derivation") -> Report:
    """Derivation law on basis pairs, and d(1) = 0.

    The second condition (DERIV_UNIT) is what keeps the shifted ``g0``
    unital and makes the matching 2-algebra homotopy a unital map.
    """
    X, Y = d.base.source, d.base.target
    if d.map.shape != (Y.C.rank, X.R.rank):
        raise DomainError(f"derivation shape {d.map.shape} != {(Y.C.rank, X.R.rank)}")
    m = X.modulus
    s, f0 = d.map.matrix, d.base.f0.matrix
    a, c = Y.action.tensor, Y.C.mul_table
    lhs = np.einsum("ijp,lp->ijl", X.R.mul_table, s) % m
    # f0(r_i) > s(r_j)
    cross = np.einsum("pi,qj,pql->ijl", f0, s, a)
    rhs = (cross + cross.transpose(1, 0, 2) + np.einsum("pi,qj,pql->ijl", s, s, c)) % m
    w = _first((lhs != rhs).any(axis=2))
    rep = Report(subject)
    rep.add("DERIV", w is None, w or (), "" if w is None else
            f"d(r{w[0]}r{w[1]}) = {Y.C.fmt(lhs[w])} but the derivation formula gives {Y.C.fmt(rhs[w])}")
    if X.R.unit is not None:
        at_one = d.map(X.R.unit)
        rep.add("DERIV_UNIT", not at_one.any(), (), "" if not at_one.any() else f"d(1) = {Y.C.fmt(at_one)}")
    return rep


def homotopy_target(f: XModMorphism, d: Derivation) -> XModHomotopy:
    if d.base.f0 != f.f0 or d.base.source != f.source or d.base.target != f.target:
        raise DomainError("derivation is not based on this morphism")
    X, Y = f.source, f.target
    g0 = f.f0 + Y.boundary @ d.map
    g1 = f.f1 + d.map @ X.boundary
    g = XModMorphism(X, Y, g1, g0)
    rep = check_xmod_morphism(g, "shifted morphism")
    if not rep.ok:
        raise IntegrityError(f"derivation target is not a morphism\n{rep}", rep)
    return XModHomotopy(f, d, g)


def zero_derivation(f: XModMorphism) -> Derivation:
    return Derivation(f, LinearMap.zero(f.source.modulus, f.target.C.rank, f.source.R.rank))


def add_derivations(h: XModHomotopy, h2: XModHomotopy) -> XModHomotopy:
    """Chain f -> g and g -> u into f -> u with the pointwise sum of derivations."""
    if h.g != h2.f:
        raise DomainError("homotopies do not chain: target of the first is not the source of the second")
    total = Derivation(h.f, h.d.map + h2.d.map)
    rep = check_derivation(total)
    if not rep.ok:
        raise IntegrityError(f"sum of derivations is not a derivation\n{rep}", rep)
    out = homotopy_target(h.f, total)
    if out.g != h2.g:
        raise IntegrityError("chained homotopy does not end at the second target")
    return out


def identity_homotopy(F: TwoAlgMorphism) -> TwoAlgHomotopy:
    return TwoAlgHomotopy(F, F, F.target.e @ F.F0)


def check_two_alg_homotopy(H: TwoAlgHomotopy, subject: str = "2-algebra homotopy") -> Report:
    F, G = H.F, H.G
    if F.source != G.source or F.target != G.target:
        raise DomainError("F and G must share source and target")
    A, B = F.source, F.target
    if H.delta.shape != (B.A1.rank, A.A0.rank):
        raise DomainError(f"delta shape {H.delta.shape} != {(B.A1.rank, A.A0.rank)}")
    rep = Report(subject)
    rep.extend(check_morphism(H.delta, A.A0, B.A1, unital=True), "delta.")
    for name, lhs, rhs in (("HTPY1", B.s @ H.delta, F.F0), ("HTPY2", B.t @ H.delta, G.F0)):
        bad = np.flatnonzero((lhs.matrix != rhs.matrix).any(axis=0))
        rep.add(name, len(bad) == 0, (int(bad[0]),) if len(bad) else (), "" if not len(bad) else
                f"on basis {int(bad[0])}: {lhs.matrix[:, bad[0]].tolist()} vs {rhs.matrix[:, bad[0]].tolist()}")
    witness, detail = (), ""
    for i, a in enumerate(A.A1.basis_vectors()):
        try:
            left = compose_cells(B, F.F1(a), H.delta(A.t(a)))
            right = compose_cells(B, H.delta(A.s(a)), G.F1(a))
        except ComposabilityError as exc:
            witness, detail = (i,), str(exc)
            break
        if not np.array_equal(left, right):
            witness, detail = (i,), f"F1(a) o delta(t a) = {left.tolist()} but delta(s a) o G1(a) = {right.tolist()}"
            break
    rep.add("HTPY3", not witness, witness, detail)
    return rep


def star(H: TwoAlgHomotopy, H2: TwoAlgHomotopy) -> TwoAlgHomotopy:
    """delta + delta' - e' t' delta, a homotopy from H.F to H2.G."""
    if H.G != H2.F:
        raise DomainError("homotopies do not chain")
    B = H.F.target
    out = TwoAlgHomotopy(H.F, H2.G, H.delta + H2.delta - B.e @ B.t @ H.delta)
    rep = check_two_alg_homotopy(out)
    if not rep.ok:
        raise IntegrityError(f"composite homotopy failed its check\n{rep}", rep)
    return out


def gamma_htpy(H: TwoAlgHomotopy) -> XModHomotopy:
    """x -> delta(x) - e'(F0 x), written in the Ker s' basis."""
    B = H.F.target
    m = B.modulus
    diff = H.delta - B.e @ H.F.F0
    if (B.s @ diff).matrix.any():
        raise IntegrityError("delta - e'F0 leaves Ker s'")
    K = kernel_basis(B)
    coords = coordinate_matrix(K, diff.matrix.T, m) if K.shape[0] else np.zeros((0, diff.dom), dtype=np.int64)
    f = gamma_mor(H.F)
    d = Derivation(f, LinearMap(m, coords))
    rep = check_derivation(d)
    if not rep.ok:
        raise IntegrityError(f"transported map is not a derivation\n{rep}", rep)
    out = homotopy_target(f, d)
    if out.g != gamma_mor(H.G):
        raise IntegrityError("transported homotopy does not end at gamma(G)")
    return out


def psi_htpy(h: XModHomotopy) -> TwoAlgHomotopy:
    """delta(x) = (d(x), f0(x)) in the semidirect product."""
    m = h.f.source.modulus
    delta = LinearMap(m, np.vstack([h.d.map.matrix, h.f.f0.matrix]))
    return TwoAlgHomotopy(psi_mor(h.f), psi_mor(h.g), delta)


def homotopic_pairs_report(H: TwoAlgHomotopy) -> Report:
    """Both endpoint morphisms and the homotopy itself, in one report."""
    rep = Report("2-algebra homotopy with endpoints")
    rep.extend(check_two_alg_morphism(H.F), "F.")
    rep.extend(check_two_alg_morphism(H.G), "G.")
    rep.extend(check_two_alg_homotopy(H))
    return rep
