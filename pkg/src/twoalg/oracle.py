"""Brute-force enumerators used as ground truth.

Every enumerator lists all coefficient tuples of its candidates in
lexicographic order (row-major flattening, first entry most significant)
and keeps the ones satisfying the axioms. The axioms are re-implemented
here in batched form, independently of the per-structure checkers, so the
two can be compared. Counts above ``cap`` are refused before any work.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import ActionTensor, FiniteAlgebra
from .errors import CapExceeded, DomainError
from .linalg import LinearMap, all_vectors
from .twocat import TwoAlgMorphism
from .xmod import CrossedModule, XModMorphism

DEFAULT_CAP = 1 << 20
_CHUNK = 1 << 14


def _refuse(count: int, cap: int):
    if count > cap:
        raise CapExceeded(count, cap)


def _grid(m: int, shape: tuple[int, ...], cap: int) -> np.ndarray:
    n = int(np.prod(shape, dtype=np.int64)) if shape else 0
    _refuse(m**n, cap)
    return all_vectors(m, n, cap).reshape((m**n, *shape))


def _filter(cands: np.ndarray, keep) -> np.ndarray:
    """Apply a batched predicate chunk by chunk, preserving order."""
    parts = [c[keep(c)] for c in np.array_split(cands, max(1, -(-len(cands) // _CHUNK)))]
    return np.concatenate(parts) if parts else cands


def _all_zero(x: np.ndarray, m: int) -> np.ndarray:
    return ~(x % m).reshape(x.shape[0], int(np.prod(x.shape[1:]))).any(axis=1)


# linear maps and algebras --------------------------------------------------

def enumerate_linear_maps(m: int, cod: int, dom: int, cap: int = DEFAULT_CAP) -> list[LinearMap]:
    return [LinearMap(m, a) for a in _grid(m, (cod, dom), cap)]


def _hom_mask(maps: np.ndarray, A: FiniteAlgebra, B: FiniteAlgebra, unital: bool) -> np.ndarray:
    m = A.modulus
    lhs = np.einsum("ijp,nlp->nijl", A.mul_table, maps)
    rhs = np.einsum("npi,nqj,pql->nijl", maps, maps, B.mul_table)
    ok = _all_zero(lhs - rhs, m)
    if unital and A.unit is not None and B.unit is not None:
        ok &= _all_zero(np.einsum("nli,i->nl", maps, A.unit) - B.unit, m)
    return ok


def enumerate_algebra_morphisms(A: FiniteAlgebra, B: FiniteAlgebra, unital: bool = False,
                                cap: int = DEFAULT_CAP) -> list[LinearMap]:
    m = A.modulus
    maps = _filter(_grid(m, (B.rank, A.rank), cap), lambda c: _hom_mask(c, A, B, unital))
    return [LinearMap(m, f) for f in maps]


def _symmetric_tables(params: np.ndarray, d: int) -> np.ndarray:
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    out = np.zeros((len(params), d, d, d), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        out[:, i, j] = params[:, k * d:(k + 1) * d]
        out[:, j, i] = params[:, k * d:(k + 1) * d]
    return out


def enumerate_algebras(m: int, rank: int, unital: bool | None = None,
                       cap: int = DEFAULT_CAP) -> list[FiniteAlgebra]:
    """Every commutative associative structure tensor of the given rank.

    Candidates are the upper-triangle products e_i e_j (i <= j) in
    lexicographic order. A unit is attached whenever one exists; with
    ``unital=True`` only algebras with a unit are kept, with ``False`` only
    those without.
    """
    d = rank
    n_params = d * (d + 1) // 2 * d
    _refuse(m**n_params, cap)
    params = all_vectors(m, n_params, cap)

    def assoc(p):
        c = _symmetric_tables(p, d)
        lhs = np.einsum("nijp,npkl->nijkl", c, c)
        rhs = np.einsum("njkp,nipl->nijkl", c, c)
        return _all_zero(lhs - rhs, m)

    tables = _symmetric_tables(_filter(params, assoc), d)
    units = all_vectors(m, d, cap)
    eye = np.eye(d, dtype=np.int64)
    out = []
    for c in tables:
        hits = np.flatnonzero(_all_zero(np.einsum("ui,ijl->ujl", units, c) - eye, m))
        unit = units[hits[0]] if len(hits) else None
        if unital is None or unital == (unit is not None):
            out.append(FiniteAlgebra(m, c, unit=unit))
    return out


# actions and crossed modules -----------------------------------------------

def _action_mask(a: np.ndarray, R: FiniteAlgebra, C: FiniteAlgebra) -> np.ndarray:
    m = R.modulus
    ok = _all_zero(np.einsum("ijp,npkl->nijkl", R.mul_table, a) - np.einsum("njkp,nipl->nijkl", a, a), m)
    ok &= _all_zero(np.einsum("jkp,nipl->nijkl", C.mul_table, a) - np.einsum("nijp,pkl->nijkl", a, C.mul_table), m)
    if R.unit is not None:
        ok &= _all_zero(np.einsum("i,nijl->njl", R.unit, a) - np.eye(C.rank, dtype=np.int64), m)
    return ok


def enumerate_actions(R: FiniteAlgebra, C: FiniteAlgebra, cap: int = DEFAULT_CAP) -> list[ActionTensor]:
    m = R.modulus
    tensors = _filter(_grid(m, (R.rank, C.rank, C.rank), cap), lambda a: _action_mask(a, R, C))
    return [ActionTensor(R, C, a) for a in tensors]


@dataclass
class CrossedModuleCensus:
    """Valid crossed modules, and the candidates failing only the Peiffer identity."""

    crossed: list[CrossedModule] = field(default_factory=list)
    pre_crossed: list[CrossedModule] = field(default_factory=list)


def enumerate_crossed_modules(R: FiniteAlgebra, C: FiniteAlgebra, cap: int = DEFAULT_CAP) -> CrossedModuleCensus:
    """All (boundary, action) pairs, ordered by boundary then action."""
    m = R.modulus
    _refuse(m ** (R.rank * C.rank) * m ** (R.rank * C.rank * C.rank), cap)
    census = CrossedModuleCensus()
    if R.unit is None:
        return census
    actions = _filter(_grid(m, (R.rank, C.rank, C.rank), cap), lambda a: _action_mask(a, R, C))
    for d in _grid(m, (R.rank, C.rank), cap):
        if not _hom_mask(d[None], C, R, False)[0]:
            continue
        cm1 = _all_zero(np.einsum("nijp,lp->nijl", actions, d) - np.einsum("pj,ipl->ijl", d, R.mul_table), m)
        cm2 = _all_zero(np.einsum("pi,npjl->nijl", d, actions) - C.mul_table, m)
        boundary = LinearMap(m, d)
        for a, peiffer in zip(actions[cm1], cm2[cm1]):
            X = CrossedModule(C, R, boundary, ActionTensor(R, C, a))
            (census.crossed if peiffer else census.pre_crossed).append(X)
    return census


def enumerate_xmod_morphisms(X: CrossedModule, Y: CrossedModule, cap: int = DEFAULT_CAP) -> list[XModMorphism]:
    """Ordered by f0 then f1 (each lexicographic)."""
    m = X.modulus
    _refuse(m ** (X.C.rank * Y.C.rank + X.R.rank * Y.R.rank), cap)
    f1s = _filter(_grid(m, (Y.C.rank, X.C.rank), cap), lambda f: _hom_mask(f, X.C, Y.C, False))
    f0s = _filter(_grid(m, (Y.R.rank, X.R.rank), cap), lambda f: _hom_mask(f, X.R, Y.R, True))
    out = []
    d, d2 = X.boundary.matrix, Y.boundary.matrix
    a, a2 = X.action.tensor, Y.action.tensor
    for f0 in f0s:
        bnd = _all_zero(np.einsum("lp,npj->nlj", d2, f1s) - (f0 @ d)[None], m)
        lhs = np.einsum("ijp,nlp->nijl", a, f1s)
        rhs = np.einsum("pi,nqj,pql->nijl", f0, f1s, a2)
        ok = bnd & _all_zero(lhs - rhs, m)
        out += [XModMorphism(X, Y, LinearMap(m, f1), LinearMap(m, f0)) for f1 in f1s[ok]]
    return out


# homotopies -------------------------------------------------------------------

def enumerate_derivations(f: XModMorphism, cap: int = DEFAULT_CAP) -> list:
    from .homotopy import Derivation

    X, Y = f.source, f.target
    m = X.modulus
    f0 = f.f0.matrix
    unit = X.R.unit

    def keep(s):
        lhs = np.einsum("ijp,nlp->nijl", X.R.mul_table, s)
        cross = np.einsum("pi,nqj,pql->nijl", f0, s, Y.action.tensor)
        sq = np.einsum("npi,nqj,pql->nijl", s, s, Y.C.mul_table)
        ok = _all_zero(lhs - cross - cross.transpose(0, 2, 1, 3) - sq, m)
        if unit is not None:
            ok &= _all_zero(np.einsum("nli,i->nl", s, unit), m)
        return ok

    maps = _filter(_grid(m, (Y.C.rank, X.R.rank), cap), keep)
    return [Derivation(f, LinearMap(m, s)) for s in maps]


def enumerate_two_alg_homotopies(F: TwoAlgMorphism, G: TwoAlgMorphism, cap: int = DEFAULT_CAP) -> list:
    from .homotopy import TwoAlgHomotopy

    if F.source != G.source or F.target != G.target:
        raise DomainError("F and G must share source and target")
    A, B = F.source, F.target
    m = A.modulus
    s2, t2, e2 = B.s.matrix, B.t.matrix, B.e.matrix
    s, t = A.s.matrix, A.t.matrix
    F1, G1 = F.F1.matrix, G.F1.matrix

    def keep(D):
        ok = _hom_mask(D, A.A0, B.A1, True)
        ok &= _all_zero(np.einsum("ij,njk->nik", s2, D) - F.F0.matrix, m)
        ok &= _all_zero(np.einsum("ij,njk->nik", t2, D) - G.F0.matrix, m)
        Dt = np.einsum("nij,jk->nik", D, t)
        Ds = np.einsum("nij,jk->nik", D, s)
        # vertical composites, column by column over the basis cells of A1
        ok &= _all_zero(np.einsum("ij,njk->nik", s2, Dt) - (t2 @ F1)[None], m)
        ok &= _all_zero(np.einsum("ij,njk->nik", t2, Ds) - (s2 @ G1)[None], m)
        left = F1[None] + Dt - np.einsum("ij,jk,nkl->nil", e2, s2, Dt)
        right = Ds + G1[None] - (e2 @ s2 @ G1)[None]
        return ok & _all_zero(left - right, m)

    maps = _filter(_grid(m, (B.A1.rank, A.A0.rank), cap), keep)
    return [TwoAlgHomotopy(F, G, LinearMap(m, D)) for D in maps]


# populations -------------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate, over which modulus, at which ranks, under which cap."""

    kind: str
    modulus: int = 2
    rank_c: int = 1
    rank_r: int = 1
    cap: int = DEFAULT_CAP

    KINDS = ("linear_maps", "algebras", "actions", "crossed_modules")

    def candidate_count(self) -> int:
        m, c, r = self.modulus, self.rank_c, self.rank_r
        if self.kind == "linear_maps":
            return m ** (r * c)
        if self.kind == "algebras":
            return m ** (c * (c + 1) // 2 * c)
        if self.kind == "actions":
            return m ** (r * c * c)
        if self.kind == "crossed_modules":
            return m ** (r * c) * m ** (r * c * c)
        raise DomainError(f"unknown enumeration kind {self.kind!r}; expected one of {self.KINDS}")

    def check(self):
        _refuse(self.candidate_count(), self.cap)


def xmod_population(m: int = 2, max_rank_c: int = 2, max_rank_r: int = 2,
                    cap: int = DEFAULT_CAP) -> CrossedModuleCensus:
    """Census over every raw unital R (rank 1..max) and every raw C (rank 0..max, no unit)."""
    total = CrossedModuleCensus()
    Rs = [R for r in range(1, max_rank_r + 1) for R in enumerate_algebras(m, r, unital=True, cap=cap)]
    # C carries no unit: it is not part of the structure a crossed module sees
    Cs = [FiniteAlgebra(m, C.mul_table) for c in range(0, max_rank_c + 1)
          for C in enumerate_algebras(m, c, cap=cap)]
    for R in Rs:
        for C in Cs:
            census = enumerate_crossed_modules(R, C, cap)
            total.crossed += census.crossed
            total.pre_crossed += census.pre_crossed
    return total
