"""Multipliers, bimultipliers, and the multiplication 2-algebra of an algebra C."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteAlgebra
from .errors import IntegrityError, NotFreeError, PreconditionError
from .linalg import LinearMap, Submodule, coordinates, free_basis, kernel_rows
from .twocat import TwoAlgebra


@dataclass(frozen=True)
class BimultiplierPair:
    gamma: LinearMap
    delta: LinearMap


@dataclass(frozen=True)
class MultiplierAlgebra:
    """M(C): a basis of multipliers and the algebra they form under composition."""

    base: FiniteAlgebra
    basis_maps: tuple[LinearMap, ...]
    as_algebra: FiniteAlgebra

    @property
    def rank(self) -> int:
        return len(self.basis_maps)

    def vectorized(self) -> np.ndarray:
        """Basis maps flattened column-major, one per row."""
        return np.array([lam.matrix.T.reshape(-1) for lam in self.basis_maps],
                        dtype=np.int64).reshape(self.rank, -1)

    def coords_of(self, lam: LinearMap) -> np.ndarray:
        return coordinates(self.vectorized(), lam.matrix.T.reshape(-1), self.base.modulus)

    def map_of(self, coords) -> LinearMap:
        m = self.base.modulus
        d = self.base.rank
        total = np.zeros((d, d), dtype=np.int64)
        for c, lam in zip(np.asarray(coords, dtype=np.int64), self.basis_maps):
            total = total + int(c) * lam.matrix
        return LinearMap(m, total)


def annihilator(C: FiniteAlgebra) -> Submodule:
    """{a : a e_j = 0 for every basis element e_j}."""
    d = C.rank
    # rows (j, l) of the map a -> (a e_0, ..., a e_{d-1})
    mat = C.mul_table.transpose(1, 2, 0).reshape(d * d, d)
    return Submodule(C.modulus, d, kernel_rows(mat, C.modulus))


def square_span(C: FiniteAlgebra) -> Submodule:
    d = C.rank
    return Submodule(C.modulus, d, C.mul_table.reshape(d * d, d))


def _require_hypothesis(C: FiniteAlgebra):
    ann_zero = annihilator(C).is_zero()
    square_full = square_span(C).is_full()
    if not (ann_zero or square_full):
        raise PreconditionError(
            "multiplier algebra needs Ann(C)=0 or C^2=C; both fail: "
            "Ann(C) != 0 and C^2 != C"
        )


def _multiplier_equations(C: FiniteAlgebra) -> np.ndarray:
    """Coefficients of lambda(e_i e_j) - lambda(e_i) e_j over column-major unknowns."""
    d, c = C.rank, C.mul_table
    eq = np.zeros((d, d, d, d * d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            for l in range(d):
                for p in range(d):
                    eq[i, j, l, p * d + l] += c[i, j, p]
                    eq[i, j, l, i * d + p] -= c[p, j, l]
    return eq.reshape(d * d * d, d * d)


def _maps_from_rows(rows: np.ndarray, d: int, m: int) -> list[LinearMap]:
    return [LinearMap(m, row.reshape(d, d).T) for row in rows]


def is_multiplier(C: FiniteAlgebra, lam: LinearMap) -> bool:
    for ei in C.basis_vectors():
        for ej in C.basis_vectors():
            if not np.array_equal(lam(C.prod(ei, ej)), C.prod(lam(ei), ej)):
                return False
    return True


def multipliers(C: FiniteAlgebra) -> MultiplierAlgebra:
    """Solve the multiplier equations and package M(C) as a unital algebra.

    Pairwise commutation is asserted, not imposed: it follows from the
    hypothesis Ann(C)=0 or C^2=C.
    """
    _require_hypothesis(C)
    m, d = C.modulus, C.rank
    sol = kernel_rows(_multiplier_equations(C), m)
    try:
        rows = free_basis(sol, m, d * d)
    except NotFreeError as exc:
        raise PreconditionError(f"multiplier module of C is not free over Z/{m}") from exc
    maps = _maps_from_rows(rows, d, m)
    for lam in maps:
        if not is_multiplier(C, lam):
            raise IntegrityError(f"solver returned a non-multiplier {lam}")
    for a in maps:
        for b in maps:
            if a @ b != b @ a:
                raise IntegrityError(f"multipliers {a} and {b} do not commute")
    k = len(maps)
    table = np.zeros((k, k, k), dtype=np.int64)
    for i, a in enumerate(maps):
        for j, b in enumerate(maps):
            table[i, j] = coordinates(rows, (b @ a).matrix.T.reshape(-1), m)
    unit = coordinates(rows, np.eye(d, dtype=np.int64).T.reshape(-1), m)
    labels = [f"lambda{i}" for i in range(k)]
    return MultiplierAlgebra(C, tuple(maps), FiniteAlgebra(m, table, unit=unit, labels=labels))


def mu(C: FiniteAlgebra, M: MultiplierAlgebra | None = None) -> LinearMap:
    """c -> coordinates of multiplication-by-c in the multiplier basis."""
    if M is None:
        M = multipliers(C)
    cols = []
    for e in C.basis_vectors():
        lam = C.multiplication_map(e)
        try:
            cols.append(M.coords_of(lam))
        except ValueError as exc:
            raise IntegrityError(f"multiplication by {C.fmt(e)} is not in M(C)") from exc
    return LinearMap(C.modulus, np.array(cols, dtype=np.int64).reshape(C.rank, M.rank).T)


def _bimultiplier_equations(C: FiniteAlgebra) -> np.ndarray:
    """Unknowns: gamma column-major (d*d) then delta column-major (d*d)."""
    d, c = C.rank, C.mul_table
    n = d * d
    eqs = []
    for i in range(d):
        for j in range(d):
            g1 = np.zeros((d, 2 * n), dtype=np.int64)  # gamma(e_i e_j) - gamma(e_i) e_j
            g2 = np.zeros((d, 2 * n), dtype=np.int64)  # delta(e_i e_j) - e_i delta(e_j)
            g3 = np.zeros((d, 2 * n), dtype=np.int64)  # e_i gamma(e_j) - delta(e_i) e_j
            for l in range(d):
                for p in range(d):
                    g1[l, p * d + l] += c[i, j, p]
                    g1[l, i * d + p] -= c[p, j, l]
                    g2[l, n + p * d + l] += c[i, j, p]
                    g2[l, n + j * d + p] -= c[i, p, l]
                    g3[l, j * d + p] += c[i, p, l]
                    g3[l, n + i * d + p] -= c[p, j, l]
            eqs += [g1, g2, g3]
    return np.vstack(eqs) if eqs else np.zeros((0, 2 * n), dtype=np.int64)


def bimultipliers(C: FiniteAlgebra) -> list[BimultiplierPair]:
    """Basis of Bim(C) (Howell generators if the solution module is not free)."""
    m, d = C.modulus, C.rank
    n = d * d
    sol = kernel_rows(_bimultiplier_equations(C), m)
    try:
        rows = free_basis(sol, m, 2 * n)
    except NotFreeError:
        rows = sol
    return [
        BimultiplierPair(LinearMap(m, row[:n].reshape(d, d).T), LinearMap(m, row[n:].reshape(d, d).T))
        for row in rows
    ]


def bimultiplier_product(a: BimultiplierPair, b: BimultiplierPair) -> BimultiplierPair:
    """(gamma, delta)(gamma', delta') = (gamma gamma', delta' delta)."""
    return BimultiplierPair(a.gamma @ b.gamma, b.delta @ a.delta)


def bimultiplier_span(C: FiniteAlgebra) -> Submodule:
    d = C.rank
    return Submodule(C.modulus, 2 * d * d, kernel_rows(_bimultiplier_equations(C), C.modulus))


def pair_vector(p: BimultiplierPair) -> np.ndarray:
    return np.concatenate([p.gamma.matrix.T.reshape(-1), p.delta.matrix.T.reshape(-1)])


def multiplication_two_algebra(C: FiniteAlgebra) -> TwoAlgebra:
    """A0 = M(C), A1 = C x| M(C), s(x,f) = f, t(x,f) = mu(x) + f, e(f) = (0,f).

    Cells (x, f) multiply as (f(x') + f'(x) + x'x, f'f); the C-basis
    comes first in A1.
    """
    M = multipliers(C)
    m, d, k = C.modulus, C.rank, M.rank
    n = d + k
    table = np.zeros((n, n, n), dtype=np.int64)
    basis_c = C.basis_vectors()
    for i in range(d):
        for j in range(d):
            table[i, j, :d] = C.prod(basis_c[j], basis_c[i])
    for i in range(d):
        for j, lam in enumerate(M.basis_maps):
            table[i, d + j, :d] = lam(basis_c[i])
            table[d + j, i, :d] = lam(basis_c[i])
    for i, a in enumerate(M.basis_maps):
        for j, b in enumerate(M.basis_maps):
            table[d + i, d + j, d:] = M.coords_of(b @ a)
    unit = np.concatenate([np.zeros(d, dtype=np.int64), M.as_algebra.unit])
    A1 = FiniteAlgebra(m, table, unit=unit,
                       labels=[f"({C.label(i)},0)" for i in range(d)] + [f"(0,lambda{j})" for j in range(k)])
    mu_map = mu(C, M)
    s = np.hstack([np.zeros((k, d), dtype=np.int64), np.eye(k, dtype=np.int64)])
    t = np.hstack([mu_map.matrix, np.eye(k, dtype=np.int64)])
    e = np.vstack([np.zeros((d, k), dtype=np.int64), np.eye(k, dtype=np.int64)])
    return TwoAlgebra(M.as_algebra, A1, LinearMap(m, s), LinearMap(m, t), LinearMap(m, e))


# Cells written as raw pairs (x in C, f a multiplier map) ----------------------

def target_map(C: FiniteAlgebra, x, f: LinearMap) -> LinearMap:
    """M_x . f, i.e. u -> x u + f(u)."""
    return C.multiplication_map(x) + f


def horizontal(C: FiniteAlgebra, cell, other) -> tuple[np.ndarray, LinearMap]:
    """(x, f) . (y, f') = (f'(x) + f(y) + x y, f' f)."""
    (x, f), (y, fp) = cell, other
    return (fp(x) + f(y) + C.prod(x, y)) % C.modulus, fp @ f


def vertical(C: FiniteAlgebra, cell, other) -> tuple[np.ndarray, LinearMap]:
    """(x, f) o (x', M_x . f) = (x' + x, f)."""
    (x, f), (xp, g) = cell, other
    if g != target_map(C, x, f):
        raise ValueError("cells are not vertically composable")
    return (xp + x) % C.modulus, f


def interchange_sides(C: FiniteAlgebra, x, f: LinearMap, xp, y, fp: LinearMap, yp):
    """Both sides of the interchange law expanded term by term for the quadruple

    (x, f), (x', M_x.f) and (y, f'), (y', M_y.f'). Returns (lhs, rhs) as
    pairs (C-vector, map).
    """
    m = C.modulus
    x, xp, y, yp = (np.asarray(v, dtype=np.int64) for v in (x, xp, y, yp))
    mxf = target_map(C, x, f)
    myfp = target_map(C, y, fp)
    lhs = (fp(xp) + fp(x) + f(yp) + f(y) + C.prod(xp, yp) + C.prod(xp, y) + C.prod(x, yp) + C.prod(x, y)) % m
    rhs = (fp(x) + f(y) + C.prod(x, y) + myfp(xp) + mxf(yp) + C.prod(xp, yp)) % m
    return (lhs, fp @ f), (rhs, fp @ f)
