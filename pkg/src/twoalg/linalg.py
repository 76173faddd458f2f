"""Exact linear algebra over Z/m.

Submodules of (Z/m)^n are stored in Howell form, which is unique for a
given row span and makes membership decidable even when m is not prime.
Free submodules additionally get a canonical basis (``free_basis``),
computed prime-power factor by factor and glued with the CRT.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DomainError, NotFreeError

ELEMENT_CAP = 4096


def _as_rows(rows, m: int, ncols: int | None = None) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.size == 0:
        if ncols is None:
            ncols = a.shape[1] if a.ndim == 2 else 0
        return np.zeros((0, ncols), dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if ncols is not None and a.shape[1] != ncols:
        raise DomainError(f"expected {ncols} columns, got {a.shape[1]}")
    return a % m


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) over the integers."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


@lru_cache(maxsize=None)
def _normalizer(a: int, m: int) -> int:
    """A unit u of Z/m with u*a = gcd(a, m) mod m."""
    g = math.gcd(a, m)
    for u in range(1, m):
        if math.gcd(u, m) == 1 and (u * a) % m == g:
            return u
    raise AssertionError("unreachable: associate of gcd always exists")


def howell_form(rows, m: int, ncols: int | None = None) -> np.ndarray:
    """Howell normal form of the Z/m-row-span of ``rows``.

    Pivots divide m, entries above a pivot are reduced below it, and the
    span of the rows with leading zeros in the first k columns equals the
    part of the full span with leading zeros there (the Howell property).
    Zero rows are dropped.
    """
    a = _as_rows(rows, m, ncols)
    n = a.shape[1]
    work = [row.copy() for row in a]
    r = 0
    for k in range(n):
        if r >= len(work):
            break
        i = r + 1
        while i < len(work):
            b = int(work[i][k])
            if b:
                top = int(work[r][k])
                g, s, t = _xgcd(top, b)
                u, v = -(b // g), top // g
                ra, rb = work[r], work[i]
                work[r] = (s * ra + t * rb) % m
                work[i] = (u * ra + v * rb) % m
            i += 1
        p = int(work[r][k])
        if p == 0:
            continue
        work[r] = (work[r] * _normalizer(p, m)) % m
        p = int(work[r][k])
        for i in range(r):
            q = int(work[i][k]) // p
            if q:
                work[i] = (work[i] - q * work[r]) % m
        ann = ((m // p) * work[r]) % m
        if ann.any():
            work.append(ann)
        r += 1
    out = [row for row in work[:r] if row.any()]
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def _pivots(h: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in h]


def reduce_vector(h: np.ndarray, v, m: int) -> np.ndarray:
    """Remainder of ``v`` against a Howell form ``h``; zero iff v is in the span."""
    v = np.asarray(v, dtype=np.int64) % m
    for row, k in zip(h, _pivots(h)):
        q = int(v[k]) // int(row[k])
        if q:
            v = (v - q * row) % m
    return v


def _augmented(a: np.ndarray, m: int) -> np.ndarray:
    return _augmented_cached(a.tobytes(), a.shape, m)


@lru_cache(maxsize=1 << 14)
def _augmented_cached(data: bytes, shape: tuple[int, int], m: int) -> np.ndarray:
    a = np.frombuffer(data, dtype=np.int64).reshape(shape)
    h = howell_form(np.hstack([a, np.eye(shape[0], dtype=np.int64)]), m)
    h.flags.writeable = False
    return h


def _back_substitute(h: np.ndarray, v: np.ndarray, d: int, n: int, m: int) -> np.ndarray | None:
    w = np.concatenate([v, np.zeros(n, dtype=np.int64)])
    for row, k in zip(h, _pivots(h)):
        if k >= d:
            break
        if int(w[k]) % int(row[k]):
            return None
        q = int(w[k]) // int(row[k])
        w = (w - q * row) % m
    if w[:d].any():
        return None
    return (-w[d:]) % m


def solve_left(a, v, m: int) -> np.ndarray | None:
    """Some y with y @ a = v (mod m), or None when v is not in the row span."""
    a = _as_rows(a, m)
    n, d = a.shape
    v = np.asarray(v, dtype=np.int64) % m
    if n == 0:
        return np.zeros(0, dtype=np.int64) if not v.any() else None
    return _back_substitute(_augmented(a, m), v, d, n, m)


def solve_left_many(a, vs, m: int) -> list[np.ndarray | None]:
    """:func:`solve_left` for each row of ``vs``, sharing one Howell form."""
    a = _as_rows(a, m)
    n, d = a.shape
    vs = np.asarray(vs, dtype=np.int64).reshape(-1, d) % m
    if n == 0:
        return [np.zeros(0, dtype=np.int64) if not v.any() else None for v in vs]
    h = _augmented(a, m)
    return [_back_substitute(h, v, d, n, m) for v in vs]


def kernel_rows(matrix, m: int) -> np.ndarray:
    """Howell form of {x : matrix @ x = 0}; ``matrix`` is cod x dom."""
    f = np.asarray(matrix, dtype=np.int64) % m
    cod, dom = f.shape
    if dom == 0:
        return np.zeros((0, 0), dtype=np.int64)
    aug = np.hstack([f.T, np.eye(dom, dtype=np.int64)])
    h = howell_form(aug, m, cod + dom)
    keep = [row[cod:] for row in h if not row[:cod].any()]
    return howell_form(np.array(keep).reshape(-1, dom), m, dom)


def _factor(m: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            out.append((p, q))
        p += 1
    if m > 1:
        out.append((m, m))
    return out


def _local_free_basis(rows: np.ndarray, p: int, q: int) -> np.ndarray | None:
    """Basis of a submodule of (Z/p^k)^n by unit-pivot elimination, or None.

    Over a local ring the rows left without any unit entry span a
    p-torsion summand, so the module is free iff nothing is left over.
    """
    n = rows.shape[1]
    rest = [row % q for row in rows if (row % q).any()]
    chosen: list[tuple[int, np.ndarray]] = []
    while True:
        pick = None
        for j in range(n):
            for i, row in enumerate(rest):
                if row[j] % p:
                    pick = (i, j)
                    break
            if pick:
                break
        if pick is None:
            break
        i, j = pick
        row = rest.pop(i)
        row = (row * pow(int(row[j]), -1, q)) % q
        rest = [(r - int(r[j]) * row) % q for r in rest]
        rest = [r for r in rest if r.any()]
        chosen = [(k, (c - int(c[j]) * row) % q) for k, c in chosen]
        chosen.append((j, row))
    if rest:
        return None
    chosen.sort(key=lambda kc: kc[0])
    return np.array([c for _, c in chosen], dtype=np.int64).reshape(-1, n)


def free_basis(rows, m: int, ncols: int | None = None) -> np.ndarray:
    """Canonical basis of the span of ``rows``; raises NotFreeError if not free."""
    a = _as_rows(rows, m, ncols)
    n = a.shape[1]
    parts = []
    for p, q in _factor(m):
        local = _local_free_basis(a, p, q)
        if local is None:
            raise NotFreeError(f"span is not a free Z/{m}-module (torsion at prime {p})")
        parts.append((q, local))
    ranks = {b.shape[0] for _, b in parts}
    if len(ranks) > 1:
        raise NotFreeError(f"span has different ranks at the prime factors of {m}")
    r = ranks.pop() if ranks else 0
    out = np.zeros((r, n), dtype=np.int64)
    for q, b in parts:
        rest = m // q
        # CRT idempotent for this factor: 1 mod q, 0 mod m/q
        idem = (rest * pow(rest, -1, q)) % m if rest > 1 else 1
        out = (out + idem * b) % m
    return out


def all_vectors(m: int, n: int, cap: int = ELEMENT_CAP) -> np.ndarray:
    """Every vector of (Z/m)^n in lexicographic order, refusing above ``cap``."""
    count = m**n
    if count > cap:
        from .errors import CapExceeded

        raise CapExceeded(count, cap)
    codes = np.arange(count, dtype=np.int64)[:, None]
    weights = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (codes // weights) % m


def encode(vectors: np.ndarray, m: int) -> np.ndarray:
    """Integer code of each row, base m, most significant coordinate first."""
    vectors = np.atleast_2d(vectors)
    weights = m ** np.arange(vectors.shape[1] - 1, -1, -1, dtype=np.int64)
    return vectors @ weights


class Submodule:
    """A Z/m-submodule of (Z/m)^n held by its Howell form."""

    __slots__ = ("modulus", "ambient", "rows")

    def __init__(self, modulus: int, ambient: int, generators=()):
        self.modulus = modulus
        self.ambient = ambient
        self.rows = howell_form(_as_rows(generators, modulus, ambient), modulus, ambient)
        self.rows.setflags(write=False)

    @classmethod
    def full(cls, modulus, ambient):
        return cls(modulus, ambient, np.eye(ambient, dtype=np.int64))

    @classmethod
    def zero(cls, modulus, ambient):
        return cls(modulus, ambient)

    def reduce(self, v) -> np.ndarray:
        return reduce_vector(self.rows, v, self.modulus)

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    __contains__ = contains

    def contains_all(self, vectors) -> bool:
        return all(self.contains(v) for v in np.atleast_2d(vectors))

    def order(self) -> int:
        m = self.modulus
        return math.prod(m // int(row[k]) for row, k in zip(self.rows, _pivots(self.rows)))

    def is_zero(self) -> bool:
        return self.rows.shape[0] == 0

    def is_full(self) -> bool:
        return self.order() == self.modulus**self.ambient

    def basis(self) -> np.ndarray:
        return free_basis(self.rows, self.modulus, self.ambient)

    def __add__(self, other: Submodule) -> Submodule:
        return Submodule(self.modulus, self.ambient, np.vstack([self.rows, other.rows]))

    def __le__(self, other: Submodule) -> bool:
        return other.contains_all(self.rows) if len(self.rows) else True

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.ambient == other.ambient
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self):
        return hash((self.modulus, self.ambient, self.rows.tobytes()))

    def elements(self, cap: int = ELEMENT_CAP) -> np.ndarray:
        """All members, by filtering the ambient module (cap on m^n)."""
        vs = all_vectors(self.modulus, self.ambient, cap)
        return np.array([v for v in vs if self.contains(v)], dtype=np.int64).reshape(-1, self.ambient)

    def __repr__(self):
        return f"Submodule(Z/{self.modulus}, n={self.ambient}, rows={self.rows.tolist()})"


class LinearMap:
    """A Z/m-linear map (Z/m)^dom -> (Z/m)^cod; column j is the image of e_j."""

    __slots__ = ("modulus", "matrix")

    def __init__(self, modulus: int, matrix):
        if modulus < 2:
            raise DomainError(f"modulus must be >= 2, got {modulus}")
        a = np.array(matrix, dtype=np.int64)
        if a.ndim != 2:
            raise DomainError(f"linear map needs a 2-d matrix, got shape {a.shape}")
        a %= modulus
        a.setflags(write=False)
        self.modulus = modulus
        self.matrix = a

    @classmethod
    def identity(cls, modulus, dim):
        return cls(modulus, np.eye(dim, dtype=np.int64))

    @classmethod
    def zero(cls, modulus, cod, dom):
        return cls(modulus, np.zeros((cod, dom), dtype=np.int64))

    @property
    def dom(self) -> int:
        return self.matrix.shape[1]

    @property
    def cod(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if v.ndim == 1:
            return (self.matrix @ v) % self.modulus
        return (v @ self.matrix.T) % self.modulus

    def _same(self, other):
        if not isinstance(other, LinearMap) or other.modulus != self.modulus:
            raise DomainError("linear maps over different moduli")

    def __matmul__(self, other: LinearMap) -> LinearMap:
        """Composition: (f @ g)(v) = f(g(v))."""
        self._same(other)
        if self.dom != other.cod:
            raise DomainError(f"cannot compose {self.shape} after {other.shape}")
        return LinearMap(self.modulus, self.matrix @ other.matrix)

    def __add__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")
        return LinearMap(self.modulus, self.matrix + other.matrix)

    def __sub__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")
        return LinearMap(self.modulus, self.matrix - other.matrix)

    def __neg__(self):
        return LinearMap(self.modulus, -self.matrix)

    def __rmul__(self, k: int):
        return LinearMap(self.modulus, int(k) * self.matrix)

    @property
    def shape(self):
        return self.matrix.shape

    def kernel(self) -> Submodule:
        return Submodule(self.modulus, self.dom, kernel_rows(self.matrix, self.modulus))

    def image(self) -> Submodule:
        return Submodule(self.modulus, self.cod, self.matrix.T)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.modulus, self.matrix.shape, self.matrix.tobytes()))

    def __repr__(self):
        return f"LinearMap(Z/{self.modulus}, {self.matrix.tolist()})"


def kernel(f: LinearMap) -> Submodule:
    return f.kernel()


def coordinates(basis: np.ndarray, v, m: int) -> np.ndarray:
    """Coordinates of ``v`` in the rows of a free ``basis``; DomainError if outside."""
    y = solve_left(basis, v, m)
    if y is None:
        raise DomainError(f"vector {np.asarray(v).tolist()} is not in the span of the basis")
    return y


def coordinate_matrix(basis: np.ndarray, vectors, m: int) -> np.ndarray:
    """Matrix whose column j holds the coordinates of vectors[j] in ``basis``."""
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, basis.shape[1] if basis.ndim == 2 else 0)
    cols = solve_left_many(basis, vectors, m)
    for v, y in zip(vectors, cols):
        if y is None:
            raise DomainError(f"vector {v.tolist()} is not in the span of the basis")
    if not cols:
        return np.zeros((basis.shape[0], 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).reshape(len(cols), basis.shape[0]).T
