"""Finite commutative algebras over Z/m given by structure constants."""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .linalg import ELEMENT_CAP, LinearMap, Submodule, all_vectors
from .report import Report


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class FiniteAlgebra:
    """Free Z/m-module of rank d with product e_i e_j = sum_l mul[i, j, l] e_l.

    Construction only checks shapes and reduces entries; the algebra axioms
    are reported by :func:`check_algebra`, so invalid tables can be built
    and inspected.
    """

    __slots__ = ("modulus", "mul_table", "unit", "labels")

    def __init__(self, modulus: int, mul, unit=None, labels=None):
        if modulus < 2:
            raise DomainError(f"modulus must be >= 2, got {modulus}")
        c = np.array(mul, dtype=np.int64)
        if c.size == 0:
            d = c.shape[0] if c.ndim == 3 else 0
            c = np.zeros((d, d, d), dtype=np.int64)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise DomainError(f"structure constants must have shape (d, d, d), got {c.shape}")
        self.modulus = modulus
        self.mul_table = _frozen(c % modulus)
        d = c.shape[0]
        if unit is not None:
            u = np.array(unit, dtype=np.int64).reshape(-1)
            if u.shape != (d,):
                raise DomainError(f"unit must have length {d}")
            unit = _frozen(u % modulus)
        self.unit = unit
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != d:
                raise DomainError(f"expected {d} basis labels")
            if labels == tuple(f"e{i}" for i in range(d)):
                labels = None
        self.labels = labels

    @property
    def rank(self) -> int:
        return self.mul_table.shape[0]

    @classmethod
    def zero_mult(cls, modulus, rank):
        return cls(modulus, np.zeros((rank, rank, rank), dtype=np.int64))

    @classmethod
    def scalars(cls, modulus):
        """Z/m itself."""
        return cls(modulus, [[[1]]], unit=[1])

    @classmethod
    def truncated_poly(cls, modulus, degree):
        """Z/m[x]/(x^degree) on the basis 1, x, ..., x^(degree-1)."""
        c = np.zeros((degree, degree, degree), dtype=np.int64)
        for i in range(degree):
            for j in range(degree):
                if i + j < degree:
                    c[i, j, i + j] = 1
        u = np.zeros(degree, dtype=np.int64)
        u[0] = 1
        labels = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, degree)]
        return cls(modulus, c, unit=u, labels=labels)

    # raw vector arithmetic ------------------------------------------------
    def prod(self, u, v) -> np.ndarray:
        """Product of coordinate vectors (or stacks of them, row-wise)."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if u.ndim == 1 and v.ndim == 1:
            return np.einsum("i,j,ijl->l", u, v, self.mul_table) % self.modulus
        u, v = np.broadcast_arrays(np.atleast_2d(u), np.atleast_2d(v))
        return np.einsum("ni,nj,ijl->nl", u, v, self.mul_table) % self.modulus

    def left_matrix(self, u) -> np.ndarray:
        """Matrix of c -> u*c (column j is u*e_j)."""
        u = np.asarray(u, dtype=np.int64)
        return np.einsum("i,ijl->lj", u, self.mul_table) % self.modulus

    def multiplication_map(self, u) -> LinearMap:
        return LinearMap(self.modulus, self.left_matrix(u))

    def basis_vectors(self) -> np.ndarray:
        return np.eye(self.rank, dtype=np.int64)

    # elements ---------------------------------------------------------------
    def element(self, coords) -> Element:
        return Element(self, coords)

    def zero(self) -> Element:
        return Element(self, np.zeros(self.rank, dtype=np.int64))

    def one(self) -> Element:
        if self.unit is None:
            raise DomainError("algebra has no unit")
        return Element(self, self.unit)

    def basis(self) -> list[Element]:
        return [Element(self, row) for row in self.basis_vectors()]

    def gen(self, i: int) -> Element:
        return Element(self, self.basis_vectors()[i])

    def elements(self, cap: int = ELEMENT_CAP):
        for v in all_vectors(self.modulus, self.rank, cap):
            yield Element(self, v)

    def mul(self, x: Element, y: Element) -> Element:
        if x.parent is not self and x.parent != self or y.parent is not self and y.parent != self:
            raise DomainError("elements do not belong to this algebra")
        return Element(self, self.prod(x.vec, y.vec))

    def span(self, vectors) -> Submodule:
        return Submodule(self.modulus, self.rank, vectors)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"

    def fmt(self, v) -> str:
        """Human-readable linear combination of basis labels."""
        v = np.asarray(v).reshape(-1)
        terms = []
        for i, c in enumerate(v):
            if c:
                terms.append(self.label(i) if c == 1 else f"{int(c)}*{self.label(i)}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        same_unit = (self.unit is None and other.unit is None) or (
            self.unit is not None and other.unit is not None and np.array_equal(self.unit, other.unit)
        )
        return (
            self.modulus == other.modulus
            and np.array_equal(self.mul_table, other.mul_table)
            and same_unit
        )

    def __hash__(self):
        u = None if self.unit is None else self.unit.tobytes()
        return hash((self.modulus, self.mul_table.shape, self.mul_table.tobytes(), u))

    def __repr__(self):
        return f"FiniteAlgebra(Z/{self.modulus}, rank={self.rank}, unital={self.unit is not None})"


class Element:
    """An element of a FiniteAlgebra; coordinates are reduced to [0, m)."""

    __slots__ = ("parent", "vec")

    def __init__(self, parent: FiniteAlgebra, coords):
        v = np.array(coords, dtype=np.int64).reshape(-1)
        if v.shape != (parent.rank,):
            raise DomainError(f"expected {parent.rank} coordinates, got {v.shape[0]}")
        v %= parent.modulus
        v.setflags(write=False)
        self.parent = parent
        self.vec = v

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.vec)

    def _check(self, other):
        if not isinstance(other, Element):
            raise DomainError(f"expected an Element, got {type(other).__name__}")
        if other.parent is not self.parent and other.parent != self.parent:
            raise DomainError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return Element(self.parent, self.vec + other.vec)

    def __sub__(self, other):
        self._check(other)
        return Element(self.parent, self.vec - other.vec)

    def __neg__(self):
        return Element(self.parent, -self.vec)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return Element(self.parent, int(other) * self.vec)
        self._check(other)
        return Element(self.parent, self.parent.prod(self.vec, other.vec))

    def __rmul__(self, k):
        if isinstance(k, (int, np.integer)):
            return Element(self.parent, int(k) * self.vec)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.vec.any()

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.parent == other.parent and np.array_equal(self.vec, other.vec)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Element({self.parent.fmt(self.vec)})"


def mul(A: FiniteAlgebra, x: Element, y: Element) -> Element:
    return A.mul(x, y)


def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return tuple(int(i) for i in idx[0]) if len(idx) else None


def check_algebra(A: FiniteAlgebra, subject: str = "algebra") -> Report:
    """Commutativity, associativity and (if a unit is given) unit law on basis tuples."""
    rep = Report(subject)
    c, m = A.mul_table, A.modulus
    w = _first((c != c.transpose(1, 0, 2)).any(axis=2))
    rep.add("COMM", w is None, w or (), "" if w is None else
            f"e{w[0]}*e{w[1]} = {A.fmt(c[w])} but e{w[1]}*e{w[0]} = {A.fmt(c[w[1], w[0]])}")
    lhs = np.einsum("ijp,pql->ijql", c, c) % m
    rhs = np.einsum("jqp,ipl->ijql", c, c) % m
    w = _first((lhs != rhs).any(axis=3))
    rep.add("ASSOC", w is None, w or (), "" if w is None else
            f"(e{w[0]}e{w[1]})e{w[2]} = {A.fmt(lhs[w])} but e{w[0]}(e{w[1]}e{w[2]}) = {A.fmt(rhs[w])}")
    if A.unit is not None:
        got = np.einsum("i,ijl->jl", A.unit, c) % m
        w = _first((got != np.eye(A.rank, dtype=np.int64)).any(axis=1))
        rep.add("UNIT", w is None, w or (), "" if w is None else f"1*e{w[0]} = {A.fmt(got[w[0]])}")
    return rep


def check_morphism(f: LinearMap, A: FiniteAlgebra, B: FiniteAlgebra, unital: bool = False,
                   subject: str = "morphism") -> Report:
    """Multiplicativity on basis pairs, plus f(1) = 1 when ``unital`` and both have units."""
    if f.shape != (B.rank, A.rank):
        raise DomainError(f"map shape {f.shape} does not match ranks {A.rank} -> {B.rank}")
    if f.modulus != A.modulus or A.modulus != B.modulus:
        raise DomainError("moduli differ")
    rep = Report(subject)
    fm, m = f.matrix, A.modulus
    lhs = np.einsum("ijp,lp->ijl", A.mul_table, fm) % m
    rhs = np.einsum("pi,qj,pql->ijl", fm, fm, B.mul_table) % m
    w = _first((lhs != rhs).any(axis=2))
    rep.add("HOM", w is None, w or (), "" if w is None else
            f"f(e{w[0]}e{w[1]}) = {B.fmt(lhs[w])} but f(e{w[0]})f(e{w[1]}) = {B.fmt(rhs[w])}")
    if unital and A.unit is not None and B.unit is not None:
        img = f(A.unit)
        rep.add("HOM_UNIT", np.array_equal(img, B.unit), (),
                "" if np.array_equal(img, B.unit) else f"f(1) = {B.fmt(img)}")
    return rep


class ActionTensor:
    """Bilinear action of R on C: r_i > c_j = sum_l tensor[i, j, l] c_l."""

    __slots__ = ("acting", "acted", "tensor")

    def __init__(self, acting: FiniteAlgebra, acted: FiniteAlgebra, tensor):
        a = np.array(tensor, dtype=np.int64)
        if a.size == 0:
            a = np.zeros((acting.rank, acted.rank, acted.rank), dtype=np.int64)
        if a.shape != (acting.rank, acted.rank, acted.rank):
            raise DomainError(
                f"action tensor shape {a.shape} != {(acting.rank, acted.rank, acted.rank)}"
            )
        if acting.modulus != acted.modulus:
            raise DomainError("acting and acted algebras have different moduli")
        self.acting = acting
        self.acted = acted
        self.tensor = _frozen(a % acting.modulus)

    @classmethod
    def by_multiplication(cls, R: FiniteAlgebra, ideal_basis: np.ndarray, C: FiniteAlgebra):
        """Action of R on an ideal C of R whose basis rows are ``ideal_basis``."""
        from .linalg import coordinates

        m = R.modulus
        t = np.zeros((R.rank, C.rank, C.rank), dtype=np.int64)
        for i in range(R.rank):
            for j in range(C.rank):
                prod = R.prod(np.eye(R.rank, dtype=np.int64)[i], ideal_basis[j])
                t[i, j] = coordinates(ideal_basis, prod, m)
        return cls(R, C, t)

    def act(self, r, c) -> np.ndarray:
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        return np.einsum("i,j,ijl->l", r, c, self.tensor) % self.acted.modulus

    def matrix_of(self, r) -> np.ndarray:
        """Matrix of c -> r > c."""
        return np.einsum("i,ijl->lj", np.asarray(r, dtype=np.int64), self.tensor) % self.acted.modulus

    def __eq__(self, other):
        if not isinstance(other, ActionTensor):
            return NotImplemented
        return (self.acting == other.acting and self.acted == other.acted
                and np.array_equal(self.tensor, other.tensor))

    def __hash__(self):
        return hash(self.tensor.tobytes())

    def __repr__(self):
        return f"ActionTensor({self.acting!r} on {self.acted!r})"


def check_action(act: ActionTensor, unital: bool = True, subject: str = "action") -> Report:
    """(rr')>c = r>(r'>c), r>(cc') = (r>c)c', and 1>c = c when ``unital``."""
    R, C, a, m = act.acting, act.acted, act.tensor, act.acted.modulus
    rep = Report(subject)
    lhs = np.einsum("ijp,pkl->ijkl", R.mul_table, a) % m
    rhs = np.einsum("jkp,ipl->ijkl", a, a) % m
    w = _first((lhs != rhs).any(axis=3))
    rep.add("ACT_ASSOC", w is None, w or (), "" if w is None else
            f"(r{w[0]}r{w[1]})>c{w[2]} = {C.fmt(lhs[w])} but r{w[0]}>(r{w[1]}>c{w[2]}) = {C.fmt(rhs[w])}")
    lhs = np.einsum("jkp,ipl->ijkl", C.mul_table, a) % m
    rhs = np.einsum("ijp,pkl->ijkl", a, C.mul_table) % m
    w = _first((lhs != rhs).any(axis=3))
    rep.add("ACT_MUL", w is None, w or (), "" if w is None else
            f"r{w[0]}>(c{w[1]}c{w[2]}) = {C.fmt(lhs[w])} but (r{w[0]}>c{w[1]})c{w[2]} = {C.fmt(rhs[w])}")
    if unital and R.unit is not None:
        got = np.einsum("i,ijl->jl", R.unit, a) % m
        w = _first((got != np.eye(C.rank, dtype=np.int64)).any(axis=1))
        rep.add("ACT_UNIT", w is None, w or (), "" if w is None else f"1>c{w[0]} = {C.fmt(got[w[0]])}")
    return rep


def check_algebra_exhaustive(A: FiniteAlgebra, cap: int = ELEMENT_CAP) -> Report:
    """Element-level commutativity and associativity over all of A (|A| <= cap)."""
    rep = Report("algebra (exhaustive)")
    xs = all_vectors(A.modulus, A.rank, cap)
    comm = assoc = None
    for x in xs:
        xy = A.prod(np.broadcast_to(x, xs.shape), xs)
        yx = A.prod(xs, np.broadcast_to(x, xs.shape))
        bad = np.flatnonzero((xy != yx).any(axis=1))
        if comm is None and len(bad):
            comm = (tuple(x), tuple(xs[bad[0]]))
        for y, p in zip(xs, xy):
            left = A.prod(np.broadcast_to(p, xs.shape), xs)
            right = A.prod(np.broadcast_to(x, xs.shape), A.prod(np.broadcast_to(y, xs.shape), xs))
            bad = np.flatnonzero((left != right).any(axis=1))
            if len(bad):
                assoc = (tuple(x), tuple(y), tuple(xs[bad[0]]))
                break
        if assoc is not None:
            break
    rep.add("COMM", comm is None, comm or ())
    rep.add("ASSOC", assoc is None, assoc or ())
    return rep
