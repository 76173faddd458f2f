"""2-modules, strict commutative 2-algebras and their morphisms.

Vertical composition is never stored. In an internal category in modules
it is forced to be ``a o b = a + b - e(s(b))``, so every routine here
recomputes it from (s, t, e).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteAlgebra, check_algebra, check_morphism
from .errors import CapExceeded, ComposabilityError, DomainError
from .linalg import ELEMENT_CAP, LinearMap, all_vectors, encode
from .report import Report

QUADRUPLE_CAP = 1 << 22


@dataclass(frozen=True, eq=True)
class TwoModule:
    modulus: int
    s: LinearMap
    t: LinearMap
    e: LinearMap

    def __post_init__(self):
        d1, d0 = self.s.dom, self.s.cod
        if self.t.shape != (d0, d1) or self.e.shape != (d1, d0):
            raise DomainError(
                f"s, t must be {d1}->{d0} and e {d0}->{d1}; got {self.s.shape}, {self.t.shape}, {self.e.shape}"
            )

    @property
    def d0(self) -> int:
        return self.s.cod

    @property
    def d1(self) -> int:
        return self.s.dom

    def kernel_s(self):
        return self.s.kernel()


@dataclass(frozen=True, eq=True)
class TwoAlgebra:
    """Objects-level algebra A0, cell algebra A1, and s, t: A1 -> A0, e: A0 -> A1.

    The cell product of A1 is the horizontal composition.
    """

    A0: FiniteAlgebra
    A1: FiniteAlgebra
    s: LinearMap
    t: LinearMap
    e: LinearMap

    def __post_init__(self):
        if self.s.shape != (self.A0.rank, self.A1.rank):
            raise DomainError(f"s has shape {self.s.shape}, expected {(self.A0.rank, self.A1.rank)}")
        TwoModule(self.modulus, self.s, self.t, self.e)

    @property
    def modulus(self) -> int:
        return self.A0.modulus

    @property
    def module(self) -> TwoModule:
        return TwoModule(self.modulus, self.s, self.t, self.e)

    def hprod(self, a, b) -> np.ndarray:
        """Horizontal composition a . b (the A1 product)."""
        return self.A1.prod(a, b)

    def compose(self, a, b) -> np.ndarray:
        return compose_cells(self, a, b)

    @classmethod
    def discrete(cls, A: FiniteAlgebra) -> TwoAlgebra:
        ident = LinearMap.identity(A.modulus, A.rank)
        return cls(A, A, ident, ident, ident)


def _module_of(T) -> TwoModule:
    return T.module if isinstance(T, TwoAlgebra) else T


def compose_cells(T, a, b) -> np.ndarray:
    """Vertical composite a o b = a + b - e(s(b)); requires t(a) = s(b)."""
    M = _module_of(T)
    a = np.asarray(getattr(a, "vec", a), dtype=np.int64)
    b = np.asarray(getattr(b, "vec", b), dtype=np.int64)
    ta, sb = M.t(a), M.s(b)
    if not np.array_equal(ta, sb):
        raise ComposabilityError(ta, sb)
    return (a + b - M.e(sb)) % M.modulus


def _compose_many(M: TwoModule, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a + b - M.e(M.s(b))) % M.modulus


def composable_spanning_pairs(M: TwoModule):
    """Pairs spanning the module of composable pairs: (e_i, e(t e_i)) and (0, q), q in Ker s."""
    d1 = M.d1
    ker = M.kernel_s().rows
    basis = np.eye(d1, dtype=np.int64)
    pairs = [(basis[i], M.e(M.t(basis[i]))) for i in range(d1)]
    pairs += [(np.zeros(d1, dtype=np.int64), q) for q in ker]
    return pairs


def composable_pairs(M: TwoModule, cap: int = ELEMENT_CAP):
    """All composable pairs (a, b) as two stacked arrays (|M1| <= cap)."""
    cells = all_vectors(M.modulus, M.d1, cap)
    src = encode(M.s(cells), M.modulus)
    tgt = encode(M.t(cells), M.modulus)
    groups: dict[int, list[int]] = {}
    for i, code in enumerate(src):
        groups.setdefault(int(code), []).append(i)
    left, right = [], []
    for i, code in enumerate(tgt):
        for j in groups.get(int(code), ()):
            left.append(i)
            right.append(j)
    return cells[left], cells[right]


def check_two_module(T, exhaustive: bool = False, cap: int = ELEMENT_CAP,
                     subject: str = "2-module") -> Report:
    """Identity laws s e = t e = id, then the category laws of the forced composition.

    The default mode checks source/target, unit and associativity laws on
    a spanning set of composable pairs and triples, which is complete by
    linearity; ``exhaustive`` enumerates every composable triple instead.
    """
    M = _module_of(T)
    m = M.modulus
    rep = Report(subject)
    for name, f in (("SE_ID", M.s @ M.e), ("TE_ID", M.t @ M.e)):
        bad = np.flatnonzero((f.matrix != np.eye(M.d0, dtype=np.int64)).any(axis=0))
        rep.add(name, len(bad) == 0, (int(bad[0]),) if len(bad) else (),
                f"image of basis {int(bad[0])} is {f.matrix[:, bad[0]].tolist()}" if len(bad) else "")
    if not rep.ok:
        return rep

    if exhaustive:
        a, b = composable_pairs(M, cap)
        cells = all_vectors(m, M.d1, cap)
        by_first: dict[int, list[int]] = {}
        for j, code in enumerate(encode(a, m)):
            by_first.setdefault(int(code), []).append(j)
        triples = [(a[i], b[i], b[j])
                   for i, code in enumerate(encode(b, m))
                   for j in by_first.get(int(code), ())]
    else:
        pairs = composable_spanning_pairs(M)
        a = np.array([p[0] for p in pairs]).reshape(-1, M.d1)
        b = np.array([p[1] for p in pairs]).reshape(-1, M.d1)
        cells = np.eye(M.d1, dtype=np.int64)
        ker = M.kernel_s().rows
        z = np.zeros(M.d1, dtype=np.int64)
        triples = []
        for x in cells:
            tx = M.e(M.t(x))
            triples.append((x, tx, tx))
        for q in ker:
            triples.append((z, q, M.e(M.t(q))))
            triples.append((z, z, q))

    ab = _compose_many(M, a, b) if len(a) else a
    bad = np.flatnonzero((M.s(ab) != M.s(a)).any(axis=1)) if len(a) else []
    rep.add("COMP_SRC", len(bad) == 0, (tuple(a[bad[0]]), tuple(b[bad[0]])) if len(bad) else ())
    bad = np.flatnonzero((M.t(ab) != M.t(b)).any(axis=1)) if len(a) else []
    rep.add("COMP_TGT", len(bad) == 0, (tuple(a[bad[0]]), tuple(b[bad[0]])) if len(bad) else ())

    left = _compose_many(M, M.e(M.s(cells)), cells)
    right = _compose_many(M, cells, M.e(M.t(cells)))
    bad = np.flatnonzero(((left != cells) | (right != cells)).any(axis=1))
    rep.add("COMP_UNIT", len(bad) == 0, (tuple(cells[bad[0]]),) if len(bad) else ())

    witness = ()
    for x, y, z in triples:
        lhs = compose_cells(M, compose_cells(M, x, y), z)
        rhs = compose_cells(M, x, compose_cells(M, y, z))
        if not np.array_equal(lhs, rhs):
            witness = (tuple(x), tuple(y), tuple(z))
            break
    rep.add("COMP_ASSOC", not witness, witness, f"{len(triples)} triples")
    return rep


def interchange_defect(A: TwoAlgebra, f1, f2, g1, g2) -> np.ndarray:
    """(f1.g1) o (f2.g2) - (f1 o f2).(g1 o g2); zero iff interchange holds here."""
    f1, f2, g1, g2 = (np.asarray(getattr(x, "vec", x), dtype=np.int64) for x in (f1, f2, g1, g2))
    lhs = compose_cells(A, A.hprod(f1, g1), A.hprod(f2, g2))
    rhs = A.hprod(compose_cells(A, f1, f2), compose_cells(A, g1, g2))
    return (lhs - rhs) % A.modulus


def interchange_witness(A: TwoAlgebra):
    """First pair (i, j) of Ker s generators with q_i . q_j != e(t(q_i)) . q_j, or None.

    Every cell is q + e(x) with q in Ker s, and expanding both sides of the
    interchange law leaves exactly (Ker t)(Ker s) = 0, which on generators
    reads q . q' = e(t(q)) . q'.
    """
    ker = A.s.kernel().rows
    for i, q in enumerate(ker):
        etq = A.e(A.t(q))
        for j, q2 in enumerate(ker):
            if not np.array_equal(A.hprod(q, q2), A.hprod(etq, q2)):
                return i, j, q, q2
    return None


def exhaustive_interchange(A: TwoAlgebra, cap: int = ELEMENT_CAP, quad_cap: int = QUADRUPLE_CAP):
    """Scan every composable quadruple; return the first failing one or None."""
    M = A.module
    a, b = composable_pairs(M, cap)
    n = len(a)
    if n * n > quad_cap:
        raise CapExceeded(n * n, quad_cap)
    m = A.modulus
    for i in range(n):
        f1 = np.broadcast_to(a[i], a.shape)
        f2 = np.broadcast_to(b[i], b.shape)
        top = A.hprod(f1, a)
        bottom = A.hprod(f2, b)
        lhs = _compose_many(M, top, bottom)
        rhs = A.hprod(_compose_many(M, f1[:1], f2[:1]), _compose_many(M, a, b))
        bad = np.flatnonzero(((lhs - rhs) % m).any(axis=1))
        if len(bad):
            j = bad[0]
            return a[i], b[i], a[j], b[j]
    return None


def check_two_algebra(A: TwoAlgebra, exhaustive: bool = False, cap: int = ELEMENT_CAP,
                      subject: str = "2-algebra") -> Report:
    rep = Report(subject)
    rep.extend(check_algebra(A.A0), "A0.")
    rep.extend(check_algebra(A.A1), "A1.")
    for name, alg in (("A0", A.A0), ("A1", A.A1)):
        rep.add(f"{name}.UNITAL", alg.unit is not None, (), "" if alg.unit is not None else "no unit")
    rep.extend(check_morphism(A.s, A.A1, A.A0, unital=True), "s.")
    rep.extend(check_morphism(A.t, A.A1, A.A0, unital=True), "t.")
    rep.extend(check_morphism(A.e, A.A0, A.A1, unital=True), "e.")
    rep.extend(check_two_module(A.module, exhaustive=exhaustive, cap=cap))
    if A.A0.unit is not None and A.A1.unit is not None:
        one = A.e(A.A0.unit)
        cells = np.eye(A.A1.rank, dtype=np.int64)
        ok = np.array_equal(one, A.A1.unit) and np.array_equal(A.hprod(np.broadcast_to(one, cells.shape), cells), cells)
        rep.add("UNIT", ok, (), "" if ok else f"e(1) = {A.A1.fmt(one)}")
    w = interchange_witness(A) if rep.passed("SE_ID") else None
    detail = ""
    if w is not None:
        i, j, q, q2 = w
        detail = (f"q{i}.q{j} = {A.A1.fmt(A.hprod(q, q2))} but e(t(q{i})).q{j} = "
                  f"{A.A1.fmt(A.hprod(A.e(A.t(q)), q2))} for Ker s generators q{i}={q.tolist()}, q{j}={q2.tolist()}")
    rep.add("ICHG", w is None, (w[0], w[1]) if w else (), detail)
    if exhaustive:
        quad = exhaustive_interchange(A, cap)
        rep.add("ICHG_EXHAUSTIVE", quad is None,
                tuple(tuple(int(v) for v in x) for x in quad) if quad is not None else ())
    return rep


@dataclass(frozen=True, eq=True)
class TwoAlgMorphism:
    source: TwoAlgebra
    target: TwoAlgebra
    F1: LinearMap
    F0: LinearMap

    @classmethod
    def identity(cls, A: TwoAlgebra) -> TwoAlgMorphism:
        m = A.modulus
        return cls(A, A, LinearMap.identity(m, A.A1.rank), LinearMap.identity(m, A.A0.rank))

    def after(self, other: TwoAlgMorphism) -> TwoAlgMorphism:
        if other.target != self.source:
            raise DomainError("morphisms are not composable")
        return TwoAlgMorphism(other.source, self.target, self.F1 @ other.F1, self.F0 @ other.F0)


def _square(rep, name, lhs: LinearMap, rhs: LinearMap, what: str):
    bad = np.flatnonzero((lhs.matrix != rhs.matrix).any(axis=0))
    rep.add(name, len(bad) == 0, (int(bad[0]),) if len(bad) else (),
            f"{what} differ on basis {int(bad[0])}: {lhs.matrix[:, bad[0]].tolist()} vs "
            f"{rhs.matrix[:, bad[0]].tolist()}" if len(bad) else "")


def check_two_alg_morphism(F: TwoAlgMorphism, subject: str = "2-algebra morphism") -> Report:
    A, B = F.source, F.target
    if F.F1.shape != (B.A1.rank, A.A1.rank) or F.F0.shape != (B.A0.rank, A.A0.rank):
        raise DomainError("morphism components do not match source/target ranks")
    rep = Report(subject)
    rep.extend(check_morphism(F.F0, A.A0, B.A0, unital=True), "F0.")
    rep.extend(check_morphism(F.F1, A.A1, B.A1, unital=True), "F1.")
    _square(rep, "SRC", B.s @ F.F1, F.F0 @ A.s, "s'F1 and F0 s")
    _square(rep, "TGT", B.t @ F.F1, F.F0 @ A.t, "t'F1 and F0 t")
    _square(rep, "IDENT", B.e @ F.F0, F.F1 @ A.e, "e'F0 and F1 e")
    witness, detail = (), ""
    for a, b in composable_spanning_pairs(A.module):
        try:
            lhs = F.F1(compose_cells(A, a, b))
            rhs = compose_cells(B, F.F1(a), F.F1(b))
        except ComposabilityError as exc:
            witness, detail = (tuple(a), tuple(b)), str(exc)
            break
        if not np.array_equal(lhs, rhs):
            witness, detail = (tuple(a), tuple(b)), f"F1(a o b) = {lhs.tolist()} but F1(a) o F1(b) = {rhs.tolist()}"
            break
    rep.add("COMP", not witness, witness, detail)
    return rep
