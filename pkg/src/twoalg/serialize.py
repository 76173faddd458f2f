"""Canonical JSON files for every structure in the package.

One file holds one structure. Anything a structure refers to (the algebras
of a crossed module, the source of a morphism) is embedded by value.
Tensors are sparse ``[i, j, l, value]`` lists sorted by index with zeros
omitted; maps are dense row-major matrices. Keys always appear in the
same order, so equal values produce identical bytes.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import ActionTensor, FiniteAlgebra
from .errors import ParseError
from .homotopy import Derivation, TwoAlgHomotopy
from .linalg import LinearMap
from .twocat import TwoAlgebra, TwoAlgMorphism
from .xmod import CrossedModule, XModMorphism

KINDS = ("algebra", "xmod", "2alg", "xmod_morphism", "2alg_morphism", "derivation", "2alg_homotopy")


# writing ------------------------------------------------------------------

def _sparse(t: np.ndarray) -> list[list[int]]:
    return [[*map(int, idx), int(t[idx])] for idx in zip(*np.nonzero(t))]


def _dense(f: LinearMap) -> list[list[int]]:
    return f.matrix.tolist()


def to_dict(obj) -> dict:
    if isinstance(obj, FiniteAlgebra):
        out = {"kind": "algebra", "modulus": obj.modulus, "rank": obj.rank, "mul": _sparse(obj.mul_table),
               "unit": None if obj.unit is None else obj.unit.tolist()}
        if obj.labels is not None:
            out["labels"] = list(obj.labels)
        return out
    if isinstance(obj, CrossedModule):
        return {"kind": "xmod", "modulus": obj.modulus, "C": to_dict(obj.C), "R": to_dict(obj.R),
                "boundary": _dense(obj.boundary), "action": _sparse(obj.action.tensor)}
    if isinstance(obj, TwoAlgebra):
        return {"kind": "2alg", "modulus": obj.modulus, "A0": to_dict(obj.A0), "A1": to_dict(obj.A1),
                "s": _dense(obj.s), "t": _dense(obj.t), "e": _dense(obj.e)}
    if isinstance(obj, XModMorphism):
        return {"kind": "xmod_morphism", "modulus": obj.source.modulus, "source": to_dict(obj.source),
                "target": to_dict(obj.target), "f1": _dense(obj.f1), "f0": _dense(obj.f0)}
    if isinstance(obj, TwoAlgMorphism):
        return {"kind": "2alg_morphism", "modulus": obj.source.modulus, "source": to_dict(obj.source),
                "target": to_dict(obj.target), "F1": _dense(obj.F1), "F0": _dense(obj.F0)}
    if isinstance(obj, Derivation):
        return {"kind": "derivation", "modulus": obj.map.modulus, "base": to_dict(obj.base),
                "map": _dense(obj.map)}
    if isinstance(obj, TwoAlgHomotopy):
        return {"kind": "2alg_homotopy", "modulus": obj.delta.modulus, "F": to_dict(obj.F),
                "G": to_dict(obj.G), "delta": _dense(obj.delta)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(value, indent: int) -> str:
    if isinstance(value, dict):
        pad = "  " * (indent + 1)
        body = ",\n".join(f"{pad}{json.dumps(k)}: {_emit(v, indent + 1)}" for k, v in value.items())
        return "{\n" + body + "\n" + "  " * indent + "}"
    return json.dumps(value, separators=(", ", ": "))


def serialize(obj) -> str:
    return _emit(to_dict(obj), 0) + "\n"


# reading ------------------------------------------------------------------

class _Reader:
    def __init__(self, m: int):
        self.m = m

    def int_in_range(self, v, where: str) -> int:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParseError(f"expected an integer, got {v!r}", where)
        if not 0 <= v < self.m:
            raise ParseError(f"value {v} outside [0, {self.m})", where)
        return v

    def matrix(self, v, rows: int, cols: int, where: str) -> LinearMap:
        if not isinstance(v, list) or len(v) != rows:
            raise ParseError(f"expected {rows} rows", where)
        out = np.zeros((rows, cols), dtype=np.int64)
        for i, row in enumerate(v):
            if not isinstance(row, list) or len(row) != cols:
                raise ParseError(f"expected {cols} entries", f"{where}[{i}]")
            for j, x in enumerate(row):
                out[i, j] = self.int_in_range(x, f"{where}[{i}][{j}]")
        return LinearMap(self.m, out)

    def vector(self, v, n: int, where: str) -> np.ndarray:
        if not isinstance(v, list) or len(v) != n:
            raise ParseError(f"expected a list of {n} integers", where)
        return np.array([self.int_in_range(x, f"{where}[{i}]") for i, x in enumerate(v)], dtype=np.int64)

    def sparse(self, v, shape: tuple[int, int, int], where: str) -> np.ndarray:
        if not isinstance(v, list):
            raise ParseError("expected a list of [i, j, l, value] entries", where)
        out = np.zeros(shape, dtype=np.int64)
        seen = set()
        for k, entry in enumerate(v):
            at = f"{where}[{k}]"
            if not isinstance(entry, list) or len(entry) != 4:
                raise ParseError("expected [i, j, l, value]", at)
            idx = []
            for axis, (x, bound) in enumerate(zip(entry[:3], shape)):
                if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < bound:
                    raise ParseError(f"index {x!r} outside [0, {bound})", f"{at}[{axis}]")
                idx.append(x)
            if tuple(idx) in seen:
                raise ParseError(f"duplicate entry for index {idx}", at)
            seen.add(tuple(idx))
            out[tuple(idx)] = self.int_in_range(entry[3], f"{at}[3]")
        return out


def _field(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise ParseError("expected an object", where)
    if key not in d:
        raise ParseError(f"missing field {key!r}", where)
    return d[key]


def _modulus(d: dict, where: str) -> int:
    m = _field(d, "modulus", where)
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise ParseError(f"modulus must be an integer >= 2, got {m!r}", f"{where}.modulus")
    return m


def _expect_kind(d: dict, kind: str, where: str):
    got = _field(d, "kind", where)
    if got != kind:
        raise ParseError(f"expected kind {kind!r}, got {got!r}", f"{where}.kind")


def _same_modulus(inner, m: int, where: str):
    if inner.modulus != m:
        raise ParseError(f"embedded structure has modulus {inner.modulus}, expected {m}", where)


def from_dict(d, where: str = "$"):
    kind = _field(d, "kind", where)
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", f"{where}.kind")
    m = _modulus(d, where)
    rd = _Reader(m)
    if kind == "algebra":
        n = _field(d, "rank", where)
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ParseError(f"rank must be a non-negative integer, got {n!r}", f"{where}.rank")
        table = rd.sparse(_field(d, "mul", where), (n, n, n), f"{where}.mul")
        u = _field(d, "unit", where)
        unit = None if u is None else rd.vector(u, n, f"{where}.unit")
        labels = d.get("labels")
        if labels is not None and (not isinstance(labels, list) or len(labels) != n
                                   or not all(isinstance(x, str) for x in labels)):
            raise ParseError(f"labels must be {n} strings", f"{where}.labels")
        return FiniteAlgebra(m, table, unit=unit, labels=labels)
    if kind == "xmod":
        C = _sub(d, "C", "algebra", m, where)
        R = _sub(d, "R", "algebra", m, where)
        bd = rd.matrix(_field(d, "boundary", where), R.rank, C.rank, f"{where}.boundary")
        act = rd.sparse(_field(d, "action", where), (R.rank, C.rank, C.rank), f"{where}.action")
        return CrossedModule(C, R, bd, ActionTensor(R, C, act))
    if kind == "2alg":
        A0 = _sub(d, "A0", "algebra", m, where)
        A1 = _sub(d, "A1", "algebra", m, where)
        s = rd.matrix(_field(d, "s", where), A0.rank, A1.rank, f"{where}.s")
        t = rd.matrix(_field(d, "t", where), A0.rank, A1.rank, f"{where}.t")
        e = rd.matrix(_field(d, "e", where), A1.rank, A0.rank, f"{where}.e")
        return TwoAlgebra(A0, A1, s, t, e)
    if kind == "xmod_morphism":
        X = _sub(d, "source", "xmod", m, where)
        Y = _sub(d, "target", "xmod", m, where)
        f1 = rd.matrix(_field(d, "f1", where), Y.C.rank, X.C.rank, f"{where}.f1")
        f0 = rd.matrix(_field(d, "f0", where), Y.R.rank, X.R.rank, f"{where}.f0")
        return XModMorphism(X, Y, f1, f0)
    if kind == "2alg_morphism":
        A = _sub(d, "source", "2alg", m, where)
        B = _sub(d, "target", "2alg", m, where)
        F1 = rd.matrix(_field(d, "F1", where), B.A1.rank, A.A1.rank, f"{where}.F1")
        F0 = rd.matrix(_field(d, "F0", where), B.A0.rank, A.A0.rank, f"{where}.F0")
        return TwoAlgMorphism(A, B, F1, F0)
    if kind == "derivation":
        f = _sub(d, "base", "xmod_morphism", m, where)
        mp = rd.matrix(_field(d, "map", where), f.target.C.rank, f.source.R.rank, f"{where}.map")
        return Derivation(f, mp)
    F = _sub(d, "F", "2alg_morphism", m, where)
    G = _sub(d, "G", "2alg_morphism", m, where)
    delta = rd.matrix(_field(d, "delta", where), F.target.A1.rank, F.source.A0.rank, f"{where}.delta")
    return TwoAlgHomotopy(F, G, delta)


def _sub(d: dict, key: str, kind: str, m: int, where: str):
    at = f"{where}.{key}"
    inner = _field(d, key, where)
    _expect_kind(inner, kind, at)
    obj = from_dict(inner, at)
    _same_modulus(obj.source if hasattr(obj, "source") else obj, m, at)
    return obj


def parse(text: str):
    """Parse one structure, or raise ParseError naming the offending location."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from exc
    return from_dict(data)


def load(path) -> object:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(obj))
