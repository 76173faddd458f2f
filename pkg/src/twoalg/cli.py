"""Command-line interface.

Exit status: 0 when every check passes, 1 when an axiom fails (the report
shows a witness), 2 for usage, parse and refusal errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings

import numpy as np

from . import acceptance, oracle
from .algebra import ActionTensor, FiniteAlgebra, check_algebra, check_algebra_exhaustive
from .equivalence import PreCrossedWarning, gamma, gamma_mor, phi_iso, psi, psi_mor, roundtrip_xmod
from .errors import CapExceeded, ParseError, PreconditionError, TwoAlgError
from .homotopy import (Derivation, TwoAlgHomotopy, add_derivations, check_derivation, check_two_alg_homotopy,
                       gamma_htpy, homotopy_target, psi_htpy, star)
from .multipliers import multiplication_two_algebra
from .report import Report
from .serialize import load, serialize
from .twocat import TwoAlgebra, TwoAlgMorphism, check_two_alg_morphism, check_two_algebra
from .xmod import (CrossedModule, XModMorphism, check_crossed_module, check_xmod_morphism, from_ideal,
                   from_module, from_multiplication)

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(TwoAlgError):
    pass


def _emit(obj, out: str | None):
    text = serialize(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vector(text: str, n: int, m: int) -> np.ndarray:
    try:
        v = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot read vector {text!r}; write it as comma-separated integers") from None
    if len(v) != n:
        raise UsageError(f"vector {text!r} has {len(v)} entries, expected {n}")
    return np.array(v, dtype=np.int64) % m


def _quadruples(text: str, shape, m: int) -> np.ndarray:
    t = np.zeros(shape, dtype=np.int64)
    for part in filter(None, text.split(";")):
        try:
            i, j, l, v = (int(x) for x in part.split(","))
        except ValueError:
            raise UsageError(f"cannot read action entry {part!r}; expected i,j,l,value") from None
        if not (0 <= i < shape[0] and 0 <= j < shape[1] and 0 <= l < shape[2]):
            raise UsageError(f"action entry {part!r} is out of range for shape {shape}")
        t[i, j, l] = v % m
    return t


def _morphism_report(F) -> Report:
    if isinstance(F, XModMorphism):
        rep = Report("crossed module morphism")
        rep.extend(check_crossed_module(F.source), "source.")
        rep.extend(check_crossed_module(F.target), "target.")
        rep.extend(check_xmod_morphism(F))
        return rep
    rep = Report("2-algebra morphism")
    rep.extend(check_two_algebra(F.source), "source.")
    rep.extend(check_two_algebra(F.target), "target.")
    rep.extend(check_two_alg_morphism(F))
    return rep


def check_any(obj, exhaustive: bool = False, cap: int = 4096) -> Report:
    if isinstance(obj, FiniteAlgebra):
        rep = check_algebra(obj)
        if exhaustive:
            rep.extend(check_algebra_exhaustive(obj, cap), "exhaustive.")
        return rep
    if isinstance(obj, CrossedModule):
        return check_crossed_module(obj)
    if isinstance(obj, TwoAlgebra):
        return check_two_algebra(obj, exhaustive=exhaustive, cap=cap)
    if isinstance(obj, (XModMorphism, TwoAlgMorphism)):
        return _morphism_report(obj)
    if isinstance(obj, Derivation):
        rep = Report("derivation")
        rep.extend(check_xmod_morphism(obj.base), "base.")
        rep.extend(check_derivation(obj))
        if rep.ok:
            g = homotopy_target(obj.base, obj).g
            rep.add("TARGET", True, (), f"moves f to g with g1 = {g.f1.matrix.tolist()}, g0 = {g.f0.matrix.tolist()}")
        return rep
    if isinstance(obj, TwoAlgHomotopy):
        rep = Report("2-algebra homotopy")
        rep.extend(check_two_alg_morphism(obj.F), "F.")
        rep.extend(check_two_alg_morphism(obj.G), "G.")
        rep.extend(check_two_alg_homotopy(obj))
        return rep
    raise UsageError(f"nothing to check for {type(obj).__name__}")


def _print(rep: Report) -> int:
    print(rep)
    return OK if rep.ok else VIOLATION


# subcommands ---------------------------------------------------------------

def cmd_check(args) -> int:
    return _print(check_any(load(args.file), args.exhaustive, args.cap))


def cmd_construct(args) -> int:
    if args.what == "ideal":
        if not args.inputs:
            raise UsageError("construct ideal needs R_FILE [GEN ...]")
        R = load(args.inputs[0])
        if not isinstance(R, FiniteAlgebra):
            raise UsageError("construct ideal needs an algebra file")
        gens = [_vector(g, R.rank, R.modulus) for g in args.inputs[1:]]
        X = from_ideal(R, np.array(gens, dtype=np.int64).reshape(-1, R.rank))
    elif args.what == "zero":
        if len(args.inputs) != 2:
            raise UsageError("construct zero needs M_FILE R_FILE")
        M, R = load(args.inputs[0]), load(args.inputs[1])
        if args.action is not None:
            tensor = _quadruples(args.action, (R.rank, M.rank, M.rank), R.modulus)
        elif R.rank == 1 and R.unit is not None:
            tensor = np.einsum("i,jl->ijl", R.unit, np.eye(M.rank, dtype=np.int64))
        else:
            raise UsageError("give --action 'i,j,l,v;...' unless R is Z/m itself")
        X = from_module(M, R, ActionTensor(R, M, tensor))
    else:
        if len(args.inputs) != 1:
            raise UsageError("construct mult needs C_FILE")
        C = load(args.inputs[0])
        X = multiplication_two_algebra(C) if args.two_algebra else from_multiplication(C)
    _emit(X, args.output)
    return OK


def cmd_to_2alg(args) -> int:
    obj = load(args.file)
    if isinstance(obj, CrossedModule):
        status = check_crossed_module(obj)
        if status.label == "invalid":
            print(status, file=sys.stderr)
            return VIOLATION
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PreCrossedWarning)
            _emit(psi(obj), args.output)
        if status.label == "pre-crossed":
            print("warning: input is only pre-crossed; interchange not guaranteed", file=sys.stderr)
            print(status, file=sys.stderr)
            return VIOLATION
        return OK
    if isinstance(obj, XModMorphism):
        _emit(psi_mor(obj), args.output)
        return OK
    raise UsageError("to-2alg takes a crossed module or a crossed module morphism")


def cmd_to_xmod(args) -> int:
    obj = load(args.file)
    if isinstance(obj, TwoAlgebra):
        rep = check_two_algebra(obj)
        if not rep.ok:
            print(rep, file=sys.stderr)
            return VIOLATION
        _emit(gamma(obj), args.output)
        return OK
    if isinstance(obj, TwoAlgMorphism):
        _emit(gamma_mor(obj), args.output)
        return OK
    raise UsageError("to-xmod takes a 2-algebra or a 2-algebra morphism")


def _print_witness(w):
    print(w.report)
    print(f"direction: {w.direction}")
    for side, (level1, level0) in (("forward", w.forward), ("backward", w.backward)):
        print(f"{side} level 1: {level1.matrix.tolist()}")
        print(f"{side} level 0: {level0.matrix.tolist()}")
    return OK if w.ok else VIOLATION


def cmd_roundtrip(args) -> int:
    obj = load(args.file)
    if isinstance(obj, CrossedModule):
        rep = check_crossed_module(obj)
        if not rep.ok:
            print(rep)
            return VIOLATION
        return _print_witness(roundtrip_xmod(obj))
    if isinstance(obj, TwoAlgebra):
        rep = check_two_algebra(obj)
        if not rep.ok:
            print(rep)
            return VIOLATION
        return _print_witness(phi_iso(obj))
    raise UsageError("roundtrip takes a crossed module or a 2-algebra")


def _homotopy_of(d: Derivation):
    rep = check_derivation(d)
    if not rep.ok:
        return None, rep
    return homotopy_target(d.base, d), rep


def cmd_homotopy(args) -> int:
    objs = [load(f) for f in args.files]
    action = args.action
    if action == "check":
        if len(objs) != 1:
            raise UsageError("homotopy check takes one file")
        return _print(check_any(objs[0]))
    if action == "compose":
        if len(objs) != 2:
            raise UsageError("homotopy compose takes two files")
        a, b = objs
        if isinstance(a, Derivation) and isinstance(b, Derivation):
            ha, rep_a = _homotopy_of(a)
            hb, rep_b = _homotopy_of(b)
            if ha is None or hb is None:
                return _print(rep_a if ha is None else rep_b)
            _emit(add_derivations(ha, hb).d, args.output)
            return OK
        if isinstance(a, TwoAlgHomotopy) and isinstance(b, TwoAlgHomotopy):
            for h in (a, b):
                rep = check_two_alg_homotopy(h)
                if not rep.ok:
                    return _print(rep)
            _emit(star(a, b), args.output)
            return OK
        raise UsageError("homotopy compose takes two derivations or two 2-algebra homotopies")
    if len(objs) != 1:
        raise UsageError(f"homotopy {action} takes one file")
    obj = objs[0]
    if action == "to-2alg":
        if not isinstance(obj, Derivation):
            raise UsageError("homotopy to-2alg takes a derivation")
        h, rep = _homotopy_of(obj)
        if h is None:
            return _print(rep)
        _emit(psi_htpy(h), args.output)
        return OK
    if not isinstance(obj, TwoAlgHomotopy):
        raise UsageError("homotopy to-xmod takes a 2-algebra homotopy")
    rep = check_two_alg_homotopy(obj)
    if not rep.ok:
        return _print(rep)
    _emit(gamma_htpy(obj).d, args.output)
    return OK


def _algebras_or_files(files, index, rank, m, unital, cap):
    if len(files) > index:
        return [load(files[index])]
    return oracle.enumerate_algebras(m, rank, unital=unital, cap=cap)


def cmd_enumerate(args) -> int:
    m, cap, files = args.modulus, args.cap, args.files
    kind = args.kind
    if kind == "linear-maps":
        found = oracle.enumerate_linear_maps(m, args.rank_r, args.rank_c, cap)
        for f in found:
            print(f.matrix.tolist())
    elif kind == "algebras":
        found = oracle.enumerate_algebras(m, args.rank_c, cap=cap)
        for A in found:
            print(serialize(A).replace("\n", " "))
    elif kind in ("actions", "crossed-modules"):
        Rs = _algebras_or_files(files, 0, args.rank_r, m, True, cap)
        Cs = _algebras_or_files(files, 1, args.rank_c, m, None, cap)
        found = []
        pre = 0
        for R in Rs:
            for C in Cs:
                if kind == "actions":
                    found += oracle.enumerate_actions(R, C, cap)
                else:
                    census = oracle.enumerate_crossed_modules(R, C, cap)
                    found += census.crossed
                    pre += len(census.pre_crossed)
        for x in found:
            print(serialize(x).replace("\n", " ") if isinstance(x, CrossedModule) else x.tensor.tolist())
        if kind == "crossed-modules":
            print(f"pre-crossed (failing only CM2): {pre}")
    elif kind == "derivations":
        if len(files) != 1:
            raise UsageError("enumerate derivations takes one crossed module morphism file")
        found = oracle.enumerate_derivations(load(files[0]), cap)
        for d in found:
            print(d.map.matrix.tolist())
    elif kind == "homotopies":
        if len(files) != 2:
            raise UsageError("enumerate homotopies takes two 2-algebra morphism files")
        found = oracle.enumerate_two_alg_homotopies(load(files[0]), load(files[1]), cap)
        for H in found:
            print(H.delta.matrix.tolist())
    else:
        raise UsageError(f"unknown enumeration {kind!r}")
    print(f"count: {len(found)}")
    return OK


def cmd_selftest(args) -> int:
    numbers = set(args.criteria) if args.criteria else None
    ok = True
    for result in acceptance.run(numbers):
        print(result.line(), flush=True)
        ok &= result.passed
    return OK if ok else VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twoalg", description="Crossed modules and 2-algebras over Z/m.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=True):
        if output:
            sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        sp.add_argument("--cap", type=int, default=4096, help="element / candidate cap")
        return sp

    sp = common(sub.add_parser("check", help="validate a structure file"), output=False)
    sp.add_argument("file")
    sp.add_argument("--exhaustive", action="store_true", help="also run element-level checks under the cap")
    sp.set_defaults(func=cmd_check)

    sp = common(sub.add_parser("construct", help="build a crossed module from an ideal, a module or C"))
    sp.add_argument("what", choices=("ideal", "zero", "mult"))
    sp.add_argument("inputs", nargs="*", help="algebra files, then generator vectors such as 0,1")
    sp.add_argument("--action", help="for 'zero': sparse action entries 'i,j,l,v;...'")
    sp.add_argument("--two-algebra", action="store_true", help="for 'mult': emit the multiplication 2-algebra")
    sp.set_defaults(func=cmd_construct)

    for name, func, what in (("to-2alg", cmd_to_2alg, "semidirect product 2-algebra"),
                             ("to-xmod", cmd_to_xmod, "crossed module of Ker s")):
        sp = common(sub.add_parser(name, help=f"convert to the {what}"))
        sp.add_argument("file")
        sp.set_defaults(func=func)

    sp = common(sub.add_parser("roundtrip", help="print and verify the round-trip witness"), output=False)
    sp.add_argument("file")
    sp.set_defaults(func=cmd_roundtrip)

    sp = common(sub.add_parser("homotopy", help="check, compose or transport homotopies"))
    sp.add_argument("action", choices=("check", "compose", "to-xmod", "to-2alg"))
    sp.add_argument("files", nargs="+")
    sp.set_defaults(func=cmd_homotopy)

    sp = sub.add_parser("enumerate", help="brute-force enumeration")
    sp.add_argument("kind", choices=("linear-maps", "algebras", "actions", "crossed-modules",
                                     "derivations", "homotopies"))
    sp.add_argument("files", nargs="*", help="R and C files, a morphism, or two 2-algebra morphisms")
    sp.add_argument("--modulus", type=int, default=2)
    sp.add_argument("--rank-c", type=int, default=1)
    sp.add_argument("--rank-r", type=int, default=1)
    sp.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("selftest", help="run the acceptance criteria")
    sp.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, CapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return VIOLATION
    except TwoAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION


if __name__ == "__main__":
    sys.exit(main())
