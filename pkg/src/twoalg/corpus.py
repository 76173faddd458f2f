"""The bundled example corpus: small named structures with files under ``corpus/``.

``build()`` constructs everything from scratch; the files shipped with the
package are its serialization, and ``python3 -m twoalg.corpus DIR``
regenerates them.
"""

from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .algebra import ActionTensor, FiniteAlgebra
from .equivalence import psi, psi_mor
from .homotopy import Derivation, homotopy_target, psi_htpy
from .linalg import LinearMap
from .multipliers import multiplication_two_algebra
from .serialize import parse, serialize
from .twocat import TwoAlgebra
from .xmod import CrossedModule, XModMorphism, from_ideal, from_module, from_multiplication

EXTENSIONS = {
    "algebra": ".alg", "xmod": ".xmod", "2alg": ".2alg", "xmod_morphism": ".xmor",
    "2alg_morphism": ".2mor", "derivation": ".der", "2alg_homotopy": ".htpy",
}


def dual_numbers(m: int = 2) -> FiniteAlgebra:
    """Z/m[x]/(x^2)."""
    return FiniteAlgebra.truncated_poly(m, 2)


def zero_module(m: int = 2, rank: int = 1) -> FiniteAlgebra:
    return FiniteAlgebra.zero_mult(m, rank)


def precrossed_specimen() -> CrossedModule:
    """C = R = Z/2, zero boundary, action by multiplication: CM1 holds, CM2 fails."""
    Z2 = FiniteAlgebra.scalars(2)
    return CrossedModule(Z2, Z2, LinearMap.zero(2, 1, 1), ActionTensor(Z2, Z2, [[[1]]]))


def zero_crossed_module(R: FiniteAlgebra) -> CrossedModule:
    C = FiniteAlgebra(R.modulus, np.zeros((0, 0, 0), dtype=np.int64))
    return CrossedModule(C, R, LinearMap.zero(R.modulus, R.rank, 0), ActionTensor(R, C, []))


def build() -> dict[str, object]:
    Z2, Z4, D = FiniteAlgebra.scalars(2), FiniteAlgebra.scalars(4), dual_numbers(2)
    ideal = from_ideal(D, [[0, 1]])
    M = zero_module(2, 1)
    module = from_module(M, Z2, ActionTensor(Z2, M, [[[1]]]))
    mult = from_multiplication(D)
    into_ideal = XModMorphism(zero_crossed_module(D), ideal, LinearMap.zero(2, 1, 0), LinearMap.identity(2, 2))
    ident = XModMorphism.identity(ideal)
    shift = Derivation(ident, LinearMap(2, [[0, 1]]))
    h = homotopy_target(ident, shift)
    return {
        "z2": Z2,
        "z4": Z4,
        "dual_numbers": D,
        "example1": ideal,
        "example2": module,
        "example3": mult,
        "precrossed_specimen": precrossed_specimen(),
        "zero_over_dual": zero_crossed_module(D),
        "discrete_z2": TwoAlgebra.discrete(Z2),
        "mult_z2": multiplication_two_algebra(Z2),
        "mult_z4": multiplication_two_algebra(Z4),
        "mult_dual": multiplication_two_algebra(D),
        "semidirect_example1": psi(ideal),
        "semidirect_example2": psi(module),
        "mult_dual_z4": multiplication_two_algebra(dual_numbers(4)),
        "semidirect_cubic_ideal": psi(from_ideal(FiniteAlgebra.truncated_poly(2, 3), [[0, 1, 0]])),
        "zero_into_ideal": into_ideal,
        "identity_example1": ident,
        "shift_example1": shift,
        "semidirect_identity_example1": psi_mor(ident),
        "semidirect_shift_example1": psi_htpy(h),
    }


def filename(name: str, obj) -> str:
    from .serialize import to_dict

    return name + EXTENSIONS[to_dict(obj)["kind"]]


def bundled_files() -> dict[str, str]:
    """File name -> text of every shipped corpus file."""
    root = resources.files("twoalg") / "corpus"
    return {p.name: p.read_text(encoding="utf-8") for p in sorted(root.iterdir(), key=lambda p: p.name)
            if p.name.split(".")[-1] in {e[1:] for e in EXTENSIONS.values()}}


def load_bundled() -> dict[str, object]:
    return {name: parse(text) for name, text in bundled_files().items()}


def two_algebras() -> list[TwoAlgebra]:
    return [v for v in build().values() if isinstance(v, TwoAlgebra)]


def write(directory) -> list[Path]:
    out = []
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, obj in build().items():
        path = directory / filename(name, obj)
        path.write_text(serialize(obj), encoding="utf-8")
        out.append(path)
    return out


if __name__ == "__main__":
    for p in write(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "corpus"):
        print(p)
