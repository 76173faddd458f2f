"""Crossed modules of commutative algebras over Z/m and strict 2-algebras.

The main entry points:

* :mod:`twoalg.linalg` and :mod:`twoalg.algebra` for exact arithmetic,
* :func:`check_crossed_module`, :func:`check_two_algebra` and friends,
* :func:`gamma` / :func:`psi` converting between the two kinds of structure,
* :mod:`twoalg.homotopy` for derivations and 2-algebra homotopies,
* :mod:`twoalg.oracle` for brute-force enumeration.
"""

from .algebra import ActionTensor, Element, FiniteAlgebra, check_action, check_algebra, check_morphism
from .equivalence import (PreCrossedWarning, RoundTripWitness, gamma, gamma_mor, phi_iso, psi, psi_mor,
                          roundtrip_xmod)
from .errors import (CapExceeded, ComposabilityError, DomainError, IntegrityError, NotFreeError, ParseError,
                     PreconditionError, TwoAlgError)
from .homotopy import (Derivation, TwoAlgHomotopy, XModHomotopy, add_derivations, check_derivation,
                       check_two_alg_homotopy, gamma_htpy, homotopy_target, identity_homotopy, psi_htpy, star)
from .linalg import LinearMap, Submodule, howell_form, kernel
from .multipliers import (BimultiplierPair, MultiplierAlgebra, annihilator, bimultipliers, multipliers,
                          multiplication_two_algebra, mu, square_span)
from .report import Check, Report
from .serialize import parse, serialize
from .twocat import (TwoAlgebra, TwoAlgMorphism, TwoModule, check_two_alg_morphism, check_two_algebra,
                     check_two_module, compose_cells, interchange_defect)
from .xmod import (CrossedModule, XModMorphism, check_crossed_module, check_xmod_morphism, from_ideal,
                   from_module, from_multiplication, image_is_ideal)

__all__ = [name for name in dir() if not name.startswith("_")]
