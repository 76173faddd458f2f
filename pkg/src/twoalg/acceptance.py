"""The eight acceptance criteria as plain functions.

Each returns a :class:`CriterionResult`; the CLI ``selftest`` command and
``tests/test_acceptance.py`` both call :func:`run`.
"""

from __future__ import annotations

import os
import time
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import FiniteAlgebra
from .corpus import bundled_files, dual_numbers, precrossed_specimen, two_algebras
from .equivalence import PreCrossedWarning, phi_iso, psi, roundtrip_xmod
from .errors import IntegrityError
from .homotopy import (add_derivations, check_two_alg_homotopy, gamma_htpy, homotopy_target, psi_htpy,
                       star)
from .linalg import LinearMap, all_vectors, howell_form, reduce_vector
from .multipliers import horizontal, interchange_sides, multiplication_two_algebra, multipliers, vertical
from .oracle import enumerate_derivations, enumerate_xmod_morphisms, xmod_population
from .serialize import parse, serialize
from .twocat import TwoModule, check_two_algebra, compose_cells, exhaustive_interchange
from .xmod import check_crossed_module, from_multiplication

CHAIN_STRIDE_ENV = "TWOALG_CHAIN_STRIDE"


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:.0f}s)" if self.limit else ""
        return f"[{verdict}] criterion {self.number}: {self.title} -- {self.detail} [{self.seconds:.1f}s{budget}]"


def _timed(number: int, title: str, limit: float | None = None):
    def wrap(fn):
        def run() -> CriterionResult:
            start = time.perf_counter()
            passed, detail = fn()
            took = time.perf_counter() - start
            within = limit is None or took < limit
            if not within:
                detail += f"; runtime {took:.1f}s over the {limit:.0f}s limit"
            return CriterionResult(number, title, bool(passed and within), detail, took, limit)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# shared populations --------------------------------------------------------

@lru_cache(maxsize=1)
def population():
    """Crossed and pre-crossed modules over Z/2 with rank(C) <= 2, rank(R) <= 2."""
    return xmod_population(2, 2, 2)


@lru_cache(maxsize=1)
def morphism_population():
    """For each ordered pair of crossed modules, all morphisms between them, grouped by source index."""
    crossed = population().crossed
    return [[f for Y in crossed for f in enumerate_xmod_morphisms(X, Y)] for X in crossed]


# criteria ---------------------------------------------------------------------

@_timed(1, "forced composition is the only lawful linear composition", limit=10)
def forced_composition():
    m, d0, d1 = 2, 1, 2
    candidates = all_vectors(m, d1 * 2 * d1).reshape(-1, d1, 2 * d1)
    maps = all_vectors(m, d0 * d1).reshape(-1, d0, d1)
    sections = all_vectors(m, d1 * d0).reshape(-1, d1, d0)
    cells = all_vectors(m, d1)
    modules = failures = 0
    for s in maps:
        for t in maps:
            for e in sections:
                if not ((s @ e) % m == 1).all() or not ((t @ e) % m == 1).all():
                    continue
                modules += 1
                T = TwoModule(m, LinearMap(m, s), LinearMap(m, t), LinearMap(m, e))
                pairs = np.array([np.concatenate([a, b]) for a in cells for b in cells
                                  if np.array_equal(t @ a % m, s @ b % m)])
                left = np.hstack([cells @ (e @ s).T % m, cells])
                right = np.hstack([cells, cells @ (e @ t).T % m])
                out_pairs = np.einsum("nij,pj->npi", candidates, pairs) % m
                ok = (np.einsum("nij,pj->npi", candidates, left) % m == cells).all(axis=(1, 2))
                ok &= (np.einsum("nij,pj->npi", candidates, right) % m == cells).all(axis=(1, 2))
                ok &= (np.einsum("ki,npi->npk", s, out_pairs) % m == (pairs[:, :d1] @ s.T) % m).all(axis=(1, 2))
                ok &= (np.einsum("ki,npi->npk", t, out_pairs) % m == (pairs[:, d1:] @ t.T) % m).all(axis=(1, 2))
                survivors = {out_pairs[n].tobytes() for n in np.flatnonzero(ok)}
                forced = np.array([compose_cells(T, p[:d1], p[d1:]) for p in pairs])
                if survivors != {forced.tobytes()}:
                    failures += 1
    return failures == 0 and modules > 0, (
        f"{modules} valid 2-modules (d0=1, d1=2 over Z/2), {len(candidates)} candidates each; "
        f"{failures} with a surviving composition other than a+b-e(s(b))")


@_timed(2, "a o b = a + b for b in Ker s")
def kernel_composition():
    per_algebra = []
    for A in two_algebras():
        cells = all_vectors(A.modulus, A.A1.rank)
        ker = [b for b in cells if not A.s(b).any()]
        per_algebra.append([(A, a, b) for b in ker for a in cells if np.array_equal(A.t(a), A.s(b))])
    chosen, k = [], 0
    while len(chosen) < 100 and any(k < len(p) for p in per_algebra):
        chosen += [p[k] for p in per_algebra if k < len(p)]
        k += 1
    chosen = chosen[:100]
    bad = sum(not np.array_equal(compose_cells(A, a, b), (a + b) % A.modulus) for A, a, b in chosen)
    return bad == 0 and len(chosen) == 100, f"{len(chosen)} pairs from {len(per_algebra)} corpus 2-algebras, {bad} mismatches"


@_timed(3, "round trips through the semidirect product and back", limit=120)
def round_trips():
    crossed = population().crossed
    bad = [i for i, X in enumerate(crossed) if not roundtrip_xmod(X).ok]
    algs = two_algebras()
    bad_phi = [i for i, A in enumerate(algs) if not phi_iso(A).ok]
    return not bad and not bad_phi, (
        f"{len(crossed)} crossed modules, {len(bad)} failing exact round trip; "
        f"{len(algs)} corpus 2-algebras, {len(bad_phi)} failing phi")


@_timed(4, "interchange holds exactly when Peiffer does")
def interchange_vs_peiffer():
    pop = population()
    specimens = pop.crossed + pop.pre_crossed
    mismatches = exhaustive_mismatches = checked_exhaustively = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PreCrossedWarning)
        for X in specimens:
            peiffer = check_crossed_module(X).passed("CM2")
            A = psi(X)
            ichg = check_two_algebra(A).passed("ICHG")
            mismatches += ichg != peiffer
            if A.A1.rank <= 3:
                checked_exhaustively += 1
                exhaustive_mismatches += (exhaustive_interchange(A) is None) != peiffer
        specimen = psi(precrossed_specimen())
    specimen_fails = not check_two_algebra(specimen).passed("ICHG")
    ok = mismatches == 0 and exhaustive_mismatches == 0 and specimen_fails and pop.pre_crossed
    return ok, (f"{len(pop.crossed)} crossed + {len(pop.pre_crossed)} pre-crossed specimens, "
                f"{mismatches} mismatches ({checked_exhaustively} also checked on all quadruples, "
                f"{exhaustive_mismatches} mismatches there)")


def _multiplier_elements(M) -> list[LinearMap]:
    return [M.map_of(c) for c in all_vectors(M.base.modulus, M.rank)]


@_timed(5, "multiplication 2-algebras", limit=60)
def multiplication_algebras():
    notes, ok = [], True
    for name, C in (("Z/2", FiniteAlgebra.scalars(2)), ("Z/4", FiniteAlgebra.scalars(4)),
                    ("Z/2[x]/(x^2)", dual_numbers(2))):
        A = multiplication_two_algebra(C)
        checked = check_two_algebra(A, exhaustive=True, cap=4096).ok
        P = psi(from_multiplication(C), check=False)
        same = (A.A0 == P.A0 and np.array_equal(A.A1.mul_table, P.A1.mul_table)
                and A.A1 == P.A1 and A.s == P.s and A.t == P.t and A.e == P.e)
        xs = all_vectors(C.modulus, C.rank)
        fs = _multiplier_elements(multipliers(C))
        quads = bad = 0
        for x in xs:
            for f in fs:
                for xp in xs:
                    for y in xs:
                        for fp in fs:
                            for yp in xs:
                                (lhs, lm), (rhs, rm) = interchange_sides(C, x, f, xp, y, fp, yp)
                                upper = horizontal(C, (x, f), (y, fp))
                                lower = horizontal(C, (xp, C.multiplication_map(x) + f),
                                                   (yp, C.multiplication_map(y) + fp))
                                direct_l = vertical(C, upper, lower)
                                direct_r = horizontal(C, vertical(C, (x, f), (xp, C.multiplication_map(x) + f)),
                                                      vertical(C, (y, fp), (yp, C.multiplication_map(y) + fp)))
                                quads += 1
                                bad += not (np.array_equal(lhs, rhs) and lm == rm
                                            and np.array_equal(direct_l[0], rhs) and direct_l[1] == rm
                                            and np.array_equal(direct_r[0], lhs) and direct_r[1] == lm)
        ok &= checked and same and bad == 0
        notes.append(f"{name}: checks {'pass' if checked else 'FAIL'}, "
                     f"{'equal' if same else 'DIFFERENT'} to the semidirect form, {bad}/{quads} quadruples off")
    return ok, "; ".join(notes)


@_timed(6, "every derivation moves a morphism to a morphism")
def homotopy_audit():
    morphisms = derivations = errors = 0
    for group in morphism_population():
        for f in group:
            morphisms += 1
            for d in enumerate_derivations(f):
                derivations += 1
                try:
                    homotopy_target(f, d)
                except IntegrityError:
                    errors += 1
    return errors == 0 and derivations > 0, (
        f"{morphisms} morphisms, {derivations} derivations, {errors} integrity errors")


@_timed(7, "transport of homotopies commutes with composition and round trips")
def transport_laws():
    stride = int(os.environ.get(CHAIN_STRIDE_ENV, "16"))
    groups = morphism_population()
    items = roundtrip_bad = star_bad = chains = 0
    for index, group in enumerate(groups):
        by_start: dict = {}
        for f in group:
            for d in enumerate_derivations(f):
                h = homotopy_target(f, d)
                H = psi_htpy(h)
                back = gamma_htpy(H) if check_two_alg_homotopy(H).ok else None
                items += 1
                if (back is None or back.d.map != h.d.map or back.f != h.f or back.g != h.g
                        or psi_htpy(back) != H):
                    roundtrip_bad += 1
                by_start.setdefault(f, []).append((h, H))
        if index % stride:
            continue
        for f, entries in by_start.items():
            for h, H in entries:
                for h2, H2 in by_start.get(h.g, []):
                    chains += 1
                    via_star = gamma_htpy(star(H, H2)).d.map
                    summed = add_derivations(gamma_htpy(H), gamma_htpy(H2)).d.map
                    star_bad += via_star != summed
    ok = roundtrip_bad == 0 and star_bad == 0 and chains > 0
    return ok, (f"{items} homotopies, {roundtrip_bad} round-trip failures; {chains} chained pairs "
                f"(every {stride}th source module), {star_bad} composition mismatches")


@_timed(8, "Howell forms and file round trips")
def infrastructure():
    rng = np.random.default_rng(20260701)
    bad_idem = bad_span = 0
    trials = 0
    for m in (4, 6):
        for _ in range(1000):
            rows, cols = int(rng.integers(1, 5)), int(rng.integers(1, 4))
            a = rng.integers(0, m, size=(rows, cols))
            h = howell_form(a, m, cols)
            trials += 1
            bad_idem += not np.array_equal(howell_form(h, m, cols), h)
            span = {tuple(v) for v in (all_vectors(m, rows) @ a) % m}
            members = {tuple(v) for v in all_vectors(m, cols) if not reduce_vector(h, v, m).any()}
            h_span = {tuple(v) for v in (all_vectors(m, len(h)) @ h) % m} if len(h) else {(0,) * cols}
            bad_span += not (span == members == h_span)
    files = bundled_files()
    bad_files = [n for n, text in files.items() if serialize(parse(text)) != text]
    ok = bad_idem == 0 and bad_span == 0 and not bad_files and files
    return ok, (f"{trials} random matrices over Z/4 and Z/6: {bad_idem} not idempotent, {bad_span} span "
                f"mismatches; {len(files)} corpus files, {len(bad_files)} not byte-identical")


CRITERIA = (forced_composition, kernel_composition, round_trips, interchange_vs_peiffer,
            multiplication_algebras, homotopy_audit, transport_laws, infrastructure)


def run(numbers=None):
    """Run the selected criteria (all by default), yielding results in order."""
    for k, fn in enumerate(CRITERIA, start=1):
        if numbers is None or k in numbers:
            yield fn()
