"""Acceptance gate: criteria 1-11 at their stated bounds and time limits.

Each criterion prints one PASS/FAIL line in the pytest terminal summary.
Run the file directly to get the same lines without pytest.
"""

from __future__ import annotations

import random
import time

import numpy as np
import pytest

from wheelkit.dpois import (DoubleBracketSpec, WheeledBracketEngine, check_big_bracket,
                            check_double_jacobi, check_poisson_axioms, check_shift_compat,
                            symplectic_pairing_check, tensor)
from wheelkit.fock import arity_one_product, fock_basis, fock_handle
from wheelkit.freealg import FreeAlgebra
from wheelkit.matred import check_wheeled_relations, gl_reference, jacobi_poly, kr_table
from wheelkit.ncgeo import d_dr, dr_project, form_algebra
from wheelkit.symgrp import verify_identities
from wheelkit.wheelcore import (EndSpace, check_admissible, check_axioms, check_wheelgebra,
                                end_contract, end_contract_basis_free, end_handle)

RESULTS: dict[int, str] = {}

KX = FreeAlgebra(["x"])
KXY = FreeAlgebra(["x", "y"])


def gl_spec(A: FreeAlgebra) -> DoubleBracketSpec:
    return DoubleBracketSpec(A, {("x", "x"): tensor(A, (1, "x", ""), (-1, "", "x"))})


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def criterion_1():
    rep, dt = _timed(lambda: verify_identities(5))
    return rep.passed and dt < 30, f"{rep.cases} cases, {dt:.1f}s (limit 30s)"


def criterion_2():
    S = fock_handle(KXY, max_word_len=2, max_neck_len=2)
    rep, dt = _timed(lambda: check_axioms(S, 3))
    return rep.passed and dt < 300, f"{rep.cases} cases, {dt:.1f}s (limit 300s) {rep.counterexample or ''}"


def criterion_3():
    parts = []
    ok = True
    for S in (fock_handle(KXY, 2, 2), end_handle(1), end_handle(2)):
        rep = check_wheelgebra(S, 3)
        ok &= rep.passed
        parts.append(f"{S.name}: {rep.status} ({rep.cases})")
    return ok, "; ".join(parts)


def criterion_4():
    rng = random.Random(20240401)
    cases = 0
    for _ in range(200):
        dim, n = rng.randint(1, 3), rng.randint(1, 3)
        f = EndSpace(dim).random_element(n, rng)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                native = end_contract(n, i, j, f).matrix()
                if n == 1:
                    native = native.reshape((1, 1))
                cases += 1
                if not np.array_equal(native, end_contract_basis_free(n, i, j, f)):
                    return False, f"mismatch at dim={dim} n={n} i={i} j={j}: {f!r}"
    return True, f"200 elements, {cases} contractions"


def criterion_5():
    S = fock_handle(KXY, 2, 2)
    elems = list(fock_basis(KXY, 1, 2, 2, 1))
    rep = check_admissible(S, elems, reference=arity_one_product)
    return rep.passed, f"{len(elems)} basis elements, {rep.cases} cases"


def criterion_6():
    rep = check_double_jacobi(gl_spec(KX), 3)
    bad = DoubleBracketSpec(KX, {("x", "x"): tensor(KX, (1, "xx", ""), (-1, "", "xx"))})
    control = check_double_jacobi(bad, 3)
    ce = control.counterexample or {}
    note = (f"control x^2(x)1-1(x)x^2: {control.status}"
            + (f" at {ce.get('a')},{ce.get('b')},{ce.get('c')} value {ce.get('jacobiator')}" if ce else ""))
    return rep.passed, f"{rep.cases} triples; {note}"


def criterion_7():
    engine = WheeledBracketEngine(gl_spec(KX))
    t0 = time.perf_counter()
    axioms = check_poisson_axioms(engine, max_arity=2, max_total=6, max_word_len=2)
    shift = check_shift_compat(engine, max_arity=2, max_word_len=2)
    dt = time.perf_counter() - t0
    ok = axioms.passed and shift.passed and dt < 600
    sub = ", ".join(f"{k} {v['status']}" for k, v in axioms.details.items())
    return ok, f"{sub}, shift {shift.status}; {axioms.cases + shift.cases} cases, {dt:.1f}s (limit 600s)"


def criterion_8():
    rep = check_big_bracket(FreeAlgebra(["x", "theta"]), 2)
    sub = ", ".join(f"{k} {v['status']}" for k, v in rep.details.items())
    return rep.passed, f"{sub}; {rep.cases} cases"


def criterion_9():
    B = FreeAlgebra(["x", "theta"])
    F = form_algebra(B)
    omega_hat = F.monomial(["d:x", "d:theta"])
    closed = d_dr(dr_project(omega_hat)).is_zero()
    rep = symplectic_pairing_check(B, omega_hat)
    return closed and rep.passed, f"d_dr(omega)=0: {closed}; pairing {rep.status} for both coordinates"


def criterion_10():
    rep = check_wheeled_relations(KX, d=2, max_arity=2, max_word_len=2)
    ok = rep.passed and rep.details["symbols"] == 4
    sub = ", ".join(f"{k} {rep.details[k]['status']}" for k in ("WA.1", "WA.2", "WA.3", "WA.4", "census"))
    return ok, f"{sub}; {rep.details['symbols']} free symbols"


def criterion_11():
    t0 = time.perf_counter()
    engine = WheeledBracketEngine(gl_spec(KX))
    names, table = kr_table(engine, 2)
    ref = gl_reference(KX, 2)
    match = table == ref and len(ref) == 16
    jac = jacobi_poly(names, table)
    dt = time.perf_counter() - t0
    return match and jac.passed and dt < 60, (f"16 quadruples match: {match}; jacobi {jac.status} "
                                               f"({jac.cases} cases), {dt:.1f}s (limit 60s)")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, info = CRITERIA[number]()
    RESULTS[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {info}"
    assert ok, info


if __name__ == "__main__":
    for number, fn in CRITERIA.items():
        ok, info = fn()
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {info}", flush=True)
