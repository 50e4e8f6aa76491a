import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wheelkit.freealg import AlgElem, FreeAlgebra
from wheelkit.ncgeo import (DoubleDerivation, DRElem, TensorElem, UnsupportedCase,
                            contraction_matrix, d, d_dr, dr_project, form, form_algebra,
                            hamiltonian, i_theta, is_bi_nondegenerate, reduced_contraction,
                            tensor_from_json)

B = FreeAlgebra(["x", "theta"])
F = form_algebra(B)
Bxy = FreeAlgebra(["x", "y"])
Fxy = form_algebra(Bxy)
dx, dth = form(F, ["d:x"]), form(F, ["d:theta"])
OMEGA = dr_project(dx * dth)


def fw(Fa, *names):
    return Fa.monomial(list(names))


def coord(base, name):
    return DoubleDerivation.coordinate(base, name)


def test_d_examples():
    assert d(fw(Fxy, "x")) == fw(Fxy, "d:x")
    assert d(fw(Fxy, "d:x")).is_zero()
    assert d(fw(Fxy, "x", "y")) == fw(Fxy, "d:x", "y") + fw(Fxy, "x", "d:y")


@pytest.mark.parametrize("length", range(1, 6))
def test_d_squared_vanishes(length):
    for w in itertools.product(range(Fxy.ngens), repeat=length):
        assert d(d(AlgElem(Fxy, {w: 1}))).is_zero()


def test_dr_examples():
    a, b = fw(Fxy, "x", "d:y"), fw(Fxy, "d:x")
    assert dr_project(a * b + b * a).is_zero()  # |a| = |b| = 1
    assert dr_project(fw(Fxy, "d:x", "d:y") + fw(Fxy, "d:y", "d:x")).is_zero()
    assert d_dr(OMEGA).is_zero()


def test_odd_symmetric_class_is_zero():
    assert dr_project(fw(Fxy, "d:x", "d:x")).is_zero()
    assert not dr_project(fw(Fxy, "d:x", "d:x", "d:x")).is_zero()


@given(st.lists(st.integers(0, 3), max_size=3), st.lists(st.integers(0, 3), max_size=3))
def test_graded_commutators_vanish(u, v):
    a, b = AlgElem(Fxy, {tuple(u): 1}), AlgElem(Fxy, {tuple(v): 1})
    s = -1 if (Fxy.word_weight(tuple(u)) * Fxy.word_weight(tuple(v))) % 2 else 1
    assert dr_project(a * b - b * a * s).is_zero()


@pytest.mark.parametrize("length", range(1, 4))
def test_d_dr_squared_vanishes(length):
    for w in itertools.product(range(Fxy.ngens), repeat=length):
        c = dr_project(AlgElem(Fxy, {w: 1}))
        if c.degree() is not None and c.degree() <= 2:
            assert d_dr(d_dr(c)).is_zero()


def test_i_theta_examples():
    one = TensorElem(F, {((), ()): 1})
    assert i_theta(dx, coord(B, "x")) == one
    assert i_theta(form(F, ["x"]), coord(B, "x")).is_zero()
    assert i_theta(dx * dth, coord(B, "theta")) == TensorElem.simple(dx, F.one()) * -1


def test_reduced_contraction_examples():
    assert reduced_contraction(dx * dth, coord(B, "x")) == dth
    assert reduced_contraction(dx * dth, coord(B, "theta")) == -dx
    assert reduced_contraction(form(F, ["x"]), coord(B, "x")).is_zero()


def _forms(Fa, max_len):
    for L in range(1, max_len + 1):
        for w in itertools.product(range(Fa.ngens), repeat=L):
            if 1 <= Fa.word_weight(w) <= 3:
                yield AlgElem(Fa, {w: 1})


@pytest.mark.parametrize("t, s", [("x", "x"), ("x", "y"), ("y", "x")])
def test_rc1(t, s):
    T, D = coord(Bxy, t), coord(Bxy, s)
    for a in _forms(Fxy, 3):
        lhs = i_theta(reduced_contraction(a, D), T) + i_theta(reduced_contraction(a, T), D).flip()
        assert lhs.is_zero(), a


@pytest.mark.parametrize("t", ["x", "y"])
def test_rc2(t):
    T = coord(Bxy, t)
    words = [w for L in range(0, 3) for w in itertools.product(range(Fxy.ngens), repeat=L)]
    for u, v in itertools.product(words, repeat=2):
        if Fxy.word_weight(u) + Fxy.word_weight(v) > 3:
            continue
        a, b = AlgElem(Fxy, {u: 1}), AlgElem(Fxy, {v: 1})
        s = -1 if (Fxy.word_weight(u) * Fxy.word_weight(v)) % 2 else 1
        assert reduced_contraction(a * b - b * a * s, T).is_zero()


def test_contraction_matrix_example():
    m = contraction_matrix(OMEGA)
    one = TensorElem(B, {((), ()): 1})
    assert m == {"x": {"theta": one}, "theta": {"x": one * -1}}
    assert is_bi_nondegenerate(OMEGA)
    assert contraction_matrix(DRElem(F)) == {"x": {}, "theta": {}}
    assert not is_bi_nondegenerate(DRElem(F))


def test_hamiltonian_examples():
    assert hamiltonian(B.gen("x"), OMEGA) == coord(B, "theta") * -1
    assert hamiltonian(B.gen("theta"), OMEGA) == coord(B, "x")
    assert hamiltonian(B.one(), OMEGA) == coord(B, "x") * 0


def test_hamiltonian_unsupported():
    with pytest.raises(UnsupportedCase):
        hamiltonian(B.gen("x"), DRElem(F))


@given(st.lists(st.integers(0, 1), min_size=1, max_size=4))
def test_hamiltonian_satisfies_defining_equation(w):
    a = AlgElem(B, {tuple(w): 1})
    H = hamiltonian(a, OMEGA)
    assert reduced_contraction(OMEGA, H) == d(AlgElem(F, a.terms))


def test_tensor_json_round_trip():
    t = TensorElem.simple(dx, dth) * 3 - TensorElem.simple(F.one(), dx)
    assert tensor_from_json(F, t.to_json()) == t


def test_form_algebra_rejects_prefixed_names():
    with pytest.raises(ValueError):
        form_algebra(FreeAlgebra(["d:x"]))
