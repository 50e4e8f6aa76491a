import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wheelkit.dpois import DoubleBracketSpec, WheeledBracketEngine, necklace, slot, tensor
from wheelkit.fock import fock_basis, fock_mul, fock_word
from wheelkit.freealg import AlgElem, FreeAlgebra
from wheelkit.matred import (EntryAlgebra, MatElem, PolyElem, abelianize, check_kr_leibniz,
                             check_wheeled_relations, gl_reference, jacobi_poly, kr_bracket,
                             kr_table, rep_matrix, wheeled_eval)

from strategies import alg_terms

A = FreeAlgebra(["x"])
Axy = FreeAlgebra(["x", "y"])
R = EntryAlgebra(A, 2)
GL = WheeledBracketEngine(DoubleBracketSpec(A, {("x", "x"): tensor(A, (1, "x", ""), (-1, "", "x"))}))
ZERO = WheeledBracketEngine(DoubleBracketSpec(A, {}))


def sym(ring, name, i, j):
    return ring.symbol(name, i, j)


def p(ring, name, i, j):
    return abelianize(sym(ring, name, i, j))


def test_symbol_names():
    assert R.algebra.names == ("x_11", "x_12", "x_21", "x_22")


def test_rep_matrix_examples():
    one = rep_matrix(A.one(), 2)
    assert one == MatElem.identity(R)
    x = A.gen("x")
    sq = rep_matrix(x * x, R)
    assert sq[1, 1] == sym(R, "x", 1, 1) * sym(R, "x", 1, 1) + sym(R, "x", 1, 2) * sym(R, "x", 2, 1)
    Rxy = EntryAlgebra(Axy, 2)
    s = rep_matrix(Axy.gen("x") + Axy.gen("y"), Rxy)
    for i, j in itertools.product((1, 2), repeat=2):
        assert s[i, j] == sym(Rxy, "x", i, j) + sym(Rxy, "y", i, j)


@given(alg_terms(2, 2, 2), alg_terms(2, 2, 2))
def test_rep_matrix_is_multiplicative(t1, t2):
    a, b = AlgElem(Axy, t1), AlgElem(Axy, t2)
    Rxy = EntryAlgebra(Axy, 2)
    assert rep_matrix(a * b, Rxy) == rep_matrix(a, Rxy) * rep_matrix(b, Rxy)
    assert rep_matrix(a + b, Rxy) == rep_matrix(a, Rxy) + rep_matrix(b, Rxy)


def test_wheeled_eval_examples():
    u = fock_word(A, "x")
    for i, j in itertools.product((1, 2), repeat=2):
        assert wheeled_eval(u, (i,), (j,), R) == sym(R, "x", i, j)
    assert wheeled_eval(necklace(A, A.gen("x")), (), (), R) == sym(R, "x", 1, 1) + sym(R, "x", 2, 2)
    assert wheeled_eval(fock_word(A, neck=[""]), (), (), R) == R.algebra.one() * 2


def test_wheeled_eval_wiring_regression():
    # slot k reads its row index from alpha at rho(k) and its column from beta_k
    u = fock_word(A, "x", "", perm=[2, 1])
    assert wheeled_eval(u, (2, 1), (1, 2), R) == sym(R, "x", 1, 1)
    assert wheeled_eval(u, (1, 2), (1, 1), R) == sym(R, "x", 2, 1)
    assert wheeled_eval(u, (1, 2), (1, 2), R).is_zero()


def test_wheeled_eval_rejects_bad_indices():
    with pytest.raises(ValueError):
        wheeled_eval(fock_word(A, "x"), (3,), (1,), R)
    with pytest.raises(ValueError):
        wheeled_eval(fock_word(A, "x"), (1, 1), (1,), R)


@given(st.sampled_from(list(fock_basis(A, 1, 2, 2, 1))), st.sampled_from(list(fock_basis(A, 1, 2, 2, 1))),
       st.tuples(*[st.integers(1, 2)] * 4))
def test_wa1_product_property(u, v, idx):
    a, b, a2, b2 = idx
    lhs = abelianize(wheeled_eval(fock_mul(u, v), (a, a2), (b, b2), R))
    assert lhs == abelianize(wheeled_eval(u, (a,), (b,), R)) * abelianize(wheeled_eval(v, (a2,), (b2,), R))


def test_abelianize_examples():
    x12, x21 = sym(R, "x", 1, 2), sym(R, "x", 2, 1)
    assert abelianize(x12 * x21 - x21 * x12).is_zero()
    sq = rep_matrix(A.gen("x") * A.gen("x"), R)[1, 1]
    assert abelianize(sq) == p(R, "x", 1, 1) * p(R, "x", 1, 1) + p(R, "x", 1, 2) * p(R, "x", 2, 1)
    assert abelianize(R.algebra.one()) == 1


def test_poly_json_is_sorted():
    f = p(R, "x", 2, 1) * p(R, "x", 1, 2) - PolyElem.const(R.algebra.names, 3)
    assert f.to_json() == [["-3/1", []], ["1/1", ["x_12", "x_21"]]]


@pytest.mark.parametrize("names", [["x"], ["x", "y"]])
def test_wheeled_relations(names):
    B = FreeAlgebra(names)
    arity = 2 if len(names) == 1 else 1
    rep = check_wheeled_relations(B, 2, max_arity=arity)
    assert rep.passed, rep.counterexample
    assert rep.details["symbols"] == len(names) * 4


def test_kr_bracket_gl_regression():
    names, table = kr_table(GL, 2)
    assert table == gl_reference(A, 2)


def test_kr_bracket_examples():
    x = A.gen("x")
    assert kr_bracket(x, x, (1, 2), (2, 1), ZERO, 2).is_zero()
    assert kr_bracket(x, A.one(), (1, 2), (2, 1), GL, 2).is_zero()
    val = kr_bracket(x, x, (1, 2), (2, 1), GL, 2)
    assert val == p(R, "x", 2, 2) - p(R, "x", 1, 1)


@given(st.tuples(*[st.integers(1, 2)] * 4), st.integers(1, 3), st.integers(1, 3))
def test_kr_bracket_skew(idx, m, k):
    i, j, a, b = idx
    x = A.gen("x")
    u, v = x ** m, x ** k
    assert kr_bracket(u, v, (i, j), (a, b), GL, 2) == -kr_bracket(v, u, (a, b), (i, j), GL, 2)


def test_kr_leibniz_matches_biderivation():
    x = A.gen("x")
    rep = check_kr_leibniz(GL, 2, [(x, x * x), (x * x, x * x * x)])
    assert rep.passed, rep.counterexample


def test_jacobi_poly():
    names, table = kr_table(GL, 2)
    assert jacobi_poly(names, table).passed
    assert jacobi_poly(names, {}).passed
    bad = dict(table)
    bad[(0, 1)] = table[(0, 1)] + PolyElem.var(names, 0)
    bad[(1, 0)] = table[(1, 0)] - PolyElem.var(names, 0)
    rep = jacobi_poly(names, bad)
    assert not rep.passed and rep.counterexample["kind"] == "jacobi"


def test_jacobi_poly_detects_asymmetry():
    names, table = kr_table(GL, 2)
    bad = dict(table)
    bad[(0, 1)] = table[(0, 1)] + PolyElem.const(names, 1)
    assert jacobi_poly(names, bad).counterexample["kind"] == "skew"
