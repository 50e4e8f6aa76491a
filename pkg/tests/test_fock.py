import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wheelkit.fock import (arity_one_product, embed_algebra, embed_cyclic, fock_basis,
                           fock_contract, fock_contract_direct, fock_from_json,
                           fock_handle, fock_left, fock_map, fock_mul, fock_one,
                           fock_partial_contract, fock_right, fock_word,
                           grading_component, normalize, w_module_filter)
from wheelkit.freealg import AlgElem, FreeAlgebra
from wheelkit.symgrp import Permutation, block_perm, identity
from wheelkit.wheelcore import check_admissible, check_axioms, check_wheelgebra

from strategies import perms

A = FreeAlgebra(["x", "y"])
SWAP = Permutation([2, 1])


def basis_elems(n_max=2, A=A):
    pool = [u for n in range(n_max + 1) for u in fock_basis(A, n, 2, 2, 1)]
    return st.sampled_from(pool)


def test_normalize_identity_is_noop():
    W = (A.word(["x"]), A.word(["y"]))
    assert normalize(W, identity(2), identity(2)) == (W, identity(2), ())


def test_normalize_right_swap():
    W = (A.word(["x"]), A.word(["y"]))
    assert normalize(W, SWAP, identity(2)) == ((A.word(["y"]), A.word(["x"])), SWAP, ())


@given(basis_elems())
def test_normalize_idempotent(u):
    (key,) = u.terms
    slots, rho, m = key
    assert normalize(slots, identity(len(slots)), rho, m) == key


def test_mul_examples():
    x1, y1 = fock_word(A, "x"), fock_word(A, "y")
    assert fock_mul(x1, y1) == fock_word(A, "x", "y")
    assert fock_mul(fock_one(A), x1) == x1


@given(basis_elems(), basis_elems())
def test_mul_commutative_up_to_block_swap(u, v):
    n, m = u.n, v.n
    lhs = fock_mul(u, v)
    rhs = fock_right(fock_left(block_perm([m, n], SWAP), fock_mul(v, u)), block_perm([n, m], SWAP))
    assert lhs == rhs


@given(basis_elems(1), basis_elems(1), basis_elems(1))
def test_mul_associative(u, v, w):
    assert fock_mul(fock_mul(u, v), w) == fock_mul(u, fock_mul(v, w))


def test_partial_contract_examples():
    a = AlgElem(A, {A.word(["x", "y"]): 1})
    assert fock_partial_contract(embed_algebra(a)) == embed_cyclic(a)
    assert fock_partial_contract(fock_word(A, "x", "y")) == fock_word(A, "x", neck=["y"])
    assert fock_partial_contract(fock_word(A, "x", "y", perm=[2, 1])) == fock_word(A, "yx")


def test_contract_two_one():
    assert fock_contract(2, 1, 2, fock_word(A, "x", "y")) == fock_word(A, "xy")


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.sampled_from(list(fock_basis(A, n, 2, 1, 1))), st.integers(1, n), st.integers(1, n))))
def test_direct_contraction_matches_cycle_route(data):
    u, i, j = data
    assert fock_contract_direct(u.n, i, j, u) == fock_contract(u.n, i, j, u)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.sampled_from(list(fock_basis(A, n, 1, 1, 1))), st.integers(1, n), st.integers(1, n),
    perms(n), perms(n))))
def test_routes_agree_on_moved_elements(data):
    u, i, j, s, t = data
    moved = fock_right(fock_left(s, u), t)
    lhs = fock_contract(u.n, t.inverse()(i), s(j), moved)
    assert fock_contract_direct(u.n, t.inverse()(i), s(j), moved) == lhs


def test_fock_map_examples():
    ident = fock_map({"x": A.gen("x"), "y": A.gen("y")}, A, A)
    u = fock_word(A, "x", "y", neck=["xy"], perm=[2, 1])
    assert ident(u) == u
    swap_xy = fock_map({"x": A.gen("y"), "y": A.gen("y")}, A, A)
    assert swap_xy(fock_word(A, "x", neck=["x"])) == fock_word(A, "y", neck=["y"])


@given(basis_elems())
def test_fock_map_functorial(u):
    phi = fock_map({"x": A.gen("x") + A.gen("y"), "y": A.gen("x") * A.gen("y")}, A, A)
    psi = fock_map({"x": A.gen("y"), "y": A.gen("x") * 2}, A, A)
    composite = fock_map({"x": A.gen("y") + A.gen("x") * 2, "y": A.gen("y") * A.gen("x") * 2}, A, A)
    assert psi(phi(u)) == composite(u)


def test_grading_examples():
    B = FreeAlgebra([("x", 0), ("theta", 1)])
    u = fock_word(B, "x", "theta")
    assert u.weights() == {1}
    assert grading_component(fock_word(A, "x", "y"), 0) == fock_word(A, "x", "y")


def test_w_module_shape_in_arity_one():
    # W(M)(1) = M (x) Sym(B_cyc) + B (x) Sym(B_cyc) M_cyc for B = k<x>, M = span(theta)
    B = FreeAlgebra([("x", 0), ("theta", 1)])
    th = B.index("theta")
    seen = 0
    for u in fock_basis(B, 1, 3, 3, 2):
        part = w_module_filter(u)
        if not part:
            continue
        ((slots, _, m),) = part.terms
        in_slot = slots[0].count(th)
        in_necks = [c.count(th) for c in m]
        assert in_slot + sum(in_necks) == 1
        assert in_slot == 1 or in_necks.count(1) == 1
        seen += 1
    assert seen > 0


def test_json_round_trip():
    u = fock_word(A, "x", "yx", neck=["", "xy"], perm=[2, 1], coef=-3)
    assert fock_from_json(A, u.to_json()) == u


def test_json_shape():
    data = fock_word(A, "x", "y", perm=[2, 1]).to_json()
    assert data == {"n": 2, "terms": [{"coef": "1/1", "slots": [["x"], ["y"]], "perm": [2, 1], "neck": []}]}


@pytest.mark.parametrize("names", [["x"], ["x", "y"]])
def test_axioms_small(names):
    S = fock_handle(FreeAlgebra(names))
    rep = check_axioms(S, 2)
    assert rep.passed, rep.counterexample
    rep = check_wheelgebra(S, 2)
    assert rep.passed, rep.counterexample


def test_native_contraction_handle_passes():
    rep = check_axioms(fock_handle(FreeAlgebra(["x"]), native=True), 2)
    assert rep.passed, rep.counterexample


def test_admissible_product_is_tensor_product():
    S = fock_handle(A, 2, 2, 1)
    elems = list(fock_basis(A, 1, 1, 1, 1))
    rep = check_admissible(S, elems, reference=arity_one_product)
    assert rep.passed, rep.counterexample


def test_associativity_on_x_y_xy():
    S = fock_handle(A)
    elems = [fock_word(A, "x"), fock_word(A, "y"), fock_word(A, "xy")]
    assert check_admissible(S, elems).passed
