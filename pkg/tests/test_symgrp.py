import pytest
from hypothesis import given
from hypothesis import strategies as st

from wheelkit.symgrp import (Permutation, act_left, act_right, all_perms, block_perm,
                             compose, cycle, embed_e, embed_f, identity, lmap,
                             ordered_sum, restrict, rmap, transposition,
                             verify_identities)

from strategies import arity_and_perm, perms

P = Permutation.from_cycles


@pytest.mark.parametrize("p, q, expected", [
    (identity(3), P(3, (1, 2)), P(3, (1, 2))),
    (P(2, (1, 2)), P(2, (1, 2)), identity(2)),
    (P(3, (1, 2, 3)), P(3, (1, 2)), P(3, (1, 3))),
])
def test_compose_examples(p, q, expected):
    assert compose(p, q) == expected


def test_compose_is_right_to_left():
    p, q = P(3, (1, 2)), P(3, (2, 3))
    assert (p * q)(2) == p(q(2)) == 3


@pytest.mark.parametrize("i, j, n, expected", [
    (1, 1, 3, identity(3)),
    (1, 3, 3, P(3, (1, 2, 3))),
    (2, 3, 4, P(4, (2, 3))),
])
def test_cycle_examples(i, j, n, expected):
    assert cycle(i, j, n) == expected


def test_ordered_sum_examples():
    assert ordered_sum([identity(2), identity(1)], [2, 1]) == identity(3)
    assert ordered_sum([P(2, (1, 2)), identity(1)], [2, 1]) == P(3, (1, 2))


@pytest.mark.parametrize("sizes, tau, expected", [
    ([2, 1], P(2, (1, 2)), P(3, (1, 2, 3))),
    ([1, 1], P(2, (1, 2)), P(2, (1, 2))),
    ([3, 0, 2], identity(3), identity(5)),
])
def test_block_perm_examples(sizes, tau, expected):
    assert block_perm(sizes, tau) == expected


def test_embeddings_examples():
    s = P(2, (1, 2))
    assert embed_e(2, 2, s) == s
    assert embed_e(1, 3, identity(1)) == identity(3)
    assert embed_f(2, 3, s) == P(3, (2, 3))


@pytest.mark.parametrize("n", range(1, 6))
def test_l_r_identities(n):
    for i in range(1, n + 1):
        assert rmap(n, i, cycle(i, n, n).inverse()).is_identity()
        assert lmap(n, i, cycle(i, n, n)).is_identity()


@pytest.mark.parametrize("n", range(2, 5))
def test_rmap_lmap_undo_embedding(n):
    for s in all_perms(n - 1):
        e = embed_e(n - 1, n, s)
        assert rmap(n, n, e) == s
        assert lmap(n, n, e) == s


def test_invalid_permutation_rejected():
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])
    with pytest.raises(ValueError):
        P(2, (1, 3))


def test_json_round_trip():
    p = P(4, (1, 3, 2))
    assert Permutation.from_json(p.to_json()) == p


def test_verify_identities_passes():
    rep = verify_identities(4)
    assert rep.passed, rep.counterexample
    assert rep.cases > 0


def test_c1_hand_case():
    # n = 2, i = 1, k = 2: both sides are the transposition (2 3)
    n, N, i, k = 2, 3, 1, 2
    rhs = cycle(i, n, N).inverse() * cycle(k, N, N).inverse() * cycle(i, N, N) * cycle(k - 1, n, N)
    assert rhs == transposition(2, 3, 3) == P(3, (2, 3))


@given(arity_and_perm(6))
def test_inverse_is_two_sided(np_):
    n, p = np_
    assert (p * p.inverse()).is_identity() and (p.inverse() * p).is_identity()


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_composition_associative(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(perms(n), perms(n))))
def test_actions_are_actions(t):
    a, b = t
    seq = tuple("abcdef"[:a.n])
    assert act_left(a * b, seq) == act_left(a, act_left(b, seq))
    assert act_right(seq, a * b) == act_right(act_right(seq, a), b)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3).flatmap(
    lambda sizes: st.tuples(st.just(sizes),
                            st.tuples(*[st.tuples(perms(s), perms(s)) for s in sizes]))))
def test_ordered_sum_is_morphism(data):
    sizes, pairs = data
    left = ordered_sum([p * q for p, q in pairs], sizes)
    right = ordered_sum([p for p, _ in pairs], sizes) * ordered_sum([q for _, q in pairs], sizes)
    assert left == right


@given(st.lists(st.integers(0, 2), min_size=1, max_size=4).flatmap(
    lambda sizes: st.tuples(st.just(sizes), perms(len(sizes)), perms(len(sizes)))))
def test_block_perm_composes(data):
    sizes, tau, tau2 = data
    tinv = tau.inverse()
    permuted = [sizes[tinv(i) - 1] for i in range(1, len(sizes) + 1)]
    assert block_perm(permuted, tau2) * block_perm(sizes, tau) == block_perm(sizes, tau2 * tau)


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), perms(n - 1))))
def test_restrict_inverts_embedding(data):
    n, s = data
    assert restrict(embed_e(n - 1, n, s)) == s
