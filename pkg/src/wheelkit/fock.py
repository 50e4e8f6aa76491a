"""The Fock wheelgebra F(A) of a free algebra A.

A basis element of arity ``n`` is a canonical triple ``(W, rho, m)``:
``W`` is an ``n``-tuple of words filling the slots, ``rho`` is the right
permutation (the left one is normalised to the identity) and ``m`` is a
sorted tuple of necklaces.  The triple stands for ``rho . mu(W_1, ..., W_n)``
times the necklace monomial, so ``sigma . [W, rho, m] = [W, sigma rho, m]``
and ``[W, rho, m] . s = [W . s, rho s, m]`` with ``(W . s)_k = W_{s(k)}``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .freealg import (AlgElem, CycElem, FreeAlgebra, Monomial, SymCycElem, Word,
                      add_term, canonical_necklace, format_rational,
                      monomial_weight, parse_rational, sort_monomial)
from .symgrp import (Permutation, act_right, all_perms, block_perm, cycle,
                     identity, ordered_sum, restrict)
from .wheelcore import LinElem, WheelSpaceHandle, contract_general

Key = tuple[tuple[Word, ...], Permutation, Monomial]


class FockElem(LinElem):
    """Arity-``n`` element of F(A) as a combination of canonical triples."""

    __slots__ = ()

    @property
    def algebra(self) -> FreeAlgebra:
        return self.ctx

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{self.n}]"
        A = self.ctx
        parts = []
        for (slots, rho, m), c in sorted(self.terms.items(), key=_key_order):
            body = "(" + ",".join(A.word_str(w) for w in slots) + ")"
            if not rho.is_identity():
                body += f"{list(rho.image)}"
            body += "".join(f"<{A.word_str(x)}>" for x in m)
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)

    def weights(self) -> set[int]:
        return {key_weight(self.ctx, k) for k in self.terms}

    def to_json(self) -> dict:
        names = self.ctx.names
        terms = []
        for (slots, rho, m), c in sorted(self.terms.items(), key=_key_order):
            terms.append({
                "coef": format_rational(c),
                "slots": [[names[i] for i in w] for w in slots],
                "perm": list(rho.image),
                "neck": [[names[i] for i in x] for x in m],
            })
        return {"n": self.n, "terms": terms}


def _key_order(item):
    (slots, rho, m), _ = item
    return (tuple((len(w), w) for w in slots), rho.image, tuple((len(x), x) for x in m))


def key_weight(A: FreeAlgebra, key: Key) -> int:
    slots, _, m = key
    return sum(A.word_weight(w) for w in slots) + monomial_weight(A, m)


def fock_from_json(A: FreeAlgebra, data: Mapping) -> FockElem:
    n = int(data["n"])
    terms: dict = {}
    for t in data["terms"]:
        slots = tuple(A.word(list(w)) for w in t["slots"])
        rho = Permutation(t.get("perm", range(1, n + 1)))
        m = sort_monomial(canonical_necklace(A.word(list(x))) for x in t.get("neck", []))
        if len(slots) != n or rho.n != n:
            raise ValueError("term arity does not match n")
        add_term(terms, (slots, rho, m), parse_rational(t["coef"]))
    return FockElem(A, n, terms)


# ---------------------------------------------------------------------------
# Construction


def normalize(W: Sequence[Word], lam: Permutation, mu: Permutation,
              m: Iterable[Sequence[int]] = ()) -> Key:
    """Canonical key of ``mu . (W) . lam`` (slots ``W``, left ``mu``, right ``lam``)."""
    W = tuple(tuple(w) for w in W)
    if not (len(W) == lam.n == mu.n):
        raise ValueError("arity mismatch between slots and permutations")
    return (act_right(W, lam), mu * lam, sort_monomial(canonical_necklace(x) for x in m))


def fock_basis_elem(A: FreeAlgebra, W: Sequence[Word], rho: Optional[Permutation] = None,
                    m: Iterable[Sequence[int]] = (), coef=1) -> FockElem:
    n = len(W)
    rho = identity(n) if rho is None else rho
    key = normalize(W, identity(n), rho, m)
    return FockElem(A, n, {key: coef})


def _as_word(A: FreeAlgebra, spec: Sequence[str] | str) -> Word:
    if isinstance(spec, str):
        return A.word(spec) if spec in A.names else A.word(list(spec))
    return A.word(list(spec))


def fock_word(A: FreeAlgebra, *slots: Sequence[str] | str, neck: Iterable[Sequence[str] | str] = (),
              perm: Optional[Sequence[int]] = None, coef=1) -> FockElem:
    """Basis element from generator names, e.g. ``fock_word(A, "x", "xy", neck=["y"])``;
    ``""`` is the empty word."""
    W = [_as_word(A, s) for s in slots]
    m = [_as_word(A, x) for x in neck]
    rho = None if perm is None else Permutation(perm)
    return fock_basis_elem(A, W, rho, m, coef)


def embed_algebra(a: AlgElem) -> FockElem:
    """The arity-1 element ``a (x) 1`` of F(A)(1)."""
    terms: dict = {}
    one = identity(1)
    for w, c in a.terms.items():
        add_term(terms, ((w,), one, ()), c)
    return FockElem(a.algebra, 1, terms)


def embed_cyclic(c: CycElem | AlgElem) -> FockElem:
    """The arity-0 element of a cyclic class (or of ``pi`` of an algebra element)."""
    terms: dict = {}
    e = identity(0)
    for w, k in c.terms.items():
        add_term(terms, ((), e, (canonical_necklace(w),)), k)
    return FockElem(c.algebra, 0, terms)


def embed_sym(s: SymCycElem) -> FockElem:
    return FockElem(s.algebra, 0, {((), identity(0), m): c for m, c in s.terms.items()})


def fock_one(A: FreeAlgebra) -> FockElem:
    return FockElem(A, 0, {((), identity(0), ()): 1})


def fock_zero(A: FreeAlgebra, n: int) -> FockElem:
    return FockElem(A, n, {})


# ---------------------------------------------------------------------------
# Structure maps


@lru_cache(maxsize=1 << 16)
def _left_key(sigma: Permutation, key: Key) -> Key:
    w, rho, m = key
    return (w, sigma * rho, m)


@lru_cache(maxsize=1 << 16)
def _right_key(key: Key, sigma: Permutation) -> Key:
    w, rho, m = key
    return (act_right(w, sigma), rho * sigma, m)


def fock_left(sigma: Permutation, u: FockElem) -> FockElem:
    if sigma.n != u.n:
        raise ValueError("arity mismatch")
    return u._new({_left_key(sigma, k): c for k, c in u.terms.items()})


def fock_right(u: FockElem, sigma: Permutation) -> FockElem:
    if sigma.n != u.n:
        raise ValueError("arity mismatch")
    return u._new({_right_key(k, sigma): c for k, c in u.terms.items()})


@lru_cache(maxsize=1 << 16)
def _mul_key(k1: Key, k2: Key) -> Key:
    return (k1[0] + k2[0], ordered_sum([k1[1], k2[1]]), sort_monomial(k1[2] + k2[2]))


def fock_mul(u: FockElem, v: FockElem) -> FockElem:
    """``[W, rho, m][W', rho', m'] = [W W', s(rho, rho'), m m']``."""
    if u.ctx != v.ctx:
        raise ValueError("elements over different algebras")
    terms: dict = {}
    for k1, c1 in u.terms.items():
        for k2, c2 in v.terms.items():
            add_term(terms, _mul_key(k1, k2), c1 * c2)
    return u._new(terms, u.n + v.n)


@lru_cache(maxsize=1 << 16)
def _partial_key(key: Key) -> Key:
    w, rho, m = key
    n = len(w)
    j = rho.inverse()(n)
    if j == n:
        return (w[:-1], restrict(rho), sort_monomial(m + (canonical_necklace(w[-1]),)))
    tau = restrict(rho * cycle(j, n, n))
    slots = w[:j - 1] + (w[n - 1] + w[j - 1],) + w[j:n - 1]
    s = cycle(j, n - 1, n - 1).inverse()
    return (slots, tau * s, m)


def fock_partial_contract(u: FockElem) -> FockElem:
    """The partial contraction ``t^n``.

    With ``j = rho^{-1}(n)``: if ``j = n`` the last slot closes into a
    necklace; otherwise output slot ``n`` feeds input slot ``j`` and the slot
    ``j`` becomes ``W_n W_j``.
    """
    if u.n == 0:
        raise ValueError("contraction is undefined in arity 0")
    terms: dict = {}
    for key, c in u.terms.items():
        add_term(terms, _partial_key(key), c)
    return FockElem(u.ctx, u.n - 1, terms)


@lru_cache(maxsize=1 << 16)
def _contract_key(key: Key, j: int, i: int) -> Key:
    w, rho, m = key
    n = len(w)
    if i == n and j == n:
        return _partial_key(key)
    s = cycle(i, n, n)
    moved = (act_right(w, s), cycle(j, n, n).inverse() * rho * s, m)
    return _partial_key(moved)


def fock_contract(n: int, i: int, j: int, u: FockElem) -> FockElem:
    """``t^n_{j,i}(u) = t^n((j...n)^{-1} . u . (i...n))`` (output ``j``, input ``i``)."""
    if u.n != n:
        raise ValueError(f"element has arity {u.n}, expected {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("contraction index out of range")
    terms: dict = {}
    for key, c in u.terms.items():
        add_term(terms, _contract_key(key, j, i), c)
    return FockElem(u.ctx, n - 1, terms)


def fock_contract_direct(n: int, i: int, j: int, u: FockElem) -> FockElem:
    """Closed form of ``t^n_{j,i}`` on triples, used as an independent route.

    On ``[W, rho, m]`` let ``p = rho^{-1}(j)``.  If ``p = i`` slot ``i``
    closes into a necklace; otherwise slot ``p`` is replaced by ``W_i W_p``,
    slot ``i`` is dropped and the permutation is re-indexed accordingly.
    """
    if u.n != n:
        raise ValueError(f"element has arity {u.n}, expected {n}")
    terms: dict = {}
    for (w, rho, m), c in u.terms.items():
        p = rho.inverse()(j)
        img = rho.image
        if p == i:
            slots = w[:i - 1] + w[i:]
            new_m = sort_monomial(m + (canonical_necklace(w[i - 1]),))
        else:
            slots = tuple(w[i - 1] + w[k - 1] if k == p else w[k - 1]
                          for k in range(1, n + 1) if k != i)
            new_m = m
        src = [k for k in range(1, n + 1) if k != i]
        # slot k (k != i) is wired to output rho(k); slot p now carries rho(i)
        out = []
        for k in src:
            target = img[i - 1] if k == p else img[k - 1]
            out.append(target - (1 if target > j else 0))
        add_term(terms, (slots, Permutation(out), new_m), c)
    return FockElem(u.ctx, n - 1, terms)


def fock_map(phi: Mapping[str, AlgElem], source: FreeAlgebra, target: FreeAlgebra):
    """The morphism F(phi): F(A) -> F(A') induced by a generator assignment."""
    images = []
    for name in source.names:
        if name not in phi:
            raise ValueError(f"assignment misses generator {name!r}")
        img = phi[name]
        if img.algebra != target:
            raise ValueError(f"image of {name!r} lies outside the target algebra")
        images.append(img)

    def word_image(w: Word) -> AlgElem:
        out = target.one()
        for g in w:
            out = out * images[g]
        return out

    def apply(u: FockElem) -> FockElem:
        if u.ctx != source:
            raise ValueError("element is not over the source algebra")
        acc: dict = {}
        for (slots, rho, m), c in u.terms.items():
            parts: list[list[tuple[Word, Fraction]]] = [list(word_image(w).terms.items()) for w in slots]
            neck_parts = [list(word_image(x).terms.items()) for x in m]
            for combo in itertools.product(*parts):
                coef = c
                for _, k in combo:
                    coef *= k
                new_slots = tuple(w for w, _ in combo)
                for ncombo in itertools.product(*neck_parts):
                    k2 = coef
                    for _, k in ncombo:
                        k2 *= k
                    new_m = sort_monomial(canonical_necklace(w) for w, _ in ncombo)
                    add_term(acc, (new_slots, rho, new_m), k2)
        return FockElem(target, u.n, acc)

    return apply


def grading_component(u: FockElem, k: int) -> FockElem:
    """Projection onto total weight ``k`` (slot words plus necklaces)."""
    return u._new({key: c for key, c in u.terms.items() if key_weight(u.ctx, key) == k})


def w_module_filter(u: FockElem, k: int = 1) -> FockElem:
    """The part of ``u`` lying in ``W(M)``, i.e. of weight ``k`` (default 1)."""
    return grading_component(u, k)


# ---------------------------------------------------------------------------
# Bounded bases and the wheelspace handle


def fock_basis(A: FreeAlgebra, n: int, max_word_len: int = 2, max_neck_len: int = 2,
               max_necklaces: int = 1) -> Iterator[FockElem]:
    """Canonical triples of arity ``n`` with slot words of length at most
    ``max_word_len`` and at most ``max_necklaces`` necklaces of length at most
    ``max_neck_len`` (the empty necklace included)."""
    words = list(A.words(max_word_len))
    necks = A.necklaces(max_neck_len)
    monos: list[Monomial] = [()]
    for r in range(1, max_necklaces + 1):
        monos.extend(tuple(c) for c in itertools.combinations_with_replacement(necks, r))
    perms = all_perms(n)
    for W in itertools.product(words, repeat=n):
        for rho in perms:
            for m in monos:
                yield FockElem(A, n, {(W, rho, m): 1})


def fock_handle(A: FreeAlgebra, max_word_len: int = 2, max_neck_len: int = 2,
                max_necklaces: int = 1, native: bool = False) -> WheelSpaceHandle:
    """Handle for the axiom suites.  ``native`` selects the closed-form
    contraction instead of rebuilding it from the partial one."""
    contract = ((lambda v, j, i: fock_contract_direct(v.n, i, j, v)) if native
                else (lambda v, j, i: fock_contract(v.n, i, j, v)))
    return WheelSpaceHandle(
        name=f"F({A!r})",
        basis=lambda n: fock_basis(A, n, max_word_len, max_neck_len, max_necklaces),
        left=fock_left,
        right=fock_right,
        partial=fock_partial_contract,
        contract=contract,
        mul=fock_mul,
        unit=lambda: fock_one(A),
        zero=lambda n: fock_zero(A, n),
        describe=lambda v: v.to_json(),
        bounds={"max_word_len": max_word_len, "max_neck_len": max_neck_len,
                "max_necklaces": max_necklaces},
    )


def arity_one_product(u: FockElem, v: FockElem) -> FockElem:
    """Reference product on ``F(A)(1) = A (x) Sym(A_cyc)``:
    ``(a (x) m)(b (x) m') = ab (x) m m'``."""
    if u.n != 1 or v.n != 1:
        raise ValueError("arity-1 elements required")
    terms: dict = {}
    one = identity(1)
    for ((a,), _, m1), c1 in u.terms.items():
        for ((b,), _, m2), c2 in v.terms.items():
            add_term(terms, ((a + b,), one, sort_monomial(m1 + m2)), c1 * c2)
    return FockElem(u.ctx, 1, terms)
