"""Symmetric-group combinatorics on 1-based permutations.

All public functions use 1-based mathematical indexing; images are stored
0-based internally and converted only in :class:`Permutation`.
Composition is right to left: ``compose(p, q)(k) == p(q(k))``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, TypeVar

from .report import Report

T = TypeVar("T")


# Small permutations are interned: hot loops compose them millions of times.
_INTERN: dict = {}
_INTERN_MAX_ARITY = 8


class Permutation:
    """Immutable bijection of ``{1, ..., n}`` given by its one-line images."""

    __slots__ = ("_img", "_hash")

    def __init__(self, image: Iterable[int]):
        img = tuple(int(v) - 1 for v in image)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation: {[v + 1 for v in img]}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def _from0(cls, img: tuple[int, ...]) -> "Permutation":
        p = _INTERN.get(img)
        if p is None:
            p = object.__new__(cls)
            p._img = img
            p._hash = hash(img)
            if len(img) <= _INTERN_MAX_ARITY:
                _INTERN[img] = p
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 0:
            raise ValueError("arity must be nonnegative")
        return cls._from0(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        """Build a permutation of ``{1..n}`` from disjoint cycles, e.g. ``(1, 2, 3)``."""
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                if not (1 <= a <= n and 1 <= b <= n):
                    raise ValueError(f"cycle entry out of range for n={n}")
                img[a - 1] = b - 1
        return cls(v + 1 for v in img)

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self._img)

    def __call__(self, k: int) -> int:
        if not 1 <= k <= len(self._img):
            raise IndexError(f"{k} outside [1, {len(self._img)}]")
        return self._img[k - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for k, v in enumerate(self._img):
            inv[v] = k
        return Permutation._from0(tuple(inv))

    def is_identity(self) -> bool:
        return all(k == v for k, v in enumerate(self._img))

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, Permutation) and self._img == other._img)

    def __lt__(self, other: "Permutation") -> bool:
        return (len(self._img), self._img) < (len(other._img), other._img)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"

    def to_json(self) -> list[int]:
        return list(self.image)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(data)


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p ∘ q``."""
    pi, qi = p._img, q._img
    if len(pi) != len(qi):
        raise ValueError(f"arity mismatch: {len(pi)} vs {len(qi)}")
    img = tuple(map(pi.__getitem__, qi))
    out = _INTERN.get(img)
    return out if out is not None else Permutation._from0(img)


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def all_perms(n: int) -> list[Permutation]:
    return _all_perms(n)


@lru_cache(maxsize=None)
def _all_perms(n: int) -> list[Permutation]:
    return [Permutation._from0(t) for t in itertools.permutations(range(n))]


def transposition(i: int, j: int, n: int) -> Permutation:
    return Permutation.from_cycles(n, (i, j)) if i != j else identity(n)


@lru_cache(maxsize=None)
def cycle(i: int, j: int, n: int) -> Permutation:
    """The cycle ``(i ... j)`` in ``S_n``: ``k -> k+1`` on ``[i, j)``, ``j -> i``."""
    if not 1 <= i <= j <= n:
        raise ValueError(f"need 1 <= i <= j <= n, got i={i}, j={j}, n={n}")
    img = list(range(n))
    for k in range(i - 1, j - 1):
        img[k] = k + 1
    img[j - 1] = i - 1
    return Permutation._from0(tuple(img))


def ordered_sum(perms: Sequence[Permutation], sizes: Sequence[int] | None = None) -> Permutation:
    """Blockwise juxtaposition of permutations (the ordered sum)."""
    if sizes is None:
        sizes = [p.n for p in perms]
    if len(perms) != len(sizes):
        raise ValueError("perms and sizes differ in length")
    img: list[int] = []
    offset = 0
    for p, m in zip(perms, sizes):
        if p.n != m:
            raise ValueError(f"block of size {m} carries a permutation of arity {p.n}")
        img.extend(offset + v for v in p._img)
        offset += m
    return Permutation._from0(tuple(img))


@lru_cache(maxsize=None)
def _block_perm(sizes: tuple[int, ...], tau: Permutation) -> Permutation:
    if tau.n != len(sizes):
        raise ValueError(f"tau has arity {tau.n} but {len(sizes)} blocks were given")
    tinv = tau.inverse()
    # target offset of block j: total size of the blocks placed before it
    target = []
    for j in range(len(sizes)):
        pos = tau(j + 1)
        target.append(sum(sizes[tinv(i) - 1] for i in range(1, pos)))
    img: list[int] = []
    for j, m in enumerate(sizes):
        img.extend(target[j] + k for k in range(m))
    return Permutation._from0(tuple(img))


def block_perm(sizes: Sequence[int], tau: Permutation) -> Permutation:
    """Block permutation moving block ``j`` (of size ``sizes[j]``) to slot ``tau(j)``."""
    return _block_perm(tuple(sizes), tau)


@lru_cache(maxsize=None)
def rmap(n: int, i: int, sigma: Permutation) -> Permutation:
    """The partial map ``r_i^n : S_n -> S_{n-1}``."""
    if n < 1 or not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    if sigma.n != n:
        raise ValueError(f"sigma has arity {sigma.n}, expected {n}")
    si = sigma(i)
    img = []
    for k in range(1, n):
        v = sigma(k) if k < i else sigma(k + 1)
        img.append(v if v < si else v - 1)
    return Permutation(img)


@lru_cache(maxsize=None)
def lmap(n: int, i: int, sigma: Permutation) -> Permutation:
    """The partial map ``l_i^n(sigma) = (r_i^n(sigma^{-1}))^{-1}``."""
    return rmap(n, i, sigma.inverse()).inverse()


def embed_e(n: int, m: int, sigma: Permutation) -> Permutation:
    """Extend ``sigma`` in ``S_n`` to ``S_m`` fixing ``n+1, ..., m``."""
    if sigma.n != n:
        raise ValueError(f"sigma has arity {sigma.n}, expected {n}")
    if n > m:
        raise ValueError(f"cannot embed S_{n} into S_{m}")
    return Permutation._from0(sigma._img + tuple(range(n, m)))


def embed_f(n: int, m: int, sigma: Permutation) -> Permutation:
    """Extend ``sigma`` in ``S_n`` to ``S_m`` fixing ``1, ..., m-n`` and shifting it up."""
    if sigma.n != n:
        raise ValueError(f"sigma has arity {sigma.n}, expected {n}")
    if n > m:
        raise ValueError(f"cannot embed S_{n} into S_{m}")
    k = m - n
    return Permutation._from0(tuple(range(k)) + tuple(k + v for v in sigma._img))


def restrict(sigma: Permutation) -> Permutation:
    """Inverse of :func:`embed_e` by one step; ``sigma`` must fix its top point."""
    n = sigma.n
    if n == 0 or sigma._img[-1] != n - 1:
        raise ValueError(f"{sigma!r} does not fix {n}")
    return Permutation._from0(sigma._img[:-1])


def act_left(sigma: Permutation, seq: Sequence[T]) -> tuple[T, ...]:
    """Left action on tuples: ``(sigma . s)_k = s_{sigma^{-1}(k)}``."""
    if sigma.n != len(seq):
        raise ValueError("arity mismatch")
    out: list = [None] * len(seq)
    for k, v in enumerate(sigma._img):
        out[v] = seq[k]
    return tuple(out)


def act_right(seq: Sequence[T], sigma: Permutation) -> tuple[T, ...]:
    """Right action on tuples: ``(s . sigma)_k = s_{sigma(k)}``."""
    if sigma.n != len(seq):
        raise ValueError("arity mismatch")
    return tuple(map(seq.__getitem__, sigma._img))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _block_size_tuples(n_max: int) -> Iterator[tuple[int, ...]]:
    """Block sizes with total at most ``n_max``: all positive compositions,
    plus compositions with empty blocks when there are at most three blocks."""
    for total in range(0, n_max + 1):
        for nblocks in range(1, n_max + 1):
            for sizes in compositions(total, nblocks):
                if 0 not in sizes or nblocks <= 3:
                    yield sizes


def verify_identities(n_max: int = 5) -> Report:
    """Exhaustively check the structural identities of the partial maps,
    cycles, ordered sums and block permutations up to total arity ``n_max``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rep = Report("symgrp-identities", instance="S_n", bounds={"n_max": n_max})

    def record(ok: bool, **ce) -> bool:
        rep.cases += 1
        if not ok:
            rep.fail(ce)
        return ok

    # cycle factorisations of the transposition (n n+1)
    for n in range(1, n_max):
        N = n + 1
        target = transposition(n, N, N)
        for i in range(1, n + 1):
            for k in range(1, N + 1):
                if i < k:
                    rhs = (cycle(i, n, N).inverse() * cycle(k, N, N).inverse()
                           * cycle(i, N, N) * cycle(k - 1, n, N))
                    record(rhs == target, identity="C.1", i=i, k=k, n=n, rhs=rhs.to_json())
                else:
                    rhs = (cycle(i, n, N).inverse() * cycle(k, N, N).inverse()
                           * cycle(i + 1, N, N) * cycle(k, n, N))
                    record(rhs == target, identity="C.2", i=i, k=k, n=n, rhs=rhs.to_json())

    # block permutations compose along the permuted sizes
    for sizes in _block_size_tuples(n_max):
        nblocks = len(sizes)
        for tau in all_perms(nblocks):
            tinv = tau.inverse()
            permuted = [sizes[tinv(i) - 1] for i in range(1, nblocks + 1)]
            b_tau = block_perm(sizes, tau)
            for tau2 in all_perms(nblocks):
                lhs = block_perm(permuted, tau2) * b_tau
                rhs = block_perm(sizes, tau2 * tau)
                record(lhs == rhs, identity="prop-2", sizes=list(sizes),
                       tau=tau.to_json(), tau2=tau2.to_json())

    # exchange of ordered sums and block permutations
    for sizes in _block_size_tuples(n_max):
        nblocks = len(sizes)
        for sigma in all_perms(nblocks):
            sinv = sigma.inverse()
            b_sigma = block_perm(sizes, sigma)
            for taus in itertools.product(*(all_perms(m) for m in sizes)):
                permuted_taus = [taus[sinv(i) - 1] for i in range(1, nblocks + 1)]
                lhs = ordered_sum(permuted_taus) * b_sigma
                rhs = b_sigma * ordered_sum(list(taus))
                record(lhs == rhs, identity="prop-1-2", sizes=list(sizes),
                       sigma=sigma.to_json(), taus=[t.to_json() for t in taus])

    # l/r partial maps
    for n in range(1, n_max + 1):
        for sigma in all_perms(n):
            sinv = sigma.inverse()
            for i in range(1, n + 1):
                l_e = embed_e(n - 1, n, lmap(n, i, sigma))
                l_rhs = cycle(i, n, n).inverse() * sigma * cycle(sinv(i), n, n)
                record(l_e == l_rhs, identity="l-id", n=n, i=i, sigma=sigma.to_json())
                r_e = embed_e(n - 1, n, rmap(n, i, sigma))
                r_rhs = cycle(sigma(i), n, n).inverse() * sigma * cycle(i, n, n)
                record(r_e == r_rhs, identity="r-id", n=n, i=i, sigma=sigma.to_json())
        for i in range(1, n + 1):
            c = cycle(i, n, n)
            idm = identity(n - 1)
            record(lmap(n, i, c) == idm, identity="l-r-id(l)", n=n, i=i)
            record(rmap(n, i, c.inverse()) == idm, identity="l-r-id(r)", n=n, i=i)
        if n >= 1:
            for s in all_perms(n - 1):
                e = embed_e(n - 1, n, s)
                record(lmap(n, n, e) == s and rmap(n, n, e) == s,
                       identity="l-r-e", n=n, sigma=s.to_json())
    return rep
