"""Wheelspaces: bimodule actions, contractions and the axiom suites.

A wheelspace instance is described by a :class:`WheelSpaceHandle`, a record
of callbacks plus a bounded basis enumerator, so that the same checks run
over End(V) and over Fock wheelgebras.  All contractions ``t^n_{j,i}`` use
``j`` for the output (left) index and ``i`` for the input (right) index.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Optional

from .freealg import add_term, exact, format_rational
from .report import Report
from .symgrp import (Permutation, act_left, act_right, all_perms, block_perm,
                     cycle, embed_e, identity, lmap, rmap, transposition)


class LinElem:
    """Exact rational combination of hashable basis keys in a fixed arity.

    Subclasses supply ``ctx`` (the ambient instance) and the structure maps;
    this base only provides vector-space arithmetic.
    """

    __slots__ = ("ctx", "n", "terms")

    def __init__(self, ctx: Any, n: int, terms: Optional[dict] = None):
        self.ctx = ctx
        self.n = n
        self.terms: dict = {}
        for k, c in (terms or {}).items():
            if c:
                self.terms[k] = exact(c)

    def _new(self, terms: dict, n: Optional[int] = None) -> "LinElem":
        out = object.__new__(type(self))
        out.ctx = self.ctx
        out.n = self.n if n is None else n
        out.terms = terms
        return out

    def _same(self, other: "LinElem") -> None:
        if type(other) is not type(self) or other.ctx != self.ctx:
            raise ValueError("elements belong to different wheelspaces")
        if other.n != self.n:
            raise ValueError(f"arity mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "LinElem") -> "LinElem":
        self._same(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            add_term(terms, k, c)
        return self._new(terms)

    def __neg__(self) -> "LinElem":
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LinElem") -> "LinElem":
        self._same(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            add_term(terms, k, -c)
        return self._new(terms)

    def __mul__(self, k) -> "LinElem":
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        if not k:
            return self._new({})
        return self._new({key: c * k for key, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (type(other) is type(self) and other.ctx == self.ctx
                and other.n == self.n and other.terms == self.terms)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def basis_terms(self) -> Iterator[tuple[Hashable, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: repr(kv[0])))


# ---------------------------------------------------------------------------
# End(V)


class EndSpace:
    """The wheelgebra ``End(V)`` with ``V`` of dimension ``dim``; basis
    indices are ``1..dim`` and components are spanned by matrix units."""

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EndSpace) and other.dim == self.dim

    def __hash__(self) -> int:
        return hash(("End", self.dim))

    def __repr__(self) -> str:
        return f"End(V), dim V = {self.dim}"

    def unit(self, alpha: tuple[int, ...], beta: tuple[int, ...], coef=1) -> "EndElem":
        """The matrix unit ``E_{alpha, beta}``."""
        if len(alpha) != len(beta):
            raise ValueError("index tuples differ in length")
        if any(not 1 <= a <= self.dim for a in alpha + beta):
            raise ValueError("index out of range")
        return EndElem(self, len(alpha), {(tuple(alpha), tuple(beta)): coef})

    def one(self) -> "EndElem":
        return EndElem(self, 0, {((), ()): 1})

    def zero(self, n: int) -> "EndElem":
        return EndElem(self, n, {})

    def basis(self, n: int) -> Iterator["EndElem"]:
        idx = range(1, self.dim + 1)
        for alpha in itertools.product(idx, repeat=n):
            for beta in itertools.product(idx, repeat=n):
                yield EndElem(self, n, {(alpha, beta): 1})

    def random_element(self, n: int, rng: random.Random, nterms: int = 4) -> "EndElem":
        idx = range(1, self.dim + 1)
        terms: dict = {}
        for _ in range(nterms):
            key = (tuple(rng.choice(idx) for _ in range(n)),
                   tuple(rng.choice(idx) for _ in range(n)))
            add_term(terms, key, Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        return EndElem(self, n, terms)


class EndElem(LinElem):
    """Element of ``End(V^{⊗n})`` as a combination of matrix units."""

    __slots__ = ()

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{self.n}]"
        return " + ".join(f"{c}*E{a},{b}" for (a, b), c in self.basis_terms())

    def matrix(self):
        """Dense numpy object matrix over Fractions (rows alpha, columns beta)."""
        import numpy as np
        d = self.ctx.dim
        mat = np.full((d ** self.n, d ** self.n), Fraction(0), dtype=object)
        for (a, b), c in self.terms.items():
            mat[_flat(a, d), _flat(b, d)] += c
        return mat


def _flat(idx: tuple[int, ...], d: int) -> int:
    out = 0
    for a in idx:
        out = out * d + (a - 1)
    return out


def end_left(sigma: Permutation, f: EndElem) -> EndElem:
    return f._new({(act_left(sigma, a), b): c for (a, b), c in f.terms.items()})


def end_right(f: EndElem, sigma: Permutation) -> EndElem:
    return f._new({(a, act_right(b, sigma)): c for (a, b), c in f.terms.items()})


def end_mul(f: EndElem, g: EndElem) -> EndElem:
    """Slot concatenation: ``E_{a,b} * E_{c,d} = E_{ac, bd}``."""
    if f.ctx != g.ctx:
        raise ValueError("different End(V) instances")
    terms: dict = {}
    for (a, b), c1 in f.terms.items():
        for (a2, b2), c2 in g.terms.items():
            add_term(terms, (a + a2, b + b2), c1 * c2)
    return EndElem(f.ctx, f.n + g.n, terms)


def end_contract(n: int, i: int, j: int, f: EndElem) -> EndElem:
    """``t^n_{j,i}(E_{a,b}) = delta(a_j, b_i) E_{a without j, b without i}``."""
    if f.n != n:
        raise ValueError(f"element has arity {f.n}, expected {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("contraction index out of range")
    terms: dict = {}
    for (a, b), c in f.terms.items():
        if a[j - 1] == b[i - 1]:
            add_term(terms, (a[:j - 1] + a[j:], b[:i - 1] + b[i:]), c)
    return EndElem(f.ctx, n - 1, terms)


def end_contract_basis_free(n: int, i: int, j: int, f: EndElem):
    """Contraction computed as a partial trace of the dense operator.

    The operator on ``V^{⊗n}`` is reshaped to a ``2n``-index array and the
    output leg ``j`` is traced against the input leg ``i``; no matrix-unit
    bookkeeping is used.
    """
    import numpy as np
    d = f.ctx.dim
    arr = f.matrix().reshape((d,) * (2 * n))
    out = np.asarray(np.trace(arr, axis1=j - 1, axis2=n + i - 1), dtype=object)
    m = n - 1
    return out.reshape((d ** m, d ** m)) if m else out.reshape((1, 1))


def end_handle(dim: int) -> "WheelSpaceHandle":
    space = EndSpace(dim)
    return WheelSpaceHandle(
        name=f"End(V) dim={dim}",
        basis=space.basis,
        left=end_left,
        right=end_right,
        partial=lambda f: end_contract(f.n, f.n, f.n, f),
        contract=lambda f, j, i: end_contract(f.n, i, j, f),
        mul=end_mul,
        unit=space.one,
        zero=space.zero,
        describe=repr,
    )


# ---------------------------------------------------------------------------
# Generic machinery


@dataclass
class WheelSpaceHandle:
    """Capability record for a wheelspace instance.

    ``partial`` is the partial contraction ``t^n = t^n_{n,n}``; ``contract``
    is an optional native ``t^n_{j,i}`` taking ``(v, j, i)``.  ``basis(n)``
    enumerates a bounded basis of component ``n``.
    """

    name: str
    basis: Callable[[int], Iterable[Any]]
    left: Callable[[Permutation, Any], Any]
    right: Callable[[Any, Permutation], Any]
    partial: Callable[[Any], Any]
    contract: Optional[Callable[[Any, int, int], Any]] = None
    mul: Optional[Callable[[Any, Any], Any]] = None
    unit: Optional[Callable[[], Any]] = None
    zero: Optional[Callable[[int], Any]] = None
    describe: Callable[[Any], Any] = repr
    bounds: dict = field(default_factory=dict)

    def t(self, v, j: int, i: int):
        """``t^n_{j,i}(v)``: native if available, else rebuilt from ``t^n``."""
        if self.contract is not None:
            return self.contract(v, j, i)
        return contract_general(self, v.n, i, j, v)


def contract_general(S: WheelSpaceHandle, n: int, i: int, j: int, v):
    """``t^n_{j,i}(v) = t^n((j...n)^{-1} . v . (i...n))`` from the partial one."""
    if v.n != n:
        raise ValueError(f"element has arity {v.n}, expected {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("contraction index out of range")
    if i == n and j == n:
        return S.partial(v)
    w = S.right(S.left(cycle(j, n, n).inverse(), v), cycle(i, n, n))
    return S.partial(w)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WHEELKIT_THREADS", "1")))
    except ValueError:
        return 1


def _basis_list(S: WheelSpaceHandle, n: int) -> list:
    return list(S.basis(n))


def w1_prime_indices(i: int, j: int, k: int, l: int) -> tuple[int, int, int, int]:
    """The re-indexing of the exchange law: returns ``(i', k', j', l')``."""
    ip, kp = (k - 1, i) if i < k else (k, i + 1)
    jp, lp = (l - 1, j) if j < l else (l, j + 1)
    return ip, kp, jp, lp


def check_axioms(S: WheelSpaceHandle, n_max: int = 3, checks: Iterable[str] = ("W1", "W2", "part-trace-comm", "equivariance")) -> Report:
    """Exhaustively verify the wheelspace axioms on the bounded basis.

    ``W1``: ``t_{j,i}(s.v.u) = l_j(s) . t_{s^{-1}(j), u(i)}(v) . r_i(u)``;
    ``W2``: the exchange law for two successive contractions;
    ``part-trace-comm``: ``t t`` is invariant under conjugation by ``(n n+1)``;
    ``equivariance``: ``t^n`` is biequivariant along the top-fixing embedding.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    checks = tuple(checks)
    rep = Report("wheel-axioms", instance=S.name, bounds={"n_max": n_max, **S.bounds})
    sub = {c: Report(c, instance=S.name) for c in checks}
    for n in range(1, n_max + 1):
        basis = _basis_list(S, n)
        perms = all_perms(n)
        if "W1" in checks:
            r = sub["W1"]
            for v in basis:
                base = {(j, i): S.t(v, j, i) for j in range(1, n + 1) for i in range(1, n + 1)}
                for s in perms:
                    sinv = s.inverse()
                    sv = S.left(s, v)
                    for u in perms:
                        svu = S.right(sv, u)
                        for j in range(1, n + 1):
                            ls = lmap(n, j, s)
                            for i in range(1, n + 1):
                                lhs = S.t(svu, j, i)
                                rhs = S.right(S.left(ls, base[(sinv(j), u(i))]), rmap(n, i, u))
                                r.cases += 1
                                if lhs != rhs:
                                    r.fail({"v": S.describe(v), "sigma": s.to_json(),
                                            "tau": u.to_json(), "j": j, "i": i,
                                            "lhs": S.describe(lhs), "rhs": S.describe(rhs)})
                                    break
                            if not r.passed:
                                break
                        if not r.passed:
                            break
                    if not r.passed:
                        break
                if not r.passed:
                    break
        if "equivariance" in checks:
            r = sub["equivariance"]
            small = all_perms(n - 1)
            for v in basis:
                tv = S.partial(v)
                for s in small:
                    es = embed_e(n - 1, n, s)
                    for u in small:
                        eu = embed_e(n - 1, n, u)
                        lhs = S.partial(S.right(S.left(es, v), eu))
                        rhs = S.right(S.left(s, tv), u)
                        r.cases += 1
                        if lhs != rhs:
                            r.fail({"v": S.describe(v), "sigma": s.to_json(), "tau": u.to_json(),
                                    "lhs": S.describe(lhs), "rhs": S.describe(rhs)})
                            break
                    if not r.passed:
                        break
                if not r.passed:
                    break
        if n >= 2 and "W2" in checks:
            r = sub["W2"]
            m = n - 1
            for v in basis:
                inner = {(l, k): S.t(v, l, k) for l in range(1, n + 1) for k in range(1, n + 1)}
                for j in range(1, m + 1):
                    for i in range(1, m + 1):
                        for l in range(1, n + 1):
                            for k in range(1, n + 1):
                                ip, kp, jp, lp = w1_prime_indices(i, j, k, l)
                                lhs = S.t(inner[(l, k)], j, i)
                                rhs = S.t(inner[(lp, kp)], jp, ip)
                                r.cases += 1
                                if lhs != rhs:
                                    r.fail({"v": S.describe(v), "j": j, "i": i, "l": l, "k": k,
                                            "lhs": S.describe(lhs), "rhs": S.describe(rhs)})
                                    break
                            if not r.passed:
                                break
                        if not r.passed:
                            break
                    if not r.passed:
                        break
                if not r.passed:
                    break
        if n >= 2 and "part-trace-comm" in checks:
            r = sub["part-trace-comm"]
            c = transposition(n - 1, n, n)
            for v in basis:
                lhs = S.partial(S.partial(S.right(S.left(c, v), c)))
                rhs = S.partial(S.partial(v))
                r.cases += 1
                if lhs != rhs:
                    r.fail({"v": S.describe(v), "lhs": S.describe(lhs), "rhs": S.describe(rhs)})
                    break
    for c in checks:
        rep.merge(sub[c])
        rep.details[c] = {"status": sub[c].status, "cases": sub[c].cases}
    return rep


def _arity_tuples(total_max: int, parts: int) -> Iterator[tuple[int, ...]]:
    for t in itertools.product(range(total_max + 1), repeat=parts):
        if sum(t) <= total_max:
            yield t


def check_wheelgebra(S: WheelSpaceHandle, n_max: int = 3) -> Report:
    """Verify associativity, unitality and commutativity of the product and
    its compatibility with contractions inside each factor."""
    if S.mul is None or S.unit is None:
        raise ValueError("instance has no product")
    rep = Report("wheelgebra-axioms", instance=S.name, bounds={"n_max": n_max, **S.bounds})
    sub = {c: Report(c, instance=S.name) for c in ("assoc-wh", "unit-wh", "comm-wh", "mu-contraction")}
    bases = {n: _basis_list(S, n) for n in range(n_max + 1)}
    one = S.unit()
    mul = S.mul

    r = sub["unit-wh"]
    for n in range(n_max + 1):
        for v in bases[n]:
            r.cases += 1
            if mul(one, v) != v or mul(v, one) != v:
                r.fail({"v": S.describe(v)})
                break

    r = sub["comm-wh"]
    tau = Permutation([2, 1])
    for n, m in _arity_tuples(n_max, 2):
        left_b = block_perm([m, n], tau)
        right_b = block_perm([n, m], tau)
        for v in bases[n]:
            for w in bases[m]:
                lhs = mul(v, w)
                rhs = S.right(S.left(left_b, mul(w, v)), right_b)
                r.cases += 1
                if lhs != rhs:
                    r.fail({"v": S.describe(v), "w": S.describe(w),
                            "lhs": S.describe(lhs), "rhs": S.describe(rhs)})
                    break
            if not r.passed:
                break

    r = sub["assoc-wh"]
    for n, m, p in _arity_tuples(n_max, 3):
        cache_vw = {}
        for v in bases[n]:
            for w in bases[m]:
                vw = mul(v, w)
                for u in bases[p]:
                    key = id(w), id(u)
                    wu = cache_vw.get(key)
                    if wu is None:
                        wu = cache_vw[key] = mul(w, u)
                    r.cases += 1
                    if mul(vw, u) != mul(v, wu):
                        r.fail({"u": S.describe(v), "v": S.describe(w), "w": S.describe(u)})
                        break
                if not r.passed:
                    break
            if not r.passed:
                break

    r = sub["mu-contraction"]
    for n, m in _arity_tuples(n_max, 2):
        for v in bases[n]:
            for w in bases[m]:
                vw = mul(v, w)
                for j in range(1, n + m + 1):
                    for i in range(1, n + m + 1):
                        if j <= n and i <= n:
                            rhs = mul(S.t(v, j, i), w)
                        elif j > n and i > n:
                            rhs = mul(v, S.t(w, j - n, i - n))
                        else:
                            continue
                        r.cases += 1
                        if S.t(vw, j, i) != rhs:
                            r.fail({"v": S.describe(v), "w": S.describe(w), "j": j, "i": i})
                            break
                    if not r.passed:
                        break
                if not r.passed:
                    break
            if not r.passed:
                break

    for name, s in sub.items():
        rep.merge(s)
        rep.details[name] = {"status": s.status, "cases": s.cases}
    return rep


def admissible_product(S: WheelSpaceHandle) -> Callable[[Any, Any], Any]:
    """The binary operation ``a.b = t^2_{2,1}(mu_{1,1}(a, b))`` on component 1."""
    if S.mul is None:
        raise ValueError("instance has no product")

    def product(a, b):
        if a.n != 1 or b.n != 1:
            raise ValueError("admissible product is defined on arity-1 elements")
        return S.t(S.mul(a, b), 2, 1)

    return product


def check_admissible(S: WheelSpaceHandle, elements: Optional[Iterable[Any]] = None,
                     reference: Optional[Callable[[Any, Any], Any]] = None) -> Report:
    """Associativity of the admissible product on all triples of ``elements``
    (default: the arity-1 basis), optionally compared with ``reference``."""
    prod = admissible_product(S)
    elems = list(elements) if elements is not None else _basis_list(S, 1)
    rep = Report("admissible", instance=S.name, bounds={"elements": len(elems), **S.bounds})
    if reference is not None:
        for a in elems:
            for b in elems:
                rep.cases += 1
                if prod(a, b) != reference(a, b):
                    rep.fail({"kind": "reference", "a": S.describe(a), "b": S.describe(b),
                              "got": S.describe(prod(a, b)), "expected": S.describe(reference(a, b))})
                    return rep
    pairs = {}
    for a in elems:
        for b in elems:
            pairs[(id(a), id(b))] = prod(a, b)
    for a in elems:
        for b in elems:
            ab = pairs[(id(a), id(b))]
            for c in elems:
                rep.cases += 1
                if prod(ab, c) != prod(a, pairs[(id(b), id(c))]):
                    rep.fail({"kind": "associativity", "a": S.describe(a),
                              "b": S.describe(b), "c": S.describe(c)})
                    return rep
    return rep


def sign_flipped(S: WheelSpaceHandle, flip_at: Callable[[Any], bool]) -> WheelSpaceHandle:
    """A deliberately broken copy of ``S`` whose partial contraction is negated
    on the inputs selected by ``flip_at``; a negative control for the suite."""

    def partial(v):
        out = S.partial(v)
        return -out if flip_at(v) else out

    return WheelSpaceHandle(
        name=S.name + " (sign-flipped)", basis=S.basis, left=S.left, right=S.right,
        partial=partial, contract=None, mul=S.mul, unit=S.unit, zero=S.zero,
        describe=S.describe, bounds=S.bounds)


def describe_terms(v: LinElem) -> list:
    return [[format_rational(c), repr(k)] for k, c in v.basis_terms()]
