"""Matrix reduction, abelianization and the induced bracket on representation spaces.

For a free algebra ``A`` and ``d = dim V`` the reduction is free on the
entry symbols ``g_ij``.  A Fock basis triple ``[W, rho, m]`` paired with the
matrix unit ``E_{alpha, beta}`` evaluates to

    prod_{c in m} tr(c) * prod_k W_k[alpha_{rho(k)}, beta_k]

in the entry algebra.  Because F(A) is commutative the wheeled relations
only hold after abelianization, which is where they are checked.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .dpois import WheeledBracketEngine, slot
from .fock import (FockElem, fock_basis, fock_contract, fock_left, fock_mul,
                   fock_one, fock_right)
from .freealg import (AlgElem, FreeAlgebra, Word, _join_terms, _term_str,
                      add_term, format_rational)
from .report import Report
from .symgrp import all_perms, act_left, act_right


class EntryAlgebra:
    """The free algebra on entry symbols ``g_ij`` of a base algebra at ``dim V = d``."""

    def __init__(self, base: FreeAlgebra, d: int):
        if d < 1:
            raise ValueError("d must be positive")
        self.base = base
        self.d = d
        sep = "" if d < 10 else ","
        self.algebra = FreeAlgebra(f"{g}_{i}{sep}{j}" for g in base.names
                                   for i in range(1, d + 1) for j in range(1, d + 1))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EntryAlgebra) and other.base == self.base and other.d == self.d

    def __hash__(self) -> int:
        return hash((self.base, self.d))

    def symbol_index(self, g: int, i: int, j: int) -> int:
        if not (1 <= i <= self.d and 1 <= j <= self.d):
            raise ValueError("matrix index out of range")
        return (g * self.d + (i - 1)) * self.d + (j - 1)

    def symbol(self, name: str, i: int, j: int) -> AlgElem:
        return AlgElem(self.algebra, {(self.symbol_index(self.base.index(name), i, j),): 1})

    def symbols(self) -> list[int]:
        return list(range(self.algebra.ngens))


class MatElem:
    """A ``d x d`` matrix with entries in an entry algebra."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: EntryAlgebra, entries: Sequence[Sequence[AlgElem]]):
        self.ring = ring
        self.entries = [list(row) for row in entries]

    @classmethod
    def identity(cls, ring: EntryAlgebra) -> "MatElem":
        E = ring.algebra
        return cls(ring, [[E.one() if i == j else E.zero() for j in range(ring.d)]
                          for i in range(ring.d)])

    def __getitem__(self, ij: tuple[int, int]) -> AlgElem:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __add__(self, other: "MatElem") -> "MatElem":
        return MatElem(self.ring, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.entries, other.entries)])

    def __mul__(self, other) -> "MatElem":
        if isinstance(other, (int, Fraction)):
            return MatElem(self.ring, [[a * other for a in row] for row in self.entries])
        d = self.ring.d
        E = self.ring.algebra
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = E.zero()
                for t in range(d):
                    acc = acc + self.entries[i][t] * other.entries[t][j]
                row.append(acc)
            out.append(row)
        return MatElem(self.ring, out)

    def trace(self) -> AlgElem:
        acc = self.ring.algebra.zero()
        for i in range(self.ring.d):
            acc = acc + self.entries[i][i]
        return acc

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatElem) and other.ring == self.ring and other.entries == self.entries

    def __repr__(self) -> str:
        return "[" + "; ".join(", ".join(repr(a) for a in row) for row in self.entries) + "]"


def generic_matrix(ring: EntryAlgebra, g: int) -> MatElem:
    E = ring.algebra
    d = ring.d
    return MatElem(ring, [[AlgElem(E, {(ring.symbol_index(g, i, j),): 1}) for j in range(1, d + 1)]
                          for i in range(1, d + 1)])


@lru_cache(maxsize=None)
def _word_matrix(ring: EntryAlgebra, w: Word) -> MatElem:
    if not w:
        return MatElem.identity(ring)
    return _word_matrix(ring, w[:-1]) * generic_matrix(ring, w[-1])


def rep_matrix(a: AlgElem, d: int | EntryAlgebra) -> MatElem:
    """Image of ``a`` under ``generator -> generic matrix``."""
    ring = d if isinstance(d, EntryAlgebra) else EntryAlgebra(a.algebra, d)
    if ring.base != a.algebra:
        raise ValueError("element is not over the ring's base algebra")
    out = MatElem(ring, [[ring.algebra.zero()] * ring.d for _ in range(ring.d)])
    for w, c in a.terms.items():
        out = out + _word_matrix(ring, w) * c
    return out


def wheeled_eval(u: FockElem, alpha: Sequence[int], beta: Sequence[int], d: int | EntryAlgebra) -> AlgElem:
    """Image of ``u (x) E_{alpha, beta}`` in the entry algebra."""
    ring = d if isinstance(d, EntryAlgebra) else EntryAlgebra(u.ctx, d)
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != u.n or len(beta) != u.n:
        raise ValueError("index tuples must have the element's arity")
    if any(not 1 <= a <= ring.d for a in alpha + beta):
        raise ValueError("index out of range")
    E = ring.algebra
    acc = E.zero()
    for (slots, rho, m), c in u.terms.items():
        term = AlgElem(E, {(): c})
        for k, w in enumerate(slots, start=1):
            term = term * _word_matrix(ring, w)[alpha[rho(k) - 1], beta[k - 1]]
            if not term:
                break
        for neck in m:
            term = term * _word_matrix(ring, neck).trace()
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# Commutative polynomials

Mono = tuple[int, ...]


class PolyElem:
    """Commutative polynomial over named symbols; monomials are sorted index tuples."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Optional[Mapping[Mono, Fraction]] = None):
        self.names = tuple(names)
        self.terms: dict[Mono, Fraction] = {}
        for m, c in (terms or {}).items():
            add_term(self.terms, tuple(sorted(m)), Fraction(c))

    @classmethod
    def const(cls, names: Sequence[str], c) -> "PolyElem":
        return cls(names, {(): c})

    @classmethod
    def var(cls, names: Sequence[str], s: int) -> "PolyElem":
        return cls(names, {(s,): 1})

    def _raw(self, terms: dict) -> "PolyElem":
        out = object.__new__(PolyElem)
        out.names = self.names
        out.terms = terms
        return out

    def __add__(self, other: "PolyElem") -> "PolyElem":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            add_term(terms, m, c)
        return self._raw(terms)

    def __neg__(self) -> "PolyElem":
        return self._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "PolyElem") -> "PolyElem":
        return self + (-other)

    def __mul__(self, other) -> "PolyElem":
        if isinstance(other, (int, Fraction)):
            return self._raw({m: c * other for m, c in self.terms.items() if c * other})
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                add_term(terms, tuple(sorted(m1 + m2)), c1 * c2)
        return self._raw(terms)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyElem.const(self.names, other)
        return isinstance(other, PolyElem) and other.terms == self.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def derivative(self, s: int) -> "PolyElem":
        terms: dict = {}
        for m, c in self.terms.items():
            k = m.count(s)
            if k:
                i = m.index(s)
                add_term(terms, m[:i] + m[i + 1:], c * k)
        return self._raw(terms)

    def variables(self) -> set[int]:
        return {s for m in self.terms for s in m}

    def _mono_str(self, m: Mono) -> str:
        if not m:
            return "1"
        parts = []
        for s, grp in itertools.groupby(m):
            k = len(list(grp))
            parts.append(self.names[s] + (f"^{k}" if k > 1 else ""))
        return "*".join(parts)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return _join_terms([_term_str(c, self._mono_str(m)) for m, c in sorted(self.terms.items())])

    def to_json(self) -> list:
        return [[format_rational(c), [self.names[s] for s in m]] for m, c in sorted(self.terms.items())]


def abelianize(x: AlgElem) -> PolyElem:
    """Image in the commutative quotient: each word becomes its sorted monomial."""
    return PolyElem(x.algebra.names, x.terms)


# ---------------------------------------------------------------------------
# Wheeled relations


def _insert(t: tuple[int, ...], pos: int, val: int) -> tuple[int, ...]:
    return t[:pos - 1] + (val,) + t[pos - 1:]


def check_wheeled_relations(A: FreeAlgebra, d: int = 2, max_arity: int = 2, max_word_len: int = 2,
                            max_neck_len: int = 2, max_necklaces: int = 1) -> Report:
    """WA.1-WA.4 as evaluation identities in the abelianization, plus the generator census."""
    ring = EntryAlgebra(A, d)
    ab = lambda u, a, b: abelianize(wheeled_eval(u, a, b, ring))
    bounds = {"d": d, "max_arity": max_arity, "max_word_len": max_word_len,
              "max_neck_len": max_neck_len, "max_necklaces": max_necklaces}
    rep = Report("matred-relations", instance=repr(A), bounds=bounds)
    sub = {k: Report(k) for k in ("WA.1", "WA.2", "WA.3", "WA.4", "census")}
    bases = {n: list(fock_basis(A, n, max_word_len, max_neck_len, max_necklaces))
             for n in range(max_arity + 1)}
    idx = {n: list(itertools.product(range(1, d + 1), repeat=n)) for n in range(max_arity + 1)}

    r = sub["WA.1"]
    for n in range(max_arity + 1):
        for m in range(max_arity + 1 - n):
            for u in bases[n]:
                for v in bases[m]:
                    uv = fock_mul(u, v)
                    for a, b, a2, b2 in itertools.product(idx[n], idx[n], idx[m], idx[m]):
                        r.cases += 1
                        if ab(uv, a + a2, b + b2) != ab(u, a, b) * ab(v, a2, b2):
                            r.fail({"u": u.to_json(), "v": v.to_json(), "alpha": a + a2, "beta": b + b2})
                            break
                    if not r.passed:
                        break

    r = sub["WA.2"]
    r.cases += 1
    if ab(fock_one(A), (), ()) != 1:
        r.fail({"unit": ab(fock_one(A), (), ()).to_json()})

    r = sub["WA.3"]
    for n in range(max_arity + 1):
        perms = all_perms(n)
        for u in bases[n]:
            for s2, s in itertools.product(perms, perms):
                moved = fock_right(fock_left(s2, u), s)
                for a, b in itertools.product(idx[n], idx[n]):
                    r.cases += 1
                    if ab(moved, act_left(s2, a), act_right(b, s)) != ab(u, a, b):
                        r.fail({"u": u.to_json(), "sigma_left": s2.to_json(), "sigma_right": s.to_json(),
                                "alpha": a, "beta": b})
                        break
                if not r.passed:
                    break

    r = sub["WA.4"]
    for n in range(1, max_arity + 1):
        for u in bases[n]:
            for j in range(1, n + 1):
                for i in range(1, n + 1):
                    tu = fock_contract(n, i, j, u)
                    for a, b in itertools.product(idx[n - 1], idx[n - 1]):
                        r.cases += 1
                        rhs = PolyElem(ring.algebra.names)
                        for g in range(1, d + 1):
                            rhs = rhs + ab(u, _insert(a, j, g), _insert(b, i, g))
                        if ab(tu, a, b) != rhs:
                            r.fail({"u": u.to_json(), "j": j, "i": i, "alpha": a, "beta": b})
                            break

    r = sub["census"]
    seen = set()
    for g in A.names:
        u = slot(A, A.gen(g))
        for i, j in itertools.product(range(1, d + 1), repeat=2):
            r.cases += 1
            val = wheeled_eval(u, (i,), (j,), ring)
            if len(val.terms) != 1 or next(iter(val.terms.values())) != 1:
                r.fail({"generator": g, "i": i, "j": j})
            (w,) = val.terms
            if len(w) != 1:
                r.fail({"generator": g, "i": i, "j": j})
            seen.add(w)
    if len(seen) != A.ngens * d * d or len(seen) != ring.algebra.ngens:
        r.fail({"symbols": len(seen), "expected": A.ngens * d * d})
    r.details["symbols"] = len(seen)

    for k, s in sub.items():
        rep.merge(s)
        rep.details[k] = {"status": s.status, "cases": s.cases}
    rep.details["symbols"] = len(seen)
    return rep


# ---------------------------------------------------------------------------
# Kontsevich-Rosenberg bracket


def kr_bracket(a: AlgElem, b: AlgElem, ij: tuple[int, int], kl: tuple[int, int],
               engine: WheeledBracketEngine, d: int) -> PolyElem:
    """``{a_ij, b_kl}``: evaluate ``{a (x) 1, b (x) 1}`` at ``E_{(i,k),(j,l)}`` and abelianize."""
    A = engine.algebra
    ring = EntryAlgebra(A, d)
    (i, j), (k, l) = ij, kl
    u = engine.bracket(slot(A, a), slot(A, b))
    return abelianize(wheeled_eval(u, (i, k), (j, l), ring))


def kr_table(engine: WheeledBracketEngine, d: int) -> tuple[tuple[str, ...], dict[tuple[int, int], PolyElem]]:
    """Brackets of all pairs of entry symbols."""
    A = engine.algebra
    ring = EntryAlgebra(A, d)
    names = ring.algebra.names
    table: dict[tuple[int, int], PolyElem] = {}
    coords = [(g, i, j) for g in range(A.ngens) for i in range(1, d + 1) for j in range(1, d + 1)]
    for (g, i, j), (h, k, l) in itertools.product(coords, repeat=2):
        val = kr_bracket(A.gen(A.names[g]), A.gen(A.names[h]), (i, j), (k, l), engine, d)
        table[(ring.symbol_index(g, i, j), ring.symbol_index(h, k, l))] = val
    return names, table


class PolyBracket:
    """Biderivation on a polynomial ring defined by its values on symbol pairs."""

    def __init__(self, names: Sequence[str], table: Mapping[tuple[int, int], PolyElem]):
        self.names = tuple(names)
        self.table = dict(table)

    def gen(self, s: int, t: int) -> PolyElem:
        return self.table.get((s, t), PolyElem(self.names))

    def __call__(self, f: PolyElem, g: PolyElem) -> PolyElem:
        out = PolyElem(self.names)
        for s in f.variables():
            fs = f.derivative(s)
            for t in g.variables():
                val = self.gen(s, t)
                if val:
                    out = out + fs * g.derivative(t) * val
        return out


def jacobi_poly(names: Sequence[str], table: Mapping[tuple[int, int], PolyElem],
                samples: int = 20, seed: int = 0) -> Report:
    """Skew-symmetry on symbol pairs and Jacobi on all symbol triples and on
    seeded random triples of degree-2 monomials."""
    br = PolyBracket(names, table)
    n = len(names)
    rep = Report("kr-jacobi", instance=f"{n} symbols", bounds={"samples": samples, "seed": seed})
    var = lambda s: PolyElem.var(names, s)
    for s, t in itertools.product(range(n), repeat=2):
        rep.cases += 1
        if br.gen(s, t) != -br.gen(t, s):
            return rep.fail({"kind": "skew", "a": names[s], "b": names[t]})

    def jac(f, g, h):
        return br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))

    for s, t, u in itertools.product(range(n), repeat=3):
        rep.cases += 1
        val = jac(var(s), var(t), var(u))
        if val:
            return rep.fail({"kind": "jacobi", "a": names[s], "b": names[t], "c": names[u],
                             "value": val.to_json()})
    rng = random.Random(seed)
    for _ in range(samples):
        polys = [var(rng.randrange(n)) * var(rng.randrange(n)) for _ in range(3)]
        rep.cases += 1
        val = jac(*polys)
        if val:
            return rep.fail({"kind": "jacobi-quadratic", "args": [p.to_json() for p in polys],
                             "value": val.to_json()})
    return rep


def gl_reference(A: FreeAlgebra, d: int, g: str = "x") -> dict[tuple[int, int], PolyElem]:
    """``{g_ij, g_kl} = delta_il g_kj - delta_kj g_il``, the regression value."""
    ring = EntryAlgebra(A, d)
    names = ring.algebra.names
    gi = A.index(g)
    table: dict = {}
    for i, j, k, l in itertools.product(range(1, d + 1), repeat=4):
        val = PolyElem(names)
        if i == l:
            val = val + PolyElem.var(names, ring.symbol_index(gi, k, j))
        if k == j:
            val = val - PolyElem.var(names, ring.symbol_index(gi, i, l))
        table[(ring.symbol_index(gi, i, j), ring.symbol_index(gi, k, l))] = val
    return table


def check_kr_leibniz(engine: WheeledBracketEngine, d: int, pairs: Iterable[tuple[AlgElem, AlgElem]]) -> Report:
    """Compare ``{a_ij, b_kl}`` from the wheeled bracket with the biderivation
    extension of the generator table applied to the entries of ``rep(a)`` and ``rep(b)``."""
    A = engine.algebra
    ring = EntryAlgebra(A, d)
    names, table = kr_table(engine, d)
    br = PolyBracket(names, table)
    rep = Report("kr-leibniz", instance=repr(A), bounds={"d": d})
    for a, b in pairs:
        ma, mb = rep_matrix(a, ring), rep_matrix(b, ring)
        for i, j, k, l in itertools.product(range(1, d + 1), repeat=4):
            rep.cases += 1
            lhs = kr_bracket(a, b, (i, j), (k, l), engine, d)
            rhs = br(abelianize(ma[i, j]), abelianize(mb[k, l]))
            if lhs != rhs:
                return rep.fail({"a": a.to_json(), "b": b.to_json(), "ij": [i, j], "kl": [k, l],
                                 "wheeled": lhs.to_json(), "biderivation": rhs.to_json()})
    return rep
