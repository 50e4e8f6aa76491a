"""Double brackets, the induced wheeled Poisson bracket and the big bracket.

A double bracket is stored as its values on generator pairs.  Evaluation on
words uses a single engine ``P`` that is a graded double derivation in its
second argument and reaches the first argument through graded skew-symmetry.
A *mirror* spec evaluates ``<<a, b>> = P(b, a)`` with the transposed table,
which makes it a derivation in the first argument instead; the big bracket
uses this form so that ``<<alpha, Theta>> = i_Theta(alpha)``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .fock import (FockElem, Key, embed_algebra, fock_contract, fock_left,
                   fock_mul, fock_partial_contract, fock_right, fock_basis)
from .freealg import (AlgElem, CycElem, FreeAlgebra, Word, add_term, exact,
                      canonical_necklace, cyc_project, format_rational,
                      parse_rational, sort_monomial)
from .ncgeo import (D_PREFIX, DoubleDerivation, TensorElem, circ, d_dr,
                    dr_project, form_algebra, i_theta, reduced_contraction,
                    tensor_from_json)
from .report import Report
from .symgrp import Permutation, act_right, block_perm, identity, ordered_sum

Triple = dict[tuple[Word, Word, Word], Fraction]


class SkewError(ValueError):
    """The generator table violates skew-symmetry."""


class DoubleBracketSpec:
    """Values of a double bracket on generator pairs.

    ``parity`` assigns a Koszul degree (0 or 1) to each generator; missing
    generators are even.  With ``skew_complete`` a pair given in only one
    order is completed by skew-symmetry; a stored pair inconsistent with
    skew-symmetry is rejected.
    """

    def __init__(self, algebra: FreeAlgebra, entries: Mapping[tuple[str, str], TensorElem],
                 parity: Optional[Mapping[str, int]] = None, mirror: bool = False,
                 skew_complete: bool = True):
        self.algebra = algebra
        self.mirror = mirror
        par = dict(parity or {})
        unknown = set(par) - set(algebra.names)
        if unknown:
            raise ValueError(f"parity given for unknown generators {sorted(unknown)}")
        self.parity: tuple[int, ...] = tuple(int(par.get(n, 0)) % 2 for n in algebra.names)
        table: dict[tuple[int, int], TensorElem] = {}
        for (g, h), val in entries.items():
            if val.algebra != algebra:
                raise ValueError("table value lies outside A (x) A")
            table[(algebra.index(g), algebra.index(h))] = val
        for (g, h), val in list(table.items()):
            expected = self._skew(val, g, h)
            if (h, g) in table:
                if table[(h, g)] != expected:
                    raise SkewError(f"table violates skew-symmetry at "
                                    f"({algebra.names[g]}, {algebra.names[h]})")
            elif skew_complete:
                table[(h, g)] = expected
        self.table = table
        # engine table: transposed for mirror specs
        self._p_table = {((h, g) if mirror else (g, h)): v for (g, h), v in table.items()}
        self._cache: dict = {}

    # -- graded bookkeeping -------------------------------------------------
    def word_parity(self, w: Word) -> int:
        return sum(self.parity[g] for g in w) % 2

    def _tau(self, t: TensorElem) -> TensorElem:
        """Graded flip ``u (x) v -> (-1)^{|u||v|} v (x) u``."""
        terms: dict = {}
        for (u, v), c in t.terms.items():
            s = -1 if self.word_parity(u) * self.word_parity(v) else 1
            add_term(terms, (v, u), s * c)
        return TensorElem(t.algebra, terms)

    def _skew(self, val: TensorElem, g: int, h: int) -> TensorElem:
        """``<<h, g>>`` from ``<<g, h>>``: ``-(-1)^{|g||h|} tau(<<g, h>>)``."""
        s = -1 if self.parity[g] * self.parity[h] else 1
        return self._tau(val) * (-s)

    # -- engine -------------------------------------------------------------
    def _gen(self, g: int, h: int) -> dict:
        val = self._p_table.get((g, h))
        return val.terms if val is not None else {}

    def _p_word(self, a: Word, b: Word) -> dict:
        """``P(a, b)`` on words, as a dict of word pairs."""
        key = (a, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        if a and b:
            pa = self.word_parity(a)
            prefix_par = 0
            for q, h in enumerate(b):
                s = -1 if pa * prefix_par else 1
                left, right = b[:q], b[q + 1:]
                for (u, v), c in self._p_letter(a, h).items():
                    add_term(out, (left + u, v + right), s * c)
                prefix_par ^= self.parity[h]
        self._cache[key] = out
        return out

    def _p_letter(self, a: Word, h: int) -> dict:
        if len(a) == 1:
            return self._gen(a[0], h)
        # graded skew: P(a, h) = -(-1)^{|a||h|} tau P(h, a)
        s = -1 if self.word_parity(a) * self.parity[h] else 1
        out: dict = {}
        for (u, v), c in self._p_word((h,), a).items():
            t = -1 if self.word_parity(u) * self.word_parity(v) else 1
            add_term(out, (v, u), -s * t * c)
        return out

    def bracket_words(self, a: Word, b: Word) -> dict:
        return self._p_word(b, a) if self.mirror else self._p_word(a, b)

    def __call__(self, a: AlgElem, b: AlgElem) -> TensorElem:
        return dbracket(self, a, b)

    # -- serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        names = self.algebra.names
        entries = [{"lhs": names[g], "rhs": names[h], "value": v.to_json()}
                   for (g, h), v in sorted(self.table.items())]
        out: dict = {"entries": entries}
        if any(self.parity):
            out["parity"] = {n: p for n, p in zip(names, self.parity) if p}
        if self.mirror:
            out["mirror"] = True
        return out

    @classmethod
    def from_json(cls, algebra: FreeAlgebra, data: Mapping) -> "DoubleBracketSpec":
        entries = {(e["lhs"], e["rhs"]): tensor_from_json(algebra, e["value"])
                   for e in data.get("entries", [])}
        return cls(algebra, entries, parity=data.get("parity"), mirror=bool(data.get("mirror", False)))


def tensor(algebra: FreeAlgebra, *terms: tuple) -> TensorElem:
    """``tensor(A, (1, "x", ""), (-1, "", "x"))`` builds ``x (x) 1 - 1 (x) x``."""
    out: dict = {}
    for coef, u, v in terms:
        wu = algebra.word(list(u)) if isinstance(u, str) and u not in algebra.names else algebra.word(u)
        wv = algebra.word(list(v)) if isinstance(v, str) and v not in algebra.names else algebra.word(v)
        add_term(out, (wu, wv), exact(coef))
    return TensorElem(algebra, out)


def dbracket(spec: DoubleBracketSpec, a: AlgElem, b: AlgElem) -> TensorElem:
    """``<<a, b>>`` extended bilinearly from the generator table."""
    if a.algebra != spec.algebra or b.algebra != spec.algebra:
        raise ValueError("arguments are not in the bracket's algebra")
    terms: dict = {}
    for u, c1 in a.terms.items():
        for v, c2 in b.terms.items():
            for k, c in spec.bracket_words(u, v).items():
                add_term(terms, k, c1 * c2 * c)
    return TensorElem(spec.algebra, terms)


def assoc_bracket(spec: DoubleBracketSpec, a: AlgElem, b: AlgElem) -> AlgElem:
    """``{a, b} = mult <<a, b>>``."""
    return dbracket(spec, a, b).mult()


def cyc_bracket_left(spec: DoubleBracketSpec, c: CycElem | AlgElem, b: AlgElem) -> AlgElem:
    """``{pi(a), b}``, computed on necklace representatives."""
    return assoc_bracket(spec, AlgElem(spec.algebra, c.terms), b)


def cyc_bracket(spec: DoubleBracketSpec, c1: CycElem | AlgElem, c2: CycElem | AlgElem) -> CycElem:
    """``{pi(a), pi(b)} = pi({a, b})``."""
    return cyc_project(assoc_bracket(spec, AlgElem(spec.algebra, c1.terms), AlgElem(spec.algebra, c2.terms)))


# ---------------------------------------------------------------------------
# Double Jacobi


def _bracket_left(spec: DoubleBracketSpec, a: Word, t: Triple | dict) -> Triple:
    """``<<a, x (x) y>>_L = <<a, x>> (x) y`` (with the Koszul sign of ``a`` past nothing)."""
    out: Triple = {}
    for (x, y), c in t.items():
        for (u, v), k in spec.bracket_words(a, x).items():
            add_term(out, (u, v, y), c * k)
    return out


def _cyclic(spec: DoubleBracketSpec, t: Triple, times: int) -> Triple:
    """Apply ``tau_(123)``: ``x (x) y (x) z -> z (x) x (x) y`` with Koszul signs."""
    out: Triple = {}
    for (x, y, z), c in t.items():
        for _ in range(times):
            s = -1 if spec.word_parity(z) * (spec.word_parity(x) + spec.word_parity(y)) % 2 else 1
            x, y, z, c = z, x, y, c * s
        add_term(out, (x, y, z), c)
    return out


def double_jacobiator(spec: DoubleBracketSpec, a: AlgElem, b: AlgElem, c: AlgElem) -> Triple:
    """``<<a,<<b,c>>>>_L + tau <<b,<<c,a>>>>_L + tau^2 <<c,<<a,b>>>>_L`` as a dict of word triples."""
    out: Triple = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            for wc, cc in c.terms.items():
                coef = ca * cb * cc
                pa, pb, pc = (spec.word_parity(w) for w in (wa, wb, wc))
                parts = [
                    (0, 1, _bracket_left(spec, wa, spec.bracket_words(wb, wc))),
                    (1, -1 if pa * (pb + pc) % 2 else 1, _bracket_left(spec, wb, spec.bracket_words(wc, wa))),
                    (2, -1 if pc * (pa + pb) % 2 else 1, _bracket_left(spec, wc, spec.bracket_words(wa, wb))),
                ]
                for times, sign, t in parts:
                    for k, v in _cyclic(spec, t, times).items():
                        add_term(out, k, coef * sign * v)
    return out


def format_triple(algebra: FreeAlgebra, t: Triple) -> list:
    names = algebra.names
    return [[format_rational(c)] + [[names[g] for g in w] for w in k]
            for k, c in sorted(t.items())]


def check_double_jacobi(spec: DoubleBracketSpec, max_len: int = 3, min_len: int = 1) -> Report:
    """Double Jacobiator on all word triples with lengths in ``[min_len, max_len]``."""
    A = spec.algebra
    rep = Report("double-jacobi", instance=repr(A), bounds={"max_word_len": max_len})
    words = list(A.words(max_len, min_len))
    for wa, wb, wc in itertools.product(words, repeat=3):
        rep.cases += 1
        jac = double_jacobiator(spec, AlgElem(A, {wa: 1}), AlgElem(A, {wb: 1}), AlgElem(A, {wc: 1}))
        if jac:
            rep.fail({"a": [A.names[g] for g in wa], "b": [A.names[g] for g in wb],
                      "c": [A.names[g] for g in wc], "jacobiator": format_triple(A, jac)})
            break
    return rep


# ---------------------------------------------------------------------------
# Wheeled bracket on F(A)

Gen = tuple[int, Word]  # (1, word) slot generator; (0, necklace) arity-0 generator

_SWAP = Permutation([2, 1])
_SWAP3 = Permutation([2, 1, 3])


# Memo tables are cleared when full; exhaustive arity-6 runs otherwise exhaust memory.
_MEMO_LIMIT = 200_000


class WheeledBracketEngine:
    """The Poisson bracket on F(A) induced by a double bracket.

    Basis triples are written as ``rho . mu(generators)``; the bracket of two
    generator products is expanded by the Leibniz rule in the second argument
    and by skew-symmetry in the first, down to the three generator cases.
    """

    def __init__(self, spec: DoubleBracketSpec):
        self.spec = spec
        self.algebra = spec.algebra
        self._memo: dict = {}
        self._pair_memo: dict = {}

    # -- generator level ----------------------------------------------------
    @staticmethod
    def _gens(key: Key) -> tuple[Gen, ...]:
        slots, _, m = key
        return tuple((1, w) for w in slots) + tuple((0, c) for c in m)

    def _prod(self, gens: Sequence[Gen]) -> FockElem:
        slots = tuple(w for a, w in gens if a)
        m = sort_monomial(w for a, w in gens if not a)
        n = len(slots)
        return FockElem(self.algebra, n, {(slots, identity(n), m): 1})

    def _base(self, g: Gen, h: Gen) -> FockElem:
        A = self.algebra
        (ag, wg), (ah, wh) = g, h
        val = self.spec.bracket_words(wg, wh)
        terms: dict = {}
        if ag and ah:
            for (u, v), c in val.items():
                add_term(terms, ((u, v), _SWAP, ()), c)
            return FockElem(A, 2, terms)
        if ah or ag:
            # necklace-slot, and slot-necklace by skew-symmetry
            sign = 1 if ah else -1
            if ag:
                val = self.spec.bracket_words(wh, wg)
            for (u, v), c in val.items():
                add_term(terms, ((u + v,), identity(1), ()), sign * c)
            return FockElem(A, 1, terms)
        for (u, v), c in val.items():
            add_term(terms, ((), identity(0), (canonical_necklace(u + v),)), c)
        return FockElem(A, 0, terms)

    def _gen_bracket(self, G: tuple[Gen, ...], H: tuple[Gen, ...]) -> FockElem:
        key = (G, H)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        p = sum(a for a, _ in G)
        q = sum(a for a, _ in H)
        if not G or not H:
            out = FockElem(self.algebra, p + q, {})
        elif len(H) >= 2:
            v, w = H[:1], H[1:]
            n, m = v[0][0], q - v[0][0]
            first = fock_mul(self._gen_bracket(G, v), self._prod(w))
            second = fock_mul(self._prod(v), self._gen_bracket(G, w))
            second = fock_right(fock_left(block_perm([n, p, m], _SWAP3), second),
                                block_perm([p, n, m], _SWAP3))
            out = first + second
        elif len(G) >= 2:
            flipped = self._gen_bracket(H, G)
            out = -fock_right(fock_left(block_perm([q, p], _SWAP), flipped), block_perm([p, q], _SWAP))
        else:
            out = self._base(G[0], H[0])
        if len(self._memo) >= _MEMO_LIMIT:
            self._memo.clear()
        self._memo[key] = out
        return out

    # -- public -------------------------------------------------------------
    def bracket(self, u: FockElem, v: FockElem) -> FockElem:
        if u.ctx != self.algebra or v.ctx != self.algebra:
            raise ValueError("elements are not over the engine's algebra")
        terms: dict = {}
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                pair = self._pair(k1, k2)
                if not pair:
                    continue
                c12 = c1 * c2
                for key, c in pair.items():
                    add_term(terms, key, c if c12 == 1 else c12 * c)
        out = object.__new__(FockElem)
        out.ctx, out.n, out.terms = self.algebra, u.n + v.n, terms
        return out

    def _pair(self, k1: Key, k2: Key) -> dict:
        """Bracket of two basis triples, dressed by the ordered sum of their permutations."""
        hit = self._pair_memo.get((k1, k2))
        if hit is None:
            inner = self._gen_bracket(self._gens(k1), self._gens(k2))
            rho = ordered_sum([k1[1], k2[1]])
            hit = {(w, rho * r, m): c for (w, r, m), c in inner.terms.items()}
            if len(self._pair_memo) >= _MEMO_LIMIT:
                self._pair_memo.clear()
            self._pair_memo[(k1, k2)] = hit
        return hit

    __call__ = bracket


def wheeled_bracket(engine: WheeledBracketEngine, u: FockElem, v: FockElem) -> FockElem:
    return engine.bracket(u, v)


def slot(A: FreeAlgebra, a: AlgElem) -> FockElem:
    """``a (x) 1`` in arity 1."""
    return embed_algebra(a)


def necklace(A: FreeAlgebra, a: AlgElem) -> FockElem:
    """``pi(a)`` in arity 0."""
    terms: dict = {}
    for w, c in a.terms.items():
        add_term(terms, ((), identity(0), (canonical_necklace(w),)), c)
    return FockElem(A, 0, terms)


# ---------------------------------------------------------------------------
# Poisson axiom suites

_C123 = Permutation.from_cycles(3, (1, 2, 3))
_C132 = Permutation.from_cycles(3, (1, 3, 2))


def _bases(A: FreeAlgebra, max_arity: int, max_word_len: int, max_neck_len: int,
           max_necklaces: int) -> dict[int, list[FockElem]]:
    return {n: list(fock_basis(A, n, max_word_len, max_neck_len, max_necklaces))
            for n in range(max_arity + 1)}


def _arities(k: int, max_arity: int, max_total: int):
    for t in itertools.product(range(max_arity + 1), repeat=k):
        if sum(t) <= max_total:
            yield t


def check_poisson_axioms(engine: WheeledBracketEngine, max_arity: int = 1, max_total: int = 3,
                         max_word_len: int = 2, max_neck_len: int = 2, max_necklaces: int = 1,
                         checks: Iterable[str] = ("se-1", "se-2", "se-3")) -> Report:
    """Skew-symmetry, Leibniz and Jacobi with their block-permutation dressings.

    Arguments range over basis triples of arity at most ``max_arity`` each,
    with total arity at most ``max_total``.
    """
    A = engine.algebra
    br = engine.bracket
    checks = tuple(checks)
    bounds = {"max_arity": max_arity, "max_total": max_total, "max_word_len": max_word_len,
              "max_neck_len": max_neck_len, "max_necklaces": max_necklaces}
    rep = Report("wheeled-poisson-axioms", instance=repr(A), bounds=bounds)
    bases = _bases(A, max_arity, max_word_len, max_neck_len, max_necklaces)
    sub = {c: Report(c) for c in checks}

    if "se-1" in sub:
        r = sub["se-1"]
        for n, m in _arities(2, max_arity, max_total):
            lb, rb = block_perm([m, n], _SWAP), block_perm([n, m], _SWAP)
            for v in bases[n]:
                for w in bases[m]:
                    r.cases += 1
                    lhs = br(v, w)
                    rhs = -fock_right(fock_left(lb, br(w, v)), rb)
                    if lhs != rhs:
                        r.fail({"v": v.to_json(), "w": w.to_json(),
                                "lhs": lhs.to_json(), "rhs": rhs.to_json()})
                        break
                if not r.passed:
                    break

    if "se-2" in sub:
        r = sub["se-2"]
        for p, n, m in _arities(3, max_arity, max_total):
            lb, rb = block_perm([n, p, m], _SWAP3), block_perm([p, n, m], _SWAP3)
            for u in bases[p]:
                for v in bases[n]:
                    for w in bases[m]:
                        r.cases += 1
                        lhs = br(u, fock_mul(v, w))
                        rhs = fock_mul(br(u, v), w) + fock_right(
                            fock_left(lb, fock_mul(v, br(u, w))), rb)
                        if lhs != rhs:
                            r.fail({"u": u.to_json(), "v": v.to_json(), "w": w.to_json(),
                                    "lhs": lhs.to_json(), "rhs": rhs.to_json()})
                            break
                    if not r.passed:
                        break
                if not r.passed:
                    break

    if "se-3" in sub:
        _check_jacobi_orbits(sub["se-3"], br, bases, max_arity, max_total)

    for name, s in sub.items():
        rep.merge(s)
        rep.details[name] = {"status": s.status, "cases": s.cases}
    return rep



def _jacobiator(triple, nested) -> FockElem:
    """``{a,{b,c}}`` plus its two cyclic images, dressed back to slot order ``(a, b, c)``."""
    a, b, c = triple
    pa, pb, pc = a.n, b.n, c.n
    first, second, third = nested
    terms = dict(first.terms)
    for elem, left, right in (
            (second, block_perm([pb, pc, pa], _C123), block_perm([pa, pb, pc], _C132)),
            (third, block_perm([pc, pa, pb], _C132), block_perm([pa, pb, pc], _C123))):
        for (w, rho, m), k in elem.terms.items():
            add_term(terms, (act_right(w, right), left * rho * right, m), k)
    return first._new(terms)


def _check_jacobi_orbits(r: Report, br, bases, max_arity: int, max_total: int) -> None:
    """Jacobi on every ordered triple, grouped by cyclic rotation.

    The three nested brackets of a rotation orbit are shared by its members,
    so each is computed once; every distinct ordered triple is still checked.
    """
    for p, n, m in _arities(3, max_arity, max_total):
        for iu, u in enumerate(bases[p]):
            tu = (p, iu)
            for iv, v in enumerate(bases[n]):
                tv = (n, iv)
                for iw, w in enumerate(bases[m]):
                    tw = (m, iw)
                    if (tv, tw, tu) < (tu, tv, tw) or (tw, tu, tv) < (tu, tv, tw):
                        continue
                    nested = (br(u, br(v, w)), br(v, br(w, u)), br(w, br(u, v)))
                    seen = set()
                    for k, triple in enumerate(((u, v, w), (v, w, u), (w, u, v))):
                        ids = ((tu, tv, tw), (tv, tw, tu), (tw, tu, tv))[k]
                        if ids in seen:
                            continue
                        seen.add(ids)
                        r.cases += 1
                        rot = nested[k:] + nested[:k]
                        value = _jacobiator(triple, rot)
                        if not value.is_zero():
                            r.fail({"u": triple[0].to_json(), "v": triple[1].to_json(),
                                    "w": triple[2].to_json(), "lhs": value.to_json(),
                                    "rhs": FockElem(value.ctx, value.n, {}).to_json()})
                            return


def check_shift_compat(engine: WheeledBracketEngine, max_arity: int = 3, max_word_len: int = 2,
                       max_neck_len: int = 2, max_necklaces: int = 1,
                       all_contractions: bool = True) -> Report:
    """Brackets with ``pi(a)`` and with ``a (x) 1`` commute with contractions.

    Checks ``t_{j,i}({pi(a), u}) = {pi(a), t_{j,i} u}`` and
    ``t_{j+1,i+1}({a, u}_{1,n}) = {a, t_{j,i} u}_{1,n-1}`` for words ``a``
    and basis elements ``u``; without ``all_contractions`` only ``i = j = n``.
    """
    A = engine.algebra
    br = engine.bracket
    bounds = {"max_arity": max_arity, "max_word_len": max_word_len,
              "max_neck_len": max_neck_len, "max_necklaces": max_necklaces}
    rep = Report("shift-compat", instance=repr(A), bounds=bounds)
    probes = []
    for w in A.words(max_word_len):
        a = AlgElem(A, {w: 1})
        probes.append(("cyc", w, necklace(A, a)))
        probes.append(("slot", w, slot(A, a)))
    for n in range(1, max_arity + 1):
        pairs = ([(j, i) for j in range(1, n + 1) for i in range(1, n + 1)]
                 if all_contractions else [(n, n)])
        for u in fock_basis(A, n, max_word_len, max_neck_len, max_necklaces):
            for kind, w, x in probes:
                xu = br(x, u)
                s = x.n
                for j, i in pairs:
                    rep.cases += 1
                    lhs = fock_contract(n + s, i + s, j + s, xu)
                    rhs = br(x, fock_contract(n, i, j, u))
                    if lhs != rhs:
                        return rep.fail({"kind": kind, "a": [A.names[g] for g in w],
                                         "u": u.to_json(), "j": j, "i": i,
                                         "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return rep


# ---------------------------------------------------------------------------
# Big bracket

DER_PREFIX = "D:"


def big_bracket_algebra(B: FreeAlgebra) -> FreeAlgebra:
    """``T_B E`` on letters ``x`` (weight 0), ``d:x`` and ``D:x`` (weight 1)."""
    gens = ([(n, 0) for n in B.names] + [(D_PREFIX + n, 1) for n in B.names]
            + [(DER_PREFIX + n, 1) for n in B.names])
    return FreeAlgebra(gens)


def big_bracket_spec(B: FreeAlgebra) -> DoubleBracketSpec:
    """``<<d:x_i, D:x_j>> = <<D:x_j, d:x_i>> = delta_ij 1 (x) 1``, all else 0."""
    T = big_bracket_algebra(B)
    one = TensorElem(T, {((), ()): 1})
    entries = {}
    for n in B.names:
        entries[(D_PREFIX + n, DER_PREFIX + n)] = one
        entries[(DER_PREFIX + n, D_PREFIX + n)] = one
    parity = {D_PREFIX + n: 1 for n in B.names} | {DER_PREFIX + n: 1 for n in B.names}
    return DoubleBracketSpec(T, entries, parity=parity, mirror=True)


def big_bracket_engine(B: FreeAlgebra) -> WheeledBracketEngine:
    return WheeledBracketEngine(big_bracket_spec(B))


def form_to_big(T: FreeAlgebra, f: AlgElem) -> AlgElem:
    """Re-index a form on ``B`` as an element of ``T_B E``."""
    F = f.algebra
    idx = [T.index(name) for name in F.names]
    return AlgElem(T, {tuple(idx[g] for g in w): c for w, c in f.terms.items()})


def derivation_letter(T: FreeAlgebra, name: str) -> AlgElem:
    return T.gen(DER_PREFIX + name)


def check_big_bracket(B: FreeAlgebra, max_word_len: int = 2) -> Report:
    """Generator table, agreement with ``i_Theta`` on forms, and weight ``-2``."""
    spec = big_bracket_spec(B)
    T = spec.algebra
    F = form_algebra(B)
    rep = Report("big-bracket", instance=repr(B), bounds={"max_word_len": max_word_len})
    sub = {k: Report(k) for k in ("generator-table", "contraction", "weight")}

    one = {((), ()): Fraction(1)}
    r = sub["generator-table"]
    for g in T.names:
        for h in T.names:
            r.cases += 1
            got = spec.bracket_words(T.word(g), T.word(h))
            gk, hk = _kind(g), _kind(h)
            expected = one if {gk, hk} == {"form", "der"} and g[2:] == h[2:] else {}
            if got != expected:
                r.fail({"lhs": g, "rhs": h, "got": TensorElem(T, got).to_json()})

    r = sub["contraction"]
    for w in F.words(max_word_len + 1):
        alpha = AlgElem(F, {w: 1})
        if not F.word_weight(w):
            continue
        for name in B.names:
            r.cases += 1
            theta = DoubleDerivation.coordinate(B, name)
            expected = i_theta(alpha, theta)
            exp_T = TensorElem(T, {(tuple(T.index(F.names[g]) for g in u),
                                    tuple(T.index(F.names[g]) for g in v)): c
                                   for (u, v), c in expected.terms.items()})
            got = dbracket(spec, form_to_big(T, alpha), derivation_letter(T, name))
            if got != exp_T:
                r.fail({"alpha": [F.names[g] for g in w], "theta": name,
                        "bracket": got.to_json(), "contraction": exp_T.to_json()})

    r = sub["weight"]
    words = list(T.words(max_word_len, 1))
    for u in words:
        for v in words:
            r.cases += 1
            target = T.word_weight(u) + T.word_weight(v) - 2
            for (x, y), _ in spec.bracket_words(u, v).items():
                if T.word_weight(x) + T.word_weight(y) != target:
                    r.fail({"a": [T.names[g] for g in u], "b": [T.names[g] for g in v]})
                    break
    for k, s in sub.items():
        rep.merge(s)
        rep.details[k] = {"status": s.status, "cases": s.cases}
    return rep


def _kind(name: str) -> str:
    if name.startswith(D_PREFIX):
        return "form"
    if name.startswith(DER_PREFIX):
        return "der"
    return "base"


def symplectic_pairing_check(B: FreeAlgebra, omega_hat: AlgElem) -> Report:
    """``{varpi, Theta (x) 1}_{0,1} = iota(omega)(Theta)`` in arity 1 for coordinate ``Theta``.

    ``varpi`` is the partial contraction of ``omega_hat (x) 1``.  The chain
    ``{varpi, X} = t_{1,1}({omega_hat (x) 1, X}_{1,1})`` is evaluated too.
    """
    F = omega_hat.algebra
    if F != form_algebra(B):
        raise ValueError("omega_hat must be a form on B")
    engine = big_bracket_engine(B)
    T = engine.algebra
    rep = Report("symplectic-pairing", instance=repr(B),
                 bounds={"omega": [[format_rational(c), [F.names[g] for g in w]]
                                   for w, c in sorted(omega_hat.terms.items())]})
    omega = dr_project(omega_hat)
    closed = d_dr(omega).is_zero()
    rep.details["closed"] = closed
    if not closed:
        rep.details["warning"] = "omega is not closed in DR"
    hat = embed_algebra(form_to_big(T, omega_hat))
    varpi = fock_partial_contract(hat)
    for name in B.names:
        rep.cases += 1
        theta = DoubleDerivation.coordinate(B, name)
        X = slot(T, derivation_letter(T, name))
        lhs = engine.bracket(varpi, X)
        chain = fock_contract(2, 1, 1, engine.bracket(hat, X))
        rhs = embed_algebra(form_to_big(T, reduced_contraction(omega_hat, theta)))
        rep.details[name] = {"bracket": lhs.to_json(), "contracted": chain.to_json(),
                             "iota": rhs.to_json()}
        if not (lhs == rhs == chain):
            rep.fail({"theta": name, "bracket": lhs.to_json(), "contracted": chain.to_json(),
                      "iota": rhs.to_json()})
    return rep
