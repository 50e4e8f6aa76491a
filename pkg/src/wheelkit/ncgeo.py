"""Noncommutative differential forms on a free algebra.

Forms on ``B = k<x_1..x_r>`` are elements of the free algebra on the doubled
alphabet ``x_1..x_r, d:x_1..d:x_r``; the weight of a letter in that algebra
is its form degree.  The base letters keep their indices, so a word of ``B``
is literally a degree-0 word of the form algebra.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .freealg import AlgElem, FreeAlgebra, Word, _join_terms, _term_str, add_term, exact

D_PREFIX = "d:"


@lru_cache(maxsize=None)
def form_algebra(base: FreeAlgebra) -> FreeAlgebra:
    """The free algebra ``Omega(B)`` with degree-0 letters ``x`` and degree-1 letters ``d:x``."""
    if any(n.startswith(D_PREFIX) for n in base.names):
        raise ValueError("base generator names may not start with 'd:'")
    gens = [(n, 0) for n in base.names] + [(D_PREFIX + n, 1) for n in base.names]
    return FreeAlgebra(gens)


def _rank(F: FreeAlgebra) -> int:
    r = F.ngens // 2
    if F.ngens != 2 * r or any(F.weights[i] != 0 or F.weights[r + i] != 1 for i in range(r)):
        raise ValueError("not a form algebra")
    return r


def base_of(F: FreeAlgebra) -> FreeAlgebra:
    return FreeAlgebra(F.names[:_rank(F)])


def degree(F: FreeAlgebra, w: Word) -> int:
    return F.word_weight(w)


def form(F: FreeAlgebra, names) -> AlgElem:
    """Form from letter names, e.g. ``form(F, ["d:x", "d:theta"])``."""
    return F.monomial(names)


def d(f: AlgElem) -> AlgElem:
    """The differential: ``x -> d:x``, ``d:x -> 0``, graded Leibniz."""
    F = f.algebra
    r = _rank(F)
    terms: dict = {}
    for w, c in f.terms.items():
        deg = 0
        for p, g in enumerate(w):
            if g < r:
                sign = -1 if deg % 2 else 1
                add_term(terms, w[:p] + (g + r,) + w[p + 1:], sign * c)
            else:
                deg += 1
    return AlgElem(F, terms)


def homogeneous_degree(f: AlgElem) -> Optional[int]:
    degs = f.weights()
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("form is not homogeneous")
    return degs.pop()


# ---------------------------------------------------------------------------
# Karoubi-de Rham classes


def graded_necklace(F: FreeAlgebra, w: Word) -> tuple[Word, int]:
    """Canonical rotation of ``w`` and its Koszul sign; sign 0 marks a zero class."""
    n = len(w)
    if n <= 1:
        return tuple(w), 1
    degs = [F.weights[g] for g in w]
    total = sum(degs)
    best: Optional[Word] = None
    best_sign = 1
    signs: dict[Word, set[int]] = {}
    head = 0
    for k in range(n):
        rot = tuple(w[k:] + w[:k])
        # moving the prefix w[:k] past the suffix
        sign = -1 if (head * (total - head)) % 2 else 1
        signs.setdefault(rot, set()).add(sign)
        if best is None or rot < best:
            best, best_sign = rot, sign
        head += degs[k]
    if len(signs[best]) > 1:
        return best, 0
    return best, best_sign


class DRElem:
    """Element of ``DR(B)``: rational combination of canonical graded necklaces."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Optional[Mapping[Word, Fraction]] = None):
        self.algebra = algebra
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            key, s = graded_necklace(algebra, tuple(w))
            if s:
                add_term(self.terms, key, Fraction(c) * s)

    def __add__(self, other: "DRElem") -> "DRElem":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            add_term(terms, w, c)
        return DRElem(self.algebra, terms)

    def __neg__(self) -> "DRElem":
        return DRElem(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "DRElem") -> "DRElem":
        return self + (-other)

    def __mul__(self, k) -> "DRElem":
        return DRElem(self.algebra, {w: c * k for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, DRElem) and other.algebra == self.algebra
                and other.terms == self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def representative(self) -> AlgElem:
        return AlgElem(self.algebra, self.terms)

    def degree(self) -> Optional[int]:
        return homogeneous_degree(self.representative())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        F = self.algebra
        parts = [_term_str(c, "[" + " ".join(F.names[g] for g in w) + "]")
                 for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))]
        return _join_terms(parts)


def dr_project(f: AlgElem) -> DRElem:
    return DRElem(f.algebra, f.terms)


def d_dr(c: DRElem) -> DRElem:
    return dr_project(d(c.representative()))


# ---------------------------------------------------------------------------
# Tensors and double derivations


class TensorElem:
    """Element of ``R (x) R`` for a free algebra ``R``: combination of word pairs."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Optional[Mapping[tuple[Word, Word], Fraction]] = None):
        self.algebra = algebra
        self.terms: dict[tuple[Word, Word], Fraction] = {}
        for k, c in (terms or {}).items():
            if c:
                self.terms[(tuple(k[0]), tuple(k[1]))] = exact(c)

    @classmethod
    def simple(cls, a: AlgElem, b: AlgElem) -> "TensorElem":
        if a.algebra != b.algebra:
            raise ValueError("factors live in different algebras")
        terms: dict = {}
        for u, c1 in a.terms.items():
            for v, c2 in b.terms.items():
                add_term(terms, (u, v), c1 * c2)
        return cls(a.algebra, terms)

    @classmethod
    def zero(cls, algebra: FreeAlgebra) -> "TensorElem":
        return cls(algebra, {})

    def _check(self, other: "TensorElem") -> None:
        if not isinstance(other, TensorElem) or other.algebra != self.algebra:
            raise ValueError("tensors live over different algebras")

    def __add__(self, other: "TensorElem") -> "TensorElem":
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            add_term(terms, k, c)
        return TensorElem(self.algebra, terms)

    def __neg__(self) -> "TensorElem":
        return TensorElem(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        return self + (-other)

    def __mul__(self, k) -> "TensorElem":
        return TensorElem(self.algebra, {key: c * k for key, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TensorElem) and other.algebra == self.algebra
                and other.terms == self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def flip(self) -> "TensorElem":
        return TensorElem(self.algebra, {(v, u): c for (u, v), c in self.terms.items()})

    def mult(self) -> AlgElem:
        terms: dict = {}
        for (u, v), c in self.terms.items():
            add_term(terms, u + v, c)
        return AlgElem(self.algebra, terms)

    def outer(self, left: Word, right: Word) -> "TensorElem":
        """``left * (u (x) v) * right = left u (x) v right``."""
        return TensorElem(self.algebra, {(left + u, v + right): c for (u, v), c in self.terms.items()})

    def left_factor(self) -> AlgElem:
        terms: dict = {}
        for (u, _), c in self.terms.items():
            add_term(terms, u, c)
        return AlgElem(self.algebra, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        A = self.algebra
        parts = [_term_str(c, f"{A.word_str(u)}⊗{A.word_str(v)}")
                 for (u, v), c in sorted(self.terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][1]), t[0]))]
        return _join_terms(parts)

    def to_json(self) -> list:
        from .freealg import format_rational
        names = self.algebra.names
        return [[format_rational(c), [names[g] for g in u], [names[g] for g in v]]
                for (u, v), c in sorted(self.terms.items())]


def tensor_from_json(algebra: FreeAlgebra, data) -> TensorElem:
    from .freealg import parse_rational
    terms: dict = {}
    for coef, u, v in data:
        add_term(terms, (algebra.word(list(u)), algebra.word(list(v))), exact(parse_rational(coef)))
    return TensorElem(algebra, terms)


class DoubleDerivation:
    """A derivation ``B -> (B (x) B)_outer`` given by its values on generators."""

    def __init__(self, base: FreeAlgebra, table: Mapping[str, TensorElem]):
        self.base = base
        self.table: dict[int, TensorElem] = {}
        for name in base.names:
            val = table.get(name, TensorElem.zero(base))
            if val.algebra != base:
                raise ValueError(f"value on {name!r} is not in B (x) B")
            self.table[base.index(name)] = val
        extra = set(table) - set(base.names)
        if extra:
            raise ValueError(f"unknown generators {sorted(extra)}")

    @classmethod
    def coordinate(cls, base: FreeAlgebra, name: str) -> "DoubleDerivation":
        """``d/d name``: sends ``name`` to ``1 (x) 1`` and other generators to 0."""
        return cls(base, {name: TensorElem(base, {((), ()): 1})})

    def __call__(self, a: AlgElem) -> TensorElem:
        if a.algebra != self.base:
            raise ValueError("argument is not in the base algebra")
        terms: dict = {}
        for w, c in a.terms.items():
            for p, g in enumerate(w):
                for (u, v), k in self.table[g].terms.items():
                    add_term(terms, (w[:p] + u, v + w[p + 1:]), c * k)
        return TensorElem(self.base, terms)

    def __add__(self, other: "DoubleDerivation") -> "DoubleDerivation":
        return DoubleDerivation(self.base, {n: self.table[i] + other.table[i]
                                            for i, n in enumerate(self.base.names)})

    def __neg__(self) -> "DoubleDerivation":
        return self * -1

    def __sub__(self, other: "DoubleDerivation") -> "DoubleDerivation":
        return self + (-other)

    def __mul__(self, k) -> "DoubleDerivation":
        return DoubleDerivation(self.base, {n: self.table[i] * k for i, n in enumerate(self.base.names)})

    __rmul__ = __mul__

    def bimodule_act(self, b1: Word, b2: Word) -> "DoubleDerivation":
        """``(b1 Theta b2)(a) = Theta'(a) b2 (x) b1 Theta''(a)`` (inner structure)."""
        return DoubleDerivation(self.base, {
            n: TensorElem(self.base, {(u + b2, b1 + v): c for (u, v), c in self.table[i].terms.items()})
            for i, n in enumerate(self.base.names)})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DoubleDerivation) and other.base == self.base and other.table == self.table

    def __repr__(self) -> str:
        parts = [f"{self.base.names[i]} -> {v!r}" for i, v in self.table.items() if v]
        return "DoubleDerivation(" + "; ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Contractions


def i_theta(f: AlgElem, th: DoubleDerivation) -> TensorElem:
    """Contraction of a form with a double derivation, valued in ``Omega (x) Omega``.

    Each ``d:g`` is replaced by ``Theta(g)`` split across the tensor sign, with
    the Koszul sign of the letters to its left.
    """
    F = f.algebra
    r = _rank(F)
    if th.base.names != F.names[:r]:
        raise ValueError("double derivation is over a different base algebra")
    terms: dict = {}
    for w, c in f.terms.items():
        deg = 0
        for p, g in enumerate(w):
            if g < r:
                continue
            sign = -1 if deg % 2 else 1
            for (u, v), k in th.table[g - r].terms.items():
                add_term(terms, (w[:p] + u, v + w[p + 1:]), sign * c * k)
            deg += 1
    return TensorElem(F, terms)


def circ(t: TensorElem) -> AlgElem:
    """``u (x) v -> (-1)^{|u||v|} v u``."""
    F = t.algebra
    terms: dict = {}
    for (u, v), c in t.terms.items():
        sign = -1 if (F.word_weight(u) * F.word_weight(v)) % 2 else 1
        add_term(terms, v + u, sign * c)
    return AlgElem(F, terms)


def reduced_contraction(f: AlgElem | DRElem, th: DoubleDerivation) -> AlgElem:
    """``iota_Theta = circ(i_Theta)``; on DR classes a representative is used."""
    if isinstance(f, DRElem):
        f = f.representative()
    return circ(i_theta(f, th))


def contraction_matrix(omega: DRElem) -> dict[str, dict[str, TensorElem]]:
    """Rows ``g -> {h: c}`` with ``iota_{d/dg}(omega) = sum c' d:h c''``."""
    F = omega.algebra
    r = _rank(F)
    deg = omega.degree()
    if deg not in (None, 2):
        raise ValueError("contraction matrix needs a homogeneous 2-form")
    base = base_of(F)
    rows: dict[str, dict[str, TensorElem]] = {}
    for g in base.names:
        one_form = reduced_contraction(omega, DoubleDerivation.coordinate(base, g))
        row: dict[str, dict] = {}
        for w, c in one_form.terms.items():
            (p,) = [k for k, l in enumerate(w) if l >= r]
            h = base.names[w[p] - r]
            add_term(row.setdefault(h, {}), (w[:p], w[p + 1:]), c)
        rows[g] = {h: TensorElem(base, t) for h, t in row.items() if t}
    return rows


def signed_permutation(matrix: Mapping[str, Mapping[str, TensorElem]]) -> Optional[dict[str, tuple[str, int]]]:
    """``g -> (h, s)`` if every row is ``s (1 (x) 1)`` in a single distinct column."""
    out: dict[str, tuple[str, int]] = {}
    for g, row in matrix.items():
        if len(row) != 1:
            return None
        (h, t), = row.items()
        if set(t.terms) != {((), ())} or abs(t.terms[((), ())]) != 1:
            return None
        out[g] = (h, int(t.terms[((), ())]))
    if len({h for h, _ in out.values()}) != len(out):
        return None
    return out


def is_bi_nondegenerate(omega: DRElem) -> bool:
    """Desk-scale test: the contraction matrix is a signed permutation over units."""
    return signed_permutation(contraction_matrix(omega)) is not None and \
        len(contraction_matrix(omega)) == _rank(omega.algebra)


class UnsupportedCase(ValueError):
    """Raised when a computation falls outside the solved desk-scale cases."""


def hamiltonian(a: AlgElem, omega: DRElem) -> DoubleDerivation:
    """The double derivation ``H_a`` with ``iota_{H_a}(omega) = d a``.

    Only signed-permutation contraction matrices are solved; the result is
    checked by substitution before it is returned.
    """
    F = omega.algebra
    r = _rank(F)
    base = base_of(F)
    if a.algebra != base:
        raise ValueError("argument must lie in the base algebra")
    perm = signed_permutation(contraction_matrix(omega))
    if perm is None or len(perm) != r:
        raise UnsupportedCase("contraction matrix is not a signed permutation over units")
    owner = {h: (g, s) for g, (h, s) in perm.items()}
    da = d(AlgElem(F, a.terms))
    table: dict[str, dict] = {g: {} for g in base.names}
    for w, c in da.terms.items():
        (p,) = [k for k, l in enumerate(w) if l >= r]
        g, s = owner[base.names[w[p] - r]]
        add_term(table[g], (w[p + 1:], w[:p]), s * c)
    H = DoubleDerivation(base, {g: TensorElem(base, t) for g, t in table.items()})
    if reduced_contraction(omega, H) != da:
        raise UnsupportedCase("substitution check failed")
    return H
