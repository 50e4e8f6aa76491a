"""Free associative algebras over exact rationals.

Words are tuples of generator indices (the empty tuple is the unit).
Necklaces are cyclic words stored as their lexicographically minimal
rotation; ``Sym(A_cyc)`` monomials are sorted tuples of necklaces.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Word = tuple[int, ...]
Necklace = tuple[int, ...]
Monomial = tuple[Necklace, ...]
Scalar = Union[int, Fraction]


def add_term(terms: dict, key, coef) -> None:
    """Accumulate ``coef`` at ``key``, dropping exact zeros."""
    c = terms.get(key)
    if c is None:
        if coef:
            terms[key] = coef
        return
    c = c + coef
    if c:
        terms[key] = c
    else:
        terms.pop(key, None)


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


def exact(c) -> Scalar:
    """Coerce to an exact scalar; integral values stay ``int`` for speed."""
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


def format_rational(c: Scalar) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


class FreeAlgebra:
    """Free associative unital algebra on named, weighted generators."""

    def __init__(self, generators: Iterable[Union[str, tuple[str, int]]]):
        names: list[str] = []
        weights: list[int] = []
        for g in generators:
            name, weight = (g, 0) if isinstance(g, str) else (g[0], int(g[1]))
            if weight < 0:
                raise ValueError(f"generator {name!r} has negative weight")
            names.append(name)
            weights.append(weight)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.names: tuple[str, ...] = tuple(names)
        self.weights: tuple[int, ...] = tuple(weights)
        self._index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other: object) -> bool:
        if other is self:
            return True
        return (isinstance(other, FreeAlgebra) and self.names == other.names
                and self.weights == other.weights)

    def __hash__(self) -> int:
        return hash((self.names, self.weights))

    def __repr__(self) -> str:
        gens = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"FreeAlgebra({gens})"

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def word(self, names: Sequence[str] | str) -> Word:
        """Word from a sequence of generator names (a bare string is one name)."""
        if isinstance(names, str):
            names = [names]
        return tuple(self.index(n) for n in names)

    def word_weight(self, w: Word) -> int:
        return sum(self.weights[i] for i in w)

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        sep = "" if all(len(n) == 1 for n in self.names) else "*"
        return sep.join(self.names[i] for i in w)

    def gen(self, name: str) -> "AlgElem":
        return AlgElem(self, {self.word(name): 1})

    def gens(self) -> list["AlgElem"]:
        return [self.gen(n) for n in self.names]

    def one(self) -> "AlgElem":
        return AlgElem(self, {(): 1})

    def zero(self) -> "AlgElem":
        return AlgElem(self, {})

    def monomial(self, names: Sequence[str] | str, coef: Scalar = 1) -> "AlgElem":
        return AlgElem(self, {self.word(names): exact(coef)})

    def words(self, max_len: int, min_len: int = 0) -> Iterator[Word]:
        """All words of length in ``[min_len, max_len]``, shortest first."""
        import itertools
        for length in range(min_len, max_len + 1):
            yield from itertools.product(range(self.ngens), repeat=length)

    def necklaces(self, max_len: int, min_len: int = 0) -> list[Necklace]:
        seen = {canonical_necklace(w) for w in self.words(max_len, min_len)}
        return sorted(seen, key=lambda c: (len(c), c))

    def to_json(self) -> dict:
        return {"generators": [{"name": n, "weight": w}
                               for n, w in zip(self.names, self.weights)]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FreeAlgebra":
        return cls((g["name"], int(g.get("weight", 0))) for g in data["generators"])

    def element_from_json(self, data: Sequence) -> "AlgElem":
        terms: dict[Word, Fraction] = {}
        for coef, word in data:
            add_term(terms, self.word(list(word)), parse_rational(coef))
        return AlgElem(self, terms)


class AlgElem:
    """Finite rational combination of words; zero coefficients are never stored."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping[Word, Scalar] | None = None):
        self.algebra = algebra
        self.terms: dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            if c:
                self.terms[tuple(w)] = exact(c)

    def _check(self, other: "AlgElem") -> None:
        if self.algebra != other.algebra:
            raise ValueError("elements live in different algebras")

    def _coerce(self, other) -> "AlgElem":
        if isinstance(other, AlgElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return AlgElem(self.algebra, {(): other})
        return NotImplemented

    def __add__(self, other) -> "AlgElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for w, c in other.terms.items():
            add_term(terms, w, c)
        return AlgElem(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "AlgElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "AlgElem":
        return (-self) + other

    def __mul__(self, other) -> "AlgElem":
        if isinstance(other, (int, Fraction)):
            return AlgElem(self.algebra, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, AlgElem):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other) -> "AlgElem":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "AlgElem":
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgElem(self.algebra, {(): other})
        return (isinstance(other, AlgElem) and self.algebra == other.algebra
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> set[int]:
        return {self.algebra.word_weight(w) for w in self.terms}

    def homogeneous_part(self, k: int) -> "AlgElem":
        return AlgElem(self.algebra, {w: c for w, c in self.terms.items()
                                      if self.algebra.word_weight(w) == k})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            parts.append(_term_str(self.terms[w], self.algebra.word_str(w)))
        return _join_terms(parts)

    def to_json(self) -> list:
        return [[format_rational(c), [self.algebra.names[i] for i in w]]
                for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))]


def _term_str(c: Fraction, body: str) -> str:
    if body == "1":
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def mul(x: AlgElem, y: AlgElem) -> AlgElem:
    """Concatenation product, extended bilinearly."""
    x._check(y)
    terms: dict[Word, Fraction] = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            add_term(terms, w1 + w2, c1 * c2)
    return AlgElem(x.algebra, terms)


def canonical_necklace(word: Sequence[int]) -> Necklace:
    """Lexicographically minimal rotation of ``word``."""
    w = tuple(word)
    if len(w) <= 1:
        return w
    return min(w[k:] + w[:k] for k in range(len(w)))


class CycElem:
    """Rational combination of necklaces, an element of ``A_cyc``."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping[Necklace, Scalar] | None = None):
        self.algebra = algebra
        self.terms: dict[Necklace, Fraction] = {}
        for w, c in (terms or {}).items():
            add_term(self.terms, canonical_necklace(w), Fraction(c))

    def __add__(self, other: "CycElem") -> "CycElem":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            add_term(terms, w, c)
        return CycElem(self.algebra, terms)

    def __neg__(self) -> "CycElem":
        return CycElem(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "CycElem") -> "CycElem":
        return self + (-other)

    def __mul__(self, k: Scalar) -> "CycElem":
        return CycElem(self.algebra, {w: c * k for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, CycElem) and self.algebra == other.algebra
                and self.terms == other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = [_term_str(self.terms[w], f"<{self.algebra.word_str(w)}>")
                 for w in sorted(self.terms, key=lambda w: (len(w), w))]
        return _join_terms(parts)


def cyc_project(x: AlgElem) -> CycElem:
    """The projection ``A -> A/[A, A]`` onto necklaces."""
    return CycElem(x.algebra, x.terms)


def sort_monomial(necklaces: Iterable[Necklace]) -> Monomial:
    return tuple(sorted(necklaces, key=lambda c: (len(c), c)))


def monomial_weight(algebra: FreeAlgebra, m: Monomial) -> int:
    return sum(algebra.word_weight(c) for c in m)


class SymCycElem:
    """Element of the free commutative algebra ``Sym(A_cyc)`` on necklaces."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping[Monomial, Scalar] | None = None):
        self.algebra = algebra
        self.terms: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            add_term(self.terms, sort_monomial(canonical_necklace(w) for w in m), Fraction(c))

    @classmethod
    def one(cls, algebra: FreeAlgebra) -> "SymCycElem":
        return cls(algebra, {(): 1})

    @classmethod
    def from_cyc(cls, c: CycElem) -> "SymCycElem":
        return cls(c.algebra, {(w,): k for w, k in c.terms.items()})

    def __add__(self, other: "SymCycElem") -> "SymCycElem":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            add_term(terms, w, c)
        return SymCycElem(self.algebra, terms)

    def __neg__(self) -> "SymCycElem":
        return SymCycElem(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "SymCycElem") -> "SymCycElem":
        return self + (-other)

    def __mul__(self, other) -> "SymCycElem":
        if isinstance(other, (int, Fraction)):
            return SymCycElem(self.algebra, {m: c * other for m, c in self.terms.items()})
        return sym_mul(self, other)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SymCycElem) and self.algebra == other.algebra
                and self.terms == other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            body = "".join(f"<{self.algebra.word_str(c)}>" for c in m) or "1"
            parts.append(_term_str(self.terms[m], body))
        return _join_terms(parts)


def sym_mul(a: SymCycElem, b: SymCycElem) -> SymCycElem:
    """Commutative product: multiset union of necklace factors."""
    if a.algebra != b.algebra:
        raise ValueError("elements live in different algebras")
    terms: dict[Monomial, Fraction] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            add_term(terms, sort_monomial(m1 + m2), c1 * c2)
    return SymCycElem(a.algebra, terms)
