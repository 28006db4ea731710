"""Noncommutative polynomials over Q in letters x1..xd.

A word is a tuple of 1-based variable indices; the empty tuple is the word 1.
Terms are kept in a dict and always iterated in degree-lexicographic order.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping

from .errors import AlphabetMismatch
from .unipoly import UniPoly, _frac

Word = tuple[int, ...]


def deglex_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def words_of_length(d: int, n: int) -> list[Word]:
    return [tuple(w) for w in product(range(1, d + 1), repeat=n)]


def words_up_to(d: int, n: int, start: int = 0) -> list[Word]:
    """All words with ``start <= len <= n`` in deg-lex order."""
    out: list[Word] = []
    for k in range(start, n + 1):
        out.extend(words_of_length(d, k))
    return out


def format_word(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        parts.append(f"x{w[i]}" + (f"^{run}" if run > 1 else ""))
        i = j
    return "*".join(parts)


class NCPoly:
    """Immutable element of Q<x1..xd>.

    ``degree`` is ``None`` for the zero polynomial; it is never compared with ints.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Word, object] | None = None):
        if nvars < 1:
            raise ValueError("alphabet size must be positive")
        self.nvars = nvars
        clean: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = _frac(c)
            if c == 0:
                continue
            w = tuple(w)
            for i in w:
                if not 1 <= i <= nvars:
                    raise ValueError(f"variable index {i} outside 1..{nvars}")
            clean[w] = clean.get(w, Fraction(0)) + c
            if clean[w] == 0:
                del clean[w]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Word, Fraction]) -> NCPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> NCPoly:
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> NCPoly:
        return cls(nvars, {(): c})

    @classmethod
    def one(cls, nvars: int) -> NCPoly:
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> NCPoly:
        return cls(nvars, {(i,): 1})

    @classmethod
    def monomial(cls, nvars: int, word: Iterable[int], c=1) -> NCPoly:
        return cls(nvars, {tuple(word): c})

    @classmethod
    def from_vector(cls, nvars: int, basis: list[Word], vec: Iterable) -> NCPoly:
        return cls(nvars, dict(zip(basis, vec)))

    # queries
    @property
    def terms(self) -> dict[Word, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, Fraction]]:
        """Terms in deg-lex order."""
        for w in sorted(self._terms, key=deglex_key):
            yield w, self._terms[w]

    def words(self) -> list[Word]:
        return sorted(self._terms, key=deglex_key)

    def coeff(self, w: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int | None:
        if not self._terms:
            return None
        return max(len(w) for w in self._terms)

    def is_constant(self) -> bool:
        return all(len(w) == 0 for w in self._terms)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.coeff(())

    def leading_word(self) -> Word:
        """Lex-smallest word of top degree (the deg-lex-first word of the leading form)."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading word")
        n = self.degree
        return min(w for w in self._terms if len(w) == n)

    def leading_coeff(self) -> Fraction:
        return self._terms[self.leading_word()]

    def normalized(self) -> tuple[Fraction, NCPoly]:
        """Return ``(c, g)`` with ``self == c * g`` and ``g.leading_coeff() == 1``."""
        c = self.leading_coeff()
        return c, self.scale(1 / c)

    def graded_part(self, m: int) -> NCPoly:
        return NCPoly._raw(self.nvars, {w: c for w, c in self._terms.items() if len(w) == m})

    def leading_form(self) -> NCPoly:
        if not self._terms:
            raise ValueError("leading form of the zero polynomial")
        return self.graded_part(self.degree)

    def variables(self) -> set[int]:
        return {i for w in self._terms for i in w}

    # arithmetic
    def _check(self, other: NCPoly) -> None:
        if self.nvars != other.nvars:
            raise AlphabetMismatch(f"alphabet sizes differ: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> NCPoly:
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return NCPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        return NCPoly._raw(self.nvars, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> NCPoly:
        c = _frac(c)
        if c == 0:
            return NCPoly.zero(self.nvars)
        return NCPoly._raw(self.nvars, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        out: dict[Word, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return NCPoly._raw(self.nvars, {w: c for w, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> NCPoly:
        if n < 0:
            raise ValueError("negative exponent")
        result = NCPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = NCPoly.const(self.nvars, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def transpose(self) -> NCPoly:
        """The involution fixing every letter: reverses each word."""
        return NCPoly._raw(self.nvars, {w[::-1]: c for w, c in self._terms.items()})

    def eval_scalar(self, point: Iterable) -> Fraction:
        """Commutative collapse: evaluate with every letter replaced by a rational scalar."""
        tau = [_frac(v) for v in point]
        if len(tau) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(tau)}")
        total = Fraction(0)
        for w, c in self._terms.items():
            term = c
            for i in w:
                term *= tau[i - 1]
            total += term
        return total

    def substitute(self, images: list[NCPoly]) -> NCPoly:
        """Algebra endomorphism sending x_i to ``images[i-1]``."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable required")
        out = NCPoly.zero(images[0].nvars)
        for w, c in self._terms.items():
            term = NCPoly.const(images[0].nvars, c)
            for i in w:
                term = term * images[i - 1]
            out = out + term
        return out

    def to_vector(self, basis: list[Word]) -> list[Fraction]:
        return [self.coeff(w) for w in basis]

    # printing
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            mag = abs(c)
            if not w:
                body = str(mag)
            elif mag == 1:
                body = format_word(w)
            else:
                body = f"{mag}*{format_word(w)}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"NCPoly({self.nvars}, {str(self)!r})"


def compose_uni(p: UniPoly, h: NCPoly) -> NCPoly:
    """p(h) = sum_i p_i h^i, with h^0 = 1."""
    acc = NCPoly.zero(h.nvars)
    for c in reversed(p.coeffs):
        acc = acc * h + c
    return acc


def express_in_powers(f: NCPoly, h: NCPoly) -> UniPoly | None:
    """Return ``p`` with ``f == p(h)``, or ``None`` when f is not in Q[h]."""
    from .exactla import solve

    if h.is_constant():
        raise ValueError("h must be nonconstant")
    if f.is_zero():
        return UniPoly()
    top = f.degree // h.degree
    powers = [NCPoly.one(h.nvars)]
    for _ in range(top):
        powers.append(powers[-1] * h)
    basis = sorted({w for p in powers for w in p._terms} | set(f._terms), key=deglex_key)
    M = [[p.coeff(w) for p in powers] for w in basis]
    rhs = [f.coeff(w) for w in basis]
    sol = solve(M, rhs)
    if sol is None:
        return None
    p = UniPoly(sol[0])
    if compose_uni(p, h) != f:
        return None
    return p


class ParamNCPoly:
    """Element of Q[t] (x) Q<x>, t central: a map word -> UniPoly in t."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Word, UniPoly] | None = None):
        self.nvars = nvars
        self._terms = {tuple(w): p for w, p in (terms or {}).items() if p}

    @classmethod
    def from_ncpoly(cls, f: NCPoly) -> ParamNCPoly:
        return cls(f.nvars, {w: UniPoly([c]) for w, c in f._terms.items()})

    @classmethod
    def t(cls, nvars: int) -> ParamNCPoly:
        return cls(nvars, {(): UniPoly.t()})

    @classmethod
    def from_slices(cls, slices: list[NCPoly]) -> ParamNCPoly:
        """Build sum_i slices[i] * t^i."""
        nvars = slices[0].nvars
        acc: dict[Word, list[Fraction]] = {}
        for i, s in enumerate(slices):
            for w, c in s._terms.items():
                acc.setdefault(w, [Fraction(0)] * len(slices))[i] = c
        return cls(nvars, {w: UniPoly(cs) for w, cs in acc.items()})

    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterator[tuple[Word, UniPoly]]:
        for w in sorted(self._terms, key=deglex_key):
            yield w, self._terms[w]

    @property
    def x_degree(self) -> int | None:
        return max((len(w) for w in self._terms), default=None)

    @property
    def t_degree(self) -> int | None:
        return max((p.degree for p in self._terms.values()), default=None)

    def t_slice(self, i: int) -> NCPoly:
        """The NCPoly coefficient of t^i."""
        return NCPoly(self.nvars, {w: p[i] for w, p in self._terms.items()})

    def slices(self) -> list[NCPoly]:
        td = self.t_degree
        return [] if td is None else [self.t_slice(i) for i in range(td + 1)]

    def _lift(self, other) -> ParamNCPoly:
        if isinstance(other, ParamNCPoly):
            if other.nvars != self.nvars:
                raise AlphabetMismatch("alphabet sizes differ")
            return other
        if isinstance(other, NCPoly):
            if other.nvars != self.nvars:
                raise AlphabetMismatch("alphabet sizes differ")
            return ParamNCPoly.from_ncpoly(other)
        if isinstance(other, (int, Fraction)):
            return ParamNCPoly(self.nvars, {(): UniPoly([other])})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, p in other._terms.items():
            out[w] = out.get(w, UniPoly()) + p
        return ParamNCPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> ParamNCPoly:
        return ParamNCPoly(self.nvars, {w: -p for w, p in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Word, UniPoly] = {}
        for w1, p1 in self._terms.items():
            for w2, p2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, UniPoly()) + p1 * p2
        return ParamNCPoly(self.nvars, out)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            other = ParamNCPoly.from_ncpoly(other)
        if not isinstance(other, ParamNCPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({p})*{format_word(w)}" for w, p in self.items())

    def __repr__(self) -> str:
        return f"ParamNCPoly({self.nvars}, {str(self)!r})"
