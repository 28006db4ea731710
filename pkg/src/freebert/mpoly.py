"""Sparse commutative polynomials over Q with integer-labelled variables.

Used for the unknown coefficients of factorization systems. A monomial is a
sorted tuple of ``(var, exponent)`` pairs; the empty tuple is 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Mono = tuple[tuple[int, int], ...]


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, object] | None = None):
        self.terms: dict[Mono, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[m] = self.terms.get(m, 0) + c
                if not self.terms[m]:
                    del self.terms[m]

    @classmethod
    def _raw(cls, terms: dict[Mono, Fraction]) -> MPoly:
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c) -> MPoly:
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, i: int) -> MPoly:
        return cls._raw({((i, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MPoly()
            return MPoly._raw({m: c * v for m, v in self.terms.items()})
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MPoly:
        out = MPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "MPoly(0)"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"u{v}" + (f"^{e}" if e > 1 else "") for v, e in m)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "MPoly(" + " + ".join(parts) + ")"

    def substitute(self, values: Mapping[int, "MPoly | Fraction | int"]) -> MPoly:
        """Replace variables by polynomials (or rationals)."""
        if not values or not (self.variables() & set(values)):
            return self
        out = MPoly()
        cache: dict[tuple[int, int], MPoly] = {}
        for m, c in self.terms.items():
            term = MPoly.const(c)
            keep: list[tuple[int, int]] = []
            for v, e in m:
                if v in values:
                    key = (v, e)
                    if key not in cache:
                        val = values[v]
                        if not isinstance(val, MPoly):
                            val = MPoly.const(val)
                        cache[key] = val**e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * MPoly._raw({tuple(keep): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, values: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                term *= Fraction(values[v]) ** e
            total += term
        return total

    def isolated_linear_var(self) -> tuple[int, Fraction] | None:
        """A variable ``v`` such that self = c*v + (terms free of v), c a nonzero rational."""
        counts: dict[int, int] = {}
        for m in self.terms:
            for v, _ in m:
                counts[v] = counts.get(v, 0) + 1
        best = None
        for m, c in self.terms.items():
            if len(m) == 1 and m[0][1] == 1 and counts[m[0][0]] == 1:
                v = m[0][0]
                if best is None or v < best[0]:
                    best = (v, c)
        return best


def linear_combination(pairs: Iterable[tuple[Fraction, MPoly]]) -> MPoly:
    out = MPoly()
    for c, p in pairs:
        if c:
            out = out + p * c
    return out
