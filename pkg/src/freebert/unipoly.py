"""Dense univariate polynomials over Q, with Sturm-based real root isolation."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

Rational = Fraction | int


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


class UniPoly:
    """Univariate polynomial in a central variable ``t``; coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # constructors
    @classmethod
    def t(cls) -> UniPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, c: Rational) -> UniPoly:
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: Rational = 1) -> UniPoly:
        return cls([0] * n + [c])

    # basic queries
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    # arithmetic
    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        if n < 0:
            raise ValueError("negative exponent")
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Rational) -> UniPoly:
        c = _frac(c)
        return UniPoly([c * a for a in self.coeffs])

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        m = len(other.coeffs)
        for k in range(dq, -1, -1):
            c = rem[k + m - 1] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quo), UniPoly(rem[: m - 1])

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[1]

    def exquo(self, other: UniPoly) -> UniPoly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return self.scale(1 / self.coeffs[-1])

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting + and *."""
        if not self.coeffs:
            return x * 0 if not isinstance(x, (int, Fraction)) else Fraction(0)
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def compose(self, q: UniPoly) -> UniPoly:
        """Return self(q(t))."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def content_primitive(self) -> tuple[Fraction, list[int]]:
        """Return (c, ints) with self = c * poly(ints), ints coprime integers, positive lead."""
        from math import gcd, lcm

        if not self.coeffs:
            return Fraction(0), []
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p
    return p.exquo(gcd(p, p.derivative())).monic()


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(seq: Sequence[UniPoly], x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: Sequence[UniPoly], a: Fraction, b: Fraction) -> int:
    """Distinct real roots in the half-open interval (a, b] (Sturm's theorem)."""
    return _variations(seq, a) - _variations(seq, b)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = abs(p.lc())
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(
    p: UniPoly, lo: Fraction | None = None, hi: Fraction | None = None
) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the distinct real roots of ``p`` in the open interval (lo, hi).

    Each returned pair ``(l, r)`` has ``l == r`` for an exact rational root,
    otherwise ``l < r``, ``p(l) p(r) != 0`` and exactly one root in ``(l, r)``.
    Intervals are sorted and pairwise disjoint. ``None`` bounds mean unbounded.
    """
    if p.degree < 1:
        return []
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    bound = root_bound(q)
    a = -bound if lo is None else max(Fraction(lo), -bound)
    b = bound if hi is None else min(Fraction(hi), bound)
    if a >= b:
        return []
    out: list[tuple[Fraction, Fraction]] = []

    def open_count(l: Fraction, r: Fraction) -> int:
        return count_roots(seq, l, r) - (1 if q(r) == 0 else 0)

    stack = [(a, b)]
    while stack:
        l, r = stack.pop()
        n = open_count(l, r)
        if n == 0:
            continue
        if n == 1 and q(l) != 0 and q(r) != 0:
            out.append((l, r))
            continue
        m = (l + r) / 2
        if q(m) == 0:
            out.append((m, m))
        stack.append((l, m))
        stack.append((m, r))
    out.sort()
    return out


def refine(p: UniPoly, interval: tuple[Fraction, Fraction], width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of ``p`` until it is narrower than ``width``."""
    l, r = interval
    if l == r:
        return interval
    sl = _sign(p(l))
    while r - l >= width:
        m = (l + r) / 2
        sm = _sign(p(m))
        if sm == 0:
            return (m, m)
        if sm == sl:
            l = m
        else:
            r = m
    return (l, r)


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots of ``p``, sorted ascending.

    Any rational root of the primitive integer form ``a_n t^n + ...`` has the
    shape ``m / a_n`` with ``m`` an integer, so refining each isolating interval
    below width ``1/|a_n|`` leaves at most two integer candidates to test.
    """
    if p.degree < 1:
        return []
    q = squarefree_part(p)
    _, ints = q.content_primitive()
    lead = abs(ints[-1])
    roots = []
    for iv in isolate_real_roots(q):
        l, r = refine(q, iv, Fraction(1, 2 * lead))
        if l == r:
            roots.append(l)
            continue
        for m in range(_floor(l * lead), _floor(r * lead) + 2):
            cand = Fraction(m, lead)
            if l < cand < r and q(cand) == 0:
                roots.append(cand)
    return sorted(roots)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def rational_nth_root(x: Fraction, n: int) -> Fraction | None:
    """Exact rational n-th root of ``x`` if one exists (the real one for odd n)."""
    x = Fraction(x)
    if n == 1:
        return x
    if x < 0:
        if n % 2 == 0:
            return None
        r = rational_nth_root(-x, n)
        return None if r is None else -r

    def iroot(k: int) -> int | None:
        if n == 2:
            s = isqrt(k)
        else:
            s = round(k ** (1.0 / n)) if k < 2**52 else _int_nth_root(k, n)
            for cand in (s - 1, s, s + 1):
                if cand >= 0 and cand**n == k:
                    return cand
            return None
        return s if s * s == k else None

    a, b = iroot(x.numerator), iroot(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _int_nth_root(k: int, n: int) -> int:
    lo, hi = 0, 1 << (k.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= k:
            lo = mid
        else:
            hi = mid - 1
    return lo


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> UniPoly:
    """Lagrange interpolation through distinct abscissae."""
    result = UniPoly()
    for i, (xi, yi) in enumerate(points):
        term = UniPoly([yi])
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * UniPoly([-xj, 1]).scale(1 / (xi - xj))
        result = result + term
    return result
