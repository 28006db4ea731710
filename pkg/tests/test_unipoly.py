from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from freebert.unipoly import (
    UniPoly,
    count_roots,
    gcd,
    interpolate,
    isolate_real_roots,
    rational_nth_root,
    rational_roots,
    sturm_sequence,
)
from polygen import small_rationals, uni_polys

T = sympy.Symbol("t")


def to_sympy(p: UniPoly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], T)


def test_printing_and_basic_ops():
    t = UniPoly.t()
    assert str(t * t - 3 * t + 2) == "2 - 3*t + t^2"
    assert (t + 1) ** 2 == t * t + 2 * t + 1
    assert UniPoly().degree == -1
    assert (t * t).compose(t + 1) == t * t + 2 * t + 1


@given(uni_polys(), uni_polys(max_deg=3))
def test_divmod_identity(a, b):
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.divmod(b)
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(uni_polys(), uni_polys())
def test_gcd_matches_sympy(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = gcd(a, b)
    expected = sympy.gcd(to_sympy(a), to_sympy(b)).monic()
    assert to_sympy(g).as_expr() == expected.as_expr()


@settings(max_examples=60, deadline=None)
@given(uni_polys(max_deg=6), small_rationals, small_rationals)
def test_sturm_count_matches_sympy(p, a, b):
    if p.degree < 1 or a == b:
        return
    a, b = min(a, b), max(a, b)
    n = count_roots(sturm_sequence(p.monic()), a, b)
    sp = to_sympy(p)
    exact = sum(1 for r in set(sympy.real_roots(sp)) if a < r <= b)
    assert n == exact


@settings(max_examples=60, deadline=None)
@given(uni_polys(max_deg=6))
def test_isolation_finds_every_real_root(p):
    if p.degree < 1:
        return
    intervals = isolate_real_roots(p)
    roots = sorted(set(sympy.real_roots(to_sympy(p))))
    assert len(intervals) == len(roots)
    for (l, r), root in zip(intervals, roots):
        if l == r:
            assert p(l) == 0 and root == sympy.Rational(l.numerator, l.denominator)
        else:
            assert sympy.Rational(l.numerator, l.denominator) < root < sympy.Rational(r.numerator, r.denominator)


def test_isolation_respects_open_bounds():
    t = UniPoly.t()
    p = t * (t - 1) * (t + 1)
    assert isolate_real_roots(p, Fraction(-1), Fraction(1)) == [(Fraction(0), Fraction(0))]


@given(st.lists(small_rationals, min_size=1, max_size=4))
def test_rational_roots_recovered(roots):
    t = UniPoly.t()
    p = UniPoly([3])
    for r in roots:
        p = p * (t - r)
    p = p * (t * t + 1)
    assert rational_roots(p) == sorted(set(roots))


def test_rational_nth_root():
    assert rational_nth_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert rational_nth_root(Fraction(-27, 8), 3) == Fraction(-3, 2)
    assert rational_nth_root(Fraction(2), 2) is None
    assert rational_nth_root(Fraction(-4), 2) is None


@given(uni_polys(max_deg=4))
def test_interpolation_round_trip(p):
    pts = [(Fraction(x), p(Fraction(x))) for x in range(5)]
    assert interpolate(pts) == p
