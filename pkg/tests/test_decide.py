import random
from fractions import Fraction

import pytest

from freebert.decide import (
    bertini_report,
    centralizer_slice,
    composite_decompose,
    intertwiner_space,
    stable_association,
)
from freebert.factor import factor
from freebert.ncpoly import NCPoly, compose_uni
from freebert.parser import parse
from freebert.unipoly import UniPoly
from polygen import rand_poly

t = UniPoly.t()
WORKED_F = "x1 + x2 + x1*x2^2"
WORKED_G = "x1 + x2 + x2^2*x1"


def P(text, d=2):
    return parse(text, d)


def test_centralizer_slice_examples():
    assert centralizer_slice(P("x1"), 0) == []
    assert P("x1") in centralizer_slice(P("x1"), 1)
    assert centralizer_slice(P("(x1*x2 + x2*x1)^2"), 3) == [P("x1*x2 + x2*x1")]
    assert centralizer_slice(P(WORKED_F), 2) == []


def test_centralizer_elements_commute():
    f = P("(x1*x2 - x2 + 1)^3")
    for p in centralizer_slice(f, 5):
        assert f * p == p * f and p.constant_term() == 0


def test_composite_decompose_examples():
    h = P("x1*x2 + x2*x1")
    dec = composite_decompose(h * h + h * 3)
    assert (dec.p, dec.h, dec.composite) == (t * t + 3 * t, h, True)
    dec = composite_decompose(P(WORKED_F))
    assert (dec.p, dec.h, dec.composite) == (t, P(WORKED_F), False)
    dec = composite_decompose(P("x1^3", 1))
    assert (dec.p, dec.h) == (t**3, P("x1", 1))


def test_composite_decompose_with_constant_term():
    f = P("x1^2 + 5", 1)
    dec = composite_decompose(f)
    assert dec.composite and compose_uni(dec.p, dec.h) == f and dec.h.constant_term() == 0


def test_composite_implies_nontrivial_centralizer():
    rng = random.Random(3)
    for _ in range(10):
        h = rand_poly(rng, 2, rng.randint(1, 2))
        p = UniPoly([0, rng.randint(-3, 3), rng.randint(1, 3)])
        f = compose_uni(p, h)
        dec = composite_decompose(f)
        assert dec.composite
        assert centralizer_slice(f, f.degree - 1)
        assert compose_uni(dec.p, dec.h) == f


def test_composite_factors_through_roots():
    """h - c divides f - p(c) for composite f = p(h)."""
    h = P("x1*x2 + x2 - 1")
    p = t * t - 2 * t
    f = compose_uni(p, h)
    for c in (Fraction(1), Fraction(-3, 2), Fraction(5)):
        fac = factor(f - p(c))
        assert len(fac) == 2
        assert any(stable_association(q, h - c) for q in fac.factors)


def test_stable_association_examples():
    w = stable_association(P("x1*x2 + 1"), P("x2*x1 + 1"))
    assert (w.g1, w.g2) == (P("x1"), P("x1"))
    w = stable_association(P("x1 + x2"), P("x1 + x2"))
    assert (w.g1, w.g2) == (NCPoly.one(2), NCPoly.one(2))
    assert stable_association(P("x1*x2 + 1"), P("x1*x2 + 2")) is None
    with pytest.raises(ValueError):
        stable_association(P("x1^2 - 1"), P("x1^2 - 1"))


def test_stable_association_is_symmetric():
    rng = random.Random(5)
    for _ in range(6):
        u = rand_poly(rng, 2, rng.randint(1, 2))
        v = rand_poly(rng, 2, rng.randint(1, 2))
        f1, f2 = u * v + 1, v * u + 1
        if not (factor(f1).factors == (f1.normalized()[1],)):
            continue
        assert (stable_association(f1, f2) is None) == (stable_association(f2, f1) is None)


def test_intertwiner_space_examples():
    assert intertwiner_space(P("x1"), P("x1"), 2) == [P("x1^2"), P("x1"), NCPoly.one(2)]
    assert intertwiner_space(P("x1*x2 + 1"), P("x2*x1 + 1"), 1) == [P("x1")]
    assert intertwiner_space(P("x1"), P("x2"), 3) == []


def test_worked_pair_needs_degree_four():
    f, g = P(WORKED_F), P(WORKED_G)
    assert intertwiner_space(f, g, 3) == []
    (a,) = intertwiner_space(f, g, 4)
    assert f * a == a * g


def test_intertwiner_dimension_at_most_one():
    """Non-composite f with a known intertwiner: f*u = u*g for f = u*v + 2, g = v*u + 2."""
    rng = random.Random(9)
    checked = 0
    while checked < 5:
        u, v = rand_poly(rng, 2, 1), rand_poly(rng, 2, rng.randint(1, 2))
        f, g = u * v + 2, v * u + 2
        if composite_decompose(f).composite:
            continue
        space = intertwiner_space(f, g, f.degree - 1)
        assert len(space) <= 1
        assert f * u == u * g
        checked += 1


def test_bertini_report_examples():
    rep = bertini_report(P("x1^2", 1), lambdas=[1, 2, 4])
    assert rep.composite and rep.consistent
    status = {s.lam: s.status for s in rep.samples}
    assert status == {1: "factors", 2: "no_rational_split", 4: "factors"}
    rep = bertini_report(P(WORKED_F), samples=20, seed=0)
    assert not rep.composite and rep.exceptional == []
    assert len(rep.samples) == 20
    rep = bertini_report(P("x1"), samples=5)
    assert not rep.composite and all(s.status == "no_rational_split" for s in rep.samples)


def test_bertini_report_is_seeded():
    a = bertini_report(P(WORKED_F), samples=5, seed=4)
    b = bertini_report(P(WORKED_F), samples=5, seed=4)
    assert [s.lam for s in a.samples] == [s.lam for s in b.samples]
