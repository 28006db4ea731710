import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from freebert.eigenlevel import (
    MatrixTuple,
    char_poly,
    det_profile_equal,
    eig_cert,
    eig_equiv,
    eig_member,
    evaluate,
    normalize_affine,
    parametric_intertwiner,
    random_tuple,
    t_division,
    t_substitute_right,
    uni_decompose_through,
)
from freebert.errors import NotEquivalent, NotIncluded
from freebert.exactla import identity, matadd, matmul, matscale
from freebert.ncpoly import NCPoly, ParamNCPoly
from freebert.parser import parse
from freebert.unipoly import UniPoly
from polygen import nc_polys, small_rationals

t = UniPoly.t()
WORKED_F = "x1 + x2 + x1*x2^2"
WORKED_G = "x1 + x2 + x2^2*x1"
COMMUTATOR_X = MatrixTuple.from_lists([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])


def P(text, d=2):
    return parse(text, d)


def test_evaluation_examples():
    assert evaluate(P("x1*x2 - x2*x1"), COMMUTATOR_X) == [[1, 0], [0, -1]]
    X3 = random_tuple(2, 3, random.Random(0))
    assert evaluate(NCPoly.one(2), X3) == identity(3)
    assert evaluate(P("x1"), X3) == X3.matrix(1)
    with pytest.raises(ValueError):
        evaluate(P("x1", 3), X3)


@settings(max_examples=30, deadline=None)
@given(nc_polys(max_deg=2), nc_polys(max_deg=2), st.integers(0, 10**6))
def test_evaluation_is_a_ring_homomorphism(f, g, seed):
    X = random_tuple(2, 2, random.Random(seed))
    assert evaluate(f * g, X) == matmul(evaluate(f, X), evaluate(g, X))
    assert evaluate(f + g, X) == matadd(evaluate(f, X), evaluate(g, X))


def test_char_poly_examples():
    assert char_poly([[0, 1], [0, 0]]) == t * t
    assert char_poly([[1, 0], [0, 2]]) == (t - 1) * (t - 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(small_rationals, min_size=3, max_size=3), min_size=3, max_size=3))
def test_char_poly_matches_sympy_and_cayley_hamilton(M):
    p = char_poly(M)
    lam = sympy.Symbol("lambda")
    expected = sympy.Matrix(M).charpoly(lam).all_coeffs()
    assert [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] == expected
    acc = [[Fraction(0)] * 3 for _ in range(3)]
    power = identity(3)
    for c in p.coeffs:
        acc = matadd(acc, matscale(c, power))
        power = matmul(power, [[Fraction(x) for x in row] for row in M])
    assert all(x == 0 for row in acc for x in row)


def test_eig_member_examples():
    assert eig_member(P("x1"), COMMUTATOR_X, 0)
    assert not eig_member(P("x1"), COMMUTATOR_X, 1)
    # (x1x2 + x2x1)(X) is the identity here
    assert not eig_member(P("x1*x2 + x2*x1"), COMMUTATOR_X, 0)
    assert eig_member(P("x1*x2 + x2*x1"), COMMUTATOR_X, 1)


def test_det_profile_examples():
    f, g = P(WORKED_F), P(WORKED_G)
    assert det_profile_equal(f, g, 2, trials=5).equal
    assert det_profile_equal(f, g, 3, trials=5).equal
    res = det_profile_equal(P("x1"), P("x2"), 2, trials=5)
    assert not res.equal
    X = res.witness
    assert char_poly(evaluate(P("x1"), X)) != char_poly(evaluate(P("x2"), X))
    assert det_profile_equal(f, f, 2, trials=3).equal


def test_normalize_affine_examples():
    assert normalize_affine(P("x1", 1), P("2*x1 + 3", 1)) == [(Fraction(1, 2), Fraction(-3, 2))]
    assert normalize_affine(P("x1*x2 + x2"), P("x1*x2 + x2")) == [(1, 0)]
    with pytest.raises(ValueError):
        normalize_affine(P("x1", 1), P("x1^2", 1))


def test_parametric_intertwiner_examples():
    A, B = parametric_intertwiner(P("x1*x2 + 1"), P("x2*x1 + 1"))
    assert A == ParamNCPoly.from_ncpoly(P("x1")) and B == A
    A, B = parametric_intertwiner(P("x1"), P("x1"))
    assert A == ParamNCPoly.from_ncpoly(NCPoly.one(2)) == B
    assert parametric_intertwiner(P("x1"), P("x2")) is None


def test_parametric_intertwiner_on_worked_pair():
    f, g = P(WORKED_F), P(WORKED_G)
    A, B = parametric_intertwiner(f, g)
    T = ParamNCPoly.t(2)
    assert (f - T) * A == B * (g - T)
    a = t_substitute_right(A, g)
    assert f * a == a * g and a.degree == 4


def test_t_substitute_right_examples():
    h = P("x1*x2")
    assert t_substitute_right(ParamNCPoly.from_slices([NCPoly.zero(2), NCPoly.one(2)]), P("x1")) == P("x1")
    assert t_substitute_right(ParamNCPoly.from_slices([P("x1"), P("x2")]), h) == P("x1 + x2*x1*x2")
    assert t_substitute_right(ParamNCPoly.from_ncpoly(P("x1 - 3")), h) == P("x1 - 3")


@settings(max_examples=30, deadline=None)
@given(st.lists(nc_polys(max_deg=2, max_terms=3), min_size=1, max_size=3), nc_polys(max_deg=2, max_terms=3))
def test_t_division_identity(slices, h):
    A = ParamNCPoly.from_slices(slices)
    C, a = t_division(A, h)
    T = ParamNCPoly.t(2)
    assert A - C * (T - h) == ParamNCPoly.from_ncpoly(a)


def test_uni_decompose_through_examples():
    assert uni_decompose_through(t * t, t**4 + 2 * t * t) == t * t + 2 * t
    p2 = t**3 - t + 5
    assert uni_decompose_through(t, p2) == p2
    assert uni_decompose_through(t * t, t**3) is None


@given(st.lists(small_rationals, min_size=2, max_size=3), st.lists(small_rationals, min_size=1, max_size=3))
def test_uni_decompose_round_trip(p1c, pc):
    p1, p = UniPoly(p1c), UniPoly(pc)
    if p1.degree < 1:
        return
    q = uni_decompose_through(p1, p.compose(p1))
    assert q is not None and q.compose(p1) == p.compose(p1)


def test_eig_cert_examples():
    f, g = P(WORKED_F), P(WORKED_G)
    c = eig_cert(f, g)
    assert c.p == t and c.h == g and f * c.a == c.a * g
    c = eig_cert(P("x1", 1), P("x1^2", 1))
    assert (c.a, c.h, c.p) == (NCPoly.one(1), P("x1", 1), t * t)
    with pytest.raises(NotIncluded) as exc:
        eig_cert(P("x1"), P("x2"))
    assert exc.value.stage == "no_intertwiner"


def test_eig_cert_degree_stage():
    with pytest.raises(NotIncluded) as exc:
        eig_cert(P("x1*x2 + x2"), P("x1"))
    assert exc.value.stage == "degree"


def test_eig_cert_composite_target():
    """g = q(f') with f' eigen-equivalent to f: the certificate routes through p = q."""
    f, fp = P(WORKED_F), P(WORKED_G)
    g = fp * fp - fp * 3
    c = eig_cert(f, g)
    assert c.verify(f, g) and c.p == t * t - 3 * t


def test_eig_equiv_examples():
    f, g = P(WORKED_F), P(WORKED_G)
    a = eig_equiv(f, g)
    assert f * a == a * g and not a.is_zero()
    assert eig_equiv(f, f) == NCPoly.one(2)
    with pytest.raises(NotEquivalent):
        eig_equiv(P("x1", 1), P("x1^2", 1))
    with pytest.raises(NotEquivalent):
        eig_equiv(P("x1"), P("x2"))


def test_certificates_imply_equal_determinant_profiles():
    cases = [(P(WORKED_F), P(WORKED_G)), (P("x1*x2 + 1"), P("x2*x1 + 1")), (P("x1", 1), P("x1^3 - x1", 1))]
    for f, g in cases:
        c = eig_cert(f, g)
        for n in (2, 3, 4):
            assert det_profile_equal(f, c.h, n, trials=3, seed=n).equal


def test_matrix_tuple_json_round_trip():
    X = random_tuple(2, 3, random.Random(1))
    assert MatrixTuple.from_json(X.to_json()) == X
    with pytest.raises(ValueError):
        MatrixTuple.from_lists([[[1, 2], [3, 4]], [[1]]])
