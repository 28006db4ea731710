import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from freebert.eigenlevel import MatrixTuple
from freebert.exactla import ldlt_psd
from freebert.ncpoly import NCPoly, compose_uni
from freebert.parser import parse
from freebert.quasiconvex import (
    INCONCLUSIVE,
    NEG_INFINITY,
    NOT_WQC,
    WQC_CASE_A,
    WQC_CASE_B,
    WQC_SOHS,
    build_lmi,
    concave_quad_decompose,
    domain_sample,
    is_symmetric,
    lmi_for,
    pencil_at,
    quad_gram,
    sign_on_interval,
    sohs_quadratic,
    wqc_classify,
)
from freebert.unipoly import UniPoly
from polygen import small_rationals

t = UniPoly.t()
F = Fraction


def P(text, d=2):
    return parse(text, d)


@st.composite
def symmetric_quadratics(draw, d=2):
    terms = {(): draw(small_rationals)}
    for i in range(1, d + 1):
        terms[(i,)] = draw(small_rationals)
        for j in range(i, d + 1):
            c = draw(st.integers(-3, 3))
            terms[(i, j)] = F(c)
            terms[(j, i)] = F(c)
    return NCPoly(d, terms)


@st.composite
def psd_quadratics(draw, d=2):
    """Quadratics whose pure quadratic block is a Gram matrix (hence PSD)."""
    vs = draw(st.lists(st.lists(st.integers(-2, 2), min_size=d, max_size=d), min_size=0, max_size=d))
    f = NCPoly.zero(d)
    for v in vs:
        ell = NCPoly(d, {(i + 1,): F(c) for i, c in enumerate(v)})
        f = f + ell * ell
    lin = NCPoly(d, {(i,): draw(small_rationals) for i in range(1, d + 1)})
    return f + lin + draw(small_rationals)


def test_is_symmetric_examples():
    assert is_symmetric(P("x1*x2 + x2*x1"))
    assert not is_symmetric(P("x1*x2"))
    assert is_symmetric(P("x1^3 - 2*x1 + 7", 1))


def test_quad_gram_examples():
    assert quad_gram(P("x1^2 + x2^2")).S == ((0, 0, 0), (0, 1, 0), (0, 0, 1))
    assert quad_gram(P("-x1", 1), F(1, 4)).S == ((F(1, 4), F(-1, 2)), (F(-1, 2), 0))
    assert quad_gram(P("x1^2 - x1", 1), F(1, 4)).S == ((F(1, 4), F(-1, 2)), (F(-1, 2), 1))
    with pytest.raises(ValueError):
        quad_gram(P("x1^3", 1))
    with pytest.raises(ValueError):
        quad_gram(P("x1*x2"))


def test_sohs_quadratic_examples():
    r = sohs_quadratic(P("x1^2 + x2^2"))
    assert r.sos and r.weights == [1, 1] and r.ells == [P("x1"), P("x2")]
    r = sohs_quadratic(P("x1^2 - x1", 1), F(1, 4))
    assert r.sos and r.weights == [1] and r.ells == [P("x1 - 1/2", 1)]
    r = sohs_quadratic(P("x1^2 - x1", 1))
    assert not r.sos and r.witness == (F(1, 2),)


@settings(max_examples=60, deadline=None)
@given(symmetric_quadratics(), small_rationals)
def test_sohs_certificates_verify(h, beta):
    r = sohs_quadratic(h, beta)
    if r.sos:
        assert r.expand(2) == h + beta and all(w > 0 for w in r.weights)
    else:
        assert h.eval_scalar(r.witness) + beta < 0


def test_concave_quad_decompose_examples():
    D = concave_quad_decompose(P("x1 + x1^2", 1))
    assert D.ell0 == P("x1", 1) and D.ells == (P("x1", 1),) and D.mu == F(-1, 4)
    # completed square: -4 mu = sum alpha_k^2 / w_k
    assert D.alphas == (1,) and -4 * D.mu == sum(a * a / w for a, w in zip(D.alphas, D.weights))
    assert concave_quad_decompose(P("x1 + x2^2")).mu == NEG_INFINITY
    assert concave_quad_decompose(P("x1*x2 + x2*x1")) is None


@settings(max_examples=60, deadline=None)
@given(psd_quadratics())
def test_infimum_matches_sympy(h):
    D = concave_quad_decompose(h)
    assert D is not None and D.expand() == h
    y1, y2 = sympy.symbols("y1 y2")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([(y1, y2)[i - 1] for i in w]) for w, c in h.items())
    if not sympy.sympify(expr).free_symbols:
        assert D.mu == expr
        return
    crit = sympy.solve([sympy.diff(expr, y1), sympy.diff(expr, y2)], [y1, y2], dict=True)
    # a convex quadratic is bounded below exactly when it has a stationary point
    if D.mu == NEG_INFINITY:
        assert not crit
    else:
        assert crit
        value = expr.subs(crit[0]).subs({y1: 0, y2: 0})
        assert value == sympy.Rational(D.mu.numerator, D.mu.denominator)
        for a in range(-3, 4):
            for b in range(-3, 4):
                assert expr.subs({y1: a, y2: b}) >= value


def test_sign_on_interval_examples():
    assert sign_on_interval(t, F(-1, 4), 0).nonpositive
    r = sign_on_interval(-t, F(-1, 4), 0)
    assert not r.nonpositive and r.tau == F(-1, 8)
    r = sign_on_interval(t * (t - 1), -1, 0)
    assert not r.nonpositive and t(r.tau) * (r.tau - 1) > 0
    r = sign_on_interval(t * t - 4, NEG_INFINITY, 0)
    assert not r.nonpositive and r.tau < -2
    assert sign_on_interval(-((t + 1) ** 2), NEG_INFINITY, 0).nonpositive


def test_sign_on_interval_narrow_bump():
    # positive only on (1/1000, 2/1000)
    p = -(t - F(1, 1000)) * (t - F(2, 1000))
    r = sign_on_interval(p, 0, 1)
    assert not r.nonpositive and p(r.tau) > 0
    assert sign_on_interval(p, F(2, 1000), 1).nonpositive


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=9), small_rationals, small_rationals)
def test_sign_on_interval_agrees_with_sampling(coeffs, a, b):
    p = UniPoly(coeffs)
    if a == b:
        return
    a, b = min(a, b), max(a, b)
    r = sign_on_interval(p, a, b)
    samples = [a + (b - a) * F(k, 1001) for k in range(1, 1001)]
    if r.nonpositive:
        assert all(p(x) <= 0 for x in samples)
    else:
        assert a < r.tau < b and p(r.tau) > 0


def test_wqc_classify_examples():
    v = wqc_classify(P("-x1^2 - x2^2"))
    assert v.verdict == WQC_SOHS
    v = wqc_classify(P("x1^3", 1))
    assert v.verdict == WQC_CASE_B and v.certificate["p"] == t**3 and v.certificate["h"] == P("x1", 1)
    v = wqc_classify(P("x1 + x1^2", 1))
    assert v.verdict == WQC_CASE_A and v.certificate["p"] == t and v.certificate["mu"] == F(-1, 4)
    v = wqc_classify(P("x1*x2 + x2*x1"))
    assert v.verdict == NOT_WQC
    tau = v.certificate["scalar_witness"]
    assert P("x1*x2 + x2*x1").eval_scalar(tau) > 0


def test_wqc_case_a_certificates_re_expand():
    for text, d in [("x1 + x1^2", 1), ("x1^2 + x2^2", 2), ("-(x1 + x1^2)^2 - (x1 + x1^2)", 1)]:
        f = P(text, d)
        v = wqc_classify(f)
        if v.verdict != WQC_CASE_A:
            continue
        c = v.certificate
        h = c["ell0"]
        for w, ell in zip(c["weights"], c["ells"]):
            h = h + ell * ell * w
        assert compose_uni(c["p"], h) == f
        assert c["mu"] == 0 or sign_on_interval(c["p"], c["mu"], 0).nonpositive


def test_wqc_not_wqc_from_sampling():
    # x1^4 - x1^2 is symmetric, f(0) = 0, positive for large x1, and not p(quadratic) with (a)
    v = wqc_classify(P("x1^4 - x1^2 + x1*x2*x1", 2))
    assert v.verdict == NOT_WQC
    assert v.certificate["value"] > 0


def test_wqc_inconclusive_is_honest():
    v = wqc_classify(P("-x1^4 - x2^4"))
    assert v.verdict == INCONCLUSIVE and v.evidence["trials"] >= 50


def test_wqc_preconditions():
    with pytest.raises(ValueError):
        wqc_classify(P("x1*x2"))
    with pytest.raises(ValueError):
        wqc_classify(P("x1 + 1", 1))


def test_build_lmi_examples():
    assert lmi_for(P("x1^2", 1)) == [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    assert lmi_for(P("x1", 1)) == [[[1]], [[-1]]]
    assert lmi_for(P("x1^2 + x2^2")) == [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
    ]
    with pytest.raises(ValueError):
        build_lmi(P("x1^2", 1), [], [])


@settings(max_examples=30, deadline=None)
@given(psd_quadratics(), st.integers(0, 10**6))
def test_lmi_matches_scalar_inequality(h, seed):
    D = concave_quad_decompose(h)
    mats = build_lmi(D.ell0, D.weights, D.ells)
    rng = random.Random(seed)
    for _ in range(20):
        tau = [F(rng.randint(-20, 20), rng.randint(1, 10)) for _ in range(2)]
        scalar = 1 - h.eval_scalar(tau) >= 0
        assert ldlt_psd(pencil_at(mats, tau)).psd == scalar


def test_domain_sample_examples():
    X = MatrixTuple.from_lists([[[0, 0], [0, F(1, 2)]]])
    assert domain_sample(P("x1^2", 1), 1, X)
    assert not domain_sample(P("x1^2", 1), 1, MatrixTuple.from_lists([[[2]]]))
    zero = MatrixTuple.from_lists([[[0, 0], [0, 0]], [[0, 0], [0, 0]]])
    assert domain_sample(P("x1*x2 + x2*x1 + x1^2"), F(1, 100), zero)
    with pytest.raises(ValueError):
        domain_sample(P("x1", 1), 1, MatrixTuple.from_lists([[[0, 1], [0, 0]]]))
