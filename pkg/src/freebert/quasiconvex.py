"""Symmetric polynomials, quadratic Gram analysis and the weak-quasiconvexity classifier.

Everything is exact over Q. Squares appear with positive rational weights,
``h = ell0 + sum(w_k * ell_k**2)``, so no square roots of rationals are needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .decide import composite_decompose
from .eigenlevel import MatrixTuple, evaluate, random_tuple
from .exactla import (
    RatMatrix,
    identity,
    is_positive_definite,
    ldlt_psd,
    matadd,
    matscale,
    quad_form,
    solve,
)
from .ncpoly import NCPoly, compose_uni
from .unipoly import UniPoly, isolate_real_roots, refine

NEG_INFINITY = float("-inf")

WQC_SOHS = "WQC_SOHS"
WQC_CASE_A = "WQC_CASE_A"
WQC_CASE_B = "WQC_CASE_B"
NOT_WQC = "NOT_WQC"
INCONCLUSIVE = "INCONCLUSIVE"


def is_symmetric(f: NCPoly) -> bool:
    return f.transpose() == f


def _linear(nvars: int, vec) -> NCPoly:
    """``vec[0] + sum(vec[i] * x_i)``."""
    terms = {(): vec[0]}
    for i in range(1, nvars + 1):
        terms[(i,)] = vec[i]
    return NCPoly(nvars, terms)


@dataclass(frozen=True)
class QuadForm:
    """``h + beta == v^T S v`` with ``v = (1, x1, ..., xd)``."""

    S: tuple[tuple[Fraction, ...], ...]
    beta: Fraction

    @property
    def nvars(self) -> int:
        return len(self.S) - 1

    def poly(self) -> NCPoly:
        d = self.nvars
        out = NCPoly.zero(d)
        mono = [NCPoly.one(d)] + [NCPoly.var(d, i) for i in range(1, d + 1)]
        for i in range(d + 1):
            for j in range(d + 1):
                if self.S[i][j]:
                    out = out + mono[i] * mono[j] * self.S[i][j]
        return out


def quad_gram(h: NCPoly, beta=0) -> QuadForm:
    d = h.nvars
    if not h.is_zero() and h.degree > 2:
        raise ValueError("quad_gram needs degree at most 2")
    beta = Fraction(beta)
    S = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    S[0][0] = h.constant_term() + beta
    for i in range(1, d + 1):
        S[0][i] = S[i][0] = h.coeff((i,)) / 2
        for j in range(1, d + 1):
            if h.coeff((i, j)) != h.coeff((j, i)):
                raise ValueError(f"quadratic part is not symmetric at x{i}*x{j}")
            S[i][j] = h.coeff((i, j))
    q = QuadForm(tuple(tuple(r) for r in S), beta)
    if q.poly() != h + beta:
        raise AssertionError("Gram matrix does not reproduce the polynomial")
    return q


@dataclass
class SohsResult:
    """Either ``h + beta == sum(w * ell**2)`` or a point ``tau`` with ``h(tau) + beta < 0``."""

    sos: bool
    weights: list[Fraction] = field(default_factory=list)
    ells: list[NCPoly] = field(default_factory=list)
    witness: tuple[Fraction, ...] | None = None

    def expand(self, nvars: int) -> NCPoly:
        out = NCPoly.zero(nvars)
        for w, ell in zip(self.weights, self.ells):
            out = out + ell * ell * w
        return out


def sohs_quadratic(h: NCPoly, beta=0) -> SohsResult:
    """Decide whether the symmetric quadratic ``h + beta`` is a sum of (weighted) squares."""
    d = h.nvars
    beta = Fraction(beta)
    q = quad_gram(h, beta)
    res = ldlt_psd(q.S)
    if res.psd:
        out = SohsResult(True, [w for w, _ in res.factors], [_linear(d, v) for _, v in res.factors])
        if out.expand(d) != h + beta:
            raise AssertionError("sum of squares does not re-expand")
        return out
    v = res.witness
    if v[0] != 0:
        tau = tuple(x / v[0] for x in v[1:])
    else:
        # direction of negative curvature: move far enough along it
        u = v[1:]
        s = Fraction(1)
        while h.eval_scalar([s * x for x in u]) + beta >= 0:
            s *= 2
        tau = tuple(s * x for x in u)
    if not h.eval_scalar(tau) + beta < 0:
        raise AssertionError("NOT_SOS witness does not evaluate negative")
    return SohsResult(False, witness=tau)


@dataclass(frozen=True)
class ConcaveQuadDecomposition:
    """``h == ell0 + sum(w_k * ell_k**2)`` and ``mu = inf h`` over R^d (or NEG_INFINITY)."""

    ell0: NCPoly
    weights: tuple[Fraction, ...]
    ells: tuple[NCPoly, ...]
    mu: Any
    alphas: tuple[Fraction, ...] | None = None  # ell0 - ell0(0) = sum(alpha_k * ell_k) when mu is finite

    def expand(self) -> NCPoly:
        out = self.ell0
        for w, ell in zip(self.weights, self.ells):
            out = out + ell * ell * w
        return out


def concave_quad_decompose(h: NCPoly) -> ConcaveQuadDecomposition | None:
    d = h.nvars
    if h.is_zero():
        return ConcaveQuadDecomposition(h, (), (), Fraction(0))
    if h.degree > 2 or not is_symmetric(h):
        return None
    A = [[h.coeff((i, j)) for j in range(1, d + 1)] for i in range(1, d + 1)]
    res = ldlt_psd(A)
    if not res.psd:
        return None
    ell0 = h.graded_part(0) + h.graded_part(1)
    weights = tuple(w for w, _ in res.factors)
    ells = tuple(_linear(d, [Fraction(0)] + list(v)) for _, v in res.factors)
    c = [h.coeff((i,)) for i in range(1, d + 1)]
    c0 = h.constant_term()
    # stationary point: c + 2 A t = 0
    sol = solve([[2 * a for a in row] for row in A], [-x for x in c])
    if sol is None:
        mu = NEG_INFINITY
        alphas = None
    else:
        t = sol[0]
        mu = c0 + sum((ci * ti for ci, ti in zip(c, t)), Fraction(0)) / 2
        alphas = _completed_square_alphas(ell0 - c0, weights, ells, c0, mu)
    D = ConcaveQuadDecomposition(ell0, weights, ells, mu, alphas)
    if D.expand() != h:
        raise AssertionError("concave quadratic decomposition does not re-expand")
    return D


def _completed_square_alphas(lin: NCPoly, weights, ells, c0: Fraction, mu: Fraction) -> tuple[Fraction, ...]:
    """Express the linear part through the ell_k and confirm mu = c0 - sum(alpha^2 / (4 w))."""
    d = lin.nvars
    if not ells:
        if lin:
            raise AssertionError("finite infimum with a nonzero unsupported linear part")
        alphas: tuple[Fraction, ...] = ()
    else:
        M = [[ell.coeff((i,)) for ell in ells] for i in range(1, d + 1)]
        sol = solve(M, [lin.coeff((i,)) for i in range(1, d + 1)])
        if sol is None:
            raise AssertionError("finite infimum but the linear part is outside the span of the squares")
        alphas = tuple(sol[0])
    expected = c0 - sum((a * a / (4 * w) for a, w in zip(alphas, weights)), Fraction(0))
    if expected != mu:
        raise AssertionError(f"infimum {mu} disagrees with the completed-square value {expected}")
    return alphas


@dataclass(frozen=True)
class IntervalSign:
    """``nonpositive`` on the open interval, or a rational ``tau`` with ``p(tau) > 0``."""

    nonpositive: bool
    tau: Fraction | None = None

    @property
    def verdict(self) -> str:
        return "NONPOSITIVE" if self.nonpositive else "VIOLATED"


def sign_on_interval(p: UniPoly, a, b) -> IntervalSign:
    """Exact test of ``p <= 0`` on the open interval (a, b); ``a`` may be NEG_INFINITY.

    The real roots of p inside (a, b) cut it into open pieces of constant sign,
    so one rational probe per piece decides the question.
    """
    b = Fraction(b)
    unbounded = a == NEG_INFINITY
    if not unbounded:
        a = Fraction(a)
        if not a < b:
            raise ValueError("sign_on_interval needs a < b")
    if p.is_zero():
        return IntervalSign(True)
    lo = None if unbounded else a
    roots = []
    for iv in isolate_real_roots(p, lo, b):
        # shrink so isolating intervals sit strictly inside (a, b)
        while iv[0] != iv[1] and ((lo is not None and iv[0] == lo) or iv[1] == b):
            iv = refine(p, iv, (iv[1] - iv[0]) / 2)
        roots.append(iv)
    cuts = [(iv[0], iv[1]) for iv in roots]
    probes = []
    left = (cuts[0][0] if cuts else b) - 1 if unbounded else a
    edges = [left] + [x for iv in cuts for x in iv] + [b]
    # probes lie between consecutive root intervals: (edges[2i], edges[2i+1])
    for i in range(0, len(edges), 2):
        l, r = edges[i], edges[i + 1]
        if unbounded and i == 0:
            probes.append(l)
        elif l == r:
            probes.append(l)  # shared endpoint of two isolating intervals, not a root
        else:
            probes.append((l + r) / 2)
    for tau in probes:
        if p(tau) > 0:
            return IntervalSign(False, tau)
    return IntervalSign(True)


@dataclass
class WqcVerdict:
    verdict: str
    certificate: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)


def _representations(f: NCPoly) -> list[tuple[UniPoly, NCPoly]]:
    """Candidate ways of writing f = p(h) with h(0) = 0 and h possibly quadratic."""
    t = UniPoly.t()
    reps = [(t, f), (-t, -f)]
    dec = composite_decompose(f)
    if dec.composite:
        p, h = dec.p, dec.h
        reps += [(p, h), (p.compose(-t), -h)]
    return reps


def wqc_classify(f: NCPoly, samples: int = 50, seed: int = 0) -> WqcVerdict:
    """Classify a symmetric f with f(0) = 0 by the sum-of-squares / composite criterion."""
    if not is_symmetric(f):
        raise ValueError("wqc_classify needs a symmetric polynomial")
    if f.constant_term() != 0:
        raise ValueError("wqc_classify needs f(0) = 0")
    d = f.nvars
    sohs = None
    if f.is_zero() or f.degree <= 2:
        sohs = sohs_quadratic(-f, 0)
        if sohs.sos:
            return WqcVerdict(WQC_SOHS, {"weights": sohs.weights, "ells": sohs.ells})
    failures = []
    if not f.is_zero():
        for p, h in _representations(f):
            D = concave_quad_decompose(h)
            if D is None:
                continue
            cert = {"p": p, "h": h, "ell0": D.ell0, "weights": list(D.weights), "ells": list(D.ells), "mu": D.mu}
            if compose_uni(p, D.expand()) != f:
                raise AssertionError("composite certificate does not re-expand")
            if not D.ells:
                return WqcVerdict(WQC_CASE_B, cert)
            if D.mu == 0:
                return WqcVerdict(WQC_CASE_A, cert)  # empty interval
            sign = sign_on_interval(p, D.mu, 0)
            if sign.nonpositive:
                return WqcVerdict(WQC_CASE_A, cert)
            failures.append({"p": p, "h": h, "mu": D.mu, "tau": sign.tau})
    evidence: dict = {"composite_failures": failures}
    if sohs is not None:
        evidence["scalar_witness"] = list(sohs.witness)
        return WqcVerdict(NOT_WQC, {"scalar_witness": list(sohs.witness)}, evidence)
    rng = random.Random(seed)
    for trial in range(max(samples, 50)):
        n = 1 + trial % 3
        X = random_tuple(d, n, rng, symmetric=True)
        fX = evaluate(f, X)
        res = ldlt_psd(matscale(-1, fX))
        if not res.psd:
            w = res.witness
            cert = {"matrices": X, "vector": w, "value": quad_form(fX, w)}
            evidence["trials"] = trial + 1
            return WqcVerdict(NOT_WQC, cert, evidence)
    evidence["trials"] = max(samples, 50)
    evidence["note"] = "f(X) was negative semidefinite at every sample; -f SOHS not decided"
    return WqcVerdict(INCONCLUSIVE, {}, evidence)


def build_lmi(ell0: NCPoly, weights, ells) -> list[RatMatrix]:
    """Coefficients ``[A0, A1, ..., Ad]`` of a pencil whose PSD set is ``1 - ell0 - sum(w ell^2) >= 0``.

    The pencil is [[1 - ell0, w_k ell_k], [w_k ell_k, diag(w_k)]]; its Schur
    complement with respect to the positive diagonal block is the scalar inequality.
    """
    d = ell0.nvars
    for g in [ell0, *ells]:
        if not g.is_zero() and g.degree > 1:
            raise ValueError("build_lmi needs affine linear inputs")
    if any(Fraction(w) <= 0 for w in weights):
        raise ValueError("build_lmi needs positive weights")
    m = len(ells)
    mats = [[[Fraction(0)] * (m + 1) for _ in range(m + 1)] for _ in range(d + 1)]

    def coeff(g: NCPoly, j: int) -> Fraction:
        return g.constant_term() if j == 0 else g.coeff((j,))

    for j in range(d + 1):
        mats[j][0][0] = (1 if j == 0 else 0) - coeff(ell0, j)
        for k, (w, ell) in enumerate(zip(weights, ells), start=1):
            mats[j][0][k] = mats[j][k][0] = Fraction(w) * coeff(ell, j)
            if j == 0:
                mats[j][k][k] = Fraction(w)
    return mats


def lmi_for(f: NCPoly) -> list[RatMatrix] | None:
    D = concave_quad_decompose(f)
    if D is None:
        return None
    return build_lmi(D.ell0, D.weights, D.ells)


def pencil_at(mats: list[RatMatrix], point) -> RatMatrix:
    out = [list(r) for r in mats[0]]
    for Aj, x in zip(mats[1:], point):
        out = matadd(out, matscale(Fraction(x), Aj))
    return out


def domain_sample(f: NCPoly, lam, X: MatrixTuple) -> bool:
    """Pointwise test of ``lam I - f(X) > 0`` (not connected-component membership)."""
    if not X.is_symmetric():
        raise ValueError("domain_sample needs symmetric matrices")
    M = matadd(matscale(Fraction(lam), identity(X.n)), matscale(-1, evaluate(f, X)))
    return is_positive_definite(M)
