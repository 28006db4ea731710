"""Matrix evaluations, characteristic polynomials and eigenlevel-set certificates.

The certificate search (``eig_cert``) never does an open-ended degree search for
the intertwiner ``a``: it solves ``(h1 - t) A = B (h2 - t)`` over Q(t) with x-degree
of A, B below ``deg h1`` and then evaluates ``A`` at ``t = h2`` from the right.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .decide import composite_decompose
from .errors import NoAffineMatch, NotEquivalent, NotIncluded
from .exactla import (
    RatMatrix,
    identity,
    is_symmetric_matrix,
    matadd,
    matmul,
    matscale,
    param_kernel,
    solve,
    trace,
)
from .ncpoly import NCPoly, ParamNCPoly, Word, compose_uni, deglex_key, words_up_to
from .unipoly import UniPoly, rational_nth_root


@dataclass(frozen=True)
class MatrixTuple:
    """d square rational matrices of a common size n."""

    n: int
    mats: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        for M in self.mats:
            if len(M) != self.n or any(len(row) != self.n for row in M):
                raise ValueError(f"every matrix must be {self.n}x{self.n}")

    @classmethod
    def from_lists(cls, mats: Sequence[Sequence[Sequence]]) -> MatrixTuple:
        if not mats:
            raise ValueError("empty matrix tuple")
        conv = tuple(tuple(tuple(Fraction(x) for x in row) for row in M) for M in mats)
        return cls(len(conv[0]), conv)

    @property
    def d(self) -> int:
        return len(self.mats)

    def matrix(self, i: int) -> RatMatrix:
        """The matrix substituted for x_i (1-based)."""
        return [list(row) for row in self.mats[i - 1]]

    def is_symmetric(self) -> bool:
        return all(is_symmetric_matrix([list(r) for r in M]) for M in self.mats)

    def to_json(self) -> dict:
        return {"n": self.n, "matrices": [[[str(x) for x in row] for row in M] for M in self.mats]}

    @classmethod
    def from_json(cls, doc: dict) -> MatrixTuple:
        X = cls.from_lists(doc["matrices"])
        if "n" in doc and doc["n"] != X.n:
            raise ValueError("declared n does not match the matrices")
        return X


def random_tuple(
    d: int, n: int, rng: random.Random, symmetric: bool = False, bound: int = 5, denom: int = 3
) -> MatrixTuple:
    mats = []
    for _ in range(d):
        M = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i if symmetric else 0, n):
                v = Fraction(rng.randint(-bound, bound), rng.randint(1, denom))
                M[i][j] = v
                if symmetric:
                    M[j][i] = v
        mats.append(M)
    return MatrixTuple.from_lists(mats)


def evaluate(f: NCPoly, X: MatrixTuple) -> RatMatrix:
    """f(X): words become matrix products, the constant term a multiple of I."""
    if f.nvars != X.d:
        raise ValueError(f"polynomial has {f.nvars} letters but the tuple has {X.d} matrices")
    n = X.n
    mats = [X.matrix(i) for i in range(1, X.d + 1)]
    cache: dict[Word, RatMatrix] = {(): identity(n)}

    def word_matrix(w: Word) -> RatMatrix:
        if w not in cache:
            cache[w] = matmul(word_matrix(w[:-1]), mats[w[-1] - 1])
        return cache[w]

    out = [[Fraction(0)] * n for _ in range(n)]
    for w, c in f.items():
        out = matadd(out, matscale(c, word_matrix(w)))
    return out


def char_poly(M: Sequence[Sequence]) -> UniPoly:
    """det(lambda I - M) by the Faddeev-LeVerrier recurrence (exact over Q)."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("char_poly needs a square matrix")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    I = identity(n)
    for k in range(1, n + 1):
        Mk = matadd(matmul(A, Mk), matscale(coeffs[n - k + 1], I))
        coeffs[n - k] = -trace(matmul(A, Mk)) / k
    return UniPoly(coeffs)


def eig_member(f: NCPoly, X: MatrixTuple, lam) -> bool:
    """Is ``lam`` an eigenvalue of f(X)?"""
    return char_poly(evaluate(f, X))(Fraction(lam)) == 0


@dataclass
class DetProfile:
    equal: bool
    trials: int
    witness: MatrixTuple | None = None


def det_profile_equal(f: NCPoly, g: NCPoly, n: int, trials: int = 10, seed: int = 0) -> DetProfile:
    """Randomized comparison of char_poly(f(X)) and char_poly(g(X)) at n x n tuples.

    Agreement on every trial is evidence, not proof; a mismatch is a certificate.
    """
    if f.nvars != g.nvars:
        raise ValueError("alphabet sizes differ")
    rng = random.Random(seed)
    for _ in range(trials):
        X = random_tuple(f.nvars, n, rng)
        if char_poly(evaluate(f, X)) != char_poly(evaluate(g, X)):
            return DetProfile(False, trials, X)
    return DetProfile(True, trials)


def normalize_affine(h1: NCPoly, h2: NCPoly, seed: int = 0, validations: int = 3) -> list[tuple[Fraction, Fraction]]:
    """Rational ``(alpha, beta)`` making ``alpha*h2 + beta`` match ``h1`` spectrally.

    Matching the first two power sums at one sample fixes ``alpha**2`` and then
    ``beta``; each candidate must reproduce the full characteristic polynomial
    of ``h1`` at further samples. Sizes escalate from 2 to ``deg + 1``.
    """
    if h1.is_constant() or h2.is_constant():
        raise ValueError("normalize_affine needs nonconstant polynomials")
    if h1.degree != h2.degree:
        raise ValueError(f"degrees differ: {h1.degree} vs {h2.degree}")
    rng = random.Random(seed)
    d = h1.nvars
    for n in range(2, max(h1.degree + 1, 2) + 1):
        for _ in range(4):
            X = random_tuple(d, n, rng)
            A1, A2 = evaluate(h1, X), evaluate(h2, X)
            s1, s2 = trace(A1), trace(matmul(A1, A1))
            r1, r2 = trace(A2), trace(matmul(A2, A2))
            var1, var2 = s2 - s1 * s1 / n, r2 - r1 * r1 / n
            if var2 == 0:
                continue  # h2(X) looks scalar here; resample or grow n
            if var1 == 0:
                raise NoAffineMatch("h1 is spectrally degenerate where h2 is not")
            root = rational_nth_root(var1 / var2, 2)
            if root is None:
                raise NoAffineMatch(f"alpha^2 = {var1 / var2} has no rational square root")
            survivors = []
            for alpha in (root, -root):
                beta = (s1 - alpha * r1) / n
                if all(
                    _spectral_match(h1, h2, alpha, beta, random_tuple(d, m, rng))
                    for m in (n,) * validations
                ):
                    survivors.append((alpha, beta))
            if not survivors:
                raise NoAffineMatch("no candidate survived validation")
            return survivors
    raise NoAffineMatch("h2 evaluated to a scalar-spectrum matrix at every sample")


def _spectral_match(h1: NCPoly, h2: NCPoly, alpha: Fraction, beta: Fraction, X: MatrixTuple) -> bool:
    B = matadd(matscale(alpha, evaluate(h2, X)), matscale(beta, identity(X.n)))
    return char_poly(evaluate(h1, X)) == char_poly(B)


def parametric_intertwiner(h1: NCPoly, h2: NCPoly) -> tuple[ParamNCPoly, ParamNCPoly] | None:
    """Nonzero ``A, B`` in Q[t] (x) Q<x>, x-degree < deg, with (h1 - t) A = B (h2 - t)."""
    if h1.degree != h2.degree or h1.is_constant():
        raise ValueError("parametric_intertwiner needs nonconstant inputs of equal degree")
    d = h1.nvars
    basis = words_up_to(d, h1.degree - 1)
    N = len(basis)
    t = UniPoly.t()
    entries: dict[Word, dict[int, UniPoly]] = {}

    def put(w: Word, j: int, val: UniPoly) -> None:
        row = entries.setdefault(w, {})
        row[j] = row.get(j, UniPoly()) + val

    for j, w in enumerate(basis):
        for u, c in h1.items():
            put(u + w, j, UniPoly([c]))
        put(w, j, -t)
        for u, c in h2.items():
            put(w + u, N + j, UniPoly([-c]))
        put(w, N + j, t)
    rows = [[entries[w].get(j, UniPoly()) for j in range(2 * N)] for w in sorted(entries, key=deglex_key)]
    ker = param_kernel(rows)
    if not ker:
        return None

    def cost(v):
        return (max(e.degree for e in v), max(len(basis[j % N]) for j, e in enumerate(v) if e))

    v = min(ker, key=cost)
    A = ParamNCPoly(d, {basis[j]: v[j] for j in range(N)})
    B = ParamNCPoly(d, {basis[j]: v[N + j] for j in range(N)})
    T = ParamNCPoly.t(d)
    if (h1 - T) * A != B * (h2 - T):
        raise AssertionError("parametric intertwiner failed verification")
    return A, B


def t_division(A: ParamNCPoly, h: NCPoly) -> tuple[ParamNCPoly, NCPoly]:
    """Return ``(C, a)`` with ``A == C (t - h) + a`` and ``a`` free of t.

    With ``A = sum_i A_i t^i`` the remainder is ``sum_i A_i h^i`` because t is central.
    """
    slices = A.slices()
    d = A.nvars
    if not slices:
        return ParamNCPoly(d), NCPoly.zero(d)
    a = NCPoly.zero(d)
    hp = NCPoly.one(d)
    for Ai in slices:
        a = a + Ai * hp
        hp = hp * h
    # C = sum_i A_i sum_{j<i} t^{i-1-j} h^j
    C = ParamNCPoly(d)
    T = ParamNCPoly.t(d)
    powers_h = [NCPoly.one(d)]
    for _ in range(len(slices)):
        powers_h.append(powers_h[-1] * h)
    for i, Ai in enumerate(slices):
        for j in range(i):
            tp = ParamNCPoly.from_ncpoly(Ai * powers_h[j])
            for _ in range(i - 1 - j):
                tp = tp * T
            C = C + tp
    return C, a


def t_substitute_right(A: ParamNCPoly, h: NCPoly) -> NCPoly:
    return t_division(A, h)[1]


def uni_decompose_through(p1: UniPoly, p2: UniPoly) -> UniPoly | None:
    """``p`` with ``p2 == p(p1)``, or ``None`` if p2 is not in Q[p1]."""
    if p1.degree < 1:
        raise ValueError("p1 must be nonconstant")
    if p2.is_zero():
        return UniPoly()
    top = p2.degree // p1.degree
    powers = [UniPoly([1])]
    for _ in range(top):
        powers.append(powers[-1] * p1)
    rows = max(p.degree for p in powers + [p2]) + 1
    M = [[q[i] for q in powers] for i in range(rows)]
    sol = solve(M, [p2[i] for i in range(rows)])
    if sol is None:
        return None
    p = UniPoly(sol[0])
    return p if p.compose(p1) == p2 else None


@dataclass(frozen=True)
class EigenlevelCertificate:
    """``f a == a h`` and ``g == p(h)`` with ``a`` nonzero."""

    a: NCPoly
    h: NCPoly
    p: UniPoly

    def verify(self, f: NCPoly, g: NCPoly) -> bool:
        return bool(self.a) and f * self.a == self.a * self.h and compose_uni(self.p, self.h) == g


def _certificates(f: NCPoly, g: NCPoly, seed: int) -> Iterator[EigenlevelCertificate | NotIncluded]:
    if f.is_constant() or g.is_constant():
        raise ValueError("eigenlevel certificates need nonconstant f and g")
    df, dg = composite_decompose(f), composite_decompose(g)
    p1, h1, p2, h2 = df.p, df.h, dg.p, dg.h
    if h1.degree != h2.degree:
        yield NotIncluded("degree", f"deg h1 = {h1.degree}, deg h2 = {h2.degree}")
        return
    try:
        candidates = normalize_affine(h1, h2, seed)
        fallback = ""
    except NoAffineMatch as exc:
        # identity normalization is still worth one exact attempt
        candidates = [(Fraction(1), Fraction(0))]
        fallback = f" (affine normalization failed: {exc})"
    for alpha, beta in candidates:
        h2n = h2 * alpha + beta
        p2n = p2.compose(UniPoly([-beta / alpha, 1 / alpha]))
        AB = parametric_intertwiner(h1, h2n)
        if AB is None:
            yield NotIncluded("no_intertwiner", f"alpha={alpha}, beta={beta}" + fallback)
            continue
        a = t_substitute_right(AB[0], h2n)
        if a.is_zero() or h1 * a != a * h2n:
            raise AssertionError("right substitution did not produce an intertwiner")
        h = compose_uni(p1, h2n)
        p = uni_decompose_through(p1, p2n)
        if p is None:
            yield NotIncluded("univariate", f"{p2n} is not a polynomial in {p1}")
            continue
        cert = EigenlevelCertificate(a, h, p)
        if not cert.verify(f, g):
            raise AssertionError("eigenlevel certificate failed symbolic verification")
        yield cert


def eig_cert(f: NCPoly, g: NCPoly, seed: int = 0) -> EigenlevelCertificate:
    """Certificate that every eigenlevel set of f lies in one of g; raises NotIncluded."""
    failure = None
    for out in _certificates(f, g, seed):
        if isinstance(out, EigenlevelCertificate):
            return out
        failure = out
    raise failure


def eig_equiv(f: NCPoly, g: NCPoly, seed: int = 0) -> NCPoly:
    """Nonzero ``a`` with ``f a == a g`` when the eigenlevel sets coincide; raises NotEquivalent."""
    failure: NotIncluded | None = None
    found = None
    for out in _certificates(f, g, seed):
        if isinstance(out, NotIncluded):
            failure = out
            continue
        if out.h == g:
            found = out.a
            break
        failure = NotIncluded("profile", f"g = p(h) with p = {out.p}, not the identity")
    if found is None:
        raise NotEquivalent(failure.stage, failure.detail)
    try:
        eig_cert(g, f, seed)
    except NotIncluded as exc:
        raise NotEquivalent("reverse_" + exc.stage, exc.detail) from exc
    if f * found != found * g:
        raise AssertionError("equivalence intertwiner failed verification")
    return found
