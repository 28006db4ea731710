"""Centralizers, composite (Bertini) decomposition, stable association, intertwiners.

All of these reduce to kernels of linear maps on coefficient vectors of a
bounded-degree unknown polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded
from .exactla import kernel_sparse, row_reduce_basis
from .factor import is_irreducible
from .groebner import DEFAULT_BUDGET
from .ncpoly import NCPoly, Word, compose_uni, express_in_powers, words_up_to
from .unipoly import UniPoly, rational_roots


@dataclass(frozen=True)
class CompositeDecomposition:
    """``f == p(h)`` with ``h(0) == 0`` and ``h`` not composite."""

    p: UniPoly
    h: NCPoly
    composite: bool


@dataclass(frozen=True)
class StableAssociationWitness:
    """Nonzero ``g1, g2`` with ``f1 * g1 == g2 * f2`` and ``deg gi < deg fi``."""

    g1: NCPoly
    g2: NCPoly


def _solve_linear_map(
    images: list[NCPoly], basis: list[Word], nvars: int, order_key=None
) -> list[NCPoly]:
    """Kernel of ``c -> sum_j c_j images[j]`` mapped back to polynomials over ``basis``.

    The kernel basis is reduced with pivots at the earliest coordinate under
    ``order_key`` (default: highest degree first, then lex).
    """
    rows: dict[Word, dict[int, Fraction]] = {}
    for j, img in enumerate(images):
        for w, c in img.items():
            rows.setdefault(w, {})[j] = c
    ker = kernel_sparse(list(rows.values()), len(basis))
    if not ker:
        return []
    key = order_key or (lambda w: (-len(w), w))
    order = sorted(range(len(basis)), key=lambda j: key(basis[j]))
    reduced = row_reduce_basis(ker, order)
    return [NCPoly.from_vector(nvars, basis, v) for v in reduced]


def centralizer_slice(f: NCPoly, D: int) -> list[NCPoly]:
    """Basis of {p : deg p <= D, p(0) = 0, f p = p f}, highest leading degree first.

    Each basis element has leading coefficient 1 at its deg-lex-leading word, and
    the last element has the smallest degree.
    """
    if f.is_constant():
        raise ValueError("centralizer_slice needs a nonconstant f")
    if D < 1:
        return []
    basis = words_up_to(f.nvars, D, start=1)
    images = []
    for w in basis:
        u = NCPoly.monomial(f.nvars, w)
        images.append(f * u - u * f)
    return _solve_linear_map(images, basis, f.nvars)


def composite_decompose(f: NCPoly) -> CompositeDecomposition:
    """Write ``f = p(h)`` with ``h`` a generator of the centralizer of ``f``."""
    if f.is_constant():
        raise ValueError("composite_decompose needs a nonconstant f")
    W = centralizer_slice(f, f.degree - 1)
    c0 = f.constant_term()
    if not W:
        return CompositeDecomposition(UniPoly([c0, 1]), f - c0, False)
    h = W[-1]
    p = express_in_powers(f, h)
    if p is None:
        raise AssertionError("centralizer generator does not express f; this is a bug")
    if compose_uni(p, h) != f or p.degree * h.degree != f.degree:
        raise AssertionError("composite decomposition failed its round trip")
    return CompositeDecomposition(p, h, p.degree > 1)


def intertwiner_space(f: NCPoly, g: NCPoly, D: int) -> list[NCPoly]:
    """Basis of {b : deg b <= D, f b = b g}."""
    if f.nvars != g.nvars:
        raise ValueError("alphabet sizes differ")
    if D < 0:
        return []
    basis = words_up_to(f.nvars, D)
    images = []
    for w in basis:
        u = NCPoly.monomial(f.nvars, w)
        images.append(f * u - u * g)
    return _solve_linear_map(images, basis, f.nvars)


def stable_association(
    f1: NCPoly, f2: NCPoly, check_irreducible: bool = True, budget: int = DEFAULT_BUDGET
) -> StableAssociationWitness | None:
    """Witness of stable association of two irreducibles, or ``None`` if they are not.

    Stably associated irreducibles have equal degree and admit ``f1 g1 = g2 f2``
    with ``deg gi < deg fi``, so a finite linear system decides the question.
    """
    if f1.is_constant() or f2.is_constant():
        raise ValueError("stable_association needs nonconstant inputs")
    if f1.nvars != f2.nvars:
        raise ValueError("alphabet sizes differ")
    if check_irreducible:
        for f in (f1, f2):
            if not is_irreducible(f, budget):
                raise ValueError(f"stable_association needs irreducible inputs; {f} factors")
    if f1.degree != f2.degree:
        return None
    d = f1.nvars
    b1 = words_up_to(d, f1.degree - 1)
    b2 = words_up_to(d, f2.degree - 1)
    images = [f1 * NCPoly.monomial(d, w) for w in b1]
    images += [-(NCPoly.monomial(d, w) * f2) for w in b2]
    rows: dict[Word, dict[int, Fraction]] = {}
    for j, img in enumerate(images):
        for w, c in img.items():
            rows.setdefault(w, {})[j] = c
    ker = kernel_sparse(list(rows.values()), len(images))
    if not ker:
        return None
    order = sorted(range(len(images)), key=lambda j: (-len((b1 + b2)[j]), j >= len(b1), (b1 + b2)[j]))
    v = row_reduce_basis(ker, order)[-1]
    g1 = NCPoly.from_vector(d, b1, v[: len(b1)])
    g2 = NCPoly.from_vector(d, b2, v[len(b1) :])
    c, g1 = g1.normalized()
    g2 = g2.scale(1 / c)
    if f1 * g1 != g2 * f2 or g1.is_zero() or g2.is_zero():
        raise AssertionError("stable association witness failed verification")
    return StableAssociationWitness(g1, g2)


# --- Bertini sampling report -------------------------------------------------


def random_rational(rng: random.Random, bound: int = 1000) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


@dataclass
class LambdaSample:
    lam: Fraction
    status: str  # "factors", "no_rational_split", "budget_exceeded"
    rational_root: bool | None = None  # composite f only: p - lam has a rational root

    @property
    def factors(self) -> bool | None:
        return {"factors": True, "no_rational_split": False}.get(self.status)


@dataclass
class BertiniReport:
    decomposition: CompositeDecomposition
    seed: int
    samples: list[LambdaSample] = field(default_factory=list)

    @property
    def composite(self) -> bool:
        return self.decomposition.composite

    @property
    def exceptional(self) -> list[Fraction]:
        """Sampled lambdas at which a non-composite f - lambda factors."""
        if self.composite:
            return []
        return [s.lam for s in self.samples if s.status == "factors"]

    @property
    def consistent(self) -> bool:
        """For composite f, every lambda where p - lambda has a rational root must factor."""
        if not self.composite:
            return True
        return all(s.status != "no_rational_split" for s in self.samples if s.rational_root)


def bertini_report(
    f: NCPoly,
    samples: int = 20,
    seed: int = 0,
    lambdas: list[Fraction] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> BertiniReport:
    """Composite test plus irreducibility evidence for ``f - lambda`` at sampled lambdas."""
    dec = composite_decompose(f)
    rng = random.Random(seed)
    lams = list(lambdas) if lambdas is not None else [random_rational(rng) for _ in range(samples)]
    report = BertiniReport(dec, seed)
    for lam in lams:
        lam = Fraction(lam)
        root = None
        if dec.composite:
            root = bool(rational_roots(dec.p - lam))
        try:
            status = "no_rational_split" if is_irreducible(f - lam, budget) else "factors"
        except BudgetExceeded:
            status = "budget_exceeded"
        report.samples.append(LambdaSample(lam, status, root))
    return report
