"""Factorization of noncommutative polynomials over Q.

If ``f = g h`` then the leading forms multiply, so the coefficient tensor of
``leading_form(f)`` flattened at the split point has rank one. That fixes the
top homogeneous parts of ``g`` and ``h`` up to a scalar. The lower parts are
then solved degree by degree from the top ("graded peeling"): each layer is
linear in the newly introduced coefficients, and whatever stays undetermined
becomes a parameter. Polynomial constraints on those parameters that cannot
be eliminated linearly go to :func:`freebert.groebner.gb_solve`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from .errors import BudgetExceeded
from .exactla import echelon
from .groebner import DEFAULT_BUDGET, gb_solve
from .mpoly import MPoly
from .ncpoly import NCPoly, Word, deglex_key, words_of_length
from .unipoly import rational_nth_root


@dataclass(frozen=True)
class Factorization:
    scalar: Fraction
    factors: tuple[NCPoly, ...]

    def product(self) -> NCPoly:
        out = NCPoly.const(self.factors[0].nvars, self.scalar)
        for g in self.factors:
            out = out * g
        return out

    def __len__(self) -> int:
        return len(self.factors)


def rank1_split(F: NCPoly, k: int) -> tuple[NCPoly, NCPoly] | None:
    """Split a homogeneous ``F`` of degree n as ``g_hat * h_hat`` with deg g_hat = k.

    Works on the d^k x d^(n-k) flattening of the coefficient tensor; returns
    ``None`` unless it has rank one. ``g_hat`` has deg-lex-first coefficient 1.
    """
    if F.is_zero():
        raise ValueError("rank1_split of the zero polynomial")
    if not F.is_homogeneous():
        raise ValueError("rank1_split needs a homogeneous polynomial")
    n = F.degree
    if not 1 <= k <= n - 1:
        raise ValueError(f"split point {k} outside 1..{n - 1}")
    rows: dict[Word, dict[Word, Fraction]] = {}
    for w, c in F.items():
        rows.setdefault(w[:k], {})[w[k:]] = c
    prefixes = sorted(rows)
    first = rows[prefixes[0]]
    s0 = min(first)
    g_terms = {}
    for u in prefixes:
        row = rows[u]
        ratio = row.get(s0, Fraction(0)) / first[s0]
        if ratio == 0 or len(row) != len(first):
            return None
        if any(row.get(s) != ratio * c for s, c in first.items()):
            return None
        g_terms[u] = ratio
    g = NCPoly(F.nvars, g_terms)
    h = NCPoly(F.nvars, first)
    return g, h


class _Peeler:
    """Solves (G + g_{k-1} + ... + g_0)(H + h_{n-k-1} + ... + h_0) = f layer by layer."""

    def __init__(self, f: NCPoly, k: int, G: NCPoly, H: NCPoly):
        self.f = f
        self.d = f.nvars
        self.n = f.degree
        self.k = k
        self.fresh = count()
        # g[a], h[b]: word -> MPoly in the parameters
        self.g: dict[int, dict[Word, MPoly]] = {k: {w: MPoly.const(c) for w, c in G.items()}}
        self.h: dict[int, dict[Word, MPoly]] = {self.n - k: {w: MPoly.const(c) for w, c in H.items()}}
        self.pending: list[MPoly] = []

    def _known_product(self, m: int, skip: set[tuple[int, int]]) -> dict[Word, MPoly]:
        out: dict[Word, MPoly] = {}
        for a, ga in self.g.items():
            b = m - a
            if (a, b) in skip or b not in self.h:
                continue
            for u, cu in ga.items():
                if not cu:
                    continue
                for v, cv in self.h[b].items():
                    if not cv:
                        continue
                    w = u + v
                    out[w] = out.get(w, MPoly()) + cu * cv
        return out

    def run(self) -> bool:
        n, k = self.n, self.k
        G, H = self.g[k], self.h[n - k]
        for m in range(n - 1, -1, -1):
            a_new, b_new = m - (n - k), m - k
            cols: list[tuple[str, Word]] = []
            if 0 <= a_new < k:
                cols += [("g", u) for u in words_of_length(self.d, a_new)]
            if 0 <= b_new < n - k:
                cols += [("h", v) for v in words_of_length(self.d, b_new)]
            col_index = {c: i for i, c in enumerate(cols)}
            known = self._known_product(m, {(a_new, n - k), (k, b_new)})
            rows: dict[Word, dict[int, Fraction]] = {}
            for kind, x in cols:
                j = col_index[(kind, x)]
                if kind == "g":
                    for s, c in H.items():
                        rows.setdefault(x + s, {})[j] = c.constant()
                else:
                    for p, c in G.items():
                        rows.setdefault(p + x, {})[j] = c.constant()
            words = set(rows) | set(known) | {w for w in self.f.words() if len(w) == m}
            order = sorted(words, key=deglex_key)
            rhs = [MPoly.const(self.f.coeff(w)) - known.get(w, MPoly()) for w in order]
            pivots, residuals = echelon(
                [rows.get(w, {}) for w in order],
                rhs,
                lambda a, c, b: a - b * c,
                lambda a, c: a * c,
            )
            params = {j: MPoly.var(next(self.fresh)) for j in range(len(cols)) if j not in pivots}
            values: dict[int, MPoly] = dict(params)
            for pc, (prow, b) in pivots.items():
                val = b
                for j, c in prow.items():
                    if j != pc:
                        val = val - params[j] * c
                values[pc] = val
            if 0 <= a_new < k:
                self.g[a_new] = {}
            if 0 <= b_new < n - k:
                self.h[b_new] = {}
            for (kind, x), j in col_index.items():
                (self.g[a_new] if kind == "g" else self.h[b_new])[x] = values[j]
            self.pending.extend(residuals)
            if not self._simplify():
                return False
        return True

    def _substitute(self, var: int, value: MPoly) -> None:
        sub = {var: value}
        for table in (self.g, self.h):
            for layer in table.values():
                for w, e in layer.items():
                    if var in e.variables():
                        layer[w] = e.substitute(sub)
        self.pending = [e.substitute(sub) for e in self.pending]

    def _simplify(self) -> bool:
        """Drop trivial constraints and eliminate isolated linear parameters; False if inconsistent."""
        while True:
            self.pending = [e for e in self.pending if e]
            if any(e.is_constant() for e in self.pending):
                return False
            for e in self.pending:
                lin = e.isolated_linear_var()
                if lin is not None:
                    v, c = lin
                    rest = e - MPoly.var(v) * c
                    self._substitute(v, rest * (-1 / c))
                    break
            else:
                return True

    def realize(self, point: dict[int, Fraction]) -> tuple[NCPoly, NCPoly]:
        def build(table):
            terms = {}
            for layer in table.values():
                for w, e in layer.items():
                    vals = {v: point.get(v, Fraction(0)) for v in e.variables()}
                    terms[w] = e.evaluate(vals)
            return NCPoly(self.d, terms)

        return build(self.g), build(self.h)


def _pair_key(pair: tuple[NCPoly, NCPoly]):
    g, h = pair
    return ([(deglex_key(w), c) for w, c in g.items()], [(deglex_key(w), c) for w, c in h.items()])


def factor_at_split(f: NCPoly, k: int, budget: int = DEFAULT_BUDGET) -> list[tuple[NCPoly, NCPoly]]:
    """All rational ``(g, h)`` with ``f == g * h``, ``deg g == k`` and g normalized.

    Raises :class:`BudgetExceeded` if the residual nonlinear system is too large.
    """
    n = f.degree
    if n is None or n < 2:
        raise ValueError("factor_at_split needs deg f >= 2")
    if not 1 <= k <= n - 1:
        raise ValueError(f"split point {k} outside 1..{n - 1}")
    split = rank1_split(f.leading_form(), k)
    if split is None:
        return []
    peeler = _Peeler(f, k, *split)
    if not peeler.run():
        return []
    if peeler.pending:
        points = gb_solve(peeler.pending, budget=budget).solutions
    else:
        points = [{}]
    found = []
    for pt in points:
        g, h = peeler.realize(pt)
        if g * h == f and (g, h) not in found:
            found.append((g, h))
    found.sort(key=_pair_key)
    return found


def _factor_rec(f: NCPoly, budget: int) -> list[NCPoly]:
    n = f.degree
    if n <= 1:
        return [f]
    deferred: BudgetExceeded | None = None
    for k in range(1, n):
        try:
            pairs = factor_at_split(f, k, budget)
        except BudgetExceeded as exc:
            deferred = exc
            continue
        if pairs:
            g, h = pairs[0]
            # g is irreducible when every smaller split point was decided negatively
            left = [g] if deferred is None else _factor_rec(g, budget)
            return left + _factor_rec(h, budget)
    if deferred is not None:
        raise deferred
    return [f]


def factor(f: NCPoly, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Factor into irreducibles over Q; each factor has deg-lex-first coefficient 1."""
    if f.is_zero() or f.is_constant():
        raise ValueError("factor needs a nonconstant polynomial")
    scalar, fn = f.normalized()
    factors = _factor_rec(fn, budget)
    out = []
    for g in factors:
        c, gn = g.normalized()
        scalar *= c
        out.append(gn)
    result = Factorization(scalar, tuple(out))
    if result.product() != f:
        raise AssertionError("factorization does not multiply back to the input")
    return result


def is_irreducible(f: NCPoly, budget: int = DEFAULT_BUDGET) -> bool:
    if f.is_zero() or f.is_constant():
        raise ValueError("irreducibility is defined for nonconstant polynomials")
    n = f.degree
    deferred = None
    for k in range(1, n):
        try:
            if factor_at_split(f, k, budget):
                return False
        except BudgetExceeded as exc:
            deferred = exc
    if deferred is not None:
        raise deferred
    return True


def power_decompose_homogeneous(f: NCPoly) -> tuple[NCPoly, int]:
    """Largest ``n`` with ``f == f0**n`` for a homogeneous ``f0`` over Q; ``(f, 1)`` if none."""
    if f.is_zero() or f.is_constant() or not f.is_homogeneous():
        raise ValueError("power_decompose_homogeneous needs a nonconstant homogeneous polynomial")
    deg = f.degree
    for m in range(deg, 1, -1):
        if deg % m:
            continue
        split = rank1_split(f, deg // m)
        if split is None:
            continue
        g = split[0]
        s = f.leading_coeff()
        if g**m * s != f:
            continue
        r = rational_nth_root(s, m)
        if r is not None:
            return g * r, m
    return f, 1
