"""Buchberger's algorithm over Q and rational-point extraction for small systems.

This is the fall-back solver of the factorization search: the unknowns are the
free parameters left over after graded peeling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceeded
from .exactla import solve
from .mpoly import MPoly
from .unipoly import UniPoly, rational_roots

DEFAULT_BUDGET = 24
MAX_PAIRS = 4000

Exp = tuple[int, ...]
Dense = dict[Exp, Fraction]


def _key(e: Exp) -> tuple[int, Exp]:
    return (sum(e), e)  # deg-lex, earlier variables heavier


def _lead(p: Dense) -> Exp:
    return max(p, key=_key)


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def _monic(p: Dense) -> Dense:
    c = p[_lead(p)]
    return {e: v / c for e, v in p.items()}


def _reduce(p: Dense, basis: list[Dense], leads: list[Exp]) -> Dense:
    p = dict(p)
    rem: Dense = {}
    while p:
        lm = _lead(p)
        lc = p[lm]
        for g, gl in zip(basis, leads):
            if _divides(gl, lm):
                shift = _sub_exp(lm, gl)
                factor = lc / g[gl]
                for e, v in g.items():
                    ne = _add_exp(e, shift)
                    nv = p.get(ne, 0) - factor * v
                    if nv:
                        p[ne] = nv
                    else:
                        p.pop(ne, None)
                break
        else:
            rem[lm] = lc
            del p[lm]
    return rem


def groebner(polys: list[Dense], max_pairs: int = MAX_PAIRS) -> list[Dense]:
    """Reduced deg-lex Groebner basis (monic)."""
    basis = [_monic(p) for p in polys if p]
    if not basis:
        return []
    leads = [_lead(g) for g in basis]
    pairs = list(combinations(range(len(basis)), 2))
    processed = 0
    while pairs:
        # normal selection strategy
        pairs.sort(key=lambda ij: _key(_lcm(leads[ij[0]], leads[ij[1]])), reverse=True)
        i, j = pairs.pop()
        processed += 1
        if processed > max_pairs:
            raise BudgetExceeded(f"Groebner basis needed more than {max_pairs} S-pairs")
        li, lj = leads[i], leads[j]
        l = _lcm(li, lj)
        if l == _add_exp(li, lj):
            continue  # coprime leading monomials
        if any(
            k not in (i, j)
            and _divides(leads[k], l)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue  # chain criterion
        s: Dense = {}
        for g, gl, sign in ((basis[i], li, 1), (basis[j], lj, -1)):
            shift = _sub_exp(l, gl)
            for e, v in g.items():
                ne = _add_exp(e, shift)
                nv = s.get(ne, 0) + sign * v
                if nv:
                    s[ne] = nv
                else:
                    s.pop(ne, None)
        r = _reduce(s, basis, leads)
        if r:
            r = _monic(r)
            basis.append(r)
            leads.append(_lead(r))
            if all(x == 0 for x in leads[-1]):
                return [{leads[-1]: Fraction(1)}]
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    # minimize and interreduce
    keep = []
    for i, li in enumerate(leads):
        if any(_divides(lk, li) and (lk != li or k < i) for k, lk in enumerate(leads) if k != i):
            continue
        keep.append(i)
    mins = [basis[i] for i in keep]
    mleads = [leads[i] for i in keep]
    out = []
    for idx, g in enumerate(mins):
        others = mins[:idx] + mins[idx + 1 :]
        oleads = mleads[:idx] + mleads[idx + 1 :]
        tail = {e: v for e, v in g.items() if e != mleads[idx]}
        red = _reduce(tail, others, oleads)
        red[mleads[idx]] = Fraction(1)
        out.append(red)
    out.sort(key=lambda p: _key(_lead(p)))
    return out


def _to_dense(p: MPoly, order: list[int]) -> Dense:
    pos = {v: i for i, v in enumerate(order)}
    out: Dense = {}
    for m, c in p.terms.items():
        e = [0] * len(order)
        for v, k in m:
            e[pos[v]] = k
        out[tuple(e)] = c
    return out


@dataclass
class GBSolution:
    """Rational points of a polynomial system.

    ``positive_dimensional`` is set when some coordinate was not determined by the
    ideal and had to be fixed by trial values; the listed points are then a sample.
    """

    solutions: list[dict[int, Fraction]] = field(default_factory=list)
    positive_dimensional: bool = False


def _univariate_in_ideal(gb: list[Dense], idx: int, nv: int, max_deg: int) -> UniPoly | None:
    """Minimal polynomial of variable ``idx`` modulo the ideal (normal-form linear algebra)."""
    leads = [_lead(g) for g in gb]
    forms: list[Dense] = []
    power: Dense = {tuple([0] * nv): Fraction(1)}
    unit = tuple(int(k == idx) for k in range(nv))
    for k in range(max_deg + 1):
        nf = _reduce(power, gb, leads)
        forms.append(nf)
        monos = sorted({e for f in forms for e in f})
        M = [[f.get(e, Fraction(0)) for f in forms[:-1]] for e in monos]
        rhs = [-forms[-1].get(e, Fraction(0)) for e in monos]
        if k == 0:
            if not nf:
                return UniPoly([1])
        else:
            sol = solve(M, rhs, ncols=k) if M else ([Fraction(0)] * k, [])
            if sol is not None:
                return UniPoly(list(sol[0]) + [1])
        power = {_add_exp(e, unit): v for e, v in power.items()}
    return None


def _is_zero_dim(leads: list[Exp], nv: int) -> bool:
    for i in range(nv):
        if not any(l[i] > 0 and sum(l) == l[i] for l in leads):
            return False
    return True


def gb_solve(
    equations: list[MPoly],
    budget: int = DEFAULT_BUDGET,
    max_pairs: int = MAX_PAIRS,
    trial_values: tuple[int, ...] = (0, 1, -1, 2, -2),
) -> GBSolution:
    """All rational solutions of a zero-dimensional system (a sample otherwise).

    Raises :class:`BudgetExceeded` when the unknown count exceeds ``budget`` or
    Buchberger exceeds ``max_pairs``.
    """
    eqs = [e for e in equations if e]
    unknowns = sorted(set().union(*(e.variables() for e in eqs))) if eqs else []
    if len(unknowns) > budget:
        raise BudgetExceeded(f"{len(unknowns)} unknowns exceed the budget of {budget}")
    result = GBSolution()
    _solve_rec(eqs, unknowns, {}, result, max_pairs, trial_values)
    uniq = []
    for s in result.solutions:
        if s not in uniq:
            uniq.append(s)
    result.solutions = uniq
    return result


def _solve_rec(eqs, unknowns, partial, result: GBSolution, max_pairs, trials) -> None:
    eqs = [e for e in eqs if e]
    if any(e.is_constant() for e in eqs):
        return
    live = sorted(set().union(*(e.variables() for e in eqs))) if eqs else []
    if not live:
        sol = dict(partial)
        for v in unknowns:
            sol.setdefault(v, Fraction(0))
        result.solutions.append(sol)
        return
    gb = groebner([_to_dense(e, live) for e in eqs], max_pairs=max_pairs)
    nv = len(live)
    leads = [_lead(g) for g in gb]
    if len(gb) == 1 and all(x == 0 for x in leads[0]):
        return
    last = nv - 1
    if _is_zero_dim(leads, nv):
        # dimension of the quotient bounds the minimal polynomial degree
        uni = _univariate_in_ideal(gb, last, nv, _quotient_dim_bound(leads, nv))
        values = rational_roots(uni) if uni is not None and uni.degree > 0 else []
        free = False
    else:
        result.positive_dimensional = True
        values = [Fraction(v) for v in trials]
        free = True
    var = live[last]
    for val in values:
        sub = [e.substitute({var: val}) for e in eqs]
        before = len(result.solutions)
        _solve_rec(sub, unknowns, {**partial, var: val}, result, max_pairs, trials)
        if free and len(result.solutions) > before:
            break


def _quotient_dim_bound(leads: list[Exp], nv: int) -> int:
    bound = 1
    for i in range(nv):
        bound *= min(l[i] for l in leads if l[i] > 0 and sum(l) == l[i])
    return bound
