"""Exact linear algebra over Q and Q[t].

Matrices are plain lists of rows. Rational entries are ``Fraction``; entries of
parametric matrices are ``UniPoly`` in the central parameter ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .unipoly import UniPoly, gcd as upoly_gcd

RatMatrix = list[list[Fraction]]
PolyMatrix = list[list[UniPoly]]
Vector = list[Fraction]


def to_matrix(rows: Sequence[Sequence]) -> RatMatrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> RatMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> RatMatrix:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    if A and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in matmul")
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt] for row in A]


def matadd(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matscale(c, A: RatMatrix) -> RatMatrix:
    c = Fraction(c)
    return [[c * a for a in row] for row in A]


def mattranspose(A: RatMatrix) -> RatMatrix:
    return [list(col) for col in zip(*A)]


def matvec(A: RatMatrix, v: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in A]


def trace(A: RatMatrix) -> Fraction:
    return sum((A[i][i] for i in range(len(A))), Fraction(0))


def is_symmetric_matrix(A: RatMatrix) -> bool:
    n = len(A)
    return all(len(row) == n for row in A) and all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


# --- sparse Gauss-Jordan over Q --------------------------------------------


def echelon(
    rows: Sequence[dict[int, Fraction]],
    rhs: Sequence[Any] | None = None,
    sub: Callable[[Any, Fraction, Any], Any] | None = None,
    scale: Callable[[Any, Fraction], Any] | None = None,
) -> tuple[dict[int, tuple[dict[int, Fraction], Any]], list[Any]]:
    """Reduced row echelon form of sparse rows, carrying an optional right-hand side.

    Right-hand sides may be any objects; ``sub(a, c, b)`` must return ``a - c*b`` and
    ``scale(a, c)`` must return ``c*a``. Returns ``(pivots, residuals)`` where
    ``pivots`` maps pivot column -> (fully reduced row with pivot entry 1, rhs) and
    ``residuals`` collects the right-hand sides of rows that reduced to zero.
    """
    if rhs is None:
        rhs = [None] * len(rows)
        sub = lambda a, c, b: None  # noqa: E731
        scale = lambda a, c: None  # noqa: E731
    pivots: dict[int, tuple[dict[int, Fraction], Any]] = {}
    residuals: list[Any] = []
    for row0, b0 in zip(rows, rhs):
        row = {k: v for k, v in row0.items() if v}
        b = b0
        for col in [k for k in row if k in pivots]:
            c = row.get(col)
            if not c:
                continue
            prow, pb = pivots[col]
            for k, v in prow.items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b = sub(b, c, pb)
        if not row:
            residuals.append(b)
            continue
        col = min(row)
        inv = 1 / row[col]
        row = {k: v * inv for k, v in row.items()}
        b = scale(b, inv)
        # keep existing pivot rows reduced in the new pivot column
        for pc, (prow, pb) in list(pivots.items()):
            c = prow.get(col)
            if c:
                for k, v in row.items():
                    nv = prow.get(k, 0) - c * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
                pivots[pc] = (prow, sub(pb, c, b))
        pivots[col] = (row, b)
    return pivots, residuals


def _sparse_rows(M: Sequence[Sequence]) -> list[dict[int, Fraction]]:
    return [{j: Fraction(v) for j, v in enumerate(row) if v} for row in M]


def _ncols(M: Sequence[Sequence], ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    return len(M[0]) if M else 0


def rank(M: Sequence[Sequence]) -> int:
    pivots, _ = echelon(_sparse_rows(M))
    return len(pivots)


def kernel_from_pivots(pivots: dict[int, tuple[dict[int, Fraction], Any]], ncols: int) -> list[Vector]:
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc, (prow, _) in pivots.items():
            c = prow.get(f)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def kernel(M: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of the right null space; one vector per free column."""
    n = _ncols(M, ncols)
    pivots, _ = echelon(_sparse_rows(M))
    return kernel_from_pivots(pivots, n)


def kernel_sparse(rows: Sequence[dict[int, Fraction]], ncols: int) -> list[Vector]:
    pivots, _ = echelon(rows)
    return kernel_from_pivots(pivots, ncols)


def solve(M: Sequence[Sequence], rhs: Sequence, ncols: int | None = None) -> tuple[Vector, list[Vector]] | None:
    """Particular solution and kernel basis of ``M x = rhs``; ``None`` if inconsistent."""
    n = _ncols(M, ncols)
    if len(rhs) != len(M):
        raise ValueError(f"rhs has length {len(rhs)}, matrix has {len(M)} rows")
    rows = _sparse_rows(M)
    pivots, residuals = echelon(
        rows,
        [Fraction(b) for b in rhs],
        lambda a, c, b: a - c * b,
        lambda a, c: a * c,
    )
    if any(r != 0 for r in residuals):
        return None
    x = [Fraction(0)] * n
    for pc, (_, b) in pivots.items():
        x[pc] = b
    return x, kernel_from_pivots(pivots, n)


def row_reduce_basis(vectors: Sequence[Sequence[Fraction]], order: Sequence[int] | None = None) -> list[Vector]:
    """Reduced echelon basis of the span of ``vectors``.

    ``order`` lists coordinate indices by priority: pivots are taken at the
    earliest coordinate in that order. Rows are returned in pivot order.
    """
    if not vectors:
        return []
    n = len(vectors[0])
    order = list(range(n)) if order is None else list(order)
    pos = {c: i for i, c in enumerate(order)}
    rows = [{pos[j]: Fraction(v) for j, v in enumerate(vec) if v} for vec in vectors]
    pivots, _ = echelon(rows)
    out = []
    for pc in sorted(pivots):
        prow, _ = pivots[pc]
        v = [Fraction(0)] * n
        for k, c in prow.items():
            v[order[k]] = c
        out.append(v)
    return out


# --- symmetric PSD decision --------------------------------------------------


@dataclass
class PSDResult:
    """Outcome of :func:`ldlt_psd`.

    When ``psd`` is true, ``S == sum(w * outer(l, l) for w, l in factors)``.
    Otherwise ``witness`` is a rational vector with ``witness^T S witness < 0``.
    """

    psd: bool
    factors: list[tuple[Fraction, Vector]] = field(default_factory=list)
    witness: Vector | None = None

    @property
    def rank(self) -> int:
        return len(self.factors)


def ldlt_psd(S: Sequence[Sequence]) -> PSDResult:
    """Exact PSD decision by LDL^T with symmetric (largest-diagonal) pivoting."""
    A = to_matrix(S)
    n = len(A)
    if not is_symmetric_matrix(A):
        raise ValueError("ldlt_psd needs a symmetric matrix")
    active = list(range(n))
    factors: list[tuple[Fraction, Vector]] = []
    steps: list[tuple[int, dict[int, Fraction]]] = []
    while active:
        p = max(active, key=lambda i: A[i][i])
        piv = A[p][p]
        if piv <= 0:
            u: dict[int, Fraction] | None = None
            neg = min(active, key=lambda i: A[i][i])
            if A[neg][neg] < 0:
                u = {neg: Fraction(1)}
            else:
                for i in active:
                    for j in active:
                        if i < j and A[i][j] != 0:
                            u = {i: Fraction(1), j: Fraction(-1 if A[i][j] > 0 else 1)}
                            break
                    if u:
                        break
            if u is None:
                break
            witness = _lift_witness(u, steps, n)
            return PSDResult(False, witness=witness)
        col = {i: A[i][p] / piv for i in active}
        vec = [Fraction(0)] * n
        for i, v in col.items():
            vec[i] = v
        factors.append((piv, vec))
        steps.append((p, col))
        active.remove(p)
        for i in active:
            if not col[i]:
                continue
            for j in active:
                if col[j]:
                    A[i][j] -= col[i] * piv * col[j]
    return PSDResult(True, factors=factors)


def _lift_witness(u: dict[int, Fraction], steps, n: int) -> Vector:
    v = dict(u)
    for p, col in reversed(steps):
        v[p] = -sum((col[i] * x for i, x in v.items() if i != p and i in col), Fraction(0))
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = x
    return out


def quad_form(S: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Fraction:
    return sum((v[i] * S[i][j] * v[j] for i in range(len(v)) for j in range(len(v))), Fraction(0))


def is_positive_definite(S: Sequence[Sequence]) -> bool:
    res = ldlt_psd(S)
    return res.psd and res.rank == len(S)


# --- fraction-free elimination over Q[t] -------------------------------------


def _poly_matrix(M: Sequence[Sequence]) -> PolyMatrix:
    return [[e if isinstance(e, UniPoly) else UniPoly([e]) for e in row] for row in M]


def bareiss_rref(M: Sequence[Sequence]) -> tuple[PolyMatrix, list[int], UniPoly]:
    """Fraction-free Gauss-Jordan over Q[t].

    Returns ``(R, pivot_cols, D)``: row ``i < len(pivot_cols)`` of ``R`` has ``D``
    in column ``pivot_cols[i]`` and zeros in every other pivot column; every
    division performed is exact (all entries are minors of ``M``).
    """
    A = _poly_matrix(M)
    m = len(A)
    n = len(A[0]) if A else 0
    pivots: list[int] = []
    divisor = UniPoly([1])
    r = 0
    for c in range(n):
        if r >= m:
            break
        cands = [i for i in range(r, m) if A[i][c]]
        if not cands:
            continue
        i0 = min(cands, key=lambda i: A[i][c].degree)
        A[r], A[i0] = A[i0], A[r]
        piv = A[r][c]
        prow = A[r]
        for i in range(m):
            if i == r:
                continue
            row = A[i]
            a = row[c]
            row_new = []
            for j in range(n):
                val = piv * row[j]
                if a and prow[j]:
                    val = val - a * prow[j]
                row_new.append(val.exquo(divisor) if val else val)
            A[i] = row_new
        divisor = piv
        pivots.append(c)
        r += 1
    return A, pivots, divisor


def param_kernel(M: Sequence[Sequence]) -> list[list[UniPoly]]:
    """Null space of a Q[t] matrix over Q(t), each vector cleared to Q[t] with content 1."""
    if not M:
        return []
    n = len(M[0])
    R, pivots, D = bareiss_rref(M)
    out = []
    for f in range(n):
        if f in pivots:
            continue
        v = [UniPoly() for _ in range(n)]
        v[f] = D
        for i, pc in enumerate(pivots):
            if R[i][f]:
                v[pc] = -R[i][f]
        out.append(_primitive(v))
    return out


def _primitive(v: list[UniPoly]) -> list[UniPoly]:
    g = UniPoly()
    for e in v:
        if e:
            g = upoly_gcd(g, e) if g else e.monic()
    v = [e.exquo(g) for e in v]
    lead = next(e for e in v if e).lc()
    return [e.scale(1 / lead) for e in v]


def poly_matvec(M: Sequence[Sequence[UniPoly]], v: Sequence[UniPoly]) -> list[UniPoly]:
    out = []
    for row in M:
        acc = UniPoly()
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def eval_poly_matrix(M: Sequence[Sequence[UniPoly]], t: Fraction) -> RatMatrix:
    return [[e(Fraction(t)) if e else Fraction(0) for e in row] for row in M]
