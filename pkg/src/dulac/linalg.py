"""Exact dense and sparse linear algebra over the Gaussian rationals.

Small and purpose-built: matrix inversion and determinants for the
constant linear parts (dimension stays in single digits), and a sparse
reduced-row-echelon nullspace for the graded centralizer systems.  Being
over a field, plain Gaussian elimination is exact; pivots are chosen by
first nonzero position so results are deterministic.
"""

from __future__ import annotations

from typing import Dict, List, Sequence

from .errors import SingularLinearPartError
from .scalars import ONE, ZERO, GaussianRational

Matrix = List[List[GaussianRational]]
SparseRow = Dict[int, GaussianRational]


def identity_matrix(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[GaussianRational]],
            b: Sequence[Sequence[GaussianRational]]) -> Matrix:
    n, mid, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            total = ZERO
            for k in range(mid):
                if a[i][k] and b[k][j]:
                    total = total + a[i][k] * b[k][j]
            row.append(total)
        out.append(row)
    return out


def mat_inverse(matrix: Sequence[Sequence[GaussianRational]]) -> Matrix:
    n = len(matrix)
    work = [list(row) + identity_matrix(n)[i] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col]), None)
        if pivot_row is None:
            raise SingularLinearPartError("linear part is singular")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        inv = work[col][col].inverse()
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [v - factor * p for v, p in zip(work[r], work[col])]
    return [row[n:] for row in work]


def mat_det(matrix: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    n = len(matrix)
    work = [list(row) for row in matrix]
    det = ONE
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col]), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        det = det * work[col][col]
        inv = work[col][col].inverse()
        for r in range(col + 1, n):
            if work[r][col]:
                factor = work[r][col] * inv
                work[r] = [v - factor * p for v, p in zip(work[r], work[col])]
    return det


def nullspace(rows: Sequence[SparseRow], ncols: int) -> List[SparseRow]:
    """Basis of the kernel of a sparse matrix, as sparse column vectors.

    Rows map column index to coefficient.  The basis is the canonical one
    read off the reduced row echelon form: one vector per free column,
    with a 1 in that column, listed in increasing column order.
    """
    pivots: Dict[int, SparseRow] = {}
    for original in rows:
        row = dict(original)
        while row:
            lead = min(row)
            pivot = pivots.get(lead)
            if pivot is None:
                inv = row[lead].inverse()
                pivots[lead] = {c: v * inv for c, v in row.items()}
                break
            factor = row[lead]
            for c, v in pivot.items():
                acc = row.get(c, ZERO) - factor * v
                if acc:
                    row[c] = acc
                elif c in row:
                    del row[c]
    # Back substitution to full reduced form.
    for lead in sorted(pivots, reverse=True):
        prow = pivots[lead]
        for other_lead, other in pivots.items():
            if other_lead < lead and lead in other:
                factor = other[lead]
                for c, v in prow.items():
                    acc = other.get(c, ZERO) - factor * v
                    if acc:
                        other[c] = acc
                    elif c in other:
                        del other[c]
    basis: List[SparseRow] = []
    for col in range(ncols):
        if col in pivots:
            continue
        vec: SparseRow = {col: ONE}
        for lead, prow in pivots.items():
            coeff = prow.get(col)
            if coeff:
                vec[lead] = -coeff
        basis.append(vec)
    return basis


def solve_exact(matrix: Sequence[Sequence[GaussianRational]],
                rhs: Sequence[GaussianRational]) -> List[GaussianRational]:
    """Solve a square nonsingular system exactly."""
    inv = mat_inverse(matrix)
    return [sum((inv[i][j] * rhs[j] for j in range(len(rhs))), ZERO)
            for i in range(len(rhs))]
