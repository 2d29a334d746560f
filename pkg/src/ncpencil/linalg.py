"""Dense exact linear algebra over a scalar field.

Matrices are lists of rows of Scalars.  Everything is plain Gaussian
elimination with deterministic pivoting (first nonzero entry), which keeps
every basis and every solution reproducible run to run.  Sizes here are tiny
(n rarely above 10), so no cleverness is warranted.
"""

from __future__ import annotations

from .fields import FieldDescriptor, Scalar

__all__ = [
    "identity_matrix",
    "mat_det",
    "mat_mul",
    "matrix_inverse",
    "matrix_rank",
    "null_space",
    "rref",
    "solve",
]


def _clone(rows):
    return [list(r) for r in rows]


def rref(rows, field: FieldDescriptor):
    """Reduced row echelon form; returns (new rows, pivot column list)."""
    m = _clone(rows)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def matrix_rank(rows, field: FieldDescriptor) -> int:
    if not rows:
        return 0
    return len(rref(rows, field)[1])


def null_space(rows, field: FieldDescriptor, ncols: int | None = None):
    """Basis of the right kernel {v : rows @ v = 0}, deterministic order."""
    if ncols is None:
        if not rows:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [
            [field.one() if j == i else field.zero() for j in range(ncols)]
            for i in range(ncols)
        ]
    m, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve(rows, rhs, field: FieldDescriptor):
    """One solution of rows @ v = rhs, or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if not rows:
        return [] if all(b.is_zero() for b in rhs) else None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug, field)
    if ncols in pivots:
        return None  # pivot in the rhs column: inconsistent
    v = [field.zero()] * ncols
    for r, pc in enumerate(pivots):
        v[pc] = m[r][ncols]
    return v


def identity_matrix(n: int, field: FieldDescriptor):
    return [
        [field.one() if i == j else field.zero() for j in range(n)] for i in range(n)
    ]


def matrix_inverse(rows, field: FieldDescriptor):
    """Inverse matrix or None when singular."""
    n = len(rows)
    aug = [list(r) + ident_row for r, ident_row in zip(rows, identity_matrix(n, field))]
    m, pivots = rref(aug, field)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in m[:n]]


def mat_mul(a, b, field: FieldDescriptor):
    n, k = len(a), len(b)
    p = len(b[0]) if k else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = field.zero()
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_det(rows, field: FieldDescriptor) -> Scalar:
    m = _clone(rows)
    n = len(m)
    det = field.one()
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return field.zero()
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                factor = m[i][c] * inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return det
