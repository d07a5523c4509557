"""Exact linear algebra over Q(i): row reduction, rank, kernels, solving.

Matrices are lists of rows of Scalars.  Division in Q(i) is exact, so
plain Gauss-Jordan elimination carries no tolerance questions; pivots are
chosen deterministically (first nonzero entry scanning down).
"""

from __future__ import annotations

from typing import Sequence

from .algebra_core import Scalar

Vector = tuple  # tuple[Scalar, ...]


def as_vector(values: Sequence) -> Vector:
    return tuple(Scalar.coerce(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Scalar.zero(),) * n


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))

def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u: Vector, s) -> Vector:
    s = Scalar.coerce(s)
    return tuple(a * s for a in u)


def vec_is_zero(u: Vector) -> bool:
    return all(a.is_zero() for a in u)


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if not mat[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(rows)[1])


def kernel_basis(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[Vector]:
    """Basis of the right kernel, itself in reduced echelon form."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Scalar.zero()] * ncols
        vec[free] = Scalar.one()
        for row_idx, pcol in enumerate(pivots):
            vec[pcol] = -reduced[row_idx][free]
        basis.append(vec)
    reduced_basis, _ = rref(basis)
    return [tuple(row) for row in reduced_basis if not vec_is_zero(row)]


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]):
    """One exact solution of A x = b, or None when inconsistent."""
    mat = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not mat:
        return ()
    ncols = len(rows[0])
    reduced, pivots = rref(mat)
    if ncols in pivots:
        return None
    x = [Scalar.zero()] * ncols
    for row_idx, pcol in enumerate(pivots):
        x[pcol] = reduced[row_idx][ncols]
    return tuple(x)


def in_span(vectors: Sequence[Vector], target: Vector) -> bool:
    """Exact membership of target in span(vectors)."""
    if vec_is_zero(target):
        return True
    if not vectors:
        return False
    base = rank(list(vectors))
    return rank(list(vectors) + [list(target)]) == base


def spans_equal(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    ra = rank(list(a)) if a else 0
    rb = rank(list(b)) if b else 0
    if ra != rb:
        return False
    joint = [list(v) for v in a] + [list(v) for v in b]
    return (rank(joint) if joint else 0) == ra


def invert(rows: Sequence[Sequence[Scalar]]):
    """Exact inverse of a square matrix, or None when singular."""
    n = len(rows)
    if n == 0:
        return []
    if any(len(r) != n for r in rows):
        return None
    aug = [list(r) + [Scalar.one() if i == j else Scalar.zero() for j in range(n)]
           for i, r in enumerate(rows)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in reduced]
