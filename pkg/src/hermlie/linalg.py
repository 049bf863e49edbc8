"""Exact linear algebra over the rationals.

Vectors are tuples of ``fractions.Fraction``, matrices are tuples of row
tuples.  Everything here is pure and allocation-light; dimensions in this
package never exceed ~10, so simple fraction-free-ish Gaussian elimination
is fast enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def vec(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    """Standard basis vector e_i, 1-indexed."""
    return tuple(ONE if j == i - 1 else ZERO for j in range(n))


def add_vec(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub_vec(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale_vec(c, u: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in u)


def neg_vec(u: Sequence) -> Vector:
    return tuple(-a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    # zero-skipping matters: vectors here are mostly sparse
    total = ZERO
    for a, b in zip(u, v, strict=True):
        if a and b:
            total += a * b
    return total


def is_zero_vec(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(unit_vec(n, i + 1) for i in range(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return ((ZERO,) * cols,) * rows


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(add_vec(r, s) for r, s in zip(a, b, strict=True))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(sub_vec(r, s) for r, s in zip(a, b, strict=True))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(scale_vec(c, r) for r in a)


def mat_neg(a: Matrix) -> Matrix:
    return tuple(neg_vec(r) for r in a)


def matrix_from_columns(cols: Sequence[Sequence]) -> Matrix:
    return transpose(tuple(vec(c) for c in cols))


def columns(m: Matrix) -> tuple[Vector, ...]:
    return transpose(m)


def is_zero_matrix(m: Matrix) -> bool:
    return all(is_zero_vec(r) for r in m)


def rref(rows: Iterable[Sequence]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped.

    Returns the canonical nonzero rows and the pivot column indices; the
    result is a canonical representative of the row space.
    """
    work = [list(vec(r)) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots = []
    piv_r = 0
    for col in range(ncols):
        pivot = next((r for r in range(piv_r, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[piv_r], work[pivot] = work[pivot], work[piv_r]
        inv = 1 / work[piv_r][col]
        work[piv_r] = [x * inv for x in work[piv_r]]
        for r in range(len(work)):
            if r != piv_r and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[piv_r])]
        pivots.append(col)
        piv_r += 1
        if piv_r == len(work):
            break
    return tuple(tuple(r) for r in work[:piv_r]), tuple(pivots)


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace(m: Iterable[Sequence]) -> tuple[Vector, ...]:
    """Basis of {x : M x = 0}, in reduced echelon convention."""
    reduced, pivots = rref(m)
    if reduced:
        ncols = len(reduced[0])
    else:
        m = tuple(tuple(r) for r in m)
        ncols = len(m[0]) if m else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for row, pc in zip(reduced, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return tuple(basis)


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """One exact solution of M x = b, or None if inconsistent."""
    rows = [list(r) + [bb] for r, bb in zip(m, vec(b), strict=True)]
    reduced, pivots = rref(rows)
    ncols = len(m[0]) if m else 0
    x = [ZERO] * ncols
    for row, pc in zip(reduced, pivots):
        if pc == ncols:
            return None
        x[pc] = row[ncols]
    return tuple(x)


def det(m: Matrix) -> Fraction:
    n = len(m)
    work = [list(r) for r in m]
    result = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            result = -result
        result *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                f = work[r][col] * inv
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return result


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(r) + list(unit_vec(n, i + 1)) for i, r in enumerate(m)]
    reduced, pivots = rref(aug)
    if len(reduced) < n or pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


def leading_principal_minors(m: Matrix) -> tuple[Fraction, ...]:
    return tuple(det(tuple(row[: k + 1] for row in m[: k + 1])) for k in range(len(m)))


def coordinates_in(vectors: Sequence[Vector], target: Sequence) -> Vector | None:
    """Coefficients expressing ``target`` in ``vectors``, or None."""
    if not vectors:
        return () if is_zero_vec(target) else None
    return solve(matrix_from_columns(vectors), target)
