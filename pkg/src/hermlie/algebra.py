"""Lie algebras over the rationals: structure constants, brackets, subspace
calculus, and basis-independent structural invariants.

Basis vectors are 1-indexed e_1..e_n to match the usual differential-list
notation.  All arithmetic is exact; nothing in this module touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    DimensionMismatchError,
    DuplicateEntryError,
    IndexOutOfRangeError,
    NotValidatedError,
)
from .linalg import ZERO, Matrix, Vector


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n, stored by its reduced-echelon basis.

    The canonical representative makes equality and containment O(1)-ish
    dictionary work; two spans are equal iff their rows coincide.
    """

    ambient_dim: int
    rows: tuple[Vector, ...]

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = [linalg.vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatchError(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
        rows, _ = linalg.rref(vectors)
        return Subspace(ambient_dim, rows)

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, linalg.identity_matrix(ambient_dim))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> tuple[Vector, ...]:
        return self.rows

    def contains(self, v: Sequence) -> bool:
        return linalg.coordinates_in(self.rows, linalg.vec(v)) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.rows)

    def coordinates(self, v: Sequence) -> Vector | None:
        return linalg.coordinates_in(self.rows, linalg.vec(v))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return Subspace.span(a.ambient_dim, a.rows + b.rows)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces via the kernel of [A^T | -B^T]."""
    _check_same_ambient(a, b)
    if not a.rows or not b.rows:
        return Subspace.zero(a.ambient_dim)
    m = tuple(
        tuple(a.rows[i][c] for i in range(len(a.rows)))
        + tuple(-b.rows[j][c] for j in range(len(b.rows)))
        for c in range(a.ambient_dim)
    )
    vectors = []
    for sol in linalg.nullspace(m):
        coeffs = sol[: len(a.rows)]
        v = linalg.zero_vec(a.ambient_dim)
        for c, row in zip(coeffs, a.rows):
            v = linalg.add_vec(v, linalg.scale_vec(c, row))
        vectors.append(v)
    return Subspace.span(a.ambient_dim, vectors)


def orthogonal_complement(s: Subspace, metric_matrix: Matrix, within: Subspace | None = None) -> Subspace:
    """{w in `within` : g(w, s) = 0 for all s}, with g positive definite."""
    if within is None:
        within = Subspace.full(s.ambient_dim)
    _check_same_ambient(s, within)
    if not within.rows:
        return within
    # rows: one equation per basis vector of s, unknowns are coefficients
    # of `within`'s basis.
    gw = [linalg.mat_vec(metric_matrix, w) for w in within.rows]
    eqs = tuple(tuple(linalg.dot(v, gwi) for gwi in gw) for v in s.rows)
    if not eqs:
        return within
    vectors = []
    for sol in linalg.nullspace(eqs):
        v = linalg.zero_vec(s.ambient_dim)
        for c, w in zip(sol, within.rows):
            v = linalg.add_vec(v, linalg.scale_vec(c, w))
        vectors.append(v)
    return Subspace.span(s.ambient_dim, vectors)


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )


@dataclass(frozen=True)
class Fingerprint:
    """Basis-independent necessary invariants for distinguishing algebras."""

    dim: int
    derived_series: tuple[int, ...]
    lower_central_series: tuple[int, ...]
    center_dim: int
    derived_center_dim: int
    unimodular: bool
    nilpotent: bool


class LieAlgebra:
    """A finite-dimensional real Lie algebra with rational structure constants.

    The bracket table is stored sparsely: ``table[(i, j)]`` with i < j holds
    the vector [e_i, e_j]; antisymmetry supplies the rest.
    """

    def __init__(self, dim: int, table: dict[tuple[int, int], Vector]):
        self.dim = dim
        self.table = {
            pair: linalg.vec(v) for pair, v in sorted(table.items()) if not linalg.is_zero_vec(v)
        }
        for (i, j), v in self.table.items():
            if not (1 <= i < j <= dim) or len(v) != dim:
                raise IndexOutOfRangeError(f"bad table entry for pair ({i}, {j})")
        self._jacobi_residual = None
        self._fingerprint = None

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.table == other.table
        )

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.table)})"

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[e_i, e_j] for 1-indexed i, j."""
        if i == j:
            return linalg.zero_vec(self.dim)
        if i < j:
            return self.table.get((i, j), linalg.zero_vec(self.dim))
        return linalg.neg_vec(self.table.get((j, i), linalg.zero_vec(self.dim)))

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatchError("bracket arguments must have the algebra's dimension")
        out = linalg.zero_vec(self.dim)
        for (i, j), v in self.table.items():
            c = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
            if c:
                out = linalg.add_vec(out, linalg.scale_vec(c, v))
        return out

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ad(x) = [x, .] acting on column vectors."""
        cols = [self.bracket(x, linalg.unit_vec(self.dim, j)) for j in range(1, self.dim + 1)]
        return linalg.matrix_from_columns(cols)

    def jacobi_residual(self) -> Fraction:
        """Max-abs coordinate of the cyclic sum over all basis triples."""
        if self._jacobi_residual is None:
            worst = ZERO
            n = self.dim
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    bij = self.bracket_basis(i, j)
                    for k in range(j + 1, n + 1):
                        s = self.bracket(bij, linalg.unit_vec(n, k))
                        s = linalg.add_vec(
                            s, self.bracket(self.bracket_basis(j, k), linalg.unit_vec(n, i))
                        )
                        s = linalg.add_vec(
                            s, self.bracket(self.bracket_basis(k, i), linalg.unit_vec(n, j))
                        )
                        worst = max(worst, max((abs(c) for c in s), default=ZERO))
            self._jacobi_residual = worst
        return self._jacobi_residual

    @property
    def validated(self) -> bool:
        return self.jacobi_residual() == 0

    def require_validated(self):
        if not self.validated:
            raise NotValidatedError(
                f"Jacobi identity fails with residual {self.jacobi_residual()}"
            )

    def structure_constants(self):
        """Iterate (i, j, k, c) over the stored i < j entries."""
        for (i, j), v in self.table.items():
            for k, c in enumerate(v, start=1):
                if c:
                    yield (i, j, k, c)


def make_algebra(dim: int, constants: Iterable[tuple[int, int, int, object]]) -> LieAlgebra:
    """Build an algebra from a list of (i, j, k, c) meaning [e_i,e_j] = c e_k + ...

    Entries with i > j are folded in by antisymmetry; duplicates after
    normalisation are rejected rather than summed.
    """
    if dim < 1:
        raise IndexOutOfRangeError("dimension must be at least 1")
    seen = set()
    rows: dict[tuple[int, int], list[Fraction]] = {}
    for i, j, k, c in constants:
        if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
            raise IndexOutOfRangeError(f"index out of range in entry ({i}, {j}, {k})")
        if i == j:
            raise IndexOutOfRangeError(f"bracket pair indices must differ, got ({i}, {i})")
        c = Fraction(c)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        if (i, j, k) in seen:
            raise DuplicateEntryError(f"duplicate structure constant for ({i}, {j}, {k})")
        seen.add((i, j, k))
        row = rows.setdefault((i, j), [ZERO] * dim)
        row[k - 1] = sign * c
    return LieAlgebra(dim, {pair: tuple(v) for pair, v in rows.items()})


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra(dim, {})


def direct_sum(*algebras: LieAlgebra) -> LieAlgebra:
    """Block direct sum, concatenating the bases in order."""
    for a in algebras:
        a.require_validated()
    dim = sum(a.dim for a in algebras)
    table = {}
    offset = 0
    for a in algebras:
        for (i, j), v in a.table.items():
            padded = (ZERO,) * offset + v + (ZERO,) * (dim - offset - a.dim)
            table[(i + offset, j + offset)] = padded
        offset += a.dim
    return LieAlgebra(dim, table)


def image_of_bracket(L: LieAlgebra) -> Subspace:
    """The derived algebra g' = span of all [e_i, e_j]."""
    return Subspace.span(L.dim, list(L.table.values()))


def bracket_of_subspaces(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace.span(
        L.dim, [L.bracket(u, v) for u in a.basis() for v in b.basis()]
    )


def center(L: LieAlgebra) -> Subspace:
    """{x : [x, e_j] = 0 for all j}."""
    n = L.dim
    eqs = []
    for j in range(1, n + 1):
        ej = linalg.unit_vec(n, j)
        # row per output coordinate: coefficient of x_i is [e_i, e_j]_k
        cols = [L.bracket_basis(i, j) for i in range(1, n + 1)]
        for k in range(n):
            eqs.append(tuple(col[k] for col in cols))
    return Subspace.span(n, linalg.nullspace(tuple(eqs)))


def is_unimodular(L: LieAlgebra) -> bool:
    L.require_validated()
    n = L.dim
    for i in range(1, n + 1):
        m = L.ad(linalg.unit_vec(n, i))
        if sum((m[k][k] for k in range(n)), ZERO) != 0:
            return False
    return True


def is_two_step_solvable(L: LieAlgebra) -> bool:
    """True iff the derived algebra is Abelian (the Abelian case included)."""
    L.require_validated()
    derg = image_of_bracket(L)
    return bracket_of_subspaces(L, derg, derg).dim == 0


def structure_invariants(L: LieAlgebra) -> Fingerprint:
    L.require_validated()
    if L._fingerprint is not None:
        return L._fingerprint

    derived = []
    current = Subspace.full(L.dim)
    while True:
        nxt = bracket_of_subspaces(L, current, current)
        derived.append(nxt.dim)
        if nxt.dim == current.dim or nxt.dim == 0:
            break
        current = nxt

    lower = []
    current = bracket_of_subspaces(L, Subspace.full(L.dim), Subspace.full(L.dim))
    lower.append(current.dim)
    while current.dim:
        nxt = bracket_of_subspaces(L, Subspace.full(L.dim), current)
        if nxt.dim == current.dim:
            break
        current = nxt
        lower.append(current.dim)

    z = center(L)
    fp = Fingerprint(
        dim=L.dim,
        derived_series=tuple(derived),
        lower_central_series=tuple(lower),
        center_dim=z.dim,
        derived_center_dim=intersect(image_of_bracket(L), z).dim,
        unimodular=is_unimodular(L),
        nilpotent=(lower[-1] == 0),
    )
    L._fingerprint = fp
    return fp


def change_basis(L: LieAlgebra, p: Matrix) -> LieAlgebra:
    """Structure constants in the basis f_i = P e_i (P invertible)."""
    p_inv = linalg.inverse(p)
    cols = linalg.columns(p)
    n = L.dim
    table = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            v = linalg.mat_vec(p_inv, L.bracket(cols[i - 1], cols[j - 1]))
            if not linalg.is_zero_vec(v):
                table[(i, j)] = v
    return LieAlgebra(n, table)
