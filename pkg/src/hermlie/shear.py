"""Two-step solvable algebras from shear data on an Abelian base.

A pair (a, w) with a a subspace of R^{2n} and w an a-valued two-form
vanishing on a x a determines the bracket [x, y] = -w(x, y).  The produced
algebra is two-step solvable with derived algebra im(w), and every
two-step solvable algebra with a complex structure arises this way.

The three metric conditions have equivalent formulations directly on the
data; they are implemented here independently of the differential
computation so the two routes can be checked against each other:

  complex:   Alt(w(w(.,.),.)) = 0  and  w(J.,J.) = w + J(w(J.,.) + w(.,J.))
  Kahler:    Alt(sigma(w(.,.),.)) = 0
  balanced:  Alt(sigma(w(.,.),.)) ^ sigma^{n-2} = 0
  torsion:   Alt(g(w(J.,J.), w(.,.)) + 2 g(w(J w(.,.), J.), .)) = 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from . import linalg
from .algebra import LieAlgebra, Subspace, orthogonal_complement, subspace_sum, intersect
from .errors import (
    InvalidPreShearError,
    JacobiFailedError,
    NotComplexShearDataError,
)
from .forms import KForm, VectorValuedTwoForm, form_power, wedge
from .hermitian import ComplexStructure, Metric
from .linalg import ZERO, Matrix, Vector


@dataclass(frozen=True)
class PreShearData:
    """A subspace together with a compatible vector-valued two-form."""

    dim: int
    a: Subspace
    omega: VectorValuedTwoForm

    def __post_init__(self):
        object.__setattr__(self, "_check_memo", {})

    def normalized(self) -> "PreShearData":
        """Shrink `a` to the image of the form (the derived algebra)."""
        img = self.omega.image()
        return PreShearData(
            self.dim, img, VectorValuedTwoForm(self.dim, img, self.omega.values)
        )


@dataclass(frozen=True)
class PreShearReport:
    valid: bool
    image_violations: tuple[tuple[int, int], ...]
    restriction_violations: tuple[tuple[int, int], ...]


def pre_shear_from_bracket(L: LieAlgebra) -> PreShearData:
    """Reconstruct (a, w) = (derg, -bracket) from a two-step solvable algebra."""
    from .algebra import image_of_bracket

    img = image_of_bracket(L)
    values = {pair: linalg.neg_vec(v) for pair, v in L.table.items()}
    return PreShearData(L.dim, img, VectorValuedTwoForm(L.dim, img, values))


def validate_pre_shear(data: PreShearData) -> PreShearReport:
    """Report-valued check of w|_(a x a) = 0 and im(w) inside a."""
    image_bad = [
        pair for pair, v in data.omega.values.items() if not data.a.contains(v)
    ]
    restriction_bad = []
    basis = data.a.basis()
    for p in range(len(basis)):
        for q in range(p + 1, len(basis)):
            if not linalg.is_zero_vec(data.omega(basis[p], basis[q])):
                restriction_bad.append((p + 1, q + 1))
    return PreShearReport(
        not image_bad and not restriction_bad,
        tuple(image_bad),
        tuple(restriction_bad),
    )


@dataclass(frozen=True)
class ComplexShearReport:
    jacobi_ok: bool
    integrable_ok: bool

    @property
    def valid(self) -> bool:
        return self.jacobi_ok and self.integrable_ok


def check_complex_shear(data: PreShearData, J: ComplexStructure) -> ComplexShearReport:
    memo = data._check_memo
    key = J.matrix
    if key in memo:
        return memo[key]
    if not validate_pre_shear(data).valid:
        raise InvalidPreShearError("not pre-shear data: form does not vanish on a or leaves a")
    n = data.dim
    omega = data.omega
    units = [linalg.unit_vec(n, t) for t in range(1, n + 1)]
    j_units = [J.apply(u) for u in units]
    jacobi_ok = True
    for i, j, k in combinations(range(1, n + 1), 3):
        s = omega(omega.on_basis(i, j), units[k - 1])
        s = linalg.add_vec(s, omega(omega.on_basis(j, k), units[i - 1]))
        s = linalg.add_vec(s, omega(omega.on_basis(k, i), units[j - 1]))
        if not linalg.is_zero_vec(s):
            jacobi_ok = False
            break
    integrable_ok = True
    for i, j in combinations(range(1, n + 1), 2):
        jei, jej = j_units[i - 1], j_units[j - 1]
        lhs = omega(jei, jej)
        rhs = linalg.add_vec(
            omega.on_basis(i, j),
            J.apply(linalg.add_vec(omega(jei, units[j - 1]), omega(units[i - 1], jej))),
        )
        if lhs != rhs:
            integrable_ok = False
            break
    report = ComplexShearReport(jacobi_ok, integrable_ok)
    memo[key] = report
    return report


def build_shear(data: PreShearData) -> LieAlgebra:
    """The algebra [x, y] = -w(x, y); requires the quadratic closure condition."""
    if not validate_pre_shear(data).valid:
        raise InvalidPreShearError("not pre-shear data")
    table = {pair: linalg.neg_vec(v) for pair, v in data.omega.values.items()}
    L = LieAlgebra(data.dim, table)
    if not L.validated:
        raise JacobiFailedError(
            f"shear data does not close: Jacobi residual {L.jacobi_residual()}"
        )
    return L


def _require_complex(data: PreShearData, J: ComplexStructure) -> None:
    rep = check_complex_shear(data, J)
    if not rep.valid:
        raise NotComplexShearDataError(
            f"shear data equations fail (jacobi_ok={rep.jacobi_ok}, integrable_ok={rep.integrable_ok})"
        )


def _sigma_matrix(g: Metric, J: ComplexStructure) -> Matrix:
    return linalg.mat_mul(linalg.transpose(J.matrix), g.matrix)


def shear_condition(data: PreShearData, g: Metric, J: ComplexStructure, kind: str) -> bool:
    """Evaluate the metric condition directly on the shear data, exactly.

    ``kind`` is one of "kahler", "balanced", "skt".  The flat structure
    (g, J) may be any compatible pair; it is the one transported to the
    sheared algebra.
    """
    _require_complex(data, J)
    if not g.compatible_with(J):
        raise NotComplexShearDataError("metric is not compatible with J")
    if kind not in ("kahler", "balanced", "skt"):
        raise ValueError(f"unknown condition kind: {kind}")
    n2 = data.dim
    omega = data.omega
    sig = _sigma_matrix(g, J)

    def sigma_pair(x: Vector, y: Vector) -> Fraction:
        return linalg.dot(x, linalg.mat_vec(sig, y))

    if kind in ("kahler", "balanced"):
        units = [linalg.unit_vec(n2, t) for t in range(1, n2 + 1)]
        coeffs = {}
        for i, j, k in combinations(range(1, n2 + 1), 3):
            val = sigma_pair(omega.on_basis(i, j), units[k - 1])
            val += sigma_pair(omega.on_basis(j, k), units[i - 1])
            val += sigma_pair(omega.on_basis(k, i), units[j - 1])
            if val:
                coeffs[(i, j, k)] = val
        tau = KForm(n2, 3, coeffs)
        if kind == "kahler":
            return tau.is_zero()
        n = n2 // 2
        if n < 2:
            return True
        sigma_form = KForm(
            n2,
            2,
            {
                (i, j): sig[i - 1][j - 1]
                for i, j in combinations(range(1, n2 + 1), 2)
                if sig[i - 1][j - 1]
            },
        )
        return wedge(tau, form_power(sigma_form, n - 2)).is_zero()

    # torsion condition: antisymmetrise the quartic expression.  All the
    # building blocks are cached up front; the permutation sum then only
    # does small dot products and lookups.
    units = [linalg.unit_vec(n2, t) for t in range(1, n2 + 1)]
    j_units = [J.apply(u) for u in units]
    gm = g.matrix

    def gv(v: Vector) -> Vector:
        return linalg.mat_vec(gm, v)

    ob = {}       # (x, y) -> w(e_x, e_y), 0-indexed, x < y
    g_ob = {}     # (x, y) -> S w(e_x, e_y)
    jj = {}       # (x, y) -> w(J e_x, J e_y)
    g_tv = {}     # (x, y, z) -> S w(J w(e_x, e_y), J e_z)
    for x in range(n2):
        for y in range(x + 1, n2):
            v = omega.on_basis(x + 1, y + 1)
            ob[(x, y)] = v
            g_ob[(x, y)] = gv(v)
            jj[(x, y)] = omega(j_units[x], j_units[y])
            jv = J.apply(v)
            for z in range(n2):
                g_tv[(x, y, z)] = gv(omega(jv, j_units[z]))

    def pair_sign(x: int, y: int) -> tuple[tuple[int, int], int]:
        return ((x, y), 1) if x < y else ((y, x), -1)

    def term(a: int, b: int, c: int, d: int) -> Fraction:
        kab, sab = pair_sign(a, b)
        kcd, scd = pair_sign(c, d)
        first = sab * scd * linalg.dot(jj[kab], g_ob[kcd])
        second = sab * g_tv[kab + (c,)][d]
        return first + 2 * second

    for quad in combinations(range(n2), 4):
        total = ZERO
        for perm in permutations(range(4)):
            sign = _perm_sign(perm)
            a, b, c, d = (quad[p] for p in perm)
            total += sign * term(a, b, c, d)
        if total:
            return False
    return True


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class _Endo:
    """An endomorphism of `a` in a fixed basis, with block decomposition."""

    def __init__(self, matrix: Matrix):
        self.matrix = matrix


@dataclass(frozen=True)
class ShearOperators:
    a_J: Subspace
    a_r: Subspace
    U_r: Subspace
    U_J: Subspace
    a_basis: tuple[Vector, ...]  # basis of a_J followed by basis of a_r
    A: dict  # a_r basis index -> full matrix of w(JX, .)|_a
    K: dict  # block End(a_J)
    G: dict  # block Hom(a_J, a_r)
    H: dict  # block Hom(a_r, a_J)
    F: dict  # block End(a_r)
    f: dict  # (i, j) -> vector in ambient coordinates
    h: dict
    B: dict  # U_J basis index -> matrix of w(Z, .)|_a


@dataclass(frozen=True)
class OperatorIdentityReport:
    g_blocks_vanish: bool
    k_commutes_with_j: bool
    f_symmetric: bool
    omega_jj_in_a_J: bool
    omega_jj_matches_h: bool
    commutators_vanish: bool
    omega_r_j_invariant: bool

    @property
    def clean(self) -> bool:
        return all(
            (
                self.g_blocks_vanish,
                self.k_commutes_with_j,
                self.f_symmetric,
                self.omega_jj_in_a_J,
                self.omega_jj_matches_h,
                self.commutators_vanish,
                self.omega_r_j_invariant,
            )
        )


def shear_operators(
    data: PreShearData, g: Metric, J: ComplexStructure
) -> tuple[ShearOperators, OperatorIdentityReport]:
    """Operator decomposition of the data and the identities it must satisfy.

    `a` is first shrunk to the image of the form.  For X in a_r the map
    w(JX, .)|_a splits into blocks K, G, H, F along a = a_J + a_r; the
    report records the identities these blocks satisfy for any valid data:
    vanishing G, complex K, symmetric f, the J-pair formula for w on
    J a_r x J a_r, commuting A and B operators, and J-invariance of the
    a_r-part of w on U_J x a_r pairs.
    """
    _require_complex(data, J)
    data = data.normalized()
    n = data.dim
    a = data.a
    omega = data.omega

    a_J = intersect(a, Subspace.span(n, [J.apply(v) for v in a.basis()]))
    a_r = orthogonal_complement(a_J, g.matrix, within=a)
    U_r = subspace_sum(a_r, Subspace.span(n, [J.apply(v) for v in a_r.basis()]))
    U_J = orthogonal_complement(
        subspace_sum(a, Subspace.span(n, [J.apply(v) for v in a.basis()])), g.matrix
    )

    aj_basis, ar_basis = a_J.basis(), a_r.basis()
    a_basis = aj_basis + ar_basis
    nj, nr = len(aj_basis), len(ar_basis)

    def coords(v: Vector) -> Vector:
        c = linalg.coordinates_in(a_basis, v)
        assert c is not None, "operator value left the subspace a"
        return c

    def endo_matrix(source_vector_map) -> Matrix:
        cols = [coords(source_vector_map(u)) for u in a_basis]
        return linalg.matrix_from_columns(cols) if cols else ()

    A, K, G, H, F = {}, {}, {}, {}, {}
    for idx, x in enumerate(ar_basis):
        jx = J.apply(x)
        m = endo_matrix(lambda u: omega(jx, u))
        A[idx] = m
        K[idx] = tuple(tuple(m[i][j] for j in range(nj)) for i in range(nj))
        G[idx] = tuple(tuple(m[nj + i][j] for j in range(nj)) for i in range(nr))
        H[idx] = tuple(tuple(m[i][nj + j] for j in range(nr)) for i in range(nj))
        F[idx] = tuple(tuple(m[nj + i][nj + j] for j in range(nr)) for i in range(nr))

    f_map, h_map = {}, {}
    for i, x in enumerate(ar_basis):
        jx = J.apply(x)
        for j, y in enumerate(ar_basis):
            val = omega(jx, y)
            c = coords(val)
            h_vec = linalg.zero_vec(n)
            for t in range(nj):
                h_vec = linalg.add_vec(h_vec, linalg.scale_vec(c[t], aj_basis[t]))
            f_vec = linalg.sub_vec(val, h_vec)
            f_map[(i, j)] = f_vec
            h_map[(i, j)] = h_vec

    B = {}
    for idx, z in enumerate(U_J.basis()):
        B[idx] = endo_matrix(lambda u: omega(z, u))

    ops = ShearOperators(a_J, a_r, U_r, U_J, a_basis, A, K, G, H, F, f_map, h_map, B)

    # identities every valid datum satisfies
    g_ok = all(linalg.is_zero_matrix(m) for m in G.values())
    if nj:
        j_on_aj = linalg.matrix_from_columns([
            linalg.coordinates_in(aj_basis, J.apply(u)) for u in aj_basis
        ])
        k_ok = all(
            linalg.mat_mul(j_on_aj, K[i]) == linalg.mat_mul(K[i], j_on_aj) for i in K
        )
    else:
        k_ok = True
    f_ok = all(f_map[(i, j)] == f_map[(j, i)] for i in range(nr) for j in range(nr))

    jj_in = True
    jj_match = True
    for i, x in enumerate(ar_basis):
        for j, y in enumerate(ar_basis):
            val = omega(J.apply(x), J.apply(y))
            if not a_J.contains(val):
                jj_in = False
            expect = J.apply(linalg.sub_vec(h_map[(i, j)], h_map[(j, i)]))
            if val != expect:
                jj_match = False

    def commute(m1: Matrix, m2: Matrix) -> bool:
        return linalg.mat_mul(m1, m2) == linalg.mat_mul(m2, m1)

    comm_ok = True
    ops_a = list(A.values())
    ops_b = list(B.values())
    for m1 in ops_a:
        for m2 in ops_a + ops_b:
            if not commute(m1, m2):
                comm_ok = False
    for m1 in ops_b:
        for m2 in ops_b:
            if not commute(m1, m2):
                comm_ok = False
    ks = list(K.values())
    for m1 in ks:
        for m2 in ks:
            if not commute(m1, m2):
                comm_ok = False

    def ar_part(v: Vector) -> Vector:
        c = coords(v)
        out = linalg.zero_vec(n)
        for t in range(nr):
            out = linalg.add_vec(out, linalg.scale_vec(c[nj + t], ar_basis[t]))
        return out

    omr_ok = True
    for z in U_J.basis():
        for x in ar_basis:
            lhs = ar_part(omega(J.apply(z), J.apply(x)))
            rhs = ar_part(omega(z, x))
            if lhs != rhs:
                omr_ok = False

    report = OperatorIdentityReport(g_ok, k_ok, f_ok, jj_in, jj_match, comm_ok, omr_ok)
    return ops, report
