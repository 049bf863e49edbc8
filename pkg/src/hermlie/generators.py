"""Seeded generators of valid shear data, metrics and bases for testing.

Valid data is built constructively from the normal-form families (the
closure condition is quadratic, so rejection sampling is hopeless) and then
moved to general position by a rational unitary change of basis and an
independent random compatible metric.  Everything is deterministic in the
seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from . import linalg
from .algebra import LieAlgebra, change_basis, direct_sum, make_algebra, abelian
from .forms import form_from_terms, zero_form
from .hermitian import ComplexStructure, Metric
from .linalg import ONE, ZERO, Matrix
from .normal_forms import (
    Cq,
    KahlerNormalForm,
    SixDNonPureData,
    TypeIINormalForm,
    kahler_normal_form,
    skt_6d_nonpure_normal_form,
    skt_typeII_normal_form,
    sixd_nonpure_table,
)
from .shear import PreShearData, check_complex_shear, pre_shear_from_bracket

PROFILES = ("nilpotent", "typeI", "typeII", "typeIII", "mixed")


def rand_fraction(rng: random.Random, lo: int = -3, hi: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_nonzero_fraction(rng: random.Random, lo: int = -3, hi: int = 3, den: int = 3) -> Fraction:
    while True:
        f = rand_fraction(rng, lo, hi, den)
        if f:
            return f


def _pairs_of(J: ComplexStructure) -> list[tuple[int, int]]:
    """Complex coordinate pairs (a, b) with J e_a = e_b, for pairing-type J."""
    pairs = []
    cols = linalg.columns(J.matrix)
    for a in range(1, J.dim + 1):
        col = cols[a - 1]
        plus = [i + 1 for i, c in enumerate(col) if c == 1]
        if len(plus) == 1 and plus[0] > a:
            pairs.append((a, plus[0]))
    assert len(pairs) == J.dim // 2, "J is not a basis pairing"
    return pairs


def random_unitary(dim: int, rng: random.Random, pairs=None) -> Matrix:
    """A rational orthogonal matrix commuting with the pairing J.

    Built from complex rotations with rational cosine/sine (parametrised
    points on the circle) and rational phases from Pythagorean triples.
    """
    if pairs is None:
        pairs = [(i, i + 1) for i in range(1, dim, 2)]
    m = linalg.identity_matrix(dim)
    npairs = len(pairs)

    def apply_factor(factor: Matrix):
        nonlocal m
        m = linalg.mat_mul(factor, m)

    steps = dim + 2
    for _ in range(steps):
        kind = rng.choice(["rotation", "phase"] if npairs > 1 else ["phase"])
        if kind == "rotation":
            p, q = rng.sample(range(npairs), 2)
            t = rand_fraction(rng)
            c = (1 - t * t) / (1 + t * t)
            s = 2 * t / (1 + t * t)
            rows = [list(r) for r in linalg.identity_matrix(dim)]
            for slot in range(2):  # real and imaginary slots move together
                i = pairs[p][slot] - 1
                j = pairs[q][slot] - 1
                rows[i][i], rows[i][j] = c, -s
                rows[j][i], rows[j][j] = s, c
            apply_factor(linalg.mat(rows))
        else:
            p = rng.randrange(npairs)
            mm = rng.randint(1, 3)
            kk = rng.randint(0, mm)
            a, b, r = mm * mm - kk * kk, 2 * mm * kk, mm * mm + kk * kk
            if a == 0 and b == 0:
                continue
            i, j = pairs[p][0] - 1, pairs[p][1] - 1
            rows = [list(rr) for rr in linalg.identity_matrix(dim)]
            rows[i][i], rows[i][j] = Fraction(a, r), Fraction(-b, r)
            rows[j][i], rows[j][j] = Fraction(b, r), Fraction(a, r)
            apply_factor(linalg.mat(rows))
    return m


def random_compatible_metric(dim: int, J: ComplexStructure, rng: random.Random) -> Metric:
    """A random rational positive definite metric with J^T S J = S."""
    a = tuple(
        tuple(rand_fraction(rng, -1, 1, 2) for _ in range(dim)) for _ in range(dim)
    )
    s0 = linalg.mat_add(
        linalg.mat_mul(linalg.transpose(a), a), linalg.identity_matrix(dim)
    )
    jt = linalg.transpose(J.matrix)
    s = linalg.mat_scale(
        Fraction(1, 2),
        linalg.mat_add(s0, linalg.mat_mul(jt, linalg.mat_mul(s0, J.matrix))),
    )
    return Metric(s)


def _random_11_form(ell: int, rng: random.Random):
    """Random real invariant two-form on 2*ell local coordinates (ell = 2)."""
    x, y, z, w = (rand_fraction(rng, -2, 2, 2) for _ in range(4))
    return form_from_terms(
        4,
        2,
        [((1, 2), x), ((3, 4), y), ((1, 3), z), ((2, 4), z), ((1, 4), w), ((2, 3), -w)],
    )


def _volume_coefficient(form) -> Fraction:
    """c with form ^ form = c * u^{1234} on four local coordinates."""
    from .forms import wedge

    sq = wedge(form, form)
    return sq.coeffs.get((1, 2, 3, 4), ZERO)


def _typeII_params(dim: int, rng: random.Random) -> TypeIINormalForm:
    if dim == 4:
        s, ell = 1, 1
    else:
        s, ell = rng.choice([(2, 1), (1, 2)])
    # a two-dimensional complement carries no room for invariant forms
    # with jointly independent real and imaginary parts
    max_free = 0 if ell == 1 else s
    m_min = max(0, s - max_free)
    m = rng.randint(m_min, s)
    alphas, zs = [], []
    for _ in range(m):
        row = [rand_fraction(rng, -2, 2, 2) for _ in range(2 * ell)]
        if all(c == 0 for c in row):
            row[rng.randrange(2 * ell)] = ONE
        alphas.append(tuple(row))
        zs.append(Cq(rand_fraction(rng, -2, 2, 2), rand_fraction(rng, -2, 2, 2)))
    phis, psis = [], []
    free = s - m
    if free:
        # draw all but the last freely, then balance the volume budget with
        # a final form whose real and imaginary parts stay independent
        budget = ZERO
        zero4 = zero_form(4, 2)
        psi0_re = form_from_terms(4, 2, [((1, 3), 1), ((2, 4), -1)])
        psi0_im = form_from_terms(4, 2, [((1, 4), 1), ((2, 3), 1)])
        for _ in range(free - 1):
            re, im = _random_11_form(2, rng), _random_11_form(2, rng)
            c = Cq(rand_fraction(rng, -1, 1, 2), rand_fraction(rng, -1, 1, 2))
            psi_re = psi0_re.scale(c.re) - psi0_im.scale(c.im)
            psi_im = psi0_re.scale(c.im) + psi0_im.scale(c.re)
            phis.append((re, im))
            psis.append((psi_re, psi_im))
            budget += (
                _volume_coefficient(re)
                + _volume_coefficient(im)
                - _volume_coefficient(psi_re)
                - _volume_coefficient(psi_im)
            )
        for x in (ONE, Fraction(2), Fraction(3)):
            # re = x u12 + y u34 has volume 2xy; im = u13 + u24 has -2
            y = (2 - budget) / (2 * x)
            re = form_from_terms(4, 2, [((1, 2), x), ((3, 4), y)])
            im = form_from_terms(4, 2, [((1, 3), 1), ((2, 4), 1)])
            trial = TypeIINormalForm(
                s, ell, m,
                alphas=tuple(alphas), zs=tuple(zs),
                phis=tuple(phis) + ((re, im),), psis=tuple(psis) + ((zero4, zero4),),
            )
            try:
                skt_typeII_normal_form(trial)
                return trial
            except Exception:
                continue
        raise AssertionError("could not balance the invariant-form budget")
    return TypeIINormalForm(
        s, ell, m, alphas=tuple(alphas), zs=tuple(zs), phis=tuple(phis), psis=tuple(psis)
    )


def _typeI_block_algebra(dim: int, rng: random.Random) -> LieAlgebra:
    """Sums of scaled affine blocks, a Heisenberg block, and abelian padding."""
    blocks = []
    remaining = dim
    # at least one nonabelian block
    use_h3 = dim >= 4 and rng.random() < 0.4
    if use_h3:
        blocks.append(make_algebra(4, [(1, 2, 3, 1)]))
        remaining -= 4
    naff = rng.randint(0 if use_h3 else 1, remaining // 2)
    for _ in range(naff):
        lam = rand_nonzero_fraction(rng)
        blocks.append(make_algebra(2, [(1, 2, 1, -lam)]))  # [JX, X] = lam X
        remaining -= 2
    if remaining:
        blocks.append(abelian(remaining))
    rng.shuffle(blocks)
    return direct_sum(*blocks)


def _typeIII_algebra(dim: int, rng: random.Random) -> tuple[LieAlgebra, ComplexStructure]:
    if dim == 4 and rng.random() < 0.5:
        # [JX, Y] = z Y, [JX, X] = b X on (Y, JY, X, JX)
        z = Cq(rand_fraction(rng, -2, 2, 2), rand_fraction(rng, -2, 2, 2))
        if z.is_zero():
            z = Cq(0, 1)
        b = rand_nonzero_fraction(rng)
        L = sixd_nonpure_table(
            SixDNonPureData(b=(b, ZERO, ZERO, ZERO), z=(z, Cq(0), Cq(0)))
        )
        # restrict to the first four coordinates: drop the inert Z-pair
        table = {
            pair: v[:4]
            for pair, v in L.table.items()
            if pair[0] <= 4 and pair[1] <= 4
        }
        return LieAlgebra(4, table), ComplexStructure.standard(4)
    if dim == 6 and rng.random() < 0.5:
        a = rand_fraction(rng, -2, 2, 2)
        b = rand_fraction(rng, -2, 2, 2)
        if a == 0 and b == 0:
            a = ONE
        c = rand_nonzero_fraction(rng)
        L = make_algebra(
            6,
            [
                (1, 5, 1, -a), (1, 6, 1, -b), (2, 5, 2, -a), (2, 6, 2, -b),
                (3, 5, 3, -c), (4, 5, 4, -c), (3, 6, 4, -c), (4, 6, 3, -c),
            ],
        )
        return L, ComplexStructure.from_pairs(6, [(1, 2), (3, 5), (4, 6)])
    s = 1
    r = dim // 2 - s
    params = KahlerNormalForm(
        "III",
        s,
        r,
        0,
        alphas=tuple(
            tuple(rand_fraction(rng, -2, 2, 2) for _ in range(r)) for _ in range(s)
        ),
        betas=((),) * s,
        lambdas=tuple(rand_nonzero_fraction(rng) for _ in range(r)),
    )
    alphas = [list(row) for row in params.alphas]
    for row in alphas:
        if all(c == 0 for c in row):
            row[0] = ONE
    params = KahlerNormalForm("III", s, r, 0, tuple(tuple(r_) for r_ in alphas), ((),) * s,
                              params.lambdas)
    L, _, J = kahler_normal_form(params)
    return L, J


def _mixed_params(rng: random.Random) -> SixDNonPureData:
    # base family: b = (b0, 0, 0, 0) with z0 on the allowed vertical line
    b0 = rand_nonzero_fraction(rng)
    delta0 = rng.randint(0, 1)
    z0 = Cq(-Fraction(delta0) * b0 / 2, rand_fraction(rng, -2, 2, 2))
    if z0.is_zero():
        z0 = Cq(z0.re, ONE)
    z1 = Cq(0, rand_fraction(rng, -2, 2, 2))
    z2 = Cq(0, rand_fraction(rng, -2, 2, 2))
    base = SixDNonPureData(
        b=(b0, ZERO, ZERO, ZERO), deltas=(delta0, 0, 0), z=(z0, z1, z2)
    )
    if rng.random() < 0.5:
        return base
    # sample w from the kernel of the (linear) closure conditions
    units = []
    for t in range(12):
        w = [Cq(0)] * 6
        comp, is_im = divmod(t, 2)
        w[comp] = Cq(0, 1) if is_im else Cq(1)
        units.append(tuple(w))

    def residual(wvec) -> tuple:
        L = sixd_nonpure_table(
            SixDNonPureData(base.b, base.deltas, base.z, wvec)
        )
        out = []
        n = L.dim
        for i, j, k in combinations(range(1, n + 1), 3):
            ss = L.bracket(L.bracket_basis(i, j), linalg.unit_vec(n, k))
            ss = linalg.add_vec(ss, L.bracket(L.bracket_basis(j, k), linalg.unit_vec(n, i)))
            ss = linalg.add_vec(ss, L.bracket(L.bracket_basis(k, i), linalg.unit_vec(n, j)))
            out.extend(ss)
        return tuple(out)

    cols = [residual(u) for u in units]
    kernel = linalg.nullspace(linalg.matrix_from_columns(cols))
    if not kernel:
        return base
    coeffs = [rand_fraction(rng, -2, 2, 2) for _ in kernel]
    wre = [ZERO] * 12
    for c, k in zip(coeffs, kernel):
        wre = [a + c * b for a, b in zip(wre, k)]
    w = tuple(Cq(wre[2 * t], wre[2 * t + 1]) for t in range(6))
    try:
        skt_6d_nonpure_normal_form(SixDNonPureData(base.b, base.deltas, base.z, w))
    except Exception:
        return base
    return SixDNonPureData(base.b, base.deltas, base.z, w)


def random_complex_shear(
    seed: int, profile: str, dim: int = 6
) -> tuple[PreShearData, Metric, ComplexStructure]:
    """Deterministic valid complex shear data with a compatible metric.

    Profiles pick the construction family; the result is conjugated by a
    random unitary matrix and paired with an independent random compatible
    metric, and always satisfies the closure and integrability equations.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    if dim % 2 or dim < 4:
        raise ValueError("dimension must be even and at least 4")
    if profile == "mixed" and dim != 6:
        raise ValueError("the mixed profile exists only in dimension 6")
    rng = random.Random((seed, profile, dim).__repr__())

    J = ComplexStructure.standard(dim)
    if profile == "nilpotent":
        s, ell = (1, 1) if dim == 4 else (1, 2)
        params = _typeII_params_nilpotent(s, ell, rng)
        # two-dimensional complements only carry degenerate central data,
        # which the type II constructor rightly rejects; build it anyway
        L, _, J = skt_typeII_normal_form(params, _validate=(ell != 1))
    elif profile == "typeI":
        L = _typeI_block_algebra(dim, rng)
    elif profile == "typeII":
        L, _, J = skt_typeII_normal_form(_typeII_params(dim, rng))
    elif profile == "typeIII":
        L, J = _typeIII_algebra(dim, rng)
    else:
        Lj = skt_6d_nonpure_normal_form(_mixed_params(rng))
        L, J = Lj

    q = random_unitary(dim, rng, pairs=_pairs_of(J))
    L = change_basis(L, q)
    data = pre_shear_from_bracket(L)
    g = random_compatible_metric(dim, J, rng)
    report = check_complex_shear(data, J)
    assert report.valid, f"generator produced invalid data for {profile}/{dim}/{seed}"
    return data, g, J


def _typeII_params_nilpotent(s: int, ell: int, rng: random.Random) -> TypeIINormalForm:
    """m = 0 data: the derived algebra is central, so the shear is nilpotent."""
    if ell == 1:
        c = Cq(rand_fraction(rng, -2, 2, 2), rand_fraction(rng, -2, 2, 2))
        if c.is_zero():
            c = Cq(1)
        phis = ((form_from_terms(2, 2, [((1, 2), c.re)]),
                 form_from_terms(2, 2, [((1, 2), c.im)])),)
        psis = ((zero_form(2, 2), zero_form(2, 2)),)
        return TypeIINormalForm(s, ell, 0, phis=phis, psis=psis)
    params = _typeII_params_forced_m0(s, ell, rng)
    return params


def _typeII_params_forced_m0(s: int, ell: int, rng: random.Random) -> TypeIINormalForm:
    assert (s, ell) == (1, 2)
    zero4 = zero_form(4, 2)
    for _ in range(8):
        re = _random_11_form(2, rng)
        im = _random_11_form(2, rng)
        budget = _volume_coefficient(re) + _volume_coefficient(im)
        psi0_re = form_from_terms(4, 2, [((1, 3), 1), ((2, 4), -1)])
        psi0_im = form_from_terms(4, 2, [((1, 4), 1), ((2, 3), 1)])
        # psi ^ conj(psi) for c*psi0 has volume coefficient 4|c|^2
        # so we need budget = 4 (cre^2 + cim^2): representable as a sum of
        # two rational squares only sometimes; retry on failure
        target = budget / 4
        if target < 0:
            continue
        # try target = x^2 with rational x
        num, den = target.numerator, target.denominator
        root_num = _isqrt_exact(num * den)
        if root_num is None:
            continue
        x = Fraction(root_num, den)
        c = Cq(x, 0)
        psi_re = psi0_re.scale(c.re)
        psi_im = psi0_im.scale(c.re)
        params = TypeIINormalForm(
            s, ell, 0, phis=((re, im),), psis=((psi_re, psi_im),)
        )
        try:
            skt_typeII_normal_form(params)
            return params
        except Exception:
            continue
    # fallback: independent parts, each with zero self-wedge
    re = form_from_terms(4, 2, [((1, 2), 1)])
    im = form_from_terms(4, 2, [((3, 4), 1)])
    assert _volume_coefficient(re) + _volume_coefficient(im) == 0
    return TypeIINormalForm(s, ell, 0, phis=((re, im),), psis=((zero4, zero4),))


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = int(n**0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    return None
