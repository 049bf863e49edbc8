"""The reproducibility harness: every acceptance criterion as a function.

Each criterion returns a details dict and raises AssertionError with a
description on failure; the runner times them and produces one line per
criterion.  All expected values are exact; numerical tolerances appear
only in the search criterion, as configured there.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import algebra as al
from . import linalg
from .algebra import Subspace, bracket_of_subspaces, intersect, orthogonal_complement
from .catalog import verify_catalog, witness_lists
from .errors import ParameterConstraintViolatedError
from .forms import basis_form, ce_differential, form_from_terms, j_pullback, wedge
from .generators import (
    PROFILES,
    _typeII_params,
    rand_nonzero_fraction,
    random_compatible_metric,
    random_complex_shear,
)
from .hermitian import (
    ComplexStructure,
    Metric,
    balanced_structural,
    classify_metric,
    fingerprint_distinguish,
    fundamental_form,
    hermitian_decomposition,
    kahler_from_skt_and_balanced_typeII,
    normalize_skt_typeII,
    _block_metric,
)
from .normal_forms import (
    Cq,
    KahlerNormalForm,
    TypeIINormalForm,
    kahler_normal_form,
    skt_typeII_normal_form,
)
from .salamon import parse_salamon
from .search import SearchConfig, search_metric
from .shear import build_shear, shear_condition

Q = Fraction


def _counterexample_type_I():
    L = parse_salamon("(0,21,0,0,43,0)")
    J = ComplexStructure.standard(6)
    frame = [
        (1, 0, 0, 0, 0, -1),
        (0, 1, 0, 0, 1, 0),
        (0, 0, 0, 0, 0, 1),
        (0, 0, 0, 0, -1, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
    ]
    return L, J, Metric.identity(6), Metric.from_orthonormal_frame(frame)


def _counterexample_type_III():
    L = parse_salamon("(-15+16,-25+26,2.(35+46),2.(36+45),0,0)")
    J = ComplexStructure.from_pairs(6, [(1, 2), (3, 5), (4, 6)])
    frame = [
        (1, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 1, 0),
        (0, 0, 1, 1, 0, 0),
        (0, 0, 0, 0, 1, 1),
    ]
    return L, J, Metric.identity(6), Metric.from_orthonormal_frame(frame)


def criterion_counterexample_type_I() -> dict:
    """Type I structure with both special metrics and no closed form."""
    L, J, g_std, g_tilt = _counterexample_type_I()
    sigma = fundamental_form(L, g_std, J)
    dsigma = ce_differential(L, sigma)
    assert dsigma == basis_form(6, 3, 4, 6).scale(-1), "d sigma differs from -e^346"
    assert ce_differential(L, j_pullback(J.matrix, dsigma)).is_zero(), "torsion condition fails"
    v_std = classify_metric(L, g_std, J)
    assert v_std.as_dict() == {"kahler": False, "balanced": False, "skt": True}
    sigma_hat = fundamental_form(L, g_tilt, J)
    assert ce_differential(L, wedge(sigma_hat, sigma_hat)).is_zero(), "d(sigma^2) != 0"
    v_tilt = classify_metric(L, g_tilt, J)
    assert v_tilt.as_dict() == {"kahler": False, "balanced": True, "skt": False}
    aff = parse_salamon("(0,21)")
    for r in (1, 2, 3):
        blocks = [aff] * r
        if 6 - 2 * r:
            blocks.append(al.abelian(6 - 2 * r))
        other = al.direct_sum(*blocks)
        assert fingerprint_distinguish(L, other) == "distinct", f"not separated from {r} affine blocks"
    return {"standard": v_std.as_dict(), "tilted": v_tilt.as_dict()}


def criterion_counterexample_type_III() -> dict:
    """Type III structure with both special metrics and no closed form."""
    L, J, g_std, g_tilt = _counterexample_type_III()
    v_std = classify_metric(L, g_std, J)
    assert v_std.skt and not v_std.kahler, "standard metric verdicts wrong"
    v_tilt = classify_metric(L, g_tilt, J)
    assert v_tilt.balanced and not v_tilt.kahler, "tilted metric verdicts wrong"
    dec = hermitian_decomposition(L, g_std, J)
    assert dec.pure_type == "III" and dec.s == 1, f"decomposition {dec.s, dec.r, dec.ell}"
    return {
        "standard": v_std.as_dict(),
        "tilted": v_tilt.as_dict(),
        "decomposition": [dec.s, dec.r, dec.ell],
    }


def criterion_oracle_equivalence(per_cell: int = 56) -> dict:
    """Direct differential verdicts equal the shear-data equations."""
    checked = 0
    for profile in PROFILES:
        dims = (6,) if profile == "mixed" else (4, 6)
        for dim in dims:
            for seed in range(per_cell):
                data, g, J = random_complex_shear(seed, profile, dim)
                L = build_shear(data)
                v = classify_metric(L, g, J)
                for kind in ("kahler", "balanced", "skt"):
                    got = shear_condition(data, g, J, kind)
                    assert got == v[kind], (
                        f"oracle mismatch: {profile}/{dim}/seed {seed}/{kind}: "
                        f"data equation {got}, differential {v[kind]}"
                    )
                checked += 1
    assert checked >= 500
    return {"instances": checked}


def criterion_balanced_structural(count: int = 200) -> dict:
    """Trace/commutator criterion agrees with d(sigma^{n-1}) = 0."""
    rng = random.Random("balanced-structural")
    profiles = [p for p in PROFILES]
    checked = 0
    balanced_seen = 0
    seed = 0
    balanced_pool = [
        (e.algebra, w.metric, e.J)
        for e in witness_lists()
        for w in e.witnesses
        if w.expected["balanced"]
    ]

    def check(L, g, J):
        nonlocal checked, balanced_seen
        direct = classify_metric(L, g, J).balanced
        report = balanced_structural(L, g, J)
        assert report.balanced == direct, f"structural criterion mismatch at instance {checked}"
        # basis independence: a different unitary basis must not change it
        dec = hermitian_decomposition(L, g, J)
        order_vr = list(range(dec.V_r.dim))
        order_vj = list(range(dec.V_J.dim))
        rng.shuffle(order_vr)
        rng.shuffle(order_vj)
        report2 = balanced_structural(L, g, J, order_vr=order_vr, order_vj=order_vj)
        assert report2.balanced == direct, f"basis dependence at instance {checked}"
        balanced_seen += int(direct)
        checked += 1

    while checked < count:
        if checked % 4 == 3:
            L, g, J = balanced_pool[checked % len(balanced_pool)]
            check(L, g, J)
            continue
        profile = profiles[checked % len(profiles)]
        dim = 6 if profile == "mixed" else (4, 6)[checked % 2]
        data, g, J = random_complex_shear(seed, profile, dim)
        seed += 1
        check(build_shear(data), g, J)
    assert balanced_seen > 0, "no balanced instance was exercised"
    return {"instances": checked, "balanced_instances": balanced_seen}


def _random_kahler_params(pure_type: str, rng: random.Random) -> KahlerNormalForm:
    if pure_type == "I":
        r = rng.randint(1, 3)
        ell = rng.randint(0, 3 - r)
        s = 0
    elif pure_type == "II":
        s = rng.randint(1, 2)
        ell = rng.randint(1, 3 - s)
        r = 0
    else:
        s = rng.randint(1, 2)
        r = rng.randint(1, 3 - s)
        ell = 0
    alphas = []
    betas = []
    for _ in range(s):
        row = [rand_nonzero_fraction(rng) if pure_type != "II" else Fraction(0) for _ in range(r)]
        alphas.append(tuple(row))
        brow = [Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(2 * ell)]
        if pure_type == "II" and all(c == 0 for c in brow):
            brow[0] = Fraction(1)
        betas.append(tuple(brow))
    lambdas = tuple(rand_nonzero_fraction(rng) for _ in range(r))
    return KahlerNormalForm(pure_type, s, r, ell, tuple(alphas), tuple(betas), lambdas)


def criterion_kahler_normal_forms(per_type: int = 100) -> dict:
    """Constructor outputs close the fundamental form; guards reject zeros."""
    counts = {}
    for pure_type in ("I", "II", "III"):
        rng = random.Random(f"kahler-{pure_type}")
        for i in range(per_type):
            params = _random_kahler_params(pure_type, rng)
            L, g, J = kahler_normal_form(params)
            assert classify_metric(L, g, J).kahler, f"not closed: {pure_type} draw {i}"
            dec = hermitian_decomposition(L, g, J)
            assert dec.pure_type == pure_type
        counts[pure_type] = per_type
        # dropping a nonvanishing constraint must be rejected
        params = _random_kahler_params(pure_type, rng)
        if pure_type == "I":
            broken = KahlerNormalForm("I", 0, params.r, params.ell, (), (), (Fraction(0),) + params.lambdas[1:])
        elif pure_type == "II":
            zero_beta = ((Fraction(0),) * (2 * params.ell),) + params.betas[1:]
            broken = KahlerNormalForm("II", params.s, 0, params.ell, params.alphas, zero_beta, ())
        else:
            zero_alpha = ((Fraction(0),) * params.r,) + params.alphas[1:]
            broken = KahlerNormalForm("III", params.s, params.r, 0, zero_alpha, params.betas, params.lambdas)
        try:
            kahler_normal_form(broken)
            raise AssertionError(f"zero constraint accepted for type {pure_type}")
        except ParameterConstraintViolatedError:
            pass
    return counts


def criterion_typeII_skt(count: int = 100) -> dict:
    """Type II torsion family: construction, perturbation, normalisation."""
    rng = random.Random("typeII-skt")
    built = 0
    perturbed = 0
    normalized = 0
    i = 0
    while built < count:
        dim = (4, 6)[i % 2]
        params = _typeII_params(dim, random.Random(f"params-{i}"))
        i += 1
        L, g, J = skt_typeII_normal_form(params)
        assert classify_metric(L, g, J).skt, f"constructor output not SKT at draw {i}"
        built += 1

        g2, v_tilde = normalize_skt_typeII(L, J, g)
        d1 = bracket_of_subspaces(L, Subspace.full(L.dim), al.image_of_bracket(L))
        d2 = bracket_of_subspaces(L, v_tilde, v_tilde)
        derg = al.image_of_bracket(L)
        assert al.subspace_sum(d1, d2) == derg, "splitting does not span"
        assert intersect(d1, d2).dim == 0, "splitting is not direct"
        for u in d1.basis():
            for v in d2.basis():
                assert g2.pair(u, v) == 0, "splitting is not orthogonal"
        assert classify_metric(L, g2, J).skt, "normalised metric lost the torsion condition"
        normalized += 1

    zero4 = form_from_terms(4, 2, [])
    while perturbed < count:
        prng = random.Random(f"perturb-{perturbed}")
        # valid base on a four-dimensional complement: u^{12} and u^{34}
        # each have vanishing self-wedge, so the sum constraint holds
        x = abs(rand_nonzero_fraction(prng))
        y = abs(rand_nonzero_fraction(prng))
        params = TypeIINormalForm(
            1, 2, 0,
            phis=((form_from_terms(4, 2, [((1, 2), x)]),
                   form_from_terms(4, 2, [((3, 4), y)])),),
            psis=((zero4, zero4),),
        )
        L, g, J = skt_typeII_normal_form(params)
        assert classify_metric(L, g, J).skt
        # one bump of the invariant form gives it nonzero volume budget
        bump = form_from_terms(4, 2, [((3, 4), rand_nonzero_fraction(prng))])
        bad_phi = (params.phis[0][0] + bump, params.phis[0][1])
        bad = TypeIINormalForm(
            params.s, params.ell, params.m, params.alphas, params.zs,
            (bad_phi,), params.psis,
        )
        try:
            skt_typeII_normal_form(bad)
            raise AssertionError("perturbed constraint accepted")
        except ParameterConstraintViolatedError:
            pass
        L2, g2, J2 = skt_typeII_normal_form(bad, _validate=False)
        assert not classify_metric(L2, g2, J2).skt, f"perturbation kept SKT at draw {perturbed}"
        perturbed += 1
    return {"constructed": built, "perturbed": perturbed, "normalized": normalized}


def criterion_six_dimensional_lists() -> dict:
    """Every catalog verdict reproduces exactly."""
    rows = verify_catalog()
    bad = [r for r in rows if not r[2]]
    assert not bad, f"catalog witnesses failed: {bad}"
    names = {e.name for e in witness_lists()}
    assert "2r'_{3,0} (codimension-two presentation)" in names
    return {"witness_rows": len(rows)}


def _perturbed_skt_metric(L, J, rng: random.Random) -> Metric:
    """Change the complement and its scale; the derived block is pinned."""
    derg = al.image_of_bracket(L)
    g0 = Metric.identity(L.dim)
    v_j = orthogonal_complement(derg, g0.matrix)
    # complex-linear tilt of the complement into the derived algebra
    vj_basis = []
    used = []
    for v in v_j.basis():
        if any(linalg.dot(v, u) != 0 for u in used):
            continue
        jv = J.apply(v)
        vj_basis.extend([v, jv])
        used.extend([v, jv])
        if len(vj_basis) == v_j.dim:
            break
    tilt = [
        linalg.vec([rand_nonzero_fraction(rng, -2, 2, 2) if derg.contains(linalg.unit_vec(L.dim, t + 1)) else 0
                    for t in range(L.dim)])
        for _ in range(len(vj_basis) // 2)
    ]
    new_basis = []
    for idx in range(0, len(vj_basis), 2):
        r_vec = tilt[idx // 2]
        new_basis.append(linalg.add_vec(vj_basis[idx], r_vec))
        new_basis.append(linalg.add_vec(vj_basis[idx + 1], J.apply(r_vec)))
    scale = abs(rand_nonzero_fraction(rng, 1, 3, 2))
    gram_v = linalg.mat_scale(scale, linalg.mat(
        [[g0.pair(u, v) for v in vj_basis] for u in vj_basis]
    ))
    gram_d = linalg.mat([[g0.pair(u, v) for v in derg.basis()] for u in derg.basis()])
    return _block_metric(derg.basis(), new_basis, gram_d, gram_v)


def _perturbed_balanced_metric(L, J, rng: random.Random) -> Metric:
    """Randomise the derived block; the complement and its metric are pinned."""
    derg = al.image_of_bracket(L)
    g0 = Metric.identity(L.dim)
    v_j = orthogonal_complement(derg, g0.matrix)
    k = derg.dim
    sub_pairs = [(i, i + 1) for i in range(1, k, 2)]
    sub_J = ComplexStructure.from_pairs(k, sub_pairs)
    gram_d = random_compatible_metric(k, sub_J, rng).matrix
    gram_v = linalg.mat([[g0.pair(u, v) for v in v_j.basis()] for u in v_j.basis()])
    return _block_metric(derg.basis(), v_j.basis(), gram_d, gram_v)


def criterion_compatibility_pipeline(draws: int = 5) -> dict:
    """Merging verified special metrics yields a closed fundamental form."""
    rng = random.Random("pipeline")
    outputs = 0
    for salamon in ("(25,-15,46,-36,0,0)", "(25,-15,45,-35,0,0)"):
        L = parse_salamon(salamon)
        J = ComplexStructure.standard(6)
        for _ in range(draws):
            g_skt = _perturbed_skt_metric(L, J, rng)
            g_bal = _perturbed_balanced_metric(L, J, rng)
            assert classify_metric(L, g_skt, J).skt, "perturbed metric lost the torsion condition"
            assert classify_metric(L, g_bal, J).balanced, "perturbed metric lost balancedness"
            g_out = kahler_from_skt_and_balanced_typeII(L, J, g_skt, g_bal)
            assert classify_metric(L, g_out, J).kahler, "pipeline output is not closed"
            outputs += 1
    return {"outputs": outputs}


def criterion_metric_search() -> dict:
    """Witness search succeeds within budget and certifies exactly."""
    J = ComplexStructure.standard(6)
    config = SearchConfig()
    results = {}
    for name, salamon, kind in (
        ("two-r3-kahler", "(25,-15,46,-36,0,0)", "kahler"),
        ("counterexample-skt", "(0,21,0,0,43,0)", "skt"),
    ):
        t0 = time.time()
        result = search_metric(parse_salamon(salamon), J, kind, config)
        elapsed = time.time() - t0
        assert result.status == "found", f"{name}: no witness found"
        assert result.residual < config.tolerance
        assert result.iterations <= len(config.seeds) * config.max_iterations
        assert result.exact_verified, f"{name}: rationalisation failed exact verification"
        assert elapsed < 10.0, f"{name}: took {elapsed:.1f}s"
        results[name] = {"residual": result.residual, "seconds": round(elapsed, 2)}
    return results


def criterion_special_pair_is_closed(count: int = 500) -> dict:
    """No metric is simultaneously balanced and SKT without being closed."""
    entries = witness_lists()
    rng = random.Random("special-pair")
    checked = 0
    idx = 0
    while checked < count:
        entry = entries[idx % len(entries)]
        idx += 1
        g = random_compatible_metric(entry.algebra.dim, entry.J, rng)
        v = classify_metric(entry.algebra, g, entry.J)
        assert v.kahler == (v.balanced and v.skt), (
            f"closedness equivalence fails on {entry.name}: {v}"
        )
        checked += 1
    return {"instances": checked}


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    details: str


CRITERIA = (
    (1, "type I counterexample reproduction", criterion_counterexample_type_I),
    (2, "type III counterexample reproduction", criterion_counterexample_type_III),
    (3, "shear-data oracle equivalence", criterion_oracle_equivalence),
    (4, "structural balanced criterion", criterion_balanced_structural),
    (5, "closed-form normal forms", criterion_kahler_normal_forms),
    (6, "type II torsion family", criterion_typeII_skt),
    (7, "six-dimensional witness lists", criterion_six_dimensional_lists),
    (8, "special-metric merge pipeline", criterion_compatibility_pipeline),
    (9, "numerical witness search", criterion_metric_search),
    (10, "balanced + SKT forces closed", criterion_special_pair_is_closed),
)


def run_criteria(numbers=None, out=print) -> list[CriterionResult]:
    results = []
    for number, name, fn in CRITERIA:
        if numbers and number not in numbers:
            continue
        t0 = time.time()
        try:
            details = fn()
            passed, text = True, repr(details)
        except AssertionError as exc:
            passed, text = False, str(exc)
        elapsed = time.time() - t0
        results.append(CriterionResult(number, name, passed, elapsed, text))
        status = "PASS" if passed else "FAIL"
        out(f"[{status}] criterion {number:2d} ({elapsed:6.2f}s) {name}: {text}")
    return results
