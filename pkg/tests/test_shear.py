import random
from fractions import Fraction

import pytest

from hermlie import algebra as al
from hermlie import linalg as la
from hermlie.errors import (
    InvalidPreShearError,
    JacobiFailedError,
    NotComplexShearDataError,
)
from hermlie.forms import VectorValuedTwoForm
from hermlie.generators import PROFILES, random_complex_shear
from hermlie.hermitian import ComplexStructure, Metric, classify_metric, nijenhuis
from hermlie.normal_forms import KahlerNormalForm, kahler_normal_form
from hermlie.shear import (
    PreShearData,
    build_shear,
    check_complex_shear,
    pre_shear_from_bracket,
    shear_condition,
    shear_operators,
    validate_pre_shear,
)

Q = Fraction


def e(n, i):
    return la.unit_vec(n, i)


def zero_data(dim):
    a = al.Subspace.zero(dim)
    return PreShearData(dim, a, VectorValuedTwoForm(dim, a, {}))


class TestPreShearValidation:
    def test_zero_form_valid(self):
        assert validate_pre_shear(zero_data(4)).valid

    def test_counterexample_reconstruction_valid(self, cx_type_I):
        data = pre_shear_from_bracket(cx_type_I)
        assert validate_pre_shear(data).valid
        assert data.a == al.Subspace.span(6, [e(6, 2), e(6, 5)])

    def test_violation_listed(self):
        a = al.Subspace.span(4, [e(4, 1), e(4, 2)])
        w = VectorValuedTwoForm(4, a, {(1, 2): e(4, 1)})
        report = validate_pre_shear(PreShearData(4, a, w))
        assert not report.valid and report.restriction_violations

    def test_image_violation_listed(self):
        a = al.Subspace.span(4, [e(4, 1)])
        w = VectorValuedTwoForm(4, a, {(2, 3): e(4, 4)})
        report = validate_pre_shear(PreShearData(4, a, w))
        assert not report.valid and report.image_violations == ((2, 3),)


class TestCheckComplexShear:
    def test_zero_form(self):
        rep = check_complex_shear(zero_data(4), ComplexStructure.standard(4))
        assert rep.jacobi_ok and rep.integrable_ok

    def test_type_I_case(self, cx_type_I, j_std6):
        rep = check_complex_shear(pre_shear_from_bracket(cx_type_I), j_std6)
        assert rep.jacobi_ok and rep.integrable_ok

    def test_invalid_pre_shear_raises(self):
        a = al.Subspace.span(4, [e(4, 1)])
        w = VectorValuedTwoForm(4, a, {(2, 3): e(4, 4)})
        with pytest.raises(InvalidPreShearError):
            check_complex_shear(PreShearData(4, a, w), ComplexStructure.standard(4))

    def test_equations_match_built_algebra(self):
        """jacobi_ok/integrable_ok agree with the direct oracles, both ways."""
        rng = random.Random(23)
        J = ComplexStructure.standard(4)
        jacobi_false = integrable_false = both_true = 0
        for _ in range(500):
            # random pre-shear data on coordinates: a is the last k slots,
            # values land in a, and pairs inside a carry no form
            k = rng.randint(1, 2)
            a = al.Subspace.span(4, [e(4, 4 - t) for t in range(k)])
            values = {}
            for i in range(1, 5):
                for j in range(i + 1, 5):
                    if i > 4 - k:
                        continue  # both arguments inside a
                    if rng.random() < 0.5:
                        v = [0] * 4
                        for t in range(k):
                            v[3 - t] = rng.randint(-2, 2)
                        if any(v):
                            values[(i, j)] = la.vec(v)
            data = PreShearData(4, a, VectorValuedTwoForm(4, a, values))
            rep = check_complex_shear(data, J)
            table = {p: la.neg_vec(v) for p, v in data.omega.values.items()}
            L = al.LieAlgebra(4, table)
            assert rep.jacobi_ok == (L.jacobi_residual() == 0)
            nij_zero = all(
                la.is_zero_vec(nijenhuis(L, J, e(4, i), e(4, j)))
                for i in range(1, 5)
                for j in range(i + 1, 5)
            )
            assert rep.integrable_ok == nij_zero
            jacobi_false += int(not rep.jacobi_ok)
            integrable_false += int(not rep.integrable_ok)
            both_true += int(rep.jacobi_ok and rep.integrable_ok)
        # the sample has to hit every case for the equivalence to mean much
        assert jacobi_false and integrable_false and both_true


class TestBuildShear:
    def test_zero_gives_abelian(self):
        assert build_shear(zero_data(4)) == al.abelian(4)

    def test_counterexample_roundtrip(self, cx_type_I):
        assert build_shear(pre_shear_from_bracket(cx_type_I)) == cx_type_I

    def test_jacobi_failure_raises(self):
        # valid pre-shear data whose quadratic closure fails:
        # w(w(e2,e3), e4) = w(e1, e4) = e2 is the cyclic obstruction
        a = al.Subspace.span(4, [e(4, 1), e(4, 2)])
        w = VectorValuedTwoForm(4, a, {(1, 4): e(4, 2), (2, 3): e(4, 1)})
        data = PreShearData(4, a, w)
        assert validate_pre_shear(data).valid
        with pytest.raises(JacobiFailedError):
            build_shear(data)

    def test_outputs_two_step_solvable(self):
        for seed in range(5):
            data, _, _ = random_complex_shear(seed, "typeI", 6)
            assert al.is_two_step_solvable(build_shear(data))


class TestShearCondition:
    def test_zero_all_true(self):
        data = zero_data(4)
        J = ComplexStructure.standard(4)
        g = Metric.identity(4)
        for kind in ("kahler", "balanced", "skt"):
            assert shear_condition(data, g, J, kind)

    def test_counterexample_verdicts(self, cx_type_I, j_std6, g_identity6):
        data = pre_shear_from_bracket(cx_type_I)
        assert shear_condition(data, g_identity6, j_std6, "skt")
        assert not shear_condition(data, g_identity6, j_std6, "balanced")
        assert not shear_condition(data, g_identity6, j_std6, "kahler")

    def test_not_complex_data_rejected(self):
        a = al.Subspace.span(4, [e(4, 1), e(4, 2)])
        w = VectorValuedTwoForm(4, a, {(1, 4): e(4, 2), (2, 3): e(4, 1)})
        with pytest.raises(NotComplexShearDataError):
            shear_condition(
                PreShearData(4, a, w), Metric.identity(4), ComplexStructure.standard(4), "skt"
            )

    def test_oracle_equivalence_sample(self):
        for profile in PROFILES:
            dims = (6,) if profile == "mixed" else (4, 6)
            for dim in dims:
                for seed in range(4):
                    data, g, J = random_complex_shear(seed, profile, dim)
                    v = classify_metric(build_shear(data), g, J)
                    for kind in ("kahler", "balanced", "skt"):
                        assert shear_condition(data, g, J, kind) == v[kind]


class TestShearOperators:
    def test_zero_data_clean(self):
        data = zero_data(4)
        ops, report = shear_operators(data, Metric.identity(4), ComplexStructure.standard(4))
        assert report.clean
        assert ops.a_J.dim == 0 and ops.a_r.dim == 0

    def test_oversized_a_is_shrunk_to_the_image(self, cx_type_I, j_std6, g_identity6):
        base = pre_shear_from_bracket(cx_type_I)
        bigger = al.subspace_sum(base.a, al.Subspace.span(6, [e(6, 6)]))
        data = PreShearData(6, bigger, VectorValuedTwoForm(6, bigger, base.omega.values))
        assert validate_pre_shear(data).valid
        ops, report = shear_operators(data, g_identity6, j_std6)
        assert report.clean
        assert al.subspace_sum(ops.a_J, ops.a_r) == base.a

    def test_normal_form_recovers_scalars(self):
        # [JX, Y_j] = alpha_j(X) JY_j shows up as K_X(Y_j) = -alpha_j(X) JY_j
        alpha = Q(3, 2)
        lam = Q(2)
        params = KahlerNormalForm(
            "III", 1, 1, 0, alphas=((alpha,),), betas=((),), lambdas=(lam,)
        )
        L, g, J = kahler_normal_form(params)
        ops, report = shear_operators(pre_shear_from_bracket(L), g, J)
        assert report.clean
        assert ops.a_J == al.Subspace.span(4, [e(4, 1), e(4, 2)])
        (k_matrix,) = ops.K.values()
        # a_J basis is (Y1, JY1): K_X sends Y1 -> -alpha JY1, JY1 -> alpha Y1
        assert k_matrix == ((Q(0), alpha), (-alpha, Q(0)))
        (f_val,) = [v for k, v in ops.f.items() if k == (0, 0)]
        assert f_val == la.scale_vec(-lam, e(4, 3))

    def test_identities_hold_on_random_data(self):
        for profile in ("typeI", "typeII", "typeIII", "mixed"):
            dim = 6
            for seed in range(4):
                data, g, J = random_complex_shear(seed, profile, dim)
                _, report = shear_operators(data, g, J)
                assert report.clean, (profile, seed, report)


class TestKahlerShearConsequences:
    def test_closed_shear_data_consequences(self):
        """Closed shears: no form on U_J x U_J or Ja_r x Ja_r, and h = 0."""
        rng = random.Random(6)
        for seed in range(10):
            pure_type = ("I", "II", "III")[seed % 3]
            from hermlie.verify import _random_kahler_params

            params = _random_kahler_params(pure_type, rng)
            L, g, J = kahler_normal_form(params)
            data = pre_shear_from_bracket(L).normalized()
            assert shear_condition(data, g, J, "kahler")
            ops, report = shear_operators(data, g, J)
            assert report.clean
            omega = data.omega
            for z1 in ops.U_J.basis():
                for z2 in ops.U_J.basis():
                    assert la.is_zero_vec(omega(z1, z2))
            for x1 in ops.a_r.basis():
                for x2 in ops.a_r.basis():
                    assert la.is_zero_vec(omega(J.apply(x1), J.apply(x2)))
            assert all(la.is_zero_vec(v) for v in ops.h.values())
