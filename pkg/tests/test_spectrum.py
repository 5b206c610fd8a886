"""Linearized operator at the annulus: matrices, eigenvalues, threshold,
kernel, and the brute-force determinant cross-checks."""

import math

import numpy as np
import pytest

from sqg_vstates.errors import (
    IndexOutOfTable,
    NotAnEigenvalue,
    NotSimple,
    PreconditionError,
    TableExhausted,
)
from sqg_vstates.specfun import AnnulusConstants, lambda_coeff, s_sum
from sqg_vstates.spectrum import (
    bifurcation_row,
    discriminant,
    eigenvalue_monotonicity_scan,
    kernel_vector,
    mode_matrix,
    quadratic_coeffs,
    threshold_N,
)


@pytest.fixture(scope="module")
def consts_05():
    return AnnulusConstants.build(0.5, n_max=220)


@pytest.fixture(scope="module")
def consts_map():
    return {b: AnnulusConstants.build(b, n_max=220) for b in (0.2, 0.5, 0.8, 0.9)}


class TestModeMatrix:
    def test_entries(self, consts_05):
        b = 0.5
        mat = mode_matrix(7, b, 0.3, consts_05)
        lam_1 = lambda_coeff(1, b)
        lam_7 = lambda_coeff(7, b)
        s_7 = s_sum(7)
        assert mat.m11 == pytest.approx(0.3 - s_7 + b * b * lam_1, rel=1e-14)
        assert mat.m12 == pytest.approx(-b * b * lam_7, rel=1e-14)
        assert mat.m21 == pytest.approx(b * lam_7, rel=1e-14)
        assert mat.m22 == pytest.approx(b * 0.3 + s_7 - b * lam_1, rel=1e-14)

    def test_offdiagonal_structure(self, consts_map):
        rng = np.random.default_rng(11)
        for b, consts in consts_map.items():
            for _ in range(20):
                n = int(rng.integers(2, 200))
                omega = rng.uniform(-1.0, 1.0)
                mat = mode_matrix(n, b, omega, consts)
                assert mat.m12 / mat.m21 == pytest.approx(-b, rel=1e-13)
                assert mat.m12 * mat.m21 < 0.0

    def test_det_vanishes_at_eigenvalues(self, consts_map):
        for b, consts in consts_map.items():
            n_thr = threshold_N(b, consts)
            for m in (n_thr, n_thr + 5, n_thr + 40):
                row = bifurcation_row(m, b, consts)
                for omega in (row.omega_minus, row.omega_plus):
                    mat = mode_matrix(m, b, omega, consts)
                    assert abs(mat.det()) <= 1e-12 * mat.det_scale()

    def test_guards(self, consts_05):
        with pytest.raises(PreconditionError):
            mode_matrix(1, 0.5, 0.0, consts_05)
        with pytest.raises(PreconditionError):
            mode_matrix(3, 0.6, 0.0, consts_05)  # consts built for b=0.5
        with pytest.raises(IndexOutOfTable):
            mode_matrix(500, 0.5, 0.0, consts_05)


class TestQuadraticCoefficients:
    def test_determinant_identity_random_sweep(self, consts_map):
        # brute-force det of the assembled matrix vs the quadratic in lambda
        rng = np.random.default_rng(99)
        for _ in range(100):
            b = float(rng.choice([0.2, 0.5, 0.8]))
            consts = consts_map[b]
            n = int(rng.integers(2, 200))
            c_n, d_n = quadratic_coeffs(n, b, consts)
            for lam in (-1.0, 0.0, 1.0, rng.uniform(-2.0, 2.0)):
                omega = 0.5 * (1.0 - lam)
                mat = mode_matrix(n, b, omega, consts)
                quad = 0.25 * b * (lam * lam - 2.0 * c_n * lam + d_n)
                assert abs(mat.det() - quad) <= 1e-12 * mat.det_scale()

    def test_reduced_discriminant_identity(self, consts_map):
        for b, consts in consts_map.items():
            for n in range(2, 201, 7):
                c_n, d_n = quadratic_coeffs(n, b, consts)
                delta, _, _ = discriminant(n, b, consts)
                assert abs(c_n * c_n - d_n - delta) <= 1e-10 * max(1.0, abs(delta))

    def test_large_radius_is_finite(self):
        consts = AnnulusConstants.build(0.999, n_max=10)
        c_n, d_n = quadratic_coeffs(2, 0.999, consts)
        assert math.isfinite(c_n) and math.isfinite(d_n)


class TestDiscriminant:
    def test_first_factor_closed_form(self, consts_map):
        for b, consts in consts_map.items():
            _, e_1, _ = discriminant(1, b, consts)
            assert e_1 == pytest.approx(-((1.0 + b) ** 2) * lambda_coeff(1, b), rel=1e-13)
            assert e_1 < 0.0

    def test_factorization(self, consts_map):
        for b, consts in consts_map.items():
            for n in range(1, 201, 11):
                delta, e_n, f_n = discriminant(n, b, consts)
                assert e_n * f_n == pytest.approx(delta, rel=1e-12, abs=1e-300)

    def test_increasing_above_threshold(self, consts_map):
        for b in (0.2, 0.5, 0.8):
            consts = consts_map[b]
            n_thr = threshold_N(b, consts)
            deltas = [discriminant(n, b, consts)[0] for n in range(n_thr, 201)]
            assert all(hi > lo for lo, hi in zip(deltas, deltas[1:]))


class TestThreshold:
    def test_scan_oracle(self, consts_map):
        # brute-force scan of the factor signs, built from the raw tables
        for b, consts in consts_map.items():
            n = 2
            while True:
                core = (1.0 / b + 1.0) * s_sum(n) - (1.0 + b * b) * lambda_coeff(1, b)
                if core - 2.0 * b * lambda_coeff(n, b) > 0.0:
                    break
                n += 1
            assert threshold_N(b, consts) == n

    def test_sign_change_bracketing(self, consts_map):
        for b, consts in consts_map.items():
            n_thr = threshold_N(b, consts)
            assert n_thr >= 2
            _, e_prev, _ = discriminant(n_thr - 1, b, consts)
            _, e_at, _ = discriminant(n_thr, b, consts)
            assert e_prev <= 0.0 < e_at
            for n in range(1, n_thr):
                assert discriminant(n, b, consts)[1] <= 0.0
            for n in range(n_thr, 201):
                assert discriminant(n, b, consts)[1] > 0.0

    def test_known_values(self, consts_map):
        assert threshold_N(0.5, consts_map[0.5]) == 3
        assert threshold_N(0.9, consts_map[0.9]) == 14

    def test_table_exhaustion(self):
        consts = AnnulusConstants.build(0.9, n_max=5)  # N(0.9) = 14 > 5
        with pytest.raises(TableExhausted):
            threshold_N(0.9, consts)


class TestBifurcationRow:
    def test_root_sum_and_gap(self, consts_map):
        for b, consts in consts_map.items():
            lam_1 = lambda_coeff(1, b)
            n_thr = threshold_N(b, consts)
            for m in (n_thr, n_thr + 3, n_thr + 30):
                row = bifurcation_row(m, b, consts)
                target = (1.0 - 1.0 / b) * s_sum(m) + (1.0 - b * b) * lam_1
                assert row.omega_plus + row.omega_minus == pytest.approx(target, abs=1e-12)
                assert row.omega_plus - row.omega_minus == pytest.approx(
                    math.sqrt(row.delta_m), rel=1e-12
                )

    def test_lambda_omega_mapping_exact(self, consts_map):
        for b, consts in consts_map.items():
            row = bifurcation_row(threshold_N(b, consts) + 1, b, consts)
            assert row.omega_plus == 0.5 * (1.0 - row.lambda_minus)
            assert row.omega_minus == 0.5 * (1.0 - row.lambda_plus)
            assert row.lambda_minus < row.lambda_plus
            assert row.transversal

    def test_det_sign_structure(self, consts_05):
        # upward parabola in lambda: negative strictly between the
        # eigenvalues (in Omega), positive outside
        b = 0.5
        row = bifurcation_row(5, b, consts_05)
        inside = mode_matrix(5, b, 0.5 * (row.omega_minus + row.omega_plus), consts_05)
        assert inside.det() < 0.0
        for omega in (row.omega_minus - 0.2, row.omega_plus + 0.2):
            assert mode_matrix(5, b, omega, consts_05).det() > 0.0

    def test_below_threshold_refused(self, consts_05):
        with pytest.raises(NotSimple):
            bifurcation_row(2, 0.5, consts_05)  # N(0.5) = 3


class TestKernelVector:
    def test_annihilation_at_both_eigenvalues(self, consts_map):
        for b, consts in consts_map.items():
            n_thr = threshold_N(b, consts)
            for m in (n_thr, n_thr + 10):
                row = bifurcation_row(m, b, consts)
                for omega in (row.omega_minus, row.omega_plus):
                    vec = kernel_vector(m, b, omega, consts)
                    mat = mode_matrix(m, b, omega, consts)
                    scale = mat.det_scale() * max(1.0, math.hypot(vec.v1, vec.v2))
                    assert abs(mat.m11 * vec.v1 + mat.m12 * vec.v2) <= 1e-10 * scale
                    assert abs(mat.m21 * vec.v1 + mat.m22 * vec.v2) <= 1e-10 * scale
                    assert vec.v2 < 0.0
                    assert (vec.v1, vec.v2) != (0.0, 0.0)

    def test_second_row_identity(self, consts_05):
        # b L_m v1 + (b Omega + S_m - b L_1) v2 vanishes identically in Omega
        b = 0.5
        row = bifurcation_row(6, b, consts_05)
        vec = kernel_vector(6, b, row.omega_plus, consts_05)
        mat = mode_matrix(6, b, row.omega_plus, consts_05)
        assert abs(mat.m21 * vec.v1 + mat.m22 * vec.v2) <= 1e-15

    def test_rejects_non_eigenvalue(self, consts_05):
        with pytest.raises(NotAnEigenvalue):
            kernel_vector(5, 0.5, 0.123456, consts_05)


class TestMonotonicityScan:
    @pytest.mark.parametrize("b", [0.5, 0.9])
    def test_no_violations_up_to_200(self, b, consts_map):
        assert eigenvalue_monotonicity_scan(b, 200, consts_map[b]) == []

    def test_single_mode_trivial(self, consts_05):
        n_thr = threshold_N(0.5, consts_05)
        assert eigenvalue_monotonicity_scan(0.5, n_thr, consts_05) == []
