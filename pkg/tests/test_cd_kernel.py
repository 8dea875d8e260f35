"""Kernel coefficient family: three routes, structure, slice identities."""

import numpy as np
import pytest

from bscd.cd_kernel import (
    cd_kernel_set,
    cofactor_decomposition,
    kernel_by_divided_difference,
    kernel_coefficients,
    slice_gram_residual,
    slice_norm_check,
)
from bscd.errors import DegenerateDegree
from bscd.poly import BivariateLaurentPoly as Poly, DegreePair

from conftest import WORKED, WORKED_DEG

A0_WORKED = Poly({(0, 0): -3, (1, 0): 9, (2, 0): -3})
UNIV = Poly({(0, 0): 2, (0, 1): -1})  # 2 - w
PRODUCT = Poly({(0, 0): 4, (1, 0): -2, (0, 1): -2, (1, 1): 1})  # (2-z)(2-w)


def test_matrix_route_worked_examples():
    assert kernel_coefficients(WORKED, WORKED_DEG)[0] == A0_WORKED
    assert kernel_coefficients(UNIV, DegreePair(0, 1))[0] == Poly.constant(3)
    assert kernel_coefficients(PRODUCT, DegreePair(1, 1))[0] == Poly(
        {(0, 0): -6, (1, 0): 15, (2, 0): -6}
    )


def test_divided_difference_is_parameter_free_when_m_is_one():
    for eta in (0.3 + 0.4j, 0.0, -0.9j):
        result = kernel_by_divided_difference(WORKED, WORKED_DEG, eta)
        assert (result - A0_WORKED).max_abs() < 1e-12


def test_divided_difference_matches_matrix_route(random_family):
    rng = np.random.default_rng(21)
    for p, deg in random_family:
        ks = cd_kernel_set(p, deg)
        for _ in range(20):
            eta = complex(rng.normal(), rng.normal()) * 0.6
            direct = kernel_by_divided_difference(p, deg, eta)
            assert (direct - ks.parameter_sum(eta)).max_abs() < 1e-10


def test_cofactor_decomposition_worked_examples():
    A, B = cofactor_decomposition(WORKED, WORKED_DEG)
    assert A[0] == Poly({(1, 0): 3, (0, 0): -1})
    assert B[0] == Poly.constant(1)
    assert WORKED * A[0] + WORKED.reflect(WORKED_DEG) * B[0] == A0_WORKED

    A, B = cofactor_decomposition(UNIV, DegreePair(0, 1))
    assert A[0] == Poly.constant(2)
    assert B[0] == Poly.constant(1)


def test_cofactor_degree_bounds_and_identity(random_family):
    for p, deg in random_family:
        n, m = deg
        ks = cd_kernel_set(p, deg)
        pr = p.reflect(deg)
        for j in range(m):
            for poly in (ks.A[j], ks.B[j]):
                box = poly.support_box
                assert box[0] >= 0 and box[1] <= n
                assert box[2] >= 0 and box[3] <= j
            recombined = p * ks.A[j] + pr * ks.B[j]
            assert (recombined - ks.a[j]).max_abs() < 1e-12 * max(1.0, ks.a[j].max_abs())


def test_coefficient_support_and_symmetry(random_family):
    for p, deg in random_family:
        n, m = deg
        ks = cd_kernel_set(p, deg)
        for k in range(m):
            box = ks.a[k].support_box
            assert box[0] >= 0 and box[1] <= 2 * n
            assert box[2] >= 0 and box[3] <= m - 1
            mirrored = ks.a[m - k - 1].reflect(DegreePair(2 * n, m - 1))
            assert (mirrored - ks.a[k]).max_abs() < 1e-12 * max(1.0, ks.a[k].max_abs())


def test_coefficient_family_has_full_rank(random_family):
    for p, deg in random_family:
        n, m = deg
        ks = cd_kernel_set(p, deg)
        rows = np.array(
            [
                ks.a[k].coefficient_window((0, 2 * n, 0, m - 1)).ravel()
                for k in range(m)
            ]
        )
        assert np.linalg.svd(rows, compute_uv=False)[-1] > 1e-8


def test_degenerate_degree_raises():
    p = Poly({(0, 0): 2, (1, 0): -1})
    with pytest.raises(DegenerateDegree):
        kernel_coefficients(p, DegreePair(1, 0))
    with pytest.raises(DegenerateDegree):
        cofactor_decomposition(p, DegreePair(1, 0))


# ----------------------------------------------------------------------
# Slice identities
# ----------------------------------------------------------------------


def test_slice_norm_identity_worked_law():
    for theta in (0.0, 0.8, 2.5):
        for eta in (0.3 + 0.4j, -0.2j):
            result = slice_norm_check(WORKED, WORKED_DEG, theta, eta)
            assert result["lhs"] == pytest.approx(9 - 6 * np.cos(theta), abs=1e-10)
            assert result["residual"] < 1e-10


def test_slice_norm_identity_univariate():
    result = slice_norm_check(UNIV, DegreePair(0, 1), 1.234, 0.5)
    assert result["lhs"] == pytest.approx(3.0, abs=1e-11)
    assert result["residual"] < 1e-11


def test_slice_norm_identity_random(random_family):
    rng = np.random.default_rng(22)
    for p, deg in random_family:
        ks = cd_kernel_set(p, deg)
        for _ in range(3):
            theta = rng.uniform(0, 2 * np.pi)
            eta = complex(rng.normal(), rng.normal()) * 0.5
            assert slice_norm_check(p, deg, theta, eta, ks)["residual"] < 1e-9


def test_slice_gram_matches_matrix(random_family):
    assert np.max(np.abs(slice_gram_residual(WORKED, WORKED_DEG, 0.6))) < 1e-10
    assert np.max(np.abs(slice_gram_residual(UNIV, DegreePair(0, 1), 2.2))) < 1e-11
    for p, deg in random_family:
        ks = cd_kernel_set(p, deg)
        for theta in (0.5, 3.3):
            assert np.max(np.abs(slice_gram_residual(p, deg, theta, ks))) < 1e-9
