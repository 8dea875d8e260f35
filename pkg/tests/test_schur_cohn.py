"""Schur-Cohn matrix construction, positivity and the inverse-moment identity."""

import numpy as np
import pytest

from bscd.errors import DegenerateDegree
from bscd.measure import slice_moments
from bscd.poly import BivariateLaurentPoly as Poly, DegreePair
from bscd.schur_cohn import (
    diagonal_average,
    evaluate_on_circle,
    hermitian_structure_defect,
    positivity_scan,
    principal_determinants,
    schur_cohn_matrix,
)

from conftest import WORKED, WORKED_DEG, make_random_family

PRODUCT = Poly({(0, 0): 4, (1, 0): -2, (0, 1): -2, (1, 1): 1})  # (2-z)(2-w)


def test_worked_example_matrix():
    T = schur_cohn_matrix(WORKED, WORKED_DEG)
    assert T.m == 1
    assert T.entry(0, 0) == Poly({(0, 0): 9, (1, 0): -3, (-1, 0): -3})


def test_univariate_w_matrix():
    T = schur_cohn_matrix(Poly({(0, 0): 2, (0, 1): -1}), DegreePair(0, 1))
    assert T.entry(0, 0) == Poly.constant(3)


def test_product_polynomial_matrix():
    T = schur_cohn_matrix(PRODUCT, DegreePair(1, 1))
    assert T.entry(0, 0) == Poly({(0, 0): 15, (1, 0): -6, (-1, 0): -6})


def test_degree_zero_in_w_is_degenerate():
    with pytest.raises(DegenerateDegree):
        schur_cohn_matrix(Poly({(0, 0): 2, (1, 0): -1}), DegreePair(1, 0))


def test_hermitian_structure_for_random_polynomials(random_family):
    for p, deg in random_family:
        T = schur_cohn_matrix(p, deg)
        scale = max(1.0, max(T.entry(i, j).max_abs() for i in range(T.m) for j in range(T.m)))
        assert hermitian_structure_defect(T) <= 1e-13 * scale
        for theta in (0.0, 0.4, 2.9):
            M = evaluate_on_circle(T, theta)
            assert np.max(np.abs(M - M.conj().T)) == 0.0
            # exponents stay within [-n, n]
        for i in range(T.m):
            for j in range(T.m):
                box = T.entry(i, j).support_box
                if box is not None:
                    assert -deg.n <= box[0] and box[1] <= deg.n
                    assert box[2] == box[3] == 0


def test_circle_evaluation_values():
    T = schur_cohn_matrix(WORKED, WORKED_DEG)
    assert evaluate_on_circle(T, 0.0)[0, 0] == pytest.approx(3.0, abs=1e-13)
    assert evaluate_on_circle(T, np.pi)[0, 0] == pytest.approx(15.0, abs=1e-13)


def test_positive_definite_on_circle_for_stable_inputs(random_family):
    for p, deg in random_family[:3]:
        T = schur_cohn_matrix(p, deg)
        report = positivity_scan(T, 64)
        assert report.all_positive and report.min_eig > 0


def test_principal_determinant_profile():
    T = schur_cohn_matrix(WORKED, WORKED_DEG)
    for theta in (0.0, 0.5, np.pi):
        profile = principal_determinants(T, theta)
        assert profile.D[0] == 1.0
        assert profile.D[1] == pytest.approx(9 - 6 * np.cos(theta), abs=1e-12)
    assert principal_determinants(T, np.pi).D[1] == pytest.approx(15.0, abs=1e-12)


def test_positivity_scan_values():
    T = schur_cohn_matrix(WORKED, WORKED_DEG)
    report = positivity_scan(T, 64)
    assert report.min_eig == pytest.approx(3.0, abs=1e-12)
    assert report.theta_at_min == 0.0

    T2 = schur_cohn_matrix(PRODUCT, DegreePair(1, 1))
    assert positivity_scan(T2, 64).min_eig == pytest.approx(3.0, abs=1e-12)

    unstable = Poly({(0, 0): 2, (1, 0): -1, (0, 1): -1})
    T3 = schur_cohn_matrix(unstable, DegreePair(1, 1))
    report3 = positivity_scan(T3, 64)
    assert not report3.all_positive
    assert report3.min_eig == pytest.approx(0.0, abs=1e-13)


def test_matrix_inverts_slice_moment_matrix(random_family):
    # pins the basis-ordering convention M[i, j] = m_{j-i}
    for p, deg in random_family:
        T = schur_cohn_matrix(p, deg)
        m = deg.m
        for theta in (0.0, 1.1, 4.4):
            sm = slice_moments(p, deg, theta, m - 1)
            M = np.array([[sm.get(j - i) for j in range(m)] for i in range(m)])
            residual = np.max(np.abs(evaluate_on_circle(T, theta) @ M - np.eye(m)))
            assert residual < 1e-8


def test_reversed_ordering_convention_fails():
    # the empirical pin-down: transposing the lag convention breaks the identity
    p, deg = make_random_family()[3]
    T = schur_cohn_matrix(p, deg)
    m = deg.m
    sm = slice_moments(p, deg, 0.9, m - 1)
    wrong = np.array([[sm.get(i - j) for j in range(m)] for i in range(m)])
    assert np.max(np.abs(evaluate_on_circle(T, 0.9) @ wrong - np.eye(m))) > 1e-3


def test_diagonal_average_reads_constant_coefficient():
    T = schur_cohn_matrix(WORKED, WORKED_DEG)
    assert diagonal_average(T, 0) == pytest.approx(9.0, abs=1e-14)
