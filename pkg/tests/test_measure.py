"""Stability testing, moment pipelines, inner products and slices."""

import numpy as np
import pytest

from bscd import measure
from bscd.errors import (
    InconclusiveNearBoundary,
    TruncationTooSmall,
    WindowTooSmall,
    ZeroPolynomial,
)
from bscd.measure import (
    check_stability,
    inner_product,
    moments_from_grid,
    moments_from_series,
    random_stable_poly,
    slice_moments,
)
from bscd.poly import BivariateLaurentPoly as Poly, DegreePair

from conftest import WORKED, WORKED_DEG


# ----------------------------------------------------------------------
# Stability
# ----------------------------------------------------------------------


def test_stable_by_triangle_inequality():
    report = check_stability(WORKED, WORKED_DEG)
    assert report.stable and report.witness is None
    assert report.min_modulus == pytest.approx(1.0, abs=1e-12)


def test_boundary_zero_is_unstable_with_witness():
    p = Poly({(0, 0): 2, (1, 0): -1, (0, 1): -1})
    report = check_stability(p, DegreePair(1, 1))
    assert not report.stable
    z, w = report.witness
    assert abs(z - 1) < 1e-9 and abs(w - 1) < 1e-9
    assert report.min_modulus < 1e-9


def test_interior_zero_is_unstable():
    p = Poly({(0, 0): 1, (1, 0): -2})
    report = check_stability(p)
    assert not report.stable
    assert abs(report.witness[0] - 0.5) < 1e-12


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        check_stability(Poly.zero())


def test_near_boundary_root_is_inconclusive():
    p = Poly({(0, 0): 1 + 1e-12, (1, 0): -1})
    with pytest.raises(InconclusiveNearBoundary):
        check_stability(p)


# ----------------------------------------------------------------------
# Grid moments
# ----------------------------------------------------------------------


def test_lebesgue_moments_are_delta():
    table = moments_from_grid(Poly.constant(1), (3, 3))
    assert table.get(0, 0) == pytest.approx(1.0, abs=1e-14)
    for a in range(-3, 4):
        for b in range(-3, 4):
            if (a, b) != (0, 0):
                assert abs(table.get(a, b)) < 1e-14


def test_product_measure_moments_match_geometric_series():
    p = Poly({(0, 0): 4, (1, 0): -2, (0, 1): -2, (1, 1): 1})  # (2-z)(2-w)
    table = moments_from_grid(p, (8, 8))
    for a in range(-8, 9):
        for b in range(-8, 9):
            expected = 2.0 ** (-abs(a) - abs(b)) / 9.0
            assert abs(table.get(a, b) - expected) < 1e-10
    assert abs(table.get(1, 1) - 1.0 / 36.0) < 1e-12


def test_grid_moments_hermitian_symmetry():
    rng = np.random.default_rng(11)
    p, deg = random_stable_poly(2, 2, rng)
    table = moments_from_grid(p, (5, 5))
    for a in range(-5, 6):
        for b in range(-5, 6):
            assert table.get(-a, -b) == pytest.approx(
                np.conj(table.get(a, b)), abs=1e-13
            )
    assert table.get(0, 0).imag == 0.0
    assert table.get(0, 0).real > 0


# ----------------------------------------------------------------------
# Series moments
# ----------------------------------------------------------------------


def test_series_univariate_geometric():
    p = Poly({(0, 0): 2, (1, 0): -1})
    table = moments_from_series(p, DegreePair(1, 0), (6, 0))
    for k in range(-6, 7):
        assert abs(table.get(k, 0) - 2.0 ** (-abs(k)) / 3.0) < 1e-12


def test_series_identity_measure():
    table = moments_from_series(Poly.constant(1), DegreePair(0, 0), (2, 2))
    assert table.get(0, 0) == pytest.approx(1.0, abs=1e-15)
    assert abs(table.get(1, -2)) < 1e-15


def test_series_agrees_with_grid_on_worked_example():
    grid = moments_from_grid(WORKED, (8, 8))
    series = moments_from_series(WORKED, WORKED_DEG, (8, 8))
    assert grid.max_difference(series) < 1e-10


def test_series_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        moments_from_series(WORKED, WORKED_DEG, (4, 4), trunc=4)


# ----------------------------------------------------------------------
# Inner products
# ----------------------------------------------------------------------


def test_inner_product_of_constants(worked_moments):
    assert inner_product(
        Poly.constant(1), Poly.constant(1), worked_moments
    ) == pytest.approx(worked_moments.get(0, 0))


def test_p_is_orthogonal_to_z(worked_moments):
    value = inner_product(WORKED, Poly.monomial(1, 0), worked_moments)
    assert abs(value) < 1e-12


def test_p_has_unit_norm(worked_moments):
    value = inner_product(WORKED, WORKED, worked_moments)
    assert value == pytest.approx(1.0, abs=1e-11)


def test_window_too_small_reports_missing_index(worked_moments):
    with pytest.raises(WindowTooSmall) as info:
        inner_product(Poly.monomial(40, 0), Poly.constant(1), worked_moments)
    assert info.value.index == (40, 0)


def test_orthogonality_of_p_and_reflection(random_family_with_moments):
    # p kills every monomial not below (0,0); the reflection kills every
    # monomial not above (n,m); both relative to the polynomial norms
    for p, deg, table in random_family_with_moments[:2]:
        n, m = deg
        pr = p.reflect(deg)
        norm_p = measure.norm(p, table)
        mono_norm = np.sqrt(table.get(0, 0).real)
        for i in range(-2, n + 3):
            for j in range(-2, m + 3):
                mono = Poly.monomial(i, j)
                if not (i <= 0 and j <= 0):
                    assert (
                        abs(inner_product(mono, p, table))
                        < 1e-8 * norm_p * mono_norm
                    )
                if i < n or j < m:
                    assert (
                        abs(inner_product(mono, pr, table))
                        < 1e-8 * norm_p * mono_norm
                    )


def test_gram_matrices_positive_definite(random_family_with_moments):
    rng = np.random.default_rng(12)
    from bscd.subspaces import gram_matrix

    for p, deg, table in random_family_with_moments:
        A, B = table.window
        monos = {
            (int(rng.integers(-A // 2, A // 2 + 1)), int(rng.integers(-B // 2, B // 2 + 1)))
            for _ in range(8)
        }
        G = gram_matrix(sorted(monos), table)
        assert np.linalg.eigvalsh(G)[0] > 0


# ----------------------------------------------------------------------
# Slices
# ----------------------------------------------------------------------


def test_slice_of_worked_example_at_zero():
    sm = slice_moments(WORKED, WORKED_DEG, 0.0, 5)
    for k in range(-5, 6):
        assert abs(sm.get(k) - 2.0 ** (-abs(k)) / 3.0) < 1e-12


def test_slice_of_univariate_w_polynomial():
    p = Poly({(0, 0): 2, (0, 1): -1})
    for theta in (0.0, 1.3, -2.0):
        sm = slice_moments(p, DegreePair(0, 1), theta, 2)
        assert sm.get(0) == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_slice_conjugate_symmetry(random_family_with_moments):
    p, deg, _ = random_family_with_moments[3]
    sm = slice_moments(p, deg, 0.77, 4)
    for k in range(5):
        assert sm.get(-k) == pytest.approx(np.conj(sm.get(k)), abs=1e-13)
    assert sm.get(0).imag == 0.0 and sm.get(0).real > 0


def test_slice_average_reproduces_moment_row(random_family_with_moments):
    # averaging the slice moments over the circle gives the (0, k) moments
    grid = 128
    for p, deg, table in (random_family_with_moments[0], random_family_with_moments[3]):
        for k in range(deg.m):
            acc = 0j
            for idx in range(grid):
                theta = 2 * np.pi * idx / grid
                acc += slice_moments(p, deg, theta, deg.m).get(k) / grid
            assert abs(acc - table.get(0, k)) < 1e-9


def test_moment_table_json_round_trip():
    from bscd.measure import MomentTable

    table = moments_from_grid(WORKED, (3, 2))
    doc = table.to_json_dict()
    assert doc["window"] == [3, 2]
    assert len(doc["values"]) == 7 * 5
    back = MomentTable.from_json_dict(doc)
    assert back.max_difference(table) == 0.0
    assert back.grid_size == table.grid_size


# ----------------------------------------------------------------------
# Random generator
# ----------------------------------------------------------------------


def test_random_stable_polynomials_are_stable_with_full_degree():
    rng = np.random.default_rng(13)
    for _ in range(5):
        n, m = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        p, deg = random_stable_poly(n, m, rng)
        assert deg == (n, m)
        assert p.support_box == (0, n, 0, m)
        assert check_stability(p, deg).stable
