"""Orthogonal polynomials of the sliced circle measures via pivot-free LU.

At a fixed first angle the Schur-Cohn matrix is Hermitian positive definite,
so Doolittle elimination needs no row exchanges.  Reading the rows of the
upper factor against the reversed monomial vector ``[w^{m-1}, ..., 1]``
produces one polynomial per degree ``0 .. m-1``; their leading coefficients
and squared slice norms both equal the pivot ratio ``D[m-i] / D[m-i-1]`` of
the leading principal determinants.  (The variant subscripting
``D[m-i] / D[m-i+1]``, which shifts the denominator index the other way, is
inconsistent with the factorization; it is computed and reported alongside
for comparison wherever it is defined.)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDegree, IndexOutOfRange, NoConvergence, NotPositiveDefinite
from .measure import _slice_moments_unchecked, ensure_stable, slice_inner_product
from .poly import BivariateLaurentPoly, DegreePair
from .schur_cohn import (
    DeterminantProfile,
    LaurentMatrixPoly,
    evaluate_on_circle,
    principal_determinants,
    schur_cohn_matrix,
)

PIVOT_TOL = 1e-12
LAW_TOL = 1e-9


def lu_no_pivot(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Doolittle factorization without row exchanges.

    Returns ``(L, U)`` with ``L`` unit lower triangular and ``L @ U == M``.
    Raises :class:`NotPositiveDefinite` when a pivot falls below tolerance,
    which for Hermitian input is equivalent to failing positive definiteness.
    """
    A = np.array(M, dtype=complex)
    size = A.shape[0]
    if A.shape != (size, size):
        raise ValueError("matrix must be square")
    L = np.eye(size, dtype=complex)
    for k in range(size):
        pivot = A[k, k]
        if pivot.real < PIVOT_TOL:
            raise NotPositiveDefinite(f"pivot {pivot:.3e} at elimination step {k}")
        for r in range(k + 1, size):
            f = A[r, k] / pivot
            L[r, k] = f
            A[r, k:] -= f * A[k, k:]
            A[r, k] = 0.0
    return L, np.triu(A)


@dataclass(frozen=True)
class ParametricOPUC:
    """LU data and degree-graded polynomials at one angle.

    ``phi[i]`` holds ascending w-coefficients of the degree-i polynomial;
    its leading coefficient is the matching diagonal entry of ``U``.
    """

    theta: float
    phi: tuple[np.ndarray, ...]
    U: np.ndarray
    L_factor: np.ndarray
    D: DeterminantProfile


def parametric_polynomials(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    theta: float,
    T: LaurentMatrixPoly | None = None,
) -> ParametricOPUC:
    """Build the slice polynomials at ``z = e^{i theta}``."""
    n, m = deg
    if m == 0:
        raise DegenerateDegree("need degree at least 1 in w")
    ensure_stable(p, deg)
    if T is None:
        T = schur_cohn_matrix(p, deg)
    M = evaluate_on_circle(T, theta)
    L, U = lu_no_pivot(M)
    phi = []
    for i in range(m):
        row = m - 1 - i
        coeffs = np.zeros(i + 1, dtype=complex)
        for col in range(row, m):
            coeffs[m - 1 - col] = U[row, col]
        phi.append(coeffs)
    return ParametricOPUC(
        float(theta), tuple(phi), U, L, principal_determinants(T, theta)
    )


def orthogonality_check(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    theta: float,
    opuc: ParametricOPUC | None = None,
) -> dict:
    """Sliced inner products of the polynomials against both diagonal laws.

    Off-diagonal entries must vanish; diagonal entries are compared to the
    pivot-consistent ratio ``D[m-i]/D[m-i-1]`` and, where defined (i >= 1),
    to the variant ``D[m-i]/D[m-i+1]``.
    """
    ensure_stable(p, deg)
    n, m = deg
    op = opuc if opuc is not None else parametric_polynomials(p, deg, theta)
    sm = _slice_moments_unchecked(p, deg, theta, m - 1)
    gram = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            gram[i, j] = slice_inner_product(op.phi[i], op.phi[j], sm)
    off = 0.0
    if m > 1:
        off = float(np.max(np.abs(gram - np.diag(np.diag(gram)))))
    D = op.D.D
    lu_residual = 0.0
    variant_residual = None
    for i in range(m):
        lu_law = D[m - i] / D[m - i - 1]
        lu_residual = max(lu_residual, abs(gram[i, i] - lu_law))
        if m - i + 1 <= m:
            variant = D[m - i] / D[m - i + 1]
            dev = abs(gram[i, i] - variant)
            variant_residual = dev if variant_residual is None else max(
                variant_residual, dev
            )
    return {
        "gram": gram,
        "profile": D,
        "offdiag_max": off,
        "lu_law_residual": float(lu_residual),
        "variant_law_residual": (
            None if variant_residual is None else float(variant_residual)
        ),
        "matches_lu_law": bool(lu_residual < LAW_TOL),
        "matches_variant_law": (
            None if variant_residual is None else bool(variant_residual < LAW_TOL)
        ),
    }


def moment_vanishing(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    j: int,
    k_list,
    tol: float = 1e-11,
) -> dict:
    """Angle-Fourier coefficients of the weighted squared slice norm.

    Computes ``I(k) = (1/2pi) int e^{ik theta} D[m-j-1](theta)
    <phi_j, phi_j>_theta d theta`` on a doubling uniform grid.  The weighted
    integrand equals ``D[m-j](theta)``, a trigonometric polynomial of degree
    at most ``n (m - j)``, so the integral vanishes beyond that frequency.
    The variant weight ``D[m-j+1]`` is tabulated as well where defined.
    """
    n, m = deg
    if not 0 <= j <= m - 1:
        raise IndexOutOfRange(f"index {j} outside 0..{m - 1}")
    ensure_stable(p, deg)
    T = schur_cohn_matrix(p, deg)
    k_list = [int(k) for k in k_list]
    variant_defined = m - j + 1 <= m

    def tabulate(grid_size: int):
        main = np.zeros(len(k_list), dtype=complex)
        variant = np.zeros(len(k_list), dtype=complex) if variant_defined else None
        for idx in range(grid_size):
            theta = 2.0 * np.pi * idx / grid_size
            op = parametric_polynomials(p, deg, theta, T)
            sm = _slice_moments_unchecked(p, deg, theta, m - 1)
            nrm = slice_inner_product(op.phi[j], op.phi[j], sm).real
            phases = np.exp(1j * theta * np.asarray(k_list))
            main += phases * (op.D.D[m - j - 1] * nrm) / grid_size
            if variant is not None:
                variant += phases * (op.D.D[m - j + 1] * nrm) / grid_size
        return main, variant

    grid_size = 64
    prev_main, prev_variant = tabulate(grid_size)
    while True:
        grid_size *= 2
        main, variant = tabulate(grid_size)
        if float(np.max(np.abs(main - prev_main))) < tol:
            break
        if grid_size >= 2048:
            raise NoConvergence("angle grid for the vanishing check did not settle")
        prev_main, prev_variant = main, variant
    return {
        "k_list": k_list,
        "values": [complex(v) for v in main],
        "variant_values": (
            None if variant is None else [complex(v) for v in variant]
        ),
        "theta_grid": grid_size,
    }


def gram_schmidt_slice_polynomials(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    theta: float,
) -> list[np.ndarray]:
    """Independent construction path: Gram-Schmidt on ``1, w, ..., w^{m-1}``.

    Returns monic polynomials orthogonal on the slice, for comparison with
    the LU route after rescaling to matching leading coefficients.
    """
    ensure_stable(p, deg)
    m = deg.m
    sm = _slice_moments_unchecked(p, deg, theta, m - 1)
    basis: list[np.ndarray] = []
    for d in range(m):
        v = np.zeros(d + 1, dtype=complex)
        v[d] = 1.0
        for q in basis:
            coeff = slice_inner_product(v, q, sm) / slice_inner_product(q, q, sm)
            v[: q.size] -= coeff * q
        basis.append(v)
    return basis
