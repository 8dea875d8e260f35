"""The Schur-Cohn matrix of a stable polynomial.

Writing ``p(z, w) = sum_i p_i(z) w^i``, the m x m matrix combines two pairs
of triangular Toeplitz matrices in the slices ``p_i(z)`` and their
conjugate-reciprocal transforms: entry ``(i, j)`` is

    sum_{k <= min(i,j)}  p_{i-k}(z) * pbar_{j-k}(1/z)
                       - pbar_{m-i+k}(1/z) * p_{m-j+k}(z)

where ``pbar_j(1/z)`` has the conjugated coefficients of ``p_j`` with the
z-exponents negated.  On ``|z| = 1`` the matrix is Hermitian, and for stable
``p`` it is positive definite and inverts the sliced moment matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDegree
from .poly import BivariateLaurentPoly, DegreePair


class LaurentMatrixPoly:
    """Square matrix whose entries are Laurent polynomials in z only.

    Entry ``(j, i)`` is the conjugate-reciprocal transform of entry
    ``(i, j)``, so pointwise evaluation on the unit circle is Hermitian up to
    roundoff.  All entry exponents lie in ``[-n, n]``.
    """

    __slots__ = ("m", "entries")

    def __init__(self, entries):
        self.m = len(entries)
        self.entries = tuple(tuple(row) for row in entries)
        if any(len(row) != self.m for row in self.entries):
            raise ValueError("entry grid must be square")

    def entry(self, i: int, j: int) -> BivariateLaurentPoly:
        return self.entries[i][j]


@dataclass(frozen=True)
class DeterminantProfile:
    """Leading principal determinants at one angle, ``D[0] == 1``."""

    theta: float
    D: tuple[float, ...]


def schur_cohn_matrix(p: BivariateLaurentPoly, deg: DegreePair) -> LaurentMatrixPoly:
    n, m = deg
    if m == 0:
        raise DegenerateDegree("the construction needs degree at least 1 in w")
    p._require_support_in_box(deg)
    slices = [p.w_coefficient(i) for i in range(m + 1)]
    bars = [q.conj_reciprocal() for q in slices]
    entries = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = BivariateLaurentPoly.zero()
            for k in range(min(i, j) + 1):
                acc = acc + slices[i - k] * bars[j - k]
                acc = acc - bars[m - i + k] * slices[m - j + k]
            row.append(acc)
        entries.append(row)
    return LaurentMatrixPoly(entries)


def evaluate_on_circle(T: LaurentMatrixPoly, theta: float) -> np.ndarray:
    """Entrywise value at ``z = e^{i theta}``, symmetrized to exact Hermitian."""
    z = np.exp(1j * float(theta))
    M = np.array([[T.entries[i][j](z, 1.0) for j in range(T.m)] for i in range(T.m)])
    return 0.5 * (M + M.conj().T)


def principal_determinants(T: LaurentMatrixPoly, theta: float) -> DeterminantProfile:
    M = evaluate_on_circle(T, theta)
    D = [1.0]
    for i in range(1, T.m + 1):
        D.append(float(np.linalg.det(M[:i, :i]).real))
    return DeterminantProfile(float(theta), tuple(D))


@dataclass(frozen=True)
class PositivityReport:
    min_eig: float
    all_positive: bool
    theta_at_min: float


def positivity_scan(T: LaurentMatrixPoly, resolution: int = 64) -> PositivityReport:
    """Smallest eigenvalue of the circle evaluation over a uniform angle grid."""
    best = np.inf
    best_theta = 0.0
    for k in range(resolution):
        theta = 2.0 * np.pi * k / resolution
        eig = float(np.linalg.eigvalsh(evaluate_on_circle(T, theta))[0])
        if eig < best:
            best, best_theta = eig, theta
    return PositivityReport(best, best > 0.0, best_theta)


def diagonal_average(T: LaurentMatrixPoly, k: int) -> float:
    """Angle average of the diagonal entry ``(k, k)`` over the circle.

    Equals the constant Laurent coefficient of that entry, so no quadrature
    is involved.
    """
    return T.entries[k][k].coefficient(0, 0).real


def hermitian_structure_defect(T: LaurentMatrixPoly) -> float:
    """Largest coefficient deviation of entry(j, i) from entry(i, j)*."""
    worst = 0.0
    for i in range(T.m):
        for j in range(T.m):
            delta = T.entries[j][i] - T.entries[i][j].conj_reciprocal()
            worst = max(worst, delta.max_abs())
    return worst
