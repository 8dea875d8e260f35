"""Gram-based reproducing kernels and orthogonality verification suites.

A finite monomial span, or the orthogonal complement of a nested span inside
a larger one, has a reproducing kernel expressible through the inverse Gram
matrix of its monomials:

    K(x; y) = v1(x)^T G1^{-1} conj(v1(y)) - v2(x)^T G2^{-1} conj(v2(y)).

Everything in this module reduces statements about infinite monomial families
to explicit finite windows with margins; residuals decay geometrically in the
margin because the underlying measures have analytic densities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cd_kernel import CDKernelSet
from .errors import (
    DegenerateDegree,
    IllConditionedGram,
    IndexOutOfRange,
    RankDeficient,
)
from .measure import (
    MomentTable,
    ensure_stable,
    inner_product,
    torus_grid_values,
)
from .poly import BivariateLaurentPoly, DegreePair
from .schur_cohn import diagonal_average, schur_cohn_matrix

GRAM_CONDITION_CAP = 1e12


# ----------------------------------------------------------------------
# Index-set predicates and span descriptions
# ----------------------------------------------------------------------


def in_coefficient_orthogonality_set(i: int, j: int, k: int, deg: DegreePair) -> bool:
    """Membership in the annihilated index set of the k-th kernel coefficient.

    The set is everything in the strip ``0 <= j < m`` except the single
    monomial ``(n, k)``, together with the two quadrant pieces
    ``{i > n, j < 0}`` and ``{i < n, j >= m}``.
    """
    n, m = deg
    return (
        (i > n and j < 0)
        or (0 <= j < m and j != k)
        or (i < n and j >= m)
        or (j == k and i != n)
    )


def in_kernel_orthogonality_set(i: int, j: int, deg: DegreePair) -> bool:
    """Membership in the set annihilated by the full parametrized kernel."""
    n, m = deg
    return (
        (i > n and j < 0)
        or (i != n and 0 <= j < m)
        or (i < n and j >= m)
    )


def monomial_rect(i0: int, i1: int, j0: int, j1: int) -> tuple[tuple[int, int], ...]:
    """All exponent pairs of the rectangle, row-major by z-exponent."""
    return tuple((i, j) for i in range(i0, i1 + 1) for j in range(j0, j1 + 1))


@dataclass(frozen=True)
class SubspaceSpec:
    """Monomials of an enclosing span and of a nested span to subtract."""

    S1: tuple[tuple[int, int], ...]
    S2: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if len(set(self.S1)) != len(self.S1) or len(set(self.S2)) != len(self.S2):
            raise ValueError("duplicate exponents in subspace spec")
        if not set(self.S2) <= set(self.S1):
            raise ValueError("S2 must be contained in S1")


# ----------------------------------------------------------------------
# Gram machinery
# ----------------------------------------------------------------------


def gram_matrix(S, moments: MomentTable) -> np.ndarray:
    """Hermitian Gram matrix ``G[a, b] = <m_b, m_a>`` over the monomial list."""
    S = list(S)
    G = np.empty((len(S), len(S)), dtype=complex)
    for r, (ri, rj) in enumerate(S):
        for c, (ci, cj) in enumerate(S):
            G[r, c] = moments.get(ci - ri, cj - rj)
    return 0.5 * (G + G.conj().T)


def _checked_inverse(G: np.ndarray) -> np.ndarray:
    eigs = np.linalg.eigvalsh(G)
    if eigs[0] <= 0 or eigs[-1] / eigs[0] > GRAM_CONDITION_CAP:
        raise IllConditionedGram(
            f"Gram spectrum [{eigs[0]:.3e}, {eigs[-1]:.3e}]"
        )
    # Cholesky-based inverse keeps the result Hermitian
    L = np.linalg.cholesky(G)
    inv_L = np.linalg.inv(L)
    return inv_L.conj().T @ inv_L


def _monomial_values(S, point) -> np.ndarray:
    z, w = complex(point[0]), complex(point[1])
    return np.array([z**i * w**j for (i, j) in S], dtype=complex)


class KernelEvaluator:
    """Reproducing kernel of ``span(S1) - span(S2)`` in Gram form."""

    __slots__ = ("spec", "gram", "gram2", "_inv1", "_inv2")

    def __init__(self, spec: SubspaceSpec, moments: MomentTable):
        self.spec = spec
        self.gram = gram_matrix(spec.S1, moments)
        self._inv1 = _checked_inverse(self.gram)
        if spec.S2:
            self.gram2 = gram_matrix(spec.S2, moments)
            self._inv2 = _checked_inverse(self.gram2)
        else:
            self.gram2 = None
            self._inv2 = None

    def evaluate(self, x, y) -> complex:
        v1x = _monomial_values(self.spec.S1, x)
        v1y = _monomial_values(self.spec.S1, y)
        value = v1x @ self._inv1 @ np.conj(v1y)
        if self._inv2 is not None:
            v2x = _monomial_values(self.spec.S2, x)
            v2y = _monomial_values(self.spec.S2, y)
            value -= v2x @ self._inv2 @ np.conj(v2y)
        return complex(value)

    def kernel_section(self, y) -> BivariateLaurentPoly:
        """The polynomial ``K(., y)``; pair it with moments to reproduce."""
        coeffs: dict[tuple[int, int], complex] = {}
        u1 = self._inv1 @ np.conj(_monomial_values(self.spec.S1, y))
        for (i, j), c in zip(self.spec.S1, u1):
            coeffs[(i, j)] = coeffs.get((i, j), 0j) + c
        if self._inv2 is not None:
            u2 = self._inv2 @ np.conj(_monomial_values(self.spec.S2, y))
            for (i, j), c in zip(self.spec.S2, u2):
                coeffs[(i, j)] = coeffs.get((i, j), 0j) - c
        return BivariateLaurentPoly(coeffs)


def reproducing_kernel(spec: SubspaceSpec, moments: MomentTable) -> KernelEvaluator:
    return KernelEvaluator(spec, moments)


def orthonormal_complement_basis(
    spec: SubspaceSpec, moments: MomentTable
) -> list[BivariateLaurentPoly]:
    """Orthonormal basis of ``span(S1) - span(S2)`` as explicit polynomials."""
    residuals = []
    extra = [mu for mu in spec.S1 if mu not in set(spec.S2)]
    if spec.S2:
        G2 = gram_matrix(spec.S2, moments)
        eigs = np.linalg.eigvalsh(G2)
        if eigs[0] <= 0 or eigs[-1] / eigs[0] > GRAM_CONDITION_CAP:
            raise IllConditionedGram("nested-span Gram is not invertible")
    for mu in extra:
        b = BivariateLaurentPoly.monomial(*mu)
        if spec.S2:
            r = np.array(
                [moments.get(mu[0] - a[0], mu[1] - a[1]) for a in spec.S2]
            )
            x = np.linalg.solve(G2, r)
            for coeff, alpha in zip(x, spec.S2):
                b = b - BivariateLaurentPoly.monomial(*alpha).scale(coeff)
        residuals.append(b)
    Gb = np.empty((len(residuals), len(residuals)), dtype=complex)
    for r in range(len(residuals)):
        for c in range(len(residuals)):
            Gb[r, c] = inner_product(residuals[c], residuals[r], moments)
    Gb = 0.5 * (Gb + Gb.conj().T)
    eigs = np.linalg.eigvalsh(Gb)
    if eigs[0] <= 0 or eigs[-1] / eigs[0] > GRAM_CONDITION_CAP:
        raise IllConditionedGram("complement Gram is not invertible")
    C = np.linalg.inv(np.linalg.cholesky(Gb)).conj().T
    basis = []
    for k in range(len(residuals)):
        phi = BivariateLaurentPoly.zero()
        for j in range(len(residuals)):
            if C[j, k] != 0:
                phi = phi + residuals[j].scale(C[j, k])
        basis.append(phi)
    return basis


# ----------------------------------------------------------------------
# Reconstruction from orthogonality
# ----------------------------------------------------------------------


def reconstruct_kernel_coefficient(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    k: int,
    moments: MomentTable,
) -> BivariateLaurentPoly:
    """Recover the k-th kernel coefficient from its orthogonality relations.

    Solves for the element of span{z^i w^j : 0 <= i <= 2n, 0 <= j < m} that
    is orthogonal to every monomial of the box except ``z^n w^k``, then
    normalizes: the pairing against ``z^n w^k`` is real positive and the
    squared norm equals the circle average of the matching Schur-Cohn
    diagonal entry.
    """
    ensure_stable(p, deg)
    n, m = deg
    if not 0 <= k < m:
        raise IndexOutOfRange(f"coefficient index {k} outside 0..{m - 1}")
    S = monomial_rect(0, 2 * n, 0, m - 1)
    G = gram_matrix(S, moments)
    eigs = np.linalg.eigvalsh(G)
    if eigs[0] <= 0 or eigs[-1] / eigs[0] > GRAM_CONDITION_CAP:
        raise RankDeficient(f"box Gram spectrum [{eigs[0]:.3e}, {eigs[-1]:.3e}]")
    pivot = S.index((n, k))
    rhs = np.zeros(len(S), dtype=complex)
    rhs[pivot] = 1.0
    x = np.linalg.solve(G, rhs)
    raw_norm2 = x[pivot].real
    if raw_norm2 <= 0:
        raise RankDeficient("solved coefficient vector has nonpositive norm")
    target = diagonal_average(schur_cohn_matrix(p, deg), k)
    scale = np.sqrt(target / raw_norm2)
    return BivariateLaurentPoly(
        {S[idx]: scale * x[idx] for idx in range(len(S))}
    )


# ----------------------------------------------------------------------
# Orthogonality reports
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class OrthReport:
    """Inner products that the theory says vanish, reported verbatim."""

    pairs: tuple[tuple[str, tuple[int, int], complex], ...]
    max_violation: float


def _report(pairs) -> OrthReport:
    max_violation = max((abs(v) for _, _, v in pairs), default=0.0)
    return OrthReport(tuple(pairs), float(max_violation))


def orthogonality_report(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    kernelset: CDKernelSet,
    moments: MomentTable,
    margin: int = 4,
) -> OrthReport:
    """Check every annihilated monomial in a margin window, plus duality.

    The window runs over ``-(n+margin) <= i <= 2n+margin`` and
    ``-(m+margin) <= j <= 2m+margin``.  The duality part checks
    ``<z^{j1+n} w^{k1}, z^{j2} a_{k2}> = 0`` for ``(j1, k1) != (j2, k2)``
    with shifts up to the margin.
    """
    ensure_stable(p, deg)
    n, m = deg
    pairs = []
    for k, ak in enumerate(kernelset.a):
        for i in range(-(n + margin), 2 * n + margin + 1):
            for j in range(-(m + margin), 2 * m + margin + 1):
                if in_coefficient_orthogonality_set(i, j, k, deg):
                    val = inner_product(
                        ak, BivariateLaurentPoly.monomial(i, j), moments
                    )
                    pairs.append((f"a_{k}", (i, j), val))
    for j1 in range(-margin, margin + 1):
        for k1 in range(m):
            for j2 in range(-margin, margin + 1):
                for k2 in range(m):
                    if (j1, k1) == (j2, k2):
                        continue
                    val = inner_product(
                        BivariateLaurentPoly.monomial(j1 + n, k1),
                        kernelset.a[k2].shift(j2, 0),
                        moments,
                    )
                    pairs.append(
                        (f"dual[{j1},{k1};{j2},{k2}]", (j1 + n, k1), val)
                    )
    return _report(pairs)


def kernel_pivot_values(
    kernelset: CDKernelSet, moments: MomentTable
) -> list[complex]:
    """The pairings ``<a_k, z^n w^k>`` (observed to be 1, not assumed)."""
    n, _ = kernelset.deg
    return [
        inner_product(ak, BivariateLaurentPoly.monomial(n, k), moments)
        for k, ak in enumerate(kernelset.a)
    ]


def parameter_sum_orthogonality(
    kernelset: CDKernelSet,
    moments: MomentTable,
    eta: complex,
    margin: int = 4,
) -> OrthReport:
    """The full kernel at one parameter against its annihilated window."""
    n, m = kernelset.deg
    L = kernelset.parameter_sum(eta)
    pairs = []
    for i in range(-(n + margin), 2 * n + margin + 1):
        for j in range(-(m + margin), 2 * m + margin + 1):
            if in_kernel_orthogonality_set(i, j, kernelset.deg):
                val = inner_product(L, BivariateLaurentPoly.monomial(i, j), moments)
                pairs.append((f"L(eta={eta:.3g})", (i, j), val))
    return _report(pairs)


def shift_orthogonality_report(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    kernelset: CDKernelSet,
    moments: MomentTable,
    shift_max: int = 2,
    margin: int = 4,
) -> OrthReport:
    """Shift-invariance checks behind the span identities.

    Part one: ``z^s a_k`` stays orthogonal to every window monomial with
    ``i < n, j >= 0``.  Part two: the complement space spanned against the
    one-step-smaller box is orthogonal to its own z-shifts, checked on an
    orthonormalized basis.
    """
    ensure_stable(p, deg)
    n, m = deg
    pairs = []
    for s in range(shift_max + 1):
        for k, ak in enumerate(kernelset.a):
            shifted = ak.shift(s, 0)
            for i in range(-(n + margin), n):
                for j in range(0, m + margin + 1):
                    val = inner_product(
                        shifted, BivariateLaurentPoly.monomial(i, j), moments
                    )
                    pairs.append((f"z^{s}a_{k}", (i, j), val))
    spec = SubspaceSpec(
        monomial_rect(0, n, 0, m - 1),
        monomial_rect(0, n - 1, 0, m - 1) if n >= 1 else (),
    )
    basis = orthonormal_complement_basis(spec, moments)
    for s in range(1, shift_max + 1):
        for bi, phi_i in enumerate(basis):
            shifted = phi_i.shift(s, 0)
            for bj, phi_j in enumerate(basis):
                val = inner_product(shifted, phi_j, moments)
                pairs.append((f"z^{s}H[{bi}]|H[{bj}]", (s, 0), val))
    return _report(pairs)


# ----------------------------------------------------------------------
# Christoffel-Darboux formula
# ----------------------------------------------------------------------


def cd_formula_residual(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    moments: MomentTable,
    points,
) -> dict:
    """Two-sided check of the bivariate Christoffel-Darboux identity.

    The left side is ``p(x) conj(p(y)) - reflect(p)(x) conj(reflect(p)(y))``;
    the right side combines the reproducing kernels of the two one-step
    difference spans, weighted by ``1 - w conj(w1)`` and ``1 - z conj(z1)``.
    """
    n, m = deg
    if n == 0 or m == 0:
        raise DegenerateDegree("the identity needs degree at least 1 in each variable")
    ensure_stable(p, deg)
    K1 = reproducing_kernel(
        SubspaceSpec(
            monomial_rect(0, n, 0, m - 1), monomial_rect(0, n - 1, 0, m - 1)
        ),
        moments,
    )
    K2 = reproducing_kernel(
        SubspaceSpec(
            monomial_rect(0, n - 1, 0, m), monomial_rect(0, n - 1, 1, m)
        ),
        moments,
    )
    pr = p.reflect(deg)
    worst = 0.0
    for z, w, z1, w1 in points:
        lhs = p(z, w) * np.conj(p(z1, w1)) - pr(z, w) * np.conj(pr(z1, w1))
        rhs = (1 - w * np.conj(w1)) * K1.evaluate((z, w), (z1, w1))
        rhs += (1 - z * np.conj(z1)) * K2.evaluate((z, w), (z1, w1))
        worst = max(worst, abs(lhs - rhs))
    return {"max_residual": float(worst), "points": len(list(points))}


# ----------------------------------------------------------------------
# Closed-form kernel of the L-shaped span
# ----------------------------------------------------------------------


def _lshape_member(f: BivariateLaurentPoly, deg: DegreePair) -> bool:
    n, m = deg
    for (i, j), _ in f.items():
        if i < 0 or j < 0 or (i >= n and j >= m):
            return False
    return True


def closed_form_kernel_pairing(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    f: BivariateLaurentPoly,
    y,
    grid: int = 512,
    _cache: dict | None = None,
) -> complex:
    """Quadrature of ``<f, K(., y)>`` for the closed-form corner kernel

        K(x; y) = [p(x) conj(p(y)) - refl(x) conj(refl(y))]
                  / [(1 - z conj(yz)) (1 - w conj(yw))].

    The integrand is analytic near the torus for ``y`` in the open bidisk,
    so the uniform grid sum converges spectrally.
    """
    pr = p.reflect(deg)
    if _cache is not None and ("V", grid) in _cache:
        V = _cache[("V", grid)]
        Vr = _cache[("Vr", grid)]
    else:
        V = torus_grid_values(p, grid)
        Vr = torus_grid_values(pr, grid)
        if _cache is not None:
            _cache[("V", grid)] = V
            _cache[("Vr", grid)] = Vr
    yz, yw = complex(y[0]), complex(y[1])
    circle = np.exp(2j * np.pi * np.arange(grid) / grid)
    denom_z = 1.0 - np.conj(circle) * yz
    denom_w = 1.0 - np.conj(circle) * yw
    K_conj = (np.conj(V) * p(yz, yw) - np.conj(Vr) * pr(yz, yw)) / np.outer(
        denom_z, denom_w
    )
    f_vals = torus_grid_values(f, grid)
    integrand = f_vals * K_conj / np.abs(V) ** 2
    return complex(integrand.mean())


def closed_form_kernel_residual(
    p: BivariateLaurentPoly,
    deg: DegreePair,
    moments: MomentTable,
    test_functions,
    points,
    grid: int = 512,
) -> dict:
    """Reproducing-property check for the corner-span kernel.

    Functions supported on the L-shaped index set must be reproduced at
    every interior point.  Functions with a component in the removed corner
    are compared against the Gram projection onto the L-shaped monomials of
    their own coefficient box, which the closed form must match exactly.
    """
    ensure_stable(p, deg)
    n, m = deg
    cache: dict = {}
    reproducing_max = 0.0
    projection_max = 0.0
    for f in test_functions:
        if f.is_zero:
            continue
        box = f.support_box
        if box[0] < 0 or box[2] < 0:
            raise ValueError("test functions must be genuine polynomials")
        member = _lshape_member(f, deg)
        if not member:
            W = [
                (i, j)
                for i in range(box[1] + 1)
                for j in range(box[3] + 1)
                if not (i >= n and j >= m)
            ]
            G = gram_matrix(W, moments)
            r = np.array(
                [
                    inner_product(f, BivariateLaurentPoly.monomial(i, j), moments)
                    for (i, j) in W
                ]
            )
            x = np.linalg.solve(G, r)
        for y in points:
            paired = closed_form_kernel_pairing(p, deg, f, y, grid, cache)
            if member:
                reproducing_max = max(reproducing_max, abs(paired - f(*y)))
            else:
                projected = sum(
                    coeff * complex(y[0]) ** i * complex(y[1]) ** j
                    for coeff, (i, j) in zip(x, W)
                )
                projection_max = max(projection_max, abs(paired - projected))
    return {
        "max_residual": float(max(reproducing_max, projection_max)),
        "reproducing_max": float(reproducing_max),
        "projection_max": float(projection_max),
    }


def default_lshape_monomials(
    deg: DegreePair, count: int = 10, margin: int = 4
) -> list[BivariateLaurentPoly]:
    """A graded list of monomials from the L-shaped span, for kernel tests."""
    n, m = deg
    picked = []
    for total in range(0, 2 * (max(n, m) + margin) + 1):
        for i in range(0, total + 1):
            j = total - i
            if i > n + margin or j > m + margin:
                continue
            if not (i >= n and j >= m):
                picked.append(BivariateLaurentPoly.monomial(i, j))
                if len(picked) == count:
                    return picked
    return picked
