"""Exception types shared across the package."""


class BscdError(Exception):
    """Base class for all library-specific errors."""


class ZeroBaseNegativeExponent(BscdError):
    """Evaluation hit a negative exponent at a zero argument."""


class SupportOutsideBox(BscdError):
    """A polynomial has exponents outside the declared degree box."""


class ZeroPolynomial(BscdError):
    """The operation requires a nonzero polynomial."""


class InconclusiveNearBoundary(BscdError):
    """A root modulus is too close to 1 for the grid test to decide."""


class NotStable(BscdError):
    """The polynomial is not zero-free on the closed bidisk."""


class NoConvergence(BscdError):
    """Grid refinement hit its cap before reaching the tolerance."""


class TruncationTooSmall(BscdError):
    """Series truncation order is insufficient for the requested accuracy."""


class WindowTooSmall(BscdError):
    """A required moment index lies outside the available window."""

    def __init__(self, index, window):
        self.index = tuple(index)
        self.window = tuple(window)
        super().__init__(
            f"moment index {self.index} outside window "
            f"|a| <= {self.window[0]}, |b| <= {self.window[1]}"
        )


class DegenerateDegree(BscdError):
    """The declared degree is too small for the requested construction."""


class NegativeExponentResidue(BscdError):
    """Clearing the z-prefactor left negative exponents behind."""


class NonzeroRemainder(BscdError):
    """Synthetic division left a remainder above tolerance."""


class IllConditionedGram(BscdError):
    """A Gram matrix is too ill conditioned to invert reliably."""


class RankDeficient(BscdError):
    """A linear system that should be nonsingular was not."""


class NotPositiveDefinite(BscdError):
    """A pivot fell below threshold during factorization."""


class IndexOutOfRange(BscdError):
    """An index argument is outside its valid range."""


class ConfigInvalid(BscdError):
    """A run configuration failed validation."""


class IoFailure(BscdError):
    """Writing a report failed."""
