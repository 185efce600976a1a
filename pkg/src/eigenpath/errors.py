"""Exception hierarchy.

Eigenpair labels carried by these exceptions (and echoed in their messages)
are 1-based, matching the numbering used in reports and CLI output; library
function arguments stay 0-based.
"""

from __future__ import annotations


class EigenpathError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(EigenpathError):
    """Operands that must share a dimension do not."""


class NotSymmetricError(EigenpathError):
    """A symmetric operator was required but the input is not symmetric."""


class NotAnEigenbasisError(EigenpathError):
    """Supplied vectors fail the eigen-residual check against the reference operator."""

    def __init__(self, index: int, residual: float, tolerance: float):
        self.index = index  # 1-based label of the worst vector
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"vector {index} has eigen-residual {residual:.3e} "
            f"(tolerance {tolerance:.3e}); not an eigenbasis of the reference operator"
        )


class DegenerateBaseSpectrumError(EigenpathError):
    """Two base eigenvalues coincide within the gap tolerance.

    The recursion divides by differences of base eigenvalues, so repeated
    values are rejected rather than resolved.  ``index_a``/``index_b`` are
    1-based labels of the colliding eigenvalues.
    """

    def __init__(self, index_a: int, index_b: int, gap: float, stage: int | None = None):
        self.index_a = index_a
        self.index_b = index_b
        self.gap = gap
        self.stage = stage
        where = f" at continuation stage {stage}" if stage is not None else ""
        super().__init__(
            f"base eigenvalues {index_a} and {index_b} are separated by only "
            f"{gap:.3e}{where}; degenerate spectra are not supported"
        )


class NonFiniteCoefficientError(EigenpathError):
    """Series recursion overflowed to a non-finite value."""

    def __init__(self, index: int, coord: int, order: int):
        self.index = index
        self.coord = coord
        self.order = order
        super().__init__(
            f"non-finite coefficient for eigenpair {index}, coordinate {coord}, order {order}"
        )


class InsufficientOrderError(EigenpathError):
    """Truncation order too small for the requested diagnostic."""


class ZeroVectorError(EigenpathError):
    """Evaluated eigenvector has zero or non-finite norm."""


class NoConvergenceError(EigenpathError):
    """Jacobi sweeps exhausted before the off-diagonal norm dropped below tolerance."""

    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"jacobi solver did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )


class AmbiguousMatchError(EigenpathError):
    """Eigenpair matching produced an overlap too weak to trust."""

    def __init__(self, min_overlap: float):
        self.min_overlap = min_overlap
        super().__init__(
            f"ambiguous eigenpair matching: weakest matched overlap {min_overlap:.6f} <= 1/sqrt(2)"
        )


class ReorthonormalizationError(EigenpathError):
    """Gram-Schmidt hit a near-zero pivot; the stage basis collapsed."""

    def __init__(self, index: int, pivot: float, stage: int | None = None):
        self.index = index
        self.pivot = pivot
        self.stage = stage
        where = f" at continuation stage {stage}" if stage is not None else ""
        super().__init__(
            f"re-orthonormalization pivot {pivot:.3e} for vector {index}{where} "
            "is below 1e-8; basis collapsed"
        )


class StallError(EigenpathError):
    """Automatic staging stopped making progress."""

    def __init__(self, theta: float, step: float):
        self.theta = theta
        self.step = step
        super().__init__(
            f"auto staging stalled at theta={theta:.6f} (step {step:.3e} < 1e-3); "
            "the path is likely near-degenerate"
        )


class MatrixMarketError(EigenpathError):
    """Base class for Matrix Market parsing errors."""


class MalformedHeaderError(MatrixMarketError):
    """Header or size line does not follow the Matrix Market grammar."""


class NonRealFieldError(MatrixMarketError):
    """Matrix Market field is not 'real' (integer/complex/pattern are rejected)."""


class IndexOutOfRangeError(MatrixMarketError):
    """Coordinate entry addresses a cell outside the declared size."""


class DuplicateEntryError(MatrixMarketError):
    """Coordinate entry specifies the same cell twice."""
