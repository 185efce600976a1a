"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, NotSymmetricError


def as_operator(A, name: str = "operator") -> np.ndarray:
    """Coerce to a finite, square, float64 matrix (C-ordered copy-on-need)."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"{name} must be a square matrix, got shape {A.shape}")
    if A.shape[0] < 1:
        raise DimensionMismatchError(f"{name} must have dimension >= 1")
    if not np.isfinite(A).all():
        raise ValueError(f"{name} contains non-finite entries")
    return A


def as_vector(x, n: int, name: str = "vector") -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != n:
        raise DimensionMismatchError(f"{name} must be a vector of length {n}, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError(f"{name} contains non-finite entries")
    return x


def max_abs(A: np.ndarray) -> float:
    return float(np.abs(A).max()) if A.size else 0.0


def is_symmetric(A: np.ndarray, sym_tol: float = 1e-10) -> bool:
    """True when max|A - A^T| <= sym_tol * max(1, max|A|)."""
    return max_abs(A - A.T) <= sym_tol * max(1.0, max_abs(A))


def require_symmetric(A: np.ndarray, name: str = "operator", sym_tol: float = 1e-10) -> np.ndarray:
    if not is_symmetric(A, sym_tol):
        raise NotSymmetricError(f"{name} is not symmetric within tolerance {sym_tol:.1e}")
    return A


def require_same_dimension(*mats: np.ndarray) -> int:
    n = mats[0].shape[0]
    for M in mats[1:]:
        if M.shape[0] != n:
            raise DimensionMismatchError(
                f"operands disagree on dimension: {n} vs {M.shape[0]}"
            )
    return n


def freeze(A: np.ndarray) -> np.ndarray:
    """Return a read-only view so stored arrays stay immutable."""
    A = np.ascontiguousarray(A)
    A.setflags(write=False)
    return A
