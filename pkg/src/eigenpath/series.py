"""Maclaurin coefficients of the eigenvalue and eigenvector paths.

For each eigenindex i the eigenvalue path and the eigenvector coordinates
along the family M(theta) are expanded as

    value_i(theta)    = sum_r  A[i, r] * theta^r
    coord_{i,k}(theta) = sum_r  B[i, k, r] * theta^r

where coord_{i,k} = <x_i(theta), e_k>.  With X the interaction matrix and
w_i the base eigenvalues, the coefficients satisfy, order by order,

    A[i, 0] = w_i,   B[i, k, 0] = delta_ik,
    A[i, r] = sum_j X[j, i] * B[i, j, r-1]  -  w_i * B[i, i, r-1]
    B[i, k, r] = ( sum_j X[j, k] * B[i, j, r-1]
                   - sum_{m=1}^{r-1} A[i, r-m] * B[i, k, m]
                   - w_k * B[i, k, r-1] ) / (w_i - w_k)        for k != i
    B[i, i, r] = 0                                             for r >= 1

The vanishing diagonal is a normalization choice: it fixes
<x_i(theta), e_i> = 1 along the whole path, so evaluated eigenvectors carry
a well-defined gauge until they are re-scaled to unit norm.

Each eigenindex is independent of the others, so the computation may be
partitioned by i; the single-threaded loop below is the reference schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import freeze, max_abs
from .errors import DegenerateBaseSpectrumError, NonFiniteCoefficientError
from .operators import DEFAULT_GAP_TOL, HomotopyProblem, check_gaps


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficient tensors up to a truncation order.

    ``value_coeffs[i, r]`` is the order-r coefficient of eigenvalue path i;
    ``coord_coeffs[i, k, r]`` the order-r coefficient of its coordinate along
    basis vector k.  ``base_values`` copies the order-0 eigenvalues.
    """

    value_coeffs: np.ndarray  # (n, order+1)
    coord_coeffs: np.ndarray  # (n, n, order+1)
    base_values: np.ndarray  # (n,)

    def __post_init__(self):
        object.__setattr__(self, "value_coeffs", freeze(self.value_coeffs))
        object.__setattr__(self, "coord_coeffs", freeze(self.coord_coeffs))
        object.__setattr__(self, "base_values", freeze(self.base_values))

    @property
    def dim(self) -> int:
        return self.value_coeffs.shape[0]

    @property
    def order(self) -> int:
        return self.value_coeffs.shape[1] - 1


def compute_coefficients(
    problem: HomotopyProblem,
    order: int,
    gap_tol: float = DEFAULT_GAP_TOL,
) -> SeriesCoefficients:
    """Run the coefficient recursion up to ``order``.

    A bitwise-identical reference and target short-circuit to exact zeros
    for every order >= 1: the family is then constant in theta, and the
    all-zero tail is the mathematically exact answer rather than the
    floating-point noise the recursion would produce from a numerically
    diagonalized basis.

    Raises
    ------
    DegenerateBaseSpectrumError
        When two base eigenvalues are closer than the scaled gap tolerance.
    NonFiniteCoefficientError
        When the recursion overflows (wildly divergent series).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    n = problem.dim
    w = problem.basis.values
    check_gaps(w, gap_tol)

    A = np.zeros((n, order + 1))
    B = np.zeros((n, n, order + 1))
    A[:, 0] = w
    B[:, :, 0] = np.eye(n)

    if max_abs(problem.target - problem.reference) == 0.0:
        return SeriesCoefficients(A, B, w.copy())

    X = problem.interaction
    for i in range(n):
        gaps = w[i] - w
        Ai = A[i]
        Bi = B[i]
        for r in range(1, order + 1):
            beta = Bi[:, r - 1]
            Ai[r] = X[:, i] @ beta - w[i] * beta[i]
            # history term sum_{m=1}^{r-1} A[i, r-m] * B[i, :, m]
            hist = Bi[:, 1:r] @ Ai[r - 1:0:-1] if r >= 2 else 0.0
            numer = X.T @ beta - hist - w * beta
            with np.errstate(divide="ignore", invalid="ignore"):
                row = numer / gaps
            row[i] = 0.0
            Bi[:, r] = row
            if not (np.isfinite(Ai[r]) and np.isfinite(row).all()):
                bad = int(np.argmax(~np.isfinite(row))) if not np.isfinite(row).all() else i
                raise NonFiniteCoefficientError(i + 1, bad + 1, r)
    return SeriesCoefficients(A, B, w.copy())


def closed_form_order1(problem: HomotopyProblem, gap_tol: float = DEFAULT_GAP_TOL):
    """Order-1 coefficients directly, without running the recursion.

        a1[i]    = X[i, i] - w_i
        b1[i, k] = X[i, k] / (w_i - w_k)   for k != i, else 0

    Used as an independent cross-check of the recursion's r=1 slice.
    """
    w = problem.basis.values
    check_gaps(w, gap_tol)
    n = problem.dim
    if max_abs(problem.target - problem.reference) == 0.0:
        return np.zeros(n), np.zeros((n, n))
    X = problem.interaction
    a1 = np.diag(X) - w
    gaps = w[:, None] - w[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        b1 = X / gaps
    np.fill_diagonal(b1, 0.0)
    return a1, b1


def closed_form_order2(problem: HomotopyProblem, gap_tol: float = DEFAULT_GAP_TOL):
    """Order-2 coefficients directly.

        a2[i]    = sum_{j != i} X[i, j] * X[j, i] / (w_i - w_j)
        b2[i, k] = [ sum_{j != i} X[j, k] * X[i, j] / (w_i - w_j)
                     + X[i, k] * (1 - X[i, i] / (w_i - w_k)) ] / (w_i - w_k)

    for k != i, zero on the diagonal.  Algebraically identical to the r=2
    slice of the recursion (the tests enforce agreement to rounding).
    """
    w = problem.basis.values
    check_gaps(w, gap_tol)
    n = problem.dim
    if max_abs(problem.target - problem.reference) == 0.0:
        return np.zeros(n), np.zeros((n, n))
    X = problem.interaction
    gaps = w[:, None] - w[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = X / gaps  # ratio[i, j] = X[i, j] / (w_i - w_j)
    np.fill_diagonal(ratio, 0.0)

    a2 = np.einsum("ij,ji->i", ratio, X)
    inner = ratio @ X  # inner[i, k] = sum_{j != i} X[i, j]/(w_i - w_j) * X[j, k]
    with np.errstate(divide="ignore", invalid="ignore"):
        b2 = (inner + X * (1.0 - np.diag(X)[:, None] / gaps)) / gaps
    np.fill_diagonal(b2, 0.0)
    return a2, b2
