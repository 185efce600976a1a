"""Series evaluation, residuals, and convergence diagnostics.

Residuals are always recomputed from the operator pair itself, never from
coefficient-space quantities, so they stay an independent end-to-end check
on whatever the series produced.  Radius and tail numbers, by contrast, are
heuristics extrapolated from coefficient decay and are labeled as estimates
everywhere they surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import as_operator, as_vector, max_abs, require_same_dimension
from .errors import InsufficientOrderError, ZeroVectorError
from .operators import EigenBasis, HomotopyProblem, homotopy_apply, homotopy_matrix
from .series import SeriesCoefficients, compute_coefficients

DEFAULT_WINDOW = 8
DEFAULT_CONVERGENCE_TOL = 1e-9
_UNDERFLOW_FLOOR = 1e-300


@dataclass(frozen=True)
class EigenpairResult:
    """One evaluated eigenpair of M(theta).

    ``index`` is 0-based.  ``vector`` has unit 2-norm with its
    largest-magnitude entry made positive; ``gauge_vector`` is the raw series
    output, normalized so its coordinate along the matching basis vector is 1.
    ``converged`` holds only when theta lies inside the estimated radius and
    the tail estimate is within tolerance; the residual never enters it.
    """

    index: int
    theta: float
    eigenvalue: float
    vector: np.ndarray
    gauge_vector: np.ndarray
    residual: float
    radius_estimate: float
    tail_estimate: float
    converged: bool


def eval_lambda(coeffs: SeriesCoefficients, i: int, theta: float) -> float:
    """Horner evaluation of eigenvalue path i at theta."""
    c = coeffs.value_coeffs[i]
    acc = 0.0
    for r in range(coeffs.order, -1, -1):
        acc = acc * theta + c[r]
    return float(acc)


def eval_eigenvector(coeffs: SeriesCoefficients, basis: EigenBasis, i: int, theta: float):
    """Evaluate eigenvector path i at theta.

    Returns ``(gauge_vector, unit_vector)``: the raw series output whose
    coordinate along basis vector i is exactly 1, and its unit-norm,
    sign-canonicalized rescaling.
    """
    Bi = coeffs.coord_coeffs[i]
    phi = np.zeros(coeffs.dim)
    for r in range(coeffs.order, -1, -1):
        phi = phi * theta + Bi[:, r]
    raw = basis.vectors @ phi
    norm = float(np.linalg.norm(raw))
    if not math.isfinite(norm) or norm == 0.0:
        raise ZeroVectorError(f"eigenvector {i + 1} evaluated to norm {norm} at theta={theta}")
    return raw, canonical_sign(raw / norm)


def canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip so the largest-magnitude entry (first, on ties) is positive."""
    k = int(np.argmax(np.abs(v)))
    return -v if v[k] < 0 else v


def residual(reference, target, theta: float, eigenvalue: float, x) -> float:
    """Relative residual ||M(theta) x - eigenvalue x|| / max(1, ||x|| * max|M(theta)|)."""
    K = as_operator(reference, "reference")
    L = as_operator(target, "target")
    n = require_same_dimension(K, L)
    x = as_vector(x, n, "x")
    xnorm = float(np.linalg.norm(x))
    if xnorm == 0.0:
        raise ZeroVectorError("residual of a zero vector is undefined")
    r = homotopy_apply(K, L, theta, x) - eigenvalue * x
    scale = max(1.0, xnorm * max_abs(homotopy_matrix(K, L, theta)))
    return float(np.linalg.norm(r) / scale)


def coefficient_magnitudes(coeffs: SeriesCoefficients, i: int) -> np.ndarray:
    """Per-order magnitude c_r = max(|value coeff|, max_k |coord coeff|) for path i."""
    return np.maximum(
        np.abs(coeffs.value_coeffs[i]),
        np.abs(coeffs.coord_coeffs[i]).max(axis=0),
    )


def estimate_radius(coeffs: SeriesCoefficients, i: int, window: int = DEFAULT_WINDOW) -> float:
    """Heuristic convergence radius from the decay of the trailing coefficients.

    Fits the slope s of log c_r against r by least squares over the last
    ``window`` orders (ignoring entries below the underflow floor) and
    returns exp(-s).  A tail of exact zeros means the series terminated:
    returns +inf.
    """
    if window < 3:
        raise ValueError("window must be >= 3")
    if coeffs.order < window + 2:
        raise InsufficientOrderError(
            f"radius estimation needs order >= window + 2 = {window + 2}, got {coeffs.order}"
        )
    c = coefficient_magnitudes(coeffs, i)
    rs = np.arange(coeffs.order - window + 1, coeffs.order + 1)
    usable = c[rs] > _UNDERFLOW_FLOOR
    if usable.sum() < 2:
        return math.inf
    slope = np.polyfit(rs[usable], np.log(c[rs][usable]), 1)[0]
    return float(np.exp(-slope))


def tail_estimate(coeffs: SeriesCoefficients, i: int, theta: float, radius: float) -> float:
    """Geometric truncation-error bound scaled from the last computed coefficient.

    Returns +inf when theta >= radius (outside the trusted disk).  Inside,
    extrapolates the coefficients past the truncation order as a geometric
    sequence with ratio theta/radius:  c_R * q / (1 - q),  q = theta/radius.
    Exact zero when the last coefficient vanished.  Sharp at theta = 1,
    conservative below it.
    """
    if theta < 0:
        raise ValueError("theta must be >= 0")
    c_last = float(coefficient_magnitudes(coeffs, i)[coeffs.order])
    if c_last == 0.0:
        return 0.0
    if theta >= radius:
        return math.inf
    q = theta / radius
    return c_last * q / (1.0 - q)


def solve_at_theta(
    problem: HomotopyProblem,
    order: int,
    theta: float = 1.0,
    convergence_tol: float = DEFAULT_CONVERGENCE_TOL,
    window: int = DEFAULT_WINDOW,
    coeffs: SeriesCoefficients | None = None,
) -> list[EigenpairResult]:
    """Evaluate every eigenpair path at theta with full diagnostics.

    The coefficient tensor is computed once and shared across eigenindices
    (pass ``coeffs`` to reuse one computed elsewhere).  Each result's
    ``converged`` flag requires radius_estimate > theta and
    tail_estimate <= convergence_tol; non-converged results are returned,
    flagged, never suppressed.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    window = min(window, order - 2)
    if window < 3:
        raise InsufficientOrderError(
            f"order {order} is too small for radius diagnostics (need >= 5)"
        )
    if coeffs is None:
        coeffs = compute_coefficients(problem, order)
    results = []
    for i in range(problem.dim):
        value = eval_lambda(coeffs, i, theta)
        raw, unit = eval_eigenvector(coeffs, problem.basis, i, theta)
        res = residual(problem.reference, problem.target, theta, value, unit)
        rho = estimate_radius(coeffs, i, window)
        tail = tail_estimate(coeffs, i, theta, rho)
        results.append(
            EigenpairResult(
                index=i,
                theta=theta,
                eigenvalue=value,
                vector=unit,
                gauge_vector=raw,
                residual=res,
                radius_estimate=rho,
                tail_estimate=tail,
                converged=bool(rho > theta and tail <= convergence_tol),
            )
        )
    return results


def solve_at_one(
    problem: HomotopyProblem,
    order: int,
    convergence_tol: float = DEFAULT_CONVERGENCE_TOL,
    window: int = DEFAULT_WINDOW,
) -> list[EigenpairResult]:
    """Eigenpairs of the target operator: the path evaluated at theta = 1."""
    return solve_at_theta(problem, order, 1.0, convergence_tol, window)
