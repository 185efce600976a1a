"""Operator pairs, orthonormal eigenbases, and the interpolating family.

A problem instance pairs a *reference* operator (whose eigendecomposition is
known) with a *target* operator, both real square matrices of the same
dimension.  The one-parameter family

    M(theta) = theta * target + (1 - theta) * reference

runs from the reference at theta=0 to the target at theta=1.  The target
enters all series computations only through the interaction matrix

    X[m, k] = <target @ e_m, e_k>

of the target against the reference eigenbasis, with <u, v> the standard
real dot product.  Note the transposition this convention implies for
non-symmetric targets: with the standard basis, X[m, k] = target[k, m].

All containers are immutable after construction and safe to share across
workers; every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import (
    as_operator,
    as_vector,
    freeze,
    max_abs,
    require_same_dimension,
)
from .errors import (
    DegenerateBaseSpectrumError,
    DimensionMismatchError,
    NotAnEigenbasisError,
)

DEFAULT_ORTHO_TOL = 1e-10
DEFAULT_EIG_TOL = 1e-10
DEFAULT_GAP_TOL = 1e-10


@dataclass(frozen=True)
class OrthonormalityReport:
    """Outcome of an orthonormality check.

    ``vector_a``/``vector_b`` are 1-based labels of the worst pair and
    ``inner_product`` their raw dot product; ``deviation`` is the distance
    of that dot product from the Kronecker delta.
    """

    ok: bool
    vector_a: int
    vector_b: int
    inner_product: float
    deviation: float


@dataclass(frozen=True)
class EigenBasis:
    """Orthonormal eigenvectors (columns) of the reference operator with their eigenvalues."""

    vectors: np.ndarray  # (n, n), column j is the j-th basis vector
    values: np.ndarray  # (n,)

    def __post_init__(self):
        object.__setattr__(self, "vectors", freeze(np.asarray(self.vectors, dtype=float)))
        object.__setattr__(self, "values", freeze(np.asarray(self.values, dtype=float)))
        if self.vectors.ndim != 2 or self.vectors.shape[0] != self.vectors.shape[1]:
            raise DimensionMismatchError("basis vectors must form a square matrix of columns")
        if self.values.shape != (self.vectors.shape[0],):
            raise DimensionMismatchError("one eigenvalue per basis vector is required")

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class HomotopyProblem:
    """Validated (reference, target, basis, interaction) bundle."""

    reference: np.ndarray
    target: np.ndarray
    basis: EigenBasis
    interaction: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.dim


def validate_orthonormal_basis(vectors, ortho_tol: float = DEFAULT_ORTHO_TOL) -> OrthonormalityReport:
    """Check a set of vectors for pairwise orthonormality.

    ``vectors`` is a sequence of n length-n vectors (or an (n, n) array whose
    *columns* are the vectors).  Returns a report whose ``ok`` is true iff
    max |<v_a, v_b> - delta_ab| <= ortho_tol; the report always carries the
    worst pair.
    """
    V = _as_columns(vectors)
    G = V.T @ V
    dev = np.abs(G - np.eye(V.shape[1]))
    a, b = np.unravel_index(np.argmax(dev), dev.shape)
    worst = float(dev[a, b])
    return OrthonormalityReport(
        ok=worst <= ortho_tol,
        vector_a=int(a) + 1,
        vector_b=int(b) + 1,
        inner_product=float(G[a, b]),
        deviation=worst,
    )


def base_eigenvalues(
    reference,
    vectors,
    eig_tol: float = DEFAULT_EIG_TOL,
) -> np.ndarray:
    """Rayleigh quotients <reference @ e_i, e_i> for an orthonormal basis.

    Also enforces the eigen-residual invariant
    ||reference @ e_i - value_i * e_i|| <= eig_tol * max(1, max|reference|)
    and raises :class:`NotAnEigenbasisError` carrying the worst offender.
    """
    K = as_operator(reference, "reference")
    V = _as_columns(vectors)
    require_same_dimension(K, V)
    KV = K @ V
    values = np.einsum("ij,ij->j", V, KV)
    residuals = np.linalg.norm(KV - V * values, axis=0)
    bound = eig_tol * max(1.0, max_abs(K))
    worst = int(np.argmax(residuals))
    if residuals[worst] > bound:
        raise NotAnEigenbasisError(worst + 1, float(residuals[worst]), bound)
    return values


def interaction_matrix(target, basis: EigenBasis) -> np.ndarray:
    """Target operator expressed against the basis: X[m, k] = <target @ e_m, e_k>."""
    L = as_operator(target, "target")
    require_same_dimension(L, basis.vectors)
    E = basis.vectors
    return E.T @ L.T @ E


def homotopy_apply(reference, target, theta: float, x) -> np.ndarray:
    """Apply M(theta) = theta*target + (1-theta)*reference to a vector.

    theta may lie outside [0, 1]; the endpoints reproduce the pure
    reference/target products exactly.
    """
    K = as_operator(reference, "reference")
    L = as_operator(target, "target")
    n = require_same_dimension(K, L)
    x = as_vector(x, n, "x")
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    return theta * (L @ x) + (1.0 - theta) * (K @ x)


def homotopy_matrix(reference: np.ndarray, target: np.ndarray, theta: float) -> np.ndarray:
    """Dense M(theta), used for residual scaling and oracle calls."""
    return theta * target + (1.0 - theta) * reference


def check_gaps(values: np.ndarray, gap_tol: float = DEFAULT_GAP_TOL, stage: int | None = None) -> None:
    """Reject base spectra with eigenvalues closer than gap_tol * max(1, max|values|).

    The series recursion divides by pairwise differences of these values.
    """
    values = np.asarray(values, dtype=float)
    bound = gap_tol * max(1.0, max_abs(values))
    order = np.argsort(values, kind="stable")
    sv = values[order]
    for j in range(len(sv) - 1):
        gap = abs(sv[j + 1] - sv[j])
        if gap <= bound:
            a, b = sorted((int(order[j]) + 1, int(order[j + 1]) + 1))
            raise DegenerateBaseSpectrumError(a, b, gap, stage=stage)


def eigen_basis(
    reference,
    vectors,
    values=None,
    *,
    ortho_tol: float = DEFAULT_ORTHO_TOL,
    eig_tol: float = DEFAULT_EIG_TOL,
    gap_tol: float = DEFAULT_GAP_TOL,
) -> EigenBasis:
    """Build a validated :class:`EigenBasis` for the reference operator.

    Orthonormality, the eigen-residual bound, and pairwise separation of the
    eigenvalues are all enforced here.  When ``values`` is omitted they are
    computed as Rayleigh quotients.
    """
    K = as_operator(reference, "reference")
    V = _as_columns(vectors)
    require_same_dimension(K, V)
    report = validate_orthonormal_basis(V, ortho_tol)
    if not report.ok:
        raise NotAnEigenbasisError(report.vector_a, report.deviation, ortho_tol)
    if values is None:
        values = base_eigenvalues(K, V, eig_tol)
    else:
        values = as_vector(values, V.shape[0], "values")
        KV = K @ V
        residuals = np.linalg.norm(KV - V * values, axis=0)
        bound = eig_tol * max(1.0, max_abs(K))
        worst = int(np.argmax(residuals))
        if residuals[worst] > bound:
            raise NotAnEigenbasisError(worst + 1, float(residuals[worst]), bound)
    check_gaps(values, gap_tol)
    return EigenBasis(vectors=V, values=values)


def homotopy_problem(
    reference,
    target,
    basis: EigenBasis,
    *,
    gap_tol: float = DEFAULT_GAP_TOL,
) -> HomotopyProblem:
    """Assemble a problem instance from a pre-validated basis.

    The interaction matrix is computed here; all components are frozen.
    """
    K = as_operator(reference, "reference")
    L = as_operator(target, "target")
    require_same_dimension(K, L, basis.vectors)
    check_gaps(basis.values, gap_tol)
    X = interaction_matrix(L, basis)
    if not np.isfinite(X).all():
        raise ValueError("interaction matrix contains non-finite entries")
    return HomotopyProblem(
        reference=freeze(K), target=freeze(L), basis=basis, interaction=freeze(X)
    )


def _as_columns(vectors) -> np.ndarray:
    """Accept a list of vectors or an (n, n) column matrix; validate shape and finiteness."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        V = np.array(vectors, dtype=float)
    else:
        vecs = [np.asarray(v, dtype=float) for v in vectors]
        n = vecs[0].shape[0] if vecs else 0
        for idx, v in enumerate(vecs):
            if v.ndim != 1 or v.shape[0] != n:
                raise DimensionMismatchError(
                    f"basis vector {idx + 1} has shape {v.shape}, expected ({n},)"
                )
        V = np.column_stack(vecs)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise DimensionMismatchError(f"expected n vectors of length n, got shape {V.shape}")
    if not np.isfinite(V).all():
        raise ValueError("basis vectors contain non-finite entries")
    return V
