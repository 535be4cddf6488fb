"""Dense complex linear-algebra contract shared by every fitter.

Thin wrappers around LAPACK (via numpy/scipy) with the conventions the
fitters rely on: descending singular values, minimum-norm least squares,
(alpha, beta) generalized eigenvalue pairs, and companion-matrix roots.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import NumericalError, ParameterError

# relative thresholds: double-precision noise floor with headroom
EPS_FINITE = 1e-12  # |beta| below this (relative) flags an infinite eigenvalue
EPS_TRIM = 1e-13  # trailing polynomial coefficients below this are dropped

__all__ = [
    "SvdResult",
    "svd_full",
    "trailing_left_singular_block",
    "lstsq",
    "gen_eig",
    "finite_eigenvalues",
    "companion_roots",
]


@dataclass(frozen=True)
class SvdResult:
    u: np.ndarray  # column-orthonormal left singular vectors
    s: np.ndarray  # singular values, descending
    v: np.ndarray  # column-orthonormal right singular vectors (M = u @ diag(s) @ v*)


def svd_full(M):
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.size == 0:
        raise ParameterError("cannot take the SVD of an empty matrix")
    try:
        u, s, vh = np.linalg.svd(M, full_matrices=True)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"SVD did not converge for shape {M.shape}: {e}") from e
    return SvdResult(u, s, vh.conj().T)


def trailing_left_singular_block(M, m):
    """The m left singular vectors for the m smallest singular values, as rows.

    Returns W of shape (m, rows(M)), scaled to unit Frobenius norm.  Among all
    unit-Frobenius-norm W with orthonormal rows this minimizes ||W @ M||_F.
    """
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.shape[0] % m != 0:
        raise ParameterError(f"block height {m} does not divide {M.shape[0]} rows")
    u = svd_full(M).u
    return u[:, -m:].conj().T / np.sqrt(m)


def lstsq(A, B):
    """Minimum-norm least squares solution of A X = B."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    B = np.asarray(B, dtype=complex)
    if A.shape[0] != B.shape[0]:
        raise ParameterError(f"row mismatch: A has {A.shape[0]}, B has {B.shape[0]}")
    X, _, _, _ = np.linalg.lstsq(A, B, rcond=None)
    return X


def gen_eig(A, B):
    """Generalized eigenvalues of (A, B) as a list of (alpha, beta) pairs.

    Each pair encodes the eigenvalue alpha/beta; pairs whose |beta| falls
    below EPS_FINITE * max(||A||, ||B||) represent infinite eigenvalues.
    """
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    B = np.atleast_2d(np.asarray(B, dtype=complex))
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ParameterError(f"need equal square matrices, got {A.shape}, {B.shape}")
    try:
        alpha, beta = scipy.linalg.eig(A, B, right=False, homogeneous_eigvals=True)
    except scipy.linalg.LinAlgError as e:
        raise NumericalError(f"QZ iteration failed for size {A.shape[0]}: {e}") from e
    return list(zip(alpha, beta))


def _beta_floor(A, B):
    scale = max(np.linalg.norm(np.atleast_2d(A)), np.linalg.norm(np.atleast_2d(B)))
    return EPS_FINITE * max(scale, 1.0)


def finite_eigenvalues(A, B):
    """Finite generalized eigenvalues alpha/beta of the pair (A, B)."""
    floor = _beta_floor(A, B)
    return np.array(
        [a / b for a, b in gen_eig(A, B) if abs(b) > floor], dtype=complex
    )


def companion_roots(coeffs):
    """All roots of the polynomial with ascending-degree coefficients."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0 or not np.any(c != 0):
        raise ParameterError("zero polynomial has no well-defined roots")
    cmax = np.max(np.abs(c))
    deg = c.size - 1
    while deg > 0 and abs(c[deg]) <= EPS_TRIM * cmax:
        deg -= 1
    if deg == 0:
        return np.array([], dtype=complex)
    return np.roots(c[deg::-1]).astype(complex)
