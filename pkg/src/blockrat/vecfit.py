"""Vector fitting: iterative pole relocation in partial-fraction form.

Scalar VF linearizes r(z) = p(z)/q(z) with q constrained to 1 at infinity,
solves for numerator and denominator coefficients in the partial-fraction
basis of the current poles, and relocates poles to the zeros of q.  The
matrix extension stacks all m*n entries into one fit sharing a common
denominator (symmetry of the data is not required).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import EvaluationError, ParameterError

__all__ = ["PoleResidue", "VfOptions", "vf_scalar", "vf_matrix", "initial_poles"]


@dataclass(frozen=True)
class PoleResidue:
    """R(z) = D + sum_k C_k / (z - xi_k) with matrix constant and residues."""

    const: np.ndarray  # (m, n)
    poles: np.ndarray  # (d,)
    residues: np.ndarray  # (d, m, n)

    def __post_init__(self):
        D = np.atleast_2d(np.asarray(self.const, dtype=complex))
        xi = np.asarray(self.poles, dtype=complex).ravel()
        C = np.asarray(self.residues, dtype=complex)
        if C.size == 0:
            C = np.zeros((0,) + D.shape, dtype=complex)
        if C.ndim != 3 or C.shape[0] != xi.size or C.shape[1:] != D.shape:
            raise ParameterError("residue stack inconsistent with poles/constant")
        if xi.size and len(np.unique(xi)) != xi.size:
            raise ParameterError("poles must be pairwise distinct")
        object.__setattr__(self, "const", D)
        object.__setattr__(self, "poles", xi)
        object.__setattr__(self, "residues", C)

    @property
    def shape(self):
        return self.const.shape

    def __call__(self, z):
        if self.poles.size:
            dist = np.abs(z - self.poles)
            tol = 10 * np.finfo(float).eps * max(np.max(np.abs(self.poles)), 1.0)
            if dist.min() <= tol:
                raise EvaluationError(f"evaluation at a pole: z = {z}")
            return self.const + np.tensordot(1.0 / (z - self.poles), self.residues, axes=(0, 0))
        return self.const.copy()


@dataclass(frozen=True)
class VfOptions:
    iterations: int = 5
    initial_poles: np.ndarray | None = None
    enforce_stability: bool = False

    def __post_init__(self):
        if self.iterations < 1:
            raise ParameterError("need at least one VF iteration")


def initial_poles(points, d):
    """Default starting poles: weakly damped conjugate pairs -beta/100 +- beta*i
    with beta logarithmically spaced across the sampled frequency band."""
    if d == 0:
        return np.array([], dtype=complex)
    mags = np.abs(points)
    lo, hi = max(mags.min(), 1e-12), mags.max()
    betas = np.logspace(np.log10(lo), np.log10(hi), max(d // 2, 1))
    poles = []
    for beta in betas[: d // 2]:
        poles.extend([-beta / 100 + 1j * beta, -beta / 100 - 1j * beta])
    if d % 2 == 1:
        poles.append(-np.sqrt(lo * hi))
    return np.array(poles[:d], dtype=complex)


def _dedupe(poles):
    poles = np.asarray(poles, dtype=complex)
    for i in range(poles.size):
        while np.any(np.abs(poles[:i] - poles[i]) == 0):
            poles[i] += 1e-8 * (1 + abs(poles[i]))
    return poles


def _relocate(poles, denom_coeffs):
    # zeros of q(z) = 1 + sum_k d_k/(z - xi_k) via the companion-like pencil
    new = np.linalg.eigvals(np.diag(poles) - np.outer(np.ones(poles.size), denom_coeffs))
    return _dedupe(new)


def _stabilize(poles):
    flip = poles.real > 0
    poles = poles.copy()
    poles[flip] = -np.conj(poles[flip])
    return _dedupe(poles)


def _cauchy(points, poles):
    return 1.0 / (points[:, None] - poles[None, :])


def _solve_ls(A, b):
    sol, res, rank, _ = np.linalg.lstsq(A, b, rcond=None)
    if rank < A.shape[1]:
        warnings.warn("rank-deficient VF least squares; using minimum-norm solution")
    return sol


def vf_scalar(points, values, d, opts=VfOptions()):
    """Vector fitting for scalar data; returns a 1x1 PoleResidue model."""
    points = np.asarray(points, dtype=complex).ravel()
    values = np.asarray(values, dtype=complex).ravel()
    if points.size != values.size:
        raise ParameterError("points and values must have equal length")
    if points.size < 2 * d + 1:
        raise ParameterError(f"need at least {2 * d + 1} samples for degree {d}")
    samples = values.reshape(-1, 1, 1)
    return _vf_common(points, samples, d, opts)


def vf_matrix(samples, d, opts=VfOptions()):
    """Matrix fitting with a common denominator over all m*n entries."""
    if samples.ell < 2 * d + 1:
        raise ParameterError(f"need at least {2 * d + 1} samples for degree {d}")
    return _vf_common(samples.points, samples.values, d, opts)


def _vf_common(points, values, d, opts):
    ell = points.size
    m, n = values.shape[1], values.shape[2]
    ne = m * n
    fs = values.reshape(ell, ne)  # one column-major sample vector per point

    if d == 0:
        D = fs.mean(axis=0).reshape(m, n)
        return PoleResidue(D, [], np.zeros((0, m, n)))

    poles = (
        _dedupe(np.asarray(opts.initial_poles, dtype=complex).ravel())
        if opts.initial_poles is not None
        else initial_poles(points, d)
    )
    if poles.size != d:
        raise ParameterError(f"expected {d} initial poles, got {poles.size}")

    for _ in range(opts.iterations):
        P = _cauchy(points, poles)  # (ell, d)
        # unknowns: per-entry [c_1..c_d, c_0], then the shared [d_1..d_d]
        ncols = ne * (d + 1) + d
        A = np.zeros((ell * ne, ncols), dtype=complex)
        rhs = np.empty(ell * ne, dtype=complex)
        for e in range(ne):
            rows = slice(e * ell, (e + 1) * ell)
            cols = slice(e * (d + 1), (e + 1) * (d + 1))
            A[rows, cols] = np.column_stack([P, np.ones(ell)])
            A[rows, ne * (d + 1) :] = -fs[:, e][:, None] * P
            rhs[rows] = fs[:, e]
        sol = _solve_ls(A, rhs)
        poles = _relocate(poles, sol[ne * (d + 1) :])
        if opts.enforce_stability:
            poles = _stabilize(poles)

    # final residue fit with the poles fixed
    P = _cauchy(points, poles)
    A = np.column_stack([np.ones(ell), P])
    X = _solve_ls(A, fs)  # (d+1, ne)
    D = X[0].reshape(m, n)
    C = X[1:].reshape(d, m, n)
    return PoleResidue(D, poles, C)
