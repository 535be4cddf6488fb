"""RKFIT-style pole relocation on sampled data.

The rational Krylov machinery is specialized to diagonal operators, so a
"basis" is simply an orthonormalized matrix of rational functions
lambda^k / q(lambda) sampled on the data points, with q the monic polynomial
over the current finite poles.  One relocation step finds the unit-norm
basis combination whose misfit against the data is smallest and takes the
roots of its numerator polynomial as the new poles.  Non-interpolatory: the
final model is a plain least squares fit in the partial-fraction basis of
the final poles.
"""

from dataclasses import dataclass

import numpy as np

from .core import NumericalError, ParameterError
from .kernels import lstsq
from .linearize import bary_poly_weights, build_pencil, pencil_eigs
from .vecfit import PoleResidue, _dedupe

__all__ = ["RkfitOptions", "RationalBasis", "RkfitResult", "build_basis", "relocate_poles", "rkfit_fit"]


@dataclass(frozen=True)
class RkfitOptions:
    degree: int
    iterations: int = 5
    initial_poles: np.ndarray | None = None  # default: all poles at infinity

    def __post_init__(self):
        if self.degree < 0:
            raise ParameterError("degree must be >= 0")
        if self.iterations < 1:
            raise ParameterError("need at least one RKFIT iteration")


@dataclass(frozen=True)
class RationalBasis:
    """Orthonormal basis of {p(lambda)/q(lambda) : deg p <= d} on the points.

    Poles at infinity are simply omitted from q.  `scale` is the variable
    scaling used for the monomial columns before orthonormalization.
    """

    points: np.ndarray
    poles: np.ndarray
    V: np.ndarray  # (ell, d+1), V* V = I
    qvals: np.ndarray  # q evaluated on the points
    scale: float
    degree: int


def build_basis(points, poles, degree=None):
    points = np.asarray(points, dtype=complex).ravel()
    poles = np.asarray(poles, dtype=complex).ravel()
    if len(np.unique(points)) != points.size:
        raise ParameterError("sample points must be pairwise distinct")
    if poles.size and np.min(np.abs(points[:, None] - poles[None, :])) == 0:
        raise ParameterError("a pole collides with a sample point")
    d = poles.size if degree is None else degree
    if poles.size > d:
        raise ParameterError(f"{poles.size} poles exceed basis degree {d}")
    qvals = np.ones(points.size, dtype=complex)
    for xi in poles:
        qvals *= points - xi
    scale = max(np.max(np.abs(points)), 1.0)
    # incremental (Arnoldi-style) construction: one pole per step, with
    # doubled modified Gram-Schmidt; finite poles first, the remaining steps
    # multiply by the (scaled) variable.  Far better conditioned than
    # orthonormalizing monomial-over-q columns in one shot.
    ell = points.size
    V = np.empty((ell, d + 1), dtype=complex)
    V[:, 0] = 1.0 / np.sqrt(ell)
    for j in range(1, d + 1):
        if j <= poles.size:
            w = V[:, j - 1] / (points - poles[j - 1])
        else:
            w = V[:, j - 1] * (points / scale)
        for _ in range(2):
            w = w - V[:, :j] @ (V[:, :j].conj().T @ w)
        norm = np.linalg.norm(w)
        if norm <= 1e3 * np.finfo(float).eps:
            raise NumericalError("rational basis breakdown: dependent direction")
        V[:, j] = w / norm
    return RationalBasis(points, poles, V, qvals, scale, d)


def _leja_indices(points, count):
    """Greedy Leja-style selection of well-spread interpolation nodes."""
    chosen = [int(np.argmax(np.abs(points)))]
    while len(chosen) < count:
        dist = np.prod(np.abs(points[:, None] - points[chosen][None, :]), axis=1)
        chosen.append(int(np.argmax(dist)))
    return np.array(chosen)


def _polynomial_roots_from_values(points, pvals, degree, scale):
    """Roots of the degree-<=degree polynomial with samples `pvals` on `points`.

    Least-squares projection onto an orthonormal polynomial basis of the
    points (built incrementally, like the rational basis), then a
    barycentric-pencil eigenvalue problem on Leja nodes.  Avoids monomial
    coefficients, which are hopeless on wide log grids.
    """
    Q = build_basis(points, [], degree=degree).V
    pfit = Q @ (Q.conj().T @ pvals)  # best degree-<=degree fit, by values
    if degree == 0:
        return np.array([], dtype=complex)
    idx = _leja_indices(points, degree + 1)
    nodes = points[idx]
    C = (bary_poly_weights(nodes) * pfit[idx]).reshape(-1, 1, 1)
    return pencil_eigs(build_pencil(C, nodes)).ravel()


def relocate_poles(basis, sample_functions):
    """One RKFIT step: new poles from the minimal-misfit basis combination.

    `sample_functions` is a sequence of value vectors on the basis points
    (one per matrix entry for block data).  Returns up to `degree` finite
    poles (roots that escape to infinity drop out of the list).
    """
    V = basis.V
    proj = np.eye(V.shape[0]) - V @ V.conj().T
    blocks = [proj @ (np.asarray(f, dtype=complex)[:, None] * V) for f in sample_functions]
    _, _, vh = np.linalg.svd(np.vstack(blocks), full_matrices=False)
    c = vh[-1].conj()
    vhat = V @ c
    pvals = vhat * basis.qvals  # numerator samples of the degree-<=d rational vhat
    if np.max(np.abs(pvals)) <= 1e3 * np.finfo(float).eps * np.max(np.abs(basis.qvals)):
        raise NumericalError("relocation failed: numerator polynomial is numerically zero")
    if basis.poles.size == basis.degree and basis.degree > 0:
        # refit vhat in the partial-fraction basis of the current poles and
        # take its zeros; far better conditioned than polynomial root-finding
        # from values once a full pole set exists
        A = np.column_stack([np.ones(V.shape[0])] + [1.0 / (basis.points - xi) for xi in basis.poles])
        coef = lstsq(A, vhat)
        delta, gamma = coef[0], coef[1:]
        if abs(delta) > 1e-13 * np.max(np.abs(coef)):
            roots = np.linalg.eigvals(np.diag(basis.poles) - np.outer(np.ones(basis.degree), gamma / delta))
            roots = roots[np.abs(roots) < 1e8 * basis.scale]
            return _dedupe(roots)
    roots = _polynomial_roots_from_values(basis.points, pvals, basis.degree, basis.scale)
    return _dedupe(roots)


def _final_fit(points, values, poles):
    ell, m, n = values.shape
    A = np.column_stack([np.ones(ell)] + [1.0 / (points - xi) for xi in poles])
    X = lstsq(A, values.reshape(ell, m * n))
    D = X[0].reshape(m, n)
    C = X[1:].reshape(len(poles), m, n)
    return PoleResidue(D, poles, C)


@dataclass(frozen=True)
class RkfitResult:
    model: PoleResidue
    rmse_trace: list  # RMSE of the refitted model after each iteration
    poles_trace: list


def rkfit_fit(samples, opts):
    """Iterated RKFIT over all matrix entries with a common denominator."""
    d = opts.degree
    if samples.ell < 2 * d + 2 and d > 0:
        raise ParameterError(f"need at least {2 * d + 2} samples for degree {d}")
    m, n = samples.shape
    fs = [samples.values[:, a, b] for a in range(m) for b in range(n)]
    poles = (
        _dedupe(np.asarray(opts.initial_poles, dtype=complex).ravel())
        if opts.initial_poles is not None
        else np.array([], dtype=complex)
    )

    from .core import rmse  # local import to avoid a cycle at module load

    trace = []
    poles_trace = []
    model = None
    for _ in range(opts.iterations):
        basis = build_basis(samples.points, poles, degree=d)
        poles = relocate_poles(basis, fs)
        model = _final_fit(samples.points, samples.values, poles)
        trace.append(rmse(samples, model))
        poles_trace.append(poles.copy())
    return RkfitResult(model, trace, poles_trace)
