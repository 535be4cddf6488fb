"""Greedy AAA drivers: scalar AAA, set-valued AAA, and surrogate AAA.

All three share the same greedy loop: pick the worst-approximated sample
point, promote it to a support point, and re-solve a linearized least
squares problem for common scalar barycentric weights.
"""

from dataclasses import dataclass

import numpy as np

from .barycentric import BlockBaryA, ScalarBarycentric
from .core import ParameterError

__all__ = [
    "AaaOptions",
    "aaa_scalar",
    "set_valued_aaa",
    "surrogate_aaa",
    "random_directions",
]


@dataclass(frozen=True)
class AaaOptions:
    """Stopping control for the greedy AAA loop.

    tol is compared against the greedy error; with relative=True it is scaled
    by the largest sample norm.  max_order bounds the barycentric order
    (number of support points minus one).
    """

    tol: float = 1e-13
    max_order: int = 100
    relative: bool = True

    def __post_init__(self):
        if self.max_order < 0:
            raise ParameterError("max_order must be >= 0")
        if self.tol < 0:
            raise ParameterError("tolerance must be >= 0")


def _greedy_driver(points, values, opts, solve_weights, make_model, err_of):
    """Shared AAA loop over matrix samples `values` of shape (ell, m, n).

    solve_weights(rem_pts, rem_vals, nodes, node_vals) -> scalar weight vector
    make_model(nodes, weights, node_vals) -> evaluator
    err_of(residual matrix) -> scalar error
    """
    ell = points.size
    if ell == 0:
        raise ParameterError("empty sample set")
    scale = max(err_of(v) for v in values)
    threshold = opts.tol * scale if opts.relative else opts.tol

    remaining = np.ones(ell, dtype=bool)
    mean = values.mean(axis=0)
    model = None
    sel: list[int] = []

    while True:
        idx = np.flatnonzero(remaining)
        errs = np.empty(idx.size)
        for t, i in enumerate(idx):
            approx = mean if model is None else model(points[i])
            errs[t] = err_of(values[i] - approx)
        pick = idx[int(np.argmax(errs))]  # argmax takes the lowest index on ties
        if model is not None and errs.max() <= threshold:
            return model
        sel.append(pick)
        remaining[pick] = False
        j = len(sel) - 1  # current order
        rem = np.flatnonzero(remaining)
        if rem.size < j + 1:
            # weight LS becomes underdetermined; keep the previous model
            return model if model is not None else make_model(
                points[sel], np.ones(len(sel)), values[sel]
            )
        w = solve_weights(points[rem], values[rem], points[sel], values[sel])
        model = make_model(points[sel], w, values[sel])
        if j >= opts.max_order:
            return model


def _stacked_loewner_weights(rem_pts, rem_vals, nodes, node_vals):
    """Common weights: trailing right singular vector of the stacked
    entrywise Loewner matrices (one per matrix entry, over remaining points)."""
    L = (rem_vals[:, None, :, :] - node_vals[None, :, :, :]) / (
        rem_pts[:, None, None, None] - nodes[None, :, None, None]
    )  # (ell', j+1, m, n)
    A = L.transpose(2, 3, 0, 1).reshape(-1, nodes.size)
    _, _, vh = np.linalg.svd(A, full_matrices=False)
    return vh[-1].conj()


def aaa_scalar(points, values, opts=AaaOptions()):
    """Classic greedy AAA on scalar data; returns a ScalarBarycentric."""
    points = np.asarray(points, dtype=complex).ravel()
    values = np.asarray(values, dtype=complex).ravel()
    if points.size != values.size:
        raise ParameterError("points and values must have equal length")
    if len(np.unique(points)) != points.size:
        raise ParameterError("sample points must be pairwise distinct")
    vmat = values.reshape(-1, 1, 1)
    model = _greedy_driver(
        points,
        vmat,
        opts,
        _stacked_loewner_weights,
        lambda nodes, w, fv: ScalarBarycentric(nodes, w, fv[:, 0, 0]),
        lambda r: float(np.abs(r).max()),
    )
    return model


def set_valued_aaa(samples, opts=AaaOptions()):
    """AAA with common support points and weights for all matrix entries."""
    return _greedy_driver(
        samples.points,
        samples.values,
        opts,
        _stacked_loewner_weights,
        BlockBaryA,
        lambda r: float(np.linalg.norm(r, "fro")),
    )


def surrogate_aaa(samples, a, b, opts=AaaOptions()):
    """AAA on the scalar surrogate a^T F(z) b, lifted back to matrix values.

    The returned BlockBaryA reuses the surrogate's support points and scalar
    weights with the full matrix samples at those points.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    m, n = samples.shape
    if a.size != m or b.size != n:
        raise ParameterError(f"direction vectors must have lengths {m} and {n}")
    if not np.any(a != 0) or not np.any(b != 0):
        raise ParameterError("direction vectors must be nonzero")
    f = np.einsum("i,kij,j->k", a, samples.values, b)
    scalar = aaa_scalar(samples.points, f, opts)
    lookup = {complex(z): i for i, z in enumerate(samples.points)}
    idx = [lookup[complex(z)] for z in scalar.nodes]
    return BlockBaryA(scalar.nodes, scalar.weights, samples.values[idx])


def random_directions(m, n, seed=0):
    """Seeded unit-norm surrogate direction vectors (a, b)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    a = rng.normal(size=m) + 1j * rng.normal(size=m)
    b = rng.normal(size=n) + 1j * rng.normal(size=n)
    return a / np.linalg.norm(a), b / np.linalg.norm(b)
