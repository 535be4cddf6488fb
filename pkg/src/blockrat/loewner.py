"""Loewner framework: data partition, (shifted) Loewner assembly, and
truncated-SVD projection to a small (Er, Ar, Br, Cr) realization.

Scalar data uses the samples directly; block data is tangentially compressed
with left/right direction vectors (standard basis vectors cycled by default)
before the same scalar machinery applies.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .core import EvaluationError, ParameterError, SampleSet
from .kernels import finite_eigenvalues, svd_full

EPS_RANK = 1e-12  # relative singular-value floor for the rank warning

__all__ = ["LoewnerModel", "partition", "loewner_scalar", "loewner_block", "eval_loewner", "model_poles"]


@dataclass(frozen=True)
class LoewnerModel:
    """Projected realization: R(z) = Cr (Ar - z Er)^-1 Br."""

    Er: np.ndarray  # (d, d)
    Ar: np.ndarray  # (d, d)
    Br: np.ndarray  # (d, n)
    Cr: np.ndarray  # (m, d)

    @property
    def order(self):
        return self.Er.shape[0]

    @property
    def shape(self):
        return self.Cr.shape[0], self.Br.shape[1]

    def __call__(self, z):
        return eval_loewner(self, z)


def partition(points, values):
    """Interleaved split into left/right halves of equal size.

    Points are ordered by ascending magnitude; odd-ranked points go left,
    even-ranked right, so both halves cover the full frequency range.  An
    odd trailing point is dropped with a warning.
    """
    points = np.asarray(points, dtype=complex).ravel()
    values = np.asarray(values, dtype=complex)
    if values.ndim == 1:
        values = values.reshape(-1, 1, 1)
    if points.size < 2:
        raise ParameterError("partition needs at least two points")
    order = np.argsort(np.abs(points), kind="stable")
    if points.size % 2 == 1:
        warnings.warn("odd number of points; dropping the last one for the partition")
        order = order[:-1]
    left, right = order[0::2], order[1::2]
    return SampleSet(points[left], values[left]), SampleSet(points[right], values[right])


def _assemble(x, vx, y, vy):
    """Loewner and shifted Loewner matrices from tangential scalar data.

    vx, vy are the (compressed) scalar samples at the left/right points.
    """
    denom = x[:, None] - y[None, :]
    L = (vx[:, None] - vy[None, :]) / denom
    Ls = (x[:, None] * vx[:, None] - y[None, :] * vy[None, :]) / denom
    return L, Ls


def _project(L, Ls, V, W, d):
    svd = svd_full(L)
    if d > L.shape[0]:
        raise ParameterError(f"order {d} exceeds the partition size {L.shape[0]}")
    if d < 1:
        raise ParameterError("target order must be >= 1")
    numrank = int(np.sum(svd.s > EPS_RANK * svd.s[0]))
    if d > numrank:
        warnings.warn(f"order {d} exceeds the numerical Loewner rank {numrank}")
    X = svd.u[:, :d]
    Z = svd.v[:, :d]
    return LoewnerModel(
        Er=X.conj().T @ L @ Z,
        Ar=X.conj().T @ Ls @ Z,
        Br=X.conj().T @ V,
        Cr=W @ Z,
    )


def loewner_scalar(points, values, d):
    """Scalar Loewner fit of target order d; returns a 1x1 LoewnerModel."""
    left, right = partition(points, values)
    x, y = left.points, right.points
    fx, fy = left.values[:, 0, 0], right.values[:, 0, 0]
    L, Ls = _assemble(x, fx, y, fy)
    V = fx[:, None]  # column of left samples
    W = fy[None, :]  # row of right samples
    return _project(L, Ls, V, W, d)


def _cycled_basis(count, dim):
    E = np.eye(dim)
    return np.array([E[i % dim] for i in range(count)], dtype=complex)


def loewner_block(samples, d, directions=None):
    """Tangential block Loewner fit with directional compression.

    `directions` is an optional (left, right) pair of arrays with one unit
    vector per partition point; by default the standard basis vectors are
    cycled on both sides.
    """
    m, n = samples.shape
    left, right = partition(samples.points, samples.values)
    half = left.ell
    if directions is None:
        ldir, rdir = _cycled_basis(half, m), _cycled_basis(half, n)
    else:
        ldir = np.asarray(directions[0], dtype=complex).reshape(half, m)
        rdir = np.asarray(directions[1], dtype=complex).reshape(half, n)
    x, y = left.points, right.points
    lFx = np.einsum("im,imn->in", ldir.conj(), left.values)  # rows l_i* F(x_i)
    Fyr = np.einsum("jmn,jn->jm", right.values, rdir)  # columns F(y_j) r_j
    vx = np.einsum("in,jn->ij", lFx, rdir)  # l_i* F(x_i) r_j
    vy = np.einsum("jm,im->ij", Fyr, ldir.conj())  # l_i* F(y_j) r_j
    denom = x[:, None] - y[None, :]
    L = (vx - vy) / denom
    Ls = (x[:, None] * vx - y[None, :] * vy) / denom
    V = lFx  # (ell/2, n)
    W = Fyr.T  # (m, ell/2)
    return _project(L, Ls, V, W, d)


def eval_loewner(model, z):
    """R(z) = Cr (Ar - z Er)^-1 Br; raises on a singular resolvent."""
    A = model.Ar - z * model.Er
    if np.linalg.cond(A) > 1e14:
        raise EvaluationError(f"singular Loewner resolvent at z = {z}")
    return model.Cr @ np.linalg.solve(A, model.Br)


def model_poles(model):
    """Finite generalized eigenvalues of (Ar, Er)."""
    return finite_eigenvalues(model.Ar, model.Er)
