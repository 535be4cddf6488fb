"""Greedy construction of matrix-weight barycentric approximants (block-AAA).

Unlike the set-valued and surrogate AAA variants, the denominator here is a
matrix-valued sum, so an order-d model can carry up to d*m poles.  The greedy
loop mirrors scalar AAA but measures errors in the Frobenius norm and solves
for a full weight-matrix stack at every iteration.
"""

from dataclasses import dataclass, field

import numpy as np

from .aaa import AaaOptions
from .barycentric import BlockBaryB, solve_weights_baryB
from .core import EvaluationError, ParameterError

__all__ = ["BlockAaaResult", "block_aaa"]


@dataclass(frozen=True)
class BlockAaaResult:
    model: BlockBaryB
    errors: list  # greedy max-norm error per iteration
    skipped: list = field(default_factory=list)  # (iteration, point) pairs with singular denominators


def block_aaa(samples, opts=AaaOptions()):
    """Fit a BlockBaryB model by greedy support selection.

    Returns the model together with the per-iteration greedy error trace.
    Points where the current denominator sum is numerically singular are
    skipped for selection in that iteration and recorded as diagnostics.
    """
    ell = samples.ell
    if ell == 0:
        raise ParameterError("empty sample set")
    m, n = samples.shape
    scale = max(np.linalg.norm(F, "fro") for F in samples.values)
    threshold = opts.tol * scale if opts.relative else opts.tol

    remaining = np.ones(ell, dtype=bool)
    mean = samples.values.mean(axis=0)
    model = None
    sel: list[int] = []
    trace: list[float] = []
    skipped: list[tuple[int, complex]] = []

    while True:
        idx = np.flatnonzero(remaining)
        errs = np.full(idx.size, -np.inf)
        for t, i in enumerate(idx):
            try:
                approx = mean if model is None else model(samples.points[i])
            except EvaluationError:
                skipped.append((len(sel), complex(samples.points[i])))
                continue
            errs[t] = np.linalg.norm(samples.values[i] - approx, "fro")
        if not np.any(np.isfinite(errs)):
            return BlockAaaResult(model, trace, skipped)
        pick = idx[int(np.argmax(errs))]  # ties resolve to the lowest index
        maxerr = float(errs.max())
        trace.append(maxerr)
        if model is not None and maxerr <= threshold:
            return BlockAaaResult(model, trace, skipped)
        sel.append(pick)
        remaining[pick] = False
        j = len(sel) - 1
        rem = np.flatnonzero(remaining)
        if rem.size == 0:
            if model is None:
                W = np.tile(np.eye(m) / np.sqrt(len(sel) * m), (len(sel), 1, 1))
                model = BlockBaryB(samples.points[sel], W, samples.values[sel])
            return BlockAaaResult(model, trace, skipped)
        support = list(zip(samples.points[sel], samples.values[sel]))
        weights = solve_weights_baryB(samples.subset(rem), support)
        model = BlockBaryB(samples.points[sel], np.stack(weights), samples.values[sel])
        if j >= opts.max_order:
            return BlockAaaResult(model, trace, skipped)
