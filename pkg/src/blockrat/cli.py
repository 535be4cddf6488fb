"""Benchmark harness: built-in problems, sample-file ingestion, method sweeps,
and CSV reporting of RMSE and wall time.

Built-in problems are the desk-scale experiments: two 2x2 rational toy
functions, the 2x2 buckling-plate function, and a noisy scalar rational
function.  Externally sampled data (e.g. SLICOT transfer functions) can be
ingested through the documented text format; those RMSE/timing tables are
not reproducible without the data files.
"""

import argparse
import csv
import sys
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .aaa import AaaOptions, aaa_scalar, random_directions, set_valued_aaa, surrogate_aaa
from .block_aaa import block_aaa
from .core import NoiseSpec, ParameterError, SampleSet, add_noise, logspace_imaginary, rmse
from .loewner import loewner_block
from .rkfit import RkfitOptions, rkfit_fit
from .vecfit import VfOptions, vf_matrix

METHODS = ("aaa-scalar", "set-valued-aaa", "surrogate-aaa", "block-aaa", "vf", "rkfit", "loewner")

__all__ = [
    "Problem",
    "RunRecord",
    "problem_toy1",
    "problem_toy2",
    "problem_buckling",
    "problem_scalar_noise",
    "save_samples",
    "load_samples",
    "run_sweep",
    "write_csv",
    "main",
    "METHODS",
]


@dataclass(frozen=True)
class Problem:
    name: str
    samples: SampleSet
    truth: object = None  # evaluator for the clean function, when analytic


@dataclass
class RunRecord:
    method: str
    order: int
    rmse: float
    time_ms: float
    status: str = "ok"
    trace: list = field(default_factory=list)


def _toy1_value(z):
    off = (3 - z) / (z**2 + z - 5)
    return np.array(
        [[2 / (z + 1), off], [off, (2 + z**2) / (z**3 + 3 * z**2 - 1)]],
        dtype=complex,
    )


def _toy2_value(z):
    return np.array(
        [
            [2 / (z + 1), (3 - z) / (z**2 + z + 5)],
            [(3 - z) / (z**2 + z - 5), (2 + z**2) / (z**3 + 3 * z**2 - 1)],
        ],
        dtype=complex,
    )


def _buckling_value(z):
    # the off-diagonal numerator reads 2z (the symbol printed there is unbound)
    diag = z * (1 - 2 * z / np.tan(2 * z)) / (np.tan(z) - z)
    off = z * (2 * z - np.sin(2 * z)) / (np.sin(2 * z) * (np.tan(z) - z))
    return np.array([[diag + 10, off], [off, diag + 4]], dtype=complex)


def _sample(fn, points):
    return SampleSet(points, np.array([fn(z) for z in points]))


def problem_toy1(ell=100):
    """Symmetric 2x2 rational toy function on [1, 100]i."""
    pts = logspace_imaginary(1, 100, ell)
    return Problem("toy1", _sample(_toy1_value, pts), _toy1_value)


def problem_toy2(ell=100):
    """Nonsymmetric variant of toy1: the (1,2) denominator becomes z^2+z+5."""
    pts = logspace_imaginary(1, 100, ell)
    return Problem("toy2", _sample(_toy2_value, pts), _toy2_value)


def problem_buckling(ell=500):
    """2x2 buckling-plate function on [1e-2, 10]i."""
    pts = logspace_imaginary(1e-2, 10, ell)
    return Problem("buckling", _sample(_buckling_value, pts), _buckling_value)


def _scalar_noise_value(z):
    return np.array([[(z - 1) / (z**2 + z + 2)]], dtype=complex)


def problem_scalar_noise(ell=500, tau=1e-2, seed=2023):
    """Noisy scalar rational samples on [1e-1, 10]i; truth stays clean."""
    pts = logspace_imaginary(1e-1, 10, ell)
    clean = _sample(_scalar_noise_value, pts)
    noisy = add_noise(clean, NoiseSpec(tau, seed))
    return Problem("scalar-noise", noisy, _scalar_noise_value)


PROBLEMS = {
    "toy1": problem_toy1,
    "toy2": problem_toy2,
    "buckling": problem_buckling,
    "scalar-noise": problem_scalar_noise,
}


def save_samples(samples, path):
    """Write the documented text format: header `m n ell`, then per point one
    `re im` line for the point followed by m rows of n `re im` entry pairs."""
    m, n = samples.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{m} {n} {samples.ell}\n")
        for z, F in zip(samples.points, samples.values):
            fh.write(f"{z.real:.17g} {z.imag:.17g}\n")
            for row in F:
                fh.write(" ".join(f"{v.real:.17g} {v.imag:.17g}" for v in row) + "\n")


def load_samples(path):
    """Parse the text format written by `save_samples`; validates invariants."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    try:
        m, n, ell = (int(t) for t in lines[0].split())
    except (IndexError, ValueError) as e:
        raise ParameterError(f"{path}:1: bad header (want 'm n ell'): {e}") from e
    expect = 1 + ell * (1 + m)
    if len(lines) != expect:
        raise ParameterError(f"{path}: expected {expect} lines, found {len(lines)}")
    points = np.empty(ell, dtype=complex)
    values = np.empty((ell, m, n), dtype=complex)
    pos = 1
    for i in range(ell):
        try:
            re, im = (float(t) for t in lines[pos].split())
            points[i] = complex(re, im)
            pos += 1
            for a in range(m):
                toks = [float(t) for t in lines[pos].split()]
                if len(toks) != 2 * n:
                    raise ValueError(f"want {2 * n} floats, found {len(toks)}")
                values[i, a] = [complex(toks[2 * b], toks[2 * b + 1]) for b in range(n)]
                pos += 1
        except ValueError as e:
            raise ParameterError(f"{path}:{pos + 1}: {e}") from e
    seen = {}
    for i, z in enumerate(points):
        if complex(z) in seen:
            raise ParameterError(f"{path}: duplicate point at block {i} (first at block {seen[complex(z)]})")
        seen[complex(z)] = i
    return SampleSet(points, values)


def _fit_method(method, samples, order, tol, iters, seed):
    """Fit one (method, order) cell; returns (evaluator, trace)."""
    m, n = samples.shape
    opts = AaaOptions(tol=tol, max_order=order)
    if method == "aaa-scalar":
        if (m, n) != (1, 1):
            raise ParameterError("aaa-scalar requires 1x1 samples")
        return aaa_scalar(samples.points, samples.values[:, 0, 0], opts), []
    if method == "set-valued-aaa":
        return set_valued_aaa(samples, opts), []
    if method == "surrogate-aaa":
        a, b = random_directions(m, n, seed)
        return surrogate_aaa(samples, a, b, opts), []
    if method == "block-aaa":
        result = block_aaa(samples, opts)
        return result.model, result.errors
    if method == "vf":
        return vf_matrix(samples, order, VfOptions(iterations=iters)), []
    if method == "rkfit":
        result = rkfit_fit(samples, RkfitOptions(degree=order, iterations=iters))
        return result.model, result.rmse_trace
    if method == "loewner":
        return loewner_block(samples, order), []
    raise ParameterError(f"unknown method {method!r} (choose from {METHODS})")


def run_sweep(problem, methods, orders, tol=1e-13, iters=5, seed=0, repeats=20,
              against_truth=False):
    """Fit every (method, order) cell; errors are recorded, not raised.

    Timing is the wall-clock average over `repeats` runs of the fit alone.
    RMSE is measured against the problem samples, or against fresh samples of
    the clean truth when `against_truth` is set and a truth function exists.
    """
    target = problem.samples
    if against_truth and problem.truth is not None:
        target = SampleSet(
            problem.samples.points,
            np.array([problem.truth(z) for z in problem.samples.points]),
        )
    records = []
    for method in methods:
        for order in orders:
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    t0 = time.perf_counter()
                    for _ in range(repeats):
                        model, trace = _fit_method(method, problem.samples, order, tol, iters, seed)
                    elapsed = (time.perf_counter() - t0) / repeats
                    err = rmse(target, model)
                records.append(RunRecord(method, order, err, 1e3 * elapsed, "ok", trace))
            except Exception as e:  # per-cell failure keeps the sweep going
                records.append(RunRecord(method, order, float("nan"), 0.0, f"error: {e}"))
    return records


def write_csv(problem_name, records, path, with_trace=False):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh)
        out.writerow(["problem", "method", "order", "rmse", "time_ms", "status"])
        for r in records:
            out.writerow([problem_name, r.method, r.order, f"{r.rmse:.17g}", f"{r.time_ms:.6g}", r.status])
    if with_trace:
        with open(str(path) + ".trace.csv", "w", newline="", encoding="utf-8") as fh:
            out = csv.writer(fh)
            out.writerow(["problem", "method", "order", "iteration", "value"])
            for r in records:
                for it, val in enumerate(r.trace):
                    out.writerow([problem_name, r.method, r.order, it, f"{val:.17g}"])


def _parse_orders(spec):
    if ":" in spec:
        a, b = spec.split(":")
        return list(range(int(a), int(b) + 1))
    return [int(spec)]


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="blockrat-fit",
        description="Fit matrix-valued rational approximants and report RMSE/timing as CSV.",
    )
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--problem", choices=sorted(PROBLEMS), help="built-in problem")
    src.add_argument("--input", help="sample file in the documented text format")
    ap.add_argument("--method", required=True, help="comma-separated subset of: " + ",".join(METHODS))
    ap.add_argument("--orders", required=True, help="order range a:b (inclusive) or a single order")
    ap.add_argument("--tol", type=float, default=1e-13, help="greedy stopping tolerance (AAA family)")
    ap.add_argument("--iters", type=int, default=5, help="iterations for vf/rkfit")
    ap.add_argument("--noise", type=float, default=None, help="additive Gaussian noise std")
    ap.add_argument("--seed", type=int, default=0, help="seed for noise and surrogate directions")
    ap.add_argument("--repeats", type=int, default=20, help="timing repetitions per cell")
    ap.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    ap.add_argument("--trace", action="store_true", help="also emit per-iteration traces")
    ap.add_argument("--against-truth", action="store_true",
                    help="measure RMSE against the clean truth when available")
    args = ap.parse_args(argv)

    if args.problem:
        problem = PROBLEMS[args.problem]()
    else:
        problem = Problem(args.input, load_samples(args.input))
    if args.noise is not None:
        problem = Problem(problem.name, add_noise(problem.samples, NoiseSpec(args.noise, args.seed)),
                          problem.truth)

    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            ap.error(f"unknown method {m!r}")
    orders = _parse_orders(args.orders)

    records = run_sweep(problem, methods, orders, tol=args.tol, iters=args.iters,
                        seed=args.seed, repeats=args.repeats,
                        against_truth=args.against_truth)

    if args.out:
        write_csv(problem.name, records, args.out, with_trace=args.trace)
    else:
        sys.stdout.write("problem,method,order,rmse,time_ms,status\n")
        for r in records:
            sys.stdout.write(f"{problem.name},{r.method},{r.order},{r.rmse:.17g},{r.time_ms:.6g},{r.status}\n")

    return 2 if any(r.status != "ok" for r in records) else 0


if __name__ == "__main__":
    sys.exit(main())
