import csv

import numpy as np
import pytest

from blockrat import ParameterError, rmse
from blockrat.cli import (
    load_samples,
    main,
    problem_buckling,
    problem_scalar_noise,
    problem_toy1,
    problem_toy2,
    run_sweep,
    save_samples,
    write_csv,
)


class TestToyProblems:
    def test_toy1_values_at_origin(self, toy1):
        F0 = toy1.truth(0.0)
        assert F0[0, 0] == pytest.approx(2.0)
        assert F0[1, 1] == pytest.approx(-2.0)

    def test_toy1_symmetric_samples(self, toy1):
        for F in toy1.samples.values:
            assert F[0, 1] == F[1, 0]

    def test_toy2_values_at_origin(self, toy2):
        F0 = toy2.truth(0.0)
        assert F0[0, 1] == pytest.approx(0.6)
        assert F0[1, 0] == pytest.approx(-0.6)

    def test_toy2_nonsymmetric(self, toy2):
        off = [abs(F[0, 1] - F[1, 0]) for F in toy2.samples.values]
        assert max(off) > 0.01

    def test_grids(self, toy1):
        assert toy1.samples.ell == 100
        assert toy1.samples.points[0] == pytest.approx(1j)
        assert toy1.samples.points[-1] == pytest.approx(100j)


class TestBucklingProblem:
    def test_symmetry(self):
        p = problem_buckling()
        assert p.samples.ell == 500
        for F in p.samples.values:
            assert F[0, 1] == F[1, 0]

    def test_diagonal_difference_is_six(self):
        p = problem_buckling()
        for F in p.samples.values:
            assert F[0, 0] - F[1, 1] == pytest.approx(6.0, abs=1e-10)

    def test_small_z_limit(self):
        # Taylor series of z(1 - 2z cot 2z)/(tan z - z): numerator ~ 4z^3/3,
        # denominator ~ z^3/3, so the diagonal term tends to 4
        p = problem_buckling()
        F = p.truth(1e-2j)
        assert abs((F[0, 0] - 10) - 4.0) <= 0.05


class TestScalarNoiseProblem:
    def test_deterministic(self):
        a = problem_scalar_noise(seed=2023)
        b = problem_scalar_noise(seed=2023)
        assert np.array_equal(a.samples.values, b.samples.values)

    def test_truth_is_clean(self):
        p = problem_scalar_noise(seed=2023)
        z = p.samples.points[0]
        want = (z - 1) / (z**2 + z + 2)
        assert p.truth(z)[0, 0] == pytest.approx(want)

    def test_noise_magnitude(self):
        p = problem_scalar_noise(tau=1e-2, seed=2023)
        diffs = np.array(
            [p.samples.values[i, 0, 0] - p.truth(z)[0, 0] for i, z in enumerate(p.samples.points)]
        )
        assert 0.005 <= np.std(diffs.real) <= 0.015


class TestSampleFiles:
    def test_round_trip(self, tmp_path, toy1):
        path = tmp_path / "toy1.txt"
        save_samples(toy1.samples, path)
        loaded = load_samples(path)
        assert np.array_equal(loaded.points, toy1.samples.points)
        assert np.array_equal(loaded.values, toy1.samples.values)

    def test_loaded_identity_rmse_zero(self, tmp_path, toy1):
        path = tmp_path / "toy1.txt"
        save_samples(toy1.samples, path)
        loaded = load_samples(path)
        lookup = {complex(z): F for z, F in zip(toy1.samples.points, toy1.samples.values)}
        assert rmse(loaded, lambda z: lookup[complex(z)]) == 0.0

    def test_duplicate_points_rejected_with_index(self, tmp_path):
        path = tmp_path / "dup.txt"
        path.write_text("1 1 2\n0 1\n1 0\n0 1\n2 0\n")
        with pytest.raises(ParameterError, match="duplicate"):
            load_samples(path)

    def test_bad_header_reports_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("not a header\n")
        with pytest.raises(ParameterError, match=":1"):
            load_samples(path)


class TestRunSweep:
    def test_empty_methods(self, toy1, tmp_path):
        records = run_sweep(toy1, [], [1, 2])
        assert records == []
        out = tmp_path / "empty.csv"
        write_csv("toy1", records, out)
        rows = list(csv.reader(out.open()))
        assert rows == [["problem", "method", "order", "rmse", "time_ms", "status"]]

    def test_incompatible_method_recorded_not_raised(self, toy1):
        records = run_sweep(toy1, ["aaa-scalar"], [3], repeats=1)
        assert len(records) == 1
        assert records[0].status.startswith("error")

    def test_block_aaa_toy1(self, toy1):
        records = run_sweep(toy1, ["block-aaa"], [5], repeats=1)
        assert records[0].status == "ok"
        assert records[0].rmse <= 1e-10

    def test_deterministic_rmse(self, toy2):
        a = run_sweep(toy2, ["set-valued-aaa", "rkfit"], [4], repeats=1, seed=3)
        b = run_sweep(toy2, ["set-valued-aaa", "rkfit"], [4], repeats=1, seed=3)
        assert [r.rmse for r in a] == [r.rmse for r in b]


class TestMain:
    def test_end_to_end_csv(self, tmp_path):
        out = tmp_path / "run.csv"
        code = main([
            "--problem", "toy1", "--method", "block-aaa", "--orders", "5",
            "--repeats", "1", "--out", str(out),
        ])
        assert code == 0
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 1
        assert rows[0]["method"] == "block-aaa"
        assert float(rows[0]["rmse"]) <= 1e-10
        assert rows[0]["status"] == "ok"

    def test_error_cell_exit_code(self, tmp_path):
        out = tmp_path / "err.csv"
        code = main([
            "--problem", "toy1", "--method", "aaa-scalar", "--orders", "3",
            "--repeats", "1", "--out", str(out),
        ])
        assert code == 2

    def test_trace_emission(self, tmp_path):
        out = tmp_path / "tr.csv"
        code = main([
            "--problem", "toy1", "--method", "rkfit", "--orders", "6",
            "--iters", "3", "--repeats", "1", "--out", str(out), "--trace",
        ])
        assert code == 0
        trace_rows = list(csv.DictReader((tmp_path / "tr.csv.trace.csv").open()))
        assert len(trace_rows) == 3

    def test_order_range_and_input_file(self, tmp_path, toy1):
        data = tmp_path / "data.txt"
        save_samples(toy1.samples, data)
        out = tmp_path / "sweep.csv"
        code = main([
            "--input", str(data), "--method", "loewner", "--orders", "7:8",
            "--repeats", "1", "--out", str(out),
        ])
        assert code == 0
        rows = list(csv.DictReader(out.open()))
        assert [int(r["order"]) for r in rows] == [7, 8]
