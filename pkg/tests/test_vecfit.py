import numpy as np
import pytest

from blockrat import (
    EvaluationError,
    NoiseSpec,
    ParameterError,
    PoleResidue,
    SampleSet,
    VfOptions,
    add_noise,
    logspace_imaginary,
    rmse,
    vf_matrix,
    vf_scalar,
)
from blockrat.vecfit import initial_poles


class TestPoleResidue:
    def test_no_poles_is_constant(self):
        D = np.array([[1.0, 2.0]])
        r = PoleResidue(D, [], np.zeros((0, 1, 2)))
        assert np.array_equal(r(3j), D)

    def test_single_pole(self):
        r = PoleResidue(np.zeros((1, 1)), [-1.0], np.array([[[2.0]]]))
        assert r(0.0)[0, 0] == pytest.approx(2.0)

    def test_matches_entrywise_oracle(self):
        rng = np.random.default_rng(0)
        poles = np.array([-1.0, -2.0 + 1j, -3.0])
        C = rng.normal(size=(3, 2, 2)) + 1j * rng.normal(size=(3, 2, 2))
        D = rng.normal(size=(2, 2)) + 0j
        r = PoleResidue(D, poles, C)
        for z in rng.normal(size=10) + 1j * np.abs(rng.normal(size=10)):
            want = D + sum(C[k] / (z - poles[k]) for k in range(3))
            assert np.linalg.norm(r(z) - want) <= 1e-12 * np.linalg.norm(want)

    def test_evaluation_at_pole_raises(self):
        r = PoleResidue(np.zeros((1, 1)), [-1.0], np.array([[[2.0]]]))
        with pytest.raises(EvaluationError):
            r(-1.0)

    def test_duplicate_poles_rejected(self):
        with pytest.raises(ParameterError):
            PoleResidue(np.zeros((1, 1)), [-1.0, -1.0], np.zeros((2, 1, 1)))


class TestVfScalar:
    def test_closed_form_target(self):
        pts = logspace_imaginary(1, 10, 20)
        f = 3 + 1.0 / (pts + 2)
        r = vf_scalar(pts, f, 1, VfOptions(iterations=5))
        assert r.poles[0] == pytest.approx(-2.0, abs=1e-8)
        assert r.const[0, 0] == pytest.approx(3.0, abs=1e-8)
        assert r.residues[0, 0, 0] == pytest.approx(1.0, abs=1e-8)

    def test_fixed_point_with_true_initial_poles(self):
        pts = logspace_imaginary(1, 10, 20)
        true_poles = np.array([-2.0, -3.0])
        f = 1.0 / (pts + 2) + 2.0 / (pts + 3)
        r = vf_scalar(pts, f, 2, VfOptions(iterations=1, initial_poles=true_poles))
        assert np.linalg.norm(np.sort_complex(r.poles) - np.sort_complex(true_poles)) <= 1e-10

    def test_noisy_data_stagnates_at_noise_level(self):
        tau = 1e-2
        pts = logspace_imaginary(1e-1, 10, 500)
        clean = SampleSet(pts, (pts - 1) / (pts**2 + pts + 2))
        noisy = add_noise(clean, NoiseSpec(tau, 2023))
        r = vf_scalar(noisy.points, noisy.values[:, 0, 0], 5, VfOptions(iterations=5))
        err = rmse(noisy, r)
        assert 0.5 * tau <= err <= 3 * tau

    def test_too_few_samples_rejected(self):
        pts = logspace_imaginary(1, 10, 4)
        with pytest.raises(ParameterError):
            vf_scalar(pts, np.ones(4), 2)


class TestVfMatrix:
    def test_diagonal_equal_entries_match_scalar_poles(self):
        pts = logspace_imaginary(1, 10, 30)
        f = (pts + 3) / ((pts + 1) * (pts + 4))
        vals = np.zeros((30, 2, 2), dtype=complex)
        vals[:, 0, 0] = f
        vals[:, 1, 1] = f
        rm = vf_matrix(SampleSet(pts, vals), 2, VfOptions(iterations=5))
        rs = vf_scalar(pts, f, 2, VfOptions(iterations=5))
        assert np.linalg.norm(
            np.sort_complex(rm.poles) - np.sort_complex(rs.poles)
        ) <= 1e-8

    def test_toy1_degree6(self, toy1):
        r = vf_matrix(toy1.samples, 6, VfOptions(iterations=5))
        assert rmse(toy1.samples, r) <= 1e-6

    def test_constant_degree0(self):
        pts = logspace_imaginary(1, 10, 5)
        G = np.array([[1.0, -2.0], [0.0, 4.0]])
        s = SampleSet(pts, np.tile(G, (5, 1, 1)))
        r = vf_matrix(s, 0)
        assert np.allclose(r.const, G)

    def test_nonsymmetric_data_supported(self, toy2):
        r = vf_matrix(toy2.samples, 8, VfOptions(iterations=10))
        assert rmse(toy2.samples, r) <= 1e-6

    def test_stability_enforcement(self, toy1):
        r = vf_matrix(toy1.samples, 6, VfOptions(iterations=5, enforce_stability=True))
        assert np.all(r.poles.real <= 0)


class TestInitialPoles:
    def test_count_and_conjugate_pairs(self):
        pts = logspace_imaginary(1, 100, 50)
        poles = initial_poles(pts, 6)
        assert poles.size == 6
        assert np.allclose(np.sort_complex(poles), np.sort_complex(poles.conj()))

    def test_odd_degree_adds_real_pole(self):
        pts = logspace_imaginary(1, 100, 50)
        poles = initial_poles(pts, 5)
        assert poles.size == 5
        assert np.sum(np.abs(poles.imag) < 1e-14) == 1

    def test_degree_zero(self):
        assert initial_poles(logspace_imaginary(1, 10, 5), 0).size == 0
