import numpy as np
import pytest

from blockrat import (
    NoiseSpec,
    ParameterError,
    RkfitOptions,
    SampleSet,
    add_noise,
    build_basis,
    logspace_imaginary,
    relocate_poles,
    rkfit_fit,
    rmse,
)


class TestBuildBasis:
    def test_degree_zero_constant_column(self):
        pts = logspace_imaginary(1, 10, 9)
        basis = build_basis(pts, [], degree=0)
        assert basis.V.shape == (9, 1)
        assert np.allclose(basis.V[:, 0], 1 / np.sqrt(9))

    def test_polynomial_span_matches_vandermonde(self):
        pts = np.linspace(1, 2, 10) + 0.5j
        basis = build_basis(pts, [], degree=3)
        X = np.vander(pts / np.max(np.abs(pts)), 4, increasing=True)
        proj = basis.V @ (basis.V.conj().T @ X)
        assert np.linalg.norm(proj - X) <= 1e-8 * np.linalg.norm(X)

    def test_finite_pole_span(self):
        pts = logspace_imaginary(1, 10, 12)
        basis = build_basis(pts, [-1.0, -2.0])
        g = 1.0 / ((pts + 1) * (pts + 2))
        proj = basis.V @ (basis.V.conj().T @ g)
        assert np.linalg.norm(proj - g) <= 1e-10 * np.linalg.norm(g)

    def test_orthonormality(self):
        pts = logspace_imaginary(1, 100, 40)
        basis = build_basis(pts, [-1.0, -5.0], degree=6)
        G = basis.V.conj().T @ basis.V
        assert np.linalg.norm(G - np.eye(7)) <= 1e-10

    def test_pole_collision_rejected(self):
        pts = logspace_imaginary(1, 10, 5)
        with pytest.raises(ParameterError):
            build_basis(pts, [pts[2]])


class TestRelocatePoles:
    def test_fixed_point_at_true_poles(self):
        pts = logspace_imaginary(1, 10, 20)
        f = 1.0 / (pts + 1) + 1.0 / (pts + 2)
        basis = build_basis(pts, [-1.0, -2.0])
        new = np.sort_complex(relocate_poles(basis, [f]))
        assert np.linalg.norm(new - np.array([-2.0, -1.0])) <= 1e-8

    def test_degenerate_constant_misfit(self):
        pts = logspace_imaginary(1, 10, 10)
        basis = build_basis(pts, [], degree=1)
        new = relocate_poles(basis, [np.ones(10, dtype=complex)])
        assert new.size <= 1
        assert np.all(np.isfinite(new))

    def test_scale_invariance(self):
        pts = logspace_imaginary(1, 10, 20)
        f = 1.0 / (pts + 1) + 1.0 / (pts + 3)
        basis = build_basis(pts, [-0.5, -4.0])
        p1 = np.sort_complex(relocate_poles(basis, [f]))
        p2 = np.sort_complex(relocate_poles(basis, [7.3 * f]))
        assert np.linalg.norm(p1 - p2) <= 1e-8 * max(1.0, np.linalg.norm(p1))


class TestRkfitFit:
    def test_known_pole_recovery_from_polynomial_start(self):
        pts = logspace_imaginary(1, 10, 10)
        s = SampleSet(pts, 1.0 / (pts + 1))
        res = rkfit_fit(s, RkfitOptions(degree=1, iterations=2))
        assert res.model.poles[0] == pytest.approx(-1.0, abs=1e-6)

    def test_toy1_degree6(self, toy1):
        res = rkfit_fit(toy1.samples, RkfitOptions(degree=6, iterations=5))
        assert rmse(toy1.samples, res.model) <= 1e-8
        assert len(res.rmse_trace) == 5

    def test_noisy_stagnation_near_noise_level(self):
        tau = 1e-2
        pts = logspace_imaginary(1e-1, 10, 500)
        clean = SampleSet(pts, (pts - 1) / (pts**2 + pts + 2))
        noisy = add_noise(clean, NoiseSpec(tau, 2023))
        res = rkfit_fit(noisy, RkfitOptions(degree=3, iterations=3))
        err = rmse(noisy, res.model)
        assert 0.3 * tau <= err <= 3 * tau
        # non-interpolatory: the residual spreads across points
        worst = max(
            np.linalg.norm(F - res.model(z), "fro")
            for z, F in zip(noisy.points, noisy.values)
        )
        assert worst <= 10 * err

    def test_constant_degree0(self):
        pts = logspace_imaginary(1, 10, 6)
        G = np.array([[2.0, 1.0], [0.0, -1.0]])
        s = SampleSet(pts, np.tile(G, (6, 1, 1)))
        res = rkfit_fit(s, RkfitOptions(degree=0, iterations=1))
        assert np.allclose(res.model.const, G)
        assert rmse(s, res.model) <= 1e-14

    def test_too_few_samples_rejected(self):
        pts = logspace_imaginary(1, 10, 5)
        s = SampleSet(pts, 1.0 / (pts + 1))
        with pytest.raises(ParameterError):
            rkfit_fit(s, RkfitOptions(degree=2, iterations=1))

    def test_bad_options_rejected(self):
        with pytest.raises(ParameterError):
            RkfitOptions(degree=-1)
        with pytest.raises(ParameterError):
            RkfitOptions(degree=2, iterations=0)
