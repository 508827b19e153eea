import math

import numpy as np
import pytest

from duocavity import (
    build_drift,
    build_noise,
    derive,
    matrix_from_text,
    matrix_to_text,
    stability_check,
)
from duocavity.dynamics import QUADRATURES

from helpers import TWO_PI, literal_drift, literal_noise, make_params

GAMMA = TWO_PI * 215e3


def test_layout_is_mechanical_first():
    assert QUADRATURES == (
        "Q_a1", "P_a1", "Q_a2", "P_a2", "Q_c1", "P_c1", "Q_c2", "P_c2"
    )


class TestDrift:
    def test_all_couplings_off(self):
        p = make_params(P=0.0)
        q = build_drift(derive(p), p)
        expected = np.diag([-p.gamma / 2] * 4 + [-p.Gamma / 2] * 4)
        np.testing.assert_array_equal(q, expected)

    def test_printed_entries(self):
        p = make_params(
            lam=0.1 * GAMMA,
            theta=0.3,
            alpha=0.002 * GAMMA,
            beta=0.001 * GAMMA,
        )
        q = build_drift(derive(p), p)
        assert q[0, 3] == -p.beta
        assert q[3, 0] == p.beta
        assert q[4, 4] == pytest.approx(-p.Gamma / 2 + 2 * p.lam * math.cos(p.theta))
        assert q[5, 4] == pytest.approx(2 * p.lam * math.sin(p.theta))
        assert q[4, 7] == -p.alpha
        assert q[7, 4] == p.alpha

    def test_theta_half_pi(self):
        p = make_params(lam=0.1 * GAMMA, theta=math.pi / 2)
        q = build_drift(derive(p), p)
        for k in (4, 5, 6, 7):
            assert q[k, k] == pytest.approx(-p.Gamma / 2)
        assert q[4, 5] == pytest.approx(2 * p.lam)
        assert q[5, 4] == pytest.approx(2 * p.lam)

    def test_congruence_with_literal_transcription(self, rng):
        for _ in range(100):
            p = make_params(
                P=0.11e-3 * rng.uniform(0.0, 5.0),
                lam=rng.uniform(0.0, 0.3) * GAMMA,
                theta=rng.uniform(0.0, TWO_PI),
                alpha=rng.uniform(0.0, 0.1) * GAMMA,
                beta=rng.uniform(0.0, 0.01) * GAMMA,
                gamma=TWO_PI * rng.uniform(10.0, 1e5),
            )
            d = derive(p)
            expected = literal_drift(
                p.gamma, p.Gamma, d.J, p.lam, p.theta, p.alpha, p.beta
            )
            np.testing.assert_allclose(
                build_drift(d, p), expected, rtol=0.0, atol=0.0
            )

    def test_independent_of_squeezing(self):
        p0 = make_params(r=0.0)
        p3 = make_params(r=3.0)
        np.testing.assert_array_equal(
            build_drift(derive(p0), p0), build_drift(derive(p3), p3)
        )


class TestNoise:
    def test_no_squeezing_diagonal(self):
        p = make_params(T=0.2e-3, r=0.0)
        d = derive(p)
        omega = build_noise(d, p)
        expected = np.diag([d.gamma_prime] * 4 + [p.Gamma / 2] * 4)
        np.testing.assert_allclose(omega, expected, rtol=1e-15)

    def test_vacuum_baths(self):
        p = make_params(T=0.0, r=0.0)
        omega = build_noise(derive(p), p)
        expected = np.diag([p.gamma / 2] * 4 + [p.Gamma / 2] * 4)
        np.testing.assert_allclose(omega, expected, rtol=1e-15)

    def test_golden_r1(self):
        # frozen from an independent 40-digit evaluation
        p = make_params(T=0.0, r=1.0)
        omega = build_noise(derive(p), p)
        assert omega[4, 4] == pytest.approx(2541146.5640622350, rel=1e-12)
        assert omega[4, 6] == pytest.approx(2449735.3727708932, rel=1e-12)
        assert omega[5, 7] == pytest.approx(-2449735.3727708932, rel=1e-12)

    def test_congruence_with_literal_transcription(self, rng):
        for _ in range(100):
            p = make_params(T=rng.uniform(0.0, 1e-2), r=rng.uniform(0.0, 4.0))
            d = derive(p)
            expected = literal_noise(d.gamma_prime, d.Gamma_prime, d.V * p.Gamma)
            np.testing.assert_allclose(build_noise(d, p), expected, rtol=0.0, atol=0.0)

    def test_exact_symmetry(self, rng):
        p = make_params(T=1e-4, r=2.3)
        omega = build_noise(derive(p), p)
        assert np.array_equal(omega, omega.T)

    def test_positive_semidefinite(self, rng):
        for r in rng.uniform(0.0, 6.0, size=25):
            p = make_params(T=rng.uniform(0.0, 1e-2), r=float(r))
            omega = build_noise(derive(p), p)
            assert np.linalg.eigvalsh(omega).min() >= -1e-12 * p.Gamma


class TestStability:
    def test_diagonal_case(self):
        p = make_params(P=0.0)
        report = stability_check(build_drift(derive(p), p))
        assert report.stable
        assert report.max_real_part == pytest.approx(-min(p.gamma, p.Gamma) / 2)

    def test_amplifier_above_threshold(self):
        # with everything decoupled the optical entry -Gamma/2 + 2 lam is an
        # eigenvalue; lam = 0.3 Gamma puts it at +0.1 Gamma
        p = make_params(P=0.0, lam=0.3 * GAMMA, theta=0.0)
        report = stability_check(build_drift(derive(p), p))
        assert not report.stable
        assert report.max_real_part == pytest.approx(0.1 * GAMMA, rel=1e-9)

    def test_entangled_operating_point_is_stable(self, base_params):
        report = stability_check(build_drift(derive(base_params), base_params))
        assert report.stable

    def test_theta_periodicity(self, rng):
        p = make_params(lam=0.15 * GAMMA, theta=rng.uniform(0, TWO_PI))
        q1 = build_drift(derive(p), p)
        p2 = p.replace(theta=p.theta + TWO_PI)
        q2 = build_drift(derive(p2), p2)
        ev1 = np.sort_complex(np.linalg.eigvals(q1))
        ev2 = np.sort_complex(np.linalg.eigvals(q2))
        np.testing.assert_allclose(ev1, ev2, rtol=1e-12, atol=1e-9)

    def test_cavity_swap_relabeling(self, rng):
        # flipping the signs of both exchange couplings and swapping the
        # cavity labels leaves the spectrum untouched
        p = make_params(
            lam=0.1 * GAMMA,
            theta=0.7,
            alpha=0.01 * GAMMA,
            beta=0.002 * GAMMA,
        )
        d = derive(p)
        q = build_drift(d, p)
        q_flipped = literal_drift(
            p.gamma, p.Gamma, d.J, p.lam, p.theta, -p.alpha, -p.beta
        )
        perm = [2, 3, 0, 1, 6, 7, 4, 5]
        q_relabeled = q_flipped[np.ix_(perm, perm)]
        ev = np.sort_complex(np.linalg.eigvals(q))
        ev_rel = np.sort_complex(np.linalg.eigvals(q_relabeled))
        np.testing.assert_allclose(ev, ev_rel, rtol=1e-9, atol=1e-6)

    def test_margin(self):
        p = make_params(P=0.0)
        q = build_drift(derive(p), p)
        # slowest decay is -gamma/2; a margin beyond it flips the verdict
        assert stability_check(q, margin=p.gamma / 4).stable
        assert not stability_check(q, margin=p.gamma).stable

    def test_eigenvalues_sorted_deterministically(self):
        p = make_params(lam=0.1 * GAMMA, theta=1.0, alpha=0.05 * GAMMA)
        q = build_drift(derive(p), p)
        ev = stability_check(q).eigenvalues
        keys = [(z.real, z.imag) for z in ev]
        assert keys == sorted(keys)


def test_matrix_text_roundtrip(rng):
    mat = rng.standard_normal((8, 8)) * 1e6
    recovered = matrix_from_text(matrix_to_text(mat))
    np.testing.assert_array_equal(recovered, mat)
