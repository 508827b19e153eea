"""Shared test utilities: literal matrix transcriptions and random draws.

The literal builders write out all 64 entries row by row, independently
of the block assembly used by the package, so entry-by-entry agreement
is a genuine cross-check.
"""

import math

import numpy as np

from duocavity import PhysicalParams, build_drift, derive, stability_check


def literal_drift(gamma, Gamma, J, lam, theta, alpha, beta):
    c = math.cos(theta)
    s = math.sin(theta)
    g = gamma / 2.0
    G = Gamma / 2.0
    return np.array(
        [
            [-g, 0, 0, -beta, J, 0, 0, 0],
            [0, -g, beta, 0, 0, J, 0, 0],
            [0, -beta, -g, 0, 0, 0, J, 0],
            [beta, 0, 0, -g, 0, 0, 0, J],
            [-J, 0, 0, 0, -G + 2 * lam * c, 2 * lam * s, 0, -alpha],
            [0, -J, 0, 0, 2 * lam * s, -G - 2 * lam * c, alpha, 0],
            [0, 0, -J, 0, 0, -alpha, -G + 2 * lam * c, 2 * lam * s],
            [0, 0, 0, -J, alpha, 0, 2 * lam * s, -G - 2 * lam * c],
        ],
        dtype=float,
    )


def literal_noise(gamma_prime, Gamma_prime, v_gamma):
    gp = gamma_prime
    Gp = Gamma_prime
    vG = v_gamma
    return np.array(
        [
            [gp, 0, 0, 0, 0, 0, 0, 0],
            [0, gp, 0, 0, 0, 0, 0, 0],
            [0, 0, gp, 0, 0, 0, 0, 0],
            [0, 0, 0, gp, 0, 0, 0, 0],
            [0, 0, 0, 0, Gp, 0, vG, 0],
            [0, 0, 0, 0, 0, Gp, 0, -vG],
            [0, 0, 0, 0, vG, 0, Gp, 0],
            [0, 0, 0, 0, 0, -vG, 0, Gp],
        ],
        dtype=float,
    )


TWO_PI = 2.0 * math.pi


def make_params(**overrides) -> PhysicalParams:
    """Standard movable-mirror cavity pair, weak-coupling drive."""
    values = dict(
        m=145e-12,
        omega_M=TWO_PI * 947e3,
        omega_c=TWO_PI * 2.82e14,
        omega_l=TWO_PI * 5.26e14,
        L=25e-3,
        P=0.11e-3,
        Gamma=TWO_PI * 215e3,
        gamma=TWO_PI * 140.0,
    )
    values.update(overrides)
    return PhysicalParams(**values)


def random_stable_params(rng, n, gamma_scale_max=50.0):
    """Rejection-sample stable parameter sets around the standard values."""
    base = make_params()
    out = []
    while len(out) < n:
        p = base.replace(
            m=base.m * rng.uniform(0.5, 2.0),
            L=base.L * rng.uniform(0.5, 2.0),
            P=base.P * rng.uniform(0.25, 4.0),
            gamma=base.gamma * rng.uniform(1.0, gamma_scale_max),
            T=rng.uniform(0.0, 5e-4),
            r=rng.uniform(0.0, 2.0),
            lam=rng.uniform(0.0, 0.2) * base.Gamma,
            theta=rng.uniform(0.0, TWO_PI),
            alpha=rng.uniform(0.0, 0.01) * base.Gamma,
            beta=rng.uniform(0.0, 0.003) * base.Gamma,
        )
        q = build_drift(derive(p), p)
        if stability_check(q, margin=1e-4 * base.Gamma).stable:
            out.append(p)
    return out
