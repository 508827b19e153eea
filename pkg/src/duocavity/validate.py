"""Built-in invariant suite behind the CLI ``validate`` command.

Each check returns (name, passed, detail); the CLI prints one line per
check and exits non-zero if any fails. The checks mirror the package's
core guarantees: algebraic identities, solver-vs-integrator agreement,
state physicality and the closed-form entanglement values.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .constants import HBAR, KB
from .dynamics import build_drift, build_noise, stability_check
from .entanglement import log_negativity, pt_symplectic_minimum, reduce_covariance
from .params import PhysicalParams, derive, mean_fields
from .steady_state import (
    integrate_to_steady_state,
    lyapunov_residual,
    solve_lyapunov,
    symplectic_eigenvalues,
)
from .sweep import figure_base, preset, preset_names


def _check_hyperbolic_identity():
    rs = np.linspace(0.0, 10.0, 201)
    worst = 0.0
    for r in rs:
        R = math.sinh(r) ** 2
        V = math.sinh(r) * math.cosh(r)
        lhs, rhs = R * (R + 1.0), V * V
        ulp = np.spacing(max(lhs, rhs, 1.0))
        worst = max(worst, abs(lhs - rhs) / ulp)
    return ("hyperbolic identity R(R+1) = V^2", worst <= 8.0, f"worst {worst:.1f} ulp")


def _mean_field_residual(p: PhysicalParams) -> float:
    """Residual of the zero-derivative conditions at the computed means."""
    d = derive(p)
    mf = mean_fields(p, d.Delta_eff)
    mu = (p.omega_c / p.L) * math.sqrt(HBAR / (p.m * p.omega_M))
    upsilon = math.sqrt(2.0 * p.Gamma * p.P / (HBAR * p.omega_l))
    drive = upsilon * complex(math.cos(d.phi), math.sin(d.phi))
    # bare detunings consistent with the imposed effective detuning
    r1 = (
        -(p.gamma / 2.0 + 1j * p.omega_M) * mf.a1
        + 1j * mu * abs(mf.c1) ** 2
        + 1j * p.beta * mf.a2
    )
    r2 = (
        -(p.gamma / 2.0 + 1j * p.omega_M) * mf.a2
        + 1j * mu * abs(mf.c2) ** 2
        + 1j * p.beta * mf.a1
    )
    r3 = (
        -(p.Gamma / 2.0 - 1j * mf.delta1) * mf.c1
        + 1j * mu * mf.c1 * (2.0 * mf.a1.real)
        - 1j * drive
        + 1j * p.alpha * mf.c2
    )
    r4 = (
        -(p.Gamma / 2.0 - 1j * mf.delta2) * mf.c2
        + 1j * mu * mf.c2 * (2.0 * mf.a2.real)
        - 1j * drive
        + 1j * p.alpha * mf.c1
    )
    scale = max(abs(mf.a1), abs(mf.a2)) * p.omega_M + max(abs(mf.c1), abs(mf.c2)) * p.Gamma
    return max(abs(r1), abs(r2), abs(r3), abs(r4)) / scale


def _check_mean_fields(p: PhysicalParams):
    if p.P == 0.0:
        p = p.replace(P=0.11e-3)
    res = _mean_field_residual(p)
    return ("mean fields solve the steady-state conditions", res < 1e-10, f"residual {res:.2e}")


def _draws(base: PhysicalParams, n: int, seed: int = 20240817):
    rng = np.random.default_rng(seed)
    accepted = []
    while len(accepted) < n:
        p = base.replace(
            m=base.m * rng.uniform(0.5, 2.0),
            L=base.L * rng.uniform(0.5, 2.0),
            P=base.P * rng.uniform(0.25, 4.0),
            gamma=base.gamma * rng.uniform(1.0, 50.0),
            T=rng.uniform(0.0, 5e-4),
            r=rng.uniform(0.0, 2.0),
            lam=rng.uniform(0.0, 0.2) * base.Gamma,
            theta=rng.uniform(0.0, 2.0 * math.pi),
            alpha=rng.uniform(0.0, 0.01) * base.Gamma,
            beta=rng.uniform(0.0, 0.003) * base.Gamma,
        )
        d = derive(p)
        q = build_drift(d, p)
        if stability_check(q, margin=1e-4 * base.Gamma).stable:
            accepted.append((p, d, q))
    return accepted


def _check_oracle_agreement(base: PhysicalParams, n_draws: int):
    start = time.monotonic()
    worst = 0.0
    for p, d, q in _draws(base, n_draws):
        omega = build_noise(d, p)
        eta = solve_lyapunov(q, omega)
        eta0 = 0.5 * np.eye(8)
        eta_ode = integrate_to_steady_state(q, omega, eta0, tol=1e-8)
        rel = float(np.linalg.norm(eta - eta_ode) / np.linalg.norm(eta))
        worst = max(worst, rel)
    elapsed = time.monotonic() - start
    return (
        f"Lyapunov solve vs time integration ({n_draws} draws)",
        worst <= 1e-5,
        f"worst rel error {worst:.2e} in {elapsed:.1f} s",
    )


def _check_physicality(p: PhysicalParams):
    if p.P == 0.0:
        p = p.replace(P=0.11e-3)
    worst_nu, worst_res = math.inf, 0.0
    points = [p]
    for name in preset_names():
        points.append(preset(name).base)
    for point in points:
        d = derive(point)
        q = build_drift(d, point)
        if not stability_check(q).stable:
            continue
        omega = build_noise(d, point)
        eta = solve_lyapunov(q, omega)
        worst_nu = min(worst_nu, float(symplectic_eigenvalues(eta).min()))
        worst_res = max(worst_res, lyapunov_residual(q, omega, eta))
    ok = worst_nu >= 0.5 - 1e-9 and worst_res <= 1e-10
    return (
        "covariance physicality and residual",
        ok,
        f"min symplectic eigenvalue {worst_nu:.12f}, worst residual {worst_res:.2e}",
    )


def _check_two_mode_squeezed():
    worst = 0.0
    for s in (0.1, 0.5, 1.0):
        c2, s2 = math.cosh(2.0 * s) / 2.0, math.sinh(2.0 * s) / 2.0
        sigma = np.diag([c2, c2, c2, c2])
        sigma[0, 2] = sigma[2, 0] = s2
        sigma[1, 3] = sigma[3, 1] = -s2
        result = log_negativity(sigma)
        worst = max(worst, abs(result.E_N - 2.0 * s))
        worst = max(worst, abs(pt_symplectic_minimum(sigma) - result.nu_minus))
    return ("two-mode squeezed closed form E_N = 2s", worst <= 1e-10, f"worst dev {worst:.2e}")


def _check_stability_boundary(base: PhysicalParams):
    p0 = base.replace(P=0.0, alpha=0.0, beta=0.0, theta=0.0)

    def unstable(lam):
        p = p0.replace(lam=lam)
        return not stability_check(build_drift(derive(p), p)).stable

    lo, hi = 0.0, 0.5 * base.Gamma
    while hi - lo > 1e-7 * base.Gamma:
        mid = 0.5 * (lo + hi)
        if unstable(mid):
            hi = mid
        else:
            lo = mid
    crossing = 0.5 * (lo + hi)
    dev = abs(crossing - base.Gamma / 4.0) / base.Gamma
    return (
        "stability flips at lam = Gamma/4 when decoupled",
        dev <= 1e-6,
        f"crossing at {crossing / base.Gamma:.9f} Gamma",
    )


def _check_thermal_occupation():
    # n(T) = 1 exactly at T = hbar w / (kB ln 2)
    w = 2.0 * math.pi * 947e3
    t_one = HBAR * w / (KB * math.log(2.0))
    from .params import thermal_occupation

    dev = abs(thermal_occupation(t_one, w) - 1.0)
    ok = dev <= 1e-12 and thermal_occupation(0.0, w) == 0.0
    return ("thermal occupation limits", ok, f"dev at n=1 point {dev:.2e}")


def run_all(p: PhysicalParams | None = None, draws: int = 10):
    """Run every check; returns a list of (name, passed, detail)."""
    base = figure_base()
    point = p if p is not None else base
    return [
        _check_hyperbolic_identity(),
        _check_thermal_occupation(),
        _check_mean_fields(point),
        _check_two_mode_squeezed(),
        _check_stability_boundary(base),
        _check_physicality(point),
        _check_oracle_agreement(base, draws),
    ]
