"""Steady-state covariance matrix: direct Lyapunov solve plus an
independent time-integration oracle.

The steady state solves ``Q eta + eta Q^T = -Omega``. The direct path
vectorizes this to a dense 64x64 linear system; the oracle integrates
``d eta/dt = Q eta + eta Q^T + Omega`` with an adaptive explicit
Runge-Kutta scheme until the residual stagnates below tolerance. The two
routes share nothing but the inputs.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.integrate import solve_ivp

from .dynamics import stability_check
from .errors import IllConditionedWarning, NoConvergence, UnstableSystem


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form for (Q1, P1, Q2, P2, ...) ordering."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = j
    return out


def lyapunov_residual(q: np.ndarray, omega: np.ndarray, eta: np.ndarray) -> float:
    """Relative Frobenius residual of the steady-state equation."""
    res = q @ eta + eta @ q.T + omega
    return float(np.linalg.norm(res) / np.linalg.norm(omega))


def solve_lyapunov(
    q: np.ndarray,
    omega: np.ndarray,
    *,
    margin: float = 0.0,
    cond_limit: float = 1e12,
) -> np.ndarray:
    """Steady-state covariance via the vectorized dense linear solve.

    Raises :class:`UnstableSystem` unless every drift eigenvalue real
    part is below ``-margin``. If the 2-norm condition number of the
    vectorized system exceeds ``cond_limit`` the solution is still
    returned, tagged with :class:`IllConditionedWarning`. The output is
    symmetrized exactly.
    """
    q = np.asarray(q, dtype=float)
    omega = np.asarray(omega, dtype=float)
    report = stability_check(q, margin)
    if not report.stable:
        raise UnstableSystem(
            f"max Re(eigenvalue) = {report.max_real_part:.6e} rad/s >= {-margin:.6e}"
        )
    n = q.shape[0]
    eye = np.eye(n)
    a = np.kron(eye, q) + np.kron(q, eye)
    cond = float(np.linalg.cond(a))
    if cond > cond_limit:
        warnings.warn(
            f"Lyapunov system condition estimate {cond:.3e} exceeds {cond_limit:.3e}",
            IllConditionedWarning,
            stacklevel=2,
        )
    # column-stacked vec convention: vec(QX) = (I (x) Q) vec(X), vec(XQ^T) = (Q (x) I) vec(X)
    eta = np.linalg.solve(a, -omega.flatten(order="F")).reshape((n, n), order="F")
    return 0.5 * (eta + eta.T)


def integrate_to_steady_state(
    q: np.ndarray,
    omega: np.ndarray,
    eta0: np.ndarray,
    tol: float,
    *,
    max_chunks: int = 64,
    rtol: float = 1e-9,
) -> np.ndarray:
    """Verification oracle: relax the covariance ODE to its fixed point.

    Integrates ``d eta/dt = Q eta + eta Q^T + Omega`` from ``eta0`` in
    chunks of a few slowest decay times, stopping once the relative
    residual drops to ``tol``. The chunk horizon is set by the slowest
    drift eigenvalue and the step control by the fastest, i.e. the cost
    scales with the stiffness ratio max|Re l| / min|Re l|.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    q = np.asarray(q, dtype=float)
    omega = np.asarray(omega, dtype=float)
    eta = 0.5 * (np.asarray(eta0, dtype=float) + np.asarray(eta0, dtype=float).T)
    report = stability_check(q)
    if not report.stable:
        raise UnstableSystem(
            f"max Re(eigenvalue) = {report.max_real_part:.6e} rad/s >= 0"
        )
    if lyapunov_residual(q, omega, eta) <= tol:
        return eta

    rates = -np.array([z.real for z in report.eigenvalues])
    slow = rates.min()
    chunk = 4.0 / slow
    n = q.shape[0]
    scale = np.linalg.norm(omega) / (2.0 * slow)
    atol = max(rtol * scale * 1e-3, 1e-300)

    def rhs(_t, y):
        mat = y.reshape((n, n))
        return (q @ mat + mat @ q.T + omega).ravel()

    for _ in range(max_chunks):
        sol = solve_ivp(
            rhs,
            (0.0, chunk),
            eta.ravel(),
            method="RK45",
            rtol=rtol,
            atol=atol,
        )
        if not sol.success:
            raise NoConvergence(f"integrator failed: {sol.message}")
        eta = sol.y[:, -1].reshape((n, n))
        eta = 0.5 * (eta + eta.T)
        if lyapunov_residual(q, omega, eta) <= tol:
            return eta
    raise NoConvergence(
        f"residual did not reach {tol:.3e} within {max_chunks} chunks"
    )


def symplectic_eigenvalues(eta: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix, ascending.

    Physical Gaussian states have every value >= 1/2 in the vacuum-1/2
    convention. Computed as the paired moduli of the spectrum of
    ``i Sigma eta``.
    """
    eta = np.asarray(eta, dtype=float)
    n_modes = eta.shape[0] // 2
    sigma_form = symplectic_form(n_modes)
    ev = np.linalg.eigvals(1j * sigma_form @ eta)
    moduli = np.sort(np.abs(ev))
    return moduli[::2]
