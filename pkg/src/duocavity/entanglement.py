"""Mirror-mirror entanglement from the reduced two-mode covariance matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import MECH
from .errors import UnphysicalCovariance
from .steady_state import symplectic_form

RADICAND_TOL = 1e-12


@dataclass(frozen=True)
class EntanglementResult:
    """Logarithmic negativity and the quantities it is built from.

    ``Psi = det X + det Y - 2 det Z`` over the 2x2 blocks of the reduced
    covariance, ``nu_minus`` the smallest symplectic eigenvalue of the
    partial transpose, ``E_N = max(0, -ln(2 nu_minus))``. The boundary
    ``nu_minus = 1/2`` is classified separable.
    """

    Psi: float
    nu_minus: float
    E_N: float
    separable: bool


def reduce_covariance(eta: np.ndarray) -> np.ndarray:
    """Extract the 4x4 mechanical block of the full covariance matrix."""
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (8, 8):
        raise ValueError(f"expected an 8x8 covariance matrix, got {eta.shape}")
    sigma = eta[MECH, MECH].copy()
    return 0.5 * (sigma + sigma.T)


def blocks(sigma: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split a two-mode covariance into single-mode X, Y and cross block Z."""
    sigma = np.asarray(sigma, dtype=float)
    return sigma[:2, :2], sigma[2:, 2:], sigma[:2, 2:]


def log_negativity(sigma: np.ndarray) -> EntanglementResult:
    """Logarithmic negativity of a two-mode covariance matrix.

    Uses the closed form: ``nu_minus = sqrt((Psi - sqrt(Psi^2 - 4 det
    sigma))/2)``. Radicands within ``-1e-12`` of zero are clamped;
    anything lower signals a broken upstream covariance and raises
    :class:`UnphysicalCovariance`.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (4, 4):
        raise ValueError(f"expected a 4x4 covariance matrix, got {sigma.shape}")
    x, y, z = blocks(sigma)
    psi = float(np.linalg.det(x) + np.linalg.det(y) - 2.0 * np.linalg.det(z))
    det_sigma = float(np.linalg.det(sigma))
    disc = psi * psi - 4.0 * det_sigma
    if disc < -RADICAND_TOL:
        raise UnphysicalCovariance(
            f"Psi^2 - 4 det sigma = {disc:.6e} below tolerance"
        )
    disc = max(disc, 0.0)
    nu_sq = 0.5 * (psi - math.sqrt(disc))
    if nu_sq < -RADICAND_TOL:
        raise UnphysicalCovariance(f"nu_minus^2 = {nu_sq:.6e} below tolerance")
    nu_minus = math.sqrt(max(nu_sq, 0.0))
    if nu_minus == 0.0:
        raise UnphysicalCovariance("vanishing partial-transpose symplectic eigenvalue")
    e_n = max(0.0, -math.log(2.0 * nu_minus))
    return EntanglementResult(
        Psi=psi,
        nu_minus=nu_minus,
        E_N=e_n,
        separable=bool(nu_minus >= 0.5),
    )


def pt_symplectic_minimum(sigma: np.ndarray) -> float:
    """Smallest symplectic eigenvalue of the partially transposed state.

    Independent route to ``nu_minus``: flip the momentum of mode 2 and
    take the minimal modulus of the spectrum of ``i Sigma sigma~``. Used
    as a cross-check against the closed form.
    """
    sigma = np.asarray(sigma, dtype=float)
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    sigma_pt = flip @ sigma @ flip
    ev = np.linalg.eigvals(1j * symplectic_form(2) @ sigma_pt)
    return float(np.abs(ev).min())
