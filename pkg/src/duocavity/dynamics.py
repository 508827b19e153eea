"""Drift and noise matrices of the linearized quadrature dynamics.

The fluctuation vector is ordered mechanically first:

    (Q_a1, P_a1, Q_a2, P_a2, Q_c1, P_c1, Q_c2, P_c2)

with ``Q = (x + x^dag)/sqrt(2)`` and ``P = (x - x^dag)/(i sqrt(2))``, so
vacuum variance is 1/2. Every downstream index derives from this layout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigendecompositionFailure
from .params import DerivedQuantities, PhysicalParams

QUADRATURES = ("Q_a1", "P_a1", "Q_a2", "P_a2", "Q_c1", "P_c1", "Q_c2", "P_c2")
N = len(QUADRATURES)
MECH = slice(0, 4)
OPT = slice(4, 8)


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalue-based stability verdict for a drift matrix."""

    stable: bool
    max_real_part: float
    eigenvalues: tuple[complex, ...]


def _exchange_block(k: float) -> np.ndarray:
    # hopping/tunneling acts as a rotation generator between the two modes
    return np.array([[0.0, -k], [k, 0.0]])


def build_drift(d: DerivedQuantities, p: PhysicalParams) -> np.ndarray:
    """Assemble the 8x8 drift matrix, entries in rad/s.

    Mechanical damping -gamma/2 and optical damping -Gamma/2 sit on the
    diagonal; the parametric amplifier adds ``+-2 lam cos(theta)`` to the
    optical diagonal and ``2 lam sin(theta)`` off-diagonal within each
    cavity; the beam-splitter coupling is ``+J`` (mech <- opt) and ``-J``
    (opt <- mech); ``beta`` and ``alpha`` connect the two mirrors and the
    two cavities with an antisymmetric block pattern.
    """
    J = d.J
    I2 = np.eye(2)
    Z2 = np.zeros((2, 2))
    pa = 2.0 * p.lam * np.array(
        [
            [np.cos(p.theta), np.sin(p.theta)],
            [np.sin(p.theta), -np.cos(p.theta)],
        ]
    )
    mech_diag = -(p.gamma / 2.0) * I2
    opt_diag = -(p.Gamma / 2.0) * I2 + pa
    bt = _exchange_block(p.beta)
    al = _exchange_block(p.alpha)
    return np.block(
        [
            [mech_diag, bt, J * I2, Z2],
            [bt, mech_diag, Z2, J * I2],
            [-J * I2, Z2, opt_diag, al],
            [Z2, -J * I2, al, opt_diag],
        ]
    )


def build_noise(d: DerivedQuantities, p: PhysicalParams) -> np.ndarray:
    """Assemble the stationary noise matrix, entries in rad/s.

    Diagonal ``gamma_prime`` on the mechanical quadratures and
    ``Gamma_prime`` on the optical ones; the injected two-mode squeezing
    correlates the two cavities with ``+V Gamma`` on (Q_c1, Q_c2) and
    ``-V Gamma`` on (P_c1, P_c2). Symmetric by construction.
    """
    omega = np.zeros((N, N))
    omega[MECH, MECH] = d.gamma_prime * np.eye(4)
    omega[OPT, OPT] = d.Gamma_prime * np.eye(4)
    v_cross = d.V * p.Gamma
    omega[4, 6] = omega[6, 4] = v_cross
    omega[5, 7] = omega[7, 5] = -v_cross
    return omega


def stability_check(q: np.ndarray, margin: float = 0.0) -> StabilityReport:
    """Routh-Hurwitz verdict via direct eigenvalues of the drift matrix.

    ``stable`` means every eigenvalue real part lies strictly below
    ``-margin`` [rad/s]. Eigenvalues are reported sorted by (real, imag)
    so the output is deterministic.
    """
    try:
        ev = np.linalg.eigvals(np.asarray(q, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise EigendecompositionFailure(str(exc)) from exc
    order = np.lexsort((ev.imag, ev.real))
    ev = ev[order]
    max_real = float(ev.real.max())
    return StabilityReport(
        stable=bool(max_real < -margin),
        max_real_part=max_real,
        eigenvalues=tuple(complex(z) for z in ev),
    )


def matrix_to_text(mat: np.ndarray) -> str:
    """Serialize a real matrix as a row-major plain-text grid, full precision."""
    rows = [" ".join(repr(float(x)) for x in row) for row in np.atleast_2d(mat)]
    return "\n".join(rows) + "\n"


def matrix_from_text(text: str) -> np.ndarray:
    rows = [
        [float(tok) for tok in line.split()]
        for line in text.strip().splitlines()
        if line.strip()
    ]
    return np.array(rows)
