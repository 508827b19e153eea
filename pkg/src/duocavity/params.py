"""Physical inputs and derived scalars of the two-cavity optomechanical model.

All stored values are SI (kg, m, W, K, rad/s). Conversion from the
display units used by the CLI and sweep axes (mK, multiples of the
cavity damping rate, ...) happens through :data:`DISPLAY_UNITS`.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass

from .constants import HBAR, KB
from .errors import SingularDenominator


@dataclass(frozen=True)
class PhysicalParams:
    """Raw experimental inputs, SI units.

    Attributes
    ----------
    m : float
        Mass of each movable mirror [kg].
    omega_M : float
        Mechanical angular frequency [rad/s].
    omega_c : float
        Cavity angular frequency [rad/s].
    omega_l : float
        Drive-laser angular frequency [rad/s].
    L : float
        Cavity length [m].
    P : float
        Drive power [W].
    Gamma : float
        Cavity damping rate [rad/s].
    gamma : float
        Mechanical dissipation rate [rad/s].
    T : float
        Bath temperature [K].
    r : float
        Squeezing parameter of the injected light.
    lam : float
        Parametric-amplifier gain [rad/s].
    theta : float
        Parametric-amplifier pump phase [rad].
    alpha : float
        Photon-hopping strength between the cavities [rad/s].
    beta : float
        Phonon-tunneling strength between the mirrors [rad/s].
    """

    m: float
    omega_M: float
    omega_c: float
    omega_l: float
    L: float
    P: float
    Gamma: float
    gamma: float
    T: float = 0.0
    r: float = 0.0
    lam: float = 0.0
    theta: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        for name in ("m", "omega_M", "omega_c", "omega_l", "L", "Gamma", "gamma"):
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")
        for name in ("P", "T", "r", "lam", "alpha", "beta"):
            value = getattr(self, name)
            if value < 0.0 or not math.isfinite(value):
                raise ValueError(f"{name} must be >= 0, got {value!r}")
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta!r}")
        if not self.rwa_valid:
            warnings.warn(
                "omega_M/Gamma = %.3g <= 1: resolved-sideband assumption is "
                "violated and the rotating-wave model is unreliable"
                % (self.omega_M / self.Gamma),
                stacklevel=2,
            )

    @property
    def rwa_valid(self) -> bool:
        """Resolved-sideband flag: mechanical frequency above the cavity linewidth."""
        return self.omega_M / self.Gamma > 1.0

    def replace(self, **changes) -> "PhysicalParams":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class DerivedQuantities:
    """Scalars consumed by the drift/noise matrix builders.

    ``R = sinh^2 r`` and ``V = sinh r cosh r`` are the squeezed-bath
    moments; ``gamma_prime = gamma (n_th + 1/2)`` and
    ``Gamma_prime = Gamma (R + 1/2)`` are the diagonal noise rates.
    ``Delta_eff`` is the effective detuning, fixed to ``-omega_M`` by the
    red-sideband drive condition.
    """

    n_th: float
    J: float
    phi: float
    R: float
    V: float
    gamma_prime: float
    Gamma_prime: float
    Delta_eff: float


@dataclass(frozen=True)
class MeanFields:
    """Steady-state mean amplitudes and the closed-form denominators.

    ``a1``/``a2`` are the mechanical amplitudes, ``c1``/``c2`` the
    intracavity optical amplitudes. ``i1``/``i2`` and ``b1``/``b2`` are
    the per-mode denominator terms ``i*omega_M + gamma/2`` and
    ``-Gamma/2 + i*Delta_eff``. ``delta1``/``delta2`` report the bare
    detunings implied by the imposed effective detuning.
    """

    a1: complex
    a2: complex
    c1: complex
    c2: complex
    i1: complex
    i2: complex
    b1: complex
    b2: complex
    delta1: float
    delta2: float


def thermal_occupation(T: float, omega_M: float) -> float:
    """Mean thermal phonon number of a mode at temperature ``T``.

    The ``T = 0`` limit is returned exactly as 0; very small ``T`` falls
    back to the Boltzmann tail to avoid overflowing ``expm1``.
    """
    if omega_M <= 0.0:
        raise ValueError("omega_M must be positive")
    if T < 0.0:
        raise ValueError("T must be >= 0")
    if T == 0.0:
        return 0.0
    x = HBAR * omega_M / (KB * T)
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def coupling_strength(p: PhysicalParams) -> float:
    """Many-photon optomechanical coupling rate [rad/s].

    Square root of ``2 w_c^2 Gamma P / (L^2 m w_M w_l [(w_M + alpha)^2 +
    Gamma^2/4])``; zero exactly when the drive power is zero.
    """
    num = 2.0 * p.omega_c**2 * p.Gamma * p.P
    den = (
        p.L**2
        * p.m
        * p.omega_M
        * p.omega_l
        * ((p.omega_M + p.alpha) ** 2 + p.Gamma**2 / 4.0)
    )
    return math.sqrt(num / den)


def laser_phase(
    Delta_eff: float, alpha: float, Gamma: float, *, factor_two: bool = False
) -> float:
    """Input-laser phase fixing the intracavity amplitude to ``i |<c>|``.

    Default is ``-arctan[(Delta_eff + alpha)/Gamma]``; ``factor_two``
    switches to the ``-arctan[2 (Delta_eff + alpha)/Gamma]`` variant.
    Both lie in (-pi/2, pi/2).
    """
    if Gamma <= 0.0:
        raise ValueError("Gamma must be positive")
    scale = 2.0 if factor_two else 1.0
    return -math.atan(scale * (Delta_eff + alpha) / Gamma)


def derive(
    p: PhysicalParams,
    *,
    Delta_eff: float | None = None,
    phase_factor_two: bool = False,
) -> DerivedQuantities:
    """Compute every scalar the linearized dynamics needs.

    ``Delta_eff`` defaults to the red-sideband value ``-omega_M``.
    """
    if Delta_eff is None:
        Delta_eff = -p.omega_M
    n_th = thermal_occupation(p.T, p.omega_M)
    R = math.sinh(p.r) ** 2
    V = math.sinh(p.r) * math.cosh(p.r)
    return DerivedQuantities(
        n_th=n_th,
        J=coupling_strength(p),
        phi=laser_phase(Delta_eff, p.alpha, p.Gamma, factor_two=phase_factor_two),
        R=R,
        V=V,
        gamma_prime=p.gamma * (n_th + 0.5),
        Gamma_prime=p.Gamma * (R + 0.5),
        Delta_eff=Delta_eff,
    )


def _single_photon_coupling(p: PhysicalParams) -> float:
    # omega_c/L sqrt(hbar/(m omega_M)): radiation-pressure coupling per photon
    return (p.omega_c / p.L) * math.sqrt(HBAR / (p.m * p.omega_M))


def mean_fields(
    p: PhysicalParams,
    Delta_eff: float | None = None,
    *,
    phase_factor_two: bool = False,
    denom_floor: float = 1e-12,
) -> MeanFields:
    """Steady-state mean amplitudes of both cavities and mirrors.

    Solves the coupled 2x2 linear systems for ``<c_j>`` and ``<a_j>`` in
    closed form. ``denom_floor`` is a relative floor: a denominator whose
    magnitude falls below ``denom_floor`` times its natural scale raises
    :class:`SingularDenominator`.
    """
    if Delta_eff is None:
        Delta_eff = -p.omega_M
    mu = _single_photon_coupling(p)
    upsilon = math.sqrt(2.0 * p.Gamma * p.P / (HBAR * p.omega_l))
    phi = laser_phase(Delta_eff, p.alpha, p.Gamma, factor_two=phase_factor_two)

    b = complex(-p.Gamma / 2.0, Delta_eff)
    i_den = complex(p.gamma / 2.0, p.omega_M)
    b1 = b2 = b
    i1 = i2 = i_den

    den_c = b1 * b2 + p.alpha**2
    scale_c = abs(b1) * abs(b2) + p.alpha**2
    if abs(den_c) < denom_floor * scale_c:
        raise SingularDenominator(
            f"optical denominator {den_c!r} below floor (scale {scale_c:.3e})"
        )
    drive = upsilon * complex(math.cos(phi), math.sin(phi))
    c1 = (1j * drive * b2 + p.alpha * drive) / den_c
    c2 = (1j * drive * b1 + p.alpha * drive) / den_c

    den_a = i1 * i2 + p.beta**2
    scale_a = abs(i1) * abs(i2) + p.beta**2
    if abs(den_a) < denom_floor * scale_a:
        raise SingularDenominator(
            f"mechanical denominator {den_a!r} below floor (scale {scale_a:.3e})"
        )
    a1 = (1j * mu * i2 * abs(c1) ** 2 - p.beta * mu * abs(c2) ** 2) / den_a
    a2 = (1j * mu * i1 * abs(c2) ** 2 - p.beta * mu * abs(c1) ** 2) / den_a

    delta1 = Delta_eff - mu * 2.0 * a1.real
    delta2 = Delta_eff - mu * 2.0 * a2.real
    return MeanFields(
        a1=a1, a2=a2, c1=c1, c2=c2,
        i1=i1, i2=i2, b1=b1, b2=b2,
        delta1=delta1, delta2=delta2,
    )


# --- display-unit boundary -------------------------------------------------
#
# One entry per PhysicalParams field: the config/CSV key and the pair of
# converters between display units and SI. Gamma-relative couplings take
# the current Gamma (SI) as second argument.

@dataclass(frozen=True)
class DisplayUnit:
    key: str
    to_si: "callable"
    from_si: "callable"


_TWO_PI = 2.0 * math.pi

DISPLAY_UNITS: dict[str, DisplayUnit] = {
    "m": DisplayUnit("m_ng", lambda v, G: v * 1e-12, lambda v, G: v / 1e-12),
    "omega_M": DisplayUnit(
        "freq_M_kHz", lambda v, G: _TWO_PI * v * 1e3, lambda v, G: v / (_TWO_PI * 1e3)
    ),
    "omega_c": DisplayUnit(
        "freq_c_THz", lambda v, G: _TWO_PI * v * 1e12, lambda v, G: v / (_TWO_PI * 1e12)
    ),
    "omega_l": DisplayUnit(
        "freq_l_THz", lambda v, G: _TWO_PI * v * 1e12, lambda v, G: v / (_TWO_PI * 1e12)
    ),
    "L": DisplayUnit("L_mm", lambda v, G: v * 1e-3, lambda v, G: v / 1e-3),
    "P": DisplayUnit("P_mW", lambda v, G: v * 1e-3, lambda v, G: v / 1e-3),
    "Gamma": DisplayUnit(
        "Gamma_kHz", lambda v, G: _TWO_PI * v * 1e3, lambda v, G: v / (_TWO_PI * 1e3)
    ),
    "gamma": DisplayUnit(
        "gamma_Hz", lambda v, G: _TWO_PI * v, lambda v, G: v / _TWO_PI
    ),
    "T": DisplayUnit("T_mK", lambda v, G: v * 1e-3, lambda v, G: v / 1e-3),
    "r": DisplayUnit("r", lambda v, G: v, lambda v, G: v),
    "lam": DisplayUnit("lambda_over_Gamma", lambda v, G: v * G, lambda v, G: v / G),
    "theta": DisplayUnit("theta_rad", lambda v, G: v, lambda v, G: v),
    "alpha": DisplayUnit("alpha_over_Gamma", lambda v, G: v * G, lambda v, G: v / G),
    "beta": DisplayUnit("beta_over_Gamma", lambda v, G: v * G, lambda v, G: v / G),
}

DISPLAY_KEY_TO_FIELD = {unit.key: field for field, unit in DISPLAY_UNITS.items()}


def set_display_value(p: PhysicalParams, field: str, value: float) -> PhysicalParams:
    """Return a copy of ``p`` with ``field`` set from its display-unit value."""
    unit = DISPLAY_UNITS[field]
    return p.replace(**{field: unit.to_si(value, p.Gamma)})


def display_value(p: PhysicalParams, field: str) -> float:
    unit = DISPLAY_UNITS[field]
    return unit.from_si(getattr(p, field), p.Gamma)
