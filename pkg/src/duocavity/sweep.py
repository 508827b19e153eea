"""Parameter-sweep engine: grids of logarithmic negativity, figure
presets, threshold (death/birth) searches and CSV serialization.

Axis and family values are expressed in display units (mK for the
temperature, multiples of the cavity damping rate for the couplings) and
converted to SI per point; CSV output stays in display units. Unstable
grid points carry ``nan`` entanglement, never 0, so "separable" and
"model invalid" remain distinguishable.
"""

from __future__ import annotations

import concurrent.futures
import datetime
import io
import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import __about__
from .dynamics import build_drift, build_noise, stability_check
from .entanglement import log_negativity, reduce_covariance
from .errors import DomainError, NoCrossing, UnknownPreset
from .params import (
    DISPLAY_UNITS,
    PhysicalParams,
    derive,
    display_value,
    set_display_value,
)
from .steady_state import lyapunov_residual, solve_lyapunov


@dataclass(frozen=True)
class SweepAxis:
    """One linearly spaced axis, in display units."""

    name: str
    start: float
    stop: float
    points: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepSpec:
    base: PhysicalParams
    axes: tuple[SweepAxis, ...]
    family: str | None = None
    family_values: tuple[float, ...] = ()
    stability_margin: float = 0.0  # rad/s
    label: str = ""

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ValueError("a sweep takes one or two axes")
        for axis in self.axes:
            if axis.name not in DISPLAY_UNITS:
                raise ValueError(f"unknown sweep parameter {axis.name!r}")
            if axis.points < 1:
                raise ValueError("axis point count must be >= 1")
            if not (math.isfinite(axis.start) and math.isfinite(axis.stop)):
                raise ValueError("axis range must be finite")
        if self.family is not None:
            if self.family not in DISPLAY_UNITS:
                raise ValueError(f"unknown family parameter {self.family!r}")
            if not self.family_values:
                raise ValueError("family requires a non-empty value list")

    def grid_shape(self) -> tuple[int, ...]:
        shape = [len(self.family_values)] if self.family else []
        shape += [axis.points for axis in self.axes]
        return tuple(shape)


@dataclass(frozen=True)
class SweepRecord:
    """Result at one grid point; ``E_N`` and ``nu_minus`` are nan when the
    point is unstable or the per-point solve failed."""

    index: tuple[int, ...]
    family_value: float | None
    axis_values: tuple[float, ...]
    E_N: float
    nu_minus: float
    stable: bool
    residual: float
    error: str = ""


@dataclass
class SweepResult:
    spec: SweepSpec
    records: list[SweepRecord]
    metadata: dict[str, str] = field(default_factory=dict)


def evaluate_point(
    base: PhysicalParams,
    assignments: dict[str, float],
    margin: float = 0.0,
) -> tuple[float, float, bool, float, str]:
    """Evaluate one grid point given display-unit parameter assignments.

    Returns ``(E_N, nu_minus, stable, residual, error)``.
    """
    p = base
    for name, value in assignments.items():
        p = set_display_value(p, name, value)
    try:
        d = derive(p)
        q = build_drift(d, p)
        if not stability_check(q, margin).stable:
            return (math.nan, math.nan, False, math.nan, "")
        omega = build_noise(d, p)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # ill-conditioning is recorded via residual
            eta = solve_lyapunov(q, omega, margin=margin)
        residual = lyapunov_residual(q, omega, eta)
        result = log_negativity(reduce_covariance(eta))
        return (result.E_N, result.nu_minus, True, residual, "")
    except DomainError as exc:
        return (math.nan, math.nan, False, math.nan, f"{type(exc).__name__}: {exc}")


def _grid(spec: SweepSpec):
    family_values = spec.family_values if spec.family else (None,)
    axis_values = [axis.values() for axis in spec.axes]
    for idx in itertools.product(
        range(len(family_values)), *(range(len(v)) for v in axis_values)
    ):
        fam = family_values[idx[0]]
        axes = tuple(float(axis_values[k][idx[1 + k]]) for k in range(len(axis_values)))
        assignments = {}
        if spec.family:
            assignments[spec.family] = fam
        for axis, value in zip(spec.axes, axes):
            assignments[axis.name] = value
        yield idx, fam, axes, assignments


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Evaluate the grid; output ordering is by grid index regardless of
    how the points were scheduled."""
    tasks = list(_grid(spec))

    def work(task):
        idx, fam, axes, assignments = task
        e_n, nu, stable, residual, error = evaluate_point(
            spec.base, assignments, spec.stability_margin
        )
        return SweepRecord(
            index=idx,
            family_value=fam,
            axis_values=axes,
            E_N=e_n,
            nu_minus=nu,
            stable=stable,
            residual=residual,
            error=error,
        )

    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(work, tasks))
    else:
        records = [work(task) for task in tasks]
    records.sort(key=lambda rec: rec.index)

    base_display = {
        unit.key: repr(float(display_value(spec.base, name)))
        for name, unit in DISPLAY_UNITS.items()
    }
    metadata = {
        "generator": f"duocavity {__about__.__version__}",
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "preset": spec.label or "-",
        "base": " ".join(f"{k}={v}" for k, v in sorted(base_display.items())),
        "axes": "; ".join(
            f"{DISPLAY_UNITS[a.name].key} in [{a.start!r}, {a.stop!r}] x{a.points}"
            for a in spec.axes
        ),
        "family": (
            f"{DISPLAY_UNITS[spec.family].key} = "
            + ", ".join(repr(float(v)) for v in spec.family_values)
            if spec.family
            else "-"
        ),
        "stability_margin_rad_s": repr(float(spec.stability_margin)),
    }
    return SweepResult(spec=spec, records=records, metadata=metadata)


# --- CSV -------------------------------------------------------------------

def write_csv(result: SweepResult, fh) -> None:
    """Delimited output: '#' metadata lines, a header row, one row per
    grid point. Floats are repr-formatted so identical runs produce
    identical bytes (the timestamp line aside)."""
    for key, value in result.metadata.items():
        fh.write(f"# {key}: {value}\n")
    columns = []
    if result.spec.family:
        columns.append(DISPLAY_UNITS[result.spec.family].key)
    columns += [DISPLAY_UNITS[axis.name].key for axis in result.spec.axes]
    columns += ["E_N", "nu_minus", "stable", "residual"]
    fh.write(",".join(columns) + "\n")
    for rec in result.records:
        cells = []
        if result.spec.family:
            cells.append(repr(float(rec.family_value)))
        cells += [repr(float(v)) for v in rec.axis_values]
        cells += [
            repr(float(rec.E_N)),
            repr(float(rec.nu_minus)),
            "1" if rec.stable else "0",
            repr(float(rec.residual)),
        ]
        fh.write(",".join(cells) + "\n")


def csv_bytes(result: SweepResult) -> bytes:
    buf = io.StringIO()
    write_csv(result, buf)
    return buf.getvalue().encode()


# --- thresholds -------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdReport:
    """Bracketed entanglement death/birth location along one axis."""

    kind: str
    axis: str
    x_lo: float
    x_hi: float
    E_N_lo: float
    E_N_hi: float
    estimate: float


def _entangled(base, axis_name, x, extra, margin) -> tuple[bool, float]:
    assignments = dict(extra)
    assignments[axis_name] = x
    e_n, _nu, stable, _res, _err = evaluate_point(base, assignments, margin)
    if not stable:
        return False, math.nan
    return e_n > 0.0, e_n


def find_threshold(
    spec: SweepSpec, kind: str, resolution: float
) -> ThresholdReport:
    """Bisect the ``E_N > 0`` predicate along the sweep axis.

    ``kind='death'`` locates a positive-to-zero crossing with the axis
    increasing, ``kind='birth'`` the reverse. The spec must have exactly
    one axis and at most one family value; the grid spacing provides the
    initial bracket, bisection refines it to ``resolution`` (axis units).
    """
    if kind not in ("death", "birth"):
        raise ValueError("kind must be 'death' or 'birth'")
    if resolution <= 0.0:
        raise ValueError("resolution must be positive")
    if len(spec.axes) != 1:
        raise ValueError("threshold search requires a single-axis sweep")
    if spec.family and len(spec.family_values) != 1:
        raise ValueError("threshold search takes at most one family value")
    axis = spec.axes[0]
    extra = {spec.family: spec.family_values[0]} if spec.family else {}
    xs = axis.values()
    states = [
        _entangled(spec.base, axis.name, float(x), extra, spec.stability_margin)
        for x in xs
    ]
    want = (True, False) if kind == "death" else (False, True)
    bracket = None
    for k in range(len(xs) - 1):
        if (states[k][0], states[k + 1][0]) == want:
            bracket = (float(xs[k]), float(xs[k + 1]), states[k][1], states[k + 1][1])
            break
    if bracket is None:
        raise NoCrossing(
            f"no {kind} of the E_N > 0 predicate inside "
            f"[{axis.start!r}, {axis.stop!r}] on {axis.points} points"
        )
    x_lo, x_hi, en_lo, en_hi = bracket
    while (x_hi - x_lo) > resolution:
        mid = 0.5 * (x_lo + x_hi)
        pos, e_n = _entangled(spec.base, axis.name, mid, extra, spec.stability_margin)
        if pos == want[0]:
            x_lo, en_lo = mid, e_n
        else:
            x_hi, en_hi = mid, e_n
    return ThresholdReport(
        kind=kind,
        axis=DISPLAY_UNITS[axis.name].key,
        x_lo=x_lo,
        x_hi=x_hi,
        E_N_lo=en_lo,
        E_N_hi=en_hi,
        estimate=0.5 * (x_lo + x_hi),
    )


# --- figure presets ----------------------------------------------------------
#
# Shared base: the standard movable-mirror experiment (145 ng mirrors at
# 2 pi x 947 kHz, 25 mm cavities at 2 pi x 2.82e14 Hz driven at
# 2 pi x 5.26e14 Hz, cavity damping 2 pi x 215 kHz, mechanical damping
# 2 pi x 140 Hz) with a 0.11 mW drive, which puts the beam-splitter
# coupling at J ~ 0.089 Gamma, the weak-coupling regime the bundled
# sweeps explore. Axis endpoints and family lists are suggestions and can
# be overridden from the CLI.

def figure_base() -> PhysicalParams:
    two_pi = 2.0 * math.pi
    return PhysicalParams(
        m=145e-12,
        omega_M=two_pi * 947e3,
        omega_c=two_pi * 2.82e14,
        omega_l=two_pi * 5.26e14,
        L=25e-3,
        P=0.11e-3,
        Gamma=two_pi * 215e3,
        gamma=two_pi * 140.0,
    )


SWEEP_MARGIN_OVER_GAMMA = 1e-6

_PRESETS = {
    # E_N vs temperature for a family of phonon-tunneling rates
    "fig2": dict(
        params={"r": 1.5, "theta": 0.0, "lam": 0.2, "alpha": 0.0015},
        axes=[("T", 0.0, 1.3, 53)],
        family=("beta", (0.0, 0.0005, 0.002)),
    ),
    # E_N vs amplifier gain for a family of temperatures
    "fig3": dict(
        params={"r": 3.0, "theta": 0.0, "beta": 0.0002, "alpha": 0.0015},
        axes=[("lam", 0.0, 0.245, 50)],
        family=("T", (0.1, 0.2, 0.4)),
    ),
    # E_N vs injected squeezing for a family of amplifier gains
    "fig4": dict(
        params={"T": 0.2, "theta": 0.0, "beta": 0.0002, "alpha": 0.0015},
        axes=[("r", 0.0, 5.0, 51)],
        family=("lam", (0.1, 0.15, 0.2)),
    ),
    # E_N over the (photon hopping, amplifier gain) plane
    "fig5": dict(
        params={"r": 2.0, "theta": 0.0, "T": 0.02, "beta": 0.002},
        axes=[("alpha", 0.0, 0.1, 21), ("lam", 0.0, 0.245, 26)],
        family=None,
    ),
}


def preset(name: str) -> SweepSpec:
    """Bundled sweep specification for one of fig2..fig5."""
    try:
        cfg = _PRESETS[name]
    except KeyError:
        raise UnknownPreset(
            f"unknown preset {name!r}; choose from {sorted(_PRESETS)}"
        ) from None
    base = figure_base()
    for fname, value in cfg["params"].items():
        base = set_display_value(base, fname, value)
    axes = tuple(SweepAxis(*axis) for axis in cfg["axes"])
    family = cfg["family"]
    return SweepSpec(
        base=base,
        axes=axes,
        family=family[0] if family else None,
        family_values=tuple(family[1]) if family else (),
        stability_margin=SWEEP_MARGIN_OVER_GAMMA * base.Gamma,
        label=name,
    )


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_PRESETS))
