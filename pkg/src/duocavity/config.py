"""Config file handling for the CLI.

The format is INI-style sections of key = value pairs. ``[params]`` uses
display units (mass in ng, frequencies as ordinary frequencies, T in mK,
couplings as multiples of the cavity damping rate). Unknown sections or
keys are hard errors; ``--set section.key=value`` overrides go through
the same validation.
"""

from __future__ import annotations

import configparser
import copy
import io

from .errors import ConfigParseError
from .params import DISPLAY_KEY_TO_FIELD, PhysicalParams
from .sweep import SweepAxis, SweepSpec

DEFAULTS: dict[str, dict[str, object]] = {
    "params": {
        "m_ng": 145.0,
        "freq_M_kHz": 947.0,
        "freq_c_THz": 282.0,
        "freq_l_THz": 526.0,
        "L_mm": 25.0,
        "P_mW": 0.11,
        "Gamma_kHz": 215.0,
        "gamma_Hz": 140.0,
        "T_mK": 0.0,
        "r": 0.0,
        "lambda_over_Gamma": 0.0,
        "theta_rad": 0.0,
        "alpha_over_Gamma": 0.0,
        "beta_over_Gamma": 0.0,
    },
    "sweep": {
        "axis": "T_mK",
        "start": 0.0,
        "stop": 1.0,
        "points": 21,
        "axis2": "",
        "start2": 0.0,
        "stop2": 0.0,
        "points2": 0,
        "family": "",
        "family_values": "",
        "stability_margin_over_Gamma": 1e-6,
    },
    "numerics": {
        "cond_limit": 1e12,
        "phase_factor_two": False,
        "denom_floor": 1e-12,
        "oracle_tol": 1e-8,
        "validate_draws": 10,
    },
    "threshold": {
        "kind": "death",
        "resolution": 1e-3,
    },
}


def default_config() -> dict[str, dict[str, object]]:
    return copy.deepcopy(DEFAULTS)


def _coerce(section: str, key: str, raw: str) -> object:
    default = DEFAULTS[section][key]
    try:
        if isinstance(default, bool):
            lowered = raw.strip().lower()
            if lowered in ("true", "1", "yes", "on"):
                return True
            if lowered in ("false", "0", "no", "off"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if isinstance(default, int) and not isinstance(default, bool):
            return int(raw)
        if isinstance(default, float):
            value = float(raw)
            if value != value or value in (float("inf"), float("-inf")):
                raise ValueError("value must be finite")
            return value
        return raw.strip()
    except ValueError as exc:
        raise ConfigParseError(f"[{section}] {key}: {exc}") from None


def _merge(cfg, section: str, key: str, raw: str) -> None:
    if section not in DEFAULTS:
        raise ConfigParseError(f"unknown config section [{section}]")
    if key not in DEFAULTS[section]:
        raise ConfigParseError(f"unknown config key [{section}] {key}")
    cfg[section][key] = _coerce(section, key, raw)


def load_config(path: str | None) -> dict[str, dict[str, object]]:
    """Defaults merged with an optional config file."""
    cfg = default_config()
    if path is None:
        return cfg
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keys are case-sensitive (T_mK, L_mm, ...)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigParseError(f"cannot read config {path!r}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigParseError(f"malformed config {path!r}: {exc}") from None
    for section in parser.sections():
        for key, raw in parser.items(section):
            _merge(cfg, section, key, raw)
    return cfg


def apply_overrides(cfg, overrides: list[str]) -> None:
    """Apply repeatable ``section.key=value`` settings in place."""
    for item in overrides:
        if "=" not in item:
            raise ConfigParseError(f"override {item!r} is not of the form key=value")
        dotted, raw = item.split("=", 1)
        if "." not in dotted:
            raise ConfigParseError(
                f"override key {dotted!r} must be section.key (e.g. params.T_mK)"
            )
        section, key = dotted.split(".", 1)
        _merge(cfg, section.strip(), key.strip(), raw)


def dump_config(cfg) -> str:
    """Canonical text form; re-parsing it reproduces the configuration."""
    out = io.StringIO()
    for section, entries in cfg.items():
        out.write(f"[{section}]\n")
        for key, value in entries.items():
            if isinstance(value, bool):
                text = "true" if value else "false"
            elif isinstance(value, float):
                text = repr(value)
            else:
                text = str(value)
            out.write(f"{key} = {text}\n")
        out.write("\n")
    return out.getvalue()


def parse_config_text(text: str) -> dict[str, dict[str, object]]:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigParseError(f"malformed config: {exc}") from None
    cfg = default_config()
    for section in parser.sections():
        for key, raw in parser.items(section):
            _merge(cfg, section, key, raw)
    return cfg


def build_params(cfg) -> PhysicalParams:
    """PhysicalParams (SI) from the [params] section."""
    section = cfg["params"]
    two_pi = 6.283185307179586
    gamma_big = two_pi * section["Gamma_kHz"] * 1e3
    try:
        return PhysicalParams(
            m=section["m_ng"] * 1e-12,
            omega_M=two_pi * section["freq_M_kHz"] * 1e3,
            omega_c=two_pi * section["freq_c_THz"] * 1e12,
            omega_l=two_pi * section["freq_l_THz"] * 1e12,
            L=section["L_mm"] * 1e-3,
            P=section["P_mW"] * 1e-3,
            Gamma=gamma_big,
            gamma=two_pi * section["gamma_Hz"],
            T=section["T_mK"] * 1e-3,
            r=section["r"],
            lam=section["lambda_over_Gamma"] * gamma_big,
            theta=section["theta_rad"],
            alpha=section["alpha_over_Gamma"] * gamma_big,
            beta=section["beta_over_Gamma"] * gamma_big,
        )
    except ValueError as exc:
        raise ConfigParseError(f"[params]: {exc}") from None


def _axis_field(key: str) -> str:
    try:
        return DISPLAY_KEY_TO_FIELD[key]
    except KeyError:
        raise ConfigParseError(
            f"unknown sweep axis {key!r}; valid names: "
            + ", ".join(sorted(DISPLAY_KEY_TO_FIELD))
        ) from None


def _parse_family_values(raw: str) -> tuple[float, ...]:
    raw = raw.strip()
    if not raw:
        return ()
    try:
        return tuple(float(tok) for tok in raw.split(","))
    except ValueError as exc:
        raise ConfigParseError(f"[sweep] family_values: {exc}") from None


def build_sweep_spec(cfg, base: PhysicalParams, label: str = "") -> SweepSpec:
    section = cfg["sweep"]
    axes = [
        SweepAxis(
            _axis_field(section["axis"]),
            section["start"],
            section["stop"],
            section["points"],
        )
    ]
    if section["axis2"]:
        axes.append(
            SweepAxis(
                _axis_field(section["axis2"]),
                section["start2"],
                section["stop2"],
                section["points2"],
            )
        )
    family = section["family"] or None
    try:
        return SweepSpec(
            base=base,
            axes=tuple(axes),
            family=_axis_field(family) if family else None,
            family_values=_parse_family_values(section["family_values"]),
            stability_margin=section["stability_margin_over_Gamma"] * base.Gamma,
            label=label,
        )
    except ValueError as exc:
        raise ConfigParseError(f"[sweep]: {exc}") from None
