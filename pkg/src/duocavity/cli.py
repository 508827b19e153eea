"""Command-line interface.

Subcommands: ``point`` (single evaluation), ``sweep`` (config-driven
grid), ``preset`` (bundled figure sweeps), ``threshold`` (entanglement
death/birth bisection) and ``validate`` (built-in invariant suite).
Exit codes: 0 success, 2 config error, 3 domain/solver error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import config as cfgmod
from .dynamics import build_drift, build_noise, stability_check
from .entanglement import log_negativity, reduce_covariance
from .errors import ConfigParseError, DomainError
from .params import DISPLAY_UNITS, derive, display_value
from .steady_state import lyapunov_residual, solve_lyapunov
from .sweep import (
    _PRESETS,
    csv_bytes,
    find_threshold,
    preset_names,
    run_sweep,
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="config file (INI sections)")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="override a config entry (repeatable)",
    )
    parser.add_argument("--out", metavar="PATH", help="output CSV path")
    parser.add_argument(
        "--plot", action="store_true", help="render a figure next to the CSV"
    )
    parser.add_argument("--jobs", type=int, default=1, help="parallel grid workers")
    parser.add_argument(
        "--dump-config",
        action="store_true",
        help="print the effective configuration and exit",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duocavity",
        description=(
            "Steady-state covariance and mirror-mirror entanglement of two "
            "coupled optomechanical cavities"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("point", "evaluate a single parameter point"),
        ("sweep", "run the sweep described by the config"),
        ("preset", "run a bundled figure sweep"),
        ("threshold", "bisect an entanglement death/birth point"),
        ("validate", "run the built-in invariant suite"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        if name == "preset":
            cmd.add_argument("name", choices=preset_names())
        _add_common(cmd)
    return parser


def _effective_config(args) -> dict:
    cfg = cfgmod.load_config(args.config)
    if args.command == "preset":
        preset_cfg = _PRESETS[args.name]
        for field, value in preset_cfg["params"].items():
            cfg["params"][DISPLAY_UNITS[field].key] = float(value)
        axes = preset_cfg["axes"]
        cfg["sweep"]["axis"] = DISPLAY_UNITS[axes[0][0]].key
        cfg["sweep"]["start"], cfg["sweep"]["stop"] = float(axes[0][1]), float(axes[0][2])
        cfg["sweep"]["points"] = int(axes[0][3])
        if len(axes) > 1:
            cfg["sweep"]["axis2"] = DISPLAY_UNITS[axes[1][0]].key
            cfg["sweep"]["start2"], cfg["sweep"]["stop2"] = float(axes[1][1]), float(axes[1][2])
            cfg["sweep"]["points2"] = int(axes[1][3])
        else:
            cfg["sweep"]["axis2"] = ""
        family = preset_cfg["family"]
        cfg["sweep"]["family"] = DISPLAY_UNITS[family[0]].key if family else ""
        cfg["sweep"]["family_values"] = (
            ",".join(repr(float(v)) for v in family[1]) if family else ""
        )
    cfgmod.apply_overrides(cfg, args.overrides)
    return cfg


def _cmd_point(cfg) -> int:
    p = cfgmod.build_params(cfg)
    d = derive(p, phase_factor_two=cfg["numerics"]["phase_factor_two"])
    q = build_drift(d, p)
    report = stability_check(q)
    print(f"n_th = {d.n_th!r}")
    print(f"J = {d.J!r} rad/s  (J/Gamma = {d.J / p.Gamma!r})")
    print(f"phi = {d.phi!r} rad")
    print(f"R = {d.R!r}  V = {d.V!r}")
    print(f"gamma_prime = {d.gamma_prime!r} rad/s")
    print(f"Gamma_prime = {d.Gamma_prime!r} rad/s")
    print(f"Delta_eff = {d.Delta_eff!r} rad/s")
    print(f"stable = {report.stable}")
    print(f"max_real_part = {report.max_real_part!r} rad/s")
    if not report.stable:
        print("E_N = n/a (unstable)")
        return 0
    omega = build_noise(d, p)
    eta = solve_lyapunov(q, omega, cond_limit=cfg["numerics"]["cond_limit"])
    result = log_negativity(reduce_covariance(eta))
    print(f"residual = {lyapunov_residual(q, omega, eta)!r}")
    print(f"nu_minus = {result.nu_minus!r}")
    print(f"E_N = {result.E_N!r}")
    print(f"separable = {result.separable}")
    return 0


def _cmd_sweep(cfg, args, label: str = "") -> int:
    base = cfgmod.build_params(cfg)
    spec = cfgmod.build_sweep_spec(cfg, base, label=label)
    result = run_sweep(spec, jobs=max(1, args.jobs))
    out = Path(args.out) if args.out else Path(f"{label or 'sweep'}.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(csv_bytes(result))
    print(f"wrote {out} ({len(result.records)} grid points)")
    if args.plot:
        from .plotting import render_sweep

        fig_path = out.with_suffix(".png")
        render_sweep(result, fig_path)
        print(f"wrote {fig_path}")
    return 0


def _cmd_threshold(cfg) -> int:
    base = cfgmod.build_params(cfg)
    spec = cfgmod.build_sweep_spec(cfg, base)
    kind = str(cfg["threshold"]["kind"])
    if kind not in ("death", "birth"):
        raise ConfigParseError(f"[threshold] kind must be death or birth, got {kind!r}")
    report = find_threshold(spec, kind, float(cfg["threshold"]["resolution"]))
    print(f"kind = {report.kind}")
    print(f"axis = {report.axis}")
    print(f"bracket = [{report.x_lo!r}, {report.x_hi!r}]")
    print(f"E_N(lo) = {report.E_N_lo!r}")
    print(f"E_N(hi) = {report.E_N_hi!r}")
    print(f"estimate = {report.estimate!r}")
    return 0


def _cmd_validate(cfg) -> int:
    from .validate import run_all

    p = cfgmod.build_params(cfg)
    checks = run_all(p, draws=int(cfg["numerics"]["validate_draws"]))
    failed = 0
    for name, ok, detail in checks:
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {name}: {detail}")
        failed += 0 if ok else 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 3


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _effective_config(args)
        if args.dump_config:
            sys.stdout.write(cfgmod.dump_config(cfg))
            return 0
        if args.command == "point":
            return _cmd_point(cfg)
        if args.command == "sweep":
            return _cmd_sweep(cfg, args)
        if args.command == "preset":
            return _cmd_sweep(cfg, args, label=args.name)
        if args.command == "threshold":
            return _cmd_threshold(cfg)
        if args.command == "validate":
            return _cmd_validate(cfg)
        raise AssertionError(f"unhandled command {args.command!r}")
    except ConfigParseError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
