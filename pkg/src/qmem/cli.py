"""Command-line interface: every analysis as a reproducible, file-emitting run.

Each subcommand writes its artifacts plus a ``<output>.manifest.json``
recording the exact parameters and a SHA-256 of every file produced, so any
artifact can be regenerated and verified byte for byte. Exit codes: 0 on
success, 2 for usage/configuration errors, 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import materials
from .adiabatic import adiabatic_basis, dark_decay_solution, sigmoid_crossing_time
from .analysis import (detuning_scan, efficiency_sweep, gaussian_write_model,
                       stirap_benchmark)
from .errors import ConfigError, NumericalFailure
from .integrate import TimeWindow, trajectory_csv, transfer_window, propagate
from .model import DecayRates, Gaussian, LambdaModel, Sigmoid, model_from_json

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


# ----------------------------------------------------------------------------
# argument helpers
# ----------------------------------------------------------------------------

def parse_grid(spec: str, scale: str) -> np.ndarray:
    """Parse ``min:max:points`` (or a single value) into a grid array."""
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) != 3:
            raise ValueError("expected min:max:points")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise ValueError("points must be >= 1")
        if n == 1:
            if lo != hi:
                raise ValueError("a 1-point grid needs min == max")
            return np.array([lo])
        if hi <= lo:
            raise ValueError("need min < max")
        if scale == "log":
            if lo <= 0:
                raise ValueError("log grids need min > 0")
            return np.geomspace(lo, hi, n)
        return np.linspace(lo, hi, n)
    except ValueError as exc:
        raise ConfigError(f"bad grid '{spec}': {exc}") from exc


def parse_gamma_flags(items: list[str] | None) -> dict[str, float]:
    rates: dict[str, float] = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--gamma expects CHANNEL=RATE, got '{item}'")
        key, _, value = item.partition("=")
        try:
            rates[key.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"bad rate in '--gamma {item}'") from exc
    return rates


def model_from_args(args) -> LambdaModel:
    if getattr(args, "config", None):
        return model_from_json(args.config)
    if getattr(args, "omega0", None) is None or getattr(args, "T", None) is None:
        raise ConfigError("--omega0 and --T are required unless --config is given")
    rates = parse_gamma_flags(getattr(args, "gamma", None))
    if getattr(args, "kappa", 0.0):
        rates["kappa"] = args.kappa
    pulse_kind = getattr(args, "pulse", "sigmoid")
    if pulse_kind == "gaussian":
        pulse = Gaussian(args.omega0, 0.0, math.sqrt(2.0) * args.T)
    else:
        pulse = Sigmoid(args.omega0, args.T, reversed=False)
    return LambdaModel(Delta=getattr(args, "Delta", 0.0),
                       delta=getattr(args, "delta", 0.0),
                       pulse=pulse,
                       decay=DecayRates.from_mapping(rates))


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def sha256_of(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(primary: Path, command: str, parameters: dict,
                   outputs: list[Path]) -> Path:
    manifest = {
        "command": command,
        "parameters": parameters,
        "outputs": {str(p): sha256_of(p) for p in outputs},
    }
    path = Path(str(primary) + ".manifest.json")
    write_text(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    model = model_from_args(args)
    reading = bool(args.reading)
    if reading and isinstance(model.pulse, Sigmoid):
        model = model.reversed_pulse_model()
    window = transfer_window(model.pulse, reading=reading)
    if args.dt is not None:
        window = TimeWindow(window.t_start, window.t_end, args.dt)
    initial = "s0" if reading else "g1"
    target = "g1" if reading else "s0"
    traj = propagate(model, model.initial_state(initial), window,
                     cap_dt=args.dt is None)
    out = Path(args.out)
    write_text(out, trajectory_csv(traj))
    write_manifest(out, "simulate", {
        "model": model.snapshot(),
        "reading": reading,
        "window": {"t_start": window.t_start, "t_end": window.t_end, "dt": window.dt},
    }, [out])
    eta = traj.final_population(target)
    print(json.dumps({"eta": eta, "kind": "reading" if reading else "writing"}))
    return EXIT_OK


def cmd_sweep(args) -> int:
    rates = parse_gamma_flags(args.gamma)
    if args.kappa:
        rates["kappa"] = args.kappa
    # per-cell pulses replace this placeholder
    base = LambdaModel(Delta=args.Delta, delta=args.delta,
                       pulse=Sigmoid(1.0, 1.0),
                       decay=DecayRates.from_mapping(rates))
    omega_grid = parse_grid(args.omega0, "log")
    t_grid = parse_grid(args.T, "log")
    result = efficiency_sweep(base, omega_grid, t_grid, kind=args.kind,
                              workers=args.workers)
    out = Path(args.out)
    write_text(out, result.to_csv())
    write_manifest(out, "sweep", {
        "kind": args.kind,
        "model": base.snapshot(),
        "omega0_grid": [float(x) for x in omega_grid],
        "T_grid": [float(x) for x in t_grid],
    }, [out])
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_detuning_scan(args) -> int:
    rates = DecayRates.from_mapping(parse_gamma_flags(args.gamma))
    if args.pulse == "gaussian":
        base = gaussian_write_model(args.omega0, args.T, decay=rates)
    else:
        base = LambdaModel(pulse=Sigmoid(args.omega0, args.T), decay=rates)
    deltas = parse_grid(args.scan, "linear")
    mode = "one_photon" if args.mode == "one-photon" else "photon"
    curve = detuning_scan(base, deltas, mode=mode)
    out = Path(args.out)
    write_text(out, curve.to_csv())
    sidecar = Path(str(out) + ".hwhm.json")
    write_text(sidecar, json.dumps(
        {"hwhm": curve.hwhm, "peak": curve.peak}, sort_keys=True) + "\n")
    write_manifest(out, "detuning-scan", {
        "model": base.snapshot(),
        "mode": mode,
        "delta_grid": [float(x) for x in deltas],
    }, [out, sidecar])
    print(json.dumps({"hwhm": curve.hwhm, "peak": curve.peak}))
    return EXIT_OK


def cmd_analytic_decay(args) -> int:
    kappas = [float(k) for k in args.kappa]
    t_grid = parse_grid(args.T, "log")
    lines = ["T,kappa,omega0,final_population"]
    for kappa in kappas:
        for T in t_grid:
            if kappa == 0.0:
                pop = args.d0
            else:
                sol = dark_decay_solution(kappa, args.omega0, float(T), d0=args.d0)
                pop = sol(sigmoid_crossing_time(0.999, args.omega0, float(T)) + 10.0 * float(T))
            lines.append(f"{T:.12g},{kappa:.12g},{args.omega0:.12g},{pop:.12g}")
    out = Path(args.out)
    write_text(out, "\n".join(lines) + "\n")
    write_manifest(out, "analytic-decay", {
        "kappa": kappas,
        "omega0": args.omega0,
        "T_grid": [float(x) for x in t_grid],
        "d0": args.d0,
    }, [out])
    return EXIT_OK


def cmd_material(args) -> int:
    defects = (materials.load_defects(args.defects) if args.defects
               else materials.load_builtin_defects())
    cavity = materials.CavitySpec(n=args.n, Q=args.Q, kappa_rel=args.kappa_rel)
    reports = [materials.design_report(d, cavity, omega0_rel=args.omega0_rel,
                                       T_rel=args.T_rel, sigma_delta=args.sigma_delta,
                                       bandwidth_mode=args.bandwidth_mode)
               for d in defects]
    doc = {
        "n": args.n,
        "kappa_rel": args.kappa_rel,
        "Q": args.Q,
        "omega0_rel": args.omega0_rel,
        "T_rel": args.T_rel,
        "sigma_delta": args.sigma_delta,
        "defects": [r.as_dict() for r in reports],
    }
    out = Path(args.out)
    write_text(out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    outputs = [out]

    n_grid = parse_grid(args.n_curve, "linear")
    g_lines = ["defect,n,volume_m3,coupling_rad_s"]
    for d in defects:
        for n in n_grid:
            vol = materials.cavity_volume(d.omega_ge, float(n))
            g = materials.coupling_constant(d.dipole_ge, d.omega_ge, vol)
            g_lines.append(f"{d.name},{n:.12g},{vol:.12g},{g:.12g}")
    g_path = out.with_name(out.stem + "_gcurve.csv")
    write_text(g_path, "\n".join(g_lines) + "\n")
    outputs.append(g_path)

    q_grid = parse_grid(args.q_curve, "log")
    q_lines = ["defect,quality_factor,kappa_rel"]
    for d, rep in zip(defects, reports):
        for q in q_grid:
            kap = materials.kappa_from_quality(d.omega_ge, float(q))
            q_lines.append(f"{d.name},{q:.12g},{kap / rep.g_phys:.12g}")
    q_path = out.with_name(out.stem + "_qcurve.csv")
    write_text(q_path, "\n".join(q_lines) + "\n")
    outputs.append(q_path)

    write_manifest(out, "material", {
        "defects_file": str(args.defects) if args.defects else "builtin",
        "n": args.n, "Q": args.Q, "kappa_rel": args.kappa_rel,
        "omega0_rel": args.omega0_rel, "T_rel": args.T_rel,
        "sigma_delta": args.sigma_delta, "bandwidth_mode": args.bandwidth_mode,
        "n_curve": args.n_curve, "q_curve": args.q_curve,
    }, outputs)
    print(json.dumps({r.name: r.as_dict() for r in reports}, sort_keys=True))
    return EXIT_OK


def cmd_benchmark_stirap(args) -> int:
    omega_grid = parse_grid(args.omega0, "log")
    tau_grid = parse_grid(args.tau, "linear")
    result = stirap_benchmark(omega_grid, tau_grid, workers=args.workers)
    out = Path(args.out)
    csv = result.to_csv().replace("omega0,tau,efficiency", "omega0,tau,prob_s", 1)
    write_text(out, csv)
    write_manifest(out, "benchmark-stirap", {
        "omega0_grid": [float(x) for x in omega_grid],
        "tau_grid": [float(x) for x in tau_grid],
    }, [out])
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_adiabatic_frame(args) -> int:
    if (args.omega_grid is None) == (args.delta_grid is None):
        raise ConfigError("specify exactly one of --omega-grid and --delta-grid")
    rows = []
    if args.omega_grid is not None:
        omegas = parse_grid(args.omega_grid, "log")
        points = [(float(w), args.Delta) for w in omegas]
    else:
        deltas = parse_grid(args.delta_grid, "linear")
        points = [(args.omega, float(d)) for d in deltas]
    for omega, delta in points:
        frame = adiabatic_basis(args.g, omega, delta)
        dark_g = abs(frame.dark[0]) ** 2
        dark_s = abs(frame.dark[1]) ** 2
        rows.append((omega, delta, frame.theta, frame.phi,
                     frame.energies[0], frame.energies[1], frame.energies[2],
                     dark_g, dark_s))
    lines = ["omega,delta,theta,phi,E0,E_minus,E_plus,dark_g_weight,dark_s_weight"]
    for row in rows:
        lines.append(",".join(f"{v:.12g}" for v in row))
    out = Path(args.out)
    write_text(out, "\n".join(lines) + "\n")
    write_manifest(out, "adiabatic-frame", {
        "g": args.g,
        "omega_grid": args.omega_grid,
        "delta_grid": args.delta_grid,
        "omega": args.omega,
        "Delta": args.Delta,
    }, [out])
    return EXIT_OK


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------

def _add_model_flags(p: argparse.ArgumentParser, require_omega0: bool = True) -> None:
    p.add_argument("--omega0", type=float, required=require_omega0,
                   help="peak control Rabi frequency, units of g")
    p.add_argument("--T", type=float, required=require_omega0,
                   help="control-pulse characteristic time, units of 1/g")
    p.add_argument("--Delta", type=float, default=0.0, help="one-photon detuning")
    p.add_argument("--delta", type=float, default=0.0, help="two-photon detuning")
    p.add_argument("--gamma", action="append", metavar="CH=RATE",
                   help="decay channel rate (gg/ss/ee dephasing, ge/se/gs decay)")
    p.add_argument("--kappa", type=float, default=0.0, help="cavity field decay rate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmem",
        description="Adiabatic single-emitter quantum memory simulator")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("simulate", help="propagate one writing/reading run")
    _add_model_flags(p, require_omega0=False)
    p.add_argument("--pulse", choices=("sigmoid", "gaussian"), default="sigmoid")
    p.add_argument("--reading", action="store_true",
                   help="read-out run: mirrored pulse, start in |s,0>")
    p.add_argument("--config", help="JSON model config (overrides model flags)")
    p.add_argument("--dt", type=float, default=None, help="override the time step")
    p.add_argument("--out", required=True, help="trajectory CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="efficiency over an (omega0, T) grid")
    p.add_argument("--kind", choices=("writing", "reading"), default="writing")
    p.add_argument("--omega0", required=True, metavar="MIN:MAX:N",
                   help="log-spaced omega0 grid")
    p.add_argument("--T", required=True, metavar="MIN:MAX:N", help="log-spaced T grid")
    p.add_argument("--Delta", type=float, default=0.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--gamma", action="append", metavar="CH=RATE")
    p.add_argument("--kappa", type=float, default=0.0)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: LAMBDA_MEM_WORKERS or all cores)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep, pulse="sigmoid", config=None)

    p = sub.add_parser("detuning-scan", help="absorption window against detuning")
    p.add_argument("--omega0", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--scan", required=True, metavar="MIN:MAX:N",
                   help="linear detuning grid, units of g")
    p.add_argument("--pulse", choices=("gaussian", "sigmoid"), default="gaussian",
                   help="control pulse family (gaussian matches the bandwidth protocol)")
    p.add_argument("--mode", choices=("photon", "one-photon"), default="photon",
                   help="photon: detune signal photon (shifts both resonances)")
    p.add_argument("--gamma", action="append", metavar="CH=RATE")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_detuning_scan)

    p = sub.add_parser("analytic-decay", help="dark-state population under photon loss")
    p.add_argument("--kappa", action="append", required=True,
                   help="cavity decay rate (repeatable)")
    p.add_argument("--omega0", type=float, required=True)
    p.add_argument("--T", required=True, metavar="MIN:MAX:N", help="log-spaced T grid")
    p.add_argument("--d0", type=float, default=0.999)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analytic_decay)

    p = sub.add_parser("material", help="physical design numbers for defect records")
    p.add_argument("--defects", default=None, help="defects JSON (default: built-in)")
    p.add_argument("--n", type=float, required=True, help="cavity volume multiplier")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--kappa-rel", type=float, default=None, help="kappa / g")
    group.add_argument("--Q", type=float, default=None, help="cavity quality factor")
    p.add_argument("--omega0-rel", type=float, default=100.0)
    p.add_argument("--T-rel", type=float, default=10.0)
    p.add_argument("--sigma-delta", type=float, default=10.0)
    p.add_argument("--bandwidth-mode", choices=("full", "simplified"), default="full")
    p.add_argument("--n-curve", default="0.1:5:50", metavar="MIN:MAX:N")
    p.add_argument("--q-curve", default="1e6:1e9:61", metavar="MIN:MAX:N")
    p.add_argument("--out", required=True, help="report JSON path")
    p.set_defaults(func=cmd_material)

    p = sub.add_parser("benchmark-stirap",
                       help="semi-classical double-Gaussian transfer landscape")
    p.add_argument("--omega0", required=True, metavar="MIN:MAX:N")
    p.add_argument("--tau", required=True, metavar="MIN:MAX:N",
                   help="linear pulse-delay grid")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_benchmark_stirap)

    p = sub.add_parser("adiabatic-frame",
                       help="mixing angles, dark-state weights and eigenenergies")
    p.add_argument("--g", type=float, default=1.0)
    p.add_argument("--omega-grid", default=None, metavar="MIN:MAX:N",
                   help="log-spaced drive grid (dark-state mixing scan)")
    p.add_argument("--delta-grid", default=None, metavar="MIN:MAX:N",
                   help="linear detuning grid (eigenenergy scan)")
    p.add_argument("--omega", type=float, default=1.0,
                   help="drive strength for the detuning scan")
    p.add_argument("--Delta", type=float, default=0.0,
                   help="detuning for the drive scan")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_adiabatic_frame)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
