"""Memory performance metrics: transfer efficiencies, parameter landscapes,
decoherence sensitivity, absorption linewidth and physical bandwidth.

Writing efficiency is the probability that an incoming photon ends up stored
in the metastable state; reading efficiency the probability that a stored
excitation is mapped back onto the cavity photon. Both are asymptotic
populations of a Lindblad propagation over the adiabatic transfer window.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .integrate import (TimeWindow, Trajectory, propagate, propagate_operators,
                        transfer_window)
from .model import Constant, Gaussian, LambdaModel, Sigmoid

DEFAULT_OMEGA0_GRID = np.geomspace(0.1, 1000.0, 25)
DEFAULT_T_GRID = np.geomspace(0.01, 100.0, 25)


def resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("LAMBDA_MEM_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"LAMBDA_MEM_WORKERS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


@dataclass(frozen=True)
class EfficiencyResult:
    eta: float
    kind: str  # "writing" | "reading"
    trajectory: Trajectory | None = None


def writing_efficiency(model: LambdaModel, *, p_lo: float = 0.001, p_hi: float = 0.999,
                       dt: float | None = None,
                       keep_trajectory: bool = False) -> EfficiencyResult:
    """Final |s,0> population starting from |g,1> under the writing pulse."""
    if isinstance(model.pulse, Sigmoid) and model.pulse.reversed:
        raise ConfigError("writing needs a falling control pulse (reversed=False)")
    if isinstance(model.pulse, Constant):
        raise ConfigError("writing needs a time-dependent control pulse")
    window = transfer_window(model.pulse, reading=False, p_lo=p_lo, p_hi=p_hi)
    if dt is not None:
        window = TimeWindow(window.t_start, window.t_end, dt)
    traj = propagate(model, model.initial_state("g1"), window)
    return EfficiencyResult(traj.final_population("s0"), "writing",
                            traj if keep_trajectory else None)


def reading_efficiency(model: LambdaModel, *, p_lo: float = 0.001, p_hi: float = 0.999,
                       dt: float | None = None,
                       keep_trajectory: bool = False) -> EfficiencyResult:
    """Final |g,1> population starting from |s,0> under the read-out pulse.

    Accepts the model in writing orientation and mirrors the pulse itself.
    """
    m = model
    if isinstance(m.pulse, Sigmoid) and not m.pulse.reversed:
        m = m.reversed_pulse_model()
    if isinstance(m.pulse, Constant):
        raise ConfigError("reading needs a time-dependent control pulse")
    window = transfer_window(m.pulse, reading=True, p_lo=p_lo, p_hi=p_hi)
    if dt is not None:
        window = TimeWindow(window.t_start, window.t_end, dt)
    traj = propagate(m, m.initial_state("s0"), window)
    return EfficiencyResult(traj.final_population("g1"), "reading",
                            traj if keep_trajectory else None)


# ----------------------------------------------------------------------------
# (Omega0, T) landscapes
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    """Efficiency grid over two control-parameter axes.

    ``values[i, j]`` belongs to ``axis1[i]`` x ``axis2[j]``; failed cells are
    NaN with a message in ``warnings``.
    """

    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray
    axis_names: tuple[str, str]
    metadata: dict
    warnings: tuple[str, ...] = ()

    def to_csv(self) -> str:
        a, b = self.axis_names
        lines = [f"{a},{b},efficiency"]
        for i, x in enumerate(self.axis1):
            for j, y in enumerate(self.axis2):
                lines.append(f"{x:.12g},{y:.12g},{self.values[i, j]:.12g}")
        return "\n".join(lines) + "\n"


def _sweep_cell(args) -> tuple[int, int, float, str | None]:
    i, j, snapshot, omega0, T, kind = args
    from .model import model_from_config  # local import keeps workers lean
    try:
        base = model_from_config(snapshot)
        m = base.with_pulse(Sigmoid(omega0, T, reversed=False))
        eff = writing_efficiency(m) if kind == "writing" else reading_efficiency(m)
        return i, j, eff.eta, None
    except Exception as exc:  # cell isolation: one bad cell must not kill a run
        return i, j, float("nan"), f"cell (omega0={omega0:.6g}, T={T:.6g}): {exc}"


def efficiency_sweep(base: LambdaModel, omega0_grid, T_grid, kind: str = "writing",
                     workers: int | None = None) -> SweepResult:
    """Independent efficiency simulations over an (Omega0, T) grid.

    Output ordering is fixed by grid indices no matter how cells are
    scheduled, so repeated runs serialize identically.
    """
    if kind not in ("writing", "reading"):
        raise ConfigError(f"kind must be 'writing' or 'reading', got {kind!r}")
    omega0_grid = np.asarray(omega0_grid, dtype=float)
    T_grid = np.asarray(T_grid, dtype=float)
    if omega0_grid.size == 0 or T_grid.size == 0:
        raise ConfigError("sweep grids must be nonempty")
    if np.any(omega0_grid <= 0) or np.any(T_grid <= 0):
        raise ConfigError("sweep grids must be positive")
    snapshot = base.snapshot()
    jobs = [(i, j, snapshot, float(w), float(T), kind)
            for i, w in enumerate(omega0_grid) for j, T in enumerate(T_grid)]
    n_workers = resolve_workers(workers)
    values = np.full((omega0_grid.size, T_grid.size), np.nan)
    warnings: list[str] = []
    if n_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_sweep_cell, jobs, chunksize=1))
    else:
        results = [_sweep_cell(job) for job in jobs]
    for i, j, eta, warning in results:
        values[i, j] = eta
        if warning:
            warnings.append(warning)
    meta = {"kind": kind, "model": snapshot}
    return SweepResult(omega0_grid, T_grid, values, ("omega0", "T"), meta,
                       tuple(sorted(warnings)))


# ----------------------------------------------------------------------------
# decoherence sensitivity
# ----------------------------------------------------------------------------

def dephasing_sensitivity(base: LambdaModel, channel: str, rates) -> np.ndarray:
    """Writing efficiency for each rate applied to one decay channel."""
    rates = np.asarray(rates, dtype=float)
    if np.any(rates < 0):
        raise ConfigError("rates must be >= 0")
    if np.any(np.diff(rates) < 0):
        raise ConfigError("rates must be ascending")
    out = np.empty(rates.size)
    for k, r in enumerate(rates):
        decay = replace(base.decay, **{channel: float(r)})
        m = replace(base, decay=decay, include_vacuum=None)
        out[k] = writing_efficiency(m).eta
    return out


# ----------------------------------------------------------------------------
# absorption window and bandwidth
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class AbsorptionCurve:
    detunings: np.ndarray
    efficiencies: np.ndarray
    hwhm: float

    def to_csv(self) -> str:
        lines = ["delta,efficiency"]
        for d, e in zip(self.detunings, self.efficiencies):
            lines.append(f"{d:.12g},{e:.12g}")
        return "\n".join(lines) + "\n"

    @property
    def peak(self) -> float:
        return float(np.max(self.efficiencies))


def _half_crossing(deltas: np.ndarray, effs: np.ndarray, half: float) -> float | None:
    """Outward linear interpolation of the first drop below ``half``."""
    for k in range(deltas.size - 1):
        if effs[k + 1] < half <= effs[k]:
            frac = (effs[k] - half) / (effs[k] - effs[k + 1])
            return float(deltas[k] + frac * (deltas[k + 1] - deltas[k]))
    return None


def extract_hwhm(deltas: np.ndarray, effs: np.ndarray) -> float:
    """Half width at half maximum, averaged over both sides of the peak."""
    deltas = np.asarray(deltas, dtype=float)
    effs = np.asarray(effs, dtype=float)
    peak_idx = int(np.argmax(effs))
    half = effs[peak_idx] / 2.0
    right = _half_crossing(deltas[peak_idx:], effs[peak_idx:], half)
    left = _half_crossing(deltas[peak_idx::-1], effs[peak_idx::-1], half)
    widths = []
    if right is not None:
        widths.append(right - deltas[peak_idx])
    if left is not None:
        widths.append(deltas[peak_idx] - left)
    if not widths:
        raise ConfigError("widen detuning grid: efficiency never falls below half maximum")
    return float(np.mean(widths))


def detuning_scan(base: LambdaModel, deltas, *, mode: str = "photon") -> AbsorptionCurve:
    """Writing efficiency against detuning of the incoming photon.

    In ``photon`` mode the scanned offset detunes the signal photon itself,
    which shifts the one-photon and the two-photon resonance together (the
    control field stays fixed). ``one_photon`` varies only the excited-state
    detuning and keeps the Raman condition of the base model.
    """
    if mode not in ("photon", "one_photon"):
        raise ConfigError(f"mode must be 'photon' or 'one_photon', got {mode!r}")
    deltas = np.asarray(deltas, dtype=float)
    effs = np.empty(deltas.size)
    for k, d in enumerate(deltas):
        m = replace(base, Delta=float(d),
                    delta=float(d) if mode == "photon" else base.delta)
        effs[k] = writing_efficiency(m).eta
    return AbsorptionCurve(deltas, effs, extract_hwhm(deltas, effs))


def gaussian_write_model(omega0: float, T: float, *, decay=None) -> LambdaModel:
    """Memory model driven by a Gaussian control pulse of characteristic time T.

    T is the Gaussian's standard deviation (envelope exp(-t^2 / (2 T^2)));
    the writing window starts at the pulse peak, where the dark state is
    maximally ground-like, and follows the falling half.
    """
    kwargs = {} if decay is None else {"decay": decay}
    return LambdaModel(pulse=Gaussian(omega0, 0.0, math.sqrt(2.0) * T), **kwargs)


def bandwidth_physical(sigma_delta: float, g_phys: float, omega_ge: float,
                       mode: str = "full") -> float:
    """Convert a dimensionless linewidth to an angular-frequency bandwidth.

    The coupling grows with photon frequency as g = C sqrt(omega), so the
    half-maximum condition sigma = Delta / (C sqrt(omega_ge + Delta)) is a
    quadratic in Delta; ``full`` returns its positive root,

        Delta = (C^2 s^2 + sqrt(C^4 s^4 + 4 C^2 s^2 omega_ge)) / 2,

    and ``simplified`` the small-detuning limit Delta = g_phys * sigma.
    """
    if sigma_delta <= 0 or g_phys <= 0 or omega_ge <= 0:
        raise ConfigError("sigma_delta, g_phys and omega_ge must be positive")
    if mode == "simplified":
        return g_phys * sigma_delta
    if mode != "full":
        raise ConfigError(f"mode must be 'full' or 'simplified', got {mode!r}")
    c2s2 = (g_phys * sigma_delta) ** 2 / omega_ge
    return 0.5 * (c2s2 + math.sqrt(c2s2 * c2s2 + 4.0 * c2s2 * omega_ge))


# ----------------------------------------------------------------------------
# semi-classical transfer benchmark
# ----------------------------------------------------------------------------

def stirap_transfer_probability(omega0: float, tau: float, *,
                                window_pad: float = 6.0,
                                dt: float | None = None) -> float:
    """Final metastable population for a pair of unit-width Gaussian drives.

    Both couplings are classical: the s-e drive omega0 exp(-(t + tau/2)^2)
    precedes the g-e drive omega0 exp(-(t - tau/2)^2) (counterintuitive
    ordering); the system starts in the ground state.
    """
    if omega0 <= 0:
        raise ConfigError("omega0 must be > 0")
    dim = 3  # basis (g, s, e)
    h0 = np.zeros((dim, dim), dtype=np.complex128)
    xop = np.zeros((dim, dim), dtype=np.complex128)
    xop[1, 2] = xop[2, 1] = 1.0  # s-e drive
    yop = np.zeros((dim, dim), dtype=np.complex128)
    yop[0, 2] = yop[2, 0] = 1.0  # g-e drive
    rho0 = np.zeros((dim, dim), dtype=np.complex128)
    rho0[0, 0] = 1.0
    half = window_pad + abs(tau) / 2.0
    window = TimeWindow(-half, half, dt if dt is not None else 1.0 / 200.0)
    traj = propagate_operators(
        rho0, h0,
        xop, Gaussian(omega0, -tau / 2.0, 1.0),
        yop, Gaussian(omega0, +tau / 2.0, 1.0),
        [], window,
        coherent_scale=math.sqrt(2.0) * omega0,
        basis_names=("g", "s", "e"),
        oscillation_weight=0.01)
    return traj.final_population("s")


def _benchmark_cell(args) -> tuple[int, int, float, str | None]:
    i, j, omega0, tau = args
    try:
        return i, j, stirap_transfer_probability(omega0, tau), None
    except Exception as exc:
        return i, j, float("nan"), f"cell (omega0={omega0:.6g}, tau={tau:.6g}): {exc}"


def stirap_benchmark(omega0_grid, tau_grid, workers: int | None = None) -> SweepResult:
    """Transfer-probability landscape of the semi-classical double-Gaussian drive."""
    omega0_grid = np.asarray(omega0_grid, dtype=float)
    tau_grid = np.asarray(tau_grid, dtype=float)
    if omega0_grid.size == 0 or tau_grid.size == 0:
        raise ConfigError("benchmark grids must be nonempty")
    jobs = [(i, j, float(w), float(tau))
            for i, w in enumerate(omega0_grid) for j, tau in enumerate(tau_grid)]
    n_workers = resolve_workers(workers)
    if n_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_benchmark_cell, jobs, chunksize=1))
    else:
        results = [_benchmark_cell(job) for job in jobs]
    values = np.full((omega0_grid.size, tau_grid.size), np.nan)
    warnings: list[str] = []
    for i, j, value, warning in results:
        values[i, j] = value
        if warning:
            warnings.append(warning)
    meta = {"kind": "stirap_benchmark"}
    return SweepResult(omega0_grid, tau_grid, values, ("omega0", "tau"), meta,
                       tuple(sorted(warnings)))
