"""Fixed-step RK4 propagation of the Lindblad master equation.

A classic fourth-order Runge-Kutta scheme with a fixed step is used
throughout: the dynamics are non-stiff at the parameter scales of interest
and a deterministic step sequence makes every artifact bit-reproducible.
The step is capped below the RK4 stability limit of the fastest coherent
frequency, which matters once the drive strength exceeds a few hundred g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernel
from .errors import ConfigError, NumericalFailure
from .linalg import dagger
from .model import Constant, Gaussian, LambdaModel, PulseShape, Sigmoid

TRACE_TOL = 1e-8
POP_TOL = 1e-7
MAX_WINDOW_STEPS = 10_000_000   # on the window's nominal step
MAX_EXEC_STEPS = 20_000_000     # hard cap after the stability refinement
#: RK4 stage factor: effective step keeps |lambda_max * dt| below this value
_STABILITY_FACTOR = 0.35
DEFAULT_STRIDE_SAMPLES = 1000


@dataclass(frozen=True)
class TimeWindow:
    """Integration window [t_start, t_end] with nominal step dt (1/g units)."""

    t_start: float
    t_end: float
    dt: float

    def __post_init__(self):
        if not (self.t_start < self.t_end):
            raise ConfigError(f"empty time window: [{self.t_start}, {self.t_end}]")
        if not (self.dt > 0):
            raise ConfigError("dt must be > 0")
        if (self.t_end - self.t_start) / self.dt > MAX_WINDOW_STEPS:
            raise ConfigError("window would need more than 1e7 steps")


@dataclass(frozen=True)
class Trajectory:
    """Recorded populations of one propagation run.

    ``populations[k, i]`` is the population of basis state i at
    ``times[k]``; rows sum to the recorded trace. ``trace_error`` is the
    largest |Tr rho - 1| seen at any step, not only at recorded samples.
    """

    times: np.ndarray
    populations: np.ndarray
    basis_names: tuple[str, ...]
    final_state: np.ndarray
    trace_error: float

    def population(self, name: str) -> np.ndarray:
        return self.populations[:, self.basis_names.index(name)]

    def final_population(self, name: str) -> float:
        idx = self.basis_names.index(name)
        return float(self.final_state[idx, idx].real)


def lindblad_rhs(model: LambdaModel, t: float, rho: np.ndarray) -> np.ndarray:
    """d rho / dt = -i [H(t), rho] + sum_k (C rho C^dag - 1/2 {C^dag C, rho})."""
    h = model.hamiltonian(t)
    out = -1j * (h @ rho - rho @ h)
    for c in model.jump_operators():
        cdc = dagger(c) @ c
        out += c @ rho @ dagger(c) - 0.5 * (cdc @ rho + rho @ cdc)
    return out


def _pulse_descriptor(pulse: PulseShape) -> tuple[int, float, float, float]:
    if isinstance(pulse, Sigmoid):
        kind = _kernel.PULSE_SIGMOID_REV if pulse.reversed else _kernel.PULSE_SIGMOID
        return kind, pulse.omega0, pulse.T, 0.0
    if isinstance(pulse, Gaussian):
        return _kernel.PULSE_GAUSSIAN, pulse.omega0, pulse.center, pulse.width
    if isinstance(pulse, Constant):
        return _kernel.PULSE_CONSTANT, pulse.omega, 0.0, 0.0
    raise ConfigError(f"unsupported pulse type {type(pulse)!r}")


def _record_steps(n_steps: int, samples: int) -> np.ndarray:
    n_rec = min(samples, n_steps) + 1
    return np.unique(np.round(np.linspace(0, n_steps, n_rec)).astype(np.int64))


def stability_dt(coherent_scale: float, rate_sum: float = 0.0,
                 oscillation_weight: float = 1.0, span: float = 0.0) -> float:
    """Largest step keeping RK4 both stable and positivity-safe.

    The fastest Liouvillian frequency is about twice the coherent scale.
    Populations that oscillate near zero with weight w pick up spurious
    negative dips scaling like w (lambda dt)^4, so the phase budget
    lambda*dt is tightened until those dips stay well under the positivity
    tolerance. For adiabatic transfer runs w is the bright-state weight of
    the initial state, g^2/(g^2 + Omega0^2). Long windows at moderate
    weight accumulate an extra secular error (measured, not modeled), so
    that region gets one more factor of two.
    """
    lam = 2.0 * coherent_scale + rate_sum
    if lam <= 0:
        return math.inf
    budget = min(_STABILITY_FACTOR,
                 (0.05 * POP_TOL / max(oscillation_weight, 1e-10)) ** 0.25)
    if oscillation_weight >= 3e-5 and span * lam > 0 and span >= 250.0:
        budget *= 0.5
    return budget / lam


def propagate_operators(rho0: np.ndarray,
                        h0: np.ndarray,
                        xop: np.ndarray,
                        x_pulse: PulseShape | None,
                        yop: np.ndarray,
                        y_pulse: PulseShape | None,
                        c_ops: list[np.ndarray],
                        window: TimeWindow,
                        coherent_scale: float,
                        basis_names: tuple[str, ...],
                        stride_samples: int = DEFAULT_STRIDE_SAMPLES,
                        enforce: bool = True,
                        oscillation_weight: float = 1.0,
                        cap_dt: bool = True) -> Trajectory:
    """Low-level propagation with H(t) = h0 + wx(t) xop + wy(t) yop.

    ``cap_dt=False`` runs exactly at the window's step, without the
    stability guard; invariant enforcement then reports any breakdown.
    """
    d = rho0.shape[0]
    rate_sum = sum(float(np.max(np.abs(dagger(c) @ c))) for c in c_ops)
    span = window.t_end - window.t_start
    dt = window.dt
    if cap_dt:
        dt = min(dt, stability_dt(coherent_scale, rate_sum, oscillation_weight, span))
    n_steps = max(1, int(math.ceil(span / dt)))
    if n_steps > MAX_EXEC_STEPS:
        raise ConfigError(f"window needs {n_steps} steps, above the execution cap")
    dt = span / n_steps

    kx, kxp0, kxp1, kxp2 = _pulse_descriptor(x_pulse) if x_pulse is not None \
        else (_kernel.PULSE_NONE, 0.0, 0.0, 0.0)
    ky, kyp0, kyp1, kyp2 = _pulse_descriptor(y_pulse) if y_pulse is not None \
        else (_kernel.PULSE_NONE, 0.0, 0.0, 0.0)

    if c_ops:
        c_arr = np.ascontiguousarray(np.stack(c_ops)).astype(np.complex128)
        kmat = np.zeros((d, d), dtype=np.complex128)
        for c in c_ops:
            kmat += dagger(c) @ c
    else:
        c_arr = np.zeros((0, d, d), dtype=np.complex128)
        kmat = np.zeros((d, d), dtype=np.complex128)

    rec = _record_steps(n_steps, stride_samples)
    (pops, traces, rho, max_tr_err, tr_step, min_diag, min_step,
     max_diag, max_step, status, status_step) = _kernel.rk4_lindblad(
        np.ascontiguousarray(rho0, dtype=np.complex128),
        np.ascontiguousarray(h0, dtype=np.complex128),
        np.ascontiguousarray(xop, dtype=np.complex128),
        np.ascontiguousarray(yop, dtype=np.complex128),
        kx, kxp0, kxp1, kxp2, ky, kyp0, kyp1, kyp2,
        c_arr, kmat, bool(c_ops),
        window.t_start, dt, n_steps, rec)

    if status == _kernel.STATUS_DIVERGED:
        raise NumericalFailure(
            f"trace diverged at step {status_step}/{n_steps} "
            f"(t = {window.t_start + status_step * dt:.6g}, dt = {dt:.3e}); "
            "the step size is too large for this drive strength")
    if enforce:
        if max_tr_err > TRACE_TOL:
            raise NumericalFailure(
                f"trace error {max_tr_err:.3e} at step {tr_step} exceeds {TRACE_TOL}")
        if min_diag < -POP_TOL:
            raise NumericalFailure(
                f"negative population {min_diag:.3e} at step {min_step} exceeds {POP_TOL}")
        if max_diag > 1.0 + POP_TOL:
            raise NumericalFailure(
                f"population {max_diag} at step {max_step} exceeds 1 beyond {POP_TOL}")

    times = window.t_start + rec.astype(np.float64) * dt
    return Trajectory(times=times, populations=pops, basis_names=basis_names,
                      final_state=rho, trace_error=float(max_tr_err))


def propagate(model: LambdaModel, rho0: np.ndarray, window: TimeWindow,
              stride_samples: int = DEFAULT_STRIDE_SAMPLES,
              enforce: bool = True, cap_dt: bool = True) -> Trajectory:
    """Propagate rho0 under the model's Hamiltonian and jump operators."""
    if rho0.shape != (model.dim, model.dim):
        raise ConfigError(f"initial state shape {rho0.shape} does not match dim {model.dim}")
    scale = math.hypot(model.pulse.peak, model.g) + abs(model.Delta) + abs(model.delta)
    peak = model.pulse.peak
    # transfer drives start near the dark state: near-zero populations carry
    # only the residual bright weight, which relaxes the positivity budget
    if isinstance(model.pulse, Constant) or peak <= model.g:
        weight = 1.0
    else:
        weight = model.g ** 2 / (model.g ** 2 + peak ** 2)
    return propagate_operators(
        rho0,
        model.static_hamiltonian(),
        model.drive_operator(), model.pulse,
        np.zeros((model.dim, model.dim), dtype=np.complex128), None,
        model.jump_operators(),
        window,
        scale,
        model.basis_names,
        stride_samples=stride_samples,
        enforce=enforce,
        oscillation_weight=weight,
        cap_dt=cap_dt,
    )


# ----------------------------------------------------------------------------
# physically chosen integration windows
# ----------------------------------------------------------------------------

def sigmoid_crossing_time(p: float, omega0: float, T: float) -> float:
    """Time at which the dark state of a falling sigmoid drive has
    metastable-state weight p, i.e. sin^2(theta(t)) = p with g = 1.

    Solves omega0 / (1 + exp(t/T)) = sqrt((1-p)/p).
    """
    if not (0.0 < p < 1.0):
        raise ConfigError(f"overlap p must be in (0, 1), got {p}")
    arg = p * abs(omega0) / math.sqrt(p * (1.0 - p)) - 1.0
    if arg <= 0.0:
        raise ConfigError(
            f"pulse too weak for requested adiabatic overlap: omega0 = {omega0}, p = {p}")
    return T * math.log(arg)


def adiabatic_window(omega0: float, T: float,
                     p_lo: float = 0.001, p_hi: float = 0.999) -> TimeWindow:
    """Window covering the adiabatic transfer from overlap p_lo to p_hi.

    Two characteristic times of padding are added on both sides so the
    sigmoid saturates; the default step is min(T, 1)/200.
    """
    if not (0.0 < p_lo < p_hi < 1.0):
        raise ConfigError(f"need 0 < p_lo < p_hi < 1, got ({p_lo}, {p_hi})")
    t_lo = sigmoid_crossing_time(p_lo, omega0, T)
    t_hi = sigmoid_crossing_time(p_hi, omega0, T)
    return TimeWindow(t_lo - 2.0 * T, t_hi + 2.0 * T, min(T, 1.0) / 200.0)


def transfer_window(pulse: PulseShape, *, reading: bool = False,
                    p_lo: float = 0.001, p_hi: float = 0.999) -> TimeWindow:
    """Adiabatic window for an efficiency run, robust at weak drive.

    Falls back to a saturation window of +-4T around the crossing region
    whenever an overlap target is unreachable (the dark state of a drive
    with peak omega0 never has metastable weight below 1/(1+omega0^2)).
    Reading runs mirror the writing window in time.
    """
    if isinstance(pulse, Sigmoid):
        T = pulse.T
        try:
            t_lo = sigmoid_crossing_time(p_lo, pulse.omega0, T)
        except ConfigError:
            t_lo = -4.0 * T
        try:
            t_hi = sigmoid_crossing_time(p_hi, pulse.omega0, T)
        except ConfigError:
            t_hi = 4.0 * T
        t0, t1 = t_lo - 2.0 * T, t_hi + 2.0 * T
        if pulse.reversed != reading:
            raise ConfigError("pulse orientation does not match the transfer direction")
    elif isinstance(pulse, Gaussian):
        # half pulse from the peak: theta sweeps from its minimum to pi/2
        w = pulse.width
        target = math.sqrt((1.0 - p_hi) / p_hi)
        reach = w * math.sqrt(max(math.log(pulse.omega0 / target), 0.25))
        t0, t1 = pulse.center, pulse.center + reach + 1.5 * w
    else:
        raise ConfigError("efficiency runs need a sigmoid or gaussian control pulse")
    if reading:
        t0, t1 = -t1, -t0
    T_eff = pulse.T if isinstance(pulse, Sigmoid) else pulse.width
    return TimeWindow(t0, t1, min(T_eff, 1.0) / 200.0)


# ----------------------------------------------------------------------------
# CSV serialization
# ----------------------------------------------------------------------------

def trajectory_csv(traj: Trajectory) -> str:
    """Delimited dump: t, populations in basis order, |Tr rho - 1| per row."""
    header = "t," + ",".join(f"pop_{n}" for n in traj.basis_names) + ",trace_err"
    lines = [header]
    for k in range(traj.times.size):
        cells = [f"{traj.times[k]:.12g}"]
        cells += [f"{traj.populations[k, i]:.12g}" for i in range(traj.populations.shape[1])]
        row_trace = float(traj.populations[k].sum())
        cells.append(f"{abs(row_trace - 1.0):.12g}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
