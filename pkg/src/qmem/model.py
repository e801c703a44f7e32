"""Physical model of a driven three-level emitter coupled to one cavity mode.

The emitter has a ground state g, a metastable state s and an excited state
e. The g-e transition couples to a single quantized cavity mode (coupling
constant ``g``, fixed); the s-e transition is driven by a classical control
field with time-dependent Rabi frequency ``Omega(t)``. Keeping at most one
photon, the dressed basis is ordered

    0: |g,1>   ground state, one photon
    1: |s,0>   metastable state, photon absorbed
    2: |e,0>   excited state, photon absorbed
    3: |g,0>   ground state, cavity empty (only present when photon loss or
               population decay is modeled)

This order is fixed everywhere, including CSV output. All quantities are in
units of the coupling constant (g = 1, times in 1/g) unless noted otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError

BASIS_G1 = 0
BASIS_S0 = 1
BASIS_E0 = 2
BASIS_G0 = 3

BASIS_NAMES_3 = ("g1", "s0", "e0")
BASIS_NAMES_4 = ("g1", "s0", "e0", "g0")

#: dephasing channels (atomic label -> dressed indices carrying it)
_DEPHASING_TARGETS = {"gg": (BASIS_G1, BASIS_G0), "ss": (BASIS_S0,), "ee": (BASIS_E0,)}
#: population decays: channel key (target, source) -> dressed (target, source)
_DECAY_TARGETS = {
    "ge": (BASIS_G0, BASIS_E0),  # e -> g, emitted photon leaves the cavity mode
    "se": (BASIS_S0, BASIS_E0),  # e -> s
    "gs": (BASIS_G0, BASIS_S0),  # s -> g
}
_UPWARD_CHANNELS = ("eg", "es", "sg")


# ----------------------------------------------------------------------------
# control pulses
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Sigmoid:
    """Falling sigmoid Omega0 / (1 + exp(t/T)); rising when ``reversed``.

    The falling shape writes a photon into the matter state; the reversed
    shape drives the time-mirrored read-out.
    """

    omega0: float
    T: float
    reversed: bool = False

    def __post_init__(self):
        if not (self.omega0 > 0 and self.T > 0):
            raise ConfigError(f"sigmoid pulse needs omega0 > 0 and T > 0, got {self}")

    def value(self, t: float) -> float:
        if not math.isfinite(t):
            raise ConfigError(f"pulse evaluated at non-finite time {t}")
        x = (-t if self.reversed else t) / self.T
        # evaluate with exp of a negative argument only, to avoid overflow
        if x > 0:
            e = math.exp(-x)
            return self.omega0 * e / (1.0 + e)
        return self.omega0 / (1.0 + math.exp(x))

    @property
    def peak(self) -> float:
        return self.omega0


@dataclass(frozen=True)
class Gaussian:
    """Gaussian control pulse omega0 * exp(-((t - center)/width)^2)."""

    omega0: float
    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if not (self.omega0 > 0 and self.width > 0):
            raise ConfigError(f"gaussian pulse needs omega0 > 0 and width > 0, got {self}")

    def value(self, t: float) -> float:
        if not math.isfinite(t):
            raise ConfigError(f"pulse evaluated at non-finite time {t}")
        u = (t - self.center) / self.width
        return self.omega0 * math.exp(-u * u)

    @property
    def peak(self) -> float:
        return self.omega0


@dataclass(frozen=True)
class Constant:
    """Time-independent control field."""

    omega: float

    def value(self, t: float) -> float:
        if not math.isfinite(t):
            raise ConfigError(f"pulse evaluated at non-finite time {t}")
        return self.omega

    @property
    def peak(self) -> float:
        return abs(self.omega)


PulseShape = Sigmoid | Gaussian | Constant


def pulse_value(pulse: PulseShape, t: float) -> float:
    """Rabi frequency of the control field at time t."""
    return pulse.value(t)


# ----------------------------------------------------------------------------
# decay channels
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class DecayRates:
    """Dephasing and population-decay rates, all in units of g.

    ``gg``/``ss``/``ee`` are pure dephasing rates of the respective atomic
    states. ``ge``, ``se``, ``gs`` are population decays e->g, e->s and s->g.
    Upward (spontaneous-excitation) channels are not representable. ``kappa``
    is the cavity field decay rate.
    """

    gg: float = 0.0
    ss: float = 0.0
    ee: float = 0.0
    ge: float = 0.0
    se: float = 0.0
    gs: float = 0.0
    kappa: float = 0.0

    def __post_init__(self):
        for name in ("gg", "ss", "ee", "ge", "se", "gs", "kappa"):
            if getattr(self, name) < 0:
                raise ConfigError(f"decay rate {name} must be >= 0")

    @classmethod
    def from_mapping(cls, rates: dict) -> "DecayRates":
        kwargs = {}
        for key, value in rates.items():
            if key in _UPWARD_CHANNELS:
                raise ConfigError(f"spontaneous excitation channel '{key}' is not allowed")
            if key not in ("gg", "ss", "ee", "ge", "se", "gs", "kappa"):
                raise ConfigError(f"unknown decay channel '{key}'")
            kwargs[key] = float(value)
        return cls(**kwargs)

    @property
    def has_population_decay(self) -> bool:
        return self.ge > 0 or self.se > 0 or self.gs > 0

    @property
    def any_nonzero(self) -> bool:
        return any(getattr(self, n) > 0 for n in ("gg", "ss", "ee", "ge", "se", "gs", "kappa"))

    def as_dict(self) -> dict:
        return {n: getattr(self, n) for n in ("gg", "ss", "ee", "ge", "se", "gs", "kappa")}


# ----------------------------------------------------------------------------
# the model
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class LambdaModel:
    """Full configuration of the memory: couplings, detunings, pulse, decay.

    ``Delta`` is the one-photon detuning of the g-e transition, ``delta`` the
    two-photon detuning of the g-s Raman resonance. ``include_vacuum``
    extends the basis with |g,0>; it is mandatory whenever photons can leak
    (kappa > 0) or population can decay, because the decayed emitter is then
    dressed with the empty cavity. Pure dephasing works in either basis.
    """

    g: float = 1.0
    Delta: float = 0.0
    delta: float = 0.0
    pulse: PulseShape = field(default_factory=lambda: Sigmoid(100.0, 10.0))
    decay: DecayRates = field(default_factory=DecayRates)
    include_vacuum: bool | None = None

    def __post_init__(self):
        if self.g <= 0:
            raise ConfigError("coupling constant g must be > 0")
        needs_vacuum = self.decay.kappa > 0 or self.decay.has_population_decay
        if self.include_vacuum is None:
            object.__setattr__(self, "include_vacuum", needs_vacuum)
        elif needs_vacuum and not self.include_vacuum:
            raise ConfigError(
                "cavity decay and population decay deposit the emitter in |g,0>; "
                "include_vacuum must be true for these channels"
            )

    @property
    def dim(self) -> int:
        return 4 if self.include_vacuum else 3

    @property
    def basis_names(self) -> tuple[str, ...]:
        return BASIS_NAMES_4 if self.include_vacuum else BASIS_NAMES_3

    def with_pulse(self, pulse: PulseShape) -> "LambdaModel":
        return replace(self, pulse=pulse)

    def reversed_pulse_model(self) -> "LambdaModel":
        """Copy with the control pulse mirrored in time (read-out drive)."""
        p = self.pulse
        if isinstance(p, Sigmoid):
            return replace(self, pulse=replace(p, reversed=not p.reversed))
        if isinstance(p, Gaussian):
            return replace(self, pulse=replace(p, center=-p.center))
        return self

    # -- operators ----------------------------------------------------------

    def static_hamiltonian(self) -> np.ndarray:
        """Time-independent part: cavity coupling and detunings."""
        h = np.zeros((self.dim, self.dim), dtype=np.complex128)
        h[BASIS_G1, BASIS_E0] = self.g
        h[BASIS_E0, BASIS_G1] = self.g
        h[BASIS_E0, BASIS_E0] = self.Delta
        h[BASIS_S0, BASIS_S0] = self.delta
        return h

    def drive_operator(self) -> np.ndarray:
        """Operator multiplying Omega(t): the s-e coupling."""
        x = np.zeros((self.dim, self.dim), dtype=np.complex128)
        x[BASIS_S0, BASIS_E0] = 1.0
        x[BASIS_E0, BASIS_S0] = 1.0
        return x

    def hamiltonian(self, t: float) -> np.ndarray:
        """H(t) on the dressed basis (hbar = 1)."""
        return self.static_hamiltonian() + self.pulse.value(t) * self.drive_operator()

    def jump_operators(self) -> list[np.ndarray]:
        """Lindblad jump operators, one per nonzero rate.

        Atomic operators act identically on the photon slot, so a dephasing
        channel projects on every dressed state carrying its atomic label.
        Population decays out of |e,0> and |s,0> that end in g land in
        |g,0>: the accompanying photon is lost from the cavity mode.
        """
        d = self.dim
        ops: list[np.ndarray] = []
        rates = self.decay
        for key, targets in _DEPHASING_TARGETS.items():
            rate = getattr(rates, key)
            if rate > 0:
                op = np.zeros((d, d), dtype=np.complex128)
                for idx in targets:
                    if idx < d:
                        op[idx, idx] = 1.0
                ops.append(math.sqrt(rate) * op)
        for key, (tgt, src) in _DECAY_TARGETS.items():
            rate = getattr(rates, key)
            if rate > 0:
                op = np.zeros((d, d), dtype=np.complex128)
                op[tgt, src] = 1.0
                ops.append(math.sqrt(rate) * op)
        if rates.kappa > 0:
            op = np.zeros((d, d), dtype=np.complex128)
            op[BASIS_G0, BASIS_G1] = 1.0
            ops.append(math.sqrt(rates.kappa) * op)
        return ops

    def initial_state(self, which: str) -> np.ndarray:
        """Density matrix for a named dressed basis state ('g1', 's0', ...)."""
        names = self.basis_names
        if which not in names:
            raise ConfigError(f"unknown initial state '{which}', expected one of {names}")
        rho = np.zeros((self.dim, self.dim), dtype=np.complex128)
        idx = names.index(which)
        rho[idx, idx] = 1.0
        return rho

    # -- configuration (de)serialization ------------------------------------

    def snapshot(self) -> dict:
        """JSON-ready description of the model (used in manifests)."""
        p = self.pulse
        if isinstance(p, Sigmoid):
            pulse = {"shape": "sigmoid", "omega0": p.omega0, "T": p.T, "reversed": p.reversed}
        elif isinstance(p, Gaussian):
            pulse = {"shape": "gaussian", "omega0": p.omega0, "center": p.center, "width": p.width}
        else:
            pulse = {"shape": "constant", "omega": p.omega}
        return {
            "g": self.g,
            "Delta": self.Delta,
            "delta": self.delta,
            "pulse": pulse,
            "decay": self.decay.as_dict(),
            "include_vacuum": self.include_vacuum,
        }


def _pulse_from_config(cfg: dict) -> PulseShape:
    if not isinstance(cfg, dict) or "shape" not in cfg:
        raise ConfigError("pulse config must be an object with a 'shape' key")
    shape = cfg["shape"]
    allowed = {
        "sigmoid": {"shape", "omega0", "T", "reversed"},
        "gaussian": {"shape", "omega0", "center", "width"},
        "constant": {"shape", "omega"},
    }
    if shape not in allowed:
        raise ConfigError(f"unknown pulse shape '{shape}'")
    unknown = set(cfg) - allowed[shape]
    if unknown:
        raise ConfigError(f"unknown pulse fields for shape '{shape}': {sorted(unknown)}")
    if shape == "sigmoid":
        return Sigmoid(float(cfg["omega0"]), float(cfg["T"]), bool(cfg.get("reversed", False)))
    if shape == "gaussian":
        return Gaussian(float(cfg["omega0"]), float(cfg.get("center", 0.0)), float(cfg.get("width", 1.0)))
    return Constant(float(cfg["omega"]))


def model_from_config(cfg: dict) -> LambdaModel:
    """Build a LambdaModel from a parsed JSON document. Unknown keys reject."""
    if not isinstance(cfg, dict):
        raise ConfigError("model config must be a JSON object")
    known = {"g", "Delta", "delta", "pulse", "decay", "include_vacuum"}
    unknown = set(cfg) - known
    if unknown:
        raise ConfigError(f"unknown model config fields: {sorted(unknown)}")
    decay = cfg.get("decay", {})
    if not isinstance(decay, dict):
        raise ConfigError("'decay' must be an object of channel -> rate")
    return LambdaModel(
        g=float(cfg.get("g", 1.0)),
        Delta=float(cfg.get("Delta", 0.0)),
        delta=float(cfg.get("delta", 0.0)),
        pulse=_pulse_from_config(cfg.get("pulse", {"shape": "sigmoid", "omega0": 100.0, "T": 10.0})),
        decay=DecayRates.from_mapping(decay),
        include_vacuum=cfg.get("include_vacuum"),
    )


def model_from_json(path: str | Path) -> LambdaModel:
    try:
        cfg = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return model_from_config(cfg)
